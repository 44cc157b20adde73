"""Schatten p-norms and executable oracles for the norm inequalities used here.

The exponent ``p`` may be any real number >= 1, or ``math.inf``. Singular
values are obtained as square roots of the eigenvalues of A†A, with tiny
negative eigenvalues (round-off) clamped to zero. The p = 2 norm has a
direct trace fast path, cross-checked against the eigenvalue path in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import require_square

INF = math.inf

#: additive slack applied by every inequality oracle
SLACK = 1e-9

#: eigenvalues of A†A below this fraction of the largest one are clamped to 0
CLAMP_REL = 1e-14


def validate_exponent(p) -> float:
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"norm exponent must satisfy p >= 1, got {p}")
    return p


def parse_exponent(text: str) -> float:
    """Parse a norm exponent from the command line ('inf' or a real >= 1)."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    return validate_exponent(float(t))


def singular_values(a) -> np.ndarray:
    """Singular values in ascending order, via the eigenvalues of A†A."""
    a = require_square(a)
    gram = a.conj().T @ a
    w = np.linalg.eigvalsh(gram)
    top = max(float(w[-1]), 0.0)
    w = np.where(w < CLAMP_REL * top, 0.0, w)
    return np.sqrt(w)


def schatten_norm(a, p) -> float:
    """(sum_i s_i^p)^(1/p); max s_i for p = inf; sqrt(tr A†A) fast path at p = 2."""
    p = validate_exponent(p)
    a = require_square(a)
    if p == 2.0:
        return float(np.sqrt(np.real(np.trace(a.conj().T @ a))))
    s = singular_values(a)
    if p == INF:
        return float(s[-1])
    if p == 1.0:
        return float(np.sum(s))
    return float(np.sum(s**p) ** (1.0 / p))


@dataclass(frozen=True)
class InterpolationCheck:
    holds: bool
    operator_norm: float
    p_norm: float
    trace_norm: float


def check_interpolation(a, p) -> InterpolationCheck:
    """Whether ||A||_inf <= ||A||_p <= ||A||_1 within slack, with witnesses."""
    n_inf = schatten_norm(a, INF)
    n_p = schatten_norm(a, p)
    n_1 = schatten_norm(a, 1)
    holds = n_inf <= n_p + SLACK and n_p <= n_1 + SLACK
    return InterpolationCheck(holds, n_inf, n_p, n_1)


@dataclass(frozen=True)
class HoelderCheck:
    holds: bool
    r_norm: float
    p_norm: float
    scaled_r_norm: float


def check_hoelder(a, p, r) -> HoelderCheck:
    """Whether ||A||_r <= ||A||_p <= d^(1/p - 1/r) ||A||_r within slack."""
    p = validate_exponent(p)
    r = validate_exponent(r)
    if not r > p:
        raise ValueError(f"require r > p >= 1, got p={p}, r={r}")
    a = require_square(a)
    d = a.shape[0]
    inv_r = 0.0 if r == INF else 1.0 / r
    factor = d ** (1.0 / p - inv_r)
    n_r = schatten_norm(a, r)
    n_p = schatten_norm(a, p)
    holds = n_r <= n_p + SLACK and n_p <= factor * n_r + SLACK
    return HoelderCheck(holds, n_r, n_p, factor * n_r)


@dataclass(frozen=True)
class ReverseTriangleCheck:
    holds: bool
    gap: float
    difference_norm: float


def check_reverse_triangle(a, b, p) -> ReverseTriangleCheck:
    """Whether | ||A||_p - ||B||_p | <= ||A - B||_p within slack."""
    a = require_square(a)
    b = require_square(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    gap = abs(schatten_norm(a, p) - schatten_norm(b, p))
    diff = schatten_norm(a - b, p)
    return ReverseTriangleCheck(gap <= diff + SLACK, gap, diff)


def require_density(rho, d: int | None = None, tol: float = 1e-9) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD, unit trace (within tol)."""
    rho = require_square(rho)
    if d is not None and rho.shape[0] != d:
        raise ValueError(f"expected dimension {d}, got {rho.shape[0]}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.real(np.trace(rho)) - 1.0) > tol:
        raise ValueError("density matrix must have unit trace")
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if float(w[0]) < -tol:
        raise ValueError("density matrix must be positive semidefinite")
    return rho


@dataclass(frozen=True)
class MixedGapBound:
    """Result of the r-norm bound on ||A - I/d||_p^r for a density matrix A.

    ``rhs_printed`` uses the subtrahend d^((r-p)/p) / d^p; ``rhs_alternative``
    uses d^((r-p)/p) * d^(-r). The two agree only at special (p, r) pairs, so
    both verdicts are reported and ``variants_agree`` flags disagreement.
    """

    lhs: float
    rhs_printed: float
    holds_printed: bool
    rhs_alternative: float
    holds_alternative: bool
    variants_agree: bool


def mixed_gap_bound(a, p, r) -> MixedGapBound:
    """Evaluate ||A - I/d||_p^r <= d^((r-p)/p) ||A||_r^r - d^((r-p)/p)/d^p.

    Requires a density matrix and finite exponents r > p >= 1. The formula
    is evaluated literally; violations are reported, not repaired.
    """
    p = validate_exponent(p)
    r = validate_exponent(r)
    if p == INF or r == INF:
        raise ValueError("both exponents must be finite")
    if not r > p:
        raise ValueError(f"require r > p >= 1, got p={p}, r={r}")
    a = require_density(a)
    d = a.shape[0]
    lhs = schatten_norm(a - np.eye(d) / d, p) ** r
    prefactor = d ** ((r - p) / p)
    r_norm_r = schatten_norm(a, r) ** r
    rhs_printed = prefactor * r_norm_r - prefactor / d**p
    rhs_alternative = prefactor * r_norm_r - prefactor * d ** (-r)
    holds_printed = lhs <= rhs_printed + SLACK
    holds_alternative = lhs <= rhs_alternative + SLACK
    return MixedGapBound(
        lhs=lhs,
        rhs_printed=rhs_printed,
        holds_printed=holds_printed,
        rhs_alternative=rhs_alternative,
        holds_alternative=holds_alternative,
        variants_agree=holds_printed == holds_alternative,
    )
