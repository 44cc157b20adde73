"""Dense complex matrix helpers.

Everything downstream works with plain ``numpy`` arrays of ``complex128``.
This module adds the validation and the two factorizations the rest of the
package relies on: Hermitian eigendecomposition (ascending eigenvalues,
orthonormal eigenvectors) and a QR variant whose R-diagonal is real and
positive, which is the form needed for Haar-correct unitary sampling.

All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
RANK_TOL = 1e-12


class RankDeficientError(ValueError):
    """QR input judged rank deficient; the caller should resample."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"empty matrix of shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def require_square(a: np.ndarray) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def multiply(a, b) -> np.ndarray:
    """Matrix product with an explicit conformability check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Eigenvalues in ascending order; eigenvector columns are orthonormal."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eigen(a) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian to within ``HERMITICITY_TOL`` in max-entry
    absolute difference; it is symmetrized before decomposition so the
    result is exactly Hermitian-consistent.
    """
    a = require_square(a)
    if np.max(np.abs(a - a.conj().T)) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within tolerance 1e-10")
    h = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(h)
    return HermitianEigenSystem(w, v)


def qr_unitary(a) -> tuple[np.ndarray, np.ndarray]:
    """QR factorization with the R-diagonal made real and positive.

    The diagonal phases of R are absorbed into Q. This normalization is
    what makes QR of a Ginibre matrix produce a Haar-distributed Q (see
    :mod:`randomix.haar`). Raises :class:`RankDeficientError` when any
    ``|r_ii|`` falls below ``RANK_TOL * max|a|``.
    """
    a = require_square(a)
    q, r = np.linalg.qr(a)
    diag = np.diagonal(r)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0 or np.min(np.abs(diag)) < RANK_TOL * scale:
        raise RankDeficientError("input is rank deficient; resample")
    phases = diag / np.abs(diag)
    q = q * phases[np.newaxis, :]
    r = r * phases.conj()[:, np.newaxis]
    return q, r


def unitarity_residual(u: np.ndarray) -> float:
    """Max-entry absolute deviation of U†U from the identity."""
    u = require_square(u)
    d = u.shape[0]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(d))))
