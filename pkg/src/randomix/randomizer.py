"""Random-unitary mixing channels and their randomization deviation statistic.

A channel is just an ensemble: rho -> (1/m) sum_i U_i rho U_i†. The channel
is judged against the p-dependent threshold epsilon / d^((p-1)/p) (taken as
epsilon/d at p = inf by continuity). Certification over a trace-norm net
uses the half threshold at net points; a sample plan yields statistical
evidence, never a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .haar import PureState, Seed, UnitaryEnsemble, rng_from, sample_pure_states
from .norms import INF, require_density, schatten_norm, validate_exponent

#: annotation attached to output-norm check results: the hypothesis of the
#: quoted sup-norm bound does not name the norm in which the channel must be
#: randomizing; we test it under the same-p threshold and record the verdict.
HW_HYPOTHESIS_NOTE = (
    "output-norm bound tested assuming the channel is randomizing under the "
    "same-p threshold; an operator-norm hypothesis would be stricter"
)


@dataclass(frozen=True)
class RandomizingChannel:
    ensemble: UnitaryEnsemble

    @property
    def dim(self) -> int:
        return self.ensemble.dim

    @property
    def cardinality(self) -> int:
        return self.ensemble.cardinality


def pauli_channel() -> RandomizingChannel:
    """The d = 2 fixture {I, X, Y, Z}: a complete randomizing map."""
    eye = np.eye(2, dtype=np.complex128)
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    members = np.stack([eye, x, y, z])
    return RandomizingChannel(UnitaryEnsemble(dim=2, members=members, seed=Seed(0, 0)))


def apply_channel(ch: RandomizingChannel, rho) -> np.ndarray:
    """(1/m) sum_i U_i rho U_i† for a density-matrix input."""
    rho = require_density(rho, d=ch.dim)
    u = ch.ensemble.members
    out = np.einsum("kij,jl,kml->im", u, rho, u.conj()) / ch.cardinality
    return out


def apply_channel_pure(ch: RandomizingChannel, amplitudes: np.ndarray) -> np.ndarray:
    """Channel output for a pure input, avoiding the d x d projector product."""
    v = ch.ensemble.members @ amplitudes  # (m, d)
    return np.einsum("ki,kj->ij", v, v.conj()) / ch.cardinality


def threshold_exponent(p) -> float:
    p = validate_exponent(p)
    return 1.0 if p == INF else (p - 1.0) / p


def randomizing_threshold(d: int, p, epsilon: float) -> float:
    """epsilon / d^((p-1)/p); epsilon/d at p = inf by continuity."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return epsilon / d ** threshold_exponent(p)


@dataclass(frozen=True)
class DeviationRecord:
    p: float
    y_value: float
    threshold: float
    meets: bool
    state_seed: Seed | None


def deviation_batch(ch: RandomizingChannel, states: np.ndarray, p) -> np.ndarray:
    """Y = ||R(psi) - I/d||_p for each pure state row of ``states``.

    The channel output minus I/d is Hermitian, so its singular values are
    the absolute eigenvalues; this is the vectorized fast path and is
    cross-checked against :func:`randomix.norms.schatten_norm` in tests.
    """
    p = validate_exponent(p)
    d = ch.dim
    w = ch.ensemble.members @ states.T  # (m, d, n)
    outs = np.einsum("kis,kjs->sij", w, w.conj()) / ch.cardinality
    diffs = outs - np.eye(d) / d
    eigs = np.abs(np.linalg.eigvalsh(diffs))  # (n, d); abs breaks the sort order
    if p == INF:
        return np.max(eigs, axis=1)
    if p == 1.0:
        return np.sum(eigs, axis=1)
    return np.sum(eigs**p, axis=1) ** (1.0 / p)


def deviation(
    ch: RandomizingChannel,
    psi: PureState,
    p,
    epsilon: float,
    state_seed: Seed | None = None,
) -> DeviationRecord:
    """Deviation of the channel output from I/d against the p-threshold."""
    if psi.dim != ch.dim:
        raise ValueError("state dimension mismatch")
    y = schatten_norm(apply_channel_pure(ch, psi.amplitudes) - np.eye(ch.dim) / ch.dim, p)
    thr = randomizing_threshold(ch.dim, p, epsilon)
    return DeviationRecord(
        p=validate_exponent(p), y_value=y, threshold=thr, meets=y <= thr, state_seed=state_seed
    )


MODE_CERTIFICATE = "certificate"
MODE_EVIDENCE = "statistical evidence"


@dataclass(frozen=True)
class CertificationResult:
    certified: bool
    worst: DeviationRecord
    mode: str
    evaluated: int
    failures: int
    point_threshold: float


def certify_epsilon_randomizing(
    ch: RandomizingChannel,
    p,
    epsilon: float,
    net=None,
    samples: int | None = None,
    seed: Seed | None = None,
) -> CertificationResult:
    """Certify over a net, or gather statistical evidence over sampled states.

    Net mode requires covering radius eta <= epsilon / (2 d^((p-1)/p)) and
    applies the half threshold at every net point, which extends the bound
    to all pure states. Sample mode evaluates fresh random states at the
    full threshold and is labeled evidence, never a certificate.
    """
    p = validate_exponent(p)
    full = randomizing_threshold(ch.dim, p, epsilon)
    if net is not None:
        required = full / 2.0
        if net.dim != ch.dim:
            raise ValueError("net dimension mismatch")
        if net.eta > required:
            raise ValueError(
                f"net covering radius {net.eta} too coarse; require eta <= {required}"
            )
        states = net.points
        point_threshold = required
        mode = MODE_CERTIFICATE
    else:
        if samples is None or samples < 1:
            raise ValueError("sample mode requires a positive sample count")
        if seed is None:
            raise ValueError("sample mode requires a seed")
        states = sample_pure_states(ch.dim, samples, rng_from(seed))
        point_threshold = full
        mode = MODE_EVIDENCE
    ys = deviation_batch(ch, states, p)
    worst_idx = int(np.argmax(ys))
    worst = DeviationRecord(
        p=p,
        y_value=float(ys[worst_idx]),
        threshold=point_threshold,
        meets=bool(ys[worst_idx] <= point_threshold),
        state_seed=seed,
    )
    failures = int(np.sum(ys > point_threshold))
    return CertificationResult(
        certified=failures == 0,
        worst=worst,
        mode=mode,
        evaluated=int(states.shape[0]),
        failures=failures,
        point_threshold=point_threshold,
    )


@dataclass(frozen=True)
class OutputNormCheck:
    max_norm: float
    bound: float
    holds: bool
    samples: int
    note: str


def hayden_winter_bound(
    ch: RandomizingChannel,
    p,
    epsilon: float,
    samples: int,
    seed: Seed,
    evidence: CertificationResult | None = None,
) -> OutputNormCheck:
    """Check sup ||R(psi)||_p <= ((1+epsilon)/d)^(1-1/p) over sampled inputs.

    Requires p > 1 and a channel previously certified (or statistically
    evidenced) epsilon-randomizing; pass ``evidence`` to enforce that.
    """
    p = validate_exponent(p)
    if p == 1.0:
        raise ValueError("the output-norm bound is stated only for p > 1")
    if evidence is not None and not evidence.certified:
        raise ValueError("channel is not evidenced epsilon-randomizing")
    states = sample_pure_states(ch.dim, samples, rng_from(seed))
    w = ch.ensemble.members @ states.T
    outs = np.einsum("kis,kjs->sij", w, w.conj()) / ch.cardinality
    eigs = np.abs(np.linalg.eigvalsh(outs))
    if p == INF:
        norms = np.max(eigs, axis=1)
    else:
        norms = np.sum(eigs**p, axis=1) ** (1.0 / p)
    max_norm = float(np.max(norms))
    inv_p = 0.0 if p == INF else 1.0 / p
    bound = ((1.0 + epsilon) / ch.dim) ** (1.0 - inv_p)
    return OutputNormCheck(
        max_norm=max_norm,
        bound=bound,
        holds=max_norm <= bound + 1e-9,
        samples=samples,
        note=HW_HYPOTHESIS_NOTE,
    )
