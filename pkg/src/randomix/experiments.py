"""Monte Carlo experiments: expected deviation, bounded differences,
sub-Gaussian tails, and minimal-cardinality sweeps with baseline formulas.

Trials are independent given per-trial (seed, jump) assignments, so they may
run concurrently; aggregation is ordered by trial index, which makes reports
identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .haar import Seed, UnitaryEnsemble, rng_from, sample_haar_unitaries, sample_pure_states
from .net import MAX_NET_DIM, build_net
from .norms import INF, validate_exponent
from .randomizer import (
    RandomizingChannel,
    deviation_batch,
    pauli_channel,
    randomizing_threshold,
    threshold_exponent,
)

#: geometric grid ratio used by cardinality sweeps
GRID_RATIO = 1.3

#: annotations carried on every sweep report; ambiguities are recorded, not resolved
REPORT_NOTES = (
    "the general expected-deviation bound and its two worked specializations "
    "disagree in form; all applicable values are reported",
    "the tail bound is reported under both natural-log and base-2 exponentials",
    "quoted success-probability guarantees differ between sources "
    "(1 - e^-m vs 1 - exp(-d/2)); neither is tested directly",
    "an intermediate exponent in the published cardinality derivation is "
    "ambiguous (1/(rd)); no check is derived from it",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one deviation experiment or sweep."""

    d: int
    p: float
    epsilon: float
    m: int | None = None
    r: float | None = None
    trials: int = 100
    states_per_trial: int = 1
    seed: Seed = field(default_factory=lambda: Seed(0, 0))
    mode: str = "sample"  # "sample" or "net"
    m_range: tuple[int, int] | None = None
    eta: float | None = None
    threads: int = 1
    fixture: str | None = None  # "pauli" replaces Haar draws (debug hook)

    def __post_init__(self):
        validate_exponent(self.p)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.states_per_trial < 1:
            raise ValueError("states_per_trial must be >= 1")
        if self.r is not None and not self.r > self.p:
            raise ValueError(f"require r > p, got p={self.p}, r={self.r}")
        if self.mode not in ("sample", "net"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.fixture not in (None, "pauli"):
            raise ValueError(f"unknown fixture {self.fixture!r}")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p": "inf" if self.p == INF else float(self.p),
            "r": None if self.r is None else float(self.r),
            "epsilon": float(self.epsilon),
            "m": self.m,
            "m_range": None if self.m_range is None else list(self.m_range),
            "trials": self.trials,
            "states_per_trial": self.states_per_trial,
            "seed": self.seed.to_dict(),
            "mode": self.mode,
            "eta": self.eta,
            "threads": self.threads,
            "fixture": self.fixture,
        }


def _map_trials(fn, n: int, threads: int) -> list:
    if threads <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(n)))


def _sample_channel(cfg: ExperimentConfig, m: int, rng: np.random.Generator) -> RandomizingChannel:
    if cfg.fixture == "pauli":
        if cfg.d != 2:
            raise ValueError("pauli fixture requires d = 2")
        return pauli_channel()
    members = sample_haar_unitaries(cfg.d, m, rng)
    return RandomizingChannel(UnitaryEnsemble(dim=cfg.d, members=members, seed=cfg.seed))


@dataclass(frozen=True)
class DeviationBounds:
    """Closed-form upper bounds on E[Y] at given (d, m, p, r)."""

    general: float
    special: float | None

    @property
    def effective(self) -> float:
        return self.general if self.special is None else self.special


def expected_deviation_bound(d: int, m: int, p: float, r: float) -> DeviationBounds:
    """Printed general bound plus the worked (p=1, r=2) / (p=2, r=3) forms.

    general = (d^(1/p)/m^p + r/(m^(p-1) d^(1/p)))^(1/r); the specializations
    are sqrt(d/m) and (sqrt(d)/m^2 + 3/(m sqrt(d)))^(1/3) respectively.
    """
    p = validate_exponent(p)
    r = validate_exponent(r)
    if p == INF or r == INF:
        raise ValueError("bound requires finite exponents")
    if not r > p:
        raise ValueError("require r > p")
    general = (d ** (1.0 / p) / m**p + r / (m ** (p - 1.0) * d ** (1.0 / p))) ** (1.0 / r)
    special = None
    if (p, r) == (1.0, 2.0):
        special = math.sqrt(d / m)
    elif (p, r) == (2.0, 3.0):
        special = (math.sqrt(d) / m**2 + 3.0 / (m * math.sqrt(d))) ** (1.0 / 3.0)
    return DeviationBounds(general=general, special=special)


def _trial_deviations(cfg: ExperimentConfig, m: int, trial: int, n_states: int) -> np.ndarray:
    rng = rng_from(cfg.seed, jump=trial + 1)
    ch = _sample_channel(cfg, m, rng)
    states = sample_pure_states(cfg.d, n_states, rng)
    return deviation_batch(ch, states, cfg.p)


@dataclass(frozen=True)
class ExpectationEstimate:
    mean_y: float
    std_error: float
    bound_general: float
    bound_special: float | None
    within: bool
    trials: int

    def to_dict(self) -> dict:
        return {
            "mean_y": self.mean_y,
            "std_error": self.std_error,
            "bound_general": self.bound_general,
            "bound_special": self.bound_special,
            "within": self.within,
            "trials": self.trials,
        }


def estimate_expected_deviation(cfg: ExperimentConfig) -> ExpectationEstimate:
    """Estimate E[Y] over fresh (ensemble, state) pairs and compare to bounds.

    ``within`` compares the sample mean against the worked specialization
    when (p, r) matches one, otherwise against the general form.
    """
    if cfg.m is None:
        raise ValueError("config must fix m")
    if cfg.r is None:
        raise ValueError("config must set the companion exponent r")
    if cfg.trials < 30:
        raise ValueError("need at least 30 trials")
    ys = np.array(
        _map_trials(lambda i: float(_trial_deviations(cfg, cfg.m, i, 1)[0]), cfg.trials, cfg.threads)
    )
    mean = float(np.mean(ys))
    se = float(np.std(ys, ddof=1) / math.sqrt(cfg.trials))
    bounds = expected_deviation_bound(cfg.d, cfg.m, cfg.p, cfg.r)
    return ExpectationEstimate(
        mean_y=mean,
        std_error=se,
        bound_general=bounds.general,
        bound_special=bounds.special,
        within=mean <= bounds.effective + 2.0 * se,
        trials=cfg.trials,
    )


@dataclass(frozen=True)
class BoundedDifferenceCheck:
    max_delta: float
    bound: float
    holds: bool
    replacements: int

    def to_dict(self) -> dict:
        return {
            "max_delta": self.max_delta,
            "bound": self.bound,
            "holds": self.holds,
            "replacements": self.replacements,
        }


def check_bounded_difference(cfg: ExperimentConfig, replacements: int) -> BoundedDifferenceCheck:
    """Replace one ensemble member at a time and track |Y - Y_hat| <= 2^(1/p)/m."""
    if cfg.m is None or cfg.m < 2:
        raise ValueError("config must fix m >= 2")
    if replacements < 1:
        raise ValueError("replacements must be >= 1")
    rng = rng_from(cfg.seed)
    ch = _sample_channel(cfg, cfg.m, rng)
    m, d = ch.cardinality, cfg.d
    psi = sample_pure_states(d, 1, rng)[0]
    v = ch.ensemble.members @ psi  # (m, d) rows U_i psi

    def y_of(rows: np.ndarray) -> float:
        out = np.einsum("ki,kj->ij", rows, rows.conj()) / m
        eigs = np.abs(np.linalg.eigvalsh(out - np.eye(d) / d))
        if cfg.p == INF:
            return float(np.max(eigs))
        return float(np.sum(eigs**cfg.p) ** (1.0 / cfg.p))

    y0 = y_of(v)
    max_delta = 0.0
    for _ in range(replacements):
        idx = int(rng.integers(m))
        fresh = sample_haar_unitaries(d, 1, rng)[0]
        rows = v.copy()
        rows[idx] = fresh @ psi
        max_delta = max(max_delta, abs(y_of(rows) - y0))
    # 2^(1/p) -> 1 as p -> inf
    bound = 1.0 / m if cfg.p == INF else 2.0 ** (1.0 / cfg.p) / m
    return BoundedDifferenceCheck(
        max_delta=max_delta, bound=bound, holds=max_delta <= bound + 1e-9, replacements=replacements
    )


def bounded_difference_witness() -> BoundedDifferenceCheck:
    """Explicit near-saturation of the 2^(1/p)/m bound at d = 2, m = 2, p = 1.

    Ensemble {I, I} on |0>: Y = ||psi - I/2||_1 = 1. Replacing the second
    member by the bit flip sends |0> to |1>, and (psi + psi_perp)/2 = I/2,
    so Y_hat = 0 and the difference equals the bound 2/2 = 1 exactly.
    """
    psi = np.array([1.0, 0.0], dtype=np.complex128)
    flip = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)
    half = np.eye(2) / 2.0

    def y_of(u1, u2):
        proj = np.outer(psi, psi.conj())
        out = 0.5 * (u1 @ proj @ u1.conj().T + u2 @ proj @ u2.conj().T)
        return float(np.sum(np.abs(np.linalg.eigvalsh(out - half))))

    delta = abs(y_of(eye, eye) - y_of(eye, flip))
    return BoundedDifferenceCheck(max_delta=delta, bound=1.0, holds=delta <= 1.0 + 1e-9, replacements=1)


@dataclass(frozen=True)
class TailCheck:
    empirical_tail: float
    bound_natural: float
    bound_base2: float
    within: bool
    t: float
    trials: int

    def to_dict(self) -> dict:
        return {
            "empirical_tail": self.empirical_tail,
            "bound_natural": self.bound_natural,
            "bound_base2": self.bound_base2,
            "within": self.within,
            "t": self.t,
            "trials": self.trials,
        }


def mcdiarmid_tail(cfg: ExperimentConfig, t: float) -> TailCheck:
    """Empirical P[|Y - mean| >= t] against 2 exp(-m t^2 2^(1-2/p)).

    The sub-Gaussian bound follows from the per-member bounded difference
    2^(1/p)/m. The natural-exponential form drives the verdict; the base-2
    reading is reported alongside.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if cfg.m is None:
        raise ValueError("config must fix m")
    if cfg.trials < 1000:
        raise ValueError("need at least 1000 trials for a meaningful tail")
    ys = np.array(
        _map_trials(lambda i: float(_trial_deviations(cfg, cfg.m, i, 1)[0]), cfg.trials, cfg.threads)
    )
    mean = float(np.mean(ys))
    emp = float(np.mean(np.abs(ys - mean) >= t))
    exponent = cfg.m * t * t * 2.0 ** (1.0 - 2.0 / cfg.p) if cfg.p != INF else cfg.m * t * t * 2.0
    bound_nat = 2.0 * math.exp(-exponent)
    bound_b2 = 2.0 * 2.0 ** (-exponent)
    se = math.sqrt(max(emp * (1.0 - emp), 0.0) / cfg.trials)
    return TailCheck(
        empirical_tail=emp,
        bound_natural=bound_nat,
        bound_base2=bound_b2,
        within=emp <= bound_nat + 3.0 * se,
        t=t,
        trials=cfg.trials,
    )


def evaluate_cardinality_formulas(d: int, epsilon: float, p: float, c_p: float) -> dict:
    """Cardinality formulas with base-2 logarithms.

    target_m is c_p d/eps^2 log2(10 d^((p-1)/p)/eps); the baselines are
    HLSW 134 d log2(d)/eps^2, DN 37 d/eps^2 log2(15/eps), and the Aubrun
    form C d/eps^2 evaluated at C = c_p.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if c_p <= 0:
        raise ValueError("c_p must be positive")
    expo = threshold_exponent(p)
    return {
        "target_m": c_p * d / epsilon**2 * math.log2(10.0 * d**expo / epsilon),
        "hlsw_m": 134.0 * d * math.log2(d) / epsilon**2,
        "dn_m": 37.0 * d / epsilon**2 * math.log2(15.0 / epsilon),
        "aubrun_m": c_p * d / epsilon**2,
    }


def geometric_grid(m_min: int, m_max: int, ratio: float = GRID_RATIO) -> list[int]:
    if m_min < 2 or m_max < m_min:
        raise ValueError("need 2 <= m_min <= m_max")
    grid = [m_min]
    while True:
        nxt = max(grid[-1] + 1, math.ceil(grid[-1] * ratio))
        if nxt > m_max:
            break
        grid.append(nxt)
    return grid


@dataclass(frozen=True)
class GridCell:
    m: int
    pass_fraction: float
    mean_y: float
    max_y: float
    std_error: float
    trials: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "pass_fraction": self.pass_fraction,
            "mean_y": self.mean_y,
            "max_y": self.max_y,
            "std_error": self.std_error,
            "trials": self.trials,
        }


@dataclass(frozen=True)
class SweepReport:
    config: ExperimentConfig
    success_fraction: float
    grid: tuple[GridCell, ...]
    m_star: int | None
    m_star_pass_fraction: float | None
    previous_m: int | None
    previous_pass_fraction: float | None
    c_p_fitted: float | None
    target_m_unit: float
    baselines: dict
    aubrun_constant_fitted: float | None
    notes: tuple[str, ...] = REPORT_NOTES

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "success_fraction": self.success_fraction,
            "grid": [c.to_dict() for c in self.grid],
            "m_star": self.m_star,
            "m_star_pass_fraction": self.m_star_pass_fraction,
            "previous_m": self.previous_m,
            "previous_pass_fraction": self.previous_pass_fraction,
            "c_p_fitted": self.c_p_fitted,
            "target_m_unit": self.target_m_unit,
            "baselines": dict(self.baselines),
            "aubrun_constant_fitted": self.aubrun_constant_fitted,
            "notes": list(self.notes),
        }


def minimal_m_sweep(cfg: ExperimentConfig, success_fraction: float = 0.9) -> SweepReport:
    """Sweep m over a geometric grid; find the smallest m meeting the criterion.

    A trial succeeds when every evaluated state meets the p-threshold: in
    sample mode, ``states_per_trial`` fresh states at the full threshold;
    in net mode, all net points at the half threshold. m_star is the
    smallest grid m whose trial pass fraction reaches ``success_fraction``.
    """
    if not 0.0 < success_fraction <= 1.0:
        raise ValueError("success_fraction must lie in (0, 1]")
    if cfg.m_range is None:
        raise ValueError("config must carry an m range")
    grid = geometric_grid(cfg.m_range[0], cfg.m_range[1])

    if cfg.mode == "net":
        if cfg.d > MAX_NET_DIM:
            raise ValueError(
                f"net mode is guarded to d <= {MAX_NET_DIM}; use sample mode for d={cfg.d}"
            )
        required_eta = randomizing_threshold(cfg.d, cfg.p, cfg.epsilon) / 2.0
        eta = min(cfg.eta, required_eta) if cfg.eta is not None else required_eta
        net = build_net(cfg.d, eta, budget=2000, seed=Seed(cfg.seed.value, cfg.seed.stream + 1))
        point_threshold = required_eta  # half threshold at net points
        fixed_states = net.points
    else:
        point_threshold = randomizing_threshold(cfg.d, cfg.p, cfg.epsilon)
        fixed_states = None

    cells: list[GridCell] = []
    for gi, m in enumerate(grid):

        def run_trial(trial: int, _m=m, _gi=gi):
            rng = rng_from(cfg.seed, jump=_gi * cfg.trials + trial + 1)
            ch = _sample_channel(cfg, _m, rng)
            states = (
                fixed_states
                if fixed_states is not None
                else sample_pure_states(cfg.d, cfg.states_per_trial, rng)
            )
            ys = deviation_batch(ch, states, cfg.p)
            return bool(np.all(ys <= point_threshold)), float(np.mean(ys)), float(np.max(ys))

        results = _map_trials(run_trial, cfg.trials, cfg.threads)
        passes = np.array([r[0] for r in results])
        means = np.array([r[1] for r in results])
        maxes = np.array([r[2] for r in results])
        cells.append(
            GridCell(
                m=m,
                pass_fraction=float(np.mean(passes)),
                mean_y=float(np.mean(means)),
                max_y=float(np.max(maxes)),
                std_error=float(np.std(means, ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else 0.0,
                trials=cfg.trials,
            )
        )

    m_star = None
    m_star_pf = None
    prev_m = None
    prev_pf = None
    for i, cell in enumerate(cells):
        if cell.pass_fraction >= success_fraction:
            m_star = cell.m
            m_star_pf = cell.pass_fraction
            if i > 0:
                prev_m = cells[i - 1].m
                prev_pf = cells[i - 1].pass_fraction
            break

    expo = threshold_exponent(cfg.p)
    target_unit = cfg.d / cfg.epsilon**2 * math.log2(10.0 * cfg.d**expo / cfg.epsilon)
    c_p_fit = None if m_star is None else m_star / target_unit
    aubrun_fit = None if m_star is None else m_star * cfg.epsilon**2 / cfg.d
    baselines = {
        "hlsw_m": 134.0 * cfg.d * math.log2(cfg.d) / cfg.epsilon**2,
        "dn_m": 37.0 * cfg.d / cfg.epsilon**2 * math.log2(15.0 / cfg.epsilon),
        "aubrun_form": "C*d/epsilon^2",
    }
    return SweepReport(
        config=cfg,
        success_fraction=success_fraction,
        grid=tuple(cells),
        m_star=m_star,
        m_star_pass_fraction=m_star_pf,
        previous_m=prev_m,
        previous_pass_fraction=prev_pf,
        c_p_fitted=c_p_fit,
        target_m_unit=target_unit,
        baselines=baselines,
        aubrun_constant_fitted=aubrun_fit,
    )
