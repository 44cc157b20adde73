"""Greedy eta-nets on pure states under the trace-norm distance.

A maximal eta/2-packing is an eta-covering: any state farther than eta/2
from every admitted point could itself have been admitted. The greedy
builder stops after a budget of consecutive rejections, so maximality is
approximate and the covering property is then measured empirically by
:func:`verify_covering` instead of assumed. Net sizes grow like
(5/eta)^(2d), hence the hard guard d <= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .haar import PureState, Seed, rng_from, sample_pure_states

#: nets are only feasible at tiny dimension; larger d must use sample plans
MAX_NET_DIM = 3


def size_bound(d: int, eta: float) -> int:
    """Volumetric ceiling (5/eta)^(2d) on the size of an eta-net."""
    return math.ceil((5.0 / eta) ** (2 * d))


def trace_distance_pure(a: PureState, b: PureState) -> float:
    """||aa† - bb†||_1 = 2 sqrt(1 - |<a|b>|^2)."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return 2.0 * math.sqrt(max(0.0, 1.0 - overlap))


def _distances_to(points: np.ndarray, state: np.ndarray) -> np.ndarray:
    overlaps = np.abs(points @ state.conj()) ** 2
    return 2.0 * np.sqrt(np.maximum(0.0, 1.0 - overlaps))


@dataclass(frozen=True)
class Net:
    """Finite set of pure states with covering radius eta in trace norm."""

    dim: int
    eta: float
    points: np.ndarray  # (n, d) rows are pure states
    construction_seed: Seed

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def min_distance(self, state: np.ndarray) -> float:
        return float(np.min(_distances_to(self.points, state)))

    def nearest(self, state: np.ndarray) -> np.ndarray:
        return self.points[int(np.argmin(_distances_to(self.points, state)))]

    def to_dict(self) -> dict:
        return {
            "dim": int(self.dim),
            "eta": float(self.eta),
            "construction_seed": self.construction_seed.to_dict(),
            "points": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.points
            ],
        }

    @staticmethod
    def from_dict(data: dict) -> "Net":
        points = np.array(
            [[complex(re, im) for re, im in row] for row in data["points"]],
            dtype=np.complex128,
        )
        seed = data["construction_seed"]
        return Net(
            dim=int(data["dim"]),
            eta=float(data["eta"]),
            points=points,
            construction_seed=Seed(int(seed["value"]), int(seed["stream"])),
        )


def build_net(d: int, eta: float, budget: int, seed: Seed) -> Net:
    """Greedy maximal packing at radius eta/2 over random candidates.

    A candidate is admitted iff its trace distance to every admitted point
    exceeds eta/2; construction stops after ``budget`` consecutive
    rejections. Covering at radius eta then follows from maximality and is
    re-verified empirically by the caller.
    """
    if d > MAX_NET_DIM:
        raise ValueError(f"net construction is guarded to d <= {MAX_NET_DIM}, got d={d}")
    if not 0.0 < eta <= 2.0:
        raise ValueError("eta must lie in (0, 2]")
    if budget < 1:
        raise ValueError("budget must be positive")
    rng = rng_from(seed)
    admitted: list[np.ndarray] = []
    stack: np.ndarray | None = None
    rejections = 0
    while rejections < budget:
        cand = sample_pure_states(d, 1, rng)[0]
        if stack is None or np.min(_distances_to(stack, cand)) > eta / 2.0:
            admitted.append(cand)
            stack = np.array(admitted)
            rejections = 0
        else:
            rejections += 1
    assert stack is not None  # eta <= 2 guarantees the first candidate is admitted
    return Net(dim=d, eta=eta, points=stack, construction_seed=seed)


@dataclass(frozen=True)
class CoveringCheck:
    max_min_distance: float
    passed: bool
    probes: int


def verify_covering(net: Net, probes: int, seed: Seed) -> CoveringCheck:
    """Probe random pure states; pass iff every probe is within eta of the net."""
    if probes < 100:
        raise ValueError("need at least 100 probes")
    rng = rng_from(seed)
    worst = 0.0
    remaining = probes
    while remaining:
        k = min(4096, remaining)
        batch = sample_pure_states(net.dim, k, rng)
        overlaps = np.abs(batch @ net.points.conj().T) ** 2  # (k, n)
        dists = 2.0 * np.sqrt(np.maximum(0.0, 1.0 - overlaps))
        worst = max(worst, float(np.max(np.min(dists, axis=1))))
        remaining -= k
    return CoveringCheck(max_min_distance=worst, passed=worst <= net.eta, probes=probes)
