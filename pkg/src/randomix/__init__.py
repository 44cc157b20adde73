"""Random-unitary mixing channels with empirical Schatten p-norm
randomization certificates: seeded Haar sampling, norm inequality oracles,
trace-norm nets on pure states, and Monte Carlo cardinality experiments.
"""

from .haar import PureState, Seed, UnitaryEnsemble, sample_ensemble, sample_haar_unitary, sample_pure_state
from .norms import INF, schatten_norm
from .randomizer import (
    RandomizingChannel,
    apply_channel,
    certify_epsilon_randomizing,
    deviation,
    pauli_channel,
    randomizing_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "PureState",
    "RandomizingChannel",
    "Seed",
    "UnitaryEnsemble",
    "apply_channel",
    "certify_epsilon_randomizing",
    "deviation",
    "pauli_channel",
    "randomizing_threshold",
    "sample_ensemble",
    "sample_haar_unitary",
    "sample_pure_state",
    "schatten_norm",
]
