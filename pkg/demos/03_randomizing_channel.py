"""Demo: mixing channels and the epsilon-randomizing deviation statistic.

R(psi) = (1/m) sum_i U_i psi U_i†. The channel is epsilon-randomizing in
the p-norm when ||R(psi) - I/d||_p <= epsilon / d^((p-1)/p) for every pure
input. The Pauli ensemble {I, X, Y, Z} randomizes d = 2 completely; random
Haar ensembles get close once m is large enough.
"""

import numpy as np

from randomix import (
    Seed,
    certify_epsilon_randomizing,
    pauli_channel,
    randomizing_threshold,
    sample_ensemble,
)
from randomix.haar import rng_from, sample_pure_states
from randomix.norms import INF
from randomix.randomizer import RandomizingChannel, deviation_batch

# --- exact case: the one-time pad ---------------------------------------
ch = pauli_channel()
states = sample_pure_states(2, 50, rng_from(Seed(1)))
ys = deviation_batch(ch, states, 1)
print(f"pauli channel, 50 random inputs: max ||R(psi) - I/2||_1 = {np.max(ys):.2e}")

# --- approximate case: Haar ensembles ------------------------------------
d, epsilon, p = 8, 0.5, 1
thr = randomizing_threshold(d, p, epsilon)
print(f"\nd={d}, epsilon={epsilon}: trace-norm threshold = {thr:.4f}")
for m in (16, 64, 256, 1024):
    ch = RandomizingChannel(sample_ensemble(d, m, Seed(42, m)))
    res = certify_epsilon_randomizing(ch, p, epsilon, samples=200, seed=Seed(43, m))
    print(
        f"  m={m:5d}: worst Y = {res.worst.y_value:.4f}  "
        f"({res.mode}) -> {'meets' if res.certified else 'exceeds'} threshold"
    )

# thresholds shrink as p grows: the operator norm is hardest to satisfy
print("\nthresholds across p at d=8, epsilon=0.5:")
for p in (1, 2, INF):
    label = "inf" if p == INF else p
    print(f"  p={label}: {randomizing_threshold(8, p, 0.5):.4f}")
