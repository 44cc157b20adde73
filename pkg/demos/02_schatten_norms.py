"""Demo: Schatten p-norms and the inequalities the library self-checks.

For a matrix A with singular values s_i, ||A||_p = (sum s_i^p)^(1/p).
Three structural facts are verified on every random draw below:
  interpolation      ||A||_inf <= ||A||_p <= ||A||_1
  Hoelder            ||A||_r <= ||A||_p <= d^(1/p - 1/r) ||A||_r   (p < r)
  reverse triangle   | ||A||_p - ||B||_p | <= ||A - B||_p
"""

import numpy as np

from randomix import Seed, schatten_norm
from randomix.haar import rng_from
from randomix.norms import INF, check_hoelder, check_interpolation, check_reverse_triangle

a = np.diag([3.0, 4.0])
print("diag(3, 4):")
for p in (1, 2, INF):
    print(f"  ||A||_{p if p != INF else 'inf'} = {schatten_norm(a, p)}")

rng = rng_from(Seed(7))
failures = 0
for _ in range(500):
    d = int(rng.integers(2, 9))
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    y = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    p = float(rng.uniform(1.0, 4.0))
    r = p + float(rng.uniform(0.5, 2.0))
    ok = (
        check_interpolation(x, p).holds
        and check_hoelder(x, p, r).holds
        and check_reverse_triangle(x, y, p).holds
    )
    failures += 0 if ok else 1
print(f"\n500 random matrices, 3 inequalities each: {failures} failures")

# the deviation of a pure projector from the maximally mixed state has a
# closed form in every p-norm; show it at d = 4, p = 1
d = 4
gap = np.diag([1.0] + [0.0] * (d - 1)) - np.eye(d) / d
print(f"\n||psi - I/{d}||_1 = {schatten_norm(gap, 1)}  (analytic 2(d-1)/d = {2 * (d - 1) / d})")
