"""Demo: how many unitaries does epsilon-randomization actually take?

Sweep the ensemble cardinality m over a geometric grid and find the
smallest m whose trial pass fraction reaches 90%. The published
constructions suggest m = O(d log(d^((p-1)/p)/epsilon) / epsilon^2);
empirically the minimal m is far below the quoted constants (HLSW, DN),
consistent with the near-linear-in-d scaling.
"""

from randomix import Seed
from randomix.experiments import ExperimentConfig, evaluate_cardinality_formulas, minimal_m_sweep

epsilon, p = 0.8, 1

print(f"epsilon={epsilon}, p={p}, success fraction 0.9, 20 trials x 50 states\n")
print(f"{'d':>4} {'m*':>6} {'fitted c_p':>10} {'DN':>8} {'HLSW':>8}")
for d in (4, 8, 16):
    cfg = ExperimentConfig(
        d=d, p=p, epsilon=epsilon, m_range=(d + 1, d * d),
        trials=20, states_per_trial=50, seed=Seed(808, d),
    )
    rep = minimal_m_sweep(cfg, success_fraction=0.9)
    print(
        f"{d:>4} {rep.m_star!s:>6} {rep.c_p_fitted:>10.3f} "
        f"{rep.baselines['dn_m']:>8.0f} {rep.baselines['hlsw_m']:>8.0f}"
    )

# the closed-form targets those baselines come from, at one setting
table = evaluate_cardinality_formulas(d=16, epsilon=0.5, p=1, c_p=37.0)
print("\nclosed-form cardinalities at d=16, epsilon=0.5, p=1, c_p=37:")
for name, value in table.items():
    print(f"  {name:>10}: {value:.1f}")
