"""Demo: from statistical evidence to a certificate via a trace-norm net.

Random sampling of inputs only ever yields evidence. A finite eta-net of
pure states with eta <= epsilon / (2 d^((p-1)/p)) upgrades that: checking
the *half* threshold at every net point bounds the deviation at *all* pure
states, because ||R(phi) - R(phi~)||_p <= ||phi - phi~||_1 <= eta.
Net construction is guarded to d <= 3 (the net size grows like (5/eta)^(2d)).
"""

from randomix import Seed, certify_epsilon_randomizing, sample_ensemble
from randomix.net import build_net, size_bound, verify_covering
from randomix.randomizer import RandomizingChannel, randomizing_threshold

d, p, epsilon = 2, 1, 0.8
required_eta = randomizing_threshold(d, p, epsilon) / 2.0
print(f"d={d}, p={p}, epsilon={epsilon}: need a net with eta <= {required_eta:.3f}")

net = build_net(d, eta=required_eta, budget=5000, seed=Seed(11))
print(f"greedy packing produced {net.size} points (worst-case bound {size_bound(d, required_eta):.0f})")

cover = verify_covering(net, probes=5000, seed=Seed(12))
print(f"covering audit on 5000 probes: max nearest distance {cover.max_min_distance:.3f} "
      f"-> {'covers' if cover.passed else 'GAP FOUND'}")

ch = RandomizingChannel(sample_ensemble(d, 48, Seed(13)))

evidence = certify_epsilon_randomizing(ch, p, epsilon, samples=500, seed=Seed(14))
print(f"\nsample plan:  worst Y {evidence.worst.y_value:.4f}, mode = {evidence.mode!r}")

cert = certify_epsilon_randomizing(ch, p, epsilon, net=net)
print(f"net check:    worst Y {cert.worst.y_value:.4f} vs half threshold "
      f"{cert.point_threshold:.4f}, mode = {cert.mode!r}")
print("certified epsilon-randomizing over ALL pure inputs:", cert.certified)
