"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``. Budgets are wall-clock
upper bounds; every statistical tolerance is fixed here, not calibrated.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy import stats

from randomix.experiments import (
    ExperimentConfig,
    bounded_difference_witness,
    check_bounded_difference,
    estimate_expected_deviation,
    mcdiarmid_tail,
    minimal_m_sweep,
)
from randomix.haar import (
    Seed,
    check_isotropy,
    rng_from,
    sample_ensemble,
    sample_haar_unitaries,
    sample_pure_state,
    sample_pure_states,
)
from randomix.net import build_net, size_bound, verify_covering
from randomix.norms import (
    INF,
    check_hoelder,
    check_interpolation,
    check_reverse_triangle,
    schatten_norm,
)
from randomix.randomizer import (
    RandomizingChannel,
    apply_channel_pure,
    certify_epsilon_randomizing,
    deviation_batch,
    hayden_winter_bound,
    pauli_channel,
)
from randomix.report import render_json, strip_timestamps


def report_line(n: int, ok: bool, text: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"CRITERION {n:2d}: {verdict} - {text}")
    assert ok


def test_criterion_01_norm_oracles():
    start = time.monotonic()
    rng = rng_from(Seed(101))
    dims = (2, 4, 8, 16)
    failures = 0
    for i in range(1000):
        d = dims[i % 4]
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        if i % 2:
            a = a.real.astype(complex)
        b = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        p = float(rng.uniform(1.0, 4.0))
        r = p + float(rng.uniform(0.5, 2.0))
        ok = (
            check_interpolation(a, p).holds
            and check_hoelder(a, p, r).holds
            and check_reverse_triangle(a, b, p).holds
        )
        failures += 0 if ok else 1

    fixture_ok = (
        abs(schatten_norm(np.diag([3.0, 4.0]), 1) - 7.0) <= 1e-12
        and abs(schatten_norm(np.diag([3.0, 4.0]), 2) - 5.0) <= 1e-12
        and abs(schatten_norm(np.diag([3.0, 4.0]), INF) - 4.0) <= 1e-12
    )

    closed_ok = True
    for d in dims:
        gap = np.diag([1.0] + [0.0] * (d - 1)) - np.eye(d) / d
        eigs = np.linalg.eigvalsh(gap)  # independent enumeration
        targets = {
            1: (2 * (d - 1) / d, float(np.sum(np.abs(eigs)))),
            2: (math.sqrt((d - 1) / d), float(np.sqrt(np.sum(eigs**2)))),
            INF: ((d - 1) / d, float(np.max(np.abs(eigs)))),
        }
        for p, (analytic, enumerated) in targets.items():
            closed_ok &= abs(schatten_norm(gap, p) - analytic) <= 1e-12
            closed_ok &= abs(enumerated - analytic) <= 1e-12

    elapsed = time.monotonic() - start
    ok = failures == 0 and fixture_ok and closed_ok and elapsed < 30
    report_line(
        1, ok, f"norm oracles: 0/{1000} failures={failures}, fixtures ok, {elapsed:.1f}s < 30s"
    )


def test_criterion_02_haar_correctness():
    start = time.monotonic()
    e1 = sample_ensemble(4, 8, Seed(202))
    e2 = sample_ensemble(4, 8, Seed(202))
    determinism = np.array_equal(e1.members, e2.members)
    residual = e1.max_unitarity_residual()

    isotropy_ok = True
    for d in (2, 8, 16):
        psi = sample_pure_state(d, Seed(203, d))
        isotropy_ok &= check_isotropy(d, 10_000, psi, Seed(204, d)).passed

    n = 100_000
    us = sample_haar_unitaries(2, n, rng_from(Seed(205)))
    mean = float(np.mean(np.abs(us[:, 0, 0]) ** 2))
    sigma = math.sqrt(1.0 / 12.0 / n)  # |U_11|^2 ~ Uniform(0,1) at d = 2
    moment_ok = abs(mean - 0.5) <= 3 * sigma

    elapsed = time.monotonic() - start
    ok = determinism and residual <= 1e-9 and isotropy_ok and moment_ok and elapsed < 120
    report_line(
        2,
        ok,
        f"haar: deterministic={determinism}, residual={residual:.2e}, "
        f"isotropy ok, |E-1/2|={abs(mean - 0.5):.2e} <= {3 * sigma:.2e}, {elapsed:.1f}s < 120s",
    )


def test_criterion_03_complete_randomization_fixture():
    ch = pauli_channel()
    states = sample_pure_states(2, 100, rng_from(Seed(303)))
    worst = 0.0
    for p in (1, 1.5, 2, 3, INF):
        worst = max(worst, float(np.max(deviation_batch(ch, states, p))))
    ok = worst <= 1e-12
    report_line(3, ok, f"pauli fixture: max Y over 100 states x 5 exponents = {worst:.2e} <= 1e-12")


def test_criterion_04_expected_deviation_bounds():
    start = time.monotonic()
    lines = []
    ok = True
    for m in (32, 64, 128):
        for p, r in ((1.0, 2.0), (2.0, 3.0)):
            cfg = ExperimentConfig(
                d=16, p=p, r=r, epsilon=1.0, m=m, trials=200, seed=Seed(404, m + int(p))
            )
            est = estimate_expected_deviation(cfg)
            ok &= est.mean_y <= est.bound_special + 2 * est.std_error
            lines.append(f"(m={m},p={p:g}): {est.mean_y:.3f}<={est.bound_special:.3f}+2se")
    elapsed = time.monotonic() - start
    ok &= elapsed < 600
    report_line(4, ok, f"expected deviation: {'; '.join(lines)}, {elapsed:.1f}s < 600s")


def test_criterion_05_bounded_difference():
    ok = True
    details = []
    for d, m, p in ((2, 2, 1.0), (8, 32, 1.0), (8, 32, 1.5), (8, 32, 2.0)):
        cfg = ExperimentConfig(d=d, p=p, epsilon=1.0, m=m, trials=1, seed=Seed(505, d * 100 + m))
        res = check_bounded_difference(cfg, replacements=500)
        ok &= res.max_delta <= res.bound + 1e-9
        details.append(f"(d={d},m={m},p={p:g}): {res.max_delta:.3f}<={res.bound:.3f}")
    witness = bounded_difference_witness()
    ok &= witness.max_delta >= 0.99 * witness.bound
    details.append(f"witness {witness.max_delta:.3f}>=0.99")
    report_line(5, ok, "bounded difference: " + "; ".join(details))


def test_criterion_06_tail_bound():
    ok = True
    details = []
    for t in (0.1, 0.2):
        cfg = ExperimentConfig(d=8, p=1, epsilon=1.0, m=64, trials=2000, seed=Seed(606))
        res = mcdiarmid_tail(cfg, t)
        se = math.sqrt(max(res.empirical_tail * (1 - res.empirical_tail), 0.0) / 2000)
        ok &= res.empirical_tail <= res.bound_natural + 3 * se
        details.append(f"t={t}: {res.empirical_tail:.4f}<={res.bound_natural:.3f}")
    report_line(6, ok, "sub-gaussian tail: " + "; ".join(details))


def test_criterion_07_net_module():
    net = build_net(2, eta=0.5, budget=10_000, seed=Seed(707))
    cover = verify_covering(net, probes=10_000, seed=Seed(708))
    size_ok = net.size <= size_bound(2, 0.5) == 10_000

    reduction_ok = True
    probes = sample_pure_states(2, 100, rng_from(Seed(709)))
    exps = (1, 1.5, 2, INF)
    for k in range(10):  # 10 channels x 100 probes = 10^3 pairs
        ch = RandomizingChannel(sample_ensemble(2, 8, Seed(710, k)))
        for j, probe in enumerate(probes):
            nearest = net.nearest(probe)
            input_dist = 2.0 * math.sqrt(max(0.0, 1.0 - abs(np.vdot(probe, nearest)) ** 2))
            gap = apply_channel_pure(ch, probe) - apply_channel_pure(ch, nearest)
            p = exps[j % 4]
            reduction_ok &= schatten_norm(gap, p) <= input_dist + 1e-9

    ok = cover.passed and size_ok and reduction_ok
    report_line(
        7,
        ok,
        f"net: covering max-min {cover.max_min_distance:.3f} <= 0.5, "
        f"size {net.size} <= 10000, reduction sound on 1000 pairs",
    )


def test_criterion_08_cardinality_scaling():
    start = time.monotonic()
    dims = (4, 8, 16, 32)
    m_stars = []
    dn_ok = True
    details = []
    for d in dims:
        cfg = ExperimentConfig(
            d=d,
            p=1,
            epsilon=0.8,
            m_range=(d + 1, d * d),
            trials=20,
            states_per_trial=50,
            seed=Seed(808, d),
        )
        rep = minimal_m_sweep(cfg, success_fraction=0.9)
        assert rep.m_star is not None, f"no m_star found at d={d}"
        dn = rep.baselines["dn_m"]
        dn_ok &= rep.m_star <= dn
        m_stars.append(rep.m_star)
        details.append(f"d={d}: m*={rep.m_star} (DN {dn:.0f})")
    reg = stats.linregress(dims, m_stars)
    r2 = reg.rvalue**2
    elapsed = time.monotonic() - start
    ok = dn_ok and reg.slope > 0 and r2 >= 0.8 and elapsed < 1800
    report_line(
        8,
        ok,
        f"cardinality: {'; '.join(details)}; slope={reg.slope:.2f}>0, "
        f"R2={r2:.3f}>=0.8, {elapsed:.0f}s < 1800s",
    )


def test_criterion_09_output_norm_bound():
    ok = True
    details = []
    for d in (4, 8):
        for eps in (0.3, 0.5):
            m = math.ceil(40 * d / eps**2)
            ch = RandomizingChannel(sample_ensemble(d, m, Seed(909, d * 10 + int(eps * 10))))
            for p in (2, INF):
                evidence = certify_epsilon_randomizing(
                    ch, p, eps, samples=200, seed=Seed(910, d)
                )
                ok &= evidence.certified
                res = hayden_winter_bound(ch, p, eps, samples=500, seed=Seed(911, d), evidence=evidence)
                ok &= res.max_norm <= res.bound + 1e-9
                details.append(f"(d={d},eps={eps},p={p if p != INF else 'inf'}): "
                               f"{res.max_norm:.3f}<={res.bound:.3f}")
    # complete-randomization saturation at epsilon -> 0
    for p in (2, INF):
        res = hayden_winter_bound(pauli_channel(), p, epsilon=0.0 + 1e-300, samples=50, seed=Seed(912))
        inv_p = 0.0 if p == INF else 1.0 / p
        ok &= abs(res.max_norm - 0.5 ** (1.0 - inv_p)) <= 1e-12
    report_line(9, ok, "output-norm bound: " + "; ".join(details) + "; pauli saturation exact")


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "randomix", *args], capture_output=True, text=True
    )


def stable(stdout: str) -> str:
    doc = strip_timestamps(json.loads(stdout))
    doc.get("manifest", {}).get("config", {}).pop("threads", None)
    doc.get("results", {}).get("config", {}).pop("threads", None)
    return render_json(doc)


def test_criterion_10_cli_determinism():
    ok = True
    sample_args = ["sample", "--d", "4", "--m", "8", "--seed", "77"]
    ok &= stable(run_cli(*sample_args).stdout) == stable(run_cli(*sample_args).stdout)

    sweep_args = [
        "sweep", "--d", "2", "--p", "1", "--epsilon", "0.8", "--m-min", "3",
        "--m-max", "12", "--trials", "6", "--states", "10", "--seed", "78",
    ]
    t1 = stable(run_cli(*sweep_args, "--threads", "1").stdout)
    t1_again = stable(run_cli(*sweep_args, "--threads", "1").stdout)
    t8 = stable(run_cli(*sweep_args, "--threads", "8").stdout)
    ok &= t1 == t1_again == t8
    report_line(10, ok, "CLI reports byte-identical across reruns and --threads {1,8}")
