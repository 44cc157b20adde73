"""Command-line front end.

Subcommands: sample, norms, randomize, net, sweep, verify, formulas.
Every run emits a JSON report embedding its manifest; identical seeds give
byte-identical reports (timestamps aside) at any --threads value. Exit
codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import experiments, net as netmod, norms, randomizer, report
from .haar import Seed, check_isotropy, rng_from, sample_ensemble, sample_pure_state
from .linalg import unitarity_residual

SEED_ENV_VAR = "RANDOMIZER_SEED"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    """Malformed configuration; message names the offending field."""


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _exponent(text: str) -> float:
    try:
        return norms.parse_exponent(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randomix",
        description="Random-unitary mixing channels with empirical p-norm randomization checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV_VAR} or 0)")
        sp.add_argument("--stream", type=int, default=0, help="RNG sub-stream index")
        sp.add_argument("--threads", type=_positive_int, default=1)
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = sub.add_parser("sample", help="sample a unitary ensemble and summarize it")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--m", type=_positive_int, required=True)
    sp.add_argument("--isotropy-samples", type=_positive_int, default=2000)
    common(sp)

    sp = sub.add_parser("norms", help="batch-run the norm inequality oracles")
    sp.add_argument("--count", type=_positive_int, default=1000)
    sp.add_argument("--dims", type=_positive_int, nargs="+", default=[2, 4, 8, 16])
    common(sp)

    sp = sub.add_parser("randomize", help="evaluate a channel's deviation on sampled states")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--m", type=_positive_int, required=True)
    sp.add_argument("--p", type=_exponent, default=1.0)
    sp.add_argument("--epsilon", type=_positive_float, required=True)
    sp.add_argument("--states", type=_positive_int, default=100)
    common(sp)

    sp = sub.add_parser("net", help="build and verify a trace-norm net on pure states")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--eta", type=_positive_float, required=True)
    sp.add_argument("--budget", type=_positive_int, default=2000)
    sp.add_argument("--probes", type=_positive_int, default=1000)
    common(sp)

    sp = sub.add_parser("sweep", help="minimal-cardinality sweep against the threshold")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--p", type=_exponent, default=1.0)
    sp.add_argument("--epsilon", type=_positive_float, required=True)
    sp.add_argument("--m-min", type=_positive_int, required=True)
    sp.add_argument("--m-max", type=_positive_int, required=True)
    sp.add_argument("--trials", type=_positive_int, default=20)
    sp.add_argument("--states", type=_positive_int, default=50)
    sp.add_argument("--mode", choices=["sample", "net"], default="sample")
    sp.add_argument("--eta", type=_positive_float, default=None)
    sp.add_argument("--success-fraction", type=_positive_float, default=0.9)
    common(sp)

    sp = sub.add_parser("verify", help="run a task described by a config file")
    sp.add_argument("config", help="path to a flat JSON config document")
    common(sp)

    sp = sub.add_parser("formulas", help="print the cardinality formula table")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--epsilon", type=_positive_float, required=True)
    sp.add_argument("--p", type=_exponent, default=1.0)
    sp.add_argument("--c-p", type=_positive_float, default=1.0)
    common(sp)

    return parser


def _seed_of(args) -> Seed:
    value = args.seed if args.seed is not None else _default_seed()
    return Seed(value=value, stream=args.stream)


def _emit(args, command: str, config: dict, seed: Seed, results: dict, passed: bool,
          csv_text: str | None = None) -> int:
    manifest = report.make_manifest(command, config, seed.to_dict())
    manifest["finished"] = report.utc_now()
    doc = {"manifest": manifest, "results": results, "passed": passed}
    if args.format == "csv":
        if csv_text is None:
            raise ConfigError("format: csv output is only available for sweep tables")
        text = csv_text
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        text = report.write_report(args.out, doc)
        if not args.out:
            sys.stdout.write(text)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_sample(args) -> int:
    seed = _seed_of(args)
    ens = sample_ensemble(args.d, args.m, seed)
    residuals = [unitarity_residual(u) for u in ens.members]
    psi = sample_pure_state(args.d, Seed(seed.value, seed.stream + 1))
    iso = check_isotropy(args.d, args.isotropy_samples, psi, Seed(seed.value, seed.stream + 2))
    passed = max(residuals) <= 1e-9 and iso.passed
    results = {
        "unitarity_residuals": residuals,
        "max_unitarity_residual": max(residuals),
        "isotropy": {
            "deviation": iso.deviation,
            "tolerance": iso.tolerance,
            "passed": iso.passed,
            "n_samples": iso.n_samples,
        },
    }
    config = {"d": args.d, "m": args.m, "isotropy_samples": args.isotropy_samples}
    return _emit(args, "sample", config, seed, results, passed)


def cmd_norms(args) -> int:
    seed = _seed_of(args)
    rng = rng_from(seed)
    checked = 0
    failures = 0
    for i in range(args.count):
        d = int(args.dims[i % len(args.dims)])
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        if i % 2 == 0:
            a = a.real.astype(np.complex128)  # mix in real matrices
        b = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        p = float(rng.uniform(1.0, 4.0))
        r = p + float(rng.uniform(0.5, 2.0))
        ok = (
            norms.check_interpolation(a, p).holds
            and norms.check_hoelder(a, p, r).holds
            and norms.check_reverse_triangle(a, b, p).holds
        )
        checked += 1
        failures += 0 if ok else 1
    results = {"checked": checked, "failures": failures, "dims": list(args.dims)}
    config = {"count": args.count, "dims": list(args.dims)}
    return _emit(args, "norms", config, seed, results, failures == 0)


def _certification_dict(res: randomizer.CertificationResult) -> dict:
    return {
        "certified": res.certified,
        "mode": res.mode,
        "evaluated": res.evaluated,
        "failures": res.failures,
        "point_threshold": res.point_threshold,
        "worst": {
            "p": "inf" if res.worst.p == norms.INF else res.worst.p,
            "y_value": res.worst.y_value,
            "threshold": res.worst.threshold,
            "meets": res.worst.meets,
        },
    }


def cmd_randomize(args) -> int:
    seed = _seed_of(args)
    ens = sample_ensemble(args.d, args.m, seed)
    ch = randomizer.RandomizingChannel(ens)
    res = randomizer.certify_epsilon_randomizing(
        ch, args.p, args.epsilon, samples=args.states, seed=Seed(seed.value, seed.stream + 1)
    )
    config = {
        "d": args.d,
        "m": args.m,
        "p": "inf" if args.p == norms.INF else args.p,
        "epsilon": args.epsilon,
        "states": args.states,
    }
    return _emit(args, "randomize", config, seed, _certification_dict(res), res.certified)


def cmd_net(args) -> int:
    seed = _seed_of(args)
    if args.d > netmod.MAX_NET_DIM:
        raise ConfigError(f"d: net construction is guarded to d <= {netmod.MAX_NET_DIM}")
    built = netmod.build_net(args.d, args.eta, args.budget, seed)
    cov = netmod.verify_covering(built, args.probes, Seed(seed.value, seed.stream + 1))
    bound = netmod.size_bound(args.d, args.eta)
    passed = cov.passed and built.size <= bound
    results = {
        "net": built.to_dict(),
        "size": built.size,
        "size_bound": bound,
        "covering": {
            "max_min_distance": cov.max_min_distance,
            "passed": cov.passed,
            "probes": cov.probes,
        },
    }
    config = {"d": args.d, "eta": args.eta, "budget": args.budget, "probes": args.probes}
    return _emit(args, "net", config, seed, results, passed)


def cmd_sweep(args) -> int:
    seed = _seed_of(args)
    cfg = experiments.ExperimentConfig(
        d=args.d,
        p=args.p,
        epsilon=args.epsilon,
        m_range=(args.m_min, args.m_max),
        trials=args.trials,
        states_per_trial=args.states,
        seed=seed,
        mode=args.mode,
        eta=args.eta,
        threads=args.threads,
    )
    if cfg.mode == "net" and cfg.d > netmod.MAX_NET_DIM:
        raise ConfigError(f"d: net mode is guarded to d <= {netmod.MAX_NET_DIM}")
    rep = experiments.minimal_m_sweep(cfg, success_fraction=args.success_fraction)
    results = rep.to_dict()
    csv_text = report.sweep_to_csv([c.to_dict() for c in rep.grid])
    return _emit(args, "sweep", cfg.to_dict(), seed, results, rep.m_star is not None, csv_text)


def cmd_formulas(args) -> int:
    seed = _seed_of(args)
    table = experiments.evaluate_cardinality_formulas(args.d, args.epsilon, args.p, args.c_p)
    config = {
        "d": args.d,
        "epsilon": args.epsilon,
        "p": "inf" if args.p == norms.INF else args.p,
        "c_p": args.c_p,
    }
    return _emit(args, "formulas", config, seed, dict(table), True)


def _cfg_get(cfg: dict, key: str, kind, required=True, default=None):
    if key not in cfg:
        if required:
            raise ConfigError(f"{key}: missing required config field")
        return default
    try:
        if kind is float and isinstance(cfg[key], str):
            return norms.parse_exponent(cfg[key])
        return kind(cfg[key])
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected {kind.__name__}, got {cfg[key]!r}")


def _verify_dispatch(args, cfg: dict, seed: Seed) -> int:
    task = _cfg_get(cfg, "task", str)
    threads = _cfg_get(cfg, "threads", int, required=False, default=args.threads)

    if task == "certify":
        d = _cfg_get(cfg, "d", int)
        m = _cfg_get(cfg, "m", int)
        p = _cfg_get(cfg, "p", float)
        epsilon = _cfg_get(cfg, "epsilon", float)
        mode = _cfg_get(cfg, "mode", str, required=False, default="sample")
        fixture = _cfg_get(cfg, "fixture", str, required=False)
        if fixture == "pauli":
            ch = randomizer.pauli_channel()
        else:
            ch = randomizer.RandomizingChannel(sample_ensemble(d, m, seed))
        if mode == "net":
            if d > netmod.MAX_NET_DIM:
                raise ConfigError(
                    f"d: net mode refused, construction is guarded to d <= {netmod.MAX_NET_DIM}"
                )
            required_eta = randomizer.randomizing_threshold(d, p, epsilon) / 2.0
            eta = _cfg_get(cfg, "eta", float, required=False, default=required_eta)
            budget = _cfg_get(cfg, "budget", int, required=False, default=2000)
            built = netmod.build_net(d, min(eta, required_eta), budget, Seed(seed.value, seed.stream + 1))
            res = randomizer.certify_epsilon_randomizing(ch, p, epsilon, net=built)
        else:
            samples = _cfg_get(cfg, "states", int, required=False, default=100)
            res = randomizer.certify_epsilon_randomizing(
                ch, p, epsilon, samples=samples, seed=Seed(seed.value, seed.stream + 2)
            )
        return _emit(args, "verify", cfg, seed, _certification_dict(res), res.certified)

    if task == "expectation":
        exp_cfg = experiments.ExperimentConfig(
            d=_cfg_get(cfg, "d", int),
            p=_cfg_get(cfg, "p", float),
            r=_cfg_get(cfg, "r", float),
            epsilon=_cfg_get(cfg, "epsilon", float, required=False, default=1.0),
            m=_cfg_get(cfg, "m", int),
            trials=_cfg_get(cfg, "trials", int, required=False, default=100),
            seed=seed,
            threads=threads,
            fixture=_cfg_get(cfg, "fixture", str, required=False),
        )
        est = experiments.estimate_expected_deviation(exp_cfg)
        return _emit(args, "verify", cfg, seed, est.to_dict(), est.within)

    if task == "sweep":
        mode = _cfg_get(cfg, "mode", str, required=False, default="sample")
        d = _cfg_get(cfg, "d", int)
        if mode == "net" and d > netmod.MAX_NET_DIM:
            raise ConfigError(
                f"d: net mode refused, construction is guarded to d <= {netmod.MAX_NET_DIM}"
            )
        exp_cfg = experiments.ExperimentConfig(
            d=d,
            p=_cfg_get(cfg, "p", float),
            epsilon=_cfg_get(cfg, "epsilon", float),
            m_range=(_cfg_get(cfg, "m_min", int), _cfg_get(cfg, "m_max", int)),
            trials=_cfg_get(cfg, "trials", int, required=False, default=20),
            states_per_trial=_cfg_get(cfg, "states", int, required=False, default=50),
            seed=seed,
            mode=mode,
            eta=_cfg_get(cfg, "eta", float, required=False),
            threads=threads,
            fixture=_cfg_get(cfg, "fixture", str, required=False),
        )
        sf = _cfg_get(cfg, "success_fraction", float, required=False, default=0.9)
        rep = experiments.minimal_m_sweep(exp_cfg, success_fraction=sf)
        csv_text = report.sweep_to_csv([c.to_dict() for c in rep.grid])
        return _emit(args, "verify", cfg, seed, rep.to_dict(), rep.m_star is not None, csv_text)

    if task == "tail":
        exp_cfg = experiments.ExperimentConfig(
            d=_cfg_get(cfg, "d", int),
            p=_cfg_get(cfg, "p", float),
            epsilon=_cfg_get(cfg, "epsilon", float, required=False, default=1.0),
            m=_cfg_get(cfg, "m", int),
            trials=_cfg_get(cfg, "trials", int, required=False, default=2000),
            seed=seed,
            threads=threads,
        )
        tail = experiments.mcdiarmid_tail(exp_cfg, _cfg_get(cfg, "t", float))
        return _emit(args, "verify", cfg, seed, tail.to_dict(), tail.within)

    if task == "inequalities":
        ns = argparse.Namespace(**vars(args))
        ns.count = _cfg_get(cfg, "count", int, required=False, default=1000)
        ns.dims = cfg.get("dims", [2, 4, 8, 16])
        ns.seed = seed.value
        ns.stream = seed.stream
        return cmd_norms(ns)

    raise ConfigError(f"task: unknown task {task!r}")


def cmd_verify(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {args.config}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(cfg, dict):
        raise ConfigError("config: expected a flat JSON object")
    seed_value = cfg.get("seed", args.seed if args.seed is not None else _default_seed())
    stream = cfg.get("stream", args.stream)
    seed = Seed(int(seed_value), int(stream))
    return _verify_dispatch(args, cfg, seed)


_HANDLERS = {
    "sample": cmd_sample,
    "norms": cmd_norms,
    "randomize": cmd_randomize,
    "net": cmd_net,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "formulas": cmd_formulas,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
