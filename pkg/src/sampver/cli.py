"""Command-line front end.

Commands::

    sampver samples-required --method dkw --epsilon 0.1 --beta 0.001
    sampver verify     --config run.json [--out report.json]
    sampver modify-set --config run.json [--out report.json]
    sampver gen-samples --network demo --dist cauchy --spec ball.json --method scenario \\
                        --delta 0.001 --beta 0.001 --out g.csv

Every scalar setting can come from the JSON ``--config`` document (keys named
like the long flags, with ``-`` replaced by ``_``); flags override it.

Exit codes: 0 satisfied / success, 1 not satisfied (verify only), 2 usage or
input error, 3 runtime error.
"""

import argparse
import hashlib
import json
import sys
import time
import warnings
from importlib import resources
from pathlib import Path

from . import bounds, csvio, sdf
from .errors import (ConvergenceError, InputError, NumericError, ParameterError, SampverError,
                     SpecError, StateError)
from .model import DistributionSpec, demo_network, load_network, sample_outputs
from .verify import DKW, VerificationProblem, parse_method

EXIT_OK, EXIT_UNSATISFIED, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3

KEYS = ("method", "delta", "beta", "epsilon", "conservative", "spec", "samples",
        "samples_kind", "network", "dist", "mean", "variance", "n", "seed", "out")
DIST_ALIASES = {"cauchy": "cauchy_standard", "cauchy_standard": "cauchy_standard",
                "gaussian": "gaussian_iid", "gaussian_iid": "gaussian_iid"}


class UsageError(SampverError):
    pass


def report_schema():
    """JSON Schema that every ``verify`` / ``modify-set`` report satisfies."""
    text = resources.files("sampver").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--method", help="dkw or scenario")
    common.add_argument("--delta", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--conservative", action="store_true", default=None,
                        help="DKW: require estimate >= 1 - delta + epsilon")
    common.add_argument("--spec", help="set spec JSON file")
    common.add_argument("--samples", help="sample CSV file")
    common.add_argument("--samples-kind", choices=("g", "points"))
    common.add_argument("--network", help="weight file, or 'demo' for the bundled network")
    common.add_argument("--dist", choices=("cauchy", "gaussian"))
    common.add_argument("--mean", type=float)
    common.add_argument("--variance", type=float)
    common.add_argument("--n", type=int, help="sample count override")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output path")

    parser = argparse.ArgumentParser(prog="sampver", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("samples-required", "print the required sample count"),
                        ("verify", "check the satisfaction probability"),
                        ("modify-set", "compute the level-set shift theta*"),
                        ("gen-samples", "draw samples through the built-in pipeline")):
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def load_config(args):
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except FileNotFoundError:
            raise UsageError(f"config file not found: {args.config}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(cfg) - set(KEYS)
        if unknown:
            raise UsageError(f"unknown config key(s): {sorted(unknown)}")
    for key in KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def _require(cfg, key):
    if cfg.get(key) is None:
        raise UsageError(f"missing required setting '{key}'")
    return cfg[key]


def load_spec(cfg):
    raw = cfg.get("spec")
    if raw is None:
        return None
    if isinstance(raw, dict):
        return sdf.from_dict(raw)
    try:
        return sdf.loads(Path(raw).read_text())
    except FileNotFoundError:
        raise UsageError(f"spec file not found: {raw}") from None


def load_net(ref):
    if ref == "demo":
        return demo_network()
    try:
        return load_network(Path(ref).read_text())
    except FileNotFoundError:
        raise UsageError(f"network file not found: {ref}") from None


def _distribution(cfg, dimension):
    kind = DIST_ALIASES.get(str(cfg.get("dist", "")))
    if kind is None:
        raise UsageError("a pipeline source needs --dist cauchy|gaussian")
    return DistributionSpec(kind, dimension, seed=int(cfg.get("seed", 0)),
                            mean=float(cfg.get("mean", 0.0)),
                            variance=float(cfg.get("variance", 1.0)))


def _uses_pipeline(cfg):
    has_csv = cfg.get("samples") is not None
    has_pipe = cfg.get("network") is not None or cfg.get("dist") is not None
    if has_csv == has_pipe:
        raise UsageError("configure exactly one sample source: --samples or --network/--dist")
    return has_pipe


def build_problem(cfg):
    method = parse_method(_require(cfg, "method"))
    return VerificationProblem(method, _require(cfg, "delta"), _require(cfg, "beta"),
                               epsilon=cfg.get("epsilon"), spec=load_spec(cfg),
                               conservative=bool(cfg.get("conservative", False)))


def required_n(cfg):
    method = parse_method(_require(cfg, "method"))
    if method == DKW:
        return bounds.dkw_samples(_require(cfg, "epsilon"), _require(cfg, "beta"))
    return bounds.scenario_samples(_require(cfg, "delta"), _require(cfg, "beta"))


def _pipeline_points(cfg):
    net = load_net(cfg["network"] if cfg.get("network") is not None else "demo")
    dist = _distribution(cfg, net.n_in)
    n = cfg.get("n") or required_n(cfg)
    return sample_outputs(net, dist, n), dist.seed


def cmd_samples_required(cfg):
    method = parse_method(_require(cfg, "method"))
    n = required_n(cfg)
    print(n)
    if method == DKW:
        print(f"DKW: epsilon={cfg['epsilon']} beta={cfg['beta']} -> N >= {n}")
    else:
        print(f"Scenario: delta={cfg['delta']} beta={cfg['beta']} n_theta=1 -> N >= {n}")
    return EXIT_OK


def _run(cfg):
    t0 = time.perf_counter()
    problem = build_problem(cfg)
    seed = None
    if _uses_pipeline(cfg):
        if problem.spec is None:
            raise UsageError("a pipeline source needs --spec")
        points, seed = _pipeline_points(cfg)
        problem.attach_samples(points, kind="points")
    else:
        kind = cfg.get("samples_kind", "g")
        if kind == "points":
            if problem.spec is None:
                raise UsageError("point samples need --spec")
            problem.attach_samples(csvio.read_points(cfg["samples"]), kind="points")
        else:
            problem.attach_samples(csvio.read_values(cfg["samples"]), kind="g")
    report = problem.report()
    if seed is not None:
        report["seed"] = seed
    report["wall_time_ms"] = (time.perf_counter() - t0) * 1e3
    return report


def _emit(cfg, report):
    text = json.dumps(report, indent=2)
    out = cfg.get("out")
    if out:
        Path(out).write_text(text + "\n")
        print(f"{report['method']}: satisfied={report['satisfied']} "
              f"theta*={report['theta_star']!r} -> {out}")
    else:
        print(text)


def cmd_verify(cfg):
    report = _run(cfg)
    _emit(cfg, report)
    return EXIT_OK if report["satisfied"] else EXIT_UNSATISFIED


def cmd_modify_set(cfg):
    _emit(cfg, _run(cfg))
    return EXIT_OK


def cmd_gen_samples(cfg):
    out = _require(cfg, "out")
    if not _uses_pipeline(cfg):
        raise UsageError("gen-samples needs a pipeline source (--network/--dist)")
    kind = cfg.get("samples_kind", "g")
    spec = load_spec(cfg)
    if kind == "g" and spec is None:
        raise UsageError("SDF-value output needs --spec (or use --samples-kind points)")
    points, seed = _pipeline_points(cfg)
    if kind == "g":
        csvio.write_values(out, sdf.evaluate(spec, points))
    else:
        csvio.write_points(out, points)
    net_ref = cfg.get("network") or "demo"
    net_text = (load_net(net_ref).to_dict() if net_ref == "demo"
                else json.loads(Path(net_ref).read_text()))
    meta = {
        "seed": seed,
        "n": int(points.shape[0]),
        "samples_kind": kind,
        "dist": DIST_ALIASES[str(cfg["dist"])] if cfg.get("dist") else None,
        "mean": float(cfg.get("mean", 0.0)),
        "variance": float(cfg.get("variance", 1.0)),
        "network": net_ref,
        "network_sha256": hashlib.sha256(
            json.dumps(net_text, sort_keys=True).encode()).hexdigest(),
        "spec": spec.to_dict() if spec is not None else None,
        "method": cfg.get("method"),
        "delta": cfg.get("delta"),
        "beta": cfg.get("beta"),
        "epsilon": cfg.get("epsilon"),
    }
    Path(str(out) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"wrote {points.shape[0]} samples to {out}")
    return EXIT_OK


COMMANDS = {
    "samples-required": cmd_samples_required,
    "verify": cmd_verify,
    "modify-set": cmd_modify_set,
    "gen-samples": cmd_gen_samples,
}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            cfg = load_config(args)
            return COMMANDS[args.command](cfg)
    except (UsageError, ParameterError, InputError, SpecError, StateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, NumericError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - scriptable exit code contract
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
