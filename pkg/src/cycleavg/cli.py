"""Command-line front end.

Every command prints one JSON document: a fixed header (tool name and
version, never timestamps) plus the result payload, serialized with
sorted keys so identical inputs give byte-identical output.

Exit codes: 0 success; 2 malformed input (bad JSON, schema violation,
inconsistent flags); 3 quadrature failure or ambiguous integral; 4
simulated fixed-point count disagrees with the averaged prediction;
1 any other computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .averaging import AveragedFunction, angular_integral, classify_nonzero
from .errors import CountMismatchError, CycleAvgError, QuadratureError, SpecError
from .fields import (
    load_spec,
    normalize_ccw,
    spec_to_json,
    with_epsilon,
)
from .flow import DEFAULT_STEPS, continuation_check, find_fixed_points, return_map
from .monomials import (
    certificate_to_json,
    classify,
    enumerate_systems,
    monomial_from_json,
)
from .pipeline import retune_b, run_pipeline
from .presets import catalog, lienard
from .roots import DEFAULT_BRACKET, positive_roots
from . import presets


def _load_input(args):
    if getattr(args, "preset", None) and getattr(args, "spec", None):
        raise SpecError("give either --preset or --spec, not both")
    if getattr(args, "preset", None):
        makers = catalog()
        if args.preset not in makers:
            raise SpecError(
                f"unknown preset {args.preset!r}; choose from {sorted(makers)}"
            )
        return makers[args.preset]().spec
    if getattr(args, "spec", None):
        return load_spec(args.spec)
    raise SpecError("a system is required: --preset NAME or --spec FILE")


def _averaged(spec, tol):
    work = normalize_ccw(spec)
    integrals = [angular_integral(f, tol) for f in work.fields]
    keep = classify_nonzero(integrals, tol)
    exponents, coefficients = [], []
    for field, bj, ij, nz in zip(work.fields, work.b, integrals, keep):
        if nz and bj != 0.0:
            exponents.append(float(field.alpha))
            coefficients.append(bj * ij / (2.0 * math.pi))
    h = AveragedFunction(tuple(exponents), tuple(coefficients))
    return work, integrals, keep, h


def cmd_integrals(args):
    work, integrals, keep, _ = _averaged(_load_input(args), args.tol)
    return {
        "alphas": [f"{a.numerator}/{a.denominator}" for a in work.alphas],
        "integrals": list(integrals),
        "nonzero": [bool(v) for v in keep],
        "lower_bound": max(sum(keep) - 1, 0),
    }


def cmd_averaged(args):
    _, _, keep, h = _averaged(_load_input(args), args.tol)
    return {
        "averaged": {"exponents": list(h.exponents),
                     "coefficients": list(h.coefficients)},
        "lower_bound": max(sum(keep) - 1, 0),
    }


def cmd_roots(args):
    _, _, _, h = _averaged(_load_input(args), args.tol)
    bracket = tuple(args.bracket) if args.bracket else DEFAULT_BRACKET
    report = positive_roots(h, bracket=bracket)
    return {
        "averaged": {"exponents": list(h.exponents),
                     "coefficients": list(h.coefficients)},
        "descartes_bound": report.descartes_bound,
        "bracket": list(report.bracket),
        "roots": [
            {"z": r.z, "derivative_sign": r.derivative_sign,
             "interval_degree": r.interval_degree}
            for r in report.roots
        ],
    }


def cmd_synthesize(args):
    spec = _load_input(args)
    retuned, integrals, keep, coeffs = retune_b(spec, args.targets,
                                                integral_tol=args.tol)
    return {
        "targets": list(args.targets),
        "synthesized_coefficients": list(coeffs),
        "b": list(retuned.b),
        "spec": spec_to_json(retuned),
    }


def cmd_simulate(args):
    spec = normalize_ccw(_load_input(args))
    steps = args.steps
    if args.r0 is not None:
        eps = args.eps[0] if args.eps else spec.epsilon
        sample = return_map(with_epsilon(spec, eps), args.r0, steps)
        return {"sample": {
            "r0": sample.r0, "r1": sample.r1,
            "displacement": sample.r1 - sample.r0,
            "min_theta_speed": sample.min_theta_speed,
            "steps": sample.steps,
            "error_estimate": sample.error_estimate,
        }}
    if args.bracket:
        bracket = tuple(args.bracket)
    else:
        _, _, _, h = _averaged(spec, args.tol)
        report = positive_roots(h, bracket=DEFAULT_BRACKET)
        zs = [r.z for r in report.roots]
        bracket = (0.3 * min(zs), 3.0 * max(zs)) if zs else (0.5, 2.0)
    eps_list = args.eps if args.eps else [spec.epsilon]
    runs = []
    for eps in eps_list:
        certs = find_fixed_points(with_epsilon(spec, eps), bracket,
                                  tol=args.tol, steps=steps)
        runs.append({"epsilon": eps, "fixed_points": [
            {"r_star": c.r_star, "residual": c.residual,
             "map_derivative": c.map_derivative, "hyperbolic": c.hyperbolic,
             "epsilon": c.epsilon}
            for c in certs
        ]})
    return {"bracket": list(bracket), "runs": runs}


def cmd_continuation(args):
    spec = normalize_ccw(_load_input(args))
    if not args.eps or len(args.eps) < 2:
        raise SpecError("continuation needs --eps with at least two values")
    root = args.root
    if root is None:
        _, _, _, h = _averaged(spec, args.tol)
        report = positive_roots(h, bracket=DEFAULT_BRACKET)
        if len(report.roots) != 1:
            raise SpecError(
                f"spec predicts {len(report.roots)} roots; pass --root to pick one"
            )
        root = report.roots[0].z
    bracket = tuple(args.bracket) if args.bracket else None
    rows = continuation_check(spec, args.eps, root, bracket=bracket,
                              tol=args.tol, steps=args.steps)
    return {
        "predicted_root": root,
        "rows": [{"epsilon": r.epsilon, "r_star": r.r_star, "gap": r.gap}
                 for r in rows],
    }


def cmd_classify(args):
    if (args.system is None) == (args.scan is None):
        raise SpecError("give exactly one of --system or --scan")
    if args.system is not None:
        if os.path.exists(args.system):
            with open(args.system, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = args.system
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON system: {exc}") from exc
        cert = classify(monomial_from_json(obj))
        return certificate_to_json(cert)
    if args.scan < 0:
        raise SpecError("--scan bound must be >= 0")
    counts = {}
    total = 0
    for system in enumerate_systems(args.scan):
        cert = classify(system)
        counts[cert.property] = counts.get(cert.property, 0) + 1
        total += 1
    return {"scan": {"max_exp": args.scan, "coefficients": [-1.0, 0.0, 1.0],
                     "total": total,
                     "counts": {k: counts[k] for k in sorted(counts)}}}


def _lienard_targets(m: int):
    if m == 4:
        return (2.0 / math.sqrt(3.0),)
    return tuple(0.8 + i * (1.0 / (m - 4)) for i in range(m - 3))


def cmd_repro(args):
    case = args.case
    if case == "example1":
        preset = presets.example1()
        return run_pipeline(preset.spec, eps_values=[preset.spec.epsilon],
                            tol=args.tol, steps=args.steps, csv_dir=args.csv)
    if case == "example2":
        preset = presets.example2()
        return run_pipeline(preset.spec, targets=preset.expected["targets"],
                            eps_values=[0.01, 0.005], tol=args.tol,
                            steps=args.steps, csv_dir=args.csv)
    if case == "vdp":
        preset = presets.vdp()
        return run_pipeline(preset.spec, eps_values=[0.02, 0.01, 0.005],
                            tol=args.tol, steps=args.steps, csv_dir=args.csv)
    if case == "lienard":
        if args.m is None:
            raise SpecError("repro lienard needs --m")
        preset = lienard(args.m, epsilon=0.005)
        return run_pipeline(preset.spec, targets=_lienard_targets(args.m),
                            eps_values=[0.005], bracket=(0.4, 2.2),
                            tol=args.tol, steps=args.steps, csv_dir=args.csv)
    raise SpecError(f"unknown repro case {case!r}")


def cmd_pipeline(args):
    spec = _load_input(args)
    bracket = tuple(args.bracket) if args.bracket else None
    return run_pipeline(spec, targets=args.targets, eps_values=args.eps,
                        bracket=bracket, tol=args.tol, steps=args.steps,
                        csv_dir=args.csv)


def _add_input_flags(sub):
    sub.add_argument("--preset", help="named preset from the catalog")
    sub.add_argument("--spec", help="path to a spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycleavg",
        description="First-order averaging toolkit for perturbed planar centers",
    )
    parser.add_argument("--out", help="write the JSON document to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bracket=True, eps=False, steps=False, csv=False):
        p.add_argument("--tol", type=float, default=1e-10,
                       help="quadrature / residual tolerance")
        if bracket:
            p.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"))
        if eps:
            p.add_argument("--eps", nargs="+", type=float,
                           help="epsilon value(s), strictly decreasing when several")
        if steps:
            p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
        if csv:
            p.add_argument("--csv", help="directory for return-map scan CSV files")

    p = sub.add_parser("integrals", help="angular integrals and lower bound")
    _add_input_flags(p)
    common(p, bracket=False)
    p.set_defaults(func=cmd_integrals)

    p = sub.add_parser("averaged", help="averaged function coefficients")
    _add_input_flags(p)
    common(p, bracket=False)
    p.set_defaults(func=cmd_averaged)

    p = sub.add_parser("roots", help="positive roots of the averaged function")
    _add_input_flags(p)
    common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("synthesize", help="retune b for prescribed averaged roots")
    _add_input_flags(p)
    common(p, bracket=False)
    p.add_argument("--targets", nargs="+", type=float, required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("simulate", help="return-map fixed points (or one sample)")
    _add_input_flags(p)
    common(p, eps=True, steps=True)
    p.add_argument("--r0", type=float, help="evaluate the return map at one radius")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("continuation", help="track a fixed point as eps decreases")
    _add_input_flags(p)
    common(p, eps=True, steps=True)
    p.add_argument("--root", type=float, help="predicted radius to track")
    p.set_defaults(func=cmd_continuation)

    p = sub.add_parser("classify", help="no-cycle certificate for a monomial system")
    p.add_argument("--system", help="inline JSON or a path to a JSON file")
    p.add_argument("--scan", type=int, help="exhaustively classify exponents 0..N")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("repro", help="rerun a canonical reproduction case")
    p.add_argument("case", choices=["example1", "example2", "lienard", "vdp"])
    p.add_argument("--m", type=int, help="monomial count for the lienard case")
    common(p, bracket=False, steps=True, csv=True)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("pipeline", help="integrals -> synthesis -> roots -> simulation")
    _add_input_flags(p)
    common(p, eps=True, steps=True, csv=True)
    p.add_argument("--targets", nargs="+", type=float)
    p.set_defaults(func=cmd_pipeline)

    return parser


def _emit(payload: dict, out_path) -> None:
    document = {
        "header": {"tool": "cycleavg", "version": __version__},
        "result": payload,
    }
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CountMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CycleAvgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
