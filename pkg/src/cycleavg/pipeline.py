"""End-to-end chain: integrals -> synthesis -> roots -> simulation.

The report dictionary is JSON-ready and deterministic: no timestamps,
no environment data, floats straight from the computation.
"""

from __future__ import annotations

import csv
import math
import os

from .averaging import (
    AveragedFunction,
    angular_integral,
    classify_nonzero,
)
from .errors import CountMismatchError, SpecError
from .fields import PerturbationSpec, normalize_ccw, spec_to_json, with_b
from .flow import (
    DEFAULT_STEPS,
    continuation_check,
    find_fixed_points,
    scan_return_map,
    with_epsilon,
)
from .roots import DEFAULT_BRACKET, positive_roots, synthesize_coefficients


def retune_b(spec: PerturbationSpec, targets, integral_tol: float = 1e-10):
    """Choose b so the averaged function has exactly the target roots.

    Synthesizes coefficients over the exponents whose angular integral is
    nonzero (one more exponent than targets) and maps them back through
    b_j = 2*pi*c_j / I_j; fields with structurally zero integrals keep
    their input b, since no choice of b can make them contribute.
    """
    work = normalize_ccw(spec)
    integrals = [angular_integral(f, integral_tol) for f in work.fields]
    keep = classify_nonzero(integrals, integral_tol)
    exponents = [float(f.alpha) for f, nz in zip(work.fields, keep) if nz]
    targets = tuple(float(t) for t in targets)
    if len(targets) != max(len(exponents) - 1, 0):
        raise SpecError(
            f"need {max(len(exponents) - 1, 0)} targets for {len(exponents)} "
            f"nonzero integrals, got {len(targets)}"
        )
    coeffs = synthesize_coefficients(exponents, targets)
    new_b = list(work.b)
    it = iter(coeffs)
    for j, (nz, ij) in enumerate(zip(keep, integrals)):
        if nz:
            new_b[j] = 2.0 * math.pi * next(it) / ij
    return with_b(work, new_b), integrals, keep, coeffs


def _certificate_json(cert) -> dict:
    return {
        "r_star": cert.r_star,
        "residual": cert.residual,
        "map_derivative": cert.map_derivative,
        "hyperbolic": cert.hyperbolic,
        "epsilon": cert.epsilon,
    }


def _write_scan_csv(path, grid, r1, status):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["r0", "r1", "displacement", "status"])
        for a, b, st in zip(grid, r1, status):
            disp = b - a if st == 0 else math.nan
            writer.writerow([repr(float(a)), repr(float(b)), repr(float(disp)),
                             int(st)])


def run_pipeline(spec: PerturbationSpec, targets=None, eps_values=None,
                 bracket=None, tol: float = 1e-9, integral_tol: float = 1e-10,
                 scan_points: int = 200, steps: int = DEFAULT_STEPS,
                 csv_dir=None) -> dict:
    """Full report for one spec; raises CountMismatchError when the
    simulated fixed-point count disagrees with the averaged prediction.

    With `targets` the coefficients b are first retuned by synthesis.
    `eps_values` (strictly decreasing when several) selects the epsilons
    to simulate; the spec's own epsilon is used when omitted.  `bracket`
    bounds the fixed-point search, defaulting to (0.3 min, 3 max) around
    the predicted roots.
    """
    work = normalize_ccw(spec)

    if targets is not None:
        work, integrals, keep, synthesized = retune_b(work, targets,
                                                      integral_tol)
    else:
        integrals = [angular_integral(f, integral_tol) for f in work.fields]
        keep = classify_nonzero(integrals, integral_tol)
        synthesized = None

    exponents, coefficients = [], []
    for field, bj, ij, nz in zip(work.fields, work.b, integrals, keep):
        if nz and bj != 0.0:
            exponents.append(float(field.alpha))
            coefficients.append(bj * ij / (2.0 * math.pi))
    h = AveragedFunction(tuple(exponents), tuple(coefficients))

    report = positive_roots(h, bracket=DEFAULT_BRACKET)
    predicted = [r.z for r in report.roots]

    if eps_values is None:
        eps_list = [work.epsilon]
    else:
        eps_list = [float(e) for e in eps_values]
    if not eps_list or any(e <= 0 for e in eps_list):
        raise SpecError("epsilon values must be positive")
    if any(e2 >= e1 for e1, e2 in zip(eps_list, eps_list[1:])):
        raise SpecError("epsilon values must strictly decrease")

    if bracket is not None:
        sim_bracket = (float(bracket[0]), float(bracket[1]))
    elif predicted:
        sim_bracket = (0.3 * min(predicted), 3.0 * max(predicted))
    else:
        sim_bracket = (0.5, 2.0)

    out = {
        "spec": spec_to_json(work),
        "integrals": list(integrals),
        "nonzero": [bool(v) for v in keep],
        "lower_bound": max(sum(keep) - 1, 0),
        "synthesized_coefficients": list(synthesized) if synthesized else None,
        "averaged": {"exponents": list(h.exponents),
                     "coefficients": list(h.coefficients)},
        "descartes_bound": report.descartes_bound,
        "predicted_roots": [
            {"z": r.z, "derivative_sign": r.derivative_sign,
             "interval_degree": r.interval_degree}
            for r in report.roots
        ],
        "bracket": list(sim_bracket),
        "runs": [],
        "continuation": [],
    }

    if csv_dir is not None:
        os.makedirs(csv_dir, exist_ok=True)

    for idx, eps in enumerate(eps_list):
        certs = find_fixed_points(with_epsilon(work, eps), sim_bracket, tol,
                                  scan_points, steps)
        if csv_dir is not None:
            grid, r1, status = scan_return_map(with_epsilon(work, eps),
                                               sim_bracket, scan_points, steps)
            _write_scan_csv(os.path.join(csv_dir, f"scan_{idx:02d}.csv"),
                            grid, r1, status)
        out["runs"].append({
            "epsilon": eps,
            "fixed_points": [_certificate_json(c) for c in certs],
        })
        if len(certs) != len(predicted):
            raise CountMismatchError(
                f"averaged function predicts {len(predicted)} cycles "
                f"{[round(z, 6) for z in predicted]} but the simulator found "
                f"{len(certs)} fixed points at eps={eps:g} in "
                f"bracket {sim_bracket}"
            )

    if len(eps_list) >= 2:
        for z in predicted:
            rows = continuation_check(work, eps_list, z, bracket=sim_bracket,
                                      tol=tol, scan_points=scan_points,
                                      steps=steps)
            out["continuation"].append({
                "predicted_root": z,
                "rows": [{"epsilon": row.epsilon, "r_star": row.r_star,
                          "gap": row.gap} for row in rows],
            })
    return out
