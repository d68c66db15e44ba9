"""Poincare return map of the perturbed center in polar form.

Dividing the radial by the angular velocity gives, while the angular
speed stays positive,

    dr/dtheta = eps * sum_j b_j F_j(theta) r^a_j
                / (1 + eps * sum_j b_j G_j(theta) r^(a_j - 1)),

with (F_j, G_j) the radial/transverse circle profiles of field j.  The
quotient is kept exact (no small-eps truncation).  One revolution of a
fixed-step RK4 integration yields the return map P; its fixed points
are the periodic orbits crossing the positive x-axis.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import (
    AngularMonotonicityError,
    ContinuationError,
    GuardBoundError,
    SpecError,
)
from .fields import PerturbationSpec, angular_components, normalize_ccw, with_epsilon

log = logging.getLogger(__name__)

GUARD = (1e-4, 1e4)
DEFAULT_STEPS = 4096

_STATUS_OK = 0
_STATUS_SPEED = 1
_STATUS_GUARD = 2


def theta_speed(spec: PerturbationSpec, theta: float, r: float) -> float:
    """Angular velocity d(theta)/dt at polar point (r, theta); ccw form."""
    spec = normalize_ccw(spec)
    if r <= 0:
        raise ValueError("radius must be positive")
    acc = 0.0
    for bj, field in zip(spec.b, spec.fields):
        _, transverse = angular_components(field, theta)
        acc += bj * float(transverse) * r ** (float(field.alpha) - 1.0)
    return 1.0 + spec.epsilon * acc


def radial_rhs(spec: PerturbationSpec, theta: float, r: float) -> float:
    """Exact dr/dtheta quotient; raises if the angular speed is not positive."""
    spec = normalize_ccw(spec)
    if r <= 0:
        raise ValueError("radius must be positive")
    num = 0.0
    den = 1.0
    eps = spec.epsilon
    for bj, field in zip(spec.b, spec.fields):
        radial, transverse = angular_components(field, theta)
        ra = r ** float(field.alpha)
        num += bj * float(radial) * ra
        den += eps * bj * float(transverse) * ra / r
    if den <= 0.0:
        raise AngularMonotonicityError(
            f"angular speed {den:.3e} <= 0 at theta={theta:.6g}, r={r:.6g}"
        )
    return eps * num / den


@dataclass(frozen=True)
class ReturnMapSample:
    """One evaluation P(r0) = r1 with integration diagnostics."""

    r0: float
    r1: float
    min_theta_speed: float
    steps: int
    error_estimate: float


@dataclass(frozen=True)
class LimitCycleCertificate:
    """A certified fixed point of the return map at one epsilon."""

    r_star: float
    residual: float
    map_derivative: float
    hyperbolic: bool
    epsilon: float


class ContinuationRow(NamedTuple):
    epsilon: float
    r_star: float
    gap: float


class _Tables(NamedTuple):
    steps: int                     # resolution the grid was built for
    alphas: tuple[float, ...]
    radial: tuple[tuple[float, ...], ...]      # per field, on the half-step grid
    transverse: tuple[tuple[float, ...], ...]


@lru_cache(maxsize=64)
def _tables(fields, steps: int) -> _Tables:
    # Half-step grid so every RK4 stage angle is a precomputed node.
    thetas = np.linspace(0.0, 2.0 * math.pi, 2 * steps + 1)
    radial, transverse = [], []
    for field in fields:
        fr, ft = angular_components(field, thetas)
        radial.append(tuple(np.asarray(fr, dtype=float)))
        transverse.append(tuple(np.asarray(ft, dtype=float)))
    alphas = tuple(float(f.alpha) for f in fields)
    return _Tables(steps, alphas, tuple(radial), tuple(transverse))


def _check_steps(steps: int):
    if steps < 8 or steps % 8 != 0:
        raise ValueError(
            f"steps must be a multiple of 8 (axis-angle panel alignment at both "
            f"resolutions), got {steps}"
        )


def _integrate_scalar(spec: PerturbationSpec, tabs: _Tables, r0: float,
                      substeps: int) -> tuple[float, float]:
    """RK4 over one revolution with `substeps` steps; returns (r1, min speed)."""
    nf = len(tabs.alphas)
    al = tabs.alphas
    eb = [spec.epsilon * bj for bj in spec.b]
    stride = tabs.steps // substeps           # table intervals per half step
    h = 2.0 * math.pi / substeps
    lo, hi = GUARD
    min_den = math.inf
    state = [min_den]

    frt, trt = tabs.radial, tabs.transverse

    def rhs(idx: int, r: float) -> float:
        if not lo < r < hi:
            raise GuardBoundError(
                f"radius {r:.6g} left the window ({lo:g}, {hi:g}) near "
                f"theta={idx * math.pi / tabs.steps:.6g}"
            )
        num = 0.0
        dacc = 0.0
        for j in range(nf):
            ra = r ** al[j]
            num += eb[j] * frt[j][idx] * ra
            dacc += eb[j] * trt[j][idx] * ra
        den = 1.0 + dacc / r
        if den <= 0.0:
            raise AngularMonotonicityError(
                f"angular speed {den:.3e} <= 0 at theta="
                f"{idx * math.pi / tabs.steps:.6g}, r={r:.6g}"
            )
        if den < state[0]:
            state[0] = den
        return num / den

    r = float(r0)
    for n in range(substeps):
        base = 2 * stride * n
        k1 = rhs(base, r)
        k2 = rhs(base + stride, r + 0.5 * h * k1)
        k3 = rhs(base + stride, r + 0.5 * h * k2)
        k4 = rhs(base + 2 * stride, r + h * k3)
        r += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    if not lo < r < hi:
        raise GuardBoundError(f"final radius {r:.6g} left the window ({lo:g}, {hi:g})")
    return r, state[0]


def _integrate_batch(spec: PerturbationSpec, tabs: _Tables, r0: np.ndarray,
                     substeps: int):
    """Vectorized RK4 over a batch of start radii.

    Returns (r1, status, min_speed); elements that hit a guard bound or a
    non-positive angular speed are flagged and carry NaN.
    """
    nf = len(tabs.alphas)
    alphas = np.asarray(tabs.alphas)[:, None]
    ebf = np.asarray([spec.epsilon * bj for bj in spec.b])
    frt = np.asarray(tabs.radial)
    trt = np.asarray(tabs.transverse)
    stride = tabs.steps // substeps
    h = 2.0 * math.pi / substeps
    lo, hi = GUARD

    r = np.array(r0, dtype=float, copy=True)
    status = np.zeros(r.shape, dtype=int)
    min_den = np.full(r.shape, np.inf)
    alive = np.ones(r.shape, dtype=bool)

    def rhs(idx: int, rr: np.ndarray) -> np.ndarray:
        nonlocal alive
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            in_window = (rr > lo) & (rr < hi)
            bad_guard = alive & ~in_window
            if bad_guard.any():
                status[bad_guard] = _STATUS_GUARD
                alive = alive & in_window
            pa = np.where(in_window, rr, 1.0) ** alphas      # (nf, m)
            if nf:
                num = ebf @ (frt[:, idx][:, None] * pa)
                den = 1.0 + (ebf @ (trt[:, idx][:, None] * pa)) / rr
            else:
                num = np.zeros_like(rr)
                den = np.ones_like(rr)
            bad_den = alive & ~(den > 0.0)
            if bad_den.any():
                status[bad_den] = _STATUS_SPEED
                alive = alive & (den > 0.0)
            np.minimum(min_den, np.where(alive, den, np.inf), out=min_den)
            return np.where(alive, num / den, np.nan)

    for n in range(substeps):
        base = 2 * stride * n
        k1 = rhs(base, r)
        k2 = rhs(base + stride, r + 0.5 * h * k1)
        k3 = rhs(base + stride, r + 0.5 * h * k2)
        k4 = rhs(base + 2 * stride, r + h * k3)
        r = r + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if not alive.any():
            break
    final_bad = alive & ~((r > lo) & (r < hi))
    if final_bad.any():
        status[final_bad] = _STATUS_GUARD
    r = np.where(status == _STATUS_OK, r, np.nan)
    return r, status, min_den


def return_map(spec: PerturbationSpec, r0: float,
               steps: int = DEFAULT_STEPS) -> ReturnMapSample:
    """P(r0) after one revolution, with a step-halving error estimate.

    Fixed-step RK4 at `steps` steps (panels aligned with the axis angles)
    plus a half-resolution pass; the fourth-order Richardson estimate
    |P_full - P_half| / 15 is attached to the sample.
    """
    _check_steps(steps)
    spec = normalize_ccw(spec)
    if r0 <= 0:
        raise ValueError("start radius must be positive")
    tabs = _tables(spec.fields, steps)
    r1, min_den = _integrate_scalar(spec, tabs, r0, steps)
    r1_half, _ = _integrate_scalar(spec, tabs, r0, steps // 2)
    return ReturnMapSample(
        r0=float(r0),
        r1=r1,
        min_theta_speed=min_den if math.isfinite(min_den) else 1.0,
        steps=steps,
        error_estimate=abs(r1 - r1_half) / 15.0,
    )


def scan_return_map(spec: PerturbationSpec, bracket, scan_points: int = 200,
                    steps: int = DEFAULT_STEPS):
    """Evaluate the return map on a log-spaced grid; returns (r0, r1, status)."""
    _check_steps(steps)
    spec = normalize_ccw(spec)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0 < lo < hi:
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket}")
    grid = np.logspace(math.log10(lo), math.log10(hi), scan_points)
    tabs = _tables(spec.fields, steps)
    r1, status, _ = _integrate_batch(spec, tabs, grid, steps)
    return grid, r1, status


def _refine_fixed_point(pmap, a: float, b: float, fa: float, fb: float,
                        rel_tol: float = 1e-12) -> float:
    """Illinois false-position on g(r) = P(r) - r inside a sign-change cell."""
    side = 0
    for _ in range(100):
        if b - a <= rel_tol * b:
            break
        m = (a * fb - b * fa) / (fb - fa)
        if not (a < m < b) or not math.isfinite(m):
            m = 0.5 * (a + b)
        fm = pmap(m) - m
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = m, fm
            if side == 1:
                fa *= 0.5
            side = 1
    return 0.5 * (a + b)


def find_fixed_points(spec: PerturbationSpec, bracket, tol: float = 1e-9,
                      scan_points: int = 200,
                      steps: int = DEFAULT_STEPS) -> list[LimitCycleCertificate]:
    """Certified fixed points of the return map inside the bracket.

    Scans a log-spaced grid for sign changes of P(r) - r, refines each
    cell, and emits a certificate with the displacement residual and a
    central-difference map derivative.  Failing cells (guard exits, lost
    angular monotonicity, unresolved bisection) are logged and skipped;
    an empty list is a legitimate outcome.
    """
    if spec.epsilon == 0.0:
        raise SpecError("fixed-point search requires epsilon != 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    spec = normalize_ccw(spec)
    grid, r1, status = scan_return_map(spec, bracket, scan_points, steps)
    tabs = _tables(spec.fields, steps)

    for idx in np.nonzero(status != _STATUS_OK)[0]:
        log.warning("scan cell at r0=%.6g failed with status %d", grid[idx],
                    status[idx])

    def pmap(r: float) -> float:
        value, _ = _integrate_scalar(spec, tabs, r, steps)
        return value

    disp = r1 - grid
    certificates = []
    for i in range(len(grid) - 1):
        if status[i] != _STATUS_OK or status[i + 1] != _STATUS_OK:
            continue
        da, db = disp[i], disp[i + 1]
        if da == 0.0 or (da > 0) == (db > 0):
            continue
        try:
            r_star = _refine_fixed_point(pmap, float(grid[i]), float(grid[i + 1]),
                                         float(da), float(db))
            residual = abs(pmap(r_star) - r_star)
            if residual > tol:
                log.warning("cell [%.6g, %.6g]: residual %.3e > tol %.1e, skipped",
                            grid[i], grid[i + 1], residual, tol)
                continue
            delta = 1e-5 * r_star
            deriv = (pmap(r_star + delta) - pmap(r_star - delta)) / (2.0 * delta)
        except (GuardBoundError, AngularMonotonicityError) as exc:
            log.warning("cell [%.6g, %.6g]: %s", grid[i], grid[i + 1], exc)
            continue
        certificates.append(LimitCycleCertificate(
            r_star=float(r_star),
            residual=float(residual),
            map_derivative=float(deriv),
            hyperbolic=bool(abs(deriv - 1.0) > 10.0 * tol),
            epsilon=float(spec.epsilon),
        ))
    return certificates


def continuation_check(spec: PerturbationSpec, eps_values, predicted_root: float,
                       bracket=None, tol: float = 1e-9, scan_points: int = 200,
                       steps: int = DEFAULT_STEPS) -> list[ContinuationRow]:
    """Track the fixed point nearest a predicted radius while eps decreases.

    For each epsilon the nearest fixed point must lie within half the
    predicted radius, and the gap sequence |r* - predicted| must be
    non-increasing within 20% slack (plus a 1e-9 floor for gaps already
    at integrator noise level).
    """
    eps_list = [float(e) for e in eps_values]
    if not eps_list:
        raise ValueError("eps_values must be non-empty")
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps_values must be positive")
    if any(e2 >= e1 for e1, e2 in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_values must strictly decrease")
    if predicted_root <= 0:
        raise ValueError("predicted_root must be positive")
    if bracket is None:
        bracket = (0.3 * predicted_root, 3.0 * predicted_root)

    rows: list[ContinuationRow] = []
    for eps in eps_list:
        certs = find_fixed_points(with_epsilon(spec, eps), bracket, tol,
                                  scan_points, steps)
        if not certs:
            raise ContinuationError(f"no fixed point found at eps={eps:g}")
        nearest = min(certs, key=lambda c: abs(c.r_star - predicted_root))
        gap = float(abs(nearest.r_star - predicted_root))
        if gap > 0.5 * predicted_root:
            raise ContinuationError(
                f"nearest fixed point {nearest.r_star:.6g} is {gap:.3g} away from "
                f"predicted {predicted_root:.6g} at eps={eps:g}"
            )
        rows.append(ContinuationRow(eps, nearest.r_star, gap))

    for prev, cur in zip(rows, rows[1:]):
        if cur.gap > 1.2 * prev.gap + 1e-9:
            raise ContinuationError(
                f"gap grew from {prev.gap:.3e} (eps={prev.epsilon:g}) to "
                f"{cur.gap:.3e} (eps={cur.epsilon:g})"
            )
    return rows
