"""First-order averaging of the radial drift around a linear center.

For a ccw spec the radial displacement per revolution is, to first
order in epsilon, 2*pi*epsilon*h(r) where

    h(z) = sum_j (b[j] * I[j] / (2*pi)) * z**alpha[j],

and I[j] integrates the radial component of field j around the unit
circle.  Simple positive zeros of h are the radii that persist as
isolated periodic orbits for small epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousIntegralError, SpecError
from .fields import HomogeneousField, PerturbationSpec, angular_components
from .quadrature import integrate_circle

#: |I| above NONZERO_FACTOR*tol counts as structurally nonzero, below tol as
#: zero; anything in between is refused rather than guessed.
NONZERO_FACTOR = 100.0


def angular_integral(field: HomogeneousField, tol: float = 1e-10,
                     max_depth: int = 30) -> float:
    """Integral of the field's radial component over one revolution."""

    def integrand(theta):
        radial, _ = angular_components(field, theta)
        return radial

    return integrate_circle(integrand, tol, max_depth)


def classify_nonzero(values, tol: float) -> list[bool]:
    """Dead-band classification of angular integrals.

    Raises AmbiguousIntegralError when a value falls between tol and
    NONZERO_FACTOR*tol, where quadrature noise and a genuinely small
    integral cannot be told apart.
    """
    flags = []
    for idx, v in enumerate(values):
        mag = abs(v)
        if mag >= NONZERO_FACTOR * tol:
            flags.append(True)
        elif mag < tol:
            flags.append(False)
        else:
            raise AmbiguousIntegralError(
                f"integral {idx} has magnitude {mag:.3e}, inside the dead band "
                f"[{tol:.1e}, {NONZERO_FACTOR * tol:.1e}]; tighten tol"
            )
    return flags


@dataclass(frozen=True)
class AveragedFunction:
    """h(z) = sum_j coefficients[j] * z**exponents[j], for z > 0."""

    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(float(e) for e in self.exponents))
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))
        if len(self.exponents) != len(self.coefficients):
            raise SpecError("exponents and coefficients must have equal length")
        if any(e2 <= e1 for e1, e2 in zip(self.exponents, self.exponents[1:])):
            raise SpecError("exponents must strictly increase")
        if any(e < 0 for e in self.exponents):
            raise SpecError("exponents must be >= 0")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z <= 0):
            raise ValueError("averaged function is defined for z > 0")
        logz = np.log(z)
        acc = np.zeros_like(z)
        for e, c in zip(self.exponents, self.coefficients):
            acc += c * np.exp(e * logz)
        return float(acc) if acc.ndim == 0 else acc


def averaged_function(spec: PerturbationSpec, tol: float = 1e-10) -> AveragedFunction:
    """Build h from a ccw spec; structurally-zero integrals are dropped.

    Terms whose angular integral sits below tol contribute nothing at
    first order and are removed, as are fields with b == 0.
    """
    if spec.orientation != "ccw":
        raise SpecError("averaged_function expects a ccw-normalized spec")
    integrals = [angular_integral(f, tol) for f in spec.fields]
    keep = classify_nonzero(integrals, tol)
    exponents, coefficients = [], []
    for field, bj, ij, nz in zip(spec.fields, spec.b, integrals, keep):
        if not nz or bj == 0.0:
            continue
        exponents.append(float(field.alpha))
        coefficients.append(bj * ij / (2.0 * math.pi))
    return AveragedFunction(tuple(exponents), tuple(coefficients))


def lower_bound_count(spec: PerturbationSpec, tol: float = 1e-10) -> int:
    """Limit cycles guaranteed realizable by tuning b: (#nonzero I) - 1, >= 0.

    Orientation-independent: the diagonal reflection used to normalize cw
    specs permutes the integrand by theta -> pi/2 - theta and leaves every
    angular integral unchanged.
    """
    integrals = [angular_integral(f, tol) for f in spec.fields]
    nonzero = sum(classify_nonzero(integrals, tol))
    return max(nonzero - 1, 0)


# ---------------------------------------------------------------------------
# Displacement function on circles of energy k
# ---------------------------------------------------------------------------

def melnikov(h: AveragedFunction, k: float) -> float:
    """First-order displacement rate on the circle x^2 + y^2 = k.

    Equals sqrt(k) * h(sqrt(k)); under the normalization documented in
    melnikov_line_integral the circulation integral is 2*pi times this.
    """
    if k <= 0:
        raise ValueError("energy level k must be positive")
    rk = math.sqrt(k)
    return rk * h(rk)


def melnikov_line_integral(spec: PerturbationSpec, k: float,
                           tol: float = 1e-12) -> float:
    """Circulation integral of the perturbation along x^2 + y^2 = k.

    Computes the line integral of P dy - Q dx over the circle, where
    (P, Q) = sum_j b[j] * fields[j].  Requires a smooth perturbation
    (all exponents integer) and a ccw spec.  Normalization: this equals
    2*pi * melnikov(averaged_function(spec), k); the factor 2*pi is the
    angular period absorbed into the averaged coefficients.
    """
    if spec.orientation != "ccw":
        raise SpecError("melnikov_line_integral expects a ccw-normalized spec")
    if k <= 0:
        raise ValueError("energy level k must be positive")
    for field in spec.fields:
        for term in field.f_terms + field.g_terms:
            if term.x_exp.denominator != 1 or term.y_exp.denominator != 1:
                raise SpecError(
                    "line integral requires integer exponents (smooth perturbation)"
                )
    rk = math.sqrt(k)

    def integrand(theta):
        x = rk * np.cos(theta)
        y = rk * np.sin(theta)
        px = np.zeros_like(np.asarray(theta, dtype=float))
        qy = np.zeros_like(px)
        for bj, field in zip(spec.b, spec.fields):
            fv, gv = field.evaluate(x, y)
            px = px + bj * fv
            qy = qy + bj * gv
        return px * rk * np.cos(theta) + qy * rk * np.sin(theta)

    return integrate_circle(integrand, tol)


# ---------------------------------------------------------------------------
# Wronskians of power functions x**beta
# ---------------------------------------------------------------------------

def _require_distinct(exponents):
    exps = [float(e) for e in exponents]
    if len(exps) < 1:
        raise ValueError("need at least one exponent")
    if len(set(exps)) != len(exps):
        raise ValueError(f"exponents must be distinct, got {exps}")
    return exps


def wronskian_closed_form(exponents, x: float) -> float:
    """W(x^e0, ..., x^ek) = x^S * prod_{i<j} (e[j] - e[i]), x > 0.

    S = sum(e) - k(k+1)/2.  Nonzero for distinct exponents, which is what
    makes tuples of power functions an extended Chebyshev system on (0, inf).
    """
    exps = _require_distinct(exponents)
    if x <= 0:
        raise ValueError("closed form requires x > 0")
    k = len(exps) - 1
    s = sum(exps) - k * (k + 1) / 2.0
    prod = 1.0
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            prod *= exps[j] - exps[i]
    return x ** s * prod


def wronskian_numeric(exponents, x: float) -> float:
    """Same Wronskian via the derivative matrix and an LU determinant.

    Row i holds d^i/dx^i x^e = e(e-1)...(e-i+1) x^(e-i); kept separate
    from the closed form so the two serve as mutual oracles.
    """
    exps = _require_distinct(exponents)
    if x <= 0:
        raise ValueError("numeric Wronskian requires x > 0")
    n = len(exps)
    mat = np.empty((n, n))
    for j, e in enumerate(exps):
        fall = 1.0
        for i in range(n):
            mat[i, j] = fall * x ** (e - i)
            fall *= e - i
    return float(np.linalg.det(mat))
