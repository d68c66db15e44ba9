"""Angular integrals, the averaged function, and the Wronskian pair."""

import math

import numpy as np
import pytest

from conftest import beta_moment, quad_circle, wallis_even
from cycleavg import (
    AmbiguousIntegralError,
    AveragedFunction,
    SpecError,
    angular_components,
    angular_integral,
    averaged_function,
    classify_nonzero,
    lower_bound_count,
    melnikov,
    melnikov_line_integral,
    normalize_ccw,
    wronskian_closed_form,
    wronskian_numeric,
)
from cycleavg.presets import (
    constant_field,
    example1,
    linear_field,
    signed_root_field,
    vdp,
)
from cycleavg.monomials import lienard_family


def test_linear_field_integral_is_trace_times_pi():
    rng = np.random.default_rng(11)
    for _ in range(20):
        p = rng.uniform(-3.0, 3.0, size=4)
        val = angular_integral(linear_field(*p))
        assert val == pytest.approx((p[0] + p[3]) * math.pi, abs=1e-10)


def test_constant_field_integral_vanishes():
    assert abs(angular_integral(constant_field(1.0, 1.0))) < 1e-12
    assert abs(angular_integral(constant_field(-2.5, 7.0))) < 1e-12


def test_signed_sqrt_integral_matches_beta_oracle():
    rng = np.random.default_rng(12)
    for _ in range(10):
        q = rng.uniform(-2.0, 2.0, size=4)
        val = angular_integral(signed_root_field(*q))
        assert val == pytest.approx(4.0 * (q[0] + q[3]) * beta_moment(1.5),
                                    abs=1e-8)


def test_signed_sqrt_integral_matches_scipy():
    field = signed_root_field(1.0, 0.5, -0.3, 1.0)

    def integrand(theta):
        radial, _ = angular_components(field, theta)
        return float(radial)

    assert angular_integral(field) == pytest.approx(quad_circle(integrand),
                                                    abs=1e-9)


def test_even_power_integral_matches_wallis():
    # x^(2n) in f integrates cos^(2n+1) (zero); x^(2n-1) integrates cos^(2n)
    from cycleavg import HomogeneousField, monomial, Fraction
    for n in (1, 2, 3, 5):
        field = HomogeneousField((monomial(1.0, 2 * n - 1, 0),), (),
                                 Fraction(2 * n - 1))
        assert angular_integral(field) == pytest.approx(wallis_even(n),
                                                        rel=1e-12)


def test_classify_nonzero_dead_band():
    assert classify_nonzero([0.5, 1e-12, -3.0], 1e-10) == [True, False, True]
    with pytest.raises(AmbiguousIntegralError):
        classify_nonzero([5e-10], 1e-10)


def test_averaged_function_drops_structural_zeros():
    pre = example1()
    h = averaged_function(pre.spec)
    assert h.exponents == (0.5, 1.0)
    assert h.coefficients[0] == pytest.approx(4.0 * beta_moment(1.5) / math.pi,
                                              abs=1e-10)
    assert h.coefficients[1] == pytest.approx(-1.0, abs=1e-12)


def test_averaged_function_requires_ccw():
    from cycleavg.presets import capillary
    with pytest.raises(SpecError):
        averaged_function(capillary().spec)
    # the normalized spec is fine
    averaged_function(normalize_ccw(capillary().spec))


def test_lower_bound_orientation_independent():
    from cycleavg.presets import capillary
    cw = capillary().spec
    assert lower_bound_count(cw) == lower_bound_count(normalize_ccw(cw))
    assert lower_bound_count(example1().spec) == 1


def test_averaged_function_domain_and_eval():
    h = AveragedFunction((0.5, 1.0), (2.0, -1.0))
    assert h(4.0) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(ValueError):
        h(-1.0)
    with pytest.raises(SpecError):
        AveragedFunction((1.0, 0.5), (1.0, 1.0))
    with pytest.raises(SpecError):
        AveragedFunction((-0.5, 1.0), (1.0, 1.0))


def test_melnikov_scaling_relation():
    h = averaged_function(vdp().spec)
    for k in (0.5, 1.0, 2.0, 4.0):
        assert melnikov(h, k) == pytest.approx(math.sqrt(k) * h(math.sqrt(k)),
                                               rel=1e-14)


def test_melnikov_line_integral_consistency():
    spec = vdp().spec
    h = averaged_function(spec)
    for k in (0.5, 1.0, 2.0):
        line = melnikov_line_integral(spec, k)
        assert line == pytest.approx(2.0 * math.pi * melnikov(h, k), rel=1e-10)


def test_melnikov_line_integral_rejects_fractional_exponents():
    with pytest.raises(SpecError):
        melnikov_line_integral(example1().spec, 1.0)


def test_wronskian_closed_vs_numeric_small():
    assert wronskian_closed_form((2.0,), 3.0) == pytest.approx(9.0)
    # (x^a, x^b): W = (b-a) x^(a+b-1)
    a, b, x = 0.5, 2.0, 1.7
    assert wronskian_closed_form((a, b), x) == pytest.approx(
        (b - a) * x ** (a + b - 1.0), rel=1e-12)
    assert wronskian_numeric((a, b), x) == pytest.approx(
        wronskian_closed_form((a, b), x), rel=1e-12)


def test_wronskian_positive_for_increasing_exponents():
    # nonvanishing Wronskians on (0, inf) are what makes the family ECT
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        exps = np.sort(rng.uniform(0.0, 6.0, size=n))
        if np.any(np.diff(exps) < 1e-3):
            continue
        x = float(rng.uniform(0.3, 3.0))
        assert wronskian_closed_form(tuple(exps), x) > 0.0


def test_wronskian_rejects_duplicates():
    with pytest.raises(ValueError):
        wronskian_closed_form((1.0, 1.0), 2.0)


def test_lienard_family_integrals_all_positive():
    spec = lienard_family(6, (1.0, 1.0, 1.0, 1.0), epsilon=0.01)
    vals = [angular_integral(f) for f in spec.fields]
    assert all(v > 0 for v in vals)
    # the j-th integral is the (2j+2)-nd cosine moment
    for j, v in enumerate(vals):
        assert v == pytest.approx(wallis_even(j + 1), rel=1e-12)
