"""Quadrature engine against closed-form and frozen oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magcp.quadrature import (
    IntegralResult,
    NonFiniteIntegrand,
    QuadratureConfig,
    integrate_finite,
    integrate_nested,
    integrate_oscillatory_split,
    integrate_semi_infinite,
)

CFG = QuadratureConfig()


def test_finite_polynomial_exact():
    res = integrate_finite(lambda x: x**2, 0.0, 1.0, CFG)
    assert res.converged
    assert res.value == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_finite_breakpoints_resolve_narrow_peak():
    # Lorentzian of width 1e-6 at x = 0.5; closed form of the integral
    b = 1e-6
    f = lambda x: b / ((x - 0.5) ** 2 + b**2)
    exact = math.atan(0.5 / b) + math.atan(0.5 / b)
    res = integrate_finite(f, 0.0, 1.0, CFG, breakpoints=(0.5,))
    assert res.converged
    assert res.value == pytest.approx(exact, rel=1e-8)


def test_finite_oscillatory():
    res = integrate_finite(lambda x: np.cos(50.0 * x), 0.0, 1.0, CFG)
    assert res.converged
    assert res.value == pytest.approx(math.sin(50.0) / 50.0, rel=1e-10)


def test_semi_infinite_exponential():
    res = integrate_semi_infinite(lambda x: np.exp(-x), 0.0, CFG)
    assert res.converged
    assert res.value == pytest.approx(1.0, rel=1e-10)


def test_semi_infinite_scaled_exponential():
    # decay scale 1e4 must be resolvable via tail_scale
    res = integrate_semi_infinite(lambda x: np.exp(-x / 1e4), 0.0, CFG,
                                  tail_scale=1e4)
    assert res.converged
    assert res.value == pytest.approx(1e4, rel=1e-10)


def test_semi_infinite_power_law_tail_bound():
    # 1/(1+x^2) decays slowly; the truncation bound must keep the error
    # estimate honest, so demand agreement only within the reported error
    cfg = QuadratureConfig(tail_decades=10)
    res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x**2), 0.0, cfg)
    assert abs(res.value - math.pi / 2.0) <= max(res.error_estimate, 1e-8)


def test_semi_infinite_gamma_function():
    res = integrate_semi_infinite(lambda x: x**3 * np.exp(-x), 0.0, CFG)
    assert res.converged
    assert res.value == pytest.approx(6.0, rel=1e-9)


def test_nested_triangle_exponential():
    # int_0^inf dx int_x^inf dy e^{-y} = 1
    res = integrate_nested(lambda x, y: np.exp(-y), 0.0, lambda x: x, CFG)
    assert res.converged
    assert res.value == pytest.approx(1.0, rel=1e-8)


def test_nested_triangle_weighted():
    # int_0^inf dx int_x^inf dy y e^{-2y} = 1/4
    res = integrate_nested(lambda x, y: y * np.exp(-2.0 * y), 0.0,
                           lambda x: x, CFG, outer_tail_scale=0.5,
                           inner_tail_scale=0.5)
    assert res.converged
    assert res.value == pytest.approx(0.25, rel=1e-8)


def test_oscillatory_split_matches_closed_form():
    # int_0^1 cos(a u) du + int_1^inf e^{-a v} dv, a = 7
    a = 7.0
    res = integrate_oscillatory_split(
        lambda v: np.exp(-a * v), 1.0, CFG, phase_rate=a,
        propagating_in_u=lambda u: np.cos(a * u))
    exact = math.sin(a) / a + math.exp(-a) / a
    assert res.converged
    assert res.value == pytest.approx(exact, rel=1e-10)


def test_complex_integrand_supported():
    res = integrate_finite(lambda x: np.exp(1j * x), 0.0, math.pi, CFG)
    assert res.converged
    assert res.value == pytest.approx(2.0j, rel=1e-12)


def test_non_finite_integrand_raises():
    with pytest.raises(NonFiniteIntegrand):
        integrate_finite(lambda x: np.where(x > 0.5, np.nan, 1.0),
                         0.0, 1.0, CFG)


def test_budget_exhaustion_reports_not_converged():
    cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=0.0, max_subdivisions=10)
    res = integrate_finite(lambda x: np.sqrt(np.abs(x)), 0.0, 1.0, cfg)
    assert not res.converged


def test_error_estimate_bounds_true_error():
    res = integrate_finite(lambda x: np.exp(-x) * np.sin(8.0 * x), 0.0,
                           20.0, CFG)
    # antiderivative: -e^{-x}(sin 8x + 8 cos 8x)/65
    exact = (8.0 - math.exp(-20.0)
             * (math.sin(160.0) + 8.0 * math.cos(160.0))) / 65.0
    assert abs(res.value - exact) <= max(res.error_estimate, 1e-12)


def test_results_are_deterministic():
    f = lambda x: np.exp(-x) / (1.0 + x**2)
    r1 = integrate_semi_infinite(f, 0.0, CFG)
    r2 = integrate_semi_infinite(f, 0.0, CFG)
    assert r1.value == r2.value
    assert r1.error_estimate == r2.error_estimate
    assert r1.evaluations == r2.evaluations


def test_result_addition_combines_budgets():
    a = IntegralResult(1.0, 1e-10, 15, True)
    b = IntegralResult(2.0, 1e-11, 30, False)
    c = a + b
    assert c.value == 3.0
    assert c.error_estimate == pytest.approx(1.1e-10)
    assert c.evaluations == 45
    assert not c.converged


@given(c0=st.floats(-5, 5), c1=st.floats(-5, 5), c2=st.floats(-5, 5),
       c3=st.floats(-5, 5),
       a=st.floats(-3, 3), width=st.floats(0.1, 5))
@settings(max_examples=60, deadline=None)
def test_cubic_integrated_exactly(c0, c1, c2, c3, a, width):
    b = a + width
    f = lambda x: c0 + c1 * x + c2 * x**2 + c3 * x**3
    antider = lambda x: c0 * x + c1 * x**2 / 2 + c2 * x**3 / 3 + c3 * x**4 / 4
    res = integrate_finite(f, a, b, CFG)
    assert res.value == pytest.approx(antider(b) - antider(a),
                                      rel=1e-10, abs=1e-10)


@given(scale=st.floats(0.01, 100.0))
@settings(max_examples=30, deadline=None)
def test_exponential_any_scale(scale):
    res = integrate_semi_infinite(lambda x: np.exp(-x / scale), 0.0, CFG,
                                  tail_scale=scale)
    assert res.value == pytest.approx(scale, rel=1e-8)
