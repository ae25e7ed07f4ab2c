"""Scalar families, envelopes and reverse-inequality constants."""
from __future__ import annotations

import math

import numpy as np
import pytest

from loewner_lab.errors import InvalidParams, NotMonotone, PoleError
from loewner_lab.linalg import SpectrumBound
from loewner_lab.registry import FAMILIES
from loewner_lab.scalar_funcs import (
    ConstantSet,
    FamilyKind,
    Monotone,
    ScalarFunction,
    affine,
    alpha_beta,
    check_monotone,
    constant,
    default_t0,
    exp_envelope,
    exp_scaled,
    geom_envelope,
    h_of_f,
    harmonic_H,
    harmonic_H_limit,
    harmonic_resolvent,
    hhat_of_f,
    is_log_convex,
    kantorovich,
    log1p,
    make_family,
    min_distance_to_endpoints,
    mu_constant,
    power_interval,
    power_t,
    refinement_term,
    scalar_harmonic,
    secant,
    solve_t0_alpha_one,
    solve_t0_beta_zero,
    tangent_value,
)

B14 = SpectrumBound(1.0, 4.0)
B154 = SpectrumBound(1.5, 4.0)


def _fd(f: ScalarFunction, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2 * h)


def test_power_t_values_and_tags():
    inv = power_t(-1.0)
    assert inv(2.0) == 0.5
    assert inv.derivative(2.0) == -0.25
    assert inv.convex and inv.log_convex and inv.operator_convex
    assert inv.monotone is Monotone.DECREASING
    assert power_t(0.0).kind == FamilyKind.CONSTANT.value
    assert not power_t(-3.0).operator_convex


def test_harmonic_resolvent():
    f = harmonic_resolvent(-1.0, B14)
    assert f(2.0) == pytest.approx(2.0 / 3.0)
    assert f(1.0) == pytest.approx(1.0)
    with pytest.raises(InvalidParams):
        harmonic_resolvent(0.5)
    with pytest.raises(InvalidParams):
        harmonic_resolvent(-1.0, SpectrumBound(0.5, 2.0))


@pytest.mark.parametrize("f", [
    power_t(-1.0), power_t(-0.5), power_t(2.0), exp_scaled(1.0), exp_scaled(-1.0),
    harmonic_resolvent(-2.0), log1p(),
])
def test_analytic_derivative_matches_finite_difference(f):
    for x in (1.3, 2.0, 3.7):
        assert f.derivative(x) == pytest.approx(_fd(f, x), rel=1e-6)


def test_envelopes_touch_f_at_endpoints():
    for f in (power_t(-1.0), exp_scaled(1.0), harmonic_resolvent(-1.0)):
        h = h_of_f(f, B14)
        assert h(1.0) == pytest.approx(f(1.0), rel=1e-12)
        assert h(4.0) == pytest.approx(f(4.0), rel=1e-12)
        hh = hhat_of_f(f, B14)
        assert hh(2.5) == pytest.approx(h(2.5) ** 3, rel=1e-12)
        assert h.derivative(2.2) == pytest.approx(_fd(h, 2.2), rel=1e-6)


def test_geom_envelope_is_h_of_power():
    g = geom_envelope(-2.0, B14)
    h = h_of_f(power_t(-2.0), B14)
    grid = B14.grid(9)
    assert np.allclose(g(grid), h(grid), rtol=1e-12)


def test_exp_is_its_own_envelope():
    f = exp_scaled(1.0)
    h = h_of_f(f, B14)
    assert np.allclose(h(B14.grid(7)), np.exp(B14.grid(7)), rtol=1e-12)


def test_secant_and_tangent():
    sec = secant(power_t(-1.0), B14)
    assert sec.a_f == pytest.approx(-0.25)
    assert sec.b_f == pytest.approx(1.25)
    assert sec(4.0) == pytest.approx(0.25)
    assert tangent_value(power_t(-1.0), 2.0, 4.0) == pytest.approx(0.0)


def test_exp_envelope_is_a_lower_bound():
    f = power_t(-1.0)
    for x in B14.grid(11):
        assert exp_envelope(f, 2.0, float(x)) <= f(float(x)) * (1 + 1e-12)
    assert exp_envelope(f, 2.0, 2.0) == pytest.approx(0.5)


def test_min_distance_identity():
    b = SpectrumBound(1.0, 3.0)
    assert min_distance_to_endpoints(1.5, b) == pytest.approx(0.5)
    assert min_distance_to_endpoints(2.0, b) == pytest.approx(1.0)
    assert min_distance_to_endpoints(3.0, b) == pytest.approx(0.0)


def test_alpha_beta_examples():
    inv = power_t(-1.0)
    ab = alpha_beta(inv, B14, 2.0)
    assert (ab.alpha, ab.beta) == (pytest.approx(1.0), pytest.approx(0.25))
    ab = alpha_beta(inv, B14, 2.5)
    assert ab.alpha == pytest.approx(1.5625)
    assert abs(ab.beta) < 1e-12


def test_alpha_beta_constant_function():
    ab = alpha_beta(constant(3.0), B14, 2.0)
    assert (ab.alpha, ab.beta) == (1.0, 0.0)


def test_check_monotone_rejects_turning_function():
    bowl = ScalarFunction("(x-2)^2", eval=lambda x: (x - 2.0) ** 2, deriv=lambda x: 2.0 * (x - 2.0))
    with pytest.raises(NotMonotone):
        check_monotone(bowl, B14)
    with pytest.raises(NotMonotone):
        alpha_beta(bowl, B14, 3.0)


def test_default_t0():
    assert default_t0(power_t(-1.0), B14) == pytest.approx(2.0)
    assert default_t0(exp_scaled(1.0), B14) == pytest.approx(2.5)


def test_mu_of_inverse_is_kantorovich():
    assert mu_constant(power_t(-1.0), B14) == pytest.approx(1.5625, rel=1e-12)
    assert kantorovich(B14, -1.0) == pytest.approx(1.5625, rel=1e-12)


@pytest.mark.parametrize("m,M", [(1.0, 2.0), (1.0, 4.0), (2.0, 5.0)])
def test_kantorovich_closed_form_at_minus_one(m, M):
    assert kantorovich(SpectrumBound(m, M), -1.0) == pytest.approx((M + m) ** 2 / (4 * m * M), rel=1e-12)


@pytest.mark.parametrize("t", [-0.5, -1.0, -2.0, -3.0])
def test_mu_of_power_equals_kantorovich(t):
    for b in (B14, B154):
        assert mu_constant(power_t(t), b) == pytest.approx(kantorovich(b, t), rel=1e-9)


def test_kantorovich_undefined_points():
    for t in (0.0, 1.0):
        with pytest.raises(InvalidParams):
            kantorovich(B14, t)


def test_scalar_harmonic():
    assert scalar_harmonic(-1.0, 2.0) == pytest.approx(2.0 / 3.0)
    assert scalar_harmonic(0.0, 7.0) == 1.0
    with pytest.raises(PoleError):
        scalar_harmonic(-1.0, 0.0)
    with pytest.raises(PoleError):
        scalar_harmonic(-1.0, 0.4)


def test_harmonic_H():
    for b in (B14, B154):
        assert harmonic_H(b, 0.0) == pytest.approx(1.0)
    assert harmonic_H(B14, -1.0) == pytest.approx(9.0 / 7.0, rel=1e-12)
    assert harmonic_H(B154, -1.0) == pytest.approx((25.0 - 4.0 * math.sqrt(6.0)) / 14.0, rel=1e-12)
    with pytest.raises(InvalidParams):
        harmonic_H(SpectrumBound(0.5, 2.0), -1.0)


def test_harmonic_H_equals_mu_of_resolvent():
    for b in (B14, B154):
        for t in (-0.5, -1.0, -2.0):
            assert harmonic_H(b, t) == pytest.approx(mu_constant(harmonic_resolvent(t, b), b), rel=1e-9)


def test_harmonic_H_limit():
    expected = (math.sqrt(6.0) - 1.0) ** 2 / 1.5
    assert harmonic_H_limit(B154) == pytest.approx(expected)
    assert abs(harmonic_H(B154, -1e6) - expected) < 1e-4
    with pytest.raises(InvalidParams):
        harmonic_H_limit(B14)


def test_solvers():
    assert solve_t0_alpha_one(power_t(-1.0), B14) == pytest.approx(2.0, abs=1e-8)
    assert solve_t0_alpha_one(power_t(2.0), SpectrumBound(1.0, 3.0)) == pytest.approx(2.0, abs=1e-8)
    t0 = solve_t0_beta_zero(power_t(-1.0), B14)
    assert t0 == pytest.approx(2.5, abs=1e-8)
    assert abs(alpha_beta(power_t(-1.0), B14, t0).beta) < 1e-9
    assert solve_t0_beta_zero(constant(2.0), B14) == pytest.approx(2.5)


def test_is_log_convex():
    assert is_log_convex(power_t(-1.0), B14)
    assert is_log_convex(exp_scaled(1.0), B14)
    assert not is_log_convex(log1p(), B14)


def test_refinement_sits_between_f_and_chord():
    f = power_t(-1.0)
    r = refinement_term(f, B14)
    sec = secant(f, B14)
    for x in B14.grid(33):
        x = float(x)
        assert f(x) <= f(x) + r(x) <= sec(x) + 1e-12
    assert r(1.0) == pytest.approx(0.0) and r(4.0) == pytest.approx(0.0)


def test_power_interval():
    iv = power_interval(power_t(-1.0), B14)
    assert (iv.m, iv.M) == (pytest.approx(0.015625), pytest.approx(1.0))
    assert power_interval(constant(2.0), B14) is None


def test_make_family():
    assert make_family("power_t", [-1.0])(2.0) == 0.5
    assert make_family(FamilyKind.H_OF_F, bounds=B14, base=power_t(-1.0))(1.0) == pytest.approx(1.0)
    with pytest.raises(InvalidParams):
        make_family("nope")
    with pytest.raises(InvalidParams):
        make_family(FamilyKind.H_OF_F, bounds=B14)
    with pytest.raises(InvalidParams):
        make_family(FamilyKind.AFFINE, [1.0])


def test_constant_set_records_provenance():
    cs = ConstantSet()
    assert cs.record("K", 1.5625, "kantorovich") == 1.5625
    assert "K" in cs and cs["K"] == 1.5625
    assert cs.to_dict()["provenance"] == {"K": "kantorovich"}
    with pytest.raises(InvalidParams):
        cs.record("bad", float("nan"), "nowhere")


def _registry_functions(bounds: SpectrumBound) -> list[ScalarFunction]:
    return [entry.build(bounds) for entry in FAMILIES.values() if entry.admits(bounds)]


@pytest.mark.parametrize("code", sorted(FAMILIES))
def test_family_derivatives_at_random_points(code):
    rng = np.random.default_rng(41)
    f = FAMILIES[code].build(B14)
    for x in rng.uniform(1.05, 3.95, 25):
        assert f.derivative(float(x)) == pytest.approx(_fd(f, float(x)), rel=1e-5, abs=1e-8)


@pytest.mark.parametrize("f", [log1p(), affine(2.0, 1.0), constant(3.0)])
def test_helper_derivatives_at_random_points(f):
    rng = np.random.default_rng(42)
    for x in rng.uniform(0.5, 5.0, 25):
        assert f.derivative(float(x)) == pytest.approx(_fd(f, float(x)), rel=1e-5, abs=1e-8)


@pytest.mark.parametrize("bounds", [B14, B154, SpectrumBound(1.0, 1.5)])
def test_exponential_envelope_lies_below_every_log_convex_family(bounds):
    rng = np.random.default_rng(43)
    grid = bounds.grid(256)
    checked = 0
    for f in _registry_functions(bounds):
        if not f.log_convex:
            continue
        checked += 1
        for t0 in rng.uniform(bounds.m, bounds.M, 10):
            for t in grid:
                ft = f(float(t))
                assert exp_envelope(f, float(t0), float(t)) <= ft + 1e-10 * max(1.0, abs(ft))
    assert checked >= 5


@pytest.mark.parametrize("bounds", [B14, B154, SpectrumBound(1.0, 1.5)])
def test_convex_families_sit_between_tangent_and_secant(bounds):
    rng = np.random.default_rng(44)
    grid = bounds.grid(256)
    for f in _registry_functions(bounds):
        if not f.convex:
            continue
        chord = secant(f, bounds)
        for t0 in rng.uniform(bounds.m, bounds.M, 10):
            for t in grid:
                t, ft = float(t), f(float(t))
                tol = 1e-10 * max(1.0, abs(ft))
                assert tangent_value(f, float(t0), t) <= ft + tol
                assert ft <= chord(t) + tol


@pytest.mark.parametrize("bounds", [B14, B154, SpectrumBound(2.0, 5.0)])
def test_harmonic_H_is_nonincreasing_in_t(bounds):
    ts = np.arange(-50.0, 0.25, 0.5)
    values = [harmonic_H(bounds, float(t)) for t in ts]
    assert all(later <= earlier * (1 + 1e-12) for earlier, later in zip(values, values[1:]))
    assert values[-1] == pytest.approx(1.0)
    if bounds.m > 1:
        limit = harmonic_H_limit(bounds)
        assert max(values) <= limit * (1 + 1e-9)
