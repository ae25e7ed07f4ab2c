"""Chain builders: worked scalar examples, branch selection and random property trials."""
from __future__ import annotations

import math

import numpy as np
import pytest

from loewner_lab import maps
from loewner_lab.chains import (
    LinkStatus,
    a_min_operator,
    chain_cor22,
    chain_cor24,
    chain_cor25,
    chain_cor26,
    chain_cor_inverse,
    chain_cor_thm1,
    chain_prop21,
    chain_thm1,
    chain_thm2,
    check_eprop,
    check_jensen,
    check_prop28,
    check_refined,
    judge,
    verify_chain,
)
from loewner_lab.errors import DimensionMismatch, InvalidParams
from loewner_lab.linalg import (
    HermitianMatrix,
    SpectrumBound,
    random_hermitian_with_spectrum,
    random_pair_relative_bounds,
)
from loewner_lab.maps import make_map, random_map_spec, scale
from loewner_lab.scalar_funcs import constant, exp_scaled, log1p, power_t

B14 = SpectrumBound(1.0, 4.0)
B1_15 = SpectrumBound(1.0, 1.5)
ID1 = maps.identity(1)


def _values(report) -> list[float]:
    return [t.value.item() for t in report.terms]


def _gaps(report) -> list[float]:
    return [lk.verdict.min_eig_gap for lk in report.links]


def _half_trace() -> maps.PositiveLinearMap:
    return make_map({"kind": "trace_state", "rho": np.eye(2) / 2})


# -- judge / verify_chain ----------------------------------------------------------------

def test_verify_chain_examples():
    I = HermitianMatrix.identity(2)
    single = verify_chain([I])
    assert single.links == [] and single.status is LinkStatus.PASS
    ok = verify_chain([I, 2.0 * I, 3.0 * I])
    assert _gaps(ok) == [pytest.approx(1.0), pytest.approx(1.0)]
    assert ok.holds and ok.result_id == "verify_chain"
    bad = verify_chain([("big", 2.0 * I), ("small", I)])
    assert bad.status is LinkStatus.FAIL
    assert _gaps(bad) == [pytest.approx(-1.0)]
    assert bad.to_dict()["links"][0]["lower"] == "big"
    with pytest.raises(DimensionMismatch):
        verify_chain([I, HermitianMatrix.identity(3)])


def test_judge_marginal_and_unproved():
    I = HermitianMatrix.identity(2)
    _, status = judge(I, I.shift(-5e-9))
    assert status is LinkStatus.MARGINAL
    _, status = judge(I, I.shift(-1e-10))
    assert status is LinkStatus.PASS
    _, status = judge(2.0 * I, I, proved=False)
    assert status is LinkStatus.UNPROVED


# -- envelope chains ---------------------------------------------------------------------

def test_prop21_scalar_example():
    r = chain_prop21(power_t(-1.0), HermitianMatrix.scalar(2.0), ID1, B14)
    cube = 0.25 ** (1.0 / 3.0)
    assert _values(r) == [pytest.approx(v) for v in (0.32, cube / 1.5625, 0.5, cube, 0.78125)]
    assert r.status is LinkStatus.PASS
    assert r.constants["mu"] == pytest.approx(1.5625)


def test_prop21_requires_log_convex_and_normalized():
    A = HermitianMatrix.scalar(2.0)
    with pytest.raises(InvalidParams):
        chain_prop21(log1p(), A, ID1, B14)
    with pytest.raises(InvalidParams):
        chain_prop21(power_t(-1.0), A, scale(ID1, 2.0), B14)


def test_prop21_random_pinching_exp():
    b = SpectrumBound(0.5, 2.0)
    A = random_hermitian_with_spectrum(4, b, pin_endpoints=True, seed=21)
    phi = make_map(random_map_spec("pinching", 4, seed=22))
    assert chain_prop21(exp_scaled(1.0), A, phi, b).status is LinkStatus.PASS


def test_cor22_trace_state_example():
    r = chain_cor22(HermitianMatrix.diag([1.0, 4.0]), _half_trace(), B14, -1.0)
    assert _values(r) == [pytest.approx(v) for v in (0.4, 0.4, 0.4, 0.5, 1.5625 * 0.625)]
    assert r.status is LinkStatus.PASS
    assert r.constants["K"] == pytest.approx(1.5625)
    assert not r.notes
    with pytest.raises(InvalidParams):
        chain_cor22(HermitianMatrix.scalar(2.0), ID1, B14, 0.5)


# -- mean chains -------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_mean_chains_hold_on_random_pairs(seed):
    A, B = random_pair_relative_bounds(3, B14, seed=seed)
    phi = scale(make_map(random_map_spec("compression", 3, seed=100 + seed)), 3.0)
    assert chain_cor24(power_t(-1.0), A, B, phi, B14).status is LinkStatus.PASS
    for t in (-0.5, -1.0, -2.0):
        r = chain_cor25(A, B, phi, B14, t)
        assert r.status is LinkStatus.PASS
        assert len(r.links) == (6 if t >= -1 else 5)
        assert chain_cor26(A, B, phi, B14, t).status is LinkStatus.PASS


def test_mean_chain_preconditions():
    A, B = random_pair_relative_bounds(2, B14, seed=9)
    phi = maps.identity(2)
    with pytest.raises(InvalidParams):
        chain_cor25(A, 5.0 * B, phi, B14, -1.0)
    with pytest.raises(InvalidParams):
        chain_cor26(A, B, phi, SpectrumBound(0.5, 4.0), -1.0)
    with pytest.raises(InvalidParams):
        chain_cor26(A, B, phi, B14, 1.0)


def test_cor26_scalar_uses_H():
    r = chain_cor26(HermitianMatrix.scalar(1.0), HermitianMatrix.scalar(2.0), ID1, B14, -1.0)
    assert r.constants["H"] == pytest.approx(9.0 / 7.0)
    assert r.constants["mu"] == pytest.approx(9.0 / 7.0, rel=1e-9)
    assert r.status is LinkStatus.PASS


# -- linear bounds -----------------------------------------------------------------------

def test_prop28_scalar_example():
    r = check_prop28(power_t(-1.0), HermitianMatrix.scalar(3.0), ID1, B14)
    assert _values(r) == [pytest.approx(1 / 3), pytest.approx(1 / 3 + 0.25)] * 2
    assert _gaps(r) == [pytest.approx(0.25)] * 2
    assert r.constants["alpha"] == pytest.approx(1.0)


def test_prop28_concave_reverses():
    A = random_hermitian_with_spectrum(3, B14, seed=28)
    r = check_prop28(power_t(0.5), A, make_map(random_map_spec("unitary_mixture", 3, seed=3)), B14)
    assert r.status is LinkStatus.PASS
    assert r.terms[r.links[0].upper].label == "φ(f(A))"
    assert "concave" in r.notes[0]


def test_cor_inverse_scalar_example():
    r = chain_cor_inverse(HermitianMatrix.scalar(2.0), ID1, B14)
    assert _values(r) == [pytest.approx(v) for v in (0.5, 0.75, 0.5, 0.78125)]
    assert r.constants["beta_closed"] == pytest.approx(0.25)
    assert r.constants["K_closed"] == pytest.approx(1.5625)
    assert r.constants["beta_additive"] == pytest.approx(0.25)
    assert r.constants["alpha_multiplicative"] == pytest.approx(1.5625)
    assert not r.notes


# -- refined -----------------------------------------------------------------------------

def test_a_min_examples():
    inv = power_t(-1.0)
    assert a_min_operator(inv, HermitianMatrix.scalar(2.5), B14).item() == pytest.approx(0.225)
    assert a_min_operator(inv, HermitianMatrix.diag([1.0, 4.0]), B14).allclose(
        HermitianMatrix.diag([0.0, 0.0]), atol=1e-12)
    with pytest.raises(InvalidParams):
        a_min_operator(log1p(), HermitianMatrix.scalar(2.0), B14)


def test_refined_scalar_example():
    r = check_refined(power_t(-1.0), HermitianMatrix.scalar(2.5), ID1, B14)
    labels = [t.label for t in r.terms]
    refined = r.terms[labels.index("φ(A^-1)+φ(A_min)")].value.item()
    additive = r.terms[labels.index("φ(A)^-1+(1/√m-1/√M)²")].value.item()
    assert refined == pytest.approx(0.625)
    assert additive - refined == pytest.approx(0.025)
    assert r.status is LinkStatus.PASS


def test_refined_inverse_uses_the_mapped_a_min():
    # With the minimum taken of φ(A) instead, the multiplicative bound breaks.
    A, phi = HermitianMatrix.diag([1.0, 4.0]), _half_trace()
    inv = power_t(-1.0)
    phi_inv = phi(HermitianMatrix.diag([1.0, 0.25])).item()
    wrong = phi_inv + a_min_operator(inv, phi(A), B14).item()
    assert wrong == pytest.approx(0.85)
    assert wrong > 1.5625 / 2.5
    r = check_refined(inv, A, phi, B14)
    assert r.status is LinkStatus.PASS
    assert r.links[-1].verdict.min_eig_gap == pytest.approx(0.0, abs=1e-12)


# -- h-envelope bounds -------------------------------------------------------------------

def test_thm1_branches():
    wide = chain_thm1(power_t(-1.0), random_hermitian_with_spectrum(3, B14, seed=1),
                      maps.identity(3), B14)
    assert "operator concave" in wide.notes[0]
    assert "t1" not in wide.constants
    assert wide.status is LinkStatus.PASS
    narrow = chain_thm1(power_t(-1.0), random_hermitian_with_spectrum(3, B1_15, seed=2),
                        maps.identity(3), B1_15)
    assert "t1" in narrow.constants and narrow.constants.provenance["t1"] == "solve_t0_alpha_one"
    assert narrow.status is LinkStatus.PASS
    pinned = chain_thm1(power_t(-1.0), random_hermitian_with_spectrum(3, B1_15, seed=2),
                        maps.identity(3), B1_15, t1=0.9)
    assert pinned.constants["t1"] == 0.9
    assert pinned.constants.provenance["t1"] == "argument"


def test_cor_thm1_has_four_terms():
    r = chain_cor_thm1(exp_scaled(-1.0), HermitianMatrix.scalar(2.0), ID1, B14)
    assert len(r.terms) == 4 and len(r.links) == 3
    assert r.status is LinkStatus.PASS


def test_constant_function_collapses_to_equalities():
    A = random_hermitian_with_spectrum(2, B14, seed=5)
    r = chain_cor_thm1(constant(2.0), A, maps.identity(2), B14)
    assert r.constants["mu"] == pytest.approx(1.0)
    assert all(abs(g) < 1e-9 for g in _gaps(r))
    r = chain_thm2(constant(2.0), A, maps.identity(2), B14)
    assert any("collapses" in n for n in r.notes)
    assert r.status is LinkStatus.PASS


def test_thm2_branches():
    wide = chain_thm2(power_t(-2.0), random_hermitian_with_spectrum(3, B14, seed=3),
                      maps.identity(3), B14)
    assert all(lk.proved for lk in wide.links)
    assert wide.status is LinkStatus.PASS
    narrow = chain_thm2(power_t(-1.0), random_hermitian_with_spectrum(3, B1_15, seed=4),
                        make_map(random_map_spec("pinching", 3, seed=4)), B1_15)
    assert [lk.proved for lk in narrow.links] == [True, False]
    assert narrow.links[0].status is LinkStatus.PASS
    assert narrow.links[1].status is not LinkStatus.FAIL


def test_eprop_and_jensen():
    A = random_hermitian_with_spectrum(4, B14, seed=6)
    phi = make_map(random_map_spec("compression", 4, seed=7))
    e = check_eprop(power_t(-1.0), A, phi, B14)
    assert e.status is LinkStatus.PASS and len(e.links) == 4
    assert e.constants["t0"] == pytest.approx(2.0) and e.constants["t1"] == pytest.approx(2.5)
    assert check_jensen(power_t(-1.0), A, phi, B14).status is LinkStatus.PASS
    with pytest.raises(InvalidParams):
        check_jensen(power_t(-3.0), A, phi, B14)


# -- random property trials --------------------------------------------------------------

@pytest.mark.parametrize("kind", ["identity", "compression", "unitary_mixture", "pinching", "trace_state"])
def test_single_matrix_chains_never_fail(kind):
    rng = np.random.default_rng([7, len(kind)])
    for trial in range(6):
        b = (B14, SpectrumBound(1.5, 4.0), B1_15)[trial % 3]
        A = random_hermitian_with_spectrum(4, b, pin_endpoints=trial % 2 == 1, seed=rng)
        phi = make_map(random_map_spec(kind, 4, rng))
        for f in (power_t(-1.0), power_t(-0.5), exp_scaled(1.0), exp_scaled(-1.0)):
            for report in (chain_prop21(f, A, phi, b), check_prop28(f, A, phi, b),
                           chain_thm1(f, A, phi, b), chain_cor_thm1(f, A, phi, b),
                           chain_thm2(f, A, phi, b), check_eprop(f, A, phi, b),
                           check_refined(f, A, phi, b)):
                assert report.status is not LinkStatus.FAIL, (report.result_id, f.label, _gaps(report))
        for t in (-0.5, -1.0, -2.0):
            assert chain_cor22(A, phi, b, t).status is not LinkStatus.FAIL
        assert chain_cor_inverse(A, phi, b).status is not LinkStatus.FAIL


def test_chain_report_to_dict_is_plain():
    d = chain_cor_inverse(HermitianMatrix.scalar(2.0), ID1, B14).to_dict()
    assert d["status"] == "pass" and d["holds"]
    assert math.isclose(d["min_gap"], 0.25)
    assert d["constants"]["provenance"]["K_closed"] == "closed form"
    assert d["instance"]["bounds"] == "1:4"
