"""Randomized suite: combination order, seeding, aggregation and determinism."""
from __future__ import annotations

import pytest

from loewner_lab.chains import MARGINAL_FACTOR, LinkStatus
from loewner_lab.config import SuiteConfig
from loewner_lab.errors import InvalidParams
from loewner_lab.linalg import DEFAULT_RTOL, loewner_leq
from loewner_lab.registry import RESULT_IDS
from loewner_lab.suite import (
    MAP_SCALES,
    RESULTS,
    ResultEntry,
    combinations,
    make_instance,
    run_instance,
    run_suite,
)


def _small(**kw) -> SuiteConfig:
    base = dict(results="prop21,cor25,cor_inverse,thm2", dims="1,2", trials=6, bounds="1:4,1:1.5",
                functions="inv,exp", exponents="-1", maps="identity,pinching", seed=7)
    base.update(kw)
    return SuiteConfig(**base)


def test_results_registry_matches_ids():
    assert tuple(RESULTS) == RESULT_IDS


def test_combinations_interleave_dims_then_bounds():
    cfg = _small(bounds="0.5:2,1:4", functions="inv,harmonic_m1,sqrt")
    combos = combinations(RESULTS["prop21"], cfg)
    # sqrt is not log-convex, harmonic_m1 needs m ≥ 1
    assert [(d, b.label(), a, k) for d, b, a, k in combos[:4]] == [
        (1, "0.5:2", "inv", "identity"), (2, "0.5:2", "inv", "identity"),
        (1, "1:4", "inv", "identity"), (2, "1:4", "inv", "identity"),
    ]
    assert len(combos) == len(set(combos)) == 2 * (1 + 2) * 2
    assert [d for d, _, _, _ in combos] == [1, 2] * 6
    assert all(b.m >= 1 for _, b, _, _ in combinations(RESULTS["cor26"], cfg))
    assert len(combinations(RESULTS["cor_inverse"], cfg)) == 2 * 2 * 2


@pytest.mark.parametrize("rid", RESULT_IDS)
def test_default_budget_reaches_every_dim_and_bounds(rid):
    cfg = SuiteConfig()
    combos = combinations(RESULTS[rid], cfg)
    assert combos
    used = [combos[i % len(combos)] for i in range(cfg.trials)]
    assert {d for d, _, _, _ in used} == set(cfg.dims)
    assert {b for _, b, _, _ in used} == {b for _, b, _, _ in combos}
    assert {d for d, _, _, _ in used[:len(cfg.dims)]} == set(cfg.dims)


def test_every_dim_appears_in_the_report():
    cfg = SuiteConfig(trials=len(SuiteConfig().dims))
    report = run_suite(cfg)
    for rid in cfg.results:
        assert sorted(t.dim for t in report.trials if t.result_id == rid) == sorted(cfg.dims)


def test_make_instance_seeding_and_shapes():
    cfg = _small()
    entry = RESULTS["prop21"]
    combos = combinations(entry, cfg)
    # trial 3 is the second visit to dim 2, so its spectrum is pinned
    pinned = make_instance(entry, combos[3 % len(combos)], 3, cfg)
    assert pinned.seed == (7, RESULT_IDS.index("prop21"), 3)
    again = make_instance(entry, combos[3 % len(combos)], 3, cfg)
    assert (pinned.A.data == again.A.data).all()
    assert pinned.A.dim == 2
    ev = pinned.A.eigenvalues()
    assert ev[0] == pytest.approx(pinned.bounds.m) and ev[-1] == pytest.approx(pinned.bounds.M)

    pair = RESULTS["cor25"]
    for trial in range(4):
        inst = make_instance(pair, combinations(pair, cfg)[trial], trial, cfg)
        assert inst.map_spec["kind"] == "scale"
        assert inst.map_spec["c"] == MAP_SCALES[trial // len(cfg.dims)]
        assert loewner_leq(inst.bounds.m * inst.A, inst.B).holds
        assert inst.exponent == -1.0 and inst.family is None


def test_run_instance_replays_identically():
    cfg = _small()
    entry = RESULTS["thm2"]
    inst = make_instance(entry, combinations(entry, cfg)[3], 3, cfg)
    first, second = run_instance(inst), run_instance(inst)
    assert [lk.verdict.min_eig_gap for lk in first.links] == [lk.verdict.min_eig_gap for lk in second.links]
    assert first.instance_digest["seed"] == [7, RESULT_IDS.index("thm2"), 3]
    assert first.instance_digest["axis"] == inst.family


def test_suite_is_deterministic_and_counts_add_up():
    cfg = _small()
    one, two = run_suite(cfg), run_suite(_small(workers=3))
    assert one.trials == two.trials
    assert [r.to_dict() for r in one.results] == [r.to_dict() for r in two.results]
    assert [r.result_id for r in one.results] == ["prop21", "cor25", "cor_inverse", "thm2"]
    for agg in one.results:
        assert agg.trials == 6
        assert agg.passes + agg.failures + agg.marginal + agg.unproved == agg.trials
        assert agg.failures == 0
    assert one.exit_code == 0
    assert one.provenance["tool"] == "loewner-lab"
    assert one.provenance["default_rtol"] == DEFAULT_RTOL
    assert one.provenance["marginal_factor"] == MARGINAL_FACTOR
    assert one.config["seed"] == 7


def test_power_chain_on_scalars():
    report = run_suite(SuiteConfig(results="cor22", dims="1", trials=12, maps="identity,trace_state"))
    agg = report.results[0]
    assert agg.passes + agg.marginal == 12 and agg.failures == 0
    assert {t.map_kind for t in report.trials} == {"identity", "trace_state"}


def test_result_with_no_admissible_combination_runs_zero_trials():
    report = run_suite(_small(results="jensen", functions="exp"))
    assert report.results[0].trials == 0
    assert report.trials == []


def test_errors_count_as_failures(monkeypatch):
    def boom(inst, phi):
        raise InvalidParams("synthetic failure")

    entry = RESULTS["jensen"]
    monkeypatch.setitem(RESULTS, "jensen", ResultEntry("jensen", entry.axis, entry.pair, entry.accepts, boom))
    report = run_suite(_small(results="jensen", trials=3))
    agg = report.results[0]
    assert (agg.trials, agg.failures) == (3, 3)
    assert {t.status for t in report.trials} == {"error"}
    assert "synthetic failure" in report.failures[0]["error"]
    assert report.exit_code == 2


def test_violation_keeps_the_failing_chain(monkeypatch):
    real = RESULTS["cor_inverse"]

    def shifted(inst, phi):
        report = real.run(inst, phi)
        report.links[0] = report.links[0].__class__(
            0, 1, report.links[0].verdict.__class__(False, -1.0, 1e-9), LinkStatus.FAIL)
        return report

    monkeypatch.setitem(RESULTS, "cor_inverse", ResultEntry(
        "cor_inverse", real.axis, real.pair, real.accepts, shifted))
    report = run_suite(_small(results="cor_inverse", trials=2))
    assert report.results[0].failures == 2
    assert report.results[0].worst_gap == -1.0
    assert report.failures[0]["chain"]["status"] == "fail"
    assert report.failures[0]["instance"].result_id == "cor_inverse"
