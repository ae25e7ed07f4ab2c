#!/usr/bin/env python3
"""
suite.py — randomized verification of every chain builder.

Each selected result runs `config.trials` trials. Trial i takes combination
i mod len(combos) of (dim, bounds, family-or-exponent, map kind), in a fixed order that
round-robins over dims first, then bounds, axis values and maps, restricted to the
combinations the result admits. Its generator is
np.random.default_rng([seed, result index, i]), so any single trial can be rebuilt
without replaying the ones before it, and the report is independent of `workers`.

Pinned spectra (eigenvalues m and M both present) alternate with free ones on successive
visits to each dim, since the envelope chains are tight exactly at the endpoints.

Per result the report aggregates pass/fail/marginal/unproved counts, the worst
(most negative) and the tightest (smallest |gap|) link gaps, and the constants of the
worst trial. Every non-passing trial is kept in full: the ChainReport plus the
instance, which `replay` rebuilds.
"""
from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chains import (
    ChainReport,
    LinkStatus,
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
)
from .config import SuiteConfig
from .errors import InvalidParams, LoewnerLabError
from .linalg import (
    HermitianMatrix,
    SpectrumBound,
    random_hermitian_with_spectrum,
    random_pair_relative_bounds,
)
from .maps import PositiveLinearMap, make_map, random_map_spec
from .provenance import build_provenance
from .registry import RESULT_IDS, get_family
from .scalar_funcs import ScalarFunction

log = logging.getLogger(__name__)

MAP_SCALES = (0.5, 1.0, 3.0)


@dataclass(frozen=True)
class Instance:
    """Everything a chain builder needs; enough to replay a trial exactly."""

    result_id: str
    trial: int
    seed: tuple[int, ...]
    bounds: SpectrumBound
    family: str | None
    exponent: float | None
    map_spec: dict
    A: HermitianMatrix
    B: HermitianMatrix | None = None
    rtol: float = 1e-9

    @property
    def axis_label(self) -> str:
        if self.family is not None:
            return self.family
        if self.exponent is not None:
            return f"t={self.exponent:g}"
        return "-"

    def function(self) -> ScalarFunction:
        return get_family(self.family).build(self.bounds)


@dataclass(frozen=True)
class ResultEntry:
    result_id: str
    axis: str                                         # "family" | "exponent" | "none"
    pair: bool                                        # needs (A, B) with mA ⪯ B ⪯ MA
    accepts: Callable[[ScalarFunction], bool]
    run: Callable[[Instance, PositiveLinearMap], ChainReport]
    min_m: float = 0.0


def _any(_f: ScalarFunction) -> bool:
    return True


def _log_convex(f: ScalarFunction) -> bool:
    return f.log_convex


def _convex_or_concave(f: ScalarFunction) -> bool:
    return f.convex or f.concave


def _convex(f: ScalarFunction) -> bool:
    return f.convex


def _op_convex(f: ScalarFunction) -> bool:
    return f.operator_convex


RESULTS: dict[str, ResultEntry] = {e.result_id: e for e in (
    ResultEntry("prop21", "family", False, _log_convex,
                lambda i, phi: chain_prop21(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("cor22", "exponent", False, _any,
                lambda i, phi: chain_cor22(i.A, phi, i.bounds, i.exponent, rtol=i.rtol)),
    ResultEntry("cor24", "family", True, _log_convex,
                lambda i, phi: chain_cor24(i.function(), i.A, i.B, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("cor25", "exponent", True, _any,
                lambda i, phi: chain_cor25(i.A, i.B, phi, i.bounds, i.exponent, rtol=i.rtol)),
    ResultEntry("cor26", "exponent", True, _any,
                lambda i, phi: chain_cor26(i.A, i.B, phi, i.bounds, i.exponent, rtol=i.rtol),
                min_m=1.0),
    ResultEntry("prop28", "family", False, _convex_or_concave,
                lambda i, phi: check_prop28(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("cor_inverse", "none", False, _any,
                lambda i, phi: chain_cor_inverse(i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("thm1", "family", False, _log_convex,
                lambda i, phi: chain_thm1(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("cor_thm1", "family", False, _log_convex,
                lambda i, phi: chain_cor_thm1(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("thm2", "family", False, _log_convex,
                lambda i, phi: chain_thm2(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("eprop", "family", False, _log_convex,
                lambda i, phi: check_eprop(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("refined", "family", False, _convex,
                lambda i, phi: check_refined(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
    ResultEntry("jensen", "family", False, _op_convex,
                lambda i, phi: check_jensen(i.function(), i.A, phi, i.bounds, rtol=i.rtol)),
)}

assert tuple(RESULTS) == RESULT_IDS


def run_instance(inst: Instance, phi: PositiveLinearMap | None = None) -> ChainReport:
    """Run the instance's chain builder, rebuilding the map from its spec unless given."""
    entry = RESULTS[inst.result_id]
    report = entry.run(inst, make_map(inst.map_spec) if phi is None else phi)
    report.instance_digest.update(trial=inst.trial, seed=list(inst.seed), axis=inst.axis_label)
    return report


def _interleave(combos: list[tuple], level: int = 0) -> list[tuple]:
    """Round-robin over the values at `level`, recursively over the later axes, so any
    prefix of the result spreads across dims first, then bounds, axis values and maps."""
    if len(combos) <= 1 or level >= 4:
        return combos
    groups: dict = {}
    for combo in combos:
        groups.setdefault(combo[level], []).append(combo)
    ordered = [_interleave(g, level + 1) for g in groups.values()]
    return [g[k] for k in range(max(map(len, ordered))) for g in ordered if k < len(g)]


def combinations(entry: ResultEntry, config: SuiteConfig) -> list[tuple]:
    """Admissible (dim, bounds, axis value, map kind) tuples in a fixed interleaved order:
    trial i runs combination i mod len, and the first len(dims) trials cover every dim."""
    if entry.axis == "family":
        axis: tuple = config.functions
    elif entry.axis == "exponent":
        axis = config.exponents
    else:
        axis = (None,)
    out = []
    for dim, bounds, a, kind in itertools.product(config.dims, config.spectrum_bounds, axis, config.maps):
        if bounds.m < entry.min_m:
            continue
        if entry.axis == "family":
            fam = get_family(a)
            if not fam.admits(bounds) or not entry.accepts(fam.build(bounds)):
                continue
        out.append((dim, bounds, a, kind))
    if not out:
        log.debug("%s: no admissible combination in this config", entry.result_id)
    return _interleave(out)


def make_instance(entry: ResultEntry, combo: tuple, trial: int, config: SuiteConfig) -> Instance:
    dim, bounds, a, kind = combo
    seed = (int(config.seed), RESULT_IDS.index(entry.result_id), trial)
    rng = np.random.default_rng(list(seed))
    visit = trial // len(config.dims)                 # how many times this dim came up before
    if entry.pair:
        A, B = random_pair_relative_bounds(dim, bounds, seed=rng)
    else:
        A, B = random_hermitian_with_spectrum(dim, bounds, pin_endpoints=visit % 2 == 1, seed=rng), None
    spec = random_map_spec(kind, dim, rng)
    if entry.pair:
        spec = {"kind": "scale", "c": MAP_SCALES[visit % len(MAP_SCALES)], "inner": spec}
    return Instance(
        result_id=entry.result_id, trial=trial, seed=seed, bounds=bounds,
        family=a if entry.axis == "family" else None,
        exponent=float(a) if entry.axis == "exponent" else None,
        map_spec=spec, A=A, B=B, rtol=config.rtol,
    )


# -- report types ------------------------------------------------------------------------

@dataclass(frozen=True)
class TrialRecord:
    result_id: str
    trial: int
    seed: tuple[int, ...]
    dim: int
    bounds: str
    family: str
    map_kind: str
    status: str
    min_gap: float | None
    tolerance: float | None

    def to_dict(self) -> dict:
        return {"result_id": self.result_id, "trial": self.trial, "seed": list(self.seed),
                "dim": self.dim, "bounds": self.bounds, "family": self.family,
                "map_kind": self.map_kind, "status": self.status,
                "min_gap": self.min_gap, "tolerance": self.tolerance}


@dataclass
class ResultAggregate:
    result_id: str
    trials: int = 0
    passes: int = 0
    failures: int = 0
    marginal: int = 0
    unproved: int = 0
    worst_gap: float | None = None
    tightest_gap: float | None = None
    constants: dict = field(default_factory=dict)

    def add(self, record: TrialRecord, constants: dict) -> None:
        self.trials += 1
        if record.status == LinkStatus.PASS.value:
            self.passes += 1
        elif record.status == LinkStatus.MARGINAL.value:
            self.marginal += 1
        elif record.status == LinkStatus.UNPROVED.value:
            self.unproved += 1
        else:
            self.failures += 1
        g = record.min_gap
        if g is None:
            return
        if self.worst_gap is None or g < self.worst_gap:
            self.worst_gap = g
            self.constants = constants
        if self.tightest_gap is None or abs(g) < abs(self.tightest_gap):
            self.tightest_gap = g

    def to_dict(self) -> dict:
        return {"result_id": self.result_id, "trials": self.trials, "passes": self.passes,
                "failures": self.failures, "marginal": self.marginal, "unproved": self.unproved,
                "worst_gap": self.worst_gap, "tightest_gap": self.tightest_gap,
                "constants": self.constants}


@dataclass
class SuiteReport:
    config: dict
    results: list[ResultAggregate]
    trials: list[TrialRecord]
    failures: list[dict]
    provenance: dict
    wall_time: float = 0.0

    @property
    def violations(self) -> int:
        return sum(r.failures for r in self.results)

    @property
    def exit_code(self) -> int:
        return 2 if self.violations else 0


def _trial(entry: ResultEntry, combo: tuple, trial: int,
           config: SuiteConfig) -> tuple[TrialRecord, dict, dict | None]:
    inst = make_instance(entry, combo, trial, config)
    status, gap, tol, constants, failure = LinkStatus.PASS.value, None, None, {}, None
    try:
        report = run_instance(inst)
    except LoewnerLabError as exc:
        log.warning("%s trial %d raised %s: %s", entry.result_id, trial, type(exc).__name__, exc)
        status = "error"
        failure = {"error": f"{type(exc).__name__}: {exc}", "instance": inst}
    else:
        status = report.status.value
        if report.links:
            worst = min(report.links, key=lambda lk: lk.verdict.min_eig_gap)
            gap, tol = worst.verdict.min_eig_gap, worst.verdict.tolerance_used
        constants = report.constants.to_dict()["values"]
        if report.status is not LinkStatus.PASS:
            if report.status is LinkStatus.FAIL:
                log.warning("%s violated at seed %s (gap %.3e)", entry.result_id, list(inst.seed), gap)
            failure = {"chain": report.to_dict(), "instance": inst}
    record = TrialRecord(entry.result_id, trial, inst.seed, combo[0], combo[1].label(),
                         inst.axis_label, combo[3], status, gap, tol)
    return record, constants, failure


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every selected result over its randomized instances. Deterministic per seed."""
    if config.trials < 1:
        raise InvalidParams("trials must be at least 1")
    started = time.perf_counter()
    aggregates: list[ResultAggregate] = []
    records: list[TrialRecord] = []
    failures: list[dict] = []
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        for rid in config.results:
            entry = RESULTS[rid]
            agg = ResultAggregate(rid)
            combos = combinations(entry, config)
            t0 = time.perf_counter()
            if combos:
                jobs = [pool.submit(_trial, entry, combos[i % len(combos)], i, config)
                        for i in range(config.trials)]
                for job in jobs:
                    record, constants, failure = job.result()
                    agg.add(record, constants)
                    records.append(record)
                    if failure is not None:
                        failures.append(failure)
            log.info("%s: %d trials in %.2fs", rid, agg.trials, time.perf_counter() - t0)
            aggregates.append(agg)
    elapsed = time.perf_counter() - started
    return SuiteReport(config=config.echo(), results=aggregates, trials=records,
                       failures=failures, provenance=build_provenance(),
                       wall_time=round(elapsed, 3))
