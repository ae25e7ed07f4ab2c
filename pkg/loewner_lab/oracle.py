#!/usr/bin/env python3
"""
oracle.py — scalar-grid oracle for every chain.

At n = 1 with φ = id every chain collapses to inequalities between real numbers. The
oracle evaluates those numbers with plain float formulas (envelopes, powers and
exponentials written out here, never through the functional calculus or the chain
builders) on a 256-point grid over [m, M], judges each link with the same relative
tolerance rule, and compares link-by-link against the operator path run on the
1×1 matrix at the same point. Any disagreement is a bug in one of the two routes.

Calibrated constants (μ, K, H, α, β and the solved t₁) come from scalar_funcs on both
sides; the oracle checks how terms are assembled, not how constants are computed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .config import SuiteConfig
from .linalg import DEFAULT_RTOL, HermitianMatrix, SpectrumBound
from .maps import identity
from .registry import get_family
from .scalar_funcs import (
    ScalarFunction,
    alpha_beta,
    default_t0,
    h1_of_interval,
    h_of_f,
    harmonic_H,
    harmonic_resolvent,
    hhat_of_f,
    k_exponential,
    kantorovich,
    mu_constant,
    power_interval,
    power_t,
    solve_t0_alpha_one,
)
from .suite import RESULTS, Instance, run_instance

log = logging.getLogger(__name__)

ORACLE_POINTS = 256

Links = list[tuple[float, float]]


@dataclass(frozen=True)
class OracleCase:
    result_id: str
    bounds: SpectrumBound
    family: str | None = None
    exponent: float | None = None

    @property
    def label(self) -> str:
        axis = self.family if self.family is not None else (
            f"t={self.exponent:g}" if self.exponent is not None else "-")
        return f"{self.result_id}[{axis}, {self.bounds.label()}]"


@dataclass(frozen=True)
class OracleOutcome:
    case: OracleCase
    points: int
    scalar_holds: int                      # grid points where every scalar link holds
    disagreements: tuple[float, ...]       # grid points where the two routes differ

    @property
    def agree(self) -> bool:
        return not self.disagreements


def _leq(a: float, b: float, rtol: float) -> bool:
    return b - a >= -rtol * max(1.0, abs(a), abs(b))


def _envelope(f: ScalarFunction, bounds: SpectrumBound, x: float) -> float:
    """(f(M)^{x−m} f(m)^{M−x})^{1/(M−m)}."""
    m, M = bounds.m, bounds.M
    return math.exp(((x - m) * math.log(f(M)) + (M - x) * math.log(f(m))) / (M - m))


def _chain(terms: list[float]) -> Links:
    return list(zip(terms[:-1], terms[1:]))


def _h1_calibration(f: ScalarFunction, bounds: SpectrumBound) -> tuple[float, float]:
    interval = power_interval(f, bounds)
    if interval is None or bounds.width >= 1:
        return 1.0, 0.0
    ab = alpha_beta(h1_of_interval(bounds), interval, solve_t0_alpha_one(h1_of_interval(bounds), interval))
    return ab.alpha, ab.beta


def _refinement(f: ScalarFunction, bounds: SpectrumBound, x: float) -> float:
    m, M = bounds.m, bounds.M
    C = 0.5 * (f(m) + f(M)) - f(0.5 * (m + M))
    return 2.0 * C * min(x - m, M - x) / (M - m)


def scalar_links(case: OracleCase, x: float) -> Links:
    """(lower, upper) pairs in the same order as the builder's links."""
    b, rid = case.bounds, case.result_id
    m, M, L = b.m, b.M, b.width
    t = case.exponent
    f = get_family(case.family).build(b) if case.family is not None else None

    if rid in ("prop21", "cor22", "cor24", "cor25", "cor26"):
        if rid in ("cor22", "cor25"):
            f, c = power_t(t), kantorovich(b, t)
        elif rid == "cor26":
            f, c = harmonic_resolvent(t, b), harmonic_H(b, t)
        else:
            c = mu_constant(f, b)
        fx, hx = f(x), _envelope(f, b, x)
        links = _chain([fx / c, hx / c, fx, hx, c * fx])
        if rid == "cor25":
            links.append((fx, c * fx))
            if -1 <= t < 0:
                links.append((fx, x ** t))
        return links

    if rid == "prop28":
        ab = alpha_beta(f, b, default_t0(f, b))
        fx = f(x)
        r = ab.alpha * fx + ab.beta
        return [(fx, r), (fx, r)] if f.convex else [(r, fx), (r, fx)]

    if rid == "cor_inverse":
        inv = power_t(-1.0)
        add, mul = alpha_beta(inv, b, math.sqrt(m * M)), alpha_beta(inv, b, 0.5 * (m + M))
        return [(1 / x, add.alpha / x + add.beta), (1 / x, mul.alpha / x + mul.beta)]

    if rid in ("thm1", "cor_thm1"):
        ab = alpha_beta(h_of_f(f, b), b, default_t0(f, b))
        fx, hx = f(x), _envelope(f, b, x)
        head = [fx, hx, ab.alpha * hx + ab.beta]
        if rid == "cor_thm1":
            return _chain(head + [ab.alpha * mu_constant(f, b) * fx + ab.beta])
        a1, b1 = _h1_calibration(f, b)
        root = (hx ** L) ** (1.0 / L)
        return _chain(head + [ab.alpha * (a1 * root + b1) + ab.beta])

    if rid == "thm2":
        ab = alpha_beta(hhat_of_f(f, b), b, default_t0(f, b))
        y = _envelope(f, b, x) ** L
        z = ab.alpha * y + ab.beta
        a1, b1 = _h1_calibration(f, b)
        return _chain([f(x), a1 * y ** (1.0 / L) + b1, a1 * z ** (1.0 / L) + b1])

    if rid == "eprop":
        t0 = default_t0(f, b)
        ft0 = f(t0)
        kx = math.exp(f.derivative(t0) / ft0 * (x - t0))
        ab = alpha_beta(k_exponential(f, t0), b, 0.5 * (m + M))
        low = ft0 / ab.alpha * kx - ab.beta / ab.alpha * ft0
        return _chain([low, ft0 * kx, f(x)]) + _chain([low, ft0 * kx, f(x)])

    if rid == "refined":
        ab = alpha_beta(f, b, default_t0(f, b))
        fx = f(x)
        r = _refinement(f, b, x)
        inv = power_t(-1.0)
        add, mul = alpha_beta(inv, b, math.sqrt(m * M)), alpha_beta(inv, b, 0.5 * (m + M))
        refined_inv = 1 / x + _refinement(inv, b, x)
        return (_chain([fx, fx + r, ab.alpha * fx + ab.beta]) * 2
                + _chain([1 / x, refined_inv, add.alpha / x + add.beta])
                + [(refined_inv, mul.alpha / x + mul.beta)])

    if rid == "jensen":
        return [(f(x), f(x))]
    raise KeyError(f"no scalar form for result {rid!r}")


def operator_links(case: OracleCase, x: float, rtol: float = DEFAULT_RTOL) -> list[bool]:
    """Link verdicts of the real builder on the 1×1 instance at x, φ = id."""
    entry = RESULTS[case.result_id]
    if entry.pair:
        A, B = HermitianMatrix.scalar(1.0), HermitianMatrix.scalar(x)
    else:
        A, B = HermitianMatrix.scalar(x), None
    inst = Instance(case.result_id, 0, (), case.bounds, case.family, case.exponent,
                    {"kind": "identity", "n": 1}, A, B, rtol)
    return [lk.verdict.holds for lk in run_instance(inst, identity(1)).links]


def run_case(case: OracleCase, points: int = ORACLE_POINTS, rtol: float = DEFAULT_RTOL) -> OracleOutcome:
    holds, bad = 0, []
    for x in case.bounds.grid(points):
        x = float(x)
        scalar = [_leq(lo, up, rtol) for lo, up in scalar_links(case, x)]
        holds += all(scalar)
        if scalar != operator_links(case, x, rtol):
            bad.append(x)
    if bad:
        log.warning("%s: scalar and operator routes disagree at %d point(s)", case.label, len(bad))
    return OracleOutcome(case, points, holds, tuple(bad))


def oracle_cases(config: SuiteConfig) -> list[OracleCase]:
    """Every admissible (result, bounds, family-or-exponent) in the config."""
    cases = []
    for rid in config.results:
        entry = RESULTS[rid]
        for bounds in config.spectrum_bounds:
            if bounds.m < entry.min_m:
                continue
            if entry.axis == "family":
                for code in config.functions:
                    fam = get_family(code)
                    if fam.admits(bounds) and entry.accepts(fam.build(bounds)):
                        cases.append(OracleCase(rid, bounds, family=code))
            elif entry.axis == "exponent":
                cases.extend(OracleCase(rid, bounds, exponent=t) for t in config.exponents)
            else:
                cases.append(OracleCase(rid, bounds))
    return cases


def run_oracle(cases: Iterable[OracleCase], points: int = ORACLE_POINTS,
               rtol: float = DEFAULT_RTOL) -> list[OracleOutcome]:
    return [run_case(c, points, rtol) for c in cases]
