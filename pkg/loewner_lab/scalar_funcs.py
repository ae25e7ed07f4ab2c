#!/usr/bin/env python3
"""
scalar_funcs.py — scalar function families and every constant the inequality chains use.

A ScalarFunction is an evaluable real function with an ANALYTIC derivative, an open
domain and hard-coded shape tags (convex, log-convex, monotone direction, operator
convexity). α and β divide by f'(t0), so numeric differentiation never enters a
production path; finite differences live only in the tests.

The derived families (the geometric envelope h, its power ĥ, h₁ = t^{1/(M−m)}, the
exponential minorant k) depend on f(m), f(M) or t0 and are frozen at construction.

Constants:
    a_f, b_f      chord (secant) of f over [m, M]
    α, β          tangent/chord constants at t0
    μ             max over [m, M] of chord/f (grid scan + golden-section refinement)
    K             generalized Kantorovich constant for x^t (closed form)
    H             harmonic-mean constant (closed form, m ≥ 1)

plus the bisection solvers that calibrate t0 so that α = 1 or β = 0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .errors import (
    FunctionDomainError,
    InvalidParams,
    NoRoot,
    NotMonotone,
    PoleError,
    ZeroDerivative,
)
from .linalg import SpectrumBound

log = logging.getLogger(__name__)

MONOTONE_GRID = 64
MU_GRID = 1024
LOG_CONVEX_GRID = 256
GOLDEN_RTOL = 1e-12
SOLVER_RTOL = 1e-10
ENVELOPE_RTOL = 1e-10
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

_ALL_REALS = (-math.inf, math.inf)
_POSITIVE = (0.0, math.inf)


class Monotone(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    NONE = "none"


class FamilyKind(str, Enum):
    POWER_T = "power_t"
    HARMONIC_RESOLVENT_T = "harmonic_resolvent_t"
    EXP_SCALED = "exp_scaled"
    GEOM_ENVELOPE = "geom_envelope"
    H_OF_F = "h_of_f"
    HHAT_OF_F = "hhat_of_f"
    H1_OF_INTERVAL = "h1_of_interval"
    K_EXPONENTIAL = "k_exponential"
    CONSTANT = "constant"
    AFFINE = "affine"
    LOG1P = "log1p"


@dataclass(frozen=True)
class ScalarFunction:
    label: str
    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    domain: tuple[float, float] = _ALL_REALS
    convex: bool = False
    concave: bool = False
    log_convex: bool = False
    monotone: Monotone = Monotone.NONE
    operator_convex: bool = False
    operator_concave: bool = False
    reciprocal_like: bool = False     # default t0 is √(mM) rather than (m+M)/2
    kind: str = ""

    def __call__(self, t):
        out = self.eval(np.asarray(t, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def derivative(self, t):
        out = self.deriv(np.asarray(t, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def in_domain(self, t: float) -> bool:
        lo, hi = self.domain
        return lo < t < hi


def _monotone_from_sign(s: float) -> Monotone:
    if s > 0:
        return Monotone.INCREASING
    if s < 0:
        return Monotone.DECREASING
    return Monotone.CONSTANT


def _value(f: ScalarFunction, t: float) -> float:
    if not f.in_domain(t):
        raise FunctionDomainError(f"{f.label} undefined at {t:.12g} (domain {f.domain})")
    with np.errstate(all="ignore"):
        v = f(t)
    if not math.isfinite(v):
        raise FunctionDomainError(f"{f.label}({t:.12g}) is not finite")
    return v


def _deriv_value(f: ScalarFunction, t: float) -> float:
    if not f.in_domain(t):
        raise FunctionDomainError(f"{f.label}' undefined at {t:.12g} (domain {f.domain})")
    with np.errstate(all="ignore"):
        d = f.derivative(t)
    if not math.isfinite(d):
        raise FunctionDomainError(f"{f.label}'({t:.12g}) is not finite")
    return d


def _endpoint_logs(f: ScalarFunction, bounds: SpectrumBound) -> tuple[float, float]:
    fm, fM = _value(f, bounds.m), _value(f, bounds.M)
    if fm <= 0 or fM <= 0:
        raise InvalidParams(f"{f.label} must be positive at m and M for a geometric envelope")
    return math.log(fm), math.log(fM)


# -- families ----------------------------------------------------------------------------

def power_t(t: float) -> ScalarFunction:
    p = float(t)
    if p == 0.0:
        return constant(1.0)
    return ScalarFunction(
        label=f"x^{p:g}",
        eval=lambda x: np.power(x, p),
        deriv=lambda x: p * np.power(x, p - 1.0),
        domain=_POSITIVE,
        convex=p < 0 or p >= 1,
        concave=0 < p <= 1,
        log_convex=p < 0,
        monotone=_monotone_from_sign(p),
        operator_convex=(-1 <= p < 0) or (1 <= p <= 2),
        operator_concave=0 < p <= 1,
        reciprocal_like=p < 0,
        kind=FamilyKind.POWER_T.value,
    )


def harmonic_resolvent(t: float, bounds: SpectrumBound | None = None) -> ScalarFunction:
    """(1 − t + t/x)^{-1} = x / ((1−t)x + t), the function behind the weighted harmonic mean."""
    t = float(t)
    if t >= 0:
        raise InvalidParams(f"harmonic_resolvent_t needs t < 0, got {t:g}")
    if bounds is not None and bounds.m < 1:
        raise InvalidParams(f"harmonic_resolvent_t needs m ≥ 1, got m = {bounds.m:g}")
    pole = -t / (1.0 - t)
    return ScalarFunction(
        label=f"(1-t+t/x)^-1[t={t:g}]",
        eval=lambda x: x / ((1.0 - t) * x + t),
        deriv=lambda x: t / ((1.0 - t) * x + t) ** 2,
        domain=(pole, math.inf),
        convex=True,
        log_convex=True,
        monotone=Monotone.DECREASING,
        reciprocal_like=True,
        kind=FamilyKind.HARMONIC_RESOLVENT_T.value,
    )


def exp_scaled(c: float, amplitude: float = 1.0) -> ScalarFunction:
    c, s = float(c), float(amplitude)
    if s <= 0:
        raise InvalidParams(f"exp_scaled amplitude must be positive, got {s:g}")
    return ScalarFunction(
        label=f"exp({c:g}x)" if s == 1.0 else f"{s:g}exp({c:g}x)",
        eval=lambda x: s * np.exp(c * x),
        deriv=lambda x: c * s * np.exp(c * x),
        convex=True,
        log_convex=True,
        monotone=_monotone_from_sign(c),
        kind=FamilyKind.EXP_SCALED.value,
    )


def _log_linear(label: str, kind: FamilyKind, log_at_m: float, slope: float,
                m: float) -> ScalarFunction:
    """x ↦ exp(log_at_m + slope·(x − m)): convex, log-convex, monotone by slope."""
    return ScalarFunction(
        label=label,
        eval=lambda x: np.exp(log_at_m + slope * (x - m)),
        deriv=lambda x: slope * np.exp(log_at_m + slope * (x - m)),
        convex=True,
        log_convex=True,
        monotone=_monotone_from_sign(slope),
        kind=kind.value,
    )


def geom_envelope(t: float, bounds: SpectrumBound) -> ScalarFunction:
    """g(x) = (M^{x−m} m^{M−x})^{t/(M−m)}; the envelope h of x^t."""
    m, M = bounds.m, bounds.M
    return _log_linear(f"g[t={float(t):g},{bounds.label()}]", FamilyKind.GEOM_ENVELOPE,
                       float(t) * math.log(m), float(t) * math.log(M / m) / bounds.width, m)


def h_of_f(f: ScalarFunction, bounds: SpectrumBound) -> ScalarFunction:
    """h(x) = (f^{x−m}(M) f^{M−x}(m))^{1/(M−m)}."""
    lm, lM = _endpoint_logs(f, bounds)
    return _log_linear(f"h[{f.label}]", FamilyKind.H_OF_F, lm, (lM - lm) / bounds.width, bounds.m)


def hhat_of_f(f: ScalarFunction, bounds: SpectrumBound) -> ScalarFunction:
    """ĥ(x) = f^{x−m}(M) f^{M−x}(m) = h(x)^{M−m}."""
    lm, lM = _endpoint_logs(f, bounds)
    return _log_linear(f"hhat[{f.label}]", FamilyKind.HHAT_OF_F, bounds.width * lm, lM - lm, bounds.m)


def h1_of_interval(bounds: SpectrumBound) -> ScalarFunction:
    """h₁(x) = x^{1/(M−m)}. Operator concave when M − m ≥ 1."""
    p = 1.0 / bounds.width
    return ScalarFunction(
        label=f"x^(1/{bounds.width:g})",
        eval=lambda x: np.power(x, p),
        deriv=lambda x: p * np.power(x, p - 1.0),
        domain=_POSITIVE,
        convex=p >= 1,
        concave=p <= 1,
        monotone=Monotone.INCREASING,
        operator_convex=1 <= p <= 2,
        operator_concave=p <= 1,
        kind=FamilyKind.H1_OF_INTERVAL.value,
    )


def k_exponential(f: ScalarFunction, t0: float) -> ScalarFunction:
    """k(x) = exp[(f'(t0)/f(t0))(x − t0)]; f(t0)·k is a lower envelope of log-convex f."""
    ft0 = _value(f, t0)
    if ft0 == 0:
        raise InvalidParams(f"k_exponential needs f(t0) ≠ 0 at t0 = {t0:g}")
    c = _deriv_value(f, t0) / ft0
    return _log_linear(f"k[{f.label},t0={t0:g}]", FamilyKind.K_EXPONENTIAL, 0.0, c, float(t0))


def constant(c: float) -> ScalarFunction:
    c = float(c)
    return ScalarFunction(
        label=f"const({c:g})",
        eval=lambda x: c * np.ones_like(x),
        deriv=lambda x: np.zeros_like(x),
        convex=True,
        concave=True,
        log_convex=c > 0,
        monotone=Monotone.CONSTANT,
        operator_convex=True,
        operator_concave=True,
        kind=FamilyKind.CONSTANT.value,
    )


def affine(a: float, b: float) -> ScalarFunction:
    a, b = float(a), float(b)
    return ScalarFunction(
        label=f"{a:g}x+{b:g}",
        eval=lambda x: a * x + b,
        deriv=lambda x: a * np.ones_like(x),
        convex=True,
        concave=True,
        log_convex=a == 0 and b > 0,
        monotone=_monotone_from_sign(a),
        operator_convex=True,
        operator_concave=True,
        kind=FamilyKind.AFFINE.value,
    )


def log1p() -> ScalarFunction:
    return ScalarFunction(
        label="log(1+x)",
        eval=np.log1p,
        deriv=lambda x: 1.0 / (1.0 + x),
        domain=(-1.0, math.inf),
        concave=True,
        monotone=Monotone.INCREASING,
        operator_concave=True,
        kind=FamilyKind.LOG1P.value,
    )


def refinement_term(f: ScalarFunction, bounds: SpectrumBound) -> ScalarFunction:
    """x ↦ (C/(M−m))·((M−m) − |M+m−2x|) = 2C·min{x−m, M−x}/(M−m),
    C = (f(m)+f(M))/2 − f((m+M)/2). Sits between f and its chord for convex f."""
    m, M, L = bounds.m, bounds.M, bounds.width
    C = 0.5 * (_value(f, m) + _value(f, M)) - _value(f, bounds.midpoint)
    return ScalarFunction(
        label=f"min-refinement[{f.label}]",
        eval=lambda x: (C / L) * (L - np.abs(M + m - 2.0 * x)),
        deriv=lambda x: (2.0 * C / L) * np.sign(M + m - 2.0 * x),
        concave=C >= 0,
        convex=C <= 0,
        kind="refinement",
    )


def make_family(kind: FamilyKind | str, params=(), bounds: SpectrumBound | None = None, *,
                base: ScalarFunction | None = None) -> ScalarFunction:
    """Build a family by name. `base` is the f that h, ĥ and k are derived from."""
    try:
        kind = FamilyKind(kind)
    except ValueError as exc:
        raise InvalidParams(f"unknown family kind {kind!r}") from exc
    params = [float(p) for p in params]

    def need(n: int) -> None:
        if len(params) < n:
            raise InvalidParams(f"{kind.value} needs {n} parameter(s), got {len(params)}")

    def need_bounds() -> SpectrumBound:
        if bounds is None:
            raise InvalidParams(f"{kind.value} needs bounds")
        return bounds

    def need_base() -> ScalarFunction:
        if base is None:
            raise InvalidParams(f"{kind.value} is derived from a base function f")
        return base

    if kind is FamilyKind.POWER_T:
        need(1)
        return power_t(params[0])
    if kind is FamilyKind.HARMONIC_RESOLVENT_T:
        need(1)
        return harmonic_resolvent(params[0], bounds)
    if kind is FamilyKind.EXP_SCALED:
        need(1)
        return exp_scaled(*params[:2])
    if kind is FamilyKind.GEOM_ENVELOPE:
        need(1)
        return geom_envelope(params[0], need_bounds())
    if kind is FamilyKind.H_OF_F:
        return h_of_f(need_base(), need_bounds())
    if kind is FamilyKind.HHAT_OF_F:
        return hhat_of_f(need_base(), need_bounds())
    if kind is FamilyKind.H1_OF_INTERVAL:
        return h1_of_interval(need_bounds())
    if kind is FamilyKind.K_EXPONENTIAL:
        need(1)
        return k_exponential(need_base(), params[0])
    if kind is FamilyKind.CONSTANT:
        need(1)
        return constant(params[0])
    if kind is FamilyKind.AFFINE:
        need(2)
        return affine(params[0], params[1])
    return log1p()


# -- envelopes and constants -------------------------------------------------------------

@dataclass(frozen=True)
class SecantLine:
    a_f: float
    b_f: float
    bounds: SpectrumBound

    def __call__(self, t):
        return self.a_f * t + self.b_f


@dataclass(frozen=True)
class AlphaBeta:
    alpha: float
    beta: float
    t0: float


@dataclass
class ConstantSet:
    """Named constants for one experiment, each with the operation that produced it."""

    values: dict[str, float] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)

    def record(self, name: str, value: float, source: str) -> float:
        value = float(value)
        if not math.isfinite(value):
            raise InvalidParams(f"constant {name} from {source} is not finite ({value})")
        self.values[name] = value
        self.provenance[name] = source
        return value

    def get(self, name: str) -> float | None:
        return self.values.get(name)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def to_dict(self) -> dict:
        return {"values": dict(sorted(self.values.items())),
                "provenance": dict(sorted(self.provenance.items()))}


def secant(f: ScalarFunction, bounds: SpectrumBound) -> SecantLine:
    m, M = bounds.m, bounds.M
    fm, fM = _value(f, m), _value(f, M)
    return SecantLine(a_f=(fM - fm) / (M - m), b_f=(M * fm - m * fM) / (M - m), bounds=bounds)


def tangent_value(f: ScalarFunction, t0: float, t: float) -> float:
    return _value(f, t0) + _deriv_value(f, t0) * (t - t0)


def exp_envelope(f: ScalarFunction, t0: float, t: float) -> float:
    """f(t0)·exp[(f'(t0)/f(t0))(t − t0)], a lower bound for log-convex f."""
    ft0 = _value(f, t0)
    return ft0 * math.exp(_deriv_value(f, t0) / ft0 * (t - t0))


def min_distance_to_endpoints(t: float, bounds: SpectrumBound) -> float:
    """min{t − m, M − t} = (M − m − |M + m − 2t|)/2."""
    return 0.5 * (bounds.width - abs(bounds.M + bounds.m - 2.0 * t))


def check_monotone(f: ScalarFunction, bounds: SpectrumBound) -> None:
    with np.errstate(all="ignore"):
        d = np.asarray(f.derivative(bounds.grid(MONOTONE_GRID)), dtype=float) * np.ones(MONOTONE_GRID)
    if not np.all(np.isfinite(d)):
        raise FunctionDomainError(f"{f.label}' is not finite on [{bounds.m:g}, {bounds.M:g}]")
    if np.any(d > 0) and np.any(d < 0):
        raise NotMonotone(f"{f.label}' changes sign on [{bounds.m:g}, {bounds.M:g}]")


def alpha_beta(f: ScalarFunction, bounds: SpectrumBound, t0: float) -> AlphaBeta:
    """α = a_f/f'(t0), β = a_f·t0 + b_f − a_f·f(t0)/f'(t0).

    A flat chord with a flat tangent (f constant on [m, M]) gives α = 1, β = 0."""
    sec = secant(f, bounds)
    check_monotone(f, bounds)
    ft0, d = _value(f, t0), _deriv_value(f, t0)
    if sec.a_f == 0.0 and d == 0.0:
        return AlphaBeta(alpha=1.0, beta=0.0, t0=float(t0))
    if d == 0.0:
        raise ZeroDerivative(f"{f.label}'({t0:g}) = 0")
    if sec.a_f * d <= 0:
        raise NotMonotone(f"a_f·f'(t0) = {sec.a_f * d:.3e} ≤ 0 for {f.label} at t0 = {t0:g}")
    alpha = sec.a_f / d
    beta = sec.a_f * t0 + sec.b_f - sec.a_f * ft0 / d
    return AlphaBeta(alpha=alpha, beta=beta, t0=float(t0))


def default_t0(f: ScalarFunction, bounds: SpectrumBound) -> float:
    return bounds.geometric_mean if f.reciprocal_like else bounds.midpoint


def golden_section_max(g: Callable[[float], float], lo: float, hi: float,
                       tol: float, max_iter: int = 300) -> tuple[float, float]:
    """Maximize a unimodal g on [lo, hi] down to bracket width `tol`."""
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    g1, g2 = g(x1), g(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if g1 >= g2:
            b, x2, g2 = x2, x1, g1
            x1 = b - INV_PHI * (b - a)
            g1 = g(x1)
        else:
            a, x1, g1 = x1, x2, g2
            x2 = a + INV_PHI * (b - a)
            g2 = g(x2)
    return (x1, g1) if g1 >= g2 else (x2, g2)


def mu_constant(f: ScalarFunction, bounds: SpectrumBound) -> float:
    """μ(m, M, f) = max over [m, M] of (a_f t + b_f)/f(t)."""
    sec = secant(f, bounds)
    grid = bounds.grid(MU_GRID)
    with np.errstate(all="ignore"):
        fv = np.asarray(f(grid), dtype=float) * np.ones(MU_GRID)
    if not np.all(np.isfinite(fv)) or np.any(fv <= 0):
        raise FunctionDomainError(f"{f.label} must be finite and positive on [{bounds.m:g}, {bounds.M:g}]")
    ratio = (sec.a_f * grid + sec.b_f) / fv
    i = int(np.argmax(ratio))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, MU_GRID - 1)]
    _, best = golden_section_max(lambda t: sec(t) / _value(f, t), lo, hi, GOLDEN_RTOL * bounds.width)
    return max(float(ratio[i]), best)


def kantorovich(bounds: SpectrumBound, t: float) -> float:
    """Generalized Kantorovich constant K(m, M, t)."""
    t = float(t)
    if t in (0.0, 1.0):
        raise InvalidParams(f"K(m, M, t) is undefined at t = {t:g}")
    m, M = bounds.m, bounds.M
    cross = m * M ** t - M * m ** t
    first = cross / ((t - 1.0) * (M - m))
    inner = ((t - 1.0) / t) * (M ** t - m ** t) / cross
    return first * inner ** t


def scalar_harmonic(t: float, x: float) -> float:
    """1 !_t x = (1 − t + t/x)^{-1}."""
    if x == 0:
        raise PoleError("1 !_t x has a pole at x = 0")
    d = 1.0 - t + t / x
    if d <= 0:
        raise PoleError(f"1 − t + t/x = {d:.6g} ≤ 0 at t = {t:g}, x = {x:g}")
    return 1.0 / d


def harmonic_H(bounds: SpectrumBound, t: float) -> float:
    """H(m, M, t) = [(1−t)² + (t/mM)(2(1−t)√(mM) + t)]·(1 !_t m)(1 !_t M)."""
    m, M = bounds.m, bounds.M
    if m < 1:
        raise InvalidParams(f"H(m, M, t) needs m ≥ 1, got m = {m:g}")
    if t > 0:
        raise InvalidParams(f"H(m, M, t) needs t ≤ 0, got t = {t:g}")
    root = math.sqrt(m * M)
    bracket = (1.0 - t) ** 2 + (t / (m * M)) * (2.0 * (1.0 - t) * root + t)
    return bracket * scalar_harmonic(t, m) * scalar_harmonic(t, M)


def harmonic_H_limit(bounds: SpectrumBound) -> float:
    """lim_{t→−∞} H(m, M, t) = (√(mM) − 1)²/((m − 1)(M − 1)); needs m > 1."""
    m, M = bounds.m, bounds.M
    if m <= 1:
        raise InvalidParams(f"the H limit needs m > 1, got m = {m:g}")
    return (math.sqrt(m * M) - 1.0) ** 2 / ((m - 1.0) * (M - 1.0))


def _bisect_root(g: Callable[[float], float], bounds: SpectrumBound, tol: float, what: str) -> float:
    delta = 1e-9 * bounds.width
    lo, hi = bounds.m + delta, bounds.M - delta
    glo, ghi = g(lo), g(hi)
    if abs(glo) <= tol and abs(ghi) <= tol:
        return bounds.midpoint
    if glo * ghi > 0:
        raise NoRoot(f"{what} has the same sign at both ends of ({lo:.12g}, {hi:.12g})")
    root = float(bisect(g, lo, hi, xtol=1e-15 * max(1.0, bounds.M), maxiter=400))
    resid = abs(g(root))
    if resid > tol:
        raise NoRoot(f"{what}: bisection stalled with residual {resid:.3e} > {tol:.3e}")
    return root


def solve_t0_alpha_one(h: ScalarFunction, bounds: SpectrumBound) -> float:
    """t0 in (m, M) with h'(t0) = a_h, so that α(h, t0) = 1."""
    a = secant(h, bounds).a_f
    return _bisect_root(lambda t: _deriv_value(h, t) - a, bounds,
                        SOLVER_RTOL * max(1.0, abs(a)), f"{h.label}' − a_h")


def solve_t0_beta_zero(h: ScalarFunction, bounds: SpectrumBound) -> float:
    """t0 in (m, M) with β(h, t0) = 0 (the multiplicative form)."""
    sec = secant(h, bounds)
    if sec.a_f == 0.0:
        return bounds.midpoint

    def beta(t: float) -> float:
        d = _deriv_value(h, t)
        if d == 0.0:
            raise ZeroDerivative(f"{h.label}'({t:g}) = 0")
        return sec.a_f * t + sec.b_f - sec.a_f * _value(h, t) / d

    return _bisect_root(beta, bounds, SOLVER_RTOL * max(1.0, abs(sec.b_f)), f"β({h.label}, ·)")


def is_log_convex(f: ScalarFunction, bounds: SpectrumBound) -> bool:
    """Midpoint convexity of log f on a 256-point grid, plus f ≤ geometric envelope."""
    grid = bounds.grid(LOG_CONVEX_GRID)
    with np.errstate(all="ignore"):
        fv = np.asarray(f(grid), dtype=float) * np.ones(LOG_CONVEX_GRID)
    if not np.all(np.isfinite(fv)) or np.any(fv <= 0):
        return False
    lf = np.log(fv)
    second = lf[:-2] + lf[2:] - 2.0 * lf[1:-1]
    if np.any(second < -1e-12 * max(1.0, float(np.max(np.abs(lf))))):
        return False
    envelope = np.exp(lf[0] + (grid - bounds.m) * (lf[-1] - lf[0]) / bounds.width)
    return bool(np.all(fv <= envelope * (1.0 + ENVELOPE_RTOL)))


def power_interval(f: ScalarFunction, bounds: SpectrumBound) -> SpectrumBound | None:
    """[f^{M−m}(m), f^{M−m}(M)] ordered by f's direction; None when it collapses."""
    ends = sorted((_value(f, bounds.m) ** bounds.width, _value(f, bounds.M) ** bounds.width))
    if ends[1] - ends[0] <= 1e-12 * max(1.0, ends[1]):
        return None
    return SpectrumBound(ends[0], ends[1])
