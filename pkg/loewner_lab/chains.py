#!/usr/bin/env python3
"""
chains.py — one verifiable operator-inequality chain per result.

Each builder materializes every term of its chain as a matrix (not just pairwise
differences), so a report shows where the chain is tight, then certifies each link
with a Loewner verdict and a minimum-eigenvalue witness.

A link is a pair of term indices. Plain chains link consecutive terms; results made of
two or more independent inequalities hold several short chains side by side, and a few
results add side links (e.g. the contained two-term inequality of the geometric-mean
chain).

Link status:
    pass       verdict holds
    marginal   fails by less than 10·tol even after a second eigen-solver pass
    fail       a proved inequality is violated
    unproved   a link whose inequality needs a hypothesis the instance does not carry
               (operator monotonicity of t^p with p > 1) failed; reported, not a violation
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvalidParams
from .linalg import (
    DEFAULT_RTOL,
    HermitianMatrix,
    OrderVerdict,
    SpectrumBound,
    apply_function,
    congruence,
    loewner_leq,
    sqrt_and_inv_sqrt,
)
from .maps import PositiveLinearMap, apply_map, induced_psi
from .means import MeanParams, delta, sigma_f
from .scalar_funcs import (
    ConstantSet,
    ScalarFunction,
    alpha_beta,
    default_t0,
    geom_envelope,
    h1_of_interval,
    h_of_f,
    harmonic_H,
    hhat_of_f,
    is_log_convex,
    k_exponential,
    kantorovich,
    mu_constant,
    power_interval,
    power_t,
    refinement_term,
    secant,
    solve_t0_alpha_one,
)

log = logging.getLogger(__name__)

MARGINAL_FACTOR = 10.0
CROSS_ROUTE_RTOL = 1e-9


class LinkStatus(str, Enum):
    PASS = "pass"
    MARGINAL = "marginal"
    FAIL = "fail"
    UNPROVED = "unproved"


class Term(NamedTuple):
    label: str
    value: HermitianMatrix


@dataclass(frozen=True)
class Link:
    lower: int
    upper: int
    verdict: OrderVerdict
    status: LinkStatus
    proved: bool = True
    note: str = ""


@dataclass
class ChainReport:
    result_id: str
    terms: list[Term]
    links: list[Link]
    constants: ConstantSet = field(default_factory=ConstantSet)
    instance_digest: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def verdicts(self) -> list[OrderVerdict]:
        return [lk.verdict for lk in self.links]

    @property
    def holds(self) -> bool:
        return all(lk.verdict.holds for lk in self.links)

    @property
    def status(self) -> LinkStatus:
        seen = {lk.status for lk in self.links}
        for s in (LinkStatus.FAIL, LinkStatus.UNPROVED, LinkStatus.MARGINAL):
            if s in seen:
                return s
        return LinkStatus.PASS

    @property
    def min_gap(self) -> float:
        return min((lk.verdict.min_eig_gap for lk in self.links), default=math.inf)

    def to_dict(self) -> dict:
        return {
            "result_id": self.result_id,
            "status": self.status.value,
            "holds": self.holds,
            "min_gap": self.min_gap if self.links else None,
            "terms": [t.label for t in self.terms],
            "links": [
                {"lower": self.terms[lk.lower].label, "upper": self.terms[lk.upper].label,
                 "gap": lk.verdict.min_eig_gap, "tolerance": lk.verdict.tolerance_used,
                 "status": lk.status.value, "proved": lk.proved, "note": lk.note}
                for lk in self.links
            ],
            "constants": self.constants.to_dict(),
            "instance": dict(sorted(self.instance_digest.items())),
            "notes": list(self.notes),
        }


def _second_opinion_gap(lower: HermitianMatrix, upper: HermitianMatrix) -> float:
    d = upper.data - lower.data
    return float(scipy.linalg.eigvalsh(0.5 * (d + d.conj().T), driver="ev")[0])


def judge(lower: HermitianMatrix, upper: HermitianMatrix, rtol: float = DEFAULT_RTOL,
          proved: bool = True) -> tuple[OrderVerdict, LinkStatus]:
    """Loewner verdict for lower ⪯ upper with the marginal-retry policy."""
    v = loewner_leq(lower, upper, rtol)
    if v.holds:
        return v, LinkStatus.PASS
    if v.min_eig_gap > -MARGINAL_FACTOR * v.tolerance_used:
        retry = _second_opinion_gap(lower, upper)
        log.warning("marginal gap %.3e (tol %.3e); retried: %.3e", v.min_eig_gap, v.tolerance_used, retry)
        if retry >= -v.tolerance_used:
            return OrderVerdict(True, retry, v.tolerance_used), LinkStatus.PASS
        return v, LinkStatus.MARGINAL
    return v, (LinkStatus.FAIL if proved else LinkStatus.UNPROVED)


class _Chain:
    """Accumulates terms and links for one report."""

    def __init__(self, result_id: str, rtol: float, digest: dict):
        self.result_id = result_id
        self.rtol = rtol
        self.terms: list[Term] = []
        self.links: list[Link] = []
        self.constants = ConstantSet()
        self.digest = digest
        self.notes: list[str] = []

    def term(self, label: str, value: HermitianMatrix) -> int:
        if self.terms and value.dim != self.terms[0].value.dim:
            raise DimensionMismatch(f"term {label!r} is {value.dim}×{value.dim}, "
                                    f"chain terms are {self.terms[0].value.dim}×{self.terms[0].value.dim}")
        self.terms.append(Term(label, value))
        return len(self.terms) - 1

    def link(self, lower: int, upper: int, proved: bool = True, note: str = "") -> None:
        verdict, status = judge(self.terms[lower].value, self.terms[upper].value, self.rtol, proved)
        if status in (LinkStatus.FAIL, LinkStatus.UNPROVED):
            log.warning("%s: %s ⪯ %s fails with gap %.3e (%s)", self.result_id,
                        self.terms[lower].label, self.terms[upper].label, verdict.min_eig_gap, status.value)
        self.links.append(Link(lower, upper, verdict, status, proved, note))

    def chain(self, *items: tuple[str, HermitianMatrix]) -> list[int]:
        idx = [self.term(label, value) for label, value in items]
        for a, b in zip(idx[:-1], idx[1:]):
            self.link(a, b)
        return idx

    def report(self) -> ChainReport:
        return ChainReport(self.result_id, self.terms, self.links, self.constants,
                           self.digest, self.notes)


# -- shared pieces -----------------------------------------------------------------------

def _digest(A: HermitianMatrix, phi: PositiveLinearMap, bounds: SpectrumBound,
            function: str) -> dict:
    return {"dim": A.dim, "map": phi.label, "bounds": bounds.label(), "function": function}


def _require_log_convex(f: ScalarFunction, bounds: SpectrumBound) -> None:
    if not is_log_convex(f, bounds):
        raise InvalidParams(f"{f.label} is not log-convex on [{bounds.m:g}, {bounds.M:g}]")


def _require_normalized(phi: PositiveLinearMap) -> None:
    if not phi.normalized:
        raise InvalidParams(f"{phi.label} is not normalized (φ(I) ≠ I)")


def _require_relative_bounds(A: HermitianMatrix, B: HermitianMatrix, bounds: SpectrumBound,
                             rtol: float) -> None:
    if not (loewner_leq(bounds.m * A, B, rtol).holds and loewner_leq(B, bounds.M * A, rtol).holds):
        raise InvalidParams(f"pair does not satisfy mA ⪯ B ⪯ MA for [{bounds.m:g}, {bounds.M:g}]")


def _envelope_chain(c: _Chain, f: ScalarFunction, h: ScalarFunction, A: HermitianMatrix,
                    phi: PositiveLinearMap, bounds: SpectrumBound, const: float, name: str) -> None:
    """(1/c)φ(f(A)) ⪯ (1/c)φ(h(A)) ⪯ f(φ(A)) ⪯ h(φ(A)) ⪯ c·φ(f(A))."""
    phi_a = apply_map(phi, A)
    phi_fa = apply_map(phi, apply_function(f, A, bounds))
    c.chain(
        (f"(1/{name})·φ(f(A))", (1.0 / const) * phi_fa),
        (f"(1/{name})·φ(h(A))", (1.0 / const) * apply_map(phi, apply_function(h, A, bounds))),
        ("f(φ(A))", apply_function(f, phi_a, bounds)),
        ("h(φ(A))", apply_function(h, phi_a, bounds)),
        (f"{name}·φ(f(A))", const * phi_fa),
    )


def _mean_chain(c: _Chain, f: ScalarFunction, g: ScalarFunction, A: HermitianMatrix,
                B: HermitianMatrix, phi: PositiveLinearMap, bounds: SpectrumBound,
                mean_ab: HermitianMatrix, const: float, name: str, sym: str) -> list[int]:
    """(1/c)φ(AσB) ⪯ (1/c)φ(Aσ_gB) ⪯ φ(A)σφ(B) ⪯ φ(A)σ_gφ(B) ⪯ c·φ(AσB), the middle
    terms computed through ψ(X) = φ(A)^{-1/2}φ(A^{1/2}XA^{1/2})φ(A)^{-1/2}."""
    phi_a = apply_map(phi, A)
    psi = induced_psi(phi, A)
    psi_x = psi(delta(A, B))
    root_phi_a, _ = sqrt_and_inv_sqrt(phi_a)
    drift = (psi_x - delta(phi_a, apply_map(phi, B))).frobenius()
    if drift > CROSS_ROUTE_RTOL * max(1.0, psi_x.frobenius()):
        c.notes.append(f"ψ(AδB) and φ(A)δφ(B) differ by {drift:.3e}")
    phi_mean = apply_map(phi, mean_ab)
    return c.chain(
        (f"(1/{name})·φ(A{sym}B)", (1.0 / const) * phi_mean),
        (f"(1/{name})·φ(Aσ_gB)", (1.0 / const) * apply_map(phi, sigma_f(A, B, g, bounds))),
        (f"φ(A){sym}φ(B)", congruence(root_phi_a, apply_function(f, psi_x, bounds))),
        ("φ(A)σ_gφ(B)", congruence(root_phi_a, apply_function(g, psi_x, bounds))),
        (f"{name}·φ(A{sym}B)", const * phi_mean),
    )


def _h1_constants(c: _Chain, f: ScalarFunction, bounds: SpectrumBound,
                  t1: float | None) -> tuple[ScalarFunction, SpectrumBound | None, float, float]:
    """h₁ = t^{1/(M−m)} and (α₁, β₁) on [f^{M−m}(m), f^{M−m}(M)] at t1."""
    h1 = h1_of_interval(bounds)
    interval = power_interval(f, bounds)
    if interval is None:
        c.notes.append("f(m) = f(M): h₁ interval collapses, α₁ = 1, β₁ = 0")
        return h1, None, 1.0, 0.0
    if bounds.width >= 1:
        return h1, interval, 1.0, 0.0
    source = "argument"
    if t1 is None:
        t1 = solve_t0_alpha_one(h1, interval)
        source = "solve_t0_alpha_one"
    ab1 = alpha_beta(h1, interval, t1)
    c.constants.record("t1", t1, source)
    c.constants.record("alpha_1", ab1.alpha, "alpha_beta(h1)")
    c.constants.record("beta_1", ab1.beta, "alpha_beta(h1)")
    return h1, interval, ab1.alpha, ab1.beta


def _record_alpha_beta(c: _Chain, f: ScalarFunction, bounds: SpectrumBound, t0: float,
                       suffix: str = "") -> tuple[float, float]:
    ab = alpha_beta(f, bounds, t0)
    sec = secant(f, bounds)
    c.constants.record(f"a_f{suffix}", sec.a_f, f"secant({f.label})")
    c.constants.record(f"b_f{suffix}", sec.b_f, f"secant({f.label})")
    c.constants.record(f"t0{suffix}", t0, "argument")
    c.constants.record(f"alpha{suffix}", ab.alpha, f"alpha_beta({f.label})")
    c.constants.record(f"beta{suffix}", ab.beta, f"alpha_beta({f.label})")
    return ab.alpha, ab.beta


# -- builders ----------------------------------------------------------------------------

def chain_prop21(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                 bounds: SpectrumBound, *, rtol: float = DEFAULT_RTOL) -> ChainReport:
    _require_log_convex(f, bounds)
    _require_normalized(phi)
    c = _Chain("prop21", rtol, _digest(A, phi, bounds, f.label))
    mu = c.constants.record("mu", mu_constant(f, bounds), "mu_constant")
    _envelope_chain(c, f, h_of_f(f, bounds), A, phi, bounds, mu, "μ")
    return c.report()


def chain_cor22(A: HermitianMatrix, phi: PositiveLinearMap, bounds: SpectrumBound, t: float,
                *, rtol: float = DEFAULT_RTOL) -> ChainReport:
    if t >= 0:
        raise InvalidParams(f"the power chain needs t < 0, got {t:g}")
    _require_normalized(phi)
    f = power_t(t)
    c = _Chain("cor22", rtol, _digest(A, phi, bounds, f.label))
    K = c.constants.record("K", kantorovich(bounds, t), "kantorovich")
    mu = c.constants.record("mu", mu_constant(f, bounds), "mu_constant")
    if abs(K - mu) > CROSS_ROUTE_RTOL * K:
        c.notes.append(f"K = {K!r} and μ = {mu!r} disagree beyond {CROSS_ROUTE_RTOL:g}")
    _envelope_chain(c, f, geom_envelope(t, bounds), A, phi, bounds, K, "K")
    return c.report()


def chain_cor24(f: ScalarFunction, A: HermitianMatrix, B: HermitianMatrix,
                phi: PositiveLinearMap, bounds: SpectrumBound, *,
                rtol: float = DEFAULT_RTOL) -> ChainReport:
    _require_log_convex(f, bounds)
    _require_relative_bounds(A, B, bounds, rtol)
    c = _Chain("cor24", rtol, _digest(A, phi, bounds, f.label))
    mu = c.constants.record("mu", mu_constant(f, bounds), "mu_constant")
    _mean_chain(c, f, h_of_f(f, bounds), A, B, phi, bounds, sigma_f(A, B, f, bounds), mu, "μ", "σ_f")
    return c.report()


def chain_cor25(A: HermitianMatrix, B: HermitianMatrix, phi: PositiveLinearMap,
                bounds: SpectrumBound, t: float, *, rtol: float = DEFAULT_RTOL) -> ChainReport:
    params = MeanParams("geometric", t, bounds)
    _require_relative_bounds(A, B, bounds, rtol)
    f = params.function()
    c = _Chain("cor25", rtol, _digest(A, phi, bounds, f.label))
    K = c.constants.record("K", kantorovich(bounds, t), "kantorovich")
    geo = params.mean(A, B)
    idx = _mean_chain(c, f, geom_envelope(t, bounds), A, B, phi, bounds, geo, K, "K", params.symbol)
    c.link(idx[2], idx[4], note="contained two-term inequality")
    if -1 <= t < 0:
        plain = c.term("φ(A♯_tB)", apply_map(phi, geo))
        c.link(idx[2], plain, note="operator convexity of x^t, t ∈ [-1, 0)")
    return c.report()


def chain_cor26(A: HermitianMatrix, B: HermitianMatrix, phi: PositiveLinearMap,
                bounds: SpectrumBound, t: float, *, rtol: float = DEFAULT_RTOL) -> ChainReport:
    params = MeanParams("harmonic", t, bounds)
    _require_relative_bounds(A, B, bounds, rtol)
    f = params.function()
    c = _Chain("cor26", rtol, _digest(A, phi, bounds, f.label))
    H = c.constants.record("H", harmonic_H(bounds, t), "harmonic_H")
    mu = c.constants.record("mu", mu_constant(f, bounds), "mu_constant")
    if abs(H - mu) > CROSS_ROUTE_RTOL * H:
        c.notes.append(f"H = {H!r} and μ = {mu!r} disagree beyond {CROSS_ROUTE_RTOL:g}")
    _mean_chain(c, f, h_of_f(f, bounds), A, B, phi, bounds, params.mean(A, B), H, "H", params.symbol)
    return c.report()


def check_prop28(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                 bounds: SpectrumBound, t0: float | None = None, *,
                 rtol: float = DEFAULT_RTOL) -> ChainReport:
    """φ(f(A)) ⪯ α·f(φ(A)) + β and f(φ(A)) ⪯ α·φ(f(A)) + β; reversed for concave f."""
    _require_normalized(phi)
    if not (f.convex or f.concave):
        raise InvalidParams(f"{f.label} is tagged neither convex nor concave")
    t0 = default_t0(f, bounds) if t0 is None else t0
    c = _Chain("prop28", rtol, _digest(A, phi, bounds, f.label))
    alpha, beta = _record_alpha_beta(c, f, bounds, t0)
    phi_fa = apply_map(phi, apply_function(f, A, bounds))
    f_phia = apply_function(f, apply_map(phi, A), bounds)
    first = ("α·f(φ(A))+β", (alpha * f_phia).shift(beta))
    second = ("α·φ(f(A))+β", (alpha * phi_fa).shift(beta))
    if f.convex:
        c.chain(("φ(f(A))", phi_fa), first)
        c.chain(("f(φ(A))", f_phia), second)
    else:
        c.notes.append("concave f: both inequalities reversed")
        c.chain(first, ("φ(f(A))", phi_fa))
        c.chain(second, ("f(φ(A))", f_phia))
    return c.report()


def chain_cor_inverse(A: HermitianMatrix, phi: PositiveLinearMap, bounds: SpectrumBound, *,
                      rtol: float = DEFAULT_RTOL) -> ChainReport:
    """φ(A^{-1}) ⪯ φ(A)^{-1} + (1/√m − 1/√M)² and φ(A^{-1}) ⪯ (M+m)²/(4mM)·φ(A)^{-1}."""
    _require_normalized(phi)
    f = power_t(-1.0)
    m, M = bounds.m, bounds.M
    c = _Chain("cor_inverse", rtol, _digest(A, phi, bounds, f.label))
    a1, b1 = _record_alpha_beta(c, f, bounds, bounds.geometric_mean, "_additive")
    a2, b2 = _record_alpha_beta(c, f, bounds, bounds.midpoint, "_multiplicative")
    closed_beta = c.constants.record("beta_closed", (1 / math.sqrt(m) - 1 / math.sqrt(M)) ** 2, "closed form")
    closed_k = c.constants.record("K_closed", (M + m) ** 2 / (4 * m * M), "closed form")
    if abs(b1 - closed_beta) > 1e-12 * max(1.0, closed_beta) or abs(a2 - closed_k) > 1e-12 * closed_k:
        c.notes.append("α/β constants differ from their closed forms beyond 1e-12")
    phi_inv = apply_map(phi, apply_function(f, A, bounds))
    inv_phi = apply_function(f, apply_map(phi, A), bounds)
    c.chain(("φ(A^-1)", phi_inv), ("φ(A)^-1+(1/√m-1/√M)²", (a1 * inv_phi).shift(b1)))
    c.chain(("φ(A^-1)", phi_inv), ("(M+m)²/(4mM)·φ(A)^-1", (a2 * inv_phi).shift(b2)))
    return c.report()


def _thm1_head(c: _Chain, f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
               bounds: SpectrumBound, t0: float | None) -> tuple[list[int], float, float, HermitianMatrix]:
    """f(φ(A)) ⪯ h(φ(A)) ⪯ α·φ(h(A)) + β, with α, β from h at t0."""
    _require_log_convex(f, bounds)
    _require_normalized(phi)
    h = h_of_f(f, bounds)
    t0 = default_t0(f, bounds) if t0 is None else t0
    alpha, beta = _record_alpha_beta(c, h, bounds, t0)
    phi_a = apply_map(phi, A)
    phi_fa = apply_map(phi, apply_function(f, A, bounds))
    idx = c.chain(
        ("f(φ(A))", apply_function(f, phi_a, bounds)),
        ("h(φ(A))", apply_function(h, phi_a, bounds)),
        ("α·φ(h(A))+β", (alpha * apply_map(phi, apply_function(h, A, bounds))).shift(beta)),
    )
    return idx, alpha, beta, phi_fa


def chain_thm1(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
               bounds: SpectrumBound, t0: float | None = None, t1: float | None = None, *,
               rtol: float = DEFAULT_RTOL) -> ChainReport:
    c = _Chain("thm1", rtol, _digest(A, phi, bounds, f.label))
    idx, alpha, beta, _ = _thm1_head(c, f, A, phi, bounds, t0)
    h1, interval, a1, b1 = _h1_constants(c, f, bounds, t1)
    y = apply_map(phi, apply_function(hhat_of_f(f, bounds), A, bounds))
    root = apply_function(h1, y, interval)
    if bounds.width >= 1:
        c.notes.append("M − m ≥ 1: h₁ operator concave branch")
        last = c.term("α·[φ(ĥ(A))]^(1/(M-m))+β", (alpha * root).shift(beta))
    else:
        c.notes.append("M − m < 1: α₁, β₁ branch")
        last = c.term("α·α₁·[φ(ĥ(A))]^(1/(M-m))+α·β₁+β", (alpha * a1 * root).shift(alpha * b1 + beta))
    c.link(idx[-1], last)
    return c.report()


def chain_cor_thm1(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                   bounds: SpectrumBound, t0: float | None = None, *,
                   rtol: float = DEFAULT_RTOL) -> ChainReport:
    c = _Chain("cor_thm1", rtol, _digest(A, phi, bounds, f.label))
    idx, alpha, beta, phi_fa = _thm1_head(c, f, A, phi, bounds, t0)
    mu = c.constants.record("mu", mu_constant(f, bounds), "mu_constant")
    last = c.term("α·μ·φ(f(A))+β", (alpha * mu * phi_fa).shift(beta))
    c.link(idx[-1], last)
    return c.report()


def chain_thm2(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
               bounds: SpectrumBound, t0: float | None = None, t1: float | None = None, *,
               rtol: float = DEFAULT_RTOL) -> ChainReport:
    _require_log_convex(f, bounds)
    _require_normalized(phi)
    c = _Chain("thm2", rtol, _digest(A, phi, bounds, f.label))
    hhat = hhat_of_f(f, bounds)
    t0 = default_t0(f, bounds) if t0 is None else t0
    alpha, beta = _record_alpha_beta(c, hhat, bounds, t0, "_hat")
    h1, interval, a1, b1 = _h1_constants(c, f, bounds, t1)
    y = apply_map(phi, apply_function(hhat, A, bounds))
    z = (alpha * apply_function(hhat, apply_map(phi, A), bounds)).shift(beta)
    first = c.term("φ(f(A))", apply_map(phi, apply_function(f, A, bounds)))
    if bounds.width >= 1:
        c.notes.append("M − m ≥ 1: h₁ operator monotone branch")
        mid = c.term("[φ(ĥ(A))]^(1/(M-m))", apply_function(h1, y, interval))
        last = c.term("(α̂·ĥ(φ(A))+β̂)^(1/(M-m))", apply_function(h1, z))
        c.link(first, mid)
        c.link(mid, last)
    else:
        c.notes.append("M − m < 1: α₁, β₁ branch")
        mid = c.term("α₁·[φ(ĥ(A))]^(1/(M-m))+β₁", (a1 * apply_function(h1, y, interval)).shift(b1))
        last = c.term("α₁·(α̂·ĥ(φ(A))+β̂)^(1/(M-m))+β₁", (a1 * apply_function(h1, z)).shift(b1))
        c.link(first, mid)
        c.link(mid, last, proved=False,
               note=f"needs X ⪯ Y ⇒ X^p ⪯ Y^p with p = {1 / bounds.width:.6g} > 1")
    return c.report()


def check_eprop(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                bounds: SpectrumBound, t0: float | None = None, t1: float | None = None, *,
                rtol: float = DEFAULT_RTOL) -> ChainReport:
    """Exponential lower bounds through k(t) = exp[(f'(t0)/f(t0))(t − t0)]."""
    _require_log_convex(f, bounds)
    _require_normalized(phi)
    t0 = default_t0(f, bounds) if t0 is None else t0
    t1 = bounds.midpoint if t1 is None else t1
    c = _Chain("eprop", rtol, _digest(A, phi, bounds, f.label))
    k = k_exponential(f, t0)
    ft0 = c.constants.record("f_t0", f(t0), "f(t0)")
    c.constants.record("t0", t0, "argument")
    ab = alpha_beta(k, bounds, t1)
    c.constants.record("t1", t1, "argument")
    alpha = c.constants.record("alpha", ab.alpha, "alpha_beta(k)")
    beta = c.constants.record("beta", ab.beta, "alpha_beta(k)")
    phi_a = apply_map(phi, A)
    k_phi_a = apply_function(k, phi_a, bounds)
    phi_k_a = apply_map(phi, apply_function(k, A, bounds))
    shift = -beta / alpha * ft0
    c.chain(
        ("(f(t0)/α)·k(φ(A))-(β/α)f(t0)", (ft0 / alpha * k_phi_a).shift(shift)),
        ("f(t0)·φ(k(A))", ft0 * phi_k_a),
        ("φ(f(A))", apply_map(phi, apply_function(f, A, bounds))),
    )
    c.chain(
        ("(f(t0)/α)·φ(k(A))-(β/α)f(t0)", (ft0 / alpha * phi_k_a).shift(shift)),
        ("f(t0)·k(φ(A))", ft0 * k_phi_a),
        ("f(φ(A))", apply_function(f, phi_a, bounds)),
    )
    return c.report()


def a_min_operator(f: ScalarFunction, A: HermitianMatrix, bounds: SpectrumBound) -> HermitianMatrix:
    """A_min = (C/(M−m))·((M−m)I − |(M+m)I − 2A|), C = (f(m)+f(M))/2 − f((m+M)/2)."""
    if not f.convex:
        raise InvalidParams(f"A_min needs a convex f, got {f.label}")
    return apply_function(refinement_term(f, bounds), A, bounds)


def check_refined(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                  bounds: SpectrumBound, t0: float | None = None, *,
                  rtol: float = DEFAULT_RTOL) -> ChainReport:
    """Refined forms of check_prop28 and chain_cor_inverse; each refined left side sits
    between the unrefined one and the bound."""
    _require_normalized(phi)
    if not f.convex:
        raise InvalidParams(f"the refined inequalities need a convex f, got {f.label}")
    t0 = default_t0(f, bounds) if t0 is None else t0
    c = _Chain("refined", rtol, _digest(A, phi, bounds, f.label))
    alpha, beta = _record_alpha_beta(c, f, bounds, t0)
    phi_a = apply_map(phi, A)
    phi_fa = apply_map(phi, apply_function(f, A, bounds))
    f_phia = apply_function(f, phi_a, bounds)
    c.chain(("φ(f(A))", phi_fa),
            ("φ(f(A))+φ(A_min)", phi_fa + apply_map(phi, a_min_operator(f, A, bounds))),
            ("α·f(φ(A))+β", (alpha * f_phia).shift(beta)))
    c.chain(("f(φ(A))", f_phia),
            ("f(φ(A))+(φ(A))_min", f_phia + a_min_operator(f, phi_a, bounds)),
            ("α·φ(f(A))+β", (alpha * phi_fa).shift(beta)))

    inv = power_t(-1.0)
    a1, b1 = _record_alpha_beta(c, inv, bounds, bounds.geometric_mean, "_additive")
    a2, b2 = _record_alpha_beta(c, inv, bounds, bounds.midpoint, "_multiplicative")
    phi_inv = apply_map(phi, apply_function(inv, A, bounds))
    inv_phi = apply_function(inv, phi_a, bounds)
    refined_inv = phi_inv + apply_map(phi, a_min_operator(inv, A, bounds))
    idx = c.chain(("φ(A^-1)", phi_inv),
                  ("φ(A^-1)+φ(A_min)", refined_inv),
                  ("φ(A)^-1+(1/√m-1/√M)²", (a1 * inv_phi).shift(b1)))
    mult = c.term("(M+m)²/(4mM)·φ(A)^-1", (a2 * inv_phi).shift(b2))
    c.link(idx[1], mult)
    return c.report()


def check_jensen(f: ScalarFunction, A: HermitianMatrix, phi: PositiveLinearMap,
                 bounds: SpectrumBound, *, rtol: float = DEFAULT_RTOL) -> ChainReport:
    """f(φ(A)) ⪯ φ(f(A)) for operator convex f and normalized φ."""
    _require_normalized(phi)
    if not f.operator_convex:
        raise InvalidParams(f"{f.label} is not tagged operator convex")
    c = _Chain("jensen", rtol, _digest(A, phi, bounds, f.label))
    c.chain(("f(φ(A))", apply_function(f, apply_map(phi, A), bounds)),
            ("φ(f(A))", apply_map(phi, apply_function(f, A, bounds))))
    return c.report()


def verify_chain(terms: list[tuple[str, HermitianMatrix]] | list[HermitianMatrix],
                 rtol: float = DEFAULT_RTOL) -> ChainReport:
    """Consecutive Loewner verdicts over an arbitrary ordered list of terms."""
    items = [t if isinstance(t, tuple) else (f"T{i}", t) for i, t in enumerate(terms)]
    dims = {value.dim for _, value in items}
    if len(dims) > 1:
        raise DimensionMismatch(f"terms have mixed dimensions {sorted(dims)}")
    c = _Chain("verify_chain", rtol, {"dim": next(iter(dims), 0)})
    c.chain(*items)
    return c.report()
