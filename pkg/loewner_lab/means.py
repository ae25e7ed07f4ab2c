#!/usr/bin/env python3
"""
means.py — operator means built on the quotient AδB = A^{-1/2} B A^{-1/2}.

    A σ_f B = A^{1/2} f(AδB) A^{1/2}     (symmetric conjugation on both sides)
    A ♯_t B = A σ_{x^t} B                (t may be negative)
    A !_t B = ((1−t)A^{-1} + tB^{-1})^{-1}

The harmonic mean is computed from the resolvent form; `cross_check=True` also builds
it as σ_f with f(x) = (1 − t + t/x)^{-1} and raises if the two disagree.

`MeanParams` validates the (kind, t, bounds) triple the mean chains run on and hands
back the representing function and the mean itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import DecompositionError, InvalidParams, NotPositiveDefinite, PoleError
from .linalg import (
    HermitianMatrix,
    SpectrumBound,
    apply_function,
    congruence,
    inverse,
    sqrt_and_inv_sqrt,
    spectral_decompose,
)
from .scalar_funcs import ScalarFunction, harmonic_resolvent, power_t

CROSS_CHECK_RTOL = 1e-9

MeanKind = Literal["geometric", "harmonic"]


def _require_pd(X: HermitianMatrix, name: str) -> None:
    lam = spectral_decompose(X).eigenvalues[0]
    if lam <= 0.0:
        raise NotPositiveDefinite(f"{name} must be positive definite, λ_min = {lam:.6g}")


@dataclass(frozen=True)
class MeanParams:
    kind: MeanKind
    t: float
    bounds: SpectrumBound

    def __post_init__(self):
        if self.kind not in ("geometric", "harmonic"):
            raise InvalidParams(f"unknown mean kind {self.kind!r}")
        if self.t >= 0:
            raise InvalidParams(f"the {self.kind}-mean chain needs t < 0, got {self.t:g}")
        if self.kind == "harmonic" and self.bounds.m < 1:
            raise InvalidParams(f"the harmonic-mean chain needs m ≥ 1, got m = {self.bounds.m:g}")

    @property
    def symbol(self) -> str:
        return "♯_t" if self.kind == "geometric" else "!_t"

    def function(self) -> ScalarFunction:
        """The f with A σ_f B equal to this mean."""
        if self.kind == "geometric":
            return power_t(self.t)
        return harmonic_resolvent(self.t, self.bounds)

    def mean(self, A: HermitianMatrix, B: HermitianMatrix) -> HermitianMatrix:
        if self.kind == "geometric":
            return geometric_t(A, B, self.t)
        return harmonic_t(A, B, self.t)


def delta(A: HermitianMatrix, B: HermitianMatrix) -> HermitianMatrix:
    """AδB = A^{-1/2} B A^{-1/2}."""
    _, inv_root = sqrt_and_inv_sqrt(A)
    return congruence(inv_root, B)


def sigma_f(A: HermitianMatrix, B: HermitianMatrix, f: ScalarFunction,
            bounds: SpectrumBound | None = None) -> HermitianMatrix:
    root, inv_root = sqrt_and_inv_sqrt(A)
    return congruence(root, apply_function(f, congruence(inv_root, B), bounds))


def geometric_t(A: HermitianMatrix, B: HermitianMatrix, t: float) -> HermitianMatrix:
    _require_pd(B, "B")
    if t == 0:
        _require_pd(A, "A")
        return A
    return sigma_f(A, B, power_t(t))


def harmonic_t(A: HermitianMatrix, B: HermitianMatrix, t: float, *,
               cross_check: bool = False) -> HermitianMatrix:
    if t == 0:
        _require_pd(A, "A")
        _require_pd(B, "B")
        return A
    mixed = (1.0 - t) * inverse(A) + t * inverse(B)
    if spectral_decompose(mixed).eigenvalues[0] <= 0:
        raise PoleError(f"(1−t)A^-1 + tB^-1 is not positive definite at t = {t:g}")
    out = inverse(mixed)
    if cross_check and t < 0:
        via_sigma = sigma_f(A, B, harmonic_resolvent(t))
        scale = max(1.0, out.frobenius())
        if (out - via_sigma).frobenius() > CROSS_CHECK_RTOL * scale:
            raise DecompositionError(f"resolvent and σ_f routes disagree for A !_t B at t = {t:g}")
    return out
