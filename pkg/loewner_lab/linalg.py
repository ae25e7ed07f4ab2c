#!/usr/bin/env python3
"""
linalg.py — dense Hermitian linear algebra for the inequality checks.

Everything the chains need from a matrix goes through here: spectral decomposition,
the functional calculus f(A) = U·diag(f(λ))·U*, Loewner-order verdicts with a minimum
eigenvalue witness, congruences, and the seeded random instance generators.

Matrices are small (n ≤ 64) and dense, so numpy's LAPACK `eigh` is the workhorse; every
decomposition is followed by a residual check in the same spirit as a post-solve check,
so a bad decomposition fails loudly instead of quietly corrupting a verdict.

Tolerances are relative with a floor of 1, because inequality gaps scale with the
magnitude of f.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

import numpy as np

from .errors import (
    DecompositionError,
    DimensionMismatch,
    FunctionDomainError,
    InvalidParams,
    NotHermitian,
    NotPositiveDefinite,
    SpectrumOutOfDomain,
)

if TYPE_CHECKING:
    from .scalar_funcs import ScalarFunction

log = logging.getLogger(__name__)

MAX_DIM = 64
HERMITICITY_RTOL = 1e-12
RESIDUAL_RTOL = 1e-10
CLAMP_RTOL = 1e-9
DEFAULT_RTOL = 1e-9

SeedLike = Union[int, np.random.Generator, None]


@dataclass(frozen=True)
class SpectrumBound:
    """The interval [m, M] with 0 < m < M. Degenerate m = M is rejected."""

    m: float
    M: float

    def __post_init__(self):
        m, M = float(self.m), float(self.M)
        if not (np.isfinite(m) and np.isfinite(M)):
            raise InvalidParams(f"bounds must be finite, got [{m}, {M}]")
        if not 0.0 < m < M:
            raise InvalidParams(f"bounds need 0 < m < M, got [{m}, {M}]")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "M", M)

    @classmethod
    def parse(cls, text: str) -> "SpectrumBound":
        """'1:4' -> SpectrumBound(1, 4)."""
        try:
            lo, hi = (float(p) for p in text.strip().split(":"))
        except ValueError as exc:
            raise InvalidParams(f"bounds must look like m:M, got {text!r}") from exc
        return cls(lo, hi)

    @property
    def width(self) -> float:
        return self.M - self.m

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.m + self.M)

    @property
    def geometric_mean(self) -> float:
        return float(np.sqrt(self.m * self.M))

    @property
    def clamp_eps(self) -> float:
        return CLAMP_RTOL * max(1.0, self.M)

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.m, self.M, n)

    def label(self) -> str:
        return f"{self.m:g}:{self.M:g}"


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense complex square matrix, checked Hermitian at construction and stored
    exactly Hermitian (symmetrized) and read-only."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
        if arr.shape[0] > MAX_DIM:
            raise InvalidParams(f"dimension {arr.shape[0]} exceeds the cap of {MAX_DIM}")
        if not np.all(np.isfinite(arr)):
            raise NotHermitian("matrix has non-finite entries")
        scale = max(1.0, float(np.linalg.norm(arr)))
        skew = float(np.max(np.abs(arr - arr.conj().T)))
        if skew > HERMITICITY_RTOL * scale:
            raise NotHermitian(f"max |A - A*| = {skew:.3e} exceeds {HERMITICITY_RTOL * scale:.3e}")
        arr = 0.5 * (arr + arr.conj().T)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    # -- constructors --------------------------------------------------------------------

    @classmethod
    def trusted(cls, arr: np.ndarray) -> "HermitianMatrix":
        """Wrap a result that is Hermitian up to rounding (symmetrize, then validate)."""
        arr = np.asarray(arr, dtype=complex)
        return cls(0.5 * (arr + arr.conj().T))

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls(np.eye(n))

    @classmethod
    def diag(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def scalar(cls, x: float) -> "HermitianMatrix":
        return cls(np.array([[x]]))

    # -- views ---------------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return int(self.data.shape[0])

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.data))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.data)

    def item(self) -> float:
        """The real value of a 1×1 matrix."""
        if self.dim != 1:
            raise DimensionMismatch(f"item() needs a 1×1 matrix, got {self.dim}×{self.dim}")
        return float(self.data[0, 0].real)

    def allclose(self, other: "HermitianMatrix", atol: float = 1e-9) -> bool:
        if other.dim != self.dim:
            return False
        return bool(np.linalg.norm(self.data - other.data) <= atol * max(1.0, self.frobenius()))

    # -- arithmetic ----------------------------------------------------------------------

    def _check_dim(self, other: "HermitianMatrix") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dims differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self._check_dim(other)
        return HermitianMatrix.trusted(self.data + other.data)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self._check_dim(other)
        return HermitianMatrix.trusted(self.data - other.data)

    def __neg__(self) -> "HermitianMatrix":
        return HermitianMatrix.trusted(-self.data)

    def __mul__(self, c: float) -> "HermitianMatrix":
        return HermitianMatrix.trusted(float(c) * self.data)

    __rmul__ = __mul__

    def shift(self, c: float) -> "HermitianMatrix":
        """A + c·I."""
        return HermitianMatrix.trusted(self.data + float(c) * np.eye(self.dim))

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim}, ‖·‖_F={self.frobenius():.6g})"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray          # ascending
    eigenvectors: np.ndarray         # unitary, columns

    def rebuild(self, values: np.ndarray) -> np.ndarray:
        U = self.eigenvectors
        return (U * values) @ U.conj().T


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    min_eig_gap: float               # λ_min(B − A)
    tolerance_used: float


def spectral_decompose(A: HermitianMatrix) -> SpectralDecomposition:
    w, U = np.linalg.eigh(A.data)
    scale = max(1.0, A.frobenius())
    resid = float(np.linalg.norm((U * w) @ U.conj().T - A.data))
    if resid > RESIDUAL_RTOL * scale:
        raise DecompositionError(f"reconstruction residual {resid:.3e} exceeds {RESIDUAL_RTOL * scale:.3e}")
    unit = float(np.linalg.norm(U.conj().T @ U - np.eye(A.dim)))
    if unit > RESIDUAL_RTOL:
        raise DecompositionError(f"eigenvector matrix not unitary (‖U*U − I‖_F = {unit:.3e})")
    return SpectralDecomposition(eigenvalues=w, eigenvectors=U)


def apply_function(f: "ScalarFunction", A: HermitianMatrix,
                   bounds: SpectrumBound | None = None) -> HermitianMatrix:
    """f(A) through the spectral decomposition.

    With `bounds`, eigenvalues may stray outside [m, M] by at most 1e-9·max(1, M) and are
    clamped back; anything further raises SpectrumOutOfDomain. Without bounds only f's
    own domain is checked."""
    dec = spectral_decompose(A)
    vals = dec.eigenvalues
    if bounds is not None:
        eps = bounds.clamp_eps
        if vals[0] < bounds.m - eps or vals[-1] > bounds.M + eps:
            raise SpectrumOutOfDomain(
                f"spectrum [{vals[0]:.12g}, {vals[-1]:.12g}] leaves [{bounds.m:g}, {bounds.M:g}] "
                f"by more than {eps:.1e}")
        vals = np.clip(vals, bounds.m, bounds.M)
    lo, hi = f.domain
    if np.any(vals <= lo) or np.any(vals >= hi):
        raise FunctionDomainError(f"{f.label} is defined on ({lo:g}, {hi:g}); "
                                  f"spectrum is [{vals[0]:.12g}, {vals[-1]:.12g}]")
    with np.errstate(all="ignore"):
        fv = np.asarray(f(vals), dtype=float) * np.ones_like(vals)
    if not np.all(np.isfinite(fv)):
        raise FunctionDomainError(f"{f.label} is not finite on the spectrum of A")
    return HermitianMatrix.trusted(dec.rebuild(fv))


def loewner_leq(A: HermitianMatrix, B: HermitianMatrix, rtol: float = DEFAULT_RTOL) -> OrderVerdict:
    """A ⪯ B iff λ_min(B − A) ≥ −rtol·max(1, ‖A‖_F, ‖B‖_F)."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"cannot compare {A.dim}×{A.dim} with {B.dim}×{B.dim}")
    gap = float(np.linalg.eigvalsh(B.data - A.data)[0])
    tol = rtol * max(1.0, A.frobenius(), B.frobenius())
    return OrderVerdict(holds=gap >= -tol, min_eig_gap=gap, tolerance_used=tol)


def sqrt_and_inv_sqrt(A: HermitianMatrix) -> tuple[HermitianMatrix, HermitianMatrix]:
    dec = spectral_decompose(A)
    if dec.eigenvalues[0] <= 0.0:
        raise NotPositiveDefinite(f"λ_min = {dec.eigenvalues[0]:.6g} ≤ 0")
    root = np.sqrt(dec.eigenvalues)
    return (HermitianMatrix.trusted(dec.rebuild(root)),
            HermitianMatrix.trusted(dec.rebuild(1.0 / root)))


def inverse(A: HermitianMatrix) -> HermitianMatrix:
    dec = spectral_decompose(A)
    if dec.eigenvalues[0] <= 0.0:
        raise NotPositiveDefinite(f"λ_min = {dec.eigenvalues[0]:.6g} ≤ 0")
    return HermitianMatrix.trusted(dec.rebuild(1.0 / dec.eigenvalues))


def congruence(C: HermitianMatrix | np.ndarray, X: HermitianMatrix) -> HermitianMatrix:
    """C*·X·C. C is n×k for an n×n X; the result is k×k."""
    c = C.data if isinstance(C, HermitianMatrix) else np.asarray(C, dtype=complex)
    if c.ndim != 2 or c.shape[0] != X.dim:
        raise DimensionMismatch(f"C of shape {c.shape} does not act on a {X.dim}×{X.dim} matrix")
    return HermitianMatrix.trusted(c.conj().T @ X.data @ c)


# -- random instances --------------------------------------------------------------------

def as_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(n: int, seed: SeedLike = None) -> np.ndarray:
    """Haar unitary: QR of a complex Gaussian, with R's diagonal phases moved into Q."""
    rng = as_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian_with_spectrum(n: int, bounds: SpectrumBound, pin_endpoints: bool = False,
                                   seed: SeedLike = None) -> HermitianMatrix:
    if n < 1 or n > MAX_DIM:
        raise InvalidParams(f"n must be in 1..{MAX_DIM}, got {n}")
    rng = as_rng(seed)
    lam = rng.uniform(bounds.m, bounds.M, size=n)
    if pin_endpoints and n >= 2:
        lam[0], lam[1] = bounds.m, bounds.M
    U = random_unitary(n, rng)
    return HermitianMatrix.trusted((U * lam) @ U.conj().T)


def random_psd(n: int, seed: SeedLike = None, rank: int | None = None) -> HermitianMatrix:
    """G·G* for a complex Gaussian G (n × rank)."""
    rng = as_rng(seed)
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    return HermitianMatrix.trusted(g @ g.conj().T)


def random_pair_relative_bounds(n: int, bounds: SpectrumBound,
                                seed: SeedLike = None) -> tuple[HermitianMatrix, HermitianMatrix]:
    """(A, B) with A's spectrum in [0.5, 2] and B = A^{1/2}·C·A^{1/2}, spectrum(C) ⊂ [m, M],
    so that mA ⪯ B ⪯ MA and AδB = C."""
    rng = as_rng(seed)
    A = random_hermitian_with_spectrum(n, SpectrumBound(0.5, 2.0), seed=rng)
    C = random_hermitian_with_spectrum(n, bounds, seed=rng)
    root, _ = sqrt_and_inv_sqrt(A)
    return A, congruence(root, C)
