#!/usr/bin/env python3
"""
maps.py — concrete positive linear maps φ and the induced normalized map ψ.

Every map is built from a plain dict spec (kind + payload), so a map can be dumped
next to a failing instance and rebuilt by `replay`. Construction runs a self-test:
φ(I) = I when the map claims to be normalized, positivity on 50 random PSD samples, and
linearity on a few random pairs. A malformed map would silently invalidate every
inequality verdict downstream, so it is rejected here with InvalidSpec.

Non-normalized maps exist only as scale(c)∘(normalized map).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Callable

import numpy as np

from .errors import DimensionMismatch, InvalidSpec
from .linalg import (
    HermitianMatrix,
    as_rng,
    random_psd,
    random_unitary,
    sqrt_and_inv_sqrt,
)

log = logging.getLogger(__name__)

POSITIVITY_SAMPLES = 50
LINEARITY_SAMPLES = 3
NORMALIZATION_ATOL = 1e-10
PSI_NORMALIZATION_ATOL = 1e-9
SELF_TEST_SEED = 20_240_611


class MapKind(str, Enum):
    COMPRESSION = "compression"
    UNITARY_MIXTURE = "unitary_mixture"
    PINCHING = "pinching"
    TRACE_STATE = "trace_state"
    INDUCED_PSI = "induced_psi"
    IDENTITY = "identity"
    SCALE = "scale"


@dataclass(frozen=True, eq=False)
class PositiveLinearMap:
    kind: MapKind
    in_dim: int
    out_dim: int
    normalized: bool
    spec: dict[str, Any] | None                   # None for maps that cannot be dumped (ψ)
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def __call__(self, X: HermitianMatrix) -> HermitianMatrix:
        return apply_map(self, X)

    @property
    def label(self) -> str:
        if self.kind is MapKind.SCALE:
            return f"scale({self.spec['c']:g})∘{self.spec['inner']['kind']}"
        return self.kind.value


def apply_map(phi: PositiveLinearMap, X: HermitianMatrix) -> HermitianMatrix:
    if X.dim != phi.in_dim:
        raise DimensionMismatch(f"{phi.label} acts on {phi.in_dim}×{phi.in_dim}, got {X.dim}×{X.dim}")
    return HermitianMatrix.trusted(phi.fn(X.data))


# -- self-test ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _samples(n: int) -> tuple[tuple[np.ndarray, ...], tuple[tuple[np.ndarray, np.ndarray, float], ...]]:
    rng = np.random.default_rng(SELF_TEST_SEED + n)
    psd = tuple(random_psd(n, rng, rank=int(rng.integers(1, n + 1))).data for _ in range(POSITIVITY_SAMPLES))
    pairs = []
    for _ in range(LINEARITY_SAMPLES):
        x = random_psd(n, rng).data - random_psd(n, rng).data
        y = random_psd(n, rng).data - random_psd(n, rng).data
        pairs.append((x, y, float(rng.uniform(-2.0, 2.0))))
    return psd, tuple(pairs)


def _self_test(phi: PositiveLinearMap, normalization_atol: float = NORMALIZATION_ATOL) -> PositiveLinearMap:
    if phi.normalized:
        err = float(np.linalg.norm(phi.fn(np.eye(phi.in_dim)) - np.eye(phi.out_dim)))
        if err > normalization_atol:
            raise InvalidSpec(f"{phi.label} claims φ(I) = I but ‖φ(I) − I‖_F = {err:.3e}")
    psd, pairs = _samples(phi.in_dim)
    for p in psd:
        out = phi.fn(p)
        out = 0.5 * (out + out.conj().T)
        low = float(np.linalg.eigvalsh(out)[0])
        if low < -1e-9 * max(1.0, float(np.linalg.norm(out))):
            raise InvalidSpec(f"{phi.label} is not positive: a PSD sample maps to λ_min = {low:.3e}")
    for x, y, c in pairs:
        lhs = phi.fn(x + c * y)
        rhs = phi.fn(x) + c * phi.fn(y)
        err = float(np.linalg.norm(lhs - rhs))
        if err > 1e-10 * max(1.0, float(np.linalg.norm(lhs))):
            raise InvalidSpec(f"{phi.label} is not linear (sample error {err:.3e})")
    return phi


def _matrix(spec: dict, key: str) -> np.ndarray:
    if key not in spec:
        raise InvalidSpec(f"{spec.get('kind')} spec needs '{key}'")
    arr = np.asarray(spec[key], dtype=complex)
    if arr.ndim != 2:
        raise InvalidSpec(f"'{key}' must be a matrix, got shape {arr.shape}")
    return arr


# -- constructors ------------------------------------------------------------------------

def _identity(spec: dict) -> PositiveLinearMap:
    n = int(spec.get("n", 0))
    if n < 1:
        raise InvalidSpec(f"identity needs n ≥ 1, got {n}")
    return PositiveLinearMap(MapKind.IDENTITY, n, n, True, {"kind": "identity", "n": n}, lambda x: x)


def _compression(spec: dict) -> PositiveLinearMap:
    V = _matrix(spec, "V")
    n, k = V.shape
    if k > n or k < 1:
        raise InvalidSpec(f"compression needs an n×k isometry with 1 ≤ k ≤ n, got {n}×{k}")
    err = float(np.linalg.norm(V.conj().T @ V - np.eye(k)))
    if err > NORMALIZATION_ATOL:
        raise InvalidSpec(f"compression needs V*V = I (‖V*V − I‖_F = {err:.3e})")
    Vh = V.conj().T
    return PositiveLinearMap(MapKind.COMPRESSION, n, k, True, {"kind": "compression", "V": V},
                             lambda x: Vh @ x @ V)


def _unitary_mixture(spec: dict) -> PositiveLinearMap:
    w = np.asarray(spec.get("weights", ()), dtype=float)
    us = [np.asarray(u, dtype=complex) for u in spec.get("unitaries", ())]
    if w.ndim != 1 or len(w) == 0 or len(w) != len(us):
        raise InvalidSpec("unitary_mixture needs as many weights as unitaries (at least one)")
    if np.any(w < 0) or abs(float(w.sum()) - 1.0) > 1e-12:
        raise InvalidSpec(f"unitary_mixture weights must lie on the simplex, got sum {w.sum():.15g}")
    n = us[0].shape[0]
    for u in us:
        if u.shape != (n, n):
            raise InvalidSpec(f"unitaries must all be {n}×{n}, got {u.shape}")
        if np.linalg.norm(u.conj().T @ u - np.eye(n)) > NORMALIZATION_ATOL:
            raise InvalidSpec("unitary_mixture got a non-unitary matrix")
    pairs = [(float(wi), u) for wi, u in zip(w, us)]
    return PositiveLinearMap(MapKind.UNITARY_MIXTURE, n, n, True,
                             {"kind": "unitary_mixture", "weights": w, "unitaries": us},
                             lambda x: sum(wi * (u.conj().T @ x @ u) for wi, u in pairs))


def _pinching(spec: dict) -> PositiveLinearMap:
    n = int(spec.get("n", 0))
    blocks = [list(map(int, b)) for b in spec.get("blocks", ())]
    flat = sorted(i for b in blocks for i in b)
    if n < 1 or flat != list(range(n)) or any(len(b) == 0 for b in blocks):
        raise InvalidSpec(f"pinching blocks must partition 0..{n - 1}, got {blocks}")
    mask = np.zeros((n, n))
    for b in blocks:
        mask[np.ix_(b, b)] = 1.0
    return PositiveLinearMap(MapKind.PINCHING, n, n, True, {"kind": "pinching", "n": n, "blocks": blocks},
                             lambda x: x * mask)


def _trace_state(spec: dict) -> PositiveLinearMap:
    rho = _matrix(spec, "rho")
    n = rho.shape[0]
    if rho.shape != (n, n) or np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise InvalidSpec("trace_state needs a Hermitian square density matrix")
    if abs(np.trace(rho).real - 1.0) > 1e-12:
        raise InvalidSpec(f"trace_state needs tr ρ = 1, got {np.trace(rho).real:.15g}")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -1e-12:
        raise InvalidSpec("trace_state needs ρ ⪰ 0")
    return PositiveLinearMap(MapKind.TRACE_STATE, n, 1, True, {"kind": "trace_state", "rho": rho},
                             lambda x: np.array([[np.trace(x @ rho)]]))


def _scale(spec: dict) -> PositiveLinearMap:
    c = float(spec.get("c", 0.0))
    if not c > 0:
        raise InvalidSpec(f"scale needs a positive factor c, got {c:g}")
    inner = make_map(spec.get("inner") or {})
    if not inner.normalized:
        raise InvalidSpec("scale wraps a normalized map only")
    return PositiveLinearMap(MapKind.SCALE, inner.in_dim, inner.out_dim, c == 1.0,
                             {"kind": "scale", "c": c, "inner": inner.spec},
                             lambda x: c * inner.fn(x))


_BUILDERS: dict[MapKind, Callable[[dict], PositiveLinearMap]] = {
    MapKind.IDENTITY: _identity,
    MapKind.COMPRESSION: _compression,
    MapKind.UNITARY_MIXTURE: _unitary_mixture,
    MapKind.PINCHING: _pinching,
    MapKind.TRACE_STATE: _trace_state,
    MapKind.SCALE: _scale,
}


def make_map(spec: dict) -> PositiveLinearMap:
    """Build and self-test a map from {'kind': ..., <payload>}."""
    try:
        kind = MapKind(spec.get("kind"))
    except ValueError as exc:
        raise InvalidSpec(f"unknown map kind {spec.get('kind')!r}") from exc
    if kind is MapKind.INDUCED_PSI:
        raise InvalidSpec("induced_psi is built with induced_psi(phi, A), not from a spec")
    return _self_test(_BUILDERS[kind](spec))


def identity(n: int) -> PositiveLinearMap:
    return make_map({"kind": "identity", "n": n})


def scale(inner: PositiveLinearMap, c: float) -> PositiveLinearMap:
    return make_map({"kind": "scale", "c": c, "inner": inner.spec})


def induced_psi(phi: PositiveLinearMap, A: HermitianMatrix) -> PositiveLinearMap:
    """ψ(X) = φ(A)^{-1/2} φ(A^{1/2} X A^{1/2}) φ(A)^{-1/2}, a normalized positive map."""
    root, _ = sqrt_and_inv_sqrt(A)
    _, phi_a_inv_root = sqrt_and_inv_sqrt(apply_map(phi, A))
    R, P = root.data, phi_a_inv_root.data
    psi = PositiveLinearMap(MapKind.INDUCED_PSI, phi.in_dim, phi.out_dim, True, None,
                            lambda x: P @ phi.fn(R @ x @ R) @ P)
    return _self_test(psi, PSI_NORMALIZATION_ATOL)


# -- random maps for the suite -----------------------------------------------------------

def random_map_spec(kind: MapKind | str, n: int, seed=None) -> dict:
    kind = MapKind(kind)
    rng = as_rng(seed)
    if kind is MapKind.IDENTITY:
        return {"kind": "identity", "n": n}
    if kind is MapKind.COMPRESSION:
        k = max(1, (n + 1) // 2)
        return {"kind": "compression", "V": random_unitary(n, rng)[:, :k]}
    if kind is MapKind.UNITARY_MIXTURE:
        w = rng.dirichlet(np.ones(3))
        w[-1] = 1.0 - float(w[:-1].sum())
        return {"kind": "unitary_mixture", "weights": w,
                "unitaries": [random_unitary(n, rng) for _ in range(3)]}
    if kind is MapKind.PINCHING:
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, n), size=int(rng.integers(0, n)),
                                                 replace=False)) if n > 1 else []
        edges = [0, *cuts, n]
        return {"kind": "pinching", "n": n,
                "blocks": [list(range(a, b)) for a, b in zip(edges[:-1], edges[1:])]}
    if kind is MapKind.TRACE_STATE:
        rho = random_psd(n, rng).data
        return {"kind": "trace_state", "rho": rho / np.trace(rho).real}
    raise InvalidSpec(f"no random generator for map kind {kind.value}")
