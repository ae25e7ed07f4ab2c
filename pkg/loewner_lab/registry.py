#!/usr/bin/env python3
"""
registry.py — data-driven registry of the function families and map kinds the suite
sweeps over.

Adding a family to the randomized suite is a registry entry, not a code fork. Each entry
names a scalar family and its parameters; the shape tags that decide which results a
family feeds (log-convex, convex/concave, operator convex) come from the built
ScalarFunction itself, so the registry cannot drift from the functions.

Families that only make sense on some intervals (the harmonic resolvent needs m ≥ 1)
carry `min_m`; the suite skips those (family, bounds) pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams
from .linalg import SpectrumBound
from .maps import MapKind
from .scalar_funcs import FamilyKind, ScalarFunction, make_family

# Results in suite order. Index into this tuple is part of every trial seed.
RESULT_IDS: tuple[str, ...] = (
    "prop21", "cor22", "cor24", "cor25", "cor26", "prop28", "cor_inverse",
    "thm1", "cor_thm1", "thm2", "eprop", "refined", "jensen",
)


@dataclass(frozen=True)
class FamilyEntry:
    code: str
    name: str
    kind: FamilyKind
    params: tuple[float, ...] = ()
    min_m: float = 0.0                    # smallest admissible left endpoint

    def admits(self, bounds: SpectrumBound) -> bool:
        return bounds.m >= self.min_m

    def build(self, bounds: SpectrumBound | None = None) -> ScalarFunction:
        if bounds is not None and not self.admits(bounds):
            raise InvalidParams(f"family {self.code} needs m ≥ {self.min_m:g}, got m = {bounds.m:g}")
        return make_family(self.kind, self.params, bounds)


FAMILIES: dict[str, FamilyEntry] = {
    "inv": FamilyEntry("inv", "x^-1", FamilyKind.POWER_T, (-1.0,)),
    "inv_sq": FamilyEntry("inv_sq", "x^-2", FamilyKind.POWER_T, (-2.0,)),
    "inv_sqrt": FamilyEntry("inv_sqrt", "x^-1/2", FamilyKind.POWER_T, (-0.5,)),
    "exp": FamilyEntry("exp", "exp(x)", FamilyKind.EXP_SCALED, (1.0,)),
    "exp_neg": FamilyEntry("exp_neg", "exp(-x)", FamilyKind.EXP_SCALED, (-1.0,)),
    "harmonic_m1": FamilyEntry("harmonic_m1", "(2-1/x)^-1", FamilyKind.HARMONIC_RESOLVENT_T,
                               (-1.0,), min_m=1.0),
    "sqrt": FamilyEntry("sqrt", "x^1/2", FamilyKind.POWER_T, (0.5,)),
    "sq": FamilyEntry("sq", "x^2", FamilyKind.POWER_T, (2.0,)),
}

ALIASES = {
    "1/x": "inv", "x^-1": "inv", "reciprocal": "inv",
    "x^-2": "inv_sq", "x^-0.5": "inv_sqrt", "x^-1/2": "inv_sqrt",
    "e^x": "exp", "e^-x": "exp_neg",
    "harmonic": "harmonic_m1",
    "x^0.5": "sqrt", "x^1/2": "sqrt", "x^2": "sq", "square": "sq",
}

MAP_ALIASES = {
    "id": MapKind.IDENTITY, "identity": MapKind.IDENTITY,
    "compression": MapKind.COMPRESSION, "compress": MapKind.COMPRESSION,
    "unitary_mixture": MapKind.UNITARY_MIXTURE, "mixture": MapKind.UNITARY_MIXTURE,
    "pinching": MapKind.PINCHING, "pinch": MapKind.PINCHING,
    "trace_state": MapKind.TRACE_STATE, "trace": MapKind.TRACE_STATE, "state": MapKind.TRACE_STATE,
}

# Kinds the suite can draw at random (scale and ψ are derived, never drawn).
SUITE_MAP_KINDS: tuple[MapKind, ...] = (
    MapKind.IDENTITY, MapKind.COMPRESSION, MapKind.UNITARY_MIXTURE,
    MapKind.PINCHING, MapKind.TRACE_STATE,
)


def get_family(code_or_alias: str) -> FamilyEntry:
    if not code_or_alias:
        raise KeyError("family required")
    key = code_or_alias.strip()
    if key.lower() in FAMILIES:
        return FAMILIES[key.lower()]
    a = ALIASES.get(key.lower())
    if a:
        return FAMILIES[a]
    raise KeyError(f"unknown family '{code_or_alias}'. Known: {', '.join(FAMILIES)}")


def get_map_kind(name: str) -> MapKind:
    if not name:
        raise KeyError("map kind required")
    kind = MAP_ALIASES.get(name.strip().lower())
    if kind is None:
        raise KeyError(f"unknown map kind '{name}'. Known: {', '.join(k.value for k in SUITE_MAP_KINDS)}")
    return kind


def get_result_id(name: str) -> str:
    key = (name or "").strip().lower()
    if key not in RESULT_IDS:
        raise KeyError(f"unknown result '{name}'. Known: {', '.join(RESULT_IDS)}")
    return key


if __name__ == "__main__":
    demo = SpectrumBound(1.0, 4.0)
    for e in FAMILIES.values():
        f = e.build(demo)
        print(f"{e.code:<12} {e.name:<12} log-convex={f.log_convex!s:<5} convex={f.convex!s:<5} "
              f"concave={f.concave!s:<5} op-convex={f.operator_convex}")
