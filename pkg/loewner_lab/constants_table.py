#!/usr/bin/env python3
"""
constants_table.py — tabulate the reverse-inequality constants over (m, M, t) grids.

One row per (bounds, t): the generalized Kantorovich constant K(m, M, t), the harmonic
constant H(m, M, t) and its t → −∞ limit, μ for x^t (which must equal K), and μ for every
requested family. Values are printed to 12 significant digits. A constant whose
preconditions fail at that point (K at t = 0, H for m < 1, the limit for m ≤ 1, a family
undefined on [m, M]) becomes an invalid cell carrying the reason; the row survives.

Run:  python -m loewner_lab.cli constants --bounds 1:4,1.5:4 --exponents -1,-2
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import FunctionDomainError, InvalidParams
from .linalg import SpectrumBound
from .registry import get_family
from .scalar_funcs import harmonic_H, harmonic_H_limit, kantorovich, mu_constant, power_t

SIG_DIGITS = 12
INVALID = "invalid"
_SOFT_ERRORS = (InvalidParams, FunctionDomainError, ArithmeticError)   # PoleError, NoRoot, underflow


@dataclass(frozen=True)
class Cell:
    value: float | None
    reason: str = ""

    @property
    def valid(self) -> bool:
        return self.value is not None

    def text(self) -> str:
        return f"{self.value:.{SIG_DIGITS}g}" if self.valid else INVALID


def _cell(fn: Callable[[], float]) -> Cell:
    try:
        value = float(fn())
    except _SOFT_ERRORS as exc:
        return Cell(None, str(exc) or type(exc).__name__)
    if not math.isfinite(value):
        return Cell(None, f"not finite ({value})")
    return Cell(value)


@dataclass(frozen=True)
class ConstantsRow:
    bounds: SpectrumBound
    t: float
    cells: dict[str, Cell] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"m": self.bounds.m, "M": self.bounds.M, "t": self.t}
        for name, cell in self.cells.items():
            out[name] = cell.value if cell.valid else {INVALID: cell.reason}
        return out


def constants_table(bounds_list: Iterable[SpectrumBound], t_grid: Iterable[float],
                    families: Iterable[str] = ()) -> list[ConstantsRow]:
    entries = [get_family(code) for code in families]
    rows = []
    for bounds in bounds_list:
        for t in t_grid:
            t = float(t)
            cells = {
                "K": _cell(lambda: kantorovich(bounds, t)),
                "H": _cell(lambda: harmonic_H(bounds, t)),
                "H_limit": _cell(lambda: harmonic_H_limit(bounds)),
                "mu_power": _cell(lambda: mu_constant(power_t(t), bounds)),
            }
            for e in entries:
                cells[f"mu_{e.code}"] = _cell(lambda e=e: mu_constant(e.build(bounds), bounds))
            rows.append(ConstantsRow(bounds, t, cells))
    return rows


def render_table(rows: list[ConstantsRow], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in rows], sort_keys=True, indent=2, ensure_ascii=False)
    names = list(rows[0].cells) if rows else []
    header = ["m", "M", "t", *names]
    body = [[f"{r.bounds.m:.{SIG_DIGITS}g}", f"{r.bounds.M:.{SIG_DIGITS}g}", f"{r.t:.{SIG_DIGITS}g}",
             *(r.cells[n].text() for n in names)] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(body)
        return buf.getvalue()
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(lines) + "\n"
