"""
report.py — machine-readable suite reports, failure dumps and the dense matrix text codec.

JSON is UTF-8 with sorted keys and floats in shortest round-trip form (Python's repr),
so the same (config, seed) gives the same bytes apart from `wall_time`. CSV is one tidy
row per (result, trial), loadable in a single read_csv.

Matrix text encoding, used in dumps and map specs:

    2                      <- "n" for a square matrix, "r c" for a rectangular one
    1.5,0.0 0.25,-0.5      <- row-major "re,im" pairs, one row per line
    0.25,0.5 3.0,0.0
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import LoewnerLabError, ReportIoError
from .linalg import HermitianMatrix, SpectrumBound
from .registry import get_family
from .suite import RESULTS, Instance, ResultAggregate, SuiteReport, TrialRecord

CSV_COLUMNS = ("result_id", "trial", "seed", "dim", "bounds", "family", "map_kind",
               "status", "min_gap", "tolerance")
AGGREGATE_FIELDS = ("trials", "passes", "failures", "marginal", "unproved",
                    "worst_gap", "tightest_gap")
MATRIX_KEY = "__matrix__"


# -- matrix codec ------------------------------------------------------------------------

def encode_array(arr) -> str:
    a = np.atleast_2d(np.asarray(arr, dtype=complex))
    r, c = a.shape
    head = f"{r}" if r == c else f"{r} {c}"
    rows = [" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row) for row in a]
    return "\n".join([head, *rows])


def decode_array(text: str) -> np.ndarray:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ReportIoError("empty matrix block")
    try:
        dims = [int(p) for p in lines[0].split()]
        r, c = (dims[0], dims[0]) if len(dims) == 1 else (dims[0], dims[1])
        if len(dims) > 2 or len(lines) - 1 != r:
            raise ValueError(f"header {lines[0]!r} does not match {len(lines) - 1} rows")
        out = np.empty((r, c), dtype=complex)
        for i, line in enumerate(lines[1:]):
            cells = line.split()
            if len(cells) != c:
                raise ValueError(f"row {i} has {len(cells)} entries, expected {c}")
            for j, cell in enumerate(cells):
                re, im = cell.split(",")
                out[i, j] = complex(float(re), float(im))
    except ValueError as exc:
        raise ReportIoError(f"malformed matrix block: {exc}") from exc
    return out


def encode_matrix(A: HermitianMatrix) -> str:
    return encode_array(A.data)


def decode_matrix(text: str) -> HermitianMatrix:
    return HermitianMatrix(decode_array(text))


def encode_spec(value: Any) -> Any:
    """Map spec -> JSON-ready value; matrices become {"__matrix__": text}, real vectors lists."""
    if isinstance(value, np.ndarray):
        if value.ndim == 1 and not np.iscomplexobj(value):
            return [float(v) for v in value]
        return {MATRIX_KEY: encode_array(value)}
    if isinstance(value, dict):
        return {k: encode_spec(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_spec(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def decode_spec(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value) == {MATRIX_KEY}:
            return decode_array(value[MATRIX_KEY])
        return {k: decode_spec(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_spec(v) for v in value]
    return value


# -- instances and dumps -----------------------------------------------------------------

def encode_instance(inst: Instance) -> dict:
    return {
        "result_id": inst.result_id,
        "trial": inst.trial,
        "seed": list(inst.seed),
        "bounds": {"m": inst.bounds.m, "M": inst.bounds.M},
        "family": inst.family,
        "exponent": inst.exponent,
        "rtol": inst.rtol,
        "map": encode_spec(inst.map_spec),
        "A": encode_matrix(inst.A),
        "B": encode_matrix(inst.B) if inst.B is not None else None,
    }


def decode_instance(d: dict) -> Instance:
    """Rebuild a dumped instance. Anything that cannot be turned back into a runnable
    instance (missing fields, unknown ids, non-Hermitian or malformed matrices, bad
    bounds) is a ReportIoError."""
    try:
        if d["result_id"] not in RESULTS:
            raise ReportIoError(f"dump names unknown result {d['result_id']!r}")
        if d.get("family") is not None:
            get_family(d["family"])
        return Instance(
            result_id=d["result_id"],
            trial=int(d.get("trial", 0)),
            seed=tuple(int(s) for s in d.get("seed", ())),
            bounds=SpectrumBound(d["bounds"]["m"], d["bounds"]["M"]),
            family=d.get("family"),
            exponent=d.get("exponent"),
            map_spec=decode_spec(d["map"]),
            A=decode_matrix(d["A"]),
            B=decode_matrix(d["B"]) if d.get("B") else None,
            rtol=float(d.get("rtol", 1e-9)),
        )
    except ReportIoError:
        raise
    except (KeyError, TypeError) as exc:
        raise ReportIoError(f"dump is missing or mistypes field {exc}") from exc
    except (ValueError, LoewnerLabError) as exc:
        raise ReportIoError(f"dump does not describe a valid instance: {type(exc).__name__}: {exc}") from exc


def encode_failure(failure: dict) -> dict:
    out = {k: v for k, v in failure.items() if k != "instance"}
    out["instance"] = encode_instance(failure["instance"])
    return out


def write_bytes(path: str | Path, data: bytes) -> Path:
    p = Path(path)
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_bytes(data)
    except OSError as exc:
        raise ReportIoError(f"cannot write {p}: {exc}") from exc
    return p


def _dumps(obj: Any) -> bytes:
    try:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False).encode("utf-8")
    except (TypeError, ValueError) as exc:
        raise ReportIoError(f"report is not JSON-serializable: {exc}") from exc


def write_dumps(report: SuiteReport, dump_dir: str | Path) -> list[Path]:
    """One JSON file per non-passing trial, named <result>_trial<NNNNN>.json."""
    paths = []
    for failure in report.failures:
        inst = failure["instance"]
        name = f"{inst.result_id}_trial{inst.trial:05d}.json"
        paths.append(write_bytes(Path(dump_dir) / name, _dumps(encode_failure(failure))))
    return paths


def read_dump(path: str | Path) -> Instance:
    p = Path(path)
    try:
        payload = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ReportIoError(f"cannot read {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ReportIoError(f"{p} is not JSON: {exc}") from exc
    return decode_instance(payload.get("instance", payload))


# -- suite reports -----------------------------------------------------------------------

def report_to_dict(report: SuiteReport) -> dict:
    return {
        "config": report.config,
        "results": [r.to_dict() for r in report.results],
        "trials": [t.to_dict() for t in report.trials],
        "failures": [encode_failure(f) for f in report.failures],
        "provenance": report.provenance,
        "wall_time": report.wall_time,
    }


def aggregates(report: SuiteReport) -> dict[str, dict]:
    """Aggregate fields per result that ran at least one trial."""
    return {r.result_id: {k: getattr(r, k) for k in AGGREGATE_FIELDS}
            for r in report.results if r.trials}


def _csv(report: SuiteReport) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t in report.trials:
        w.writerow([t.result_id, t.trial, ":".join(str(s) for s in t.seed), t.dim, t.bounds,
                    t.family, t.map_kind, t.status,
                    "" if t.min_gap is None else repr(t.min_gap),
                    "" if t.tolerance is None else repr(t.tolerance)])
    return buf.getvalue().encode("utf-8")


def emit_report(report: SuiteReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return _dumps(report_to_dict(report))
    if fmt == "csv":
        return _csv(report)
    raise ReportIoError(f"unknown report format {fmt!r}")


def _optional_float(cell: str) -> float | None:
    return float(cell) if cell else None


def parse_report(data: bytes, fmt: str = "json") -> dict[str, dict]:
    """Aggregates back out of emitted bytes; equals aggregates(report) for either format."""
    text = data.decode("utf-8")
    if fmt == "json":
        payload = json.loads(text)
        return {r["result_id"]: {k: r[k] for k in AGGREGATE_FIELDS}
                for r in payload.get("results", []) if r["trials"]}
    if fmt != "csv":
        raise ReportIoError(f"unknown report format {fmt!r}")
    aggs: dict[str, ResultAggregate] = {}
    for row in csv.DictReader(io.StringIO(text)):
        rec = TrialRecord(row["result_id"], int(row["trial"]),
                          tuple(int(s) for s in row["seed"].split(":")), int(row["dim"]),
                          row["bounds"], row["family"], row["map_kind"], row["status"],
                          _optional_float(row["min_gap"]), _optional_float(row["tolerance"]))
        aggs.setdefault(rec.result_id, ResultAggregate(rec.result_id)).add(rec, {})
    return {rid: {k: getattr(a, k) for k in AGGREGATE_FIELDS} for rid, a in aggs.items()}
