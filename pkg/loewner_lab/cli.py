#!/usr/bin/env python3
"""
cli.py — one CLI to drive the operator-inequality verification harness.

    config (defaults < LOEWNER_LAB_* env < --config file < flags)
        |
      verify  -->  randomized chains  -->  JSON/CSV report (+ failure dumps)
                                                   |
                                                 replay <dump>

Commands:
    verify      Run the randomized suite and emit a report
    constants   Tabulate K, H, its limit and μ over (m, M, t)
    replay      Rebuild one dumped instance and re-verify every link
    oracle      Compare every chain against the scalar-grid oracle at n = 1

Exit codes: 0 everything holds; 2 a proved inequality failed (or the oracle disagreed);
3 bad configuration or unreadable input.

Examples:
    python -m loewner_lab.cli verify --results prop21,cor22 --dims 1,2 --trials 50 --seed 7
    python -m loewner_lab.cli verify --format csv --out runs/r42.csv --dump-dir runs/dumps
    python -m loewner_lab.cli constants --bounds 1:4,1.5:4 --exponents -1,-2 --functions inv,exp
    python -m loewner_lab.cli replay runs/dumps/thm2_trial00017.json
"""
from __future__ import annotations

import argparse
import logging
import sys

from .chains import LinkStatus
from .config import load_config
from .constants_table import constants_table, render_table
from .errors import LoewnerLabError
from .oracle import ORACLE_POINTS, oracle_cases, run_oracle
from .report import emit_report, read_dump, write_bytes, write_dumps
from .suite import run_instance, run_suite

log = logging.getLogger("loewner_lab")

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_CONFIG = 3

SUITE_FLAGS = ("results", "dims", "trials", "bounds", "functions", "exponents", "maps",
               "seed", "rtol", "format", "out", "workers", "dump_dir")


def _say(line: str, to_stdout: bool = True) -> None:
    print(line, file=sys.stdout if to_stdout else sys.stderr)


def _config(args):
    flags = {k: getattr(args, k, None) for k in SUITE_FLAGS}
    return load_config(flags, args.config)


def cmd_verify(args) -> int:
    config = _config(args)
    report = run_suite(config)
    data = emit_report(report, config.format)
    human = config.out is not None
    if human:
        write_bytes(config.out, data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if config.dump_dir is not None and report.failures:
        paths = write_dumps(report, config.dump_dir)
        _say(f"wrote {len(paths)} dump(s) to {config.dump_dir}", human)
    for agg in report.results:
        tag = "OK  " if not agg.failures else "FAIL"
        worst = "-" if agg.worst_gap is None else f"{agg.worst_gap:.3e}"
        _say(f"  {tag}  {agg.result_id:12s} {agg.passes}/{agg.trials} pass  "
             f"marginal={agg.marginal} unproved={agg.unproved}  worst gap {worst}", human)
    if human:
        _say(f"\nwrote {config.out}  ({report.wall_time:.1f}s)")
    return EXIT_VIOLATION if report.exit_code else EXIT_OK


def cmd_constants(args) -> int:
    config = _config(args)
    exponents = config.exponents if args.exponents is not None else (-0.5, -1.0, -2.0, -3.0)
    rows = constants_table(config.spectrum_bounds, exponents, config.functions)
    text = render_table(rows, args.table_format)
    if config.out is not None:
        write_bytes(config.out, text.encode("utf-8"))
        _say(f"wrote {config.out}  ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_replay(args) -> int:
    inst = read_dump(args.dump)
    report = run_instance(inst)
    _say(f"{report.result_id}  {report.instance_digest.get('map')}  bounds {inst.bounds.label()}  "
         f"seed {list(inst.seed)}")
    for lk in report.links:
        tag = {LinkStatus.PASS: "OK  ", LinkStatus.MARGINAL: "MARG",
               LinkStatus.UNPROVED: "UNPR", LinkStatus.FAIL: "FAIL"}[lk.status]
        _say(f"  {tag}  {report.terms[lk.lower].label}  ⪯  {report.terms[lk.upper].label}"
             f"   gap {lk.verdict.min_eig_gap:.3e} (tol {lk.verdict.tolerance_used:.1e})")
    for note in report.notes:
        _say(f"  note  {note}")
    return EXIT_VIOLATION if report.status is LinkStatus.FAIL else EXIT_OK


def cmd_oracle(args) -> int:
    config = _config(args)
    outcomes = run_oracle(oracle_cases(config), args.points, config.rtol)
    bad = 0
    for o in outcomes:
        if o.agree:
            _say(f"  OK    {o.case.label:40s} {o.scalar_holds}/{o.points} hold")
        else:
            bad += 1
            _say(f"  DIFF  {o.case.label:40s} {len(o.disagreements)} point(s), first at x={o.disagreements[0]:.12g}")
    _say(f"\n{len(outcomes) - bad}/{len(outcomes)} cases agree")
    return EXIT_VIOLATION if bad else EXIT_OK


def _suite_flags(p: argparse.ArgumentParser, *, full: bool = True) -> None:
    p.add_argument("--config", default=None, help="flat key=value config file")
    p.add_argument("--bounds", help="spectrum intervals, m:M[,m:M…]")
    p.add_argument("--functions", help="function families, e.g. inv,exp,harmonic_m1")
    p.add_argument("--exponents", help="negative exponents t for the power/mean chains")
    p.add_argument("--out", help="write output here instead of stdout")
    if not full:
        return
    p.add_argument("--results", help="result ids (default: all)")
    p.add_argument("--dims", help="matrix dimensions, e.g. 1,2,4,8")
    p.add_argument("--trials", type=int, help="trials per result")
    p.add_argument("--maps", help="map kinds, e.g. compression,pinching,trace_state")
    p.add_argument("--seed", type=int, help="base seed (default: $LOEWNER_LAB_SEED or 42)")
    p.add_argument("--rtol", type=float, help="relative Loewner tolerance (default 1e-9)")
    p.add_argument("--workers", type=int, help="trial threads (default 1)")
    p.add_argument("--dump-dir", dest="dump_dir", help="write one JSON dump per failing trial here")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loewner-lab", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the randomized chain suite")
    _suite_flags(v)
    v.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("constants", help="tabulate K, H, H-limit and μ")
    _suite_flags(c, full=False)
    c.add_argument("--format", dest="table_format", choices=("text", "csv", "json"), default="text")
    c.set_defaults(func=cmd_constants)

    r = sub.add_parser("replay", help="re-verify one failure dump")
    r.add_argument("dump")
    r.set_defaults(func=cmd_replay)

    o = sub.add_parser("oracle", help="scalar-grid oracle vs the operator path at n = 1")
    _suite_flags(o)
    o.add_argument("--points", type=int, default=ORACLE_POINTS)
    o.set_defaults(func=cmd_oracle)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except LoewnerLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
