"""Command-line front end: run, verify, fit, codec, lb.

Exit codes: 0 success, 1 a checked property failed, 2 usage error. Usage
errors print a JSON object ``{"error": ..., "message": ...}`` on stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import analytics, codec, verify
from .increments import FAMILIES, IncrementError, parse_increments, resolve
from .permcore import PermutationError, as_permutation, enumerate_permutations, random_permutation
from .sorter import shellsort

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("usage", message)


@dataclass
class RunConfig:
    subcommand: str
    family: str | None
    increments: tuple[int, ...] | None
    grid: list[int]
    trials: int = 1
    seed: int | None = None
    out: str | None = None
    exhaustive: bool = False
    retain_traces: bool = False
    threads: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.grid:
            raise UsageError("grid", "n grid is empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise UsageError("grid", f"n grid must be strictly increasing: {self.grid}")
        if self.trials < 1:
            raise UsageError("trials", "trials must be >= 1")


def parse_grid(text: str) -> list[int]:
    """``8``, ``100,200,400`` or geometric ``start:stop:xFactor``."""
    try:
        if ":" in text:
            start, stop, step = text.split(":")
            if not step.startswith("x"):
                raise ValueError
            start, stop, factor = int(start), int(stop), float(step[1:])
            if factor <= 1 or start < 1:
                raise ValueError
            out = []
            x = float(start)
            while round(x) <= stop:
                out.append(int(round(x)))
                x *= factor
            return out
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError("grid", f"cannot parse n grid {text!r}; use N, N1,N2,... or start:stop:xF") from None


def _add_sequence_args(p):
    p.add_argument("--sequence", choices=FAMILIES, help="increment family")
    p.add_argument("--increments", help="custom increments, comma separated")


def _sequence(args):
    inc = parse_increments(args.increments) if args.increments else None
    if args.sequence is None and inc is None:
        raise UsageError("sequence", "give --sequence or --increments")
    return args.sequence, inc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shellsort-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="Monte Carlo averages of T over an n grid")
    _add_sequence_args(p)
    p.add_argument("--n", required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--threads", type=int)
    p.add_argument("--no-check", action="store_true", help="skip the per-pass oracle check")

    p = sub.add_parser("verify", help="exhaustive property suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("fit", help="fit scaling exponents from a JSONL store")
    p.add_argument("--store", required=True)
    p.add_argument("--sequence", choices=FAMILIES)

    p = sub.add_parser("codec", help="descriptor round trips and files")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = csub.add_parser("roundtrip")
    _add_sequence_args(q)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--exhaustive", action="store_true")
    q.add_argument("--trials", type=int, default=1)
    q.add_argument("--seed", type=int)
    q = csub.add_parser("encode")
    _add_sequence_args(q)
    q.add_argument("--perm", required=True, help="JSON array of keys")
    q.add_argument("--out", required=True)
    q = csub.add_parser("decode")
    q.add_argument("--file", required=True)

    p = sub.add_parser("lb", help="print the lower-bound table")
    _add_sequence_args(p)
    p.add_argument("--n", required=True)
    return parser


def cmd_run(args, out) -> int:
    family, inc = _sequence(args)
    cfg = RunConfig("run", family, inc, parse_grid(args.n), args.trials, args.seed, args.out, args.exhaustive, threads=args.threads)
    if cfg.seed is None and not cfg.exhaustive:
        raise UsageError("seed", "--seed is required (or use --exhaustive)")
    records = []
    for n in cfg.grid:
        H = resolve(family, n, inc)
        records.append(
            analytics.mc_estimate(
                family, n, cfg.trials, cfg.seed, increments=H, exhaustive=cfg.exhaustive,
                check=not args.no_check, workers=cfg.threads,
            )
        )
    if cfg.out:
        analytics.append_records(cfg.out, records)
    print(f"{'n':>8} {'mean_T':>16} {'lb_value':>16} {'ratio':>10}", file=out)
    for r in records:
        print(f"{r.n:>8} {r.mean_T:>16.2f} {r.lb_value:>16.2f} {r.lb_ratio:>10.4f}", file=out)
    bad = sum(r.pass_sum_mismatches + r.unsorted_runs for r in records)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(args, out) -> int:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    try:
        reports = [verify.run_suite(s, args.max_n) for s in suites]
    except verify.GuardError as exc:
        raise UsageError("guard", str(exc)) from None
    doc = reports[0] if len(reports) == 1 else {"suites": reports, "passed": all(r["passed"] for r in reports)}
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text, file=out)
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def fit_rows(records, family=None) -> list[dict]:
    by_family: dict[str, dict[int, float]] = {}
    for r in records:
        if family is None or r.family == family:
            # later records for the same n replace earlier ones
            by_family.setdefault(r.family, {})[r.n] = r.mean_T
    if family is not None and family not in by_family:
        raise UsageError("insufficient_data", f"store has no records for {family}")
    if not by_family:
        raise UsageError("insufficient_data", "store holds no records")
    rows = []
    for fam, pts in sorted(by_family.items()):
        try:
            res = analytics.fit_exponent(pts.items())
        except analytics.FitError as exc:
            raise UsageError("insufficient_data", f"{fam}: {exc}") from None
        target = analytics.THEORY_TARGETS.get(fam)
        ratios = ""
        if target is None:
            tstr = ""
        elif target["kind"] == "power":
            tstr = f"{target['exponent']:.6f}"
        else:
            c = target["log_power"]
            tstr = f"n*log2(n)^{c}"
            ratios = ";".join(f"{x:.6g}" for x in analytics.polylog_ratios(pts.items(), c))
        rows.append({
            "family": fam,
            "exponent": f"{res.exponent:.6f}",
            "target": tstr,
            "residual": f"{res.residual:.6g}",
            "grid": ";".join(str(n) for n, _ in res.points),
            "ratio_series": ratios,
        })
    return rows


def cmd_fit(args, out) -> int:
    try:
        records = analytics.load_records(args.store)
    except FileNotFoundError:
        raise UsageError("insufficient_data", f"no store at {args.store}") from None
    rows = fit_rows(records, args.sequence)
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return EXIT_OK


def cmd_codec(args, out) -> int:
    if args.action == "decode":
        d = codec.read_descriptor(args.file)
        print(json.dumps(codec.decode_trace(d).tolist()), file=out)
        return EXIT_OK
    family, inc = _sequence(args)
    if args.action == "encode":
        keys = as_permutation(json.loads(args.perm))
        H = resolve(family, keys.shape[0], inc)
        d = codec.encode_trace(shellsort(keys, H, retain=False))
        codec.write_descriptor(d, args.out)
        print(json.dumps({"n": d.n, "increments": list(H.h), "bits": len(d)}), file=out)
        return EXIT_OK
    n = args.n
    H = resolve(family, n, inc)
    if args.exhaustive:
        perms = (np.array(q, dtype=np.int64) for q in enumerate_permutations(n))
    else:
        if args.seed is None:
            raise UsageError("seed", "--seed is required (or use --exhaustive)")
        perms = (random_permutation(n, args.seed, t) for t in range(args.trials))
    checked = failures = 0
    bits = []
    for a in perms:
        d = codec.encode_trace(shellsort(a, H, retain=False))
        checked += 1
        if not np.array_equal(codec.decode_trace(d), a):
            failures += 1
        bits.append(len(d))
    report = {
        "n": n,
        "increments": list(H.h),
        "checked": checked,
        "failures": failures,
        "mean_bits": float(np.mean(bits)),
        "log2_factorial": codec.log2_factorial(n),
    }
    print(json.dumps(report, sort_keys=True), file=out)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_lb(args, out) -> int:
    family, inc = _sequence(args)
    print(f"{'n':>10} {'p':>4} {'lower_bound':>18} {'lb/n':>12}  increments", file=out)
    for n in parse_grid(args.n):
        H = resolve(family, n, inc)
        lb = analytics.lower_bound(n, H.h)
        shown = ",".join(map(str, H.h)) if H.p <= 8 else ",".join(map(str, H.h[:8])) + ",..."
        print(f"{n:>10} {H.p:>4} {lb:>18.2f} {lb / n:>12.4f}  {shown}", file=out)
    return EXIT_OK


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "fit": cmd_fit, "codec": cmd_codec, "lb": cmd_lb}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        code, msg = exc.code, str(exc)
    except IncrementError as exc:
        code, msg = exc.code, str(exc)
    except (PermutationError, codec.CodecError, ValueError) as exc:
        code, msg = "invalid_input", str(exc)
    print(json.dumps({"error": code, "message": msg}), file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
