"""Exhaustive property suites behind the ``verify`` subcommand.

Each suite returns a JSON-ready report. ``passed`` is true only if no
property failed, and ``counterexample`` holds the first failure seen.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .codec import decode_trace, descr_length, encode_trace, log2_factorial
from .increments import GENERATED, IncrementError, generate, validate
from .permcore import chain_inversions, enumerate_permutations, inversion_count, is_sorted
from .simpleproc import (
    digit_bounds,
    digits_within_bounds,
    max_bound_ratio,
    minimal_schedules,
    minor_candidate,
    mixed_radix_decode,
    mixed_radix_encode,
    simple_apply,
)
from .sorter import shellsort

SMALL_H = ((2, 1), (3, 1), (4, 2, 1))
MAX_N = {"claims": 6, "codec": 8, "sorter": 8, "radix": 100_000}
SUITES = tuple(MAX_N)


class GuardError(ValueError):
    pass


class _Report:
    def __init__(self, suite, max_n):
        self.data = {"suite": suite, "max_n": max_n, "cases": [], "counterexample": None}
        self.failures = 0

    def fail(self, what, **detail):
        self.failures += 1
        if self.data["counterexample"] is None:
            self.data["counterexample"] = {"property": what, **detail}

    def finish(self):
        self.data["failures"] = self.failures
        self.data["passed"] = self.failures == 0
        return self.data


def _small_sequences(n, extra_families=False):
    out = []
    for h in SMALL_H + ((1,),):
        try:
            out.append(validate(h, n))
        except IncrementError:
            pass
    if extra_families and n >= 4:
        seen = {H.h for H in out}
        for fam in GENERATED:
            try:
                H = generate(fam, n)
            except IncrementError:
                continue
            if H.h not in seen:
                seen.add(H.h)
                out.append(H)
    return out


def _guard(suite, max_n):
    if suite not in MAX_N:
        raise GuardError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if not 1 <= max_n <= MAX_N[suite]:
        raise GuardError(f"suite {suite} allows --max-n in 1..{MAX_N[suite]}, got {max_n}")


def check_trace(trace) -> list[str]:
    """Violated trace invariants (empty when all hold)."""
    problems = []
    snaps = trace.snapshots
    if not is_sorted(snaps[-1]):
        problems.append("final snapshot not sorted")
    for k, h in enumerate(trace.increments.h, start=1):
        if int(trace.moves[:, k - 1].sum()) != chain_inversions(snaps[k - 1], h):
            problems.append(f"pass {k} total differs from chain inversions")
    return problems


def sorter_suite(max_n: int) -> dict:
    _guard("sorter", max_n)
    rep = _Report("sorter", max_n)
    for n in range(1, max_n + 1):
        for H in _small_sequences(n, extra_families=True):
            checked = 0
            for q in enumerate_permutations(n):
                t = shellsort(q, H)
                checked += 1
                for problem in check_trace(t):
                    rep.fail(problem, n=n, increments=list(H.h), permutation=list(q))
                if H.h == (1,) and t.total != inversion_count(q):
                    rep.fail("single pass total differs from inversion count", n=n, permutation=list(q))
            rep.data["cases"].append({"n": n, "increments": list(H.h), "checked": checked})
    return rep.finish()


def radix_case(n: int, H) -> tuple[bool, str]:
    """Round trip and injectivity of the mixed-radix code on 0..n-1."""
    seen = set()
    for d in range(n):
        rd = mixed_radix_encode(d, H, n)
        if mixed_radix_decode(rd) != d:
            return False, f"decode(encode({d})) != {d}"
        if rd.digits in seen:
            return False, f"digits of {d} repeat"
        seen.add(rd.digits)
    return True, ""


def claims_suite(max_n: int) -> dict:
    """Minor-sequence claims on every permutation of 3..max_n keys."""
    _guard("claims", max_n)
    rep = _Report("claims", max_n)
    for n in range(3, max_n + 1):
        for h in SMALL_H:
            try:
                H = validate(h, n)
            except IncrementError:
                continue
            ok, why = radix_case(n, H.h)
            if not ok:
                rep.fail("mixed-radix uniqueness", n=n, increments=list(h), detail=why)
            case = {
                "n": n,
                "increments": list(h),
                "checked": 0,
                "minor_total_below_T": 0,
                "minor_total_equal_T": 0,
                "dominance_violations": 0,
                "digit_bound_violations": 0,
                "bounded_minimum_missing": 0,
                "max_digit_bound_ratio": 0.0,
                "candidate_agrees": 0,
                "radix_roundtrip": ok,
            }
            worst = Fraction(0)
            for q in enumerate_permutations(n):
                T = shellsort(q, H, retain=False).total
                best, schedules = minimal_schedules(q, H)
                sched = min(schedules, key=lambda s: s.flat())
                case["checked"] += 1
                if best < T:
                    case["minor_total_below_T"] += 1
                elif best == T:
                    case["minor_total_equal_T"] += 1
                else:
                    case["dominance_violations"] += 1
                    rep.fail("T' <= T", n=n, increments=list(h), permutation=list(q), minor_total=best, T=T)
                if not is_sorted(simple_apply(q, H, sched)):
                    rep.fail("minor schedule sorts", n=n, increments=list(h), permutation=list(q))
                worst = max(worst, max_bound_ratio(sched))
                if not digits_within_bounds(sched):
                    case["digit_bound_violations"] += 1
                    rep.fail(
                        "n_ik < h_(k-1)/h_k",
                        n=n,
                        increments=list(h),
                        permutation=list(q),
                        digits=sched.digits.tolist(),
                        bounds=[str(b) for b in digit_bounds(h, n)],
                    )
                if not any(digits_within_bounds(s) for s in schedules):
                    case["bounded_minimum_missing"] += 1
                if minor_candidate(q, H).flat() == sched.flat():
                    case["candidate_agrees"] += 1
            case["max_digit_bound_ratio"] = float(worst)
            case["candidate_agreement_rate"] = case["candidate_agrees"] / case["checked"]
            rep.data["cases"].append(case)
    return rep.finish()


def codec_suite(max_n: int) -> dict:
    _guard("codec", max_n)
    rep = _Report("codec", max_n)
    for n in range(2, max_n + 1):
        for H in _small_sequences(n, extra_families=True):
            seen = set()
            lengths = []
            for q in enumerate_permutations(n):
                d = encode_trace(shellsort(q, H, retain=False))
                back = decode_trace(d)
                if list(back) != list(q):
                    rep.fail("round trip", n=n, increments=list(H.h), permutation=list(q))
                seen.add(d.bitstring())
                lengths.append(descr_length(d).total)
            count = math.factorial(n)
            if len(seen) != count:
                rep.fail("injectivity", n=n, increments=list(H.h), distinct=len(seen))
            mean = float(np.mean(lengths))
            floor = log2_factorial(n)
            if mean < floor:
                rep.fail("mean length >= log2(n!)", n=n, increments=list(H.h), mean=mean, floor=floor)
            rep.data["cases"].append(
                {"n": n, "increments": list(H.h), "checked": count, "mean_bits": mean, "log2_factorial": floor}
            )
    return rep.finish()


def radix_grid(max_n: int) -> list[int]:
    grid = set(range(4, min(max_n, 64) + 1))
    x = 64.0
    while x < max_n:
        x *= 1.5
        grid.add(min(int(x), max_n))
    grid.add(max_n)
    return sorted(g for g in grid if g >= 4)


def radix_suite(max_n: int) -> dict:
    _guard("radix", max_n)
    rep = _Report("radix", max_n)
    for n in radix_grid(max_n):
        for fam in GENERATED:
            try:
                H = generate(fam, n)
            except IncrementError:
                continue
            ok, why = radix_case(n, H.h)
            if not ok:
                rep.fail("mixed-radix round trip", n=n, family=fam, detail=why)
            rep.data["cases"].append({"n": n, "family": fam, "checked": n, "ok": ok})
    return rep.finish()


RUNNERS = {"claims": claims_suite, "codec": codec_suite, "sorter": sorter_suite, "radix": radix_suite}


def run_suite(suite: str, max_n: int) -> dict:
    _guard(suite, max_n)
    return RUNNERS[suite](max_n)
