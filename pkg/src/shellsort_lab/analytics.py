"""Lower-bound formula, Monte Carlo averages of T, and scaling fits."""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from .increments import IncrementSequence, resolve
from .permcore import enumerate_permutations, random_permutation
from .simpleproc import MinorSchedule, digit_bounds
from .sorter import SortTrace, pass_totals

THREADS_ENV = "SHELLSORT_LAB_THREADS"

# Predicted growth of the average number of inversions per family.
# "power": T ~ n^exponent; "polylog": T ~ n (log n)^log_power.
THEORY_TARGETS = {
    "knuth2": {"kind": "power", "exponent": 5 / 3},
    "jk3": {"kind": "power", "exponent": 23 / 15},
    "jk3_conjecture": {"kind": "power", "exponent": 3 / 2},
    "shell": {"kind": "polylog", "log_power": 1},
    "papernov_stasevich": {"kind": "polylog", "log_power": 1},
    "hibbard": {"kind": "polylog", "log_power": 1},
    "pratt_log3": {"kind": "polylog", "log_power": 1},
    "pratt_2i3j": {"kind": "polylog", "log_power": 2},
}


class FitError(ValueError):
    pass


@dataclass
class ExperimentRecord:
    family: str
    n: int
    increments: list[int]
    trials: int
    seed: int | None
    mean_T: float
    var_T: float
    per_pass_means: list[float]
    lb_value: float
    exhaustive: bool = False
    pass_sum_mismatches: int = 0
    unsorted_runs: int = 0
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    @property
    def lb_ratio(self) -> float:
        return self.mean_T / self.lb_value

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentRecord:
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})


@dataclass(frozen=True)
class FitResult:
    exponent: float
    log_coefficient: float
    residual: float
    points: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class AkStat:
    k: int
    bound: Fraction
    a_k: float
    arith_mean: float
    geo_mean: float
    zero_counts: int


def lower_bound_exact(n: int, H) -> Fraction:
    return n * sum(digit_bounds(tuple(H), n), Fraction(0))


def lower_bound(n: int, H) -> float:
    """n * sum_k h_{k-1}/h_k with h_0 = n."""
    return float(lower_bound_exact(n, H))


def _threads(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def _summarize(sums: np.ndarray) -> tuple[float, float, list[float]]:
    # integer totals: exact sums, converted once at the end
    totals = [int(x) for x in sums.sum(axis=1)]
    t = len(totals)
    s = sum(totals)
    mean = Fraction(s, t)
    var = Fraction(sum(x * x for x in totals) - s * s / Fraction(t), t - 1) if t > 1 else Fraction(0)
    per_pass = [float(Fraction(int(c), t)) for c in sums.sum(axis=0)]
    return float(mean), float(var), per_pass


def mc_estimate(
    family: str | None,
    n: int,
    trials: int = 1,
    seed: int | None = None,
    increments=None,
    exhaustive: bool = False,
    check: bool = True,
    workers: int | None = None,
) -> ExperimentRecord:
    """Mean and sample variance of the Shellsort inversion total T.

    Trial ``t`` sorts ``random_permutation(n, seed, t)``. In exhaustive mode
    every permutation of 1..n is sorted once and ``seed`` is unused. With
    ``check`` each pass total is compared against the chain-inversion count
    of the permutation entering that pass.
    """
    H = increments if isinstance(increments, IncrementSequence) else resolve(family, n, increments)
    if exhaustive:
        perms = np.array(list(enumerate_permutations(n)), dtype=np.int8)
        trials = len(perms)
        seed = None
    else:
        if trials < 1:
            raise ValueError("trials must be at least 1")
        if seed is None:
            raise ValueError("a seed is required for sampled estimates")
        perms = None

    sums = np.zeros((trials, H.p), dtype=np.int64)
    bad = np.zeros((trials, 2), dtype=np.int64)

    def one(t):
        a = perms[t].astype(np.int64) if perms is not None else random_permutation(n, seed, t)
        s, oracle, ok = pass_totals(a, H, check)
        sums[t] = s
        bad[t, 0] = int(np.any(s != oracle)) if check else 0
        bad[t, 1] = 0 if ok else 1

    nthreads = _threads(workers)
    if nthreads == 1:
        for t in range(trials):
            one(t)
    else:
        with ThreadPoolExecutor(nthreads) as pool:
            list(pool.map(one, range(trials)))

    mean, var, per_pass = _summarize(sums)
    return ExperimentRecord(
        family=H.family,
        n=n,
        increments=list(H.h),
        trials=trials,
        seed=seed,
        mean_T=mean,
        var_T=var,
        per_pass_means=per_pass,
        lb_value=lower_bound(n, H.h),
        exhaustive=exhaustive,
        pass_sum_mismatches=int(bad[:, 0].sum()),
        unsorted_runs=int(bad[:, 1].sum()),
    )


def fit_exponent(points) -> FitResult:
    """Least-squares fit of log T = alpha log n + beta (natural logs)."""
    pts = sorted((int(n), float(t)) for n, t in points)
    if len(pts) < 4:
        raise FitError(f"need at least 4 points, got {len(pts)}")
    ns = np.array([p[0] for p in pts], dtype=float)
    ts = np.array([p[1] for p in pts], dtype=float)
    if len(set(ns.tolist())) != len(ns):
        raise FitError("grid sizes must be distinct")
    if ns.max() / ns.min() < 10:
        raise FitError("grid must span at least one decade")
    if np.any(ts <= 0):
        raise FitError("mean totals must be positive for a log-log fit")
    x, y = np.log(ns), np.log(ts)
    A = np.vstack([x, np.ones_like(x)]).T
    (alpha, beta), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sum((y - (alpha * x + beta)) ** 2))
    return FitResult(float(alpha), float(beta), resid, tuple(pts))


def polylog_ratios(points, log_power: int) -> list[float]:
    """mean_T / (n * log2(n)^log_power) across the grid."""
    return [t / (n * math.log2(n) ** log_power) for n, t in sorted(points)]


def ak_stats(schedule: MinorSchedule | SortTrace | np.ndarray, H=None, n: int | None = None) -> list[AkStat]:
    """Per-pass a_k = log2(h_{k-1}/h_k) - mean_i log2(max(count, 1)).

    Zero counts are read as 1 so that a_k stays finite; ``zero_counts``
    says how many rows that touched.
    """
    if isinstance(schedule, MinorSchedule):
        counts, H, n = schedule.digits, schedule.increments.h, schedule.n
    elif isinstance(schedule, SortTrace):
        counts, H, n = schedule.moves, schedule.increments.h, schedule.n
    else:
        counts = np.asarray(schedule)
        if H is None or n is None:
            raise ValueError("raw count matrices need H and n")
    H = tuple(H)
    out = []
    for k, b in enumerate(digit_bounds(H, n), start=1):
        col = np.asarray(counts[:, k - 1], dtype=float)
        logs = np.log2(np.maximum(col, 1.0))
        out.append(
            AkStat(
                k=k,
                bound=b,
                a_k=math.log2(b) - float(logs.mean()),
                arith_mean=float(col.mean()),
                geo_mean=float(2.0 ** logs.mean()),
                zero_counts=int(np.sum(col == 0)),
            )
        )
    return out


def load_records(path) -> list[ExperimentRecord]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(ExperimentRecord.from_dict(json.loads(line)))
    return out


def append_records(path, records) -> None:
    with open(path, "a") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")
