"""The simple Shellsort process, its minimal (minor) schedules, and mixed-radix digits.

In the simple process, pass k visits keys in the sorter's processing order.
The key at chain position j moves ``l`` chain positions left by adjacent
swaps, where 0 <= l <= j - 1. The keys it passes shift one position right.
Ordinary Shellsort is the special case where each key stops at its
insertion point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .increments import IncrementSequence, validate
from .permcore import as_permutation

ORACLE_MAX_N = 6
ORACLE_MAX_P = 3


class ScheduleBoundError(ValueError):
    def __init__(self, key: int, k: int, moves: int, room: int):
        super().__init__(f"key {key} cannot move {moves} chain positions in pass {k}; only {room} available")
        self.key = key
        self.k = k
        self.moves = moves
        self.room = room


class DigitBoundError(ValueError):
    pass


@dataclass(frozen=True)
class MinorSchedule:
    """Move counts ``digits[i-1, k-1]`` for key i in pass k."""

    n: int
    increments: IncrementSequence
    digits: np.ndarray
    minimal: bool = False

    @property
    def total(self) -> int:
        return int(self.digits.sum())

    @property
    def per_key(self) -> np.ndarray:
        return self.digits.sum(axis=1)

    def flat(self) -> tuple[int, ...]:
        """Digits in (key, pass) lexicographic order."""
        return tuple(int(x) for x in self.digits.ravel())


@dataclass(frozen=True)
class RadixDigits:
    digits: tuple[int, ...]
    radices: tuple[int, ...]
    n: int
    bounds: tuple[Fraction, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "bounds", digit_bounds(self.radices, self.n))


def _as_increments(H, n) -> IncrementSequence:
    if isinstance(H, IncrementSequence):
        return H
    return validate(H, n)


def digit_bounds(H, n: int) -> tuple[Fraction, ...]:
    """(h_0/h_1, ..., h_{p-1}/h_p) with h_0 = n, as exact fractions."""
    h = (int(n),) + tuple(H)
    return tuple(Fraction(h[k - 1], h[k]) for k in range(1, len(h)))


def mixed_radix_encode(d: int, H, n: int) -> RadixDigits:
    """Greedy most-significant-first digits with sum(d_k * h_k) == d."""
    if not 0 <= d <= n - 1:
        raise ValueError(f"displacement {d} outside 0..{n - 1}")
    radices = tuple(H)
    digits = []
    rest = d
    for h in radices:
        digits.append(rest // h)
        rest %= h
    return RadixDigits(tuple(digits), radices, n)


def mixed_radix_decode(rd: RadixDigits) -> int:
    if len(rd.digits) != len(rd.radices):
        raise DigitBoundError("digit count does not match radix count")
    for k, (dk, b) in enumerate(zip(rd.digits, rd.bounds), start=1):
        if dk < 0 or not dk < b:
            raise DigitBoundError(f"digit {k} = {dk} violates 0 <= d < {b}")
    return sum(dk * h for dk, h in zip(rd.digits, rd.radices))


def _move_left(chain: list[int], j: int, l: int) -> None:
    x = chain[j]
    chain[j - l + 1 : j + 1] = chain[j - l : j]
    chain[j - l] = x


def simple_apply(keys, H, schedule) -> np.ndarray:
    """Run the simple process with the given per-key move counts."""
    cur = [int(x) for x in as_permutation(keys)]
    n = len(cur)
    H = _as_increments(H, n)
    digits = np.asarray(schedule.digits if isinstance(schedule, MinorSchedule) else schedule, dtype=np.int64)
    if digits.shape != (n, H.p):
        raise ValueError(f"schedule shape {digits.shape} does not match (n, p) = {(n, H.p)}")
    for k, h in enumerate(H.h, start=1):
        for c in range(h):
            chain = cur[c::h]
            for j in range(len(chain)):
                key = chain[j]
                l = int(digits[key - 1, k - 1])
                if l < 0 or l > j:
                    raise ScheduleBoundError(key, k, l, j)
                if l:
                    _move_left(chain, j, l)
            cur[c::h] = chain
    return np.array(cur, dtype=np.int64)


def _insertion_counts(cur: list[int]) -> list[int]:
    """Moves per key (indexed key-1) when insertion sorting ``cur`` as one chain."""
    out = [0] * len(cur)
    work: list[int] = []
    for x in cur:
        q = len(work)
        while q > 0 and work[q - 1] > x:
            q -= 1
        work.insert(q, x)
        out[x - 1] = len(work) - 1 - q
    return out


def minimal_schedules(keys, H) -> tuple[int, list[MinorSchedule]]:
    """Exhaustive branch-and-bound search for every schedule of least total.

    Passes before the last branch over all legal counts. The final pass has
    h = 1 and a single chain, so exactly one count vector sorts the list and
    it is computed directly.
    """
    perm = [int(x) for x in as_permutation(keys)]
    n = len(perm)
    H = _as_increments(H, n)
    if n > ORACLE_MAX_N or H.p > ORACLE_MAX_P:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}, p <= {ORACLE_MAX_P}; got n={n}, p={H.p}")
    p = H.p
    slots = [(k, c, t) for k in range(p - 1) for c in range(H.h[k]) for t in range(len(range(c, n, H.h[k])))]
    best = [None]
    found: list[list[list[int]]] = []
    digits = [[0] * p for _ in range(n)]

    def finish(cur, running):
        last = _insertion_counts(cur)
        total = running + sum(last)
        if best[0] is not None and total > best[0]:
            return
        if best[0] is None or total < best[0]:
            best[0] = total
            found.clear()
        snap = [row[:] for row in digits]
        for i, m in enumerate(last):
            snap[i][p - 1] = m
        found.append(snap)

    def search(s, cur, running):
        if best[0] is not None and running > best[0]:
            return
        if s == len(slots):
            finish(cur, running)
            return
        k, c, t = slots[s]
        h = H.h[k]
        chain = cur[c::h]
        key = chain[t]
        for l in range(t + 1):
            nxt = chain[:]
            if l:
                _move_left(nxt, t, l)
            state = cur[:]
            state[c::h] = nxt
            digits[key - 1][k] = l
            search(s + 1, state, running + l)
        digits[key - 1][k] = 0

    search(0, perm, 0)
    schedules = [MinorSchedule(n, H, np.array(f, dtype=np.int64), minimal=True) for f in found]
    return best[0], schedules


def minor_oracle(keys, H) -> MinorSchedule:
    """The least-total schedule, lexicographically first in (key, pass) order."""
    _, schedules = minimal_schedules(keys, H)
    return min(schedules, key=MinorSchedule.flat)


def digits_within_bounds(schedule: MinorSchedule) -> bool:
    bounds = digit_bounds(schedule.increments.h, schedule.n)
    return all(d < b for row in schedule.digits.tolist() for d, b in zip(row, bounds))


def max_bound_ratio(schedule: MinorSchedule) -> Fraction:
    """Largest digit / bound over the schedule; below 1 iff every bound holds."""
    bounds = digit_bounds(schedule.increments.h, schedule.n)
    return max(Fraction(d) / b for row in schedule.digits.tolist() for d, b in zip(row, bounds))


def minor_candidate(keys, H) -> MinorSchedule:
    """Greedy mixed-radix split of each key's leftward displacement max(j - i, 0)."""
    a = as_permutation(keys)
    n = a.shape[0]
    H = _as_increments(H, n)
    digits = np.zeros((n, H.p), dtype=np.int64)
    for j, key in enumerate(a.tolist(), start=1):
        digits[key - 1] = mixed_radix_encode(max(j - key, 0), H.h, n).digits
    return MinorSchedule(n, H, digits, minimal=False)

