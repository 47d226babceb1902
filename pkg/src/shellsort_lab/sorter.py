"""Instrumented p-pass Shellsort recording every key's insertion-path length."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .increments import IncrementSequence, validate
from .permcore import as_permutation


@dataclass(frozen=True)
class SortTrace:
    """Moves of one Shellsort run.

    ``moves[i-1, k-1]`` is how many chain positions key ``i`` moved left in
    pass ``k``. ``pass_orders[k-1]`` lists ``(key, moves)`` in the order the
    pass handled the keys: chain 1 left to right, then chain 2, and so on.
    ``snapshots`` holds pi_0..pi_p when retained.
    """

    n: int
    increments: IncrementSequence
    moves: np.ndarray
    pass_orders: tuple[tuple[tuple[int, int], ...], ...]
    snapshots: np.ndarray | None = None

    @property
    def pass_sums(self) -> np.ndarray:
        return self.moves.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.moves.sum())

    def order_counts(self, k: int) -> np.ndarray:
        """Move counts of pass ``k`` (1-indexed) in processing order."""
        return np.array([m for _, m in self.pass_orders[k - 1]], dtype=np.int64)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "increments": list(self.increments.h),
            "moves": self.moves.tolist(),
        }
        if self.snapshots is not None:
            d["snapshots"] = self.snapshots.tolist()
        return d


def run_pass(keys, h: int) -> tuple[np.ndarray, dict[int, int], list[tuple[int, int]]]:
    """One h-pass by plain insertion sort of each chain.

    Returns the merged permutation, moves per key, and the processing order.
    """
    cur = [int(x) for x in as_permutation(keys)]
    n = len(cur)
    if h < 1:
        raise ValueError("increment must be positive")
    moved: dict[int, int] = {}
    order: list[tuple[int, int]] = []
    for c in range(min(h, n)):
        chain = cur[c::h]
        for j in range(len(chain)):
            x = chain[j]
            q = j
            while q > 0 and chain[q - 1] > x:
                chain[q] = chain[q - 1]
                q -= 1
            chain[q] = x
            moved[x] = j - q
            order.append((x, j - q))
        cur[c::h] = chain
    return np.array(cur, dtype=np.int64), moved, order


def shellsort(keys, increments, retain: bool = True) -> SortTrace:
    a = as_permutation(keys)
    if not isinstance(increments, IncrementSequence):
        increments = validate(increments, a.shape[0])
    elif increments.n != a.shape[0]:
        raise ValueError(f"increments built for n={increments.n}, got {a.shape[0]} keys")
    hs = np.array(increments.h, dtype=np.int64)
    moves, order_keys, order_counts, snaps = _kernels.shellsort_trace(a, hs)
    orders = tuple(
        tuple(zip(ok.tolist(), oc.tolist())) for ok, oc in zip(order_keys, order_counts)
    )
    return SortTrace(a.shape[0], increments, moves, orders, snaps if retain else None)


def total_inversions(trace: SortTrace) -> int:
    return trace.total


def pass_totals(keys, increments, check: bool = False) -> tuple[np.ndarray, np.ndarray, bool]:
    """Per-pass move totals without keeping a trace (for large n).

    With ``check`` the chain-inversion oracle of each pre-pass permutation is
    returned alongside; otherwise that array is all -1. The flag says whether
    the output came out sorted.
    """
    a = np.array(keys, dtype=np.int64)
    hs = np.array(increments.h if isinstance(increments, IncrementSequence) else increments, dtype=np.int64)
    sums, oracle = _kernels.shellsort_sums(a, hs, check)
    ok = bool(np.all(a == np.arange(1, a.shape[0] + 1)))
    return sums, oracle, ok
