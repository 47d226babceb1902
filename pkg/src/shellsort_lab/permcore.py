"""Permutations of 1..n: validation, seeded sampling, enumeration, inversions."""
from __future__ import annotations

import itertools
import json
from collections.abc import Iterator, Sequence

import numpy as np

from . import _kernels

MAX_ENUMERATE_N = 10
SEED_MASK = (1 << 64) - 1


class PermutationError(ValueError):
    pass


def as_permutation(keys: Sequence[int] | np.ndarray) -> np.ndarray:
    """Return ``keys`` as an int64 array after checking it permutes 1..n."""
    a = np.asarray(keys, dtype=np.int64).ravel()
    n = a.shape[0]
    if n < 1:
        raise PermutationError("a permutation needs at least one key")
    seen = np.zeros(n + 1, dtype=bool)
    if a.min() < 1 or a.max() > n:
        raise PermutationError(f"keys must lie in 1..{n}")
    seen[a] = True
    if not seen[1:].all():
        raise PermutationError("keys are not distinct")
    return a.copy()


def is_sorted(keys) -> bool:
    a = np.asarray(keys)
    return bool(np.all(a == np.arange(1, a.shape[0] + 1)))


def trial_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for ``(seed, *stream)``.

    Streams are derived through ``SeedSequence`` spawn keys, so trial ``t``
    gets the same numbers no matter which worker runs it or in what order.
    """
    ss = np.random.SeedSequence(entropy=int(seed) & SEED_MASK, spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))


def random_permutation(n: int, seed: int, *stream: int) -> np.ndarray:
    if n < 1:
        raise PermutationError("n must be at least 1")
    rng = trial_rng(seed, *stream)
    return rng.permutation(n).astype(np.int64) + 1


def inversion_count(keys) -> int:
    """Number of position pairs a < b with key(a) > key(b), via a Fenwick tree."""
    return int(_kernels.inversions(as_permutation(keys)))


def chain_inversions(keys, h: int) -> int:
    """Sum of the inversion counts of the ``h`` interleaved chains ``j mod h``."""
    a = as_permutation(keys)
    if not 1 <= h <= a.shape[0]:
        raise PermutationError(f"chain stride {h} outside 1..{a.shape[0]}")
    return int(_kernels.chain_inversions(a, h))


def enumerate_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of 1..n in lexicographic order."""
    if n < 1:
        raise PermutationError("n must be at least 1")
    if n > MAX_ENUMERATE_N:
        raise PermutationError(f"refusing to enumerate {n}! permutations (limit n <= {MAX_ENUMERATE_N})")
    return itertools.permutations(range(1, n + 1))


def to_json(keys) -> str:
    return json.dumps([int(k) for k in keys])


def from_json(text: str) -> np.ndarray:
    return as_permutation(json.loads(text))
