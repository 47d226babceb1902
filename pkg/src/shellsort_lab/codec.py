"""Lossless permutation codec built from Shellsort move counts.

Each count is written with the bit-doubling code: every bit of its binary
form is doubled except the last, which is followed by its complement. A
reader scans bit pairs until it meets an unequal pair, so codewords need no
length fields and concatenate freely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from collections.abc import Sequence

import numpy as np

from . import _kernels
from .increments import IncrementSequence, validate
from .permcore import as_permutation
from .simpleproc import minor_candidate
from .sorter import SortTrace, shellsort

MAGIC = b"SHLDESC1"
SCHEMES = ("trace", "per_key_totals")


class CodecError(ValueError):
    pass


@dataclass(frozen=True)
class Descriptor:
    bits: np.ndarray
    n: int
    increments: IncrementSequence
    scheme: str = "trace"

    def __len__(self):
        return int(self.bits.shape[0])

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits.tolist())

    @property
    def n_counts(self) -> int:
        return self.n * self.increments.p if self.scheme == "trace" else self.n


@dataclass(frozen=True)
class DescrLength:
    total: int
    payload: int
    overhead: int


def encode_selfdelim(v: int) -> str:
    if v < 0:
        raise CodecError("only non-negative integers are encodable")
    b = format(v, "b")
    last = b[-1]
    return "".join(c + c for c in b[:-1]) + last + ("0" if last == "1" else "1")


def _as_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise CodecError("bit strings may only contain '0' and '1'")
        return np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    return np.asarray(bits, dtype=np.uint8)


def decode_selfdelim(bits, start: int = 0) -> tuple[int, int]:
    """Read one codeword at ``start``; return (value, bits consumed)."""
    a = _as_bits(bits)
    values, end = _kernels.decode_counts(a, start, 1)
    if end < 0:
        raise CodecError(f"truncated codeword at bit {start}")
    return int(values[0]), end - start


def encode_values(values: Sequence[int]) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    if v.size and v.min() < 0:
        raise CodecError("only non-negative integers are encodable")
    return _kernels.encode_counts(v)


def decode_values(bits, m: int, start: int = 0) -> tuple[np.ndarray, int]:
    """Read ``m`` consecutive codewords; return the values and the end offset."""
    values, end = _kernels.decode_counts(_as_bits(bits), start, m)
    if end < 0:
        raise CodecError(f"bit stream ended before {m} codewords were read")
    return values, int(end)


def encode_trace(trace: SortTrace) -> Descriptor:
    """Counts of pass p, then p-1, ..., 1, each pass in processing order."""
    H = trace.increments
    counts = np.concatenate([trace.order_counts(k) for k in range(H.p, 0, -1)])
    return Descriptor(encode_values(counts), trace.n, H, "trace")


def decode_trace(d: Descriptor) -> np.ndarray:
    """Undo the passes p, ..., 1 starting from the sorted list."""
    if d.scheme != "trace":
        raise CodecError(f"scheme {d.scheme!r} is measured only; it has no decoder")
    n, H = d.n, d.increments
    counts, end = decode_values(d.bits, n * H.p)
    if end != len(d):
        raise CodecError(f"{len(d) - end} trailing bits after the last codeword")
    a = np.arange(1, n + 1, dtype=np.int64)
    for idx, k in enumerate(range(H.p, 0, -1)):
        if not _kernels.unsort_pass(a, H.h[k - 1], counts[idx * n : (idx + 1) * n]):
            raise CodecError(f"pass {k} has a count larger than its chain allows")
    return a


def encode_per_key_totals(keys, H) -> Descriptor:
    """Per-key totals T_i of the greedy displacement digits, in key order.

    Used for length accounting only.
    """
    cand = minor_candidate(keys, H)
    return Descriptor(encode_values(cand.per_key), cand.n, cand.increments, "per_key_totals")


def descr_length(d: Descriptor) -> DescrLength:
    """Total bits, payload bits sum(ceil(log2(count + 1))), and the rest as overhead."""
    counts, _ = decode_values(d.bits, d.n_counts)
    payload = int(sum(int(c).bit_length() for c in counts.tolist()))
    total = len(d)
    return DescrLength(total, payload, total - payload)


def log2_factorial(n: int) -> float:
    return math.lgamma(n + 1) / math.log(2)


def to_bytes(d: Descriptor) -> bytes:
    if d.scheme != "trace":
        raise CodecError("only trace descriptors have a file format")
    header = [d.n, d.increments.p, *d.increments.h, len(d)]
    stream = np.concatenate([encode_values(header), d.bits])
    return MAGIC + np.packbits(stream).tobytes()


def from_bytes(blob: bytes) -> Descriptor:
    if not blob.startswith(MAGIC):
        raise CodecError("missing SHLDESC1 magic")
    bits = np.unpackbits(np.frombuffer(blob[len(MAGIC):], dtype=np.uint8))
    (n, p), pos = decode_values(bits, 2)
    h, pos = decode_values(bits, int(p), pos)
    (size,), pos = decode_values(bits, 1, pos)
    if pos + size > bits.shape[0]:
        raise CodecError("payload shorter than its declared length")
    H = validate(h.tolist(), int(n))
    return Descriptor(bits[pos : pos + size].copy(), int(n), H, "trace")


def write_descriptor(d: Descriptor, path) -> None:
    Path(path).write_bytes(to_bytes(d))


def read_descriptor(path) -> Descriptor:
    return from_bytes(Path(path).read_bytes())


def roundtrip(keys, H) -> bool:
    a = as_permutation(keys)
    return bool(np.array_equal(decode_trace(encode_trace(shellsort(a, H, retain=False))), a))
