"""Compiled inner loops.

Every kernel works on 0-indexed int64 arrays holding keys 1..n. The public
modules wrap these with 1-indexed, validated interfaces.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def inversions(a):
    n = a.shape[0]
    tree = np.zeros(n + 1, dtype=np.int64)
    total = 0
    for j in range(n):
        v = a[j]
        # keys seen so far that are <= v
        s = 0
        i = v
        while i > 0:
            s += tree[i]
            i -= i & -i
        total += j - s
        i = v
        while i <= n:
            tree[i] += 1
            i += i & -i
    return total


@njit(cache=True, nogil=True)
def chain_inversions(a, h):
    n = a.shape[0]
    tree = np.zeros(n + 1, dtype=np.int64)
    total = 0
    for c in range(h):
        seen = 0
        for j in range(c, n, h):
            v = a[j]
            s = 0
            i = v
            while i > 0:
                s += tree[i]
                i -= i & -i
            total += seen - s
            seen += 1
            i = v
            while i <= n:
                tree[i] += 1
                i += i & -i
        # clear this chain's entries before the next one
        for j in range(c, n, h):
            i = a[j]
            while i <= n:
                tree[i] -= 1
                i += i & -i
    return total


@njit(cache=True, nogil=True)
def shellsort_sums(a, hs, check):
    """Sort ``a`` in place; return per-pass move totals and oracle totals.

    When ``check`` is false the oracle row is left at -1.
    """
    n = a.shape[0]
    p = hs.shape[0]
    sums = np.zeros(p, dtype=np.int64)
    oracle = np.full(p, -1, dtype=np.int64)
    for k in range(p):
        h = hs[k]
        if check:
            oracle[k] = chain_inversions(a, h)
        moved = 0
        for c in range(h):
            for j in range(c + h, n, h):
                x = a[j]
                q = j
                while q >= h and a[q - h] > x:
                    a[q] = a[q - h]
                    q -= h
                a[q] = x
                moved += (j - q) // h
        sums[k] = moved
    return sums, oracle


@njit(cache=True, nogil=True)
def shellsort_trace(a, hs):
    n = a.shape[0]
    p = hs.shape[0]
    moves = np.zeros((n, p), dtype=np.int64)
    order_keys = np.zeros((p, n), dtype=np.int64)
    order_counts = np.zeros((p, n), dtype=np.int64)
    snapshots = np.zeros((p + 1, n), dtype=np.int64)
    snapshots[0, :] = a
    for k in range(p):
        h = hs[k]
        t = 0
        for c in range(h):
            for j in range(c, n, h):
                x = a[j]
                q = j
                while q >= h and a[q - h] > x:
                    a[q] = a[q - h]
                    q -= h
                a[q] = x
                m = (j - q) // h
                moves[x - 1, k] = m
                order_keys[k, t] = x
                order_counts[k, t] = m
                t += 1
        snapshots[k + 1, :] = a
    return moves, order_keys, order_counts, snapshots


@njit(cache=True, nogil=True)
def unsort_pass(a, h, counts):
    """Invert one pass in place given its move counts in processing order.

    Returns False if a count exceeds the room available in its chain.
    """
    n = a.shape[0]
    # offsets of each chain's first count inside ``counts``
    start = 0
    for c in range(h):
        length = (n - c + h - 1) // h
        for t in range(length - 1, -1, -1):
            m = counts[start + t]
            if m > t:
                return False
            j = c + t * h
            q = j - m * h
            x = a[q]
            while q < j:
                a[q] = a[q + h]
                q += h
            a[j] = x
        start += length
    return True


@njit(cache=True, nogil=True)
def encode_counts(counts):
    m = counts.shape[0]
    size = 0
    for t in range(m):
        v = counts[t]
        width = 1
        while (v >> width) > 0:
            width += 1
        size += 2 * width
    bits = np.zeros(size, dtype=np.uint8)
    pos = 0
    for t in range(m):
        v = counts[t]
        width = 1
        while (v >> width) > 0:
            width += 1
        for b in range(width - 1, 0, -1):
            bit = (v >> b) & 1
            bits[pos] = bit
            bits[pos + 1] = bit
            pos += 2
        bit = v & 1
        bits[pos] = bit
        bits[pos + 1] = 1 - bit
        pos += 2
    return bits


@njit(cache=True, nogil=True)
def decode_counts(bits, start, m):
    """Parse ``m`` codewords from ``bits[start:]``.

    Returns (counts, end); end is -1 if the stream is truncated.
    """
    out = np.zeros(m, dtype=np.int64)
    pos = start
    size = bits.shape[0]
    for t in range(m):
        v = 0
        while True:
            if pos + 1 >= size:
                return out, -1
            b0 = bits[pos]
            b1 = bits[pos + 1]
            pos += 2
            v = (v << 1) | b0
            if b0 != b1:
                break
        out[t] = v
    return out, pos
