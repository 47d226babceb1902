"""Increment sequences h_1 > ... > h_p = 1 for each studied family."""
from __future__ import annotations

import math
from dataclasses import dataclass
from collections.abc import Sequence

FAMILIES = (
    "shell",
    "papernov_stasevich",
    "hibbard",
    "pratt_log3",
    "pratt_2i3j",
    "knuth2",
    "jk3",
    "jk3_conjecture",
    "custom",
)
GENERATED = FAMILIES[:-1]
MIN_N = 4


class IncrementError(ValueError):
    """Invalid increment sequence. ``code`` names the violated rule."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class InfeasibleSequence(IncrementError):
    def __init__(self, family: str, n: int, why: str):
        super().__init__("infeasible", f"{family} admits no valid sequence at n={n}: {why}")
        self.family = family
        self.n = n


@dataclass(frozen=True)
class IncrementSequence:
    h: tuple[int, ...]
    n: int
    family: str = "custom"

    @property
    def p(self) -> int:
        return len(self.h)

    def with_h0(self) -> tuple[int, ...]:
        """(h_0, h_1, ..., h_p) with h_0 = n."""
        return (self.n,) + self.h

    def __iter__(self):
        return iter(self.h)

    def __len__(self):
        return len(self.h)


def validate(h: Sequence[int], n: int, family: str = "custom") -> IncrementSequence:
    h = tuple(int(x) for x in h)
    if not h:
        raise IncrementError("empty", "increment sequence is empty")
    if any(x < 1 for x in h):
        raise IncrementError("non_positive", f"increments must be positive: {h}")
    if any(a <= b for a, b in zip(h, h[1:])):
        raise IncrementError("not_decreasing", f"increments not strictly decreasing: {h}")
    if h[-1] != 1:
        raise IncrementError("last_not_one", f"final increment must be 1, got {h[-1]}")
    # n = 1 only admits the sequence (1,)
    if h[0] >= n and not (n == 1 and h == (1,)):
        raise IncrementError("first_not_below_n", f"h_1 = {h[0]} must be below n = {n}")
    return IncrementSequence(h, int(n), family)


def parse_increments(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise IncrementError("syntax", f"cannot parse increments {text!r}") from exc


def _shell(n):
    out = []
    k = 1
    while n >> k >= 1:
        out.append(n >> k)
        k += 1
    return out


def _papernov_stasevich(n):
    out = [(n >> k) + 1 for k in range(1, n.bit_length())]
    if out[-1] != 1:
        out.append(1)
    return out


def _hibbard(n):
    out = []
    k = 1
    while (1 << k) - 1 < n:
        out.append((1 << k) - 1)
        k += 1
    return out[::-1]


def _pratt_log3(n):
    out = []
    k = 1
    while (3**k - 1) // 2 < n:
        out.append((3**k - 1) // 2)
        k += 1
    return out[::-1]


def pratt_2i3j_set(limit: int) -> list[int]:
    """All 2^i 3^j strictly below ``limit``, ascending."""
    out = []
    p3 = 1
    while p3 < limit:
        v = p3
        while v < limit:
            out.append(v)
            v *= 2
        p3 *= 3
    return sorted(out)


def _pratt_2i3j(n):
    out = pratt_2i3j_set(n // 2)
    return out[::-1] if out else [1]


def _rounded(n, exponents):
    # round to nearest, clamp non-final increments to >= 2
    return [max(2, round(n**e)) for e in exponents] + [1]


def _knuth2(n):
    return _rounded(n, [1 / 3])


def _jk3(n):
    h1, h2, _ = _rounded(n, [7 / 15, 1 / 5])
    if h1 <= h2:
        return [h1, h2, 1]
    while math.gcd(h1, h2) > 1 and h1 > h2 + 1:
        h1 -= 1
    return [h1, h2, 1]


def _jk3_conjecture(n):
    return _rounded(n, [1 / 2, 1 / 4])


_RULES = {
    "shell": _shell,
    "papernov_stasevich": _papernov_stasevich,
    "hibbard": _hibbard,
    "pratt_log3": _pratt_log3,
    "pratt_2i3j": _pratt_2i3j,
    "knuth2": _knuth2,
    "jk3": _jk3,
    "jk3_conjecture": _jk3_conjecture,
}

# Exponents of the real-valued families: h_k ~ n^e.
TARGET_EXPONENTS = {
    "knuth2": (1 / 3,),
    "jk3": (7 / 15, 1 / 5),
    "jk3_conjecture": (1 / 2, 1 / 4),
}


def generate(family: str, n: int, increments: Sequence[int] | None = None) -> IncrementSequence:
    """Increment sequence of ``family`` for a list of ``n`` keys.

    ``custom`` takes its values from ``increments``.
    """
    if family == "custom":
        if increments is None:
            raise IncrementError("missing", "custom family needs explicit increments")
        return validate(increments, n, "custom")
    if family not in _RULES:
        raise IncrementError("unknown_family", f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < MIN_N:
        raise InfeasibleSequence(family, n, f"families need n >= {MIN_N}")
    h = _RULES[family](n)
    try:
        return validate(h, n, family)
    except IncrementError as exc:
        raise InfeasibleSequence(family, n, str(exc)) from exc


def resolve(family: str | None, n: int, increments: Sequence[int] | None = None) -> IncrementSequence:
    """Generate from a family tag, or validate explicit increments."""
    if increments is not None and family in (None, "custom"):
        return validate(increments, n, "custom")
    return generate(family or "custom", n, increments)
