"""Finite integer sets stored as sorted, disjoint, non-adjacent closed intervals."""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Pair = Tuple[int, int]


@dataclass(frozen=True)
class IntegerSet:
    """Immutable union of closed integer intervals ``[lo..hi]``.

    Always held in canonical form: pairs sorted, ``lo <= hi``, and consecutive
    pairs separated by at least one missing integer. Build instances with
    :func:`normalize` (or :meth:`IntegerSet.of`) rather than the raw constructor.
    """

    intervals: Tuple[Pair, ...] = ()

    @classmethod
    def of(cls, *pairs: Pair) -> "IntegerSet":
        return normalize(pairs)

    @classmethod
    def single(cls, value: int) -> "IntegerSet":
        return cls(((value, value),))

    @classmethod
    def span(cls, lo: int, hi: int) -> "IntegerSet":
        return normalize([(lo, hi)])

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "IntegerSet":
        return normalize((v, v) for v in values)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __len__(self) -> int:
        return self.size()

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and self.contains(value)

    def __and__(self, other: "IntegerSet") -> "IntegerSet":
        return intersect(self, other)

    def __or__(self, other: "IntegerSet") -> "IntegerSet":
        return self.union(other)

    def __str__(self) -> str:
        return format_set(self)

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def min(self) -> int:
        if not self.intervals:
            raise ValueError("min() of an empty IntegerSet")
        return self.intervals[0][0]

    def max(self) -> int:
        if not self.intervals:
            raise ValueError("max() of an empty IntegerSet")
        return self.intervals[-1][1]

    def hull(self) -> "IntegerSet":
        """Smallest single interval containing the set."""
        if not self.intervals:
            return self
        return IntegerSet(((self.min(), self.max()),))

    def contains(self, value: int) -> bool:
        k = bisect_right(self.intervals, (value, float("inf"))) - 1
        return k >= 0 and self.intervals[k][1] >= value

    def least_geq(self, x: int) -> Optional[int]:
        return least_geq(self, x)

    def union(self, other: "IntegerSet") -> "IntegerSet":
        return normalize(self.intervals + other.intervals)

    def intersect(self, other: "IntegerSet") -> "IntegerSet":
        return intersect(self, other)

    def shift(self, offset: int) -> "IntegerSet":
        return IntegerSet(tuple((lo + offset, hi + offset) for lo, hi in self.intervals))

    def is_disjoint_from(self, other: "IntegerSet") -> bool:
        return not intersect(self, other)


EMPTY = IntegerSet()


def normalize(pairs: Iterable[Sequence[int]]) -> IntegerSet:
    """Sort and merge overlapping or adjacent pairs into canonical form.

    >>> normalize([(1, 3), (4, 6)]).intervals
    ((1, 6),)
    """
    items = sorted((int(pair[0]), int(pair[1])) for pair in pairs)
    merged: list[Pair] = []
    top = None
    for lo, hi in items:
        if lo > hi:
            raise ValueError(f"interval ({lo}, {hi}) has lo > hi")
        if top is not None and lo <= top + 1:
            if hi > top:
                merged[-1] = (merged[-1][0], hi)
                top = hi
        else:
            merged.append((lo, hi))
            top = hi
    return IntegerSet(tuple(merged))


def intersect(a: IntegerSet, b: IntegerSet) -> IntegerSet:
    """Exact set intersection by a linear merge of both interval lists."""
    out = []
    xs, ys = a.intervals, b.intervals
    i = j = 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i][0], ys[j][0])
        hi = min(xs[i][1], ys[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    # pieces of two canonical sets are already separated by gaps
    return IntegerSet(tuple(out))


def lex_leq(d: IntegerSet, e: IntegerSet) -> bool:
    """True when some element of ``d`` is <= some element of ``e``.

    Not an order: it is reflexive but neither antisymmetric nor transitive.
    """
    if not d or not e:
        raise ValueError("lex_leq is only defined on non-empty sets")
    return d.min() <= e.max()


def least_geq(d: IntegerSet, x: int) -> Optional[int]:
    """Smallest element of ``d`` that is >= ``x``, or None."""
    ivs = d.intervals
    k = bisect_left(ivs, (x, x))
    # the interval just before may still contain x
    if k > 0 and ivs[k - 1][1] >= x:
        return x
    if k < len(ivs):
        return ivs[k][0]
    return None


_ITEM = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


def parse_set(text: str) -> IntegerSet:
    """Parse ``"3..6, 147..148, 9"``; an empty or blank string is the empty set."""
    text = text.strip()
    if not text:
        return EMPTY
    pairs = []
    for item in text.split(","):
        match = _ITEM.match(item)
        if match is None:
            raise ValueError(f"bad interval item {item!r}")
        lo = int(match.group(1))
        hi = int(match.group(2)) if match.group(2) is not None else lo
        pairs.append((lo, hi))
    return normalize(pairs)


def format_set(d: IntegerSet) -> str:
    return ",".join(str(lo) if lo == hi else f"{lo}..{hi}" for lo, hi in d.intervals)
