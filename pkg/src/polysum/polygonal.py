"""Generalized m-gonal numbers: evaluation, enumeration and inversion.

For an order m >= 3 the m-gonal number with index x is

    p_m(x) = (m-2) * x*(x-1)/2 + x

and x is allowed to range over all of Z (a negative index still produces a
nonnegative value).  Order 3 gives triangular numbers, order 4 squares,
order 5 the (generalized) pentagonal numbers, and so on.  Generalized
hexagonal numbers coincide with triangular numbers.

Everything here is exact integer arithmetic; Python integers never
overflow, so no approximation can sneak in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

__all__ = ["PolygonalKind", "SquareCompletion", "square_complete"]


@dataclass(frozen=True)
class PolygonalKind:
    """A polygonal-number family of a fixed order m >= 3."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 3:
            raise ValueError(f"polygonal order must be an integer >= 3, got {self.m!r}")

    def value(self, x: int) -> int:
        """p_m(x) = (m-2)x(x-1)/2 + x, exactly, for any integer index x."""
        return (self.m - 2) * (x * (x - 1) // 2) + x

    def index_of(self, n: int) -> int | None:
        """Canonical index x with value(x) == n, or None.

        Canonical means smallest |x|, preferring the nonnegative index on a
        tie.  Enumerates both directions; value() grows strictly in |x|, so
        the scan stops as soon as both directions exceed n.
        """
        if n < 0:
            raise ValueError("n must be nonnegative")
        k = 0
        while True:
            vp = self.value(k)
            vn = self.value(-k)
            if vp == n:
                return k
            if vn == n:
                return -k
            if vp > n and vn > n:
                return None
            k += 1

    def values_up_to(self, limit: int, *, naturals: bool = False) -> list[int]:
        """Sorted distinct values { p_m(x) : x } intersected with [0, limit].

        By default x ranges over Z; with naturals=True only x >= 0 is used.
        """
        if limit < 0:
            raise ValueError("limit must be nonnegative")
        seen = set()
        k = 0
        while True:
            vp = self.value(k)
            vn = self.value(-k)
            if vp <= limit:
                seen.add(vp)
            if not naturals and vn <= limit:
                seen.add(vn)
            if vp > limit and (naturals or vn > limit):
                break
            k += 1
        return sorted(seen)

    def is_value(self, n: int) -> bool:
        return self.index_of(n) is not None


class SquareCompletion(NamedTuple):
    """Data of the identity  A * p_m(x) + B = (slope*x + offset)^2."""

    A: int
    B: int
    slope: int
    offset: int

    def coord(self, x: int) -> int:
        return self.slope * x + self.offset


def square_complete(m: int) -> SquareCompletion:
    """Square-completion data for order m.

    With A = 8(m-2), B = (m-4)^2 and t(x) = 2(m-2)x - (m-4) we have
    A*p_m(x) + B = t(x)^2 for every integer x.  Order 5 gives t = 6x-1,
    order 3 gives t = 2x+1, order 11 gives t = 18x-7.
    """
    if m < 3:
        raise ValueError(f"polygonal order must be >= 3, got {m}")
    return SquareCompletion(8 * (m - 2), (m - 4) ** 2, 2 * (m - 2), -(m - 4))
