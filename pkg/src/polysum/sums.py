"""Sums of polygonal terms and their diagonal-form reductions.

A sum a1*p_{m1} + a2*p_{m2} + a3*p_{m3} over Z (or N) is equivalent, via
square completion of each term, to a single diagonal-form equation

    L*n + K = s1*t1^2 + s2*t2^2 + s3*t3^2

with s_i = L*a_i / (8(m_i-2)), t_i running over a fixed residue class
mod 2(m_i-2) up to sign, and K = sum s_i (m_i-4)^2.  L is the least
multiplier making every s_i integral.  For three pentagonal terms this
is 24n + 1 + b + c = t1^2 + b t2^2 + c t3^2 with every t coprime to 6.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from .polygonal import PolygonalKind, square_complete
from .ternary import COPRIME6, ODD, Constraint, residue_set

__all__ = [
    "SumForm",
    "ReductionTarget",
    "parse_sum",
    "reduction_for_sum",
    "term_constraint",
    "decode_index",
]

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?p(\d+)$")


@dataclass(frozen=True)
class SumForm:
    """terms is a tuple of (coefficient, order) pairs; domain is 'Z' or 'N'."""

    terms: tuple[tuple[int, int], ...]
    domain: str = "Z"

    def __post_init__(self):
        if not 1 <= len(self.terms) <= 3:
            raise ValueError("a sum has 1 to 3 terms")
        for a, m in self.terms:
            if a < 1:
                raise ValueError(f"coefficients must be positive, got {a}")
            if m < 3:
                raise ValueError(f"polygonal orders must be >= 3, got {m}")
        if self.domain not in ("Z", "N"):
            raise ValueError(f"domain must be 'Z' or 'N', got {self.domain!r}")

    def evaluate(self, indices) -> int:
        if len(indices) != len(self.terms):
            raise ValueError("index count does not match term count")
        return sum(a * PolygonalKind(m).value(x) for (a, m), x in zip(self.terms, indices))

    def __str__(self) -> str:
        return "+".join(f"{a}p{m}" if a > 1 else f"p{m}" for a, m in self.terms)


def parse_sum(text: str, domain: str = "Z") -> SumForm:
    """Parse '[a*]pM[+...]' (1-3 terms), e.g. 'p5+2p5+6p5' or '3*p3+p5+p7'."""
    parts = text.replace(" ", "").split("+")
    if not 1 <= len(parts) <= 3 or any(not p for p in parts):
        raise ValueError(f"malformed sum {text!r}: expected 1-3 '+'-joined terms")
    terms = []
    for part in parts:
        match = _TERM_RE.match(part)
        if not match:
            raise ValueError(f"malformed sum term {part!r}: expected [a*]pM")
        a = int(match.group(1)) if match.group(1) else 1
        m = int(match.group(2))
        if a < 1 or m < 3:
            raise ValueError(f"sum term {part!r} out of range (need a >= 1, M >= 3)")
        terms.append((a, m))
    return SumForm(tuple(terms), domain)


def term_constraint(m: int) -> Constraint:
    """Residue condition the slot coordinate t must satisfy, up to sign.

    t = 2(m-2)x - (m-4) for some integer x iff t is congruent to
    +/-(m-4) mod 2(m-2); order 5 is exactly coprime-to-6, order 3 is
    exactly odd.
    """
    if m == 5:
        return COPRIME6
    if m == 3:
        return ODD
    q = 2 * (m - 2)
    return residue_set(q, {(m - 4) % q, (-(m - 4)) % q})


def decode_index(m: int, t: int) -> int | None:
    """Polygonal index x with coordinate 2(m-2)x - (m-4) equal to t or -t.

    Returns None when neither sign decodes.  When both signs decode (only
    possible for t odd at order 3, and at order 4) the index with the
    smaller absolute value wins, nonnegative on ties.
    """
    step = 2 * (m - 2)
    off = m - 4
    candidates = []
    for tt in (t, -t):
        if (tt + off) % step == 0:
            candidates.append((tt + off) // step)
    if not candidates:
        return None
    return min(candidates, key=lambda i: (abs(i), i < 0))


@dataclass(frozen=True)
class ReductionTarget:
    """Diagonal-form target of a sum: L*n + K = sum form[i] * t_i^2.

    Slot i corresponds to sum term i; constraints[i] is the residue
    condition of term_constraint and decodes back to a polygonal index.
    """

    multiplier: int
    constant: int
    form: tuple[int, ...]
    constraints: tuple[Constraint, ...]


@lru_cache(maxsize=None)
def reduction_for_sum(sum_form: SumForm) -> ReductionTarget:
    """Derive the reduction target of a sum by square-completing each term."""
    comps = [square_complete(m) for _, m in sum_form.terms]
    mult = lcm(*(comp.A // gcd(comp.A, a) for comp, (a, _) in zip(comps, sum_form.terms)))
    coeffs = tuple(mult * a // comp.A for comp, (a, _) in zip(comps, sum_form.terms))
    const = sum(s * comp.B for s, comp in zip(coeffs, comps))
    cons = tuple(term_constraint(m) for _, m in sum_form.terms)
    return ReductionTarget(mult, const, coeffs, cons)
