"""Representations of integers by diagonal ternary quadratic forms.

A diagonal form a*x^2 + b*y^2 + c*z^2 is searched exhaustively over
|x| <= isqrt(n/a), |y| <= isqrt(n/b), |z| <= isqrt(n/c), optionally with a
per-coordinate congruence constraint (parity, coprimality, residue set).

Canonical witness ordering (stable across releases, golden tests depend
on it): representations are compared lexicographically by
(|x|, |y|, |z|, sign pattern), where in the sign pattern a nonnegative
coordinate sorts before a negative one, earlier coordinates first.  The
search enumerates |x| ascending, then |y| ascending; |z| is forced by the
remaining budget; sign combinations are tried (+,-) per coordinate in
order.  Constraints are tested on the signed coordinate t itself, never
on |t|.

The x-outer loop may skip a residual budget that the inner binary form
b*y^2 + c*z^2 cannot represent at all; this pruning is table-driven and
cannot change the canonical answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import NamedTuple

import numpy as np

from .errors import SearchExhausted

__all__ = [
    "DiagonalForm",
    "Constraint",
    "Representation",
    "UNCONSTRAINED",
    "ODD",
    "COPRIME3",
    "COPRIME6",
    "residue_set",
    "represent",
    "excluded_set_bruteforce",
    "dickson_member",
    "three_squares_odd",
    "DICKSON_FORMS",
]


@dataclass(frozen=True)
class DiagonalForm:
    """Coefficients of a*x^2 + b*y^2 + c*z^2, all positive."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        for coef in (self.a, self.b, self.c):
            if not isinstance(coef, int) or coef < 1:
                raise ValueError(f"form coefficients must be positive integers, got {self}")

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def value(self, x: int, y: int, z: int) -> int:
        return self.a * x * x + self.b * y * y + self.c * z * z


def _as_form(form) -> DiagonalForm:
    if isinstance(form, DiagonalForm):
        return form
    a, b, c = form
    return DiagonalForm(a, b, c)


class Representation(NamedTuple):
    """An integer triple witnessing a*x^2 + b*y^2 + c*z^2 = n."""

    x: int
    y: int
    z: int


@dataclass(frozen=True)
class Constraint:
    """A single-coordinate congruence predicate.

    kind is one of "any", "odd", "coprime" (to `modulus`), or "residues"
    (t mod modulus must lie in `residues`).  Residue sets are stored
    reduced and nonempty.
    """

    kind: str = "any"
    modulus: int = 0
    residues: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("any", "odd", "coprime", "residues"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind in ("coprime", "residues"):
            if self.modulus < 1:
                raise ValueError("constraint modulus must be >= 1")
        if self.kind == "residues":
            if not self.residues:
                raise ValueError("residue set must be nonempty")
            if any(not (0 <= r < self.modulus) for r in self.residues):
                raise ValueError("residues must be reduced mod the modulus")

    def allows(self, t: int) -> bool:
        if self.kind == "any":
            return True
        if self.kind == "odd":
            return t % 2 == 1
        if self.kind == "coprime":
            from math import gcd

            return gcd(t, self.modulus) == 1
        return t % self.modulus in self.residues


UNCONSTRAINED = Constraint("any")
ODD = Constraint("odd")
COPRIME3 = Constraint("coprime", 3)
COPRIME6 = Constraint("coprime", 6)


def residue_set(modulus: int, residues) -> Constraint:
    if modulus < 1:
        raise ValueError("constraint modulus must be >= 1")
    return Constraint("residues", modulus, frozenset(r % modulus for r in residues))


# --- pruning tables -----------------------------------------------------
#
# For the inner binary form b*y^2 + c*z^2 a byte mask over [0, bound]
# marks the representable residual budgets, restricted to the magnitude
# pattern of the (sign-symmetric) y/z constraints.  Only "any" and "odd"
# constraints are tabulated; anything else falls back to the plain scan.

_pair_masks: dict[tuple[int, int, bool, bool], tuple[int, np.ndarray]] = {}
_MASK_MIN_BOUND = 200_000


def _maskable(cons: Constraint) -> bool:
    return cons.kind in ("any", "odd")


def _build_pair_mask(b: int, c: int, odd_y: bool, odd_z: bool, bound: int) -> np.ndarray:
    mask = np.zeros(bound + 1, dtype=np.uint8)
    ymax = isqrt(bound // b)
    zs = np.arange(0, isqrt(bound // c) + 1, dtype=np.int64)
    if odd_z:
        zs = zs[zs % 2 == 1]
    czz = c * zs * zs
    for y in range(ymax + 1):
        if odd_y and y % 2 == 0:
            continue
        base = b * y * y
        vals = base + czz
        mask[vals[vals <= bound]] = 1
    return mask


def warm_pair_mask(b: int, c: int, odd_y: bool, odd_z: bool, bound: int) -> None:
    """Pre-size the pruning table for repeated searches up to `bound`."""
    key = (b, c, odd_y, odd_z)
    hit = _pair_masks.get(key)
    if hit is None or hit[0] < bound:
        _pair_masks[key] = (bound, _build_pair_mask(b, c, odd_y, odd_z, bound))


def _pair_mask_for(b, c, cons_y, cons_z, bound):
    if bound < _MASK_MIN_BOUND or not (_maskable(cons_y) and _maskable(cons_z)):
        return None
    key = (b, c, cons_y.kind == "odd", cons_z.kind == "odd")
    hit = _pair_masks.get(key)
    if hit is None or hit[0] < bound:
        # round up so repeated calls with growing n do not rebuild every time
        size = max(bound, _MASK_MIN_BOUND)
        size = 1 << size.bit_length()
        _pair_masks[key] = (size, _build_pair_mask(*key, size))
        hit = _pair_masks[key]
    return hit[1]


# --- canonical search ---------------------------------------------------


def _allowed_signs(mag: int, cons: Constraint) -> tuple[int, ...]:
    if mag == 0:
        return (1,) if cons.allows(0) else ()
    out = []
    if cons.allows(mag):
        out.append(1)
    if cons.allows(-mag):
        out.append(-1)
    return tuple(out)


def represent(form, n: int, cons=None) -> Representation | None:
    """Canonical constrained representation of n by the form, or None.

    `cons` is a triple of Constraint (None means unconstrained).  Absence
    of a representation is an ordinary answer, not an error.
    """
    frm = _as_form(form)
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b, c = frm.coeffs()
    if cons is None:
        cons = (None, None, None)
    cx, cy, cz = (k if k is not None else UNCONSTRAINED for k in cons)

    mask = _pair_mask_for(b, c, cy, cz, n)
    odd_y = cy.kind == "odd"
    cx_any = cx.kind == "any"
    cy_trivial = cy.kind == "any" or odd_y  # odd is sign-symmetric, wheel-enforced
    cz_any = cz.kind == "any"
    cz_odd = cz.kind == "odd"
    wheel = 2 * c if odd_y else c

    for xa in range(isqrt(n // a) + 1):
        if not cx_any:
            sxs = _allowed_signs(xa, cx)
            if not sxs:
                continue
        rem1 = n - a * xa * xa
        if mask is not None and not mask[rem1]:
            continue
        # admissible y residues: b*y^2 must match rem1 mod c (and parity)
        bases = [r for r in range(wheel)
                 if (not odd_y or r & 1) and (rem1 - b * r * r) % c == 0]
        if not bases:
            continue
        ymax = isqrt(rem1 // b)
        block = 0
        while block <= ymax:
            for base in bases:
                ya = block + base
                if ya > ymax:
                    break
                q = (rem1 - b * ya * ya) // c
                za = isqrt(q)
                if za * za != q:
                    continue
                if cz_odd:
                    if za % 2 == 0:
                        continue
                elif not cz_any:
                    szs = _allowed_signs(za, cz)
                    if not szs:
                        continue
                if not cy_trivial:
                    sys_ = _allowed_signs(ya, cy)
                    if not sys_:
                        continue
                return Representation(
                    (xa if cx_any else sxs[0] * xa),
                    (ya if cy_trivial else sys_[0] * ya),
                    (za if cz_any or cz_odd else szs[0] * za),
                )
            block += wheel
    return None


def excluded_set_bruteforce(form, limit: int) -> list[int]:
    """All n <= limit not represented by the form over Z, sorted ascending.

    Sieves every value of the form up to the limit; agrees with per-n
    represent() by construction.
    """
    frm = _as_form(form)
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    a, b, c = frm.coeffs()
    hit = np.zeros(limit + 1, dtype=bool)
    zs = np.arange(0, isqrt(limit // c) + 1, dtype=np.int64)
    czz = c * zs * zs
    for xa in range(isqrt(limit // a) + 1):
        axx = a * xa * xa
        for ya in range(isqrt((limit - axx) // b) + 1):
            vals = axx + b * ya * ya + czz
            hit[vals[vals <= limit]] = True
    return [int(n) for n in np.nonzero(~hit)[0]]


DICKSON_FORMS = {
    (1, 1, 3): (9, 9, 6),  # strip factors of 9, then residue 6 mod 9
    (1, 2, 3): (4, 16, 10),  # strip factors of 4, then residue 10 mod 16
    (1, 3, 3): (9, 3, 2),  # strip factors of 9, then residue 2 mod 3
}


def dickson_member(form, n: int) -> bool:
    """Closed-form membership in the excluded set of one of three forms.

    The excluded sets are {9^k(9l+6)}, {4^k(16l+10)} and {9^k(3l+2)} for
    x^2+y^2+3z^2, x^2+2y^2+3z^2 and x^2+3y^2+3z^2 respectively.  Decided
    by exact division: strip the power factor, test the residue.
    """
    key = _as_form(form).coeffs()
    if key not in DICKSON_FORMS:
        raise ValueError(f"no closed-form excluded set for form {key}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    strip, mod, res = DICKSON_FORMS[key]
    if n == 0:
        return False
    while n % strip == 0:
        n //= strip
    return n % mod == res


def three_squares_odd(n: int) -> Representation:
    """Odd x, y, z with x^2 + y^2 + z^2 = 8n + 3.

    Every integer congruent to 3 mod 8 is a sum of three squares, and all
    three must then be odd, so this always succeeds.  Canonical output:
    x >= y >= z >= 1 minimizing first the largest, then the middle
    coordinate (all signs nonnegative).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    target = 8 * n + 3
    mask = _pair_mask_for(1, 1, ODD, ODD, target)
    xa = isqrt(target // 3) | 1
    while 3 * xa * xa < target:
        xa += 2
    while xa * xa <= target:
        rem = target - xa * xa
        if mask is None or mask[rem]:
            ya = isqrt(rem // 2) | 1
            while 2 * ya * ya < rem:
                ya += 2
            while ya <= xa and ya * ya < rem:
                q = rem - ya * ya
                za = isqrt(q)
                if za * za == q and za % 2 == 1:
                    return Representation(xa, ya, za)
                ya += 2
        xa += 2
    raise SearchExhausted(f"no odd three-square representation of {target} found")
