"""Value-preserving rewrites that strengthen congruence properties.

Each rule consumes a small tuple of integers representing a quadratic
value and returns an equal-value tuple with a stronger side condition:

    identity21        x^2 + 3y^2  ->  ((x+3y)/2)^2 + 3((x-y)/2)^2
    lemma21           x^2 + 3y^2 == 4 (mod 8)      ->  both parts odd
    lemma22           x, y odd, 3 does not divide x -> both coprime to 6
    coprime3_x2_2y2   u^2 + 2v^2 > 0 divisible by 3 -> both coprime to 3
    five_split        a, b odd, 5 | a^2+b^2 -> odd x, y with a^2+b^2 = 5(x^2+y^2)
    jacobi            3(x^2+y^2+z^2) = (x+y+z)^2 + 2((x+y-2z)/2)^2 + 6((x-y)/2)^2

All rules are pure and deterministic; replaying a rule on recorded
inputs reproduces the recorded outputs bit for bit, which is what makes
certificates checkable.  Where several valid outputs exist the canonical
one is returned, under the same ordering ternary.represent uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import SearchExhausted

__all__ = [
    "identity21_apply",
    "lemma21_rewrite",
    "lemma22_rewrite",
    "jacobi_split",
    "coprime3_rewrite_x2_2y2",
    "five_split",
    "RewriteStep",
    "RULES",
    "replay",
]


def identity21_apply(x: int, y: int, sign: int = 1) -> tuple[int, int]:
    """((x+3y')/2, (x-y')/2) for y' = sign*y; preserves x^2 + 3y^2.

    Requires x == y (mod 2) so both halves are integers.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if (x - y) % 2:
        raise ValueError(f"parity violation: need x == y (mod 2), got ({x}, {y})")
    yy = sign * y
    return (x + 3 * yy) // 2, (x - yy) // 2


def _odd_pair_search_x2_3y2(w: int) -> tuple[int, int]:
    # canonical odd pair (u, v) with u^2 + 3v^2 = w; defensive slow path
    for u in range(1, isqrt(w) + 1, 2):
        rem = w - u * u
        if rem % 3:
            continue
        q = rem // 3
        v = isqrt(q)
        if v * v == q and v % 2 == 1:
            return u, v
    raise SearchExhausted(f"no odd pair with u^2+3v^2 = {w}")


def lemma21_rewrite(x: int, y: int) -> tuple[int, int]:
    """Odd (u, v) with u^2 + 3v^2 = x^2 + 3y^2, given the value is 4 mod 8.

    A value 4 mod 8 forces x and y to share parity; an already odd pair
    passes through, an even pair becomes odd after one identity21 step.
    """
    w = x * x + 3 * y * y
    if w % 8 != 4:
        raise ValueError(f"x^2+3y^2 must be 4 (mod 8), got {w}")
    if x % 2:
        return x, y
    u, v = identity21_apply(x, y, 1)
    if u % 2 and v % 2:
        return u, v
    return _odd_pair_search_x2_3y2(w)  # unreachable in theory


def lemma22_rewrite(x: int, y: int) -> tuple[int, int]:
    """(u, v) coprime to 6 with u^2 + 3v^2 = x^2 + 3y^2.

    Needs x, y odd and x coprime to 3.  If y is already coprime to 3 the
    pair passes through; otherwise identity21 is applied with the sign
    that makes x and sign*y differ mod 4, which keeps both halves odd.
    """
    if x % 2 == 0 or y % 2 == 0:
        raise ValueError(f"x and y must both be odd, got ({x}, {y})")
    if x % 3 == 0:
        raise ValueError(f"x must be coprime to 3, got {x}")
    if y % 3:
        return x, y
    sign = 1 if (x - y) % 4 else -1
    return identity21_apply(x, y, sign)


def jacobi_split(x: int, y: int, z: int) -> tuple[int, int, int]:
    """(x+y+z, (x+y-2z)/2, (x-y)/2): u^2 + 2v^2 + 6w^2 = 3(x^2+y^2+z^2)."""
    if (x - y) % 2:
        raise ValueError(f"parity violation: need x == y (mod 2), got ({x}, {y})")
    return x + y + z, (x + y - 2 * z) // 2, (x - y) // 2


def coprime3_rewrite_x2_2y2(u: int, v: int) -> tuple[int, int]:
    """Canonical (a, b) coprime to 3 with a^2 + 2b^2 = u^2 + 2v^2.

    Requires the value positive and divisible by 3.  The canonical answer
    minimizes (|a|, |b|) lexicographically with nonnegative signs.
    """
    w = u * u + 2 * v * v
    if w <= 0:
        raise ValueError("u^2 + 2v^2 must be positive")
    if w % 3:
        raise ValueError(f"u^2 + 2v^2 must be divisible by 3, got {w}")
    for a in range(isqrt(w) + 1):
        if a % 3 == 0:
            continue
        rem = w - a * a
        if rem % 2:
            continue
        q = rem // 2
        b = isqrt(q)
        if b * b == q and b % 3:
            return a, b
    raise SearchExhausted(f"no pair coprime to 3 with a^2+2b^2 = {w}")


def five_split(a: int, b: int) -> tuple[int, int]:
    """Odd (x, y) with a^2 + b^2 = 5(x^2 + y^2) via x=(2a'+b)/5, y=(a'-2b)/5.

    Requires a, b odd and 5 | a^2 + b^2.  The sign of a is normalized so
    that a' == 2b (mod 5); + is preferred when both signs qualify.
    """
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError(f"a and b must both be odd, got ({a}, {b})")
    if (a * a + b * b) % 5:
        raise ValueError(f"a^2 + b^2 must be divisible by 5, got {a * a + b * b}")
    aa = a if (a - 2 * b) % 5 == 0 else -a
    if (aa - 2 * b) % 5:
        raise SearchExhausted(f"sign normalization failed for ({a}, {b})")
    return (2 * aa + b) // 5, (aa - 2 * b) // 5


@dataclass(frozen=True, slots=True)
class RewriteStep:
    """One recorded rule application inside a certificate.

    slots/signs/divisors say how the rule bound to the evolving
    representation: input t is signs[t] * (coordinate at slots[t]) / divisors[t],
    with the division exact.  inputs/outputs are the literal integers the
    rule consumed and produced; value is the preserved quadratic value
    (the common value of the rule identity, with shared coefficient
    factors stripped).
    """

    rule: str
    slots: tuple[int, ...]
    signs: tuple[int, ...]
    divisors: tuple[int, ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class RuleSpec:
    """Replay data for one rule: arity, coefficient pattern and semantics.

    in_pattern / out_pattern are the per-slot coefficient multipliers of
    the shared factor k, e.g. lemma22 maps coefficients (k, 3k) to
    (k, 3k) while five_split maps (k, k) to (5k, 5k).  value_of computes
    the preserved value from the (stripped) output tuple, and
    value_scale is how the total represented value changes (3 for the
    jacobi identity, 1 elsewhere).
    """

    arity: int
    in_pattern: tuple[int, ...]
    out_pattern: tuple[int, ...]
    apply: callable
    value_of: callable
    value_scale: int = 1


RULES: dict[str, RuleSpec] = {
    "identity21": RuleSpec(
        2, (1, 3), (1, 3), lambda t: identity21_apply(t[0], t[1], 1),
        lambda o: o[0] ** 2 + 3 * o[1] ** 2,
    ),
    "lemma21": RuleSpec(
        2, (1, 3), (1, 3), lambda t: lemma21_rewrite(t[0], t[1]),
        lambda o: o[0] ** 2 + 3 * o[1] ** 2,
    ),
    "lemma22": RuleSpec(
        2, (1, 3), (1, 3), lambda t: lemma22_rewrite(t[0], t[1]),
        lambda o: o[0] ** 2 + 3 * o[1] ** 2,
    ),
    "coprime3_x2_2y2": RuleSpec(
        2, (1, 2), (1, 2), lambda t: coprime3_rewrite_x2_2y2(t[0], t[1]),
        lambda o: o[0] ** 2 + 2 * o[1] ** 2,
    ),
    "five_split": RuleSpec(
        2, (1, 1), (5, 5), lambda t: five_split(t[0], t[1]),
        lambda o: 5 * (o[0] ** 2 + o[1] ** 2),
    ),
    "jacobi": RuleSpec(
        3, (1, 1, 1), (1, 2, 6), lambda t: jacobi_split(t[0], t[1], t[2]),
        lambda o: o[0] ** 2 + 2 * o[1] ** 2 + 6 * o[2] ** 2,
        value_scale=3,
    ),
}


def replay(rule: str, inputs: tuple[int, ...]) -> tuple[int, ...]:
    """Re-apply a named rule to recorded inputs (raises on unknown rule)."""
    spec = RULES.get(rule)
    if spec is None:
        raise ValueError(f"unknown rewrite rule {rule!r}")
    if len(inputs) != spec.arity:
        raise ValueError(f"rule {rule} expects {spec.arity} inputs, got {len(inputs)}")
    return tuple(spec.apply(inputs))
