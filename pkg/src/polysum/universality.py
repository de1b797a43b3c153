"""Exhaustive desk-scale universality checks and counterexample search.

A sum is universal over its domain when every natural number up to the
scanned bound is representable.  Scans run over precomputed sorted value
tables of each term (index bound: the least |index| whose term value
already exceeds the target), folded into a reachability bitmap, so a
range scan over [0, N] costs a few vectorized passes rather than a
triple loop.  Results are independent of any partitioning of the range.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polygonal import PolygonalKind
from .sums import SumForm

__all__ = [
    "ScanReport",
    "check_range",
    "find_counterexample",
    "theorem10_filter",
    "conjecture10_check",
    "THEOREM10_PAIRS",
    "CONJECTURE10_PAIRS",
    "KNOWN_UNIVERSAL_PAIRS",
]

# pairs (b, c) with p5 + b*p5 + c*p5 universal over Z, per the
# classification of candidate triples (a=1, order 5) -- 20 in all
THEOREM10_PAIRS: tuple[tuple[int, int], ...] = tuple(
    [(1, k) for k in range(1, 11) if k != 7]
    + [(2, 2), (2, 3), (2, 4), (2, 6), (2, 8)]
    + [(3, 3), (3, 4), (3, 6), (3, 7), (3, 8), (3, 9)]
)

# the six pairs with previously published proofs
KNOWN_UNIVERSAL_PAIRS: tuple[tuple[int, int], ...] = (
    (1, 1), (1, 2), (1, 4), (1, 5), (2, 2), (2, 4),
)

# the remaining conjectured pairs (14)
CONJECTURE10_PAIRS: tuple[tuple[int, int], ...] = tuple(
    p for p in THEOREM10_PAIRS if p not in KNOWN_UNIVERSAL_PAIRS
)


@dataclass(frozen=True)
class ScanReport:
    """Outcome of scanning one sum over [0, N].

    first_failure is None when every n is representable.  witness_source
    records how per-n representability was established: "brute-force"
    for the value-table scan, "pipeline" when constructive witnesses were
    produced and verified for every n.
    """

    sum: SumForm
    bound: int
    first_failure: int | None
    witness_source: str = "brute-force"

    @property
    def ok(self) -> bool:
        return self.first_failure is None


@lru_cache(maxsize=None)
def _term_values(coeff: int, order: int, bound: int, naturals: bool) -> tuple[int, ...]:
    kind = PolygonalKind(order)
    return tuple(coeff * v for v in kind.values_up_to(bound // coeff, naturals=naturals))


def _reachable_mask(sum_form: SumForm, bound: int) -> np.ndarray:
    naturals = sum_form.domain == "N"
    mask = np.zeros(bound + 1, dtype=bool)
    mask[0] = True
    for coeff, order in sum_form.terms:
        vals = _term_values(coeff, order, bound, naturals)
        nxt = np.zeros(bound + 1, dtype=bool)
        for v in vals:
            nxt[v:] |= mask[: bound + 1 - v]
        mask = nxt
    return mask


def check_range(sum_form: SumForm, bound: int, *, witnesses: str = "brute-force") -> ScanReport:
    """Decide representability of every n <= bound; report the first gap.

    witnesses="pipeline" additionally constructs and verifies a
    certificate for every n (supported sums over Z only) and cross-checks
    against the table scan.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if witnesses not in ("brute-force", "pipeline"):
        raise ValueError(f"unknown witness source {witnesses!r}")
    mask = _reachable_mask(sum_form, bound)
    misses = np.nonzero(~mask)[0]
    first = int(misses[0]) if misses.size else None

    if witnesses == "pipeline":
        from . import certify, pipelines

        pipelines.warm_caches(sum_form, bound)
        for n in range(bound + 1):
            _, cert = pipelines.witness_for_sum(sum_form, n)
            result = certify.verify(cert)
            if not result:
                raise AssertionError(f"pipeline certificate failed at n={n}: {result.reason}")
            if not mask[n]:
                raise AssertionError(f"table scan missed n={n} but a witness exists")
        return ScanReport(sum_form, bound, first, "pipeline")
    return ScanReport(sum_form, bound, first)


def find_counterexample(sum_form: SumForm, bound: int) -> int | None:
    """Least n <= bound with no representation, or None."""
    return check_range(sum_form, bound).first_failure


def _pentagonal_sum(b: int, c: int) -> SumForm:
    return SumForm(((1, 5), (b, 5), (c, 5)))


def theorem10_filter(b_max: int, c_max: int, bound: int) -> list[tuple[int, int]]:
    """All pairs b <= c within bounds whose sum survives the scan to `bound`.

    Monotone in the bound: a larger scan can only remove pairs.
    """
    if b_max < 1 or c_max < 1:
        raise ValueError("bounds must be positive")
    out = []
    for b in range(1, b_max + 1):
        for c in range(b, c_max + 1):
            if check_range(_pentagonal_sum(b, c), bound).ok:
                out.append((b, c))
    return out


def conjecture10_check(bound: int) -> dict[tuple[int, int], ScanReport]:
    """ScanReport for each of the 14 conjectured pairs (evidence, not proof)."""
    return {
        (b, c): check_range(_pentagonal_sum(b, c), bound)
        for b, c in CONJECTURE10_PAIRS
    }
