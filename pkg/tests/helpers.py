"""Shared oracles and corpus builders for the test suite.

Everything here is deliberately naive: independent reference
implementations the fast code paths are checked against.
"""

from __future__ import annotations

import dataclasses
from math import isqrt

from polysum import (
    Representation,
    UNCONSTRAINED,
    identity21_apply,
    jacobi_split,
)
from polysum.certify import Certificate
from polysum.polygonal import PolygonalKind
from polysum.transforms import RewriteStep


def naive_represent(form, n, cons=None):
    """Reference canonical search: full enumeration, explicit ordering."""
    a, b, c = form
    if cons is None:
        cons = (UNCONSTRAINED,) * 3
    cx, cy, cz = (k if k is not None else UNCONSTRAINED for k in cons)
    best = None
    for xa in range(isqrt(n // a) + 1):
        for ya in range(isqrt((n - a * xa * xa) // b) + 1):
            rem = n - a * xa * xa - b * ya * ya
            if rem % c:
                continue
            q = rem // c
            za = isqrt(q)
            if za * za != q:
                continue
            for sx in (1,) if xa == 0 else (1, -1):
                if not cx.allows(sx * xa):
                    continue
                for sy in (1,) if ya == 0 else (1, -1):
                    if not cy.allows(sy * ya):
                        continue
                    for sz in (1,) if za == 0 else (1, -1):
                        if not cz.allows(sz * za):
                            continue
                        key = (xa, ya, za, sx < 0, sy < 0, sz < 0)
                        if best is None or key < best[0]:
                            best = (key, Representation(sx * xa, sy * ya, sz * za))
    return None if best is None else best[1]


def naive_representable(sum_form, n):
    """Triple loop representability over the sum's domain."""
    (a1, m1), (a2, m2), (a3, m3) = sum_form.terms
    naturals = sum_form.domain == "N"
    k1, k2, k3 = PolygonalKind(m1), PolygonalKind(m2), PolygonalKind(m3)
    v1 = [a1 * v for v in k1.values_up_to(n // a1, naturals=naturals)]
    v2 = [a2 * v for v in k2.values_up_to(n // a2, naturals=naturals)]
    v3 = set(a3 * v for v in k3.values_up_to(n // a3, naturals=naturals))
    for x in v1:
        for y in v2:
            if x + y > n:
                continue
            if n - x - y in v3:
                return True
    return False


def odd_pair_values(bound):
    """All (x, y) in Z^2 with x^2 + 3y^2 <= bound, grouped by value."""
    out = {}
    for xa in range(isqrt(bound) + 1):
        for ya in range(isqrt((bound - xa * xa) // 3) + 1):
            w = xa * xa + 3 * ya * ya
            for x in {xa, -xa}:
                for y in {ya, -ya}:
                    out.setdefault(w, []).append((x, y))
    return out


# --- exhaustive transform sweeps -----------------------------------------


def sweep_identity21(bound):
    checked = 0
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x - y) % 2:
                continue
            for sign in (1, -1):
                u, v = identity21_apply(x, y, sign)
                assert u * u + 3 * v * v == x * x + 3 * y * y, (x, y, sign)
                checked += 1
    return checked


def sweep_lemma21(bound):
    from polysum import lemma21_rewrite

    checked = 0
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            w = x * x + 3 * y * y
            if w % 8 != 4:
                continue
            u, v = lemma21_rewrite(x, y)
            assert u % 2 == 1 and v % 2 == 1, (x, y, u, v)
            assert u * u + 3 * v * v == w
            checked += 1
    return checked


def sweep_lemma22(bound):
    from math import gcd

    from polysum import lemma22_rewrite

    checked = 0
    for x in range(-bound, bound + 1, 1):
        if x % 2 == 0 or x % 3 == 0:
            continue
        for y in range(-bound, bound + 1):
            if y % 2 == 0:
                continue
            u, v = lemma22_rewrite(x, y)
            assert gcd(u, 6) == 1 and gcd(v, 6) == 1, (x, y, u, v)
            assert u * u + 3 * v * v == x * x + 3 * y * y
            checked += 1
    return checked


def sweep_jacobi(bound):
    checked = 0
    for x in range(-bound, bound + 1):
        for y in range(-bound + (x % 2), bound + 1, 2):
            for z in range(-bound, bound + 1):
                u, v, w = jacobi_split(x, y, z)
                assert u * u + 2 * v * v + 6 * w * w == 3 * (x * x + y * y + z * z)
                checked += 1
    return checked


def sweep_coprime3(bound):
    from polysum import coprime3_rewrite_x2_2y2

    checked = 0
    for u in range(-bound, bound + 1):
        for v in range(-bound, bound + 1):
            w = u * u + 2 * v * v
            if w == 0 or w % 3:
                continue
            a, b = coprime3_rewrite_x2_2y2(u, v)
            assert a % 3 != 0 and b % 3 != 0, (u, v, a, b)
            assert a * a + 2 * b * b == w
            checked += 1
    return checked


def sweep_five_split(bound):
    from polysum import five_split

    checked = 0
    for a in range(-bound, bound + 1):
        if a % 2 == 0:
            continue
        for b in range(-bound, bound + 1):
            if b % 2 == 0 or (a * a + b * b) % 5:
                continue
            x, y = five_split(a, b)
            assert x % 2 == 1 and y % 2 == 1, (a, b, x, y)
            assert a * a + b * b == 5 * (x * x + y * y)
            checked += 1
    return checked


# --- mutation corpus ------------------------------------------------------


def _bump_tuple(t, i):
    return t[:i] + (t[i] + 1,) + t[i + 1:]


def mutation_corpus(cert: Certificate):
    """Single-field tampers guaranteed to be semantically detectable.

    Yields (label, mutant) pairs.  Provenance-only fields (source kind,
    fallback flag) are left alone: flipping them does not change what the
    certificate claims.
    """
    rep = dataclasses.replace
    yield "n+1", rep(cert, n=cert.n + 1)
    yield "version", rep(cert, version="999")

    red = cert.reduction
    yield "reduction.multiplier", rep(cert, reduction=rep(red, multiplier=red.multiplier + 1))
    yield "reduction.constant", rep(cert, reduction=rep(red, constant=red.constant + 1))
    for i in range(3):
        yield f"reduction.form[{i}]", rep(cert, reduction=rep(red, form=_bump_tuple(red.form, i)))

    terms = cert.sum.terms
    bumped = ((terms[0][0] + 1, terms[0][1]),) + terms[1:]
    yield "sum.coeff", rep(cert, sum=rep(cert.sum, terms=bumped))

    src = cert.source
    yield "source.target", rep(cert, source=rep(src, target=src.target + 1))
    for i in range(3):
        yield f"source.coords[{i}]", rep(cert, source=rep(src, coords=_bump_tuple(src.coords, i)))

    for si, step in enumerate(cert.steps):
        yield f"steps[{si}].inputs", rep(
            cert, steps=cert.steps[:si] + (rep(step, inputs=_bump_tuple(step.inputs, 0)),)
            + cert.steps[si + 1:])
        yield f"steps[{si}].outputs", rep(
            cert, steps=cert.steps[:si] + (rep(step, outputs=_bump_tuple(step.outputs, 0)),)
            + cert.steps[si + 1:])
        yield f"steps[{si}].value", rep(
            cert, steps=cert.steps[:si] + (rep(step, value=step.value + 1),)
            + cert.steps[si + 1:])
        other = "jacobi" if step.rule != "jacobi" else "lemma21"  # arity mismatch
        yield f"steps[{si}].rule-arity", rep(
            cert, steps=cert.steps[:si] + (rep(step, rule=other),) + cert.steps[si + 1:])
        yield f"steps[{si}].rule-unknown", rep(
            cert, steps=cert.steps[:si] + (rep(step, rule="frobnicate"),) + cert.steps[si + 1:])
        yield f"steps[{si}].slot-range", rep(
            cert, steps=cert.steps[:si] + (rep(step, slots=(9,) + step.slots[1:]),)
            + cert.steps[si + 1:])

    fin = cert.final
    for i in range(3):
        yield f"final.coords[{i}]", rep(cert, final=rep(fin, coords=_bump_tuple(fin.coords, i)))
    for i in range(3):
        yield f"indices[{i}]", rep(cert, indices=_bump_tuple(cert.indices, i))


def eval_sum(sum_form, indices):
    return sum_form.evaluate(indices)


def certificate_with_no_steps():
    """A hand-built valid certificate whose chain is empty.

    24*1 + 5 = 1 + 25 + 3 with every coordinate already coprime to 6, so
    the constrained direct search needs no rewrites at all.
    """
    from polysum import COPRIME6, SumForm
    from polysum.certify import CERTIFICATE_VERSION, FinalMap, SourceRep
    from polysum.sums import reduction_for_sum

    sum_form = SumForm(((1, 5), (1, 5), (3, 5)))
    red = reduction_for_sum(sum_form)
    cons = (COPRIME6,) * 3
    return Certificate(
        CERTIFICATE_VERSION, sum_form, 1, red,
        SourceRep("direct-search", (1, 1, 3), cons, 29, (1, 5, 1)),
        (),
        FinalMap((0, 1, 2), (1, 1, 1), (1, 5, 1)),
        (0, 1, 0),
        False,
    )
