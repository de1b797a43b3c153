"""Certificates: data model, canonical JSON serialization, verification.

A certificate records one full derivation chain: the reduced target
equation L*n + K = s1*t1^2 + s2*t2^2 + s3*t3^2, the initial ternary
representation it started from (with the search constraints used), every
rewrite step with its slot/sign/divisor binding, the final constrained
representation, and the decoded polygonal indices.

verify() re-derives everything from scratch using only the polygonal,
ternary and transforms machinery; recorded intermediate values are
checked, never trusted.  The rule vocabulary is closed: the six rewrite
rules plus the "direct-search" and "three-squares" source kinds.
Anything else fails verification (schema evolution happens through the
version tag, not silent acceptance).

Serialization is canonical: fixed field order, all integers as decimal
strings, two-space indentation, trailing newline.  Serializing the same
certificate twice yields byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CertificateError
from .sums import ReductionTarget, SumForm, decode_index, reduction_for_sum
from .ternary import Constraint
from .transforms import RULES, RewriteStep

__all__ = [
    "SourceRep",
    "FinalMap",
    "Certificate",
    "VerifyResult",
    "verify",
    "to_json",
    "from_json",
    "roundtrip",
    "write_certificate",
    "read_certificate",
    "CERTIFICATE_VERSION",
    "SOURCE_KINDS",
]

CERTIFICATE_VERSION = "1"
SOURCE_KINDS = ("direct-search", "three-squares")


@dataclass(frozen=True, slots=True)
class SourceRep:
    """The initial representation a chain starts from.

    kind "direct-search" is a constrained exhaustive ternary search;
    kind "three-squares" is the all-odd three-square decomposition of a
    number congruent to 3 mod 8.
    """

    kind: str
    form: tuple[int, int, int]
    constraints: tuple[Constraint, Constraint, Constraint]
    target: int
    coords: tuple[int, int, int]


@dataclass(frozen=True, slots=True)
class FinalMap:
    """How the final chain state maps onto the reduction target slots.

    Target slot i reads state slot slots[i]; its coordinate is the state
    coordinate divided (exactly) by divisors[i], absorbing moves like
    "the even coordinate u = 2r contributes 4r^2".
    """

    slots: tuple[int, int, int]
    divisors: tuple[int, int, int]
    coords: tuple[int, int, int]


@dataclass(frozen=True, slots=True)
class Certificate:
    version: str
    sum: SumForm
    n: int
    reduction: ReductionTarget
    source: SourceRep
    steps: tuple[RewriteStep, ...]
    final: FinalMap
    indices: tuple[int, int, int]
    fallback: bool = False


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(reason: str) -> VerifyResult:
    return VerifyResult(False, reason)


def verify(cert: Certificate) -> VerifyResult:
    """Re-derive and check every certificate invariant from scratch.

    True iff (1) replaying the steps from the initial representation
    yields the final one, every rule precondition holding at application
    time, (2) the final representation satisfies the reduction's form,
    value L*n+K and per-slot constraints, and (3) the decoded indices
    evaluate to n under the sum.
    """
    if cert.version != CERTIFICATE_VERSION:
        return _fail(f"version: unsupported {cert.version!r}")
    if cert.n < 0:
        return _fail("n: negative")

    # the reduction is re-derived, never trusted
    try:
        derived = reduction_for_sum(cert.sum)
    except (ValueError, TypeError) as exc:
        return _fail(f"sum: {exc}")
    if derived != cert.reduction:
        return _fail("reduction: does not match the one derived from the sum")

    src = cert.source
    if src.kind not in SOURCE_KINDS:
        return _fail(f"source.kind: unknown {src.kind!r}")
    if len(src.form) != 3 or len(src.coords) != 3 or len(src.constraints) != 3:
        return _fail("source: form/coords/constraints must have three entries")
    if any(a < 1 for a in src.form):
        return _fail("source.form: coefficients must be positive")
    value = sum(a * t * t for a, t in zip(src.form, src.coords))
    if value != src.target:
        return _fail(f"source: coords give {value}, recorded target {src.target}")
    for i, (cons, t) in enumerate(zip(src.constraints, src.coords)):
        if not cons.allows(t):
            return _fail(f"source.coords[{i}]: violates search constraint")
    if src.kind == "three-squares":
        if src.form != (1, 1, 1):
            return _fail("source.form: three-squares source must be (1,1,1)")
        if any(t % 2 == 0 for t in src.coords):
            return _fail("source.coords: three-squares source must be all odd")
        if src.target % 8 != 3:
            return _fail("source.target: three-squares target must be 3 mod 8")

    coeffs = list(src.form)
    coords = list(src.coords)
    total = src.target

    for i, step in enumerate(cert.steps):
        where = f"steps[{i}]"
        spec = RULES.get(step.rule)
        if spec is None:
            return _fail(f"{where}.rule: unknown rule {step.rule!r}")
        k = spec.arity
        if not (len(step.slots) == len(step.signs) == len(step.divisors)
                == len(step.inputs) == len(step.outputs) == k):
            return _fail(f"{where}: expected {k} slots/signs/divisors/inputs/outputs")
        if len(set(step.slots)) != k or any(not 0 <= s <= 2 for s in step.slots):
            return _fail(f"{where}.slots: must be distinct indices in 0..2")
        if any(s not in (1, -1) for s in step.signs):
            return _fail(f"{where}.signs: must be +1 or -1")
        if any(d < 1 for d in step.divisors):
            return _fail(f"{where}.divisors: must be >= 1")

        bound = []
        for t in range(k):
            c = coords[step.slots[t]]
            d = step.divisors[t]
            if c % d:
                return _fail(f"{where}.divisors[{t}]: {c} not divisible by {d}")
            bound.append(step.signs[t] * (c // d))
        if tuple(bound) != step.inputs:
            return _fail(f"{where}.inputs: recorded {step.inputs}, state gives {tuple(bound)}")

        eff = [coeffs[step.slots[t]] * step.divisors[t] ** 2 for t in range(k)]
        shared, rem = divmod(eff[0], spec.in_pattern[0])
        if rem or shared < 1 or any(e != shared * p for e, p in zip(eff, spec.in_pattern)):
            return _fail(f"{where}: coefficients {tuple(eff)} do not fit rule {step.rule}")

        try:
            outs = tuple(spec.apply(step.inputs))
        except ValueError as exc:
            return _fail(f"{where}: precondition violated: {exc}")
        if outs != step.outputs:
            return _fail(f"{where}.outputs: recorded {step.outputs}, replay gives {outs}")
        if spec.value_of(outs) != step.value:
            return _fail(f"{where}.value: recorded {step.value}, replay gives {spec.value_of(outs)}")

        for t in range(k):
            coords[step.slots[t]] = outs[t]
            coeffs[step.slots[t]] = shared * spec.out_pattern[t]
        total *= spec.value_scale

    red = cert.reduction
    expected = red.multiplier * cert.n + red.constant
    if total != expected:
        return _fail(f"value: chain carries {total}, target needs {expected}")
    if sum(a * t * t for a, t in zip(coeffs, coords)) != expected:
        return _fail("value: final state does not sum to L*n+K")

    fin = cert.final
    if sorted(fin.slots) != [0, 1, 2]:
        return _fail("final.slots: must be a permutation of 0,1,2")
    for i in range(3):
        sl, d, t = fin.slots[i], fin.divisors[i], fin.coords[i]
        if d < 1:
            return _fail(f"final.divisors[{i}]: must be >= 1")
        c = coords[sl]
        if c % d or c // d != t:
            return _fail(f"final.coords[{i}]: state slot {sl} gives {c}/{d}, recorded {t}")
        if coeffs[sl] * d * d != red.form[i]:
            return _fail(f"final.coords[{i}]: coefficient {coeffs[sl] * d * d} != target {red.form[i]}")
        if not red.constraints[i].allows(t):
            return _fail(f"final.coords[{i}]: {t} violates the target constraint")

    for i, ((_, m), t) in enumerate(zip(cert.sum.terms, fin.coords)):
        idx = decode_index(m, t)
        if idx is None:
            return _fail(f"indices[{i}]: coordinate {t} does not decode for order {m}")
        if idx != cert.indices[i]:
            return _fail(f"indices[{i}]: recorded {cert.indices[i]}, decode gives {idx}")
    if cert.sum.evaluate(cert.indices) != cert.n:
        return _fail(f"indices: sum evaluates to {cert.sum.evaluate(cert.indices)}, not {cert.n}")
    return VerifyResult(True)


# --- canonical serialization ---------------------------------------------


def _cons_to_dict(c: Constraint) -> dict:
    d = {"kind": c.kind}
    if c.kind in ("coprime", "residues"):
        d["modulus"] = str(c.modulus)
    if c.kind == "residues":
        d["residues"] = [str(r) for r in sorted(c.residues)]
    return d


def _ints(values) -> list[str]:
    return [str(v) for v in values]


def to_json_dict(cert: Certificate) -> dict:
    return {
        "version": cert.version,
        "sum": {
            "terms": [[str(a), str(m)] for a, m in cert.sum.terms],
            "domain": cert.sum.domain,
        },
        "n": str(cert.n),
        "reduction": {
            "multiplier": str(cert.reduction.multiplier),
            "constant": str(cert.reduction.constant),
            "form": _ints(cert.reduction.form),
            "constraints": [_cons_to_dict(c) for c in cert.reduction.constraints],
        },
        "source": {
            "kind": cert.source.kind,
            "form": _ints(cert.source.form),
            "constraints": [_cons_to_dict(c) for c in cert.source.constraints],
            "target": str(cert.source.target),
            "coords": _ints(cert.source.coords),
        },
        "steps": [
            {
                "rule": s.rule,
                "slots": _ints(s.slots),
                "signs": _ints(s.signs),
                "divisors": _ints(s.divisors),
                "inputs": _ints(s.inputs),
                "outputs": _ints(s.outputs),
                "value": str(s.value),
            }
            for s in cert.steps
        ],
        "final": {
            "slots": _ints(cert.final.slots),
            "divisors": _ints(cert.final.divisors),
            "coords": _ints(cert.final.coords),
        },
        "indices": _ints(cert.indices),
        "fallback": cert.fallback,
    }


def to_json(cert: Certificate) -> str:
    """Canonical text form: fixed field order, decimal-string integers."""
    return json.dumps(to_json_dict(cert), indent=2, ensure_ascii=True) + "\n"


def _want(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise CertificateError(where, "expected an object")
    if key not in obj:
        raise CertificateError(f"{where}.{key}", "missing field")
    return obj[key]


def _int_of(v, where: str) -> int:
    if not isinstance(v, str):
        raise CertificateError(where, f"expected a decimal string, got {type(v).__name__}")
    try:
        return int(v, 10)
    except ValueError:
        raise CertificateError(where, f"not a decimal integer: {v!r}") from None


def _int_list(v, where: str, length: int | None = None) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise CertificateError(where, "expected a list")
    if length is not None and len(v) != length:
        raise CertificateError(where, f"expected {length} entries, got {len(v)}")
    return tuple(_int_of(x, f"{where}[{i}]") for i, x in enumerate(v))


def _cons_of(v, where: str) -> Constraint:
    kind = _want(v, "kind", where)
    try:
        if kind in ("any", "odd"):
            return Constraint(kind)
        if kind == "coprime":
            return Constraint("coprime", _int_of(_want(v, "modulus", where), f"{where}.modulus"))
        if kind == "residues":
            mod = _int_of(_want(v, "modulus", where), f"{where}.modulus")
            res = _int_list(_want(v, "residues", where), f"{where}.residues")
            return Constraint("residues", mod, frozenset(res))
    except ValueError as exc:
        raise CertificateError(where, str(exc)) from None
    raise CertificateError(f"{where}.kind", f"unknown constraint kind {kind!r}")


def _cons_list(v, where: str) -> tuple[Constraint, ...]:
    if not isinstance(v, list) or len(v) != 3:
        raise CertificateError(where, "expected 3 constraints")
    return tuple(_cons_of(c, f"{where}[{i}]") for i, c in enumerate(v))


def from_json_dict(doc: dict) -> Certificate:
    version = _want(doc, "version", "certificate")
    if not isinstance(version, str):
        raise CertificateError("version", "expected a string")

    sd = _want(doc, "sum", "certificate")
    terms_raw = _want(sd, "terms", "sum")
    if not isinstance(terms_raw, list) or not terms_raw:
        raise CertificateError("sum.terms", "expected a nonempty list")
    terms = []
    for i, pair in enumerate(terms_raw):
        vals = _int_list(pair, f"sum.terms[{i}]", 2)
        terms.append((vals[0], vals[1]))
    domain = _want(sd, "domain", "sum")
    try:
        sum_form = SumForm(tuple(terms), domain)
    except ValueError as exc:
        raise CertificateError("sum", str(exc)) from None

    n = _int_of(_want(doc, "n", "certificate"), "n")

    rd = _want(doc, "reduction", "certificate")
    try:
        reduction = ReductionTarget(
            _int_of(_want(rd, "multiplier", "reduction"), "reduction.multiplier"),
            _int_of(_want(rd, "constant", "reduction"), "reduction.constant"),
            _int_list(_want(rd, "form", "reduction"), "reduction.form", 3),
            _cons_list(_want(rd, "constraints", "reduction"), "reduction.constraints"),
        )
    except ValueError as exc:
        raise CertificateError("reduction", str(exc)) from None

    sc = _want(doc, "source", "certificate")
    kind = _want(sc, "kind", "source")
    if not isinstance(kind, str):
        raise CertificateError("source.kind", "expected a string")
    source = SourceRep(
        kind,
        _int_list(_want(sc, "form", "source"), "source.form", 3),
        _cons_list(_want(sc, "constraints", "source"), "source.constraints"),
        _int_of(_want(sc, "target", "source"), "source.target"),
        _int_list(_want(sc, "coords", "source"), "source.coords", 3),
    )

    steps_raw = _want(doc, "steps", "certificate")
    if not isinstance(steps_raw, list):
        raise CertificateError("steps", "expected a list")
    steps = []
    for i, sv in enumerate(steps_raw):
        where = f"steps[{i}]"
        rule = _want(sv, "rule", where)
        if not isinstance(rule, str):
            raise CertificateError(f"{where}.rule", "expected a string")
        steps.append(
            RewriteStep(
                rule,
                _int_list(_want(sv, "slots", where), f"{where}.slots"),
                _int_list(_want(sv, "signs", where), f"{where}.signs"),
                _int_list(_want(sv, "divisors", where), f"{where}.divisors"),
                _int_list(_want(sv, "inputs", where), f"{where}.inputs"),
                _int_list(_want(sv, "outputs", where), f"{where}.outputs"),
                _int_of(_want(sv, "value", where), f"{where}.value"),
            )
        )

    fd = _want(doc, "final", "certificate")
    final = FinalMap(
        _int_list(_want(fd, "slots", "final"), "final.slots", 3),
        _int_list(_want(fd, "divisors", "final"), "final.divisors", 3),
        _int_list(_want(fd, "coords", "final"), "final.coords", 3),
    )

    indices = _int_list(_want(doc, "indices", "certificate"), "indices", 3)
    fallback = _want(doc, "fallback", "certificate")
    if not isinstance(fallback, bool):
        raise CertificateError("fallback", "expected a boolean")

    return Certificate(version, sum_form, n, reduction, source, tuple(steps), final,
                       indices, fallback)


def from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise CertificateError("certificate", "top level must be an object")
    return from_json_dict(doc)


def roundtrip(cert: Certificate) -> Certificate:
    """Serialize then parse; the identity on every field."""
    return from_json(to_json(cert))


def write_certificate(cert: Certificate, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_json(cert))


def read_certificate(path) -> Certificate:
    with open(path, encoding="ascii") as fh:
        return from_json(fh.read())
