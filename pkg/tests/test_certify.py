import dataclasses

import pytest

from polysum import witness_theorem11, witness_p3p5p11
from polysum.certify import (
    Certificate,
    from_json,
    read_certificate,
    roundtrip,
    to_json,
    verify,
    write_certificate,
)
from polysum.errors import CertificateError

import helpers


def test_pipeline_certificates_verify():
    for n in (0, 1, 7, 42, 500):
        _, cert = witness_theorem11(1, 3, n)
        assert verify(cert).ok
        _, cert = witness_p3p5p11(n)
        assert verify(cert).ok


def test_final_coordinate_tamper_detected():
    _, cert = witness_theorem11(1, 3, 5)
    fin = cert.final
    bad = dataclasses.replace(
        cert, final=dataclasses.replace(fin, coords=(fin.coords[0] + 1,) + fin.coords[1:]))
    result = verify(bad)
    assert not result.ok
    assert "final" in result.reason


def test_rule_swap_detected():
    # the (1,3) chain at n=2 starts from (1, 2, 4): its lemma21 step has
    # even inputs, so relabelling it lemma22 violates that rule's oddness
    _, cert = witness_theorem11(1, 3, 2)
    idx = next(i for i, s in enumerate(cert.steps) if s.rule == "lemma21")
    assert any(v % 2 == 0 for v in cert.steps[idx].inputs)
    swapped = dataclasses.replace(cert.steps[idx], rule="lemma22")
    bad = dataclasses.replace(
        cert, steps=cert.steps[:idx] + (swapped,) + cert.steps[idx + 1:])
    result = verify(bad)
    assert not result.ok
    assert f"steps[{idx}]" in result.reason


def test_unknown_rule_fails_verification():
    _, cert = witness_theorem11(3, 3, 9)
    swapped = dataclasses.replace(cert.steps[0], rule="made-up-rule")
    bad = dataclasses.replace(cert, steps=(swapped,) + cert.steps[1:])
    result = verify(bad)
    assert not result.ok
    assert "unknown rule" in result.reason


def test_version_gate():
    _, cert = witness_theorem11(1, 3, 3)
    bad = dataclasses.replace(cert, version="0")
    assert not verify(bad).ok


def test_empty_steps_certificate_is_valid_and_roundtrips():
    cert = helpers.certificate_with_no_steps()
    assert verify(cert).ok
    assert roundtrip(cert) == cert


def test_roundtrip_identity():
    for n in (0, 13, 222):
        for maker in (lambda k: witness_theorem11(2, 6, k), witness_p3p5p11):
            _, cert = maker(n)
            again = roundtrip(cert)
            assert again == cert
            assert verify(again).ok


def test_roundtrip_preserves_negative_coordinates():
    # n=2 of 3p3+p5+p7 decodes through a negative index
    from polysum import witness_3p3p5p7

    rep, cert = witness_3p3p5p7(2)
    assert min(cert.indices) < 0 or any(min(s.outputs) < 0 for s in cert.steps) \
        or min(cert.final.coords) < 0
    assert roundtrip(cert) == cert


def test_serialization_is_canonical():
    _, cert = witness_theorem11(3, 4, 77)
    text1 = to_json(cert)
    text2 = to_json(roundtrip(cert))
    assert text1 == text2
    assert text1.endswith("\n")
    assert to_json(cert) == to_json(cert)


def test_file_helpers(tmp_path):
    _, cert = witness_theorem11(3, 9, 64)
    path = tmp_path / "cert.json"
    write_certificate(cert, path)
    assert read_certificate(path) == cert


def test_malformed_json_reports_position():
    with pytest.raises(CertificateError) as err:
        from_json("{ not json ")
    assert "line" in str(err.value)


def test_missing_field_reports_path():
    _, cert = witness_theorem11(1, 3, 1)
    import json

    doc = json.loads(to_json(cert))
    del doc["reduction"]["constant"]
    with pytest.raises(CertificateError) as err:
        from_json(json.dumps(doc))
    assert "reduction.constant" in str(err.value)


def test_non_decimal_integer_rejected():
    _, cert = witness_theorem11(1, 3, 1)
    import json

    doc = json.loads(to_json(cert))
    doc["n"] = "0x2a"
    with pytest.raises(CertificateError) as err:
        from_json(json.dumps(doc))
    assert "n" in str(err.value)

    doc["n"] = 42  # raw number instead of a decimal string
    with pytest.raises(CertificateError):
        from_json(json.dumps(doc))


def test_top_level_must_be_object():
    with pytest.raises(CertificateError):
        from_json("[1, 2, 3]")


def test_mutation_corpus_spot():
    _, cert = witness_theorem11(2, 3, 19)
    labels = []
    for label, mutant in helpers.mutation_corpus(cert):
        labels.append(label)
        assert not verify(mutant).ok, label
    assert len(labels) > 20
