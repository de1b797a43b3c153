import pytest

from polysum import (
    COPRIME6,
    ODD,
    SumForm,
    decode_index,
    parse_sum,
    reduce_pentagonal,
    reduction_for_sum,
)
from polysum.sums import term_constraint
from polysum.ternary import residue_set


def test_parse_sum_accepts_both_coefficient_spellings():
    assert parse_sum("p5+2p5+6p5").terms == ((1, 5), (2, 5), (6, 5))
    assert parse_sum("3*p3+p5+p7").terms == ((3, 3), (1, 5), (1, 7))
    assert parse_sum("3p3+p5+p7").terms == ((3, 3), (1, 5), (1, 7))
    assert parse_sum("p11").terms == ((1, 11),)
    assert parse_sum("p3+p5", "N").domain == "N"


@pytest.mark.parametrize("bad", [
    "", "p5+", "+p5", "p5+p5+p5+p5", "q5", "p2", "0p5", "p5*2", "p5 + junk", "2*2*p5",
])
def test_parse_sum_rejects(bad):
    with pytest.raises(ValueError):
        parse_sum(bad)


def test_sum_str_roundtrip():
    for text in ("p5+2p5+6p5", "3p3+p5+p7", "p3+p5+p11"):
        assert str(parse_sum(text)) == text


def test_evaluate():
    sf = parse_sum("p5+2p5+6p5")
    assert sf.evaluate((0, 0, 0)) == 0
    assert sf.evaluate((1, 1, -1)) == 1 + 2 * 1 + 6 * 2
    with pytest.raises(ValueError):
        sf.evaluate((1, 2))


def test_reduce_pentagonal_examples():
    r = reduce_pentagonal(1, 3)
    assert (r.multiplier, r.constant, r.form) == (24, 5, (1, 1, 3))
    assert all(c == COPRIME6 for c in r.constraints)
    r = reduce_pentagonal(3, 3)
    assert (r.multiplier, r.constant, r.form) == (24, 7, (1, 3, 3))
    r = reduce_pentagonal(2, 6)
    assert (r.multiplier, r.constant, r.form) == (24, 9, (1, 2, 6))


def test_reduction_for_mixed_sums():
    r = reduction_for_sum(parse_sum("p3+p5+p11"))
    assert (r.multiplier, r.constant, r.form) == (72, 61, (9, 3, 1))
    assert r.constraints == (ODD, COPRIME6, residue_set(18, (7, 11)))

    r = reduction_for_sum(parse_sum("3p3+p5+p7"))
    assert (r.multiplier, r.constant, r.form) == (120, 77, (45, 5, 3))
    assert r.constraints == (ODD, COPRIME6, residue_set(10, (3, 7)))


def test_term_constraint_shapes():
    assert term_constraint(5) == COPRIME6
    assert term_constraint(3) == ODD
    assert term_constraint(7) == residue_set(10, (3, 7))
    assert term_constraint(11) == residue_set(18, (7, 11))


def test_decode_index_examples():
    assert decode_index(5, 5) == 1
    assert decode_index(5, -7) == -1
    assert decode_index(5, 4) is None
    assert decode_index(11, 7) == 0
    assert decode_index(11, 11) == 1
    assert decode_index(7, -3) == 0
    assert decode_index(3, 1) == 0
    # both signs decode at order 3; the smaller |index| wins
    assert decode_index(3, -5) == 2
    assert decode_index(3, 5) == 2


def test_decode_encode_roundtrip():
    from polysum import PolygonalKind, square_complete

    for m in (3, 5, 7, 11):
        comp = square_complete(m)
        for x in range(-40, 41):
            t = comp.coord(x)
            idx = decode_index(m, t)
            assert idx is not None
            # decoding then re-encoding reproduces |t|
            assert abs(comp.coord(idx)) == abs(t)
            assert PolygonalKind(m).value(idx) == PolygonalKind(m).value(x)


def test_pentagonal_decode_iff_unit_class():
    for t in range(-60, 61):
        decodes = decode_index(5, t) is not None
        assert decodes == (t % 6 == 5 or (-t) % 6 == 5)


def test_sum_form_validation():
    with pytest.raises(ValueError):
        SumForm(())
    with pytest.raises(ValueError):
        SumForm(((1, 5),) * 4)
    with pytest.raises(ValueError):
        SumForm(((0, 5),))
    with pytest.raises(ValueError):
        SumForm(((1, 2),))
    with pytest.raises(ValueError):
        SumForm(((1, 5),), domain="Q")
