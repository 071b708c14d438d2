from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius_dual import RationalMatrix, format_fraction, parse_fraction
from moebius_dual.errors import NonRationalEntry, SingularMatrix


def test_parse_and_format_roundtrip():
    for s in ["3/4", "-2/6", "5", "0", "-7"]:
        f = parse_fraction(s)
        assert parse_fraction(format_fraction(f)) == f
    assert format_fraction(Fraction(-2, 6)) == "-1/3"
    assert format_fraction(Fraction(4, 2)) == "2"


def test_parse_rejects_garbage():
    with pytest.raises(NonRationalEntry):
        parse_fraction("1.5")
    with pytest.raises(NonRationalEntry):
        parse_fraction("1/0")
    with pytest.raises(NonRationalEntry):
        parse_fraction(0.5)


def test_float_entries_rejected():
    with pytest.raises(NonRationalEntry):
        RationalMatrix([[0.5]])
    with pytest.raises(NonRationalEntry):
        RationalMatrix.diagonal([1, 2.0])


def test_basic_algebra():
    a = RationalMatrix([["1/2", 1], [0, 2]])
    b = RationalMatrix([[2, 0], [1, "1/3"]])
    assert (a @ b) == RationalMatrix([[2, "1/3"], [2, "2/3"]])
    assert (a + b - b) == a
    assert a.scale(2)[0, 0] == 1
    assert a.T[1, 0] == 1
    assert a.apply([1, 1]) == [Fraction(3, 2), Fraction(2)]
    assert a.power(0) == RationalMatrix.identity(2)
    assert a.power(2) == a @ a


def test_inverse_exact():
    a = RationalMatrix([[1, 2], [3, "7/2"]])
    inv = a.inverse()
    assert a @ inv == RationalMatrix.identity(2)
    assert inv @ a == RationalMatrix.identity(2)


def test_singular_raises():
    with pytest.raises(SingularMatrix):
        RationalMatrix([[1, 2], [2, 4]]).inverse()
    with pytest.raises(SingularMatrix):
        RationalMatrix([[1, 2, 3]]).inverse()


def test_nullspace_vector():
    a = RationalMatrix([[1, 2], [2, 4]])
    v = a.nullspace_vector()
    assert v is not None
    assert a.apply(v) == [Fraction(0), Fraction(0)]
    assert RationalMatrix.identity(3).nullspace_vector() is None


def test_predicates():
    p = RationalMatrix([["1/3", "2/3"], [1, 0]])
    assert p.is_stochastic() and p.is_substochastic() and p.is_nonnegative()
    q = RationalMatrix([["1/3", "1/3"], [1, 0]])
    assert q.is_substochastic() and not q.is_stochastic()
    assert not RationalMatrix([[-1]]).is_nonnegative()
    assert p.min_entry() == 0
    assert p.row_sums() == [Fraction(1), Fraction(1)]


def test_json_roundtrip_and_float_rejection():
    a = RationalMatrix([["1/2", "-3"], [0, "2/7"]])
    text = a.to_json(row_labels=["x", "y"], col_labels=["u", "v"])
    assert RationalMatrix.from_json(text) == a
    with pytest.raises(NonRationalEntry):
        RationalMatrix.from_json('{"rows":1,"cols":1,"entries":[[0.5]]}')


def test_csv_roundtrip():
    a = RationalMatrix([["1/2", "-3"], [0, "2/7"]])
    assert RationalMatrix.from_csv(a.to_csv()) == a
    labelled = a.to_csv(row_labels=["r0", "r1"], col_labels=["c0", "c1"])
    assert RationalMatrix.from_csv(labelled, has_labels=True) == a


small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=8
)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(small_fractions, min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_inverse_is_two_sided_when_it_exists(rows):
    m = RationalMatrix(rows)
    try:
        inv = m.inverse()
    except SingularMatrix:
        assert m.nullspace_vector() is not None
        return
    assert m @ inv == RationalMatrix.identity(3)
    assert inv @ m == RationalMatrix.identity(3)
