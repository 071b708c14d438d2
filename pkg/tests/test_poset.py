from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius_dual import (
    RationalMatrix,
    build_poset,
    moebius_matrix,
    product_poset,
    transpose_pair,
    zeta_matrix,
)
from moebius_dual.errors import PartialOrderViolation, SizeOverflow


def chain(n):
    return build_poset(range(n), lambda a, b: a <= b)


def divisibility(n):
    return build_poset(range(1, n + 1), lambda a, b: b % a == 0)


def test_validation_witnesses():
    with pytest.raises(PartialOrderViolation) as e:
        build_poset([0, 1], lambda a, b: a < b)
    assert e.value.axiom == "reflexivity"
    with pytest.raises(PartialOrderViolation) as e:
        build_poset([0, 1], lambda a, b: True)
    assert e.value.axiom == "antisymmetry"
    rel = {(0, 1), (1, 2)}
    with pytest.raises(PartialOrderViolation) as e:
        build_poset([0, 1, 2], lambda a, b: a == b or (a, b) in rel)
    assert e.value.axiom == "transitivity"
    assert e.value.witness == (0, 1, 2)


def test_index_order_is_stable_linear_extension():
    # input already a linear extension is kept verbatim
    p = divisibility(12)
    assert p.elements == tuple(range(1, 13))
    # a scrambled input is re-sorted; ties break by input position, so 4
    # (listed first) precedes the incomparable 3
    q = build_poset([4, 2, 1, 3], lambda a, b: b % a == 0)
    assert q.elements == (1, 2, 4, 3)
    assert q.leq(2, 4) and not q.leq(2, 3)
    order = {e: i for i, e in enumerate(q.elements)}
    assert all(order[a] <= order[b] for a in q.elements for b in q.elements
               if q.leq(a, b))


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        build_poset([1, 1], lambda a, b: a <= b)


def test_zeta_and_moebius_chain():
    zp = moebius_matrix(chain(4))
    assert zp.zeta @ zp.moebius == RationalMatrix.identity(4)
    # chain Moebius: 1 on the diagonal, -1 on the superdiagonal
    for i in range(4):
        for j in range(4):
            expected = 1 if i == j else (-1 if j == i + 1 else 0)
            assert zp.moebius[i, j] == expected
    assert zp.mu_value(0, 1) == -1
    assert zp.mu_value(0, 0) == 1


def test_moebius_against_gauss_jordan_oracle():
    for poset in (chain(6), divisibility(12)):
        zp = moebius_matrix(poset)
        assert zp.moebius == zeta_matrix(poset).inverse()


def test_transpose_pair():
    zp = moebius_matrix(divisibility(8))
    zt, mt = transpose_pair(zp)
    assert zt @ mt == RationalMatrix.identity(8)
    assert zt == zp.zeta.T and mt == zp.moebius.T


def test_product_poset_moebius_factorizes():
    p1, p2 = chain(3), divisibility(6)
    zp1, zp2 = moebius_matrix(p1), moebius_matrix(p2)
    prod = product_poset(p1, p2)
    zp = moebius_matrix(prod)
    for (a1, a2) in prod.elements:
        for (b1, b2) in prod.elements:
            if prod.leq((a1, a2), (b1, b2)):
                assert zp.mu_value((a1, a2), (b1, b2)) == zp1.mu_value(
                    a1, b1
                ) * zp2.mu_value(a2, b2)


def test_product_poset_cap():
    with pytest.raises(SizeOverflow):
        product_poset(chain(80), chain(80), cap=4096)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(min_value=1, max_value=60), min_size=1, max_size=7))
def test_random_divisibility_subposets_invert(labels):
    poset = build_poset(sorted(labels), lambda a, b: b % a == 0)
    zp = moebius_matrix(poset)
    n = len(labels)
    assert zp.zeta @ zp.moebius == RationalMatrix.identity(n)
    assert zp.moebius @ zp.zeta == RationalMatrix.identity(n)
    # mu values are integers and mu(a,a) = 1
    for a in poset.elements:
        assert zp.mu_value(a, a) == 1
    for v in zp.mu.values():
        assert isinstance(v, int)


def test_up_down_sets():
    p = divisibility(12)
    i = p.index[2]
    ups = {p.elements[j] for j in p.up_idx(i)}
    downs = {p.elements[j] for j in p.down_idx(i)}
    assert ups == {2, 4, 6, 8, 10, 12}
    assert downs == {1, 2}
    assert all(p.leq_idx(a, b) for a, b in p.comparable_pairs())
