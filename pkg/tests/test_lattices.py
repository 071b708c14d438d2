import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius_dual import (
    Partition,
    RationalMatrix,
    Skeleton,
    bell_number,
    enumerate_partitions,
    partition_lattice,
    partition_moebius_closed_form,
    product_set_lattice,
    skeleton,
    skeleton_count,
    skeleton_order,
    skeletons_of,
    subset_lattice,
)
from moebius_dual.errors import InvalidSkeleton, NotComparable, SizeOverflow


def test_subset_lattice_canonical_order():
    lat = subset_lattice(3)
    els = lat.poset.elements
    assert els[0] == 0 and els[-1] == 0b111
    pops = [bin(m).count("1") for m in els]
    assert pops == sorted(pops)
    # total number of comparable pairs is 3^N, counting the diagonal
    assert len(lat.poset.comparable_pairs()) == 3 ** 3


def test_subset_mu_closed_form_matches_recursion():
    for n in range(0, 5):
        lat = subset_lattice(n)
        for i, j in lat.poset.comparable_pairs():
            a, b = lat.poset.elements[i], lat.poset.elements[j]
            assert lat.pair.moebius[i, j] == lat.mu_closed_form(a, b)
    with pytest.raises(NotComparable):
        subset_lattice(2).mu_closed_form(0b01, 0b10)


def test_subset_helpers():
    lat = subset_lattice(3)
    assert lat.mask_of([1, 3]) == 0b101
    assert lat.label(0b101) == "{1 3}"
    assert lat.label(0) == "{}"
    with pytest.raises(ValueError):
        lat.mask_of([4])
    with pytest.raises(SizeOverflow):
        subset_lattice(25)


def test_product_set_lattice_is_isomorphic_to_flat_subsets():
    prod = product_set_lattice(2, 2)
    flat = subset_lattice(4)
    for i, a in enumerate(prod.poset.elements):
        for j, b in enumerate(prod.poset.elements):
            same = prod.poset.leq(a, b) == flat.poset.leq(
                prod.flatten(a), prod.flatten(b)
            )
            assert same
            if prod.poset.leq(a, b):
                assert prod.mu_closed_form(a, b) == prod.pair.mu_value(a, b)
    with pytest.raises(SizeOverflow):
        product_set_lattice(4, 4)


def test_partition_encoding():
    p = Partition.from_atoms([{1, 2}, {3}])
    assert p.rgs == (0, 0, 1)
    assert str(p) == "{1 2}{3}"
    assert Partition.parse("{1 2}{3}") == p
    assert Partition.parse("0,0,1") == p
    assert Partition.singletons(3).num_atoms == 3
    assert Partition.one_block(3).num_atoms == 1
    with pytest.raises(ValueError):
        Partition((0, 2))  # skips label 1
    with pytest.raises(ValueError):
        Partition.from_atoms([{1, 2}, {2, 3}])


def test_refinement():
    fine = Partition.parse("{1}{2}{3 4}")
    coarse = Partition.parse("{1 2}{3 4}")
    assert fine.refines(coarse)
    assert not coarse.refines(fine)
    assert fine.refines(fine)


def test_enumeration_counts_are_bell_numbers():
    for n in range(1, 7):
        assert len(enumerate_partitions(n)) == bell_number(n)
    assert [bell_number(k) for k in range(6)] == [1, 1, 2, 5, 15, 52]


def test_partition_lattice_order_and_mu():
    pl = partition_lattice(3)
    els = pl.poset.elements
    assert els[0] == Partition.singletons(3)
    assert els[-1] == Partition.one_block(3)
    # mu(bottom, top) on three elements is 2
    assert pl.pair.mu_value(els[0], els[-1]) == 2
    for i, j in pl.poset.comparable_pairs():
        assert pl.pair.moebius[i, j] == partition_moebius_closed_form(els[i], els[j])


def test_partition_mu_closed_form_matches_recursion_up_to_5():
    for n in range(1, 6):
        pl = partition_lattice(n)
        els = pl.poset.elements
        for i, j in pl.poset.comparable_pairs():
            assert pl.pair.moebius[i, j] == partition_moebius_closed_form(els[i], els[j])
    with pytest.raises(NotComparable):
        partition_moebius_closed_form(
            Partition.parse("{1 2}{3}"), Partition.parse("{1}{2 3}")
        )


def test_skeletons():
    s = skeleton(Partition.parse("{1 3}{2}{4}"))
    assert s == Skeleton.of([2, 1, 1])
    assert str(s) == "2+1+1"
    assert Skeleton.parse("1+2+1") == s
    assert s.total == 4 and s.part_count == 3
    with pytest.raises(InvalidSkeleton):
        Skeleton((1, 2))  # not descending
    with pytest.raises(InvalidSkeleton):
        Skeleton.of([0, 2])


def test_skeleton_counts_partition_the_lattice():
    for n in range(1, 7):
        total = sum(skeleton_count(s, n) for s in skeletons_of(n))
        assert total == bell_number(n)
    # direct values
    assert skeleton_count(Skeleton.of([2, 1]), 3) == 3
    assert skeleton_count(Skeleton.of([2, 2]), 4) == 3
    with pytest.raises(InvalidSkeleton):
        skeleton_count(Skeleton.of([2, 2]), 3)


def test_skeleton_order_matches_refinement_on_representatives():
    # eta merge-coarsens to kappa iff some partition with skeleton eta
    # refines one with skeleton kappa
    for n in range(1, 6):
        parts = enumerate_partitions(n)
        for eta in skeletons_of(n):
            for kappa in skeletons_of(n):
                witness = any(
                    a.refines(b)
                    for a in parts
                    if skeleton(a) == eta
                    for b in parts
                    if skeleton(b) == kappa
                )
                assert skeleton_order(eta, kappa) == witness


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.data())
def test_random_partition_pairs_mu_consistency(n, data):
    parts = enumerate_partitions(n)
    a = data.draw(st.sampled_from(parts))
    b = data.draw(st.sampled_from(parts))
    if a.refines(b):
        mu = partition_moebius_closed_form(a, b)
        # sign alternates with the atom-count gap
        assert mu != 0
        assert (mu > 0) == ((a.num_atoms - b.num_atoms) % 2 == 0)
        assert skeleton_order(skeleton(a), skeleton(b))
