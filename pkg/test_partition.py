"""
Tests for unit partitions, block decomposition and the maximal commutative subalgebra Z(A) + A21
"""

import random
from itertools import product

import pytest

from steinberg_maxcomm.core.algebra import AlgebraElement
from steinberg_maxcomm.core.errors import HypothesisViolation, InvalidPartitionError
from steinberg_maxcomm.core.groupoid import (
    LazyPairGroupoid,
    cyclic_group_table,
    disjoint_union,
    group_groupoid,
    pair_groupoid,
)
from steinberg_maxcomm.core.partition import (
    EVEN_ODD,
    a_block_basis,
    all_partitions,
    block_decompose,
    build_T,
    center_iff_class_on_W,
    check_block_calculus,
    check_interior_lemma,
    check_lemma_item6_lazy,
    check_prime_hypotheses,
    check_trivial_center_lazy,
    derive,
    dimension_profile,
    jacobson_bound,
    lazy_a21_witness,
    lemma_items,
    make_partition,
    technical_lemma_suite,
    verify_candidate,
    verify_main_theorem,
)
from steinberg_maxcomm.core.subspace import SubspaceBasis, center_basis


def split(G, size):
    return make_partition(G, G.units[:size], G.units[size:])


def delta(G, x):
    return AlgebraElement.delta(G, x)


def components_partition():
    G = disjoint_union(pair_groupoid(2), pair_groupoid(2))
    u1 = [u for u in G.units if u[0] == 0]
    u2 = [u for u in G.units if u[0] == 1]
    return G, make_partition(G, u1, u2)


def test_make_partition_rejects_bad_splits():
    G = pair_groupoid(3)
    with pytest.raises(InvalidPartitionError):
        make_partition(G, [], G.units)
    with pytest.raises(InvalidPartitionError):
        make_partition(G, G.units[:2], G.units[1:])
    with pytest.raises(InvalidPartitionError):
        make_partition(G, G.units[:1], G.units[1:2])
    with pytest.raises(InvalidPartitionError):
        make_partition(G, [(1, 2)], G.units[1:])


def test_single_unit_cannot_be_split():
    G = group_groupoid(cyclic_group_table(2))
    assert all_partitions(G) == []


def test_derive_on_pair_groupoid():
    G = pair_groupoid(3)
    dp = derive(G, split(G, 1))
    assert dp.u12 == frozenset({(1, 1)})
    assert dp.u21 == frozenset({(2, 2), (3, 3)})
    assert dp.v == frozenset()
    assert dp.w == frozenset(G.units)
    G2 = pair_groupoid(2)
    assert derive(G2, split(G2, 1)).w == frozenset(G2.units)


def test_derive_on_disjoint_components():
    G, p = components_partition()
    dp = derive(G, p)
    assert dp.u12 == dp.u21 == frozenset()
    assert dp.v == frozenset(G.units)


def test_derived_sets_partition_units():
    for n in range(2, 5):
        G = pair_groupoid(n)
        for p in all_partitions(G):
            dp = derive(G, p)
            assert dp.u11 | dp.u12 == p.u1
            assert dp.u21 | dp.u22 == p.u2
            assert dp.v | dp.w == frozenset(G.units)


def test_interior_lemma():
    G = pair_groupoid(4)
    for p in all_partitions(G):
        assert check_interior_lemma(G, derive(G, p)).ok
    U, p = components_partition()
    result = check_interior_lemma(U, derive(U, p))
    assert not result.v_empty


def test_block_decompose_examples():
    G = pair_groupoid(2)
    p = split(G, 1)
    units_only = 2 * delta(G, (1, 1)) - delta(G, (2, 2))
    blocks = block_decompose(units_only, p)
    assert not blocks.f12 and not blocks.f21
    f = delta(G, (2, 1))
    blocks = block_decompose(f, p)
    assert blocks.f21 == f
    assert not blocks.f11 and not blocks.f12 and not blocks.f22
    everything = AlgebraElement(G, {x: 1 for x in G.morphisms})
    blocks = block_decompose(everything, p)
    for i, j in product((1, 2), repeat=2):
        assert blocks.block(i, j) == delta(G, (i, j))


def test_block_decompose_is_idempotent_per_block():
    rng = random.Random(3)
    G = pair_groupoid(4)
    p = split(G, 2)
    for _ in range(30):
        f = AlgebraElement(G, {x: rng.randint(-2, 2) for x in rng.sample(G.morphisms, 5)})
        blocks = block_decompose(f, p)
        assert blocks.total() == f
        for i, j in product((1, 2), repeat=2):
            again = block_decompose(blocks.block(i, j), p)
            assert again.block(i, j) == blocks.block(i, j)
            assert again.total() == blocks.block(i, j)


def test_block_calculus():
    G = pair_groupoid(4)
    assert check_block_calculus(G, split(G, 2)).ok
    G2 = pair_groupoid(2)
    result = check_block_calculus(G2, split(G2, 1))
    assert result.ok
    assert result.nonzero_products["A21*A12"] == 1
    assert "A21*A21" not in result.nonzero_products
    U, p = components_partition()
    assert check_block_calculus(U, p).ok


def test_prime_hypotheses():
    assert check_prime_hypotheses(pair_groupoid(3)) == []
    U, _ = components_partition()
    assert check_prime_hypotheses(U) == ["groupoid is not topologically transitive"]
    assert "groupoid has nontrivial isotropy" in check_prime_hypotheses(group_groupoid(cyclic_group_table(2)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_center_iff_class_function_on_w(n):
    G = pair_groupoid(n)
    for p in all_partitions(G):
        result = center_iff_class_on_W(G, derive(G, p), samples=100, seed=0)
        assert result.ok, result.discrepancy
        assert result.checked == len(G) + 1 + 100


def test_center_iff_rejects_non_prime():
    U, p = components_partition()
    with pytest.raises(HypothesisViolation):
        center_iff_class_on_W(U, derive(U, p))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_technical_lemma(n):
    G = pair_groupoid(n)
    for p in all_partitions(G):
        report = technical_lemma_suite(G, p, witness_samples=50)
        assert report.ok, report.to_dict()
        assert report.centralizer_dim == 1 + len(p.u1) * len(p.u2)


def test_centralizer_of_a21_in_two_by_two():
    G = pair_groupoid(2)
    report = technical_lemma_suite(G, split(G, 1))
    assert report.centralizer_dim == 2
    assert report.items[3].checked > 0


def test_diagonal_isotropy_item_only_constrains_w():
    G = pair_groupoid(3)
    items = lemma_items(G, split(G, 1), delta(G, (2, 3)))
    assert items[1].ok
    assert not items[2].ok
    assert items[2].detail.startswith("diagonal block nonzero")
    U, p = components_partition()
    assert derive(U, p).w == frozenset()
    items = lemma_items(U, p, delta(U, (0, (1, 2))))
    assert items[2].ok and items[2].checked == 1


def test_lemma_item6_on_lazy_family():
    G = LazyPairGroupoid()
    f = AlgebraElement(G, {u: 1 for u in G.units_up_to(6)})
    g = lazy_a21_witness(f, EVEN_ODD)
    assert g is not None
    assert f * g != g * f
    assert lazy_a21_witness(delta(G, (3, 2)), EVEN_ODD) is None
    assert check_lemma_item6_lazy(samples=200).ok


def test_trivial_center_on_lazy_family():
    result = check_trivial_center_lazy(samples=200, seed=0)
    assert result.ok
    assert result.checked == 200


def test_build_T_dimensions():
    G4 = pair_groupoid(4)
    assert build_T(G4, split(G4, 2)).dim == 5
    G2 = pair_groupoid(2)
    assert build_T(G2, split(G2, 1)).dim == 2
    G6 = pair_groupoid(6)
    assert build_T(G6, split(G6, 3)).dim == 10 == jacobson_bound(6)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_main_theorem_every_partition(n):
    G = pair_groupoid(n)
    for p in all_partitions(G):
        report = verify_main_theorem(G, p)
        assert report.maximal, report.to_dict()
        assert report.dim_t == report.dim_ct == 1 + len(p.u1) * len(p.u2)
        assert report.dim_t <= jacobson_bound(n)


def test_main_theorem_with_a12():
    G = pair_groupoid(4)
    for p in all_partitions(G):
        assert verify_main_theorem(G, p, block=(1, 2)).maximal
        assert verify_main_theorem(G, p.swapped()).maximal


def test_dimension_profile_attains_bound():
    for n in range(2, 7):
        profile = dimension_profile(n)
        assert max(profile.values()) == jacobson_bound(n)
        assert profile == {k: 1 + k * (n - k) for k in range(1, n)}


def test_block_alone_is_not_maximal():
    G = pair_groupoid(4)
    p = split(G, 2)
    a21 = SubspaceBasis.span(G, a_block_basis(G, p, 2, 1))
    result = verify_candidate(G, a21)
    assert not result.ok
    assert result.witness == center_basis(G).elements[0]


def test_non_prime_input_is_rejected():
    U, p = components_partition()
    with pytest.raises(HypothesisViolation):
        verify_main_theorem(U, p)
    with pytest.raises(HypothesisViolation):
        build_T(U, p)
