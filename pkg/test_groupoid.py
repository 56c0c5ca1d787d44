"""
Tests for finite groupoids, the axiom validator and the test families
"""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from steinberg_maxcomm.core.errors import InvalidGroupoidError
from steinberg_maxcomm.core.groupoid import (
    Groupoid,
    LazyPairGroupoid,
    conjugacy_classes,
    cyclic_group_table,
    disjoint_union,
    group_groupoid,
    has_trivial_isotropy,
    hom_set,
    is_topologically_transitive,
    pair_groupoid,
    subset_inverse,
    subset_product,
    validate,
)


def test_pair_groupoid_is_valid():
    for n in range(1, 5):
        G = pair_groupoid(n)
        assert validate(G).ok
        assert len(G) == n * n
        assert len(G.units) == n


def test_pair_groupoid_rejects_zero():
    with pytest.raises(InvalidGroupoidError):
        pair_groupoid(0)


def test_unit_not_self_inverse_is_reported():
    G = pair_groupoid(2)
    broken = Groupoid(
        G.units,
        {x: G.dom(x) for x in G.morphisms},
        {x: G.ran(x) for x in G.morphisms},
        {**{x: G.inv(x) for x in G.morphisms}, (1, 1): (1, 2)},
        G.comp_table,
    )
    report = validate(broken)
    assert not report.ok
    assert "unit not self-inverse" in report.codes()


def test_illegal_composability_is_reported():
    broken = Groupoid(
        units=["u", "w"],
        dom={"u": "u", "w": "w", "x": "u"},
        ran={"u": "u", "w": "w", "x": "w"},
        inv={"u": "u", "w": "w", "x": "x"},
        comp={("u", "u"): "u", ("w", "w"): "w", ("x", "u"): "x", ("w", "x"): "x", ("x", "x"): "x"},
    )
    assert "illegal composability" in validate(broken).codes()


def test_group_groupoid_cyclic():
    G = group_groupoid(cyclic_group_table(3))
    assert validate(G).ok
    assert len(G.units) == 1
    assert not has_trivial_isotropy(G)
    assert len(conjugacy_classes(G)) == 3


def test_group_groupoid_rejects_non_group():
    with pytest.raises(InvalidGroupoidError):
        group_groupoid([[0, 0], [0, 1]])


def test_disjoint_union_counts_and_transitivity():
    G = disjoint_union(pair_groupoid(2), pair_groupoid(3))
    assert len(G) == 13
    assert validate(G).ok
    assert not is_topologically_transitive(G)
    assert is_topologically_transitive(pair_groupoid(4))
    assert is_topologically_transitive(group_groupoid(cyclic_group_table(2)))


def test_hom_set():
    G = pair_groupoid(3)
    assert hom_set(G, (2, 2), (1, 1)) == frozenset({(1, 2)})
    C2 = group_groupoid(cyclic_group_table(2))
    assert hom_set(C2, 0, 0) == frozenset({0, 1})
    U = disjoint_union(pair_groupoid(1), pair_groupoid(1))
    assert hom_set(U, (0, (1, 1)), (1, (1, 1))) == frozenset()
    with pytest.raises(ValueError):
        hom_set(G, (1, 2), (1, 1))


def test_conjugacy_classes_of_pair_groupoid():
    assert conjugacy_classes(pair_groupoid(3)) == [frozenset({(1, 1), (2, 2), (3, 3)})]
    assert conjugacy_classes(pair_groupoid(1)) == [frozenset({(1, 1)})]
    assert sorted(map(sorted, conjugacy_classes(group_groupoid(cyclic_group_table(2))))) == [[0], [1]]


def test_inverse_of_composite():
    for G in (pair_groupoid(3), group_groupoid(cyclic_group_table(3))):
        for x, y in product(G.morphisms, repeat=2):
            if G.composable(x, y):
                assert G.inv(G.comp(x, y)) == G.comp(G.inv(y), G.inv(x))


def test_hom_sets_of_pair_groupoid_are_singletons():
    G = pair_groupoid(4)
    assert all(len(hom_set(G, u, v)) == 1 for u in G.units for v in G.units)


subsets = st.sets(st.sampled_from(pair_groupoid(3).morphisms), max_size=5)


@settings(max_examples=200, deadline=None)
@given(subsets, subsets, subsets)
def test_subset_products_associate(X, Y, Z):
    G = pair_groupoid(3)
    assert subset_product(G, subset_product(G, X, Y), Z) == subset_product(G, X, subset_product(G, Y, Z))


@settings(max_examples=200, deadline=None)
@given(subsets, subsets)
def test_subset_inverse_reverses_products(X, Y):
    G = pair_groupoid(3)
    assert subset_inverse(G, subset_product(G, X, Y)) == subset_product(G, subset_inverse(G, Y), subset_inverse(G, X))


def test_groupoid_document_lists_every_morphism():
    doc = pair_groupoid(2).to_document()
    assert doc["units"] == ["(1,1)", "(2,2)"]
    assert len(doc["morphisms"]) == 4
    assert ["(1,2)", "(2,1)", "(1,1)"] in doc["comp"]


def test_lazy_pair_groupoid():
    G = LazyPairGroupoid()
    assert G == LazyPairGroupoid()
    assert (3, 7) in G and (0, 1) not in G
    assert G.dom((3, 7)) == (7, 7)
    assert G.ran((3, 7)) == (3, 3)
    assert G.comp((3, 7), (7, 2)) == (3, 2)
    assert G.units_up_to(3) == ((1, 1), (2, 2), (3, 3))
    with pytest.raises(InvalidGroupoidError):
        G.comp((1, 2), (3, 4))
