"""
Tests for Steinberg algebra arithmetic, slices, centers and centralizers
"""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from steinberg_maxcomm.core.algebra import (
    INTEGERS,
    AlgebraElement,
    all_slices,
    find_noncentral_witness,
    indicator,
    is_class_function,
    make_slice,
    mul_indicator_left,
    mul_indicator_right,
    slice_product,
    slice_product_identity_check,
    unit_indicator,
)
from steinberg_maxcomm.core.errors import CarrierMismatchError, InvalidSliceError, NonCommutativeError
from steinberg_maxcomm.core.groupoid import (
    LazyPairGroupoid,
    cyclic_group_table,
    disjoint_union,
    group_groupoid,
    pair_groupoid,
)
from steinberg_maxcomm.core.subspace import (
    SubspaceBasis,
    center_basis,
    centralizer_basis,
    check_center_oracle,
    full_algebra_basis,
    is_central,
    is_maximal_commutative,
)


def delta(G, x):
    return AlgebraElement.delta(G, x)


def random_element(G, rng, size=3):
    picks = rng.sample(G.morphisms, min(size, len(G)))
    return AlgebraElement(G, {x: rng.randint(-2, 2) for x in picks})


TEST_GROUPOIDS = [
    pair_groupoid(1),
    pair_groupoid(2),
    pair_groupoid(3),
    group_groupoid(cyclic_group_table(2)),
    group_groupoid(cyclic_group_table(3)),
    disjoint_union(pair_groupoid(2), pair_groupoid(2)),
    disjoint_union(pair_groupoid(1), group_groupoid(cyclic_group_table(2))),
]


def test_matrix_unit_products():
    G = pair_groupoid(3)
    assert delta(G, (1, 2)) * delta(G, (2, 3)) == delta(G, (1, 3))
    assert not delta(G, (1, 2)) * delta(G, (1, 2))
    assert not delta(G, (1, 2)) * AlgebraElement.zero(G)


def test_coefficients_are_exact():
    G = pair_groupoid(2)
    f = AlgebraElement(G, {(1, 1): "1/2", (1, 2): 0})
    assert f.support == frozenset({(1, 1)})
    assert f((1, 1)) == Fraction(1, 2)
    assert f.to_dict() == {"(1,1)": "1/2"}
    with pytest.raises(TypeError):
        AlgebraElement(G, {(1, 1): 0.5})


def test_mixing_groupoids_is_rejected():
    with pytest.raises(CarrierMismatchError):
        delta(pair_groupoid(2), (1, 1)) + delta(pair_groupoid(3), (1, 1))


def test_associativity_exhaustive_on_small_groupoids():
    rng = random.Random(0)
    for G in (pair_groupoid(3), group_groupoid(cyclic_group_table(3))):
        for _ in range(60):
            f, g, h = (random_element(G, rng) for _ in range(3))
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert (3 * f) * g == 3 * (f * g)


def test_indicators_and_slices():
    G = pair_groupoid(2)
    one = indicator(make_slice(G, G.units))
    f = delta(G, (1, 2)) + 2 * delta(G, (2, 1))
    assert one * f == f == f * one
    swap = make_slice(G, {(1, 2), (2, 1)})
    assert indicator(swap) * indicator(swap) == one
    with pytest.raises(InvalidSliceError) as err:
        make_slice(G, {(1, 1), (1, 2)})
    assert str(err.value) == "ran not injective"


def test_slice_product_identity_exhaustive():
    G = pair_groupoid(3)
    slices = list(all_slices(G))
    assert len(slices) == 34
    for B, D in product(slices, repeat=2):
        assert slice_product_identity_check(B, D)


def test_slice_product_can_be_empty():
    G = pair_groupoid(4)
    B, D = make_slice(G, {(1, 2)}), make_slice(G, {(3, 3)})
    assert slice_product(B, D).members == frozenset()
    assert slice_product_identity_check(B, D)


def test_closed_forms_agree_with_convolution():
    G = pair_groupoid(3)
    for B in all_slices(G):
        for x in G.morphisms:
            f = delta(G, x) - 2 * delta(G, G.inv(x))
            assert mul_indicator_right(f, B) == f * indicator(B)
            assert mul_indicator_left(B, f) == indicator(B) * f


def test_closed_forms_on_point_examples():
    G = pair_groupoid(3)
    f = delta(G, (1, 2))
    assert mul_indicator_right(f, make_slice(G, {(2, 2)})) == f
    assert not mul_indicator_right(f, make_slice(G, {(3, 3)}))
    assert mul_indicator_left(make_slice(G, G.units), f) == f


def test_class_function_conditions():
    G = pair_groupoid(2)
    scalars = 5 * unit_indicator(G, G.units)
    assert is_class_function(scalars, G.morphisms).ok
    off = is_class_function(delta(G, (1, 2)), G.morphisms)
    assert not off.ok and off.condition == 1
    corner = is_class_function(delta(G, (1, 1)), G.morphisms)
    assert not corner.ok and corner.condition == 2
    assert (corner.x, corner.z) == ((1, 1), (2, 1))


def test_center_bases():
    for n in range(1, 5):
        center = center_basis(pair_groupoid(n))
        assert center.dim == 1
        assert center.elements[0] == unit_indicator(pair_groupoid(n), pair_groupoid(n).units)
    assert center_basis(group_groupoid(cyclic_group_table(2))).dim == 2
    assert center_basis(disjoint_union(pair_groupoid(2), pair_groupoid(2))).dim == 2


@pytest.mark.parametrize("G", TEST_GROUPOIDS, ids=lambda G: G.name)
def test_center_oracle(G):
    assert check_center_oracle(G)


@pytest.mark.parametrize("G", TEST_GROUPOIDS, ids=lambda G: G.name)
def test_class_functions_are_central(G):
    rng = random.Random(1)
    center = center_basis(G)
    for _ in range(30):
        f = random_element(G, rng)
        if rng.random() < 0.5:
            f = AlgebraElement.zero(G)
            for b in center.elements:
                f = f + rng.randint(-2, 2) * b
        assert is_class_function(f, G.morphisms).ok == center.contains(f) == is_central(f)


def test_centralizer_examples():
    G = pair_groupoid(2)
    full = full_algebra_basis(G)
    assert centralizer_basis([AlgebraElement.zero(G)], full) == full
    assert centralizer_basis(full.elements, full) == center_basis(G)
    C = centralizer_basis([delta(G, (2, 1))], full)
    assert C.dim == 2
    assert C == SubspaceBasis.span(G, [unit_indicator(G, G.units), delta(G, (2, 1))])


def test_span_is_canonical():
    G = pair_groupoid(2)
    a, b = delta(G, (1, 1)), delta(G, (2, 2))
    left = SubspaceBasis.span(G, [a + b, a - b])
    right = SubspaceBasis.span(G, [a, b, a + b])
    assert left == right
    assert left.dim == 2
    assert left.contains(3 * a - b)
    assert not left.contains(delta(G, (1, 2)))


def test_integral_basis_clears_denominators():
    G = pair_groupoid(2)
    basis = SubspaceBasis.span(G, [Fraction(2, 3) * delta(G, (1, 1)) + 4 * delta(G, (1, 2))])
    (e,) = basis.integral()
    assert e == delta(G, (1, 1)) + 6 * delta(G, (1, 2))
    doc = basis.to_document(INTEGERS)
    assert doc["canonical"] is True
    assert doc["elements"] == [{"(1,1)": "1/1", "(1,2)": "6/1"}]


def test_maximality_examples():
    for n in (2, 3, 4):
        G = pair_groupoid(n)
        full = full_algebra_basis(G)
        diagonal = SubspaceBasis.span(G, [delta(G, u) for u in G.units])
        assert is_maximal_commutative(diagonal, full).ok
        scalars = is_maximal_commutative(center_basis(G), full)
        assert not scalars.ok
        assert scalars.witness is not None and not center_basis(G).contains(scalars.witness)
    C2 = group_groupoid(cyclic_group_table(2))
    assert is_maximal_commutative(full_algebra_basis(C2), full_algebra_basis(C2)).ok


def test_maximality_requires_commutative_input():
    G = pair_groupoid(2)
    full = full_algebra_basis(G)
    with pytest.raises(NonCommutativeError):
        is_maximal_commutative(SubspaceBasis.span(G, [delta(G, (1, 2)), delta(G, (2, 1))]), full)


def test_noncentral_witness_examples():
    G = LazyPairGroupoid()
    assert find_noncentral_witness(delta(G, (1, 1))) == delta(G, (1, 2))
    f = delta(G, (1, 2))
    g = find_noncentral_witness(f)
    assert g == delta(G, (2, 3))
    assert (f * g - g * f)((1, 3)) == 1
    units = AlgebraElement(G, {u: 1 for u in G.units_up_to(5)})
    assert find_noncentral_witness(units) == delta(G, (5, 6))
    with pytest.raises(ValueError):
        find_noncentral_witness(AlgebraElement.zero(G))


lazy_points = st.tuples(st.integers(1, 8), st.integers(1, 8))


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(lazy_points, st.integers(-3, 3).filter(bool), min_size=1, max_size=6))
def test_noncentral_witness_never_commutes(coeffs):
    G = LazyPairGroupoid()
    f = AlgebraElement(G, coeffs)
    g = find_noncentral_witness(f)
    assert f * g != g * f
