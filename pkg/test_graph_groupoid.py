"""
Tests for the graph groupoid of an acyclic graph, cylinders, pi_E and disjointify
"""

import random
from itertools import combinations

import pytest

from steinberg_maxcomm.core.algebra import make_slice, unit_indicator
from steinberg_maxcomm.core.errors import HypothesisViolation, InvalidGraphError, InvalidPathError
from steinberg_maxcomm.core.graph import (
    binary_tree_graph,
    line_graph,
    make_graph,
    make_path_set,
    paths_up_to,
    two_loop_graph,
    vertex_partition_paths,
)
from steinberg_maxcomm.core.graph_groupoid import (
    CylinderSet,
    GraphMorphism,
    build_T_lpa,
    check_a12_identification,
    cylinder,
    cylinder_members,
    cylinders_overlap,
    disjointify,
    graph_groupoid,
    is_empty_cylinder,
    normal_form_basis,
    pi_E,
    unit_partition_from_paths,
)
from steinberg_maxcomm.core.groupoid import is_topologically_transitive, validate
from steinberg_maxcomm.core.leavitt import LpaElement, LpaTerm, normal_form
from steinberg_maxcomm.core.subspace import SubspaceBasis

LINE = line_graph()
TREE = binary_tree_graph()


def two_sinks_graph():
    return make_graph(["u", "a", "b"], [("x", "u", "a"), ("y", "u", "b")], "two-sinks")


def members_of(cylinders, E):
    out = set()
    for c in cylinders:
        out |= cylinder_members(c, E)
    return out


def random_cylinders(E, rng, count):
    pairs = [(t.alpha, t.beta) for t in (b.terms[0] for b in normal_form_basis(E))]
    chosen = []
    for _ in range(count):
        alpha, beta = rng.choice(pairs)
        out = E.out_edges(alpha.target)
        forbidden = [e for e in out if rng.random() < 0.4]
        chosen.append(cylinder(E, alpha, beta, forbidden))
    return chosen


def test_line_graph_groupoid():
    G = graph_groupoid(LINE)
    assert len(G) == 9
    assert sorted(str(u.xi) for u in G.units) == ["e1e2", "e2", "v3"]
    assert validate(G).ok
    assert is_topologically_transitive(G)
    e1e2, e2 = LINE.path(["e1", "e2"]), LINE.path(["e2"])
    x = GraphMorphism(e1e2, 1, e2)
    assert G.dom(x) == GraphMorphism(e2, 0, e2)
    assert G.inv(x) == GraphMorphism(e2, -1, e1e2)


def test_graph_groupoid_with_two_sinks_is_not_transitive():
    G = graph_groupoid(two_sinks_graph())
    assert validate(G).ok
    assert not is_topologically_transitive(G)
    assert len(G) == 8


def test_cyclic_graph_has_no_finite_groupoid():
    with pytest.raises(InvalidGraphError):
        graph_groupoid(two_loop_graph())


def test_cylinder_validation():
    with pytest.raises(InvalidPathError):
        cylinder(LINE, LINE.path(["e1"]), LINE.vertex_path("v3"))
    with pytest.raises(InvalidPathError):
        cylinder(LINE, LINE.vertex_path("v2"), LINE.vertex_path("v2"), ["e1"])


def test_cylinder_members():
    e1, v2 = LINE.path(["e1"]), LINE.vertex_path("v2")
    members = cylinder_members(cylinder(LINE, e1, v2), LINE)
    assert members == frozenset({GraphMorphism(LINE.path(["e1", "e2"]), 1, LINE.path(["e2"]))})
    v2_cut = cylinder(LINE, v2, v2, ["e2"])
    assert is_empty_cylinder(LINE, v2_cut)
    assert cylinder_members(v2_cut, LINE) == frozenset()
    v3 = LINE.vertex_path("v3")
    assert not is_empty_cylinder(LINE, cylinder(LINE, v3, v3))


@pytest.mark.parametrize("E", [LINE, TREE], ids=lambda E: E.name)
def test_cylinders_are_slices(E):
    G = graph_groupoid(E)
    for b in normal_form_basis(E):
        (term,) = b.terms
        make_slice(G, cylinder_members(CylinderSet(term.alpha, term.beta), E))


def test_normal_form_basis_maps_onto_groupoid_algebra():
    basis = normal_form_basis(LINE)
    assert len(basis) == 9
    image = SubspaceBasis.span(graph_groupoid(LINE), [pi_E(b) for b in basis])
    assert image.dim == 9


@pytest.mark.parametrize("E", [LINE, TREE, two_sinks_graph()], ids=lambda E: E.name)
def test_pi_is_multiplicative(E):
    rng = random.Random(0)
    paths = paths_up_to(E, len(E.vertices))
    by_target = {}
    for p in paths:
        by_target.setdefault(p.target, []).append(p)

    def random_element():
        raw = []
        for _ in range(3):
            alpha = rng.choice(paths)
            raw.append((LpaTerm(alpha, rng.choice(by_target[alpha.target])), rng.randint(-2, 2)))
        return normal_form(E, raw)

    for _ in range(200):
        x, y = random_element(), random_element()
        assert pi_E(x * y) == pi_E(x) * pi_E(y)
        assert pi_E(x + y) == pi_E(x) + pi_E(y)


def test_pi_preserves_unit():
    for E in (LINE, TREE):
        G = graph_groupoid(E)
        assert pi_E(LpaElement.unit(E)) == unit_indicator(G, G.units)


def test_overlap_examples():
    r, f1 = TREE.vertex_path("r"), TREE.path(["f1"])
    assert cylinders_overlap(cylinder(TREE, r, r), cylinder(TREE, f1, f1))
    assert not cylinders_overlap(cylinder(TREE, r, r, ["f1"]), cylinder(TREE, f1, f1))
    f2 = TREE.path(["f2"])
    assert not cylinders_overlap(cylinder(TREE, f1, f1), cylinder(TREE, f2, f2))


def test_disjointify_cuts_the_shorter_cylinder():
    r, f1 = TREE.vertex_path("r"), TREE.path(["f1"])
    out = disjointify([cylinder(TREE, r, r), cylinder(TREE, f1, f1)], TREE)
    assert out == [cylinder(TREE, r, r, ["f1"]), cylinder(TREE, f1, f1)]


def test_disjointify_cuts_along_longer_paths():
    r, f2f3 = TREE.vertex_path("r"), TREE.path(["f2", "f3"])
    out = disjointify([cylinder(TREE, r, r), cylinder(TREE, f2f3, f2f3)], TREE)
    assert [str(c) for c in out] == ["Z(r,r,{f2})", "Z(f2,f2,{f3})", "Z(f2f3,f2f3,{})"]


def test_disjointify_merges_equal_pairs():
    r = TREE.vertex_path("r")
    out = disjointify([cylinder(TREE, r, r, ["f1"]), cylinder(TREE, r, r, ["f2"])], TREE)
    assert out == [cylinder(TREE, r, r)]


def test_disjointify_drops_empty_pieces():
    v2, e2 = LINE.vertex_path("v2"), LINE.path(["e2"])
    out = disjointify([cylinder(LINE, v2, v2), cylinder(LINE, e2, e2)], LINE)
    assert out == [cylinder(LINE, e2, e2)]


@pytest.mark.parametrize("E", [LINE, TREE], ids=lambda E: E.name)
def test_disjointify_preserves_union(E):
    rng = random.Random(7)
    for _ in range(150):
        cylinders = random_cylinders(E, rng, rng.randint(1, 5))
        out = disjointify(cylinders, E)
        assert members_of(out, E) == members_of(cylinders, E)
        for a, b in combinations(out, 2):
            assert not cylinder_members(a, E) & cylinder_members(b, E)
        assert all(cylinder_members(c, E) for c in out)


def test_unit_partition_from_vertex_sets():
    P1, P2 = vertex_partition_paths(LINE, ["v1"], ["v2", "v3"])
    p = unit_partition_from_paths(LINE, P1, P2)
    assert sorted(str(u.xi) for u in p.u1) == ["e1e2"]
    assert sorted(str(u.xi) for u in p.u2) == ["e2", "v3"]
    assert check_a12_identification(LINE, P1, P2)


def test_build_T_on_line_graph():
    P1, P2 = vertex_partition_paths(LINE, ["v1"], ["v2", "v3"])
    report = build_T_lpa(LINE, P1, P2)
    assert report.acyclic and not report.deferred
    assert report.maximal
    assert report.identification
    assert report.dim_t == report.dim_ct == 3
    assert report.center_dim == 1
    assert report.block_dim == 2


def test_build_T_on_cycles_is_deferred():
    E = two_loop_graph()
    P1, P2 = make_path_set([E.path(["e1"])]), make_path_set([E.path(["e2"])])
    report = build_T_lpa(E, P1, P2)
    assert report.deferred
    assert report.maximal is None
    assert report.to_dict()["generators"] == {"P1": [["e1"]], "P2": [["e2"]]}


def test_build_T_rejects_broken_hypotheses():
    E = two_sinks_graph()
    P1, P2 = vertex_partition_paths(E, ["u"], ["a", "b"])
    with pytest.raises(HypothesisViolation):
        build_T_lpa(E, P1, P2)
    everything = make_path_set(LINE.vertex_path(v) for v in LINE.vertices)
    with pytest.raises(HypothesisViolation):
        build_T_lpa(LINE, everything, everything)
