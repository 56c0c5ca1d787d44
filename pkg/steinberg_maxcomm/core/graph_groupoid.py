"""
Graph groupoid G_E of a finite acyclic graph, cylinder sets and pi_E

For acyclic E every boundary path is finite and ends at a sink, and
G_E = {(xi, |xi| - |eta|, eta) : xi, eta boundary paths, r(xi) = r(eta)}.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .algebra import AlgebraElement, RATIONALS, ScalarRing
from .errors import HypothesisViolation, InvalidGraphError, InvalidPathError
from .graph import (
    Graph,
    Path,
    PathSetSpec,
    boundary_paths,
    check_P_conditions,
    is_downward_directed,
    paths_up_to,
)
from .groupoid import Groupoid
from .leavitt import LpaElement, LpaTerm, reducible_edge
from .partition import UnitPartition, a_block_basis, check_prime_hypotheses, make_partition
from .subspace import SubspaceBasis, center_basis, full_algebra_basis, is_maximal_commutative

logger = logging.getLogger(__name__)


class GraphMorphism(NamedTuple):
    xi: Path
    shift: int
    eta: Path


def _require_acyclic(E: Graph) -> None:
    if not E.is_acyclic:
        raise InvalidGraphError(f"{E!r} has cycles; its graph groupoid is not finite")


@lru_cache(maxsize=32)
def graph_groupoid(E: Graph) -> Groupoid:
    _require_acyclic(E)
    by_sink: Dict[str, List[Path]] = {}
    for p in boundary_paths(E):
        by_sink.setdefault(p.target, []).append(p)

    units, dom, ran, inv, comp = [], {}, {}, {}, {}
    for paths in by_sink.values():
        for xi in paths:
            units.append(GraphMorphism(xi, 0, xi))
            for eta in paths:
                x = GraphMorphism(xi, len(xi) - len(eta), eta)
                dom[x] = GraphMorphism(eta, 0, eta)
                ran[x] = GraphMorphism(xi, 0, xi)
                inv[x] = GraphMorphism(eta, -x.shift, xi)
                for zeta in paths:
                    y = GraphMorphism(eta, len(eta) - len(zeta), zeta)
                    comp[x, y] = GraphMorphism(xi, x.shift + y.shift, zeta)
    G = Groupoid(units, dom, ran, inv, comp, name=f"G_{E.name or 'E'}")
    logger.debug("graph groupoid of %r: %d morphisms, %d units", E, len(G), len(G.units))
    return G


@dataclass(frozen=True)
class CylinderSet:
    """Z(alpha, beta, F) = Z(alpha, beta) minus the Z(alpha e, beta e) for e in F"""
    alpha: Path
    beta: Path
    forbidden: FrozenSet[str] = frozenset()

    @property
    def pair(self) -> Tuple[Path, Path]:
        return (self.alpha, self.beta)

    @property
    def sort_key(self):
        return (len(self.alpha) + len(self.beta), self.alpha.sort_key, self.beta.sort_key,
                tuple(sorted(self.forbidden)))

    def __str__(self) -> str:
        return f"Z({self.alpha},{self.beta},{{{','.join(sorted(self.forbidden))}}})"

    def to_document(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha.to_document(),
            "beta": self.beta.to_document(),
            "F": sorted(self.forbidden),
        }


def cylinder(E: Graph, alpha: Path, beta: Path, forbidden: Iterable[str] = ()) -> CylinderSet:
    if alpha.target != beta.target:
        raise InvalidPathError(f"r({alpha}) != r({beta})")
    forbidden = frozenset(forbidden)
    stray = forbidden - set(E.out_edges(alpha.target))
    if stray:
        raise InvalidPathError(f"F must consist of edges leaving {alpha.target}: {sorted(stray)}")
    return CylinderSet(alpha, beta, forbidden)


def is_empty_cylinder(E: Graph, c: CylinderSet) -> bool:
    """Empty iff r(alpha) is regular and F is all of s^-1(r(alpha))"""
    out = set(E.out_edges(c.alpha.target))
    return bool(out) and out <= c.forbidden


def cylinder_members(c: CylinderSet, E: Graph) -> FrozenSet[GraphMorphism]:
    _require_acyclic(E)
    shift = len(c.alpha) - len(c.beta)
    members = set()
    for gamma in boundary_paths(E):
        if gamma.source != c.alpha.target:
            continue
        if gamma.edges and gamma.edges[0] in c.forbidden:
            continue
        members.add(GraphMorphism(c.alpha.then(gamma), shift, c.beta.then(gamma)))
    return frozenset(members)


def cylinder_indicator(c: CylinderSet, E: Graph) -> AlgebraElement:
    return AlgebraElement(graph_groupoid(E), {x: 1 for x in cylinder_members(c, E)})


def pi_E(x: LpaElement) -> AlgebraElement:
    """Linear extension of alpha beta* -> 1_{Z(alpha, beta)}"""
    E = x.graph
    G = graph_groupoid(E)
    result = AlgebraElement.zero(G)
    for term, c in x.items():
        result = result + c * cylinder_indicator(CylinderSet(term.alpha, term.beta), E)
    return result


def normal_form_basis(E: Graph) -> List[LpaElement]:
    """Normal monomials alpha beta*; for acyclic E a basis of L_R(E)"""
    _require_acyclic(E)
    paths = paths_up_to(E, len(E.vertices))
    terms = sorted(
        (LpaTerm(a, b) for a in paths for b in paths
         if a.target == b.target and reducible_edge(E, LpaTerm(a, b)) is None),
        key=lambda t: t.sort_key,
    )
    return [LpaElement(E, {t: 1}) for t in terms]


def _extend(E: Graph, p: Path, edges: Sequence[str]) -> Path:
    for e in edges:
        p = p.then(Path(E.src(e), (e,), E.rng(e)))
    return p


def _extension_of(inner: CylinderSet, outer: CylinderSet) -> Optional[Tuple[str, ...]]:
    """delta with inner's pair = (outer.alpha delta, outer.beta delta), delta nonempty"""
    if not (inner.alpha.has_prefix(outer.alpha) and inner.beta.has_prefix(outer.beta)):
        return None
    delta = inner.alpha.edges[len(outer.alpha):]
    if not delta or inner.beta.edges[len(outer.beta):] != delta:
        return None
    return delta


def cylinders_overlap(a: CylinderSet, b: CylinderSet) -> bool:
    """Symbolic test; two cylinders meet only when one pair extends the other"""
    if a.pair == b.pair:
        return True
    for inner, outer in ((a, b), (b, a)):
        delta = _extension_of(inner, outer)
        if delta is not None:
            return delta[0] not in outer.forbidden
    return False


def _difference(E: Graph, a: CylinderSet, b: CylinderSet) -> List[CylinderSet]:
    """a minus b as disjoint edge-level cylinders"""
    if not cylinders_overlap(a, b):
        return [a]
    if a.pair == b.pair:
        return [CylinderSet(_extend(E, a.alpha, (e,)), _extend(E, a.beta, (e,)))
                for e in sorted(b.forbidden - a.forbidden)]
    if _extension_of(a, b) is not None:
        return []
    delta = _extension_of(b, a)
    pieces = [CylinderSet(a.alpha, a.beta, a.forbidden | {delta[0]})]
    for i in range(1, len(delta)):
        pieces.append(CylinderSet(_extend(E, a.alpha, delta[:i]), _extend(E, a.beta, delta[:i]),
                                  frozenset({delta[i]})))
    pieces += [CylinderSet(_extend(E, b.alpha, (e,)), _extend(E, b.beta, (e,)))
               for e in sorted(b.forbidden)]
    return pieces


def disjointify(cylinders: Sequence[CylinderSet], E: Graph) -> List[CylinderSet]:
    """
    Pairwise disjoint cylinders with the same union. Cylinders over the same
    pair merge (the union of Z(a,b,F) and Z(a,b,F') is Z(a,b,F n F')); then,
    longest pairs first, each cylinder is cut by the ones already placed: when
    (alpha_j, beta_j) = (alpha_k delta, beta_k delta) with delta = d1...dm and
    d1 not in F_k, Z_k minus Z(alpha_j, beta_j) becomes
    Z(alpha_k, beta_k, F_k + {d1}), Z(alpha_k d1, beta_k d1, {d2}), ...
    """
    merged: Dict[Tuple[Path, Path], FrozenSet[str]] = {}
    for c in cylinders:
        merged[c.pair] = merged[c.pair] & c.forbidden if c.pair in merged else c.forbidden
    pending = sorted((CylinderSet(a, b, f) for (a, b), f in merged.items()),
                     key=lambda c: c.sort_key, reverse=True)

    placed: List[CylinderSet] = []
    for c in pending:
        pieces = [c]
        for d in placed:
            pieces = [q for p in pieces for q in _difference(E, p, d)]
        placed += [p for p in pieces if not is_empty_cylinder(E, p)]
    logger.debug("disjointify: %d cylinders in, %d out", len(cylinders), len(placed))
    return sorted(placed, key=lambda c: c.sort_key)


def unit_partition_from_paths(E: Graph, P1: PathSetSpec, P2: PathSetSpec) -> UnitPartition:
    """U_i = union of Z(alpha, alpha) over alpha in P_i, as units of G_E"""
    G = graph_groupoid(E)
    u1 = [u for u in G.units if u.xi in P1]
    u2 = [u for u in G.units if u.xi in P2]
    return make_partition(G, u1, u2)


def a_part_terms(E: Graph, P1: PathSetSpec, P2: PathSetSpec) -> List[LpaTerm]:
    """alpha beta* with alpha in P1, beta in P2; finite for acyclic E"""
    _require_acyclic(E)
    paths = paths_up_to(E, len(E.vertices))
    return sorted((LpaTerm(a, b) for a in paths if a in P1 for b in paths
                   if b in P2 and a.target == b.target), key=lambda t: t.sort_key)


def check_a12_identification(E: Graph, P1: PathSetSpec, P2: PathSetSpec) -> bool:
    """pi_E of span{alpha beta* : alpha in P1, beta in P2} is A12 of the induced partition"""
    G = graph_groupoid(E)
    p = unit_partition_from_paths(E, P1, P2)
    image = SubspaceBasis.span(G, [pi_E(LpaElement(E, {t: 1})) for t in a_part_terms(E, P1, P2)])
    return image == SubspaceBasis.span(G, a_block_basis(G, p, 1, 2))


@dataclass(frozen=True)
class LpaCandidateReport:
    acyclic: bool
    generators: Dict[str, List[Any]]
    maximal: Optional[bool] = None
    identification: Optional[bool] = None
    dim_t: Optional[int] = None
    dim_ct: Optional[int] = None
    center_dim: Optional[int] = None
    block_dim: Optional[int] = None
    witness: Optional[AlgebraElement] = None

    @property
    def deferred(self) -> bool:
        return not self.acyclic

    def to_dict(self) -> Dict[str, Any]:
        return {
            "acyclic": self.acyclic,
            "deferred": self.deferred,
            "generators": self.generators,
            "maximal": self.maximal,
            "identification": self.identification,
            "dim_T": self.dim_t,
            "dim_C(T)": self.dim_ct,
            "dim_center": self.center_dim,
            "dim_block": self.block_dim,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def require_lpa_hypotheses(E: Graph, P1: PathSetSpec, P2: PathSetSpec,
                           ring: ScalarRing = RATIONALS) -> None:
    problems = []
    if not ring.is_domain:
        problems.append(f"scalar ring {ring.name} is not an integral domain")
    if not is_downward_directed(E):
        problems.append("graph is not downward directed")
    conditions = check_P_conditions(E, P1, P2)
    for k, result in sorted(conditions.conditions.items()):
        if not result.ok:
            problems.append(f"path condition ({k}) fails at {result.counterexample}")
    if problems:
        raise HypothesisViolation("L_R(E) hypotheses fail", problems)


def build_T_lpa(E: Graph, P1: PathSetSpec, P2: PathSetSpec,
                ring: ScalarRing = RATIONALS) -> LpaCandidateReport:
    """
    Z(L_R(E)) + <alpha beta* : alpha in P1, beta in P2>. Acyclic graphs are
    decided in the finite groupoid algebra through pi_E; for graphs with cycles
    only the generator description is returned.
    """
    require_lpa_hypotheses(E, P1, P2, ring)
    generators = {"P1": P1.to_document(), "P2": P2.to_document()}
    if not E.is_acyclic:
        return LpaCandidateReport(acyclic=False, generators=generators)

    G = graph_groupoid(E)
    problems = check_prime_hypotheses(G, ring)
    if problems:
        raise HypothesisViolation("graph groupoid algebra is not prime", problems)
    center = center_basis(G)
    a_part = [pi_E(LpaElement(E, {t: 1})) for t in a_part_terms(E, P1, P2)]
    T = SubspaceBasis.span(G, list(center.elements) + a_part)
    result = is_maximal_commutative(T, full_algebra_basis(G))
    return LpaCandidateReport(
        acyclic=True,
        generators=generators,
        maximal=result.ok,
        identification=check_a12_identification(E, P1, P2),
        dim_t=result.dim,
        dim_ct=result.centralizer_dim,
        center_dim=center.dim,
        block_dim=SubspaceBasis.span(G, a_part).dim,
        witness=result.witness,
    )
