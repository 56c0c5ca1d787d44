"""
Finite directed graphs, paths and extension-closed path sets

Paths compose left to right: alpha.then(beta) is alpha followed by beta, so
src(alpha beta) = src(alpha) and rng(alpha beta) = rng(beta).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import InvalidGraphError, InvalidPathError

logger = logging.getLogger(__name__)


class VertexKind(Enum):
    SINK = "sink"
    REGULAR = "regular"


@dataclass(frozen=True)
class Graph:
    """E = (E0, E1, r, s); every vertex emits finitely many edges"""
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, str], ...]  # (edge id, src, rng), sorted by id
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.vertices:
            raise InvalidGraphError("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraphError("duplicate vertex ids")
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise InvalidGraphError("duplicate edge ids")
        clash = set(ids) & set(self.vertices)
        if clash:
            raise InvalidGraphError(f"ids used for both a vertex and an edge: {sorted(clash)}")
        for e, s, r in self.edges:
            if s not in self.vertices or r not in self.vertices:
                raise InvalidGraphError(f"edge {e} has an endpoint outside the vertex set")

    def __repr__(self) -> str:
        return f"Graph({self.name or len(self.vertices)})"

    @cached_property
    def _src(self) -> Dict[str, str]:
        return {e: s for e, s, _ in self.edges}

    @cached_property
    def _rng(self) -> Dict[str, str]:
        return {e: r for e, _, r in self.edges}

    @cached_property
    def _out(self) -> Dict[str, Tuple[str, ...]]:
        out = {v: [] for v in self.vertices}
        for e, s, _ in self.edges:
            out[s].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e, s, r in self.edges:
            g.add_edge(s, r, key=e)
        return g

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e for e, _, _ in self.edges)

    def is_vertex(self, v: str) -> bool:
        return v in self._out

    def is_edge(self, e: str) -> bool:
        return e in self._src

    def src(self, e: str) -> str:
        return self._src[e]

    def rng(self, e: str) -> str:
        return self._rng[e]

    def out_edges(self, v: str) -> Tuple[str, ...]:
        """s^-1(v) in edge order"""
        return self._out[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def special_edge(self, v: str) -> Optional[str]:
        """The maximal out-edge of a regular vertex; the CK2 rewriting eliminates it"""
        out = self._out[v]
        return out[-1] if out else None

    @cached_property
    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph)

    @cached_property
    def cycle_reaching(self) -> frozenset:
        """Vertices from which an infinite path starts"""
        g = self.digraph
        on_cycle = set()
        for component in nx.strongly_connected_components(g):
            v = next(iter(component))
            if len(component) > 1 or g.has_edge(v, v):
                on_cycle |= component
        reaching = set(on_cycle)
        for v in on_cycle:
            reaching |= nx.ancestors(g, v)
        return frozenset(reaching)

    def reaches_sink(self, v: str) -> bool:
        return any(self.is_sink(w) for w in nx.descendants(self.digraph, v) | {v})

    def vertex_path(self, v: str) -> "Path":
        if not self.is_vertex(v):
            raise InvalidPathError(f"unknown vertex {v!r}")
        return Path(v, (), v)

    def path(self, edges: Sequence[str]) -> "Path":
        edges = tuple(edges)
        if not edges:
            raise InvalidPathError("use vertex_path() for paths of length zero")
        for e in edges:
            if not self.is_edge(e):
                raise InvalidPathError(f"unknown edge {e!r}")
        for a, b in zip(edges, edges[1:]):
            if self.rng(a) != self.src(b):
                raise InvalidPathError(f"edges {a} and {b} do not compose: r({a}) != s({b})")
        return Path(self.src(edges[0]), edges, self.rng(edges[-1]))

    def to_document(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "src": s, "rng": r} for e, s, r in self.edges],
        }


def make_graph(vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]], name: str = "") -> Graph:
    return Graph(tuple(sorted(vertices)), tuple(sorted(edges)), name)


def line_graph(n: int = 3) -> Graph:
    """v1 -e1-> v2 -e2-> ... -> vn"""
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = [(f"e{i}", f"v{i}", f"v{i + 1}") for i in range(1, n)]
    return make_graph(vertices, edges, f"line({n})")


def two_loop_graph() -> Graph:
    return make_graph(["v"], [("e1", "v", "v"), ("e2", "v", "v")], "two-loop")


def binary_tree_graph() -> Graph:
    """root with two children, one of which splits again: three sinks"""
    return make_graph(
        ["r", "a", "b", "c", "d"],
        [("f1", "r", "a"), ("f2", "r", "b"), ("f3", "b", "c"), ("f4", "b", "d")],
        "binary-tree",
    )


@dataclass(frozen=True, order=True)
class Path:
    source: str
    edges: Tuple[str, ...]
    target: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def sort_key(self) -> Tuple[int, Tuple[str, ...], str]:
        return (len(self.edges), self.edges, self.source)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def then(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise InvalidPathError(f"{self} and {other} do not compose")
        return Path(self.source, self.edges + other.edges, other.target)

    def has_prefix(self, prefix: "Path") -> bool:
        return (self.source == prefix.source
                and self.edges[:len(prefix.edges)] == prefix.edges)

    def strip_prefix(self, prefix: "Path") -> "Path":
        """gamma with self = prefix gamma"""
        if not self.has_prefix(prefix):
            raise InvalidPathError(f"{prefix} is not a prefix of {self}")
        return Path(prefix.target, self.edges[len(prefix.edges):], self.target)

    def __str__(self) -> str:
        return "".join(self.edges) if self.edges else self.source

    def to_document(self) -> Any:
        return list(self.edges) if self.edges else self.source


def classify_vertices(E: Graph) -> Dict[str, VertexKind]:
    return {v: VertexKind.SINK if E.is_sink(v) else VertexKind.REGULAR for v in E.vertices}


def is_downward_directed(E: Graph) -> bool:
    """Any two vertices have a common descendant (u >= w and v >= w)"""
    g = E.digraph
    below = {v: nx.descendants(g, v) | {v} for v in E.vertices}
    return all(below[u] & below[v] for u in E.vertices for v in E.vertices)


def paths_from(E: Graph, v: str, max_len: int) -> Iterator[Path]:
    """All paths with source v and length <= max_len, shortest first"""
    layer = [E.vertex_path(v)]
    for _ in range(max_len + 1):
        yield from layer
        layer = [p.then(Path(p.target, (e,), E.rng(e))) for p in layer for e in E.out_edges(p.target)]


def paths_up_to(E: Graph, max_len: int) -> List[Path]:
    paths = [p for v in E.vertices for p in paths_from(E, v, max_len)]
    return sorted(paths, key=lambda p: p.sort_key)


def paths_of_length(E: Graph, length: int) -> List[Path]:
    return [p for p in paths_up_to(E, length) if len(p) == length]


def boundary_paths(E: Graph) -> List[Path]:
    """Finite paths ending at sinks; for acyclic E these are all of the boundary"""
    if not E.is_acyclic:
        raise InvalidGraphError(f"{E!r} has cycles, so its boundary paths are infinite")
    return [p for p in paths_up_to(E, len(E.vertices)) if E.is_sink(p.target)]


@dataclass(frozen=True)
class PathSetSpec:
    """P = {alpha gamma : alpha a generator}; the generators form an antichain under prefix"""
    generators: Tuple[Path, ...]

    def contains(self, p: Path) -> bool:
        return any(p.has_prefix(g) for g in self.generators)

    def __contains__(self, p: Path) -> bool:
        return self.contains(p)

    @property
    def max_length(self) -> int:
        return max((len(g) for g in self.generators), default=0)

    def to_document(self) -> List[Any]:
        return [g.to_document() for g in self.generators]


def make_path_set(generators: Iterable[Path]) -> PathSetSpec:
    gens = tuple(sorted(set(generators), key=lambda p: p.sort_key))
    if not gens:
        raise InvalidPathError("a path set needs at least one generator")
    for a in gens:
        for b in gens:
            if a != b and b.has_prefix(a):
                raise InvalidPathError(f"generators are not an antichain: {a} is a prefix of {b}")
    return PathSetSpec(gens)


def vertex_partition_paths(E: Graph, v1: Iterable[str], v2: Iterable[str]) -> Tuple[PathSetSpec, PathSetSpec]:
    """P_i = paths with source in V_i"""
    v1, v2 = frozenset(v1), frozenset(v2)
    if not v1 or not v2:
        raise InvalidPathError("both vertex sets must be nonempty")
    if v1 & v2 or v1 | v2 != frozenset(E.vertices):
        raise InvalidPathError("V1 and V2 must partition the vertices")
    return (make_path_set(E.vertex_path(v) for v in v1),
            make_path_set(E.vertex_path(v) for v in v2))


@dataclass(frozen=True)
class ConditionResult:
    ok: bool
    counterexample: Optional[Path] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "counterexample": str(self.counterexample) if self.counterexample is not None else None,
        }


@dataclass(frozen=True)
class PathConditionsReport:
    conditions: Mapping[int, ConditionResult]
    bound: int

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bound": self.bound,
            "conditions": {str(k): v.to_dict() for k, v in sorted(self.conditions.items())},
        }


def check_P_conditions(E: Graph, P1: PathSetSpec, P2: PathSetSpec) -> PathConditionsReport:
    """
    (1) P1 and P2 disjoint; (2) extension closure, automatic for generated sets;
    (3) paths ending at singular vertices covered; (4) infinite paths have a
    covered prefix. A generator prefixes a path iff it prefixes the path's
    prefix of length L* = 1 + max generator length, so (3) and (4) reduce to
    finitely many paths.
    """
    bound = 1 + max(P1.max_length, P2.max_length)
    results: Dict[int, ConditionResult] = {}

    overlap = next(
        (max(a, b, key=len) for a in P1.generators for b in P2.generators
         if a.has_prefix(b) or b.has_prefix(a)),
        None,
    )
    results[1] = ConditionResult(overlap is None, overlap)
    results[2] = ConditionResult(True)

    def covered(p: Path) -> bool:
        return p in P1 or p in P2

    candidates = paths_up_to(E, bound)
    uncovered_long = [p for p in candidates if len(p) == bound and not covered(p)]

    bad_singular = next((p for p in candidates if E.is_sink(p.target) and not covered(p)), None)
    if bad_singular is None:
        bad_singular = next((p for p in uncovered_long if E.reaches_sink(p.target)), None)
    results[3] = ConditionResult(bad_singular is None, bad_singular)

    bad_infinite = next((p for p in uncovered_long if p.target in E.cycle_reaching), None)
    results[4] = ConditionResult(bad_infinite is None, bad_infinite)

    logger.debug("path conditions on %r with L* = %d: %s", E, bound,
                 {k: v.ok for k, v in results.items()})
    return PathConditionsReport(results, bound)
