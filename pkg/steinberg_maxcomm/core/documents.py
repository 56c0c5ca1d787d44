"""
JSON interchange documents

Groupoid: {units: [id], morphisms: [{id, dom, ran, inv}], comp: [[x, y, xy]]}
Partition: {U1: [unit id], U2: [unit id]}
AlgebraElement: {morphism id: "numerator/denominator"}
Graph: {vertices: [id], edges: [{id, src, rng}]}
PathSetSpec: [path], a path being a list of edge ids or a vertex id
Cylinders: [{alpha: path, beta: path, F: [edge id]}]
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .algebra import AlgebraElement, ScalarRing, RATIONALS
from .errors import DocumentError, SteinbergError
from .graph import Graph, Path, PathSetSpec, make_graph, make_path_set
from .graph_groupoid import CylinderSet, cylinder
from .groupoid import Groupoid, MorphismId
from .partition import UnitPartition, make_partition


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}") from None


def _expect(value: Any, kind: type, location: str) -> Any:
    if not isinstance(value, kind) or isinstance(value, bool):
        raise DocumentError(f"expected {kind.__name__}, got {type(value).__name__}", location)
    return value


def _field(doc: Dict[str, Any], key: str, location: str) -> Any:
    if key not in doc:
        raise DocumentError(f"missing field {key!r}", location)
    return doc[key]


def groupoid_from_document(doc: Any, source: str = "groupoid") -> Groupoid:
    """
    Structural parse only: a table that breaks the axioms still loads so that
    validate() can list the violations.
    """
    _expect(doc, dict, source)
    units = [_expect(u, str, f"{source}.units[{i}]")
             for i, u in enumerate(_expect(_field(doc, "units", source), list, f"{source}.units"))]
    dom, ran, inv, comp = {}, {}, {}, {}
    for i, m in enumerate(_expect(_field(doc, "morphisms", source), list, f"{source}.morphisms")):
        where = f"{source}.morphisms[{i}]"
        _expect(m, dict, where)
        x = _expect(_field(m, "id", where), str, f"{where}.id")
        if x in dom:
            raise DocumentError(f"duplicate morphism id {x!r}", where)
        dom[x] = _expect(_field(m, "dom", where), str, f"{where}.dom")
        ran[x] = _expect(_field(m, "ran", where), str, f"{where}.ran")
        inv[x] = _expect(_field(m, "inv", where), str, f"{where}.inv")
    for i, row in enumerate(_expect(_field(doc, "comp", source), list, f"{source}.comp")):
        where = f"{source}.comp[{i}]"
        if not isinstance(row, list) or len(row) != 3 or not all(isinstance(c, str) for c in row):
            raise DocumentError("expected [x, y, xy] of morphism ids", where)
        comp[row[0], row[1]] = row[2]
    return Groupoid(units, dom, ran, inv, comp, name=str(doc.get("name", source)))


def _morphism(G: Groupoid, label: Any, location: str) -> MorphismId:
    _expect(label, str, location)
    try:
        return G.by_label(label)
    except KeyError:
        raise DocumentError(f"unknown morphism {label!r}", location) from None


def partition_from_document(G: Groupoid, doc: Any, source: str = "partition") -> UnitPartition:
    _expect(doc, dict, source)
    sides = []
    for key in ("U1", "U2"):
        where = f"{source}.{key}"
        ids = _expect(_field(doc, key, source), list, where)
        sides.append([_morphism(G, u, f"{where}[{i}]") for i, u in enumerate(ids)])
    try:
        return make_partition(G, *sides)
    except SteinbergError as e:
        raise DocumentError(str(e), source) from None


def _scalar(value: Any, ring: ScalarRing, location: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError("coefficients are integers or 'numerator/denominator' strings", location)
    try:
        return ring.coerce(value)
    except ZeroDivisionError:
        raise DocumentError("zero denominator", location) from None
    except ValueError as e:
        raise DocumentError(str(e), location) from None


def element_from_document(G: Groupoid, doc: Any, ring: ScalarRing = RATIONALS,
                          source: str = "element") -> AlgebraElement:
    _expect(doc, dict, source)
    coeffs = {}
    for label, value in doc.items():
        where = f"{source}[{label!r}]"
        coeffs[_morphism(G, label, where)] = _scalar(value, ring, where)
    return AlgebraElement(G, coeffs)


def elements_from_document(G: Groupoid, doc: Any, ring: ScalarRing = RATIONALS,
                           source: str = "elements") -> List[AlgebraElement]:
    _expect(doc, list, source)
    return [element_from_document(G, d, ring, f"{source}[{i}]") for i, d in enumerate(doc)]


def graph_from_document(doc: Any, source: str = "graph") -> Graph:
    _expect(doc, dict, source)
    vertices = [_expect(v, str, f"{source}.vertices[{i}]")
                for i, v in enumerate(_expect(_field(doc, "vertices", source), list, f"{source}.vertices"))]
    edges = []
    for i, e in enumerate(_expect(doc.get("edges", []), list, f"{source}.edges")):
        where = f"{source}.edges[{i}]"
        _expect(e, dict, where)
        edges.append(tuple(_expect(_field(e, k, where), str, f"{where}.{k}") for k in ("id", "src", "rng")))
    try:
        return make_graph(vertices, edges, name=str(doc.get("name", "")))
    except SteinbergError as e:
        raise DocumentError(str(e), source) from None


def path_from_document(E: Graph, doc: Any, location: str) -> Path:
    try:
        if isinstance(doc, str):
            return E.vertex_path(doc)
        if isinstance(doc, list) and doc and all(isinstance(e, str) for e in doc):
            return E.path(doc)
    except SteinbergError as e:
        raise DocumentError(str(e), location) from None
    raise DocumentError("a path is a nonempty list of edge ids or a vertex id", location)


def path_set_from_document(E: Graph, doc: Any, source: str = "pset") -> PathSetSpec:
    _expect(doc, list, source)
    paths = [path_from_document(E, p, f"{source}[{i}]") for i, p in enumerate(doc)]
    try:
        return make_path_set(paths)
    except SteinbergError as e:
        raise DocumentError(str(e), source) from None


def cylinders_from_document(E: Graph, doc: Any, source: str = "cylinders") -> List[CylinderSet]:
    _expect(doc, list, source)
    result = []
    for i, c in enumerate(doc):
        where = f"{source}[{i}]"
        _expect(c, dict, where)
        alpha = path_from_document(E, _field(c, "alpha", where), f"{where}.alpha")
        beta = path_from_document(E, _field(c, "beta", where), f"{where}.beta")
        forbidden = _expect(c.get("F", []), list, f"{where}.F")
        try:
            result.append(cylinder(E, alpha, beta, forbidden))
        except SteinbergError as e:
            raise DocumentError(str(e), where) from None
    return result


def cylinders_to_document(cylinders: Sequence[CylinderSet]) -> List[Dict[str, Any]]:
    return [c.to_document() for c in cylinders]
