"""
Leavitt path algebra arithmetic in special-edge normal form

Every element is a combination of monomials alpha beta* with r(alpha) = r(beta).
For each regular vertex v the maximal out-edge g is special, and the CK2
relation is oriented as

    (alpha g)(beta g)*  ->  alpha beta*  -  sum_{e in s^-1(v), e != g} (alpha e)(beta e)*

A monomial is normal when alpha and beta do not both end in the same special edge.
"""

import logging
import random
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import format_scalar, to_scalar
from .errors import CarrierMismatchError, DocumentError, InvalidPathError
from .graph import Graph, Path, PathSetSpec, paths_up_to

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpaTerm:
    """The monomial alpha beta*"""
    alpha: Path
    beta: Path

    def __post_init__(self):
        if self.alpha.target != self.beta.target:
            raise InvalidPathError(f"r({self.alpha}) != r({self.beta})")

    @property
    def sort_key(self):
        return (len(self.alpha) + len(self.beta), self.alpha.sort_key, self.beta.sort_key)

    @property
    def star(self) -> "LpaTerm":
        return LpaTerm(self.beta, self.alpha)

    def __str__(self) -> str:
        if not self.alpha.edges and not self.beta.edges:
            return self.alpha.source
        ghosts = "".join(f"{e}*" for e in reversed(self.beta.edges))
        return "".join(self.alpha.edges) + ghosts


def _edge_path(E: Graph, e: str) -> Path:
    return Path(E.src(e), (e,), E.rng(e))


def _drop_last(E: Graph, p: Path) -> Path:
    return Path(p.source, p.edges[:-1], E.src(p.edges[-1]))


def reducible_edge(E: Graph, term: LpaTerm) -> Optional[str]:
    """The special edge both sides end in, if any"""
    a, b = term.alpha.edges, term.beta.edges
    if not a or not b or a[-1] != b[-1]:
        return None
    g = a[-1]
    return g if E.special_edge(E.src(g)) == g else None


class LpaElement:
    """
    Element of L_R(E) held in normal form with exact coefficients.
    Build with normal_form() or the classmethod constructors.
    """

    __slots__ = ("graph", "_coeffs")

    def __init__(self, graph: Graph, coeffs: Optional[Mapping[LpaTerm, Any]] = None):
        cleaned = {}
        for term, c in (coeffs or {}).items():
            q = to_scalar(c)
            if q:
                cleaned[term] = q
        self.graph = graph
        self._coeffs: Dict[LpaTerm, Fraction] = cleaned

    @classmethod
    def zero(cls, E: Graph) -> "LpaElement":
        return cls(E)

    @classmethod
    def monomial(cls, E: Graph, alpha: Path, beta: Path, coefficient: Any = 1) -> "LpaElement":
        return normal_form(E, {LpaTerm(alpha, beta): coefficient})

    @classmethod
    def vertex(cls, E: Graph, v: str) -> "LpaElement":
        p = E.vertex_path(v)
        return cls(E, {LpaTerm(p, p): 1})

    @classmethod
    def edge(cls, E: Graph, e: str) -> "LpaElement":
        return cls.monomial(E, _edge_path(E, e), E.vertex_path(E.rng(e)))

    @classmethod
    def ghost(cls, E: Graph, e: str) -> "LpaElement":
        return cls.monomial(E, E.vertex_path(E.rng(e)), _edge_path(E, e))

    @classmethod
    def unit(cls, E: Graph) -> "LpaElement":
        """Sum of all vertices, the identity of L_R(E) for finite E"""
        return cls(E, {LpaTerm(E.vertex_path(v), E.vertex_path(v)): 1 for v in E.vertices})

    def coefficient(self, term: LpaTerm) -> Fraction:
        return self._coeffs.get(term, Fraction(0))

    @property
    def terms(self) -> Tuple[LpaTerm, ...]:
        return tuple(sorted(self._coeffs, key=lambda t: t.sort_key))

    def items(self) -> List[Tuple[LpaTerm, Fraction]]:
        return [(t, self._coeffs[t]) for t in self.terms]

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "LpaElement") -> None:
        if self.graph != other.graph:
            raise CarrierMismatchError(f"{self.graph!r} and {other.graph!r} differ")

    def __add__(self, other: "LpaElement") -> "LpaElement":
        self._check(other)
        acc = dict(self._coeffs)
        for t, c in other._coeffs.items():
            acc[t] = acc.get(t, 0) + c
        return LpaElement(self.graph, acc)

    def __neg__(self) -> "LpaElement":
        return LpaElement(self.graph, {t: -c for t, c in self._coeffs.items()})

    def __sub__(self, other: "LpaElement") -> "LpaElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LpaElement):
            return lpa_mul(self, other)
        q = to_scalar(other)
        return LpaElement(self.graph, {t: q * c for t, c in self._coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self.graph == other.graph and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return format_lpa(self)

    def star(self) -> "LpaElement":
        """Involution fixing the scalars"""
        return LpaElement(self.graph, {t.star: c for t, c in self._coeffs.items()})

    def to_dict(self) -> Dict[str, str]:
        return {str(t): format_scalar(c) for t, c in self.items()}


RawTerms = Union[Mapping[LpaTerm, Any], Iterable[Tuple[LpaTerm, Any]]]


def normal_form(E: Graph, raw: RawTerms, rng: Optional[random.Random] = None) -> LpaElement:
    """
    Reduce a raw combination of monomials. Each rewrite either shortens both
    paths or produces normal monomials, so the worklist drains. With rng the
    next monomial to rewrite is picked at random.
    """
    pairs = raw.items() if isinstance(raw, Mapping) else raw
    pending = [(term, to_scalar(c)) for term, c in pairs]
    result: Dict[LpaTerm, Fraction] = defaultdict(Fraction)
    while pending:
        index = rng.randrange(len(pending)) if rng is not None else len(pending) - 1
        term, c = pending.pop(index)
        if not c:
            continue
        g = reducible_edge(E, term)
        if g is None:
            result[term] += c
            continue
        alpha, beta = _drop_last(E, term.alpha), _drop_last(E, term.beta)
        pending.append((LpaTerm(alpha, beta), c))
        for e in E.out_edges(E.src(g)):
            if e != g:
                step = _edge_path(E, e)
                pending.append((LpaTerm(alpha.then(step), beta.then(step)), -c))
    return LpaElement(E, result)


def monomial_product(s: LpaTerm, t: LpaTerm) -> Optional[LpaTerm]:
    """(alpha beta*)(gamma delta*) before reduction; None when it vanishes"""
    alpha, beta, gamma, delta = s.alpha, s.beta, t.alpha, t.beta
    if gamma.has_prefix(beta):
        return LpaTerm(alpha.then(gamma.strip_prefix(beta)), delta)
    if beta.has_prefix(gamma):
        return LpaTerm(alpha, delta.then(beta.strip_prefix(gamma)))
    return None


def lpa_mul(x: LpaElement, y: LpaElement) -> LpaElement:
    x._check(y)
    raw: Dict[LpaTerm, Fraction] = defaultdict(Fraction)
    for s, a in x._coeffs.items():
        for t, b in y._coeffs.items():
            st = monomial_product(s, t)
            if st is not None:
                raw[st] += a * b
    return normal_form(x.graph, raw)


def lpa_commutator(x: LpaElement, y: LpaElement) -> LpaElement:
    return x * y - y * x


@dataclass
class RelationCheck:
    ok: bool = True
    checked: int = 0
    failure: str = ""

    def expect(self, lhs: LpaElement, rhs: LpaElement, text: str) -> None:
        self.checked += 1
        if lhs != rhs and self.ok:
            self.ok = False
            self.failure = f"{text}: got {lhs!r}, expected {rhs!r}"


@dataclass
class RelationsReport:
    relations: Dict[str, RelationCheck] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.relations.values())

    def to_dict(self) -> Dict[str, Any]:
        return {name: {"ok": r.ok, "checked": r.checked, "failure": r.failure}
                for name, r in self.relations.items()}


def check_relations(E: Graph) -> RelationsReport:
    """(V), (E1), (E2), (CK1) and (CK2) on every generator"""
    report = RelationsReport({name: RelationCheck() for name in ("V", "E1", "E2", "CK1", "CK2")})
    vertex = {v: LpaElement.vertex(E, v) for v in E.vertices}
    edge = {e: LpaElement.edge(E, e) for e in E.edge_ids}
    ghost = {e: LpaElement.ghost(E, e) for e in E.edge_ids}
    zero = LpaElement.zero(E)

    for v, w in ((v, w) for v in E.vertices for w in E.vertices):
        report.relations["V"].expect(vertex[v] * vertex[w], vertex[v] if v == w else zero, f"{v}{w}")
    for e in E.edge_ids:
        s, r = vertex[E.src(e)], vertex[E.rng(e)]
        report.relations["E1"].expect(s * edge[e], edge[e], f"s({e}){e}")
        report.relations["E1"].expect(edge[e] * r, edge[e], f"{e}r({e})")
        report.relations["E2"].expect(r * ghost[e], ghost[e], f"r({e}){e}*")
        report.relations["E2"].expect(ghost[e] * s, ghost[e], f"{e}*s({e})")
        for f in E.edge_ids:
            report.relations["CK1"].expect(ghost[e] * edge[f], r if e == f else zero, f"{e}*{f}")
    for v in E.vertices:
        if E.is_sink(v):
            continue
        total = zero
        for e in E.out_edges(v):
            total = total + edge[e] * ghost[e]
        report.relations["CK2"].expect(vertex[v], total, f"CK2 at {v}")
    logger.debug("relations on %r: %s", E, {k: r.ok for k, r in report.relations.items()})
    return report


def format_lpa(x: LpaElement) -> str:
    """Text form such as 'v - e1e1*' or '2e1e1* - v'"""
    if not x:
        return "0"
    parts = []
    for i, (term, c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if magnitude == 1:
            body = str(term)
        else:
            scalar = str(magnitude.numerator) if magnitude.denominator == 1 else f"{magnitude.numerator}/{magnitude.denominator} "
            body = f"{scalar}{term}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_NUMBER = re.compile(r"\d+(?:/\d+)?")


def _tokenize(E: Graph, text: str) -> List[Tuple[str, Any, int]]:
    names = sorted(list(E.vertices) + list(E.edge_ids), key=len, reverse=True)
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-":
            tokens.append(("sign", ch, pos))
            pos += 1
            continue
        number = _NUMBER.match(text, pos)
        if number:
            try:
                value = Fraction(number.group())
            except ZeroDivisionError:
                raise DocumentError("zero denominator", f"column {pos + 1}") from None
            tokens.append(("number", value, pos))
            pos = number.end()
            continue
        name = next((n for n in names if text.startswith(n, pos)), None)
        if name is None:
            raise DocumentError(f"unexpected {text[pos:pos + 8]!r}", f"column {pos + 1}")
        end = pos + len(name)
        ghost = end < len(text) and text[end] == "*"
        if ghost and E.is_vertex(name):
            ghost = False
            end += 1
        elif ghost:
            end += 1
        tokens.append(("ghost" if ghost else "name", name, pos))
        pos = end
    return tokens


def parse_lpa_expression(E: Graph, text: str) -> LpaElement:
    """
    Parse sums of products such as '2e1e2* - 1/2 v'. Juxtaposition is the
    product; identifiers are matched longest first against the graph's ids;
    'e*' is the ghost edge of e. A bare scalar denotes a multiple of the unit.
    """
    tokens = _tokenize(E, text)
    if not tokens:
        raise DocumentError("empty expression", "column 1")
    total = LpaElement.zero(E)
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "sign":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coefficient = Fraction(sign)
        if i < len(tokens) and tokens[i][0] == "number":
            coefficient *= tokens[i][1]
            i += 1
        factors = []
        while i < len(tokens) and tokens[i][0] in ("name", "ghost"):
            kind, name, _ = tokens[i]
            if kind == "ghost":
                factors.append(LpaElement.ghost(E, name))
            elif E.is_vertex(name):
                factors.append(LpaElement.vertex(E, name))
            else:
                factors.append(LpaElement.edge(E, name))
            i += 1
        if i < len(tokens) and tokens[i][0] == "number":
            raise DocumentError("scalar inside a product", f"column {tokens[i][2] + 1}")
        product_ = LpaElement.unit(E)
        if factors:
            product_ = factors[0]
            for f in factors[1:]:
                product_ = product_ * f
        elif i > 0 and tokens[i - 1][0] == "sign":
            raise DocumentError("dangling sign", f"column {tokens[i - 1][2] + 1}")
        total = total + coefficient * product_
    return total


@dataclass(frozen=True)
class TGenerators:
    """Z-part generators plus the monomials alpha beta* with alpha in P1 and beta in P2"""
    center: Tuple[LpaElement, ...]
    p1: PathSetSpec
    p2: PathSetSpec

    def a_part(self, E: Graph, degree: int) -> List[LpaElement]:
        paths = paths_up_to(E, degree)
        left = [p for p in paths if p in self.p1]
        right = [p for p in paths if p in self.p2]
        pairs = sorted(
            (LpaTerm(a, b) for a in left for b in right if a.target == b.target),
            key=lambda t: t.sort_key,
        )
        return [normal_form(E, {t: 1}) for t in pairs]

    def elements(self, E: Graph, degree: int) -> List[LpaElement]:
        return list(self.center) + self.a_part(E, degree)


def t_generators(E: Graph, p1: PathSetSpec, p2: PathSetSpec,
                 center: Optional[Sequence[LpaElement]] = None) -> TGenerators:
    """Center defaults to the unit, which is central in L_R(E) for finite E"""
    return TGenerators(tuple(center) if center is not None else (LpaElement.unit(E),), p1, p2)


@dataclass(frozen=True)
class CommutationReport:
    ok: bool
    degree: int
    generators: int
    pairs_checked: int
    square_zero: bool
    failure: Optional[Tuple[LpaElement, LpaElement]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "degree": self.degree,
            "generators": self.generators,
            "pairs_checked": self.pairs_checked,
            "square_zero": self.square_zero,
            "failure": [format_lpa(x) for x in self.failure] if self.failure else None,
        }


def commutes_up_to_degree(E: Graph, T_gens: TGenerators, L: int) -> CommutationReport:
    """
    [x, y] = 0 for all generators with |alpha|, |beta| <= L, and whether the
    product of any two A-part generators vanishes.
    """
    if L < 1:
        raise ValueError("degree bound must be at least 1")
    a_part = T_gens.a_part(E, L)
    gens = list(T_gens.center) + a_part
    failure = None
    checked = 0
    for x, y in combinations(gens, 2):
        checked += 1
        if lpa_commutator(x, y):
            failure = (x, y)
            break
    square_zero = all(not (x * y) for x in a_part for y in a_part)
    logger.debug("degree %d on %r: %d generators, %d pairs", L, E, len(gens), checked)
    return CommutationReport(failure is None, L, len(gens), checked, square_zero, failure)


def witness_noncommuting(E: Graph, candidate: Union[LpaTerm, LpaElement], T_gens: TGenerators,
                         L: int) -> Optional[LpaElement]:
    """First T-generator up to degree L that fails to commute with candidate; a bare term is lifted"""
    if isinstance(candidate, LpaTerm):
        candidate = LpaElement.monomial(E, candidate.alpha, candidate.beta)
    for g in T_gens.elements(E, L):
        if lpa_commutator(g, candidate):
            return g
    return None
