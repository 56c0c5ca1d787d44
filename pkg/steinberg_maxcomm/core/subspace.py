"""
Exact subspaces of finite Steinberg algebras: centers, centralizers, maximality

All kernels are computed over QQ with sympy's DomainMatrix; integer inputs are
lifted to the fraction field and bases are reported in reduced echelon form
(pivot order = morphism order).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import AlgebraElement, ScalarRing, RATIONALS
from .errors import CarrierMismatchError, HypothesisViolation, NonCommutativeError
from .groupoid import Groupoid, conjugacy_classes

logger = logging.getLogger(__name__)


def _to_qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def _rows_of(matrix: DomainMatrix) -> List[List[Fraction]]:
    return [[Fraction(int(e.p), int(e.q)) for e in row] for row in matrix.to_Matrix().tolist()]


def _coordinate_matrix(G: Groupoid, elements: Sequence[AlgebraElement]) -> Optional[DomainMatrix]:
    rows: Dict[int, Dict[int, Any]] = {}
    for r, f in enumerate(e for e in elements if e):
        rows[r] = {G.sort_key(x): _to_qq(c) for x, c in f.items()}
    if not rows:
        return None
    return DomainMatrix(rows, (len(rows), len(G)), QQ)


class SubspaceBasis:
    """
    Linearly independent elements in canonical reduced echelon form.
    Build with SubspaceBasis.span(); equality of bases is equality of spans.
    """

    def __init__(self, groupoid: Groupoid, elements: Sequence[AlgebraElement]):
        self.groupoid = groupoid
        self.elements: Tuple[AlgebraElement, ...] = tuple(elements)
        self._pivots = tuple(min(e.support, key=groupoid.sort_key) for e in self.elements)

    @classmethod
    def span(cls, groupoid: Groupoid, elements: Sequence[AlgebraElement]) -> "SubspaceBasis":
        for e in elements:
            if e.groupoid != groupoid:
                raise CarrierMismatchError("span of elements over another groupoid")
        matrix = _coordinate_matrix(groupoid, elements)
        if matrix is None:
            return cls(groupoid, ())
        reduced, pivots = matrix.rref()
        rows = _rows_of(reduced)[:len(pivots)]
        morphisms = groupoid.morphisms
        basis = [
            AlgebraElement(groupoid, {morphisms[k]: c for k, c in enumerate(row) if c})
            for row in rows
        ]
        return cls(groupoid, basis)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.groupoid == other.groupoid and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim})"

    def residual(self, f: AlgebraElement) -> AlgebraElement:
        """f minus its echelon reduction against the basis; zero iff f is in the span"""
        r = f
        for pivot, b in zip(self._pivots, self.elements):
            c = r(pivot)
            if c:
                r = r - c * b
        return r

    def contains(self, f: AlgebraElement) -> bool:
        return not self.residual(f)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(e) for e in self.elements)

    def integral(self) -> Tuple[AlgebraElement, ...]:
        """Basis with denominators cleared and content removed"""
        result = []
        for e in self.elements:
            coeffs = [c for _, c in e.items()]
            scale = lcm(*(c.denominator for c in coeffs))
            content = gcd(*(int(c * scale) for c in coeffs))
            result.append(e * Fraction(scale, content))
        return tuple(result)

    def to_document(self, ring: ScalarRing = RATIONALS) -> Dict[str, Any]:
        elements = self.integral() if ring.integral else self.elements
        return {"canonical": True, "elements": [e.to_dict() for e in elements]}


def full_algebra_basis(G: Groupoid) -> SubspaceBasis:
    return SubspaceBasis(G, [AlgebraElement.delta(G, x) for x in G.morphisms])


def center_basis(G: Groupoid) -> SubspaceBasis:
    """Class sums over the conjugacy classes"""
    class_sums = [AlgebraElement(G, {x: 1 for x in cls}) for cls in conjugacy_classes(G)]
    return SubspaceBasis.span(G, class_sums)


def centralizer_basis(S: Sequence[AlgebraElement], ambient: SubspaceBasis) -> SubspaceBasis:
    """
    Basis of {f in span(ambient) : f*s = s*f for all s in S}, the kernel of the
    stacked commutator maps.
    """
    G = ambient.groupoid
    for s in S:
        if s.groupoid != G:
            raise CarrierMismatchError("centralizer of elements over another groupoid")
    S = [s for s in S if s]
    if not S or not ambient.dim:
        return ambient

    n = len(G)
    rows: Dict[int, Dict[int, Any]] = {}
    for k, b in enumerate(ambient.elements):
        for si, s in enumerate(S):
            for x, c in (b * s - s * b).items():
                rows.setdefault(si * n + G.sort_key(x), {})[k] = _to_qq(c)
    if not rows:
        return ambient

    system = DomainMatrix(rows, (len(S) * n, ambient.dim), QQ)
    kernel = _rows_of(system.nullspace())
    logger.debug("centralizer: %d constraints x %d unknowns -> kernel %d",
                 len(rows), ambient.dim, len(kernel))
    solutions = []
    for coeffs in kernel:
        f = AlgebraElement.zero(G)
        for c, b in zip(coeffs, ambient.elements):
            if c:
                f = f + c * b
        solutions.append(f)
    return SubspaceBasis.span(G, solutions)


def is_central(f: AlgebraElement) -> bool:
    G = f.groupoid
    return all(f * AlgebraElement.delta(G, x) == AlgebraElement.delta(G, x) * f for x in G.morphisms)


def check_center_oracle(G: Groupoid) -> bool:
    """Class-sum center equals the brute-force commutant of the whole algebra"""
    full = full_algebra_basis(G)
    return center_basis(G) == centralizer_basis(full.elements, full)


@dataclass(frozen=True)
class MaximalityResult:
    ok: bool
    dim: int
    centralizer_dim: int
    witness: Optional[AlgebraElement] = None

    def __bool__(self) -> bool:
        return self.ok


def require_commutative_subalgebra(T: SubspaceBasis) -> None:
    for a, b in combinations(T.elements, 2):
        if a * b != b * a:
            raise NonCommutativeError("candidate span is not commutative", (a, b))
    for a, b in product(T.elements, repeat=2):
        if not T.contains(a * b):
            raise HypothesisViolation("candidate span is not closed under convolution",
                                      [repr(a), repr(b)])


def is_maximal_commutative(T: SubspaceBasis, ambient: SubspaceBasis) -> MaximalityResult:
    """T is maximal commutative iff it is its own centralizer in span(ambient)"""
    require_commutative_subalgebra(T)
    C = centralizer_basis(T.elements, ambient)
    witness = next((c for c in C.elements if not T.contains(c)), None)
    return MaximalityResult(ok=witness is None, dim=T.dim, centralizer_dim=C.dim, witness=witness)
