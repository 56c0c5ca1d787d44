"""
Steinberg MaxComm - exact maximal commutative subalgebras of Steinberg and Leavitt path algebras
"""

__version__ = "1.0.0"

from .core.verifier import VerificationSystem, Command
from .core.logger import VerificationLogger
from .core.groupoid import Groupoid, LazyPairGroupoid, pair_groupoid, group_groupoid, disjoint_union, validate
from .core.algebra import AlgebraElement, INTEGERS, RATIONALS
from .core.subspace import SubspaceBasis, center_basis, centralizer_basis, is_maximal_commutative
from .core.partition import make_partition, derive, build_T, verify_main_theorem
from .core.graph import Graph, Path, make_graph
from .core.leavitt import LpaElement, normal_form, lpa_mul, parse_lpa_expression, format_lpa
from .core.graph_groupoid import graph_groupoid, pi_E, disjointify, build_T_lpa
from .config.settings import VerificationConfig

__all__ = [
    "VerificationSystem",
    "Command",
    "VerificationLogger",
    "VerificationConfig",
    "Groupoid",
    "LazyPairGroupoid",
    "pair_groupoid",
    "group_groupoid",
    "disjoint_union",
    "validate",
    "AlgebraElement",
    "INTEGERS",
    "RATIONALS",
    "SubspaceBasis",
    "center_basis",
    "centralizer_basis",
    "is_maximal_commutative",
    "make_partition",
    "derive",
    "build_T",
    "verify_main_theorem",
    "Graph",
    "Path",
    "make_graph",
    "LpaElement",
    "normal_form",
    "lpa_mul",
    "parse_lpa_expression",
    "format_lpa",
    "graph_groupoid",
    "pi_E",
    "disjointify",
    "build_T_lpa",
]
