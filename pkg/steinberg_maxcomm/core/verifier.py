"""
Verification System
Reads interchange documents, dispatches one verb to its module operation and
assembles the report; timing and memory go to the log only.
"""

import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

try:
    import psutil
    HAS_PSUTIL = True
except ImportError:
    HAS_PSUTIL = False

from .. import __version__
from ..config.settings import VerificationConfig
from .algebra import ring_by_name
from .documents import (
    cylinders_from_document,
    cylinders_to_document,
    elements_from_document,
    graph_from_document,
    groupoid_from_document,
    load_json,
    partition_from_document,
    path_set_from_document,
)
from .errors import DocumentError, HypothesisViolation, SteinbergError
from .graph import check_P_conditions, is_downward_directed
from .graph_groupoid import build_T_lpa, cylinder_members, disjointify, graph_groupoid
from .groupoid import Groupoid, is_topologically_transitive, validate
from .leavitt import (
    check_relations,
    commutes_up_to_degree,
    format_lpa,
    lpa_commutator,
    parse_lpa_expression,
    t_generators,
    witness_noncommuting,
)
from .logger import EventType, VerificationLogger
from .partition import (
    center_iff_class_on_W,
    check_block_calculus,
    check_interior_lemma,
    check_prime_hypotheses,
    derive,
    jacobson_bound,
    technical_lemma_suite,
    verify_main_theorem,
)
from .report import PerformanceMetric, Report, Status, input_digest
from .subspace import center_basis, centralizer_basis, check_center_oracle, full_algebra_basis

VERBS = (
    "validate", "center", "centralizer", "maxcomm-derive", "maxcomm-verify",
    "lpa-mul", "lpa-normal", "lpa-verify", "groupoid-of-graph", "disjointify",
)


@dataclass
class Command:
    verb: str
    input: Optional[str] = None
    partition: Optional[str] = None
    pset1: Optional[str] = None
    pset2: Optional[str] = None
    elements: Optional[str] = None
    cylinders: Optional[str] = None
    exprs: List[str] = field(default_factory=list)
    degree: Optional[int] = None
    ring: Optional[str] = None
    seed: Optional[int] = None

    def options(self) -> Dict[str, Any]:
        return {"verb": self.verb, "degree": self.degree, "ring": self.ring,
                "seed": self.seed, "exprs": self.exprs}


class VerificationSystem:
    """One instance per process; run() is the single entry point per command"""

    def __init__(self, config: Optional[VerificationConfig] = None):
        self.config = config or VerificationConfig()
        self.logger = VerificationLogger(self.config)
        self._validate_config()
        self._handlers: Dict[str, Callable[[Command, Report, Dict[str, Any]], None]] = {
            "validate": self._validate,
            "center": self._center,
            "centralizer": self._centralizer,
            "maxcomm-derive": self._maxcomm_derive,
            "maxcomm-verify": self._maxcomm_verify,
            "lpa-mul": self._lpa_mul,
            "lpa-normal": self._lpa_normal,
            "lpa-verify": self._lpa_verify,
            "groupoid-of-graph": self._groupoid_of_graph,
            "disjointify": self._disjointify,
        }

    def _validate_config(self):
        errors = self.config.validate()
        for error in errors:
            self.logger.warning(f"Configuration error: {error}", EventType.SYSTEM_EVENT)

    def _apply_defaults(self, command: Command) -> Command:
        if command.degree is None:
            command.degree = self.config.degree
        if command.ring is None:
            command.ring = self.config.ring.value
        if command.seed is None:
            command.seed = self.config.seed
        return command

    # Documents

    def _read(self, path: Optional[str], what: str) -> Tuple[Any, str]:
        if not path:
            raise DocumentError(f"--{what} is required for this command", what)
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise DocumentError(e.strerror or str(e), path) from None
        return load_json(text, path), text

    def _load(self, command: Command) -> Tuple[Dict[str, Any], List[str]]:
        """Parse every document the verb needs before any computation"""
        verb = command.verb
        docs: Dict[str, Any] = {}
        raw: List[str] = []

        def read(path, what):
            doc, text = self._read(path, what)
            raw.append(text)
            return doc

        ring = ring_by_name(command.ring)
        if verb in ("validate", "center", "centralizer", "maxcomm-derive", "maxcomm-verify"):
            G = groupoid_from_document(read(command.input, "input"), command.input)
            docs["groupoid"] = G
            if verb == "centralizer":
                docs["elements"] = elements_from_document(G, read(command.elements, "elements"), ring,
                                                          command.elements)
            if verb in ("maxcomm-derive", "maxcomm-verify"):
                docs["partition"] = partition_from_document(G, read(command.partition, "partition"),
                                                            command.partition)
        else:
            E = graph_from_document(read(command.input, "input"), command.input)
            docs["graph"] = E
            if verb in ("lpa-mul", "lpa-normal") and not command.exprs:
                raise DocumentError("at least one --expr is required", "expr")
            docs["exprs"] = [parse_lpa_expression(E, text) for text in command.exprs]
            if verb == "lpa-verify":
                docs["pset1"] = path_set_from_document(E, read(command.pset1, "pset1"), command.pset1)
                docs["pset2"] = path_set_from_document(E, read(command.pset2, "pset2"), command.pset2)
            if verb == "disjointify":
                docs["cylinders"] = cylinders_from_document(E, read(command.cylinders, "cylinders"),
                                                            command.cylinders)
        docs["ring"] = ring
        return docs, raw

    # Entry point

    def run(self, command: Command) -> Report:
        command = self._apply_defaults(command)
        report = Report(command=command.verb, tool_version=__version__,
                        input_digest=input_digest([], command.options()))
        if command.verb not in self._handlers:
            report.reject(f"unknown command {command.verb!r}; expected one of {', '.join(VERBS)}")
            return report

        self.logger.log_command({"command": command.verb, "phase": "start", "options": command.options()})
        started = time.perf_counter()
        try:
            docs, raw = self._load(command)
            report.input_digest = input_digest(raw, command.options())
            self._handlers[command.verb](command, report, docs)
        except HypothesisViolation as e:
            report.reject(str(e), e.violations)
            self.logger.log_error_event({"command": command.verb, "error_message": str(e),
                                         "violations": e.violations})
        except SteinbergError as e:
            report.reject(str(e))
            self.logger.log_error_event({"command": command.verb, "error_message": str(e),
                                         "error_type": type(e).__name__})
        except ValueError as e:
            report.reject(str(e))
            self.logger.log_error_event({"command": command.verb, "error_message": str(e),
                                         "error_type": "ValueError"})

        self._record_performance(command.verb, time.perf_counter() - started)
        self.logger.log_command({"command": command.verb, "phase": "finish", "status": report.status.value})
        return report

    def _record_performance(self, verb: str, elapsed: float):
        if not self.config.enable_performance_monitoring:
            return
        metrics = [PerformanceMetric(datetime.now(timezone.utc).isoformat(), "elapsed", round(elapsed, 6),
                                     "s", verb)]
        if HAS_PSUTIL:
            rss = psutil.Process().memory_info().rss
            metrics.append(PerformanceMetric(datetime.now(timezone.utc).isoformat(), "rss", rss, "bytes", verb))
        for m in metrics:
            self.logger.log_performance_metric({"command": verb, "metric_name": m.metric_name,
                                                "value": m.metric_value, "unit": m.unit})

    def _check(self, report: Report, event_type: EventType, name: str, ok: bool, **detail):
        report.add_check(name, ok, **detail)
        self.logger.log_check(event_type, {"command": report.command, "check": name, "ok": bool(ok)})

    def _require_valid(self, G: Groupoid, report: Report):
        validation = validate(G)
        if not validation.ok:
            report.result["violations"] = validation.to_dict()["violations"]
            raise HypothesisViolation("input is not a groupoid", validation.codes())

    # Groupoid verbs

    def _validate(self, command: Command, report: Report, docs: Dict[str, Any]):
        G = docs["groupoid"]
        validation = validate(G)
        report.dimensions.update({"morphisms": len(G), "units": len(G.units)})
        report.result.update(validation.to_dict())
        if validation.ok:
            self._check(report, EventType.GROUPOID, "groupoid axioms", True)
        else:
            self.logger.log_check(EventType.GROUPOID, {"command": report.command, "check": "groupoid axioms",
                                                       "ok": False})
            report.reject("groupoid axioms violated", validation.codes())

    def _center(self, command: Command, report: Report, docs: Dict[str, Any]):
        G, ring = docs["groupoid"], docs["ring"]
        self._require_valid(G, report)
        center = center_basis(G)
        report.dimensions.update({"algebra": len(G), "center": center.dim})
        report.result["center"] = center.to_document(ring)
        self._check(report, EventType.ALGEBRA, "class sums span the commutant", check_center_oracle(G))

    def _centralizer(self, command: Command, report: Report, docs: Dict[str, Any]):
        G, ring = docs["groupoid"], docs["ring"]
        self._require_valid(G, report)
        C = centralizer_basis(docs["elements"], full_algebra_basis(G))
        report.dimensions.update({"algebra": len(G), "centralizer": C.dim})
        report.result["centralizer"] = C.to_document(ring)
        self._check(report, EventType.ALGEBRA, "centralizer contains center",
                    center_basis(G).is_subspace_of(C))

    def _maxcomm_derive(self, command: Command, report: Report, docs: Dict[str, Any]):
        G, p = docs["groupoid"], docs["partition"]
        self._require_valid(G, report)
        dp = derive(G, p)
        problems = check_prime_hypotheses(G, docs["ring"])
        interior = check_interior_lemma(G, dp)
        report.result["derived"] = dp.to_dict(G)
        report.result["prime"] = not problems
        report.result["prime_problems"] = problems
        report.result["interior_lemma"] = {
            "v_empty": interior.v_empty,
            "w_closed": interior.w_closed,
            "counterexample": [G.label(x) for x in interior.counterexample] if interior.counterexample else None,
        }
        if not problems:
            self._check(report, EventType.PARTITION, "interior lemma", interior.ok)
        calculus = check_block_calculus(G, p)
        self._check(report, EventType.PARTITION, "block calculus", calculus.ok,
                    products=calculus.products_checked, nonzero=calculus.nonzero_products)

    def _maxcomm_verify(self, command: Command, report: Report, docs: Dict[str, Any]):
        G, p, ring = docs["groupoid"], docs["partition"], docs["ring"]
        self._require_valid(G, report)
        theorem = verify_main_theorem(G, p, ring)
        report.dimensions.update({
            "T": theorem.dim_t,
            "C(T)": theorem.dim_ct,
            "center": theorem.center_dim,
            "A21": theorem.block_dim,
            "bound": jacobson_bound(len(G.units)),
        })
        if theorem.witness is not None:
            report.witnesses["maximality"] = theorem.witness.to_dict()
        self._check(report, EventType.PARTITION, "C(T) = T", theorem.maximal)
        self._check(report, EventType.PARTITION, "dim T within bound",
                    theorem.dim_t <= jacobson_bound(len(G.units)))

        dp = derive(G, p)
        self._check(report, EventType.PARTITION, "interior lemma", check_interior_lemma(G, dp).ok)
        self._check(report, EventType.PARTITION, "block calculus", check_block_calculus(G, p).ok)
        equivalence = center_iff_class_on_W(G, dp, ring, self.config.random_samples, command.seed)
        if equivalence.discrepancy is not None:
            report.witnesses["center_class_function"] = equivalence.discrepancy.to_dict()
        self._check(report, EventType.PARTITION, "center iff class function on dom^-1(W)", equivalence.ok,
                    checked=equivalence.checked)
        lemma = technical_lemma_suite(G, p, ring, self.config.witness_samples, self.config.lazy_window,
                                      command.seed)
        report.dimensions["C(A21)"] = lemma.centralizer_dim
        for k, item in sorted(lemma.items.items()):
            self._check(report, EventType.PARTITION, f"centralizer lemma item {k}", item.ok,
                        checked=item.checked, detail=item.detail)

    # Graph verbs

    def _lpa_mul(self, command: Command, report: Report, docs: Dict[str, Any]):
        factors = docs["exprs"]
        product_ = factors[0]
        for f in factors[1:]:
            product_ = product_ * f
        report.result["product"] = format_lpa(product_)
        report.result["terms"] = product_.to_dict()

    def _lpa_normal(self, command: Command, report: Report, docs: Dict[str, Any]):
        report.result["normal_form"] = [format_lpa(x) for x in docs["exprs"]]

    def _lpa_verify(self, command: Command, report: Report, docs: Dict[str, Any]):
        E, P1, P2, ring = docs["graph"], docs["pset1"], docs["pset2"], docs["ring"]
        relations = check_relations(E)
        for name, r in relations.relations.items():
            self._check(report, EventType.LEAVITT, f"relation {name}", r.ok, checked=r.checked,
                        failure=r.failure)
        conditions = check_P_conditions(E, P1, P2)
        report.result["path_conditions"] = conditions.to_dict()
        report.result["downward_directed"] = is_downward_directed(E)

        candidate = build_T_lpa(E, P1, P2, ring)
        report.result["candidate"] = candidate.to_dict()
        if not candidate.deferred:
            report.dimensions.update({"T": candidate.dim_t, "C(T)": candidate.dim_ct,
                                      "center": candidate.center_dim, "A12": candidate.block_dim})
            if candidate.witness is not None:
                report.witnesses["maximality"] = candidate.witness.to_dict()
            self._check(report, EventType.LEAVITT, "C(T) = T", candidate.maximal)
            self._check(report, EventType.LEAVITT, "pi_E identifies the A-part with A12",
                        candidate.identification)
            return

        gens = t_generators(E, P1, P2)
        commutation = commutes_up_to_degree(E, gens, command.degree)
        report.result["commutation"] = commutation.to_dict()
        self._check(report, EventType.LEAVITT, f"commutative to degree {command.degree}", commutation.ok)
        self._check(report, EventType.LEAVITT, "A-part squares to zero", commutation.square_zero)
        for text, x in zip(command.exprs, docs["exprs"]):
            g = witness_noncommuting(E, x, gens, command.degree)
            report.witnesses[text] = None if g is None else {
                "generator": format_lpa(g),
                "commutator": format_lpa(lpa_commutator(g, x)),
            }

    def _groupoid_of_graph(self, command: Command, report: Report, docs: Dict[str, Any]):
        E = docs["graph"]
        G = graph_groupoid(E)
        report.dimensions.update({"morphisms": len(G), "units": len(G.units)})
        report.result["groupoid"] = G.to_document()
        self._check(report, EventType.GROUPOID, "groupoid axioms", validate(G).ok)
        self._check(report, EventType.GROUPOID, "transitive iff downward directed",
                    is_topologically_transitive(G) == is_downward_directed(E),
                    transitive=is_topologically_transitive(G))

    def _disjointify(self, command: Command, report: Report, docs: Dict[str, Any]):
        E, cylinders = docs["graph"], docs["cylinders"]
        result = disjointify(cylinders, E)
        report.result["cylinders"] = cylinders_to_document(result)
        report.dimensions.update({"input": len(cylinders), "output": len(result)})
        if not E.is_acyclic:
            return
        members = [cylinder_members(c, E) for c in result]
        union_in = frozenset().union(*(cylinder_members(c, E) for c in cylinders))
        disjoint = sum(map(len, members)) == len(frozenset().union(*members))
        self._check(report, EventType.LEAVITT, "pairwise disjoint", disjoint)
        self._check(report, EventType.LEAVITT, "union preserved", frozenset().union(*members) == union_in)
