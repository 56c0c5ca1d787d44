"""
Command-line front door: argument parsing only, computation lives in core/
"""

import argparse
import sys
from typing import List, Optional

from . import __version__
from .config.settings import LogLevel, RingChoice, VerificationConfig
from .core.verifier import VERBS, Command, VerificationSystem


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinberg-maxcomm",
        description="Exact verification of maximal commutative subalgebras of Steinberg and Leavitt path algebras",
    )
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--input", help="groupoid or graph document")
    parser.add_argument("--partition", help="unit partition document {U1, U2}")
    parser.add_argument("--pset1", help="path set P1 (lpa-verify)")
    parser.add_argument("--pset2", help="path set P2 (lpa-verify)")
    parser.add_argument("--elements", help="list of algebra elements (centralizer)")
    parser.add_argument("--cylinders", help="list of cylinder sets (disjointify)")
    parser.add_argument("--expr", action="append", default=[], dest="exprs",
                        help="Leavitt path algebra expression; repeatable")
    parser.add_argument("--degree", type=int, help="degree bound L for the cyclic-graph checks")
    parser.add_argument("--ring", choices=[r.value for r in RingChoice], help="scalar ring")
    parser.add_argument("--seed", type=int, help="seed for randomized sweeps")
    parser.add_argument("--json", action="store_true", help="emit the full JSON report")
    parser.add_argument("--log-level", choices=[level.value for level in LogLevel])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _summary(report) -> str:
    lines = [f"{report.command}: {report.status.value}"]
    lines += [f"  dim {name} = {value}" for name, value in sorted(report.dimensions.items())]
    lines += [f"  [{'ok' if c.ok else 'FAIL'}] {c.name}" for c in report.checks]
    lines += [f"  error: {e}" for e in report.errors]
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = VerificationConfig()
    if args.log_level:
        config.log_level = LogLevel(args.log_level)

    command = Command(
        verb=args.verb,
        input=args.input,
        partition=args.partition,
        pset1=args.pset1,
        pset2=args.pset2,
        elements=args.elements,
        cylinders=args.cylinders,
        exprs=args.exprs,
        degree=args.degree,
        ring=args.ring,
        seed=args.seed,
    )
    report = VerificationSystem(config).run(command)
    sys.stdout.write((report.to_json() if args.json else _summary(report)) + "\n")
    return report.exit_code
