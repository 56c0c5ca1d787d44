"""
Report records for verification commands
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Union


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    REJECTED = "rejected-hypothesis"

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.REJECTED: 2}[self]


@dataclass
class CheckResult:
    """One named check inside a report"""
    name: str
    ok: bool
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Report:
    command: str
    tool_version: str
    input_digest: str
    status: Status = Status.PASS
    dimensions: Dict[str, int] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    result: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)

    def add_check(self, name: str, ok: bool, **detail) -> CheckResult:
        check = CheckResult(name, bool(ok), detail)
        self.checks.append(check)
        if not check.ok and self.status == Status.PASS:
            self.status = Status.FAIL
        return check

    def reject(self, message: str, violations: Iterable[Any] = ()) -> None:
        self.status = Status.REJECTED
        self.errors.append(message)
        self.errors.extend(str(v) for v in violations)

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status.value,
            "dimensions": self.dimensions,
            "witnesses": self.witnesses,
            "checks": [asdict(c) for c in self.checks],
            "result": self.result,
            "errors": self.errors,
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)


def input_digest(documents: Iterable[Optional[Union[str, bytes]]], options: Dict[str, Any]) -> str:
    """sha256 over the raw input documents and the canonical option set"""
    h = hashlib.sha256()
    for doc in documents:
        data = doc if isinstance(doc, bytes) else (doc or "").encode("utf-8")
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    h.update(json.dumps(options, sort_keys=True, default=str).encode("utf-8"))
    return h.hexdigest()


@dataclass
class PerformanceMetric:
    """Performance metric record; logged, never part of a report"""
    timestamp: str
    metric_name: str
    metric_value: Union[int, float, str]
    unit: str
    command: Optional[str] = None
    additional_data: Dict[str, Any] = field(default_factory=dict)
