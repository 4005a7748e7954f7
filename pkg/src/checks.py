"""
checks.py — Check records shared by every verification routine

Check-style operations (Hopf axioms, purity conditions, exact sequences,
theorem hypotheses) do not raise on a failing condition; they return a list
of CheckResult records that the exporter renders and the CLI maps to exit
codes.

Usage:
  results = HopfAxiomChecker(h).check_all()
  if not all_passed(results): ...
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List

logger = logging.getLogger(__name__)


class Severity(Enum):
    PASS = "pass"
    FAIL = "fail"
    WAIVED = "waived"


@dataclass
class CheckResult:
    name: str
    passed: bool
    description: str = ""
    module: str = ""
    waived: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def severity(self) -> Severity:
        if self.waived and not self.passed:
            return Severity.WAIVED
        return Severity.PASS if self.passed else Severity.FAIL

    def __str__(self) -> str:
        parts = [f"[{self.severity.value.upper()}] {self.name}"]
        if self.module:
            parts.append(f"module={self.module}")
        for key, value in self.details.items():
            parts.append(f"{key}={value}")
        if self.description:
            parts.append(f"→ {self.description}")
        return " | ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "severity": self.severity.value,
            "description": self.description,
            "module": self.module,
            "details": {k: (v if isinstance(v, (int, float, str, bool, list)) else str(v))
                        for k, v in self.details.items()},
        }


def all_passed(results: List[CheckResult]) -> bool:
    """True when every record passed or was explicitly waived."""
    return all(r.passed or r.waived for r in results)


def failures(results: List[CheckResult]) -> List[CheckResult]:
    return [r for r in results if r.severity is Severity.FAIL]


def log_results(results: List[CheckResult], title: str) -> None:
    failed = failures(results)
    if failed:
        logger.warning(f"{title}: {len(failed)}/{len(results)} checks failed")
        for r in failed:
            logger.warning(f"  {r}")
    else:
        logger.info(f"{title}: all {len(results)} checks passed")
