"""
Pass/fail results that remember why a check failed.
"""

from dataclasses import dataclass, field
from typing import List


@dataclass
class CheckResult:
    passed: bool
    messages: List[str] = field(default_factory=list)

    @classmethod
    def ok(cls, message: str) -> "CheckResult":
        return cls(passed=True, messages=[message])

    @classmethod
    def fail(cls, message: str) -> "CheckResult":
        return cls(passed=False, messages=[message])

    @classmethod
    def combine(cls, results: List["CheckResult"]) -> "CheckResult":
        """Passes only if every result passed; messages keep their order."""
        return cls(
            passed=all(result.passed for result in results),
            messages=[message for result in results for message in result.messages],
        )

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> List[str]:
        return [] if self.passed else list(self.messages)
