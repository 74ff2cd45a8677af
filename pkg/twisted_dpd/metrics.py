"""
Counters for batches of attack runs.
"""

from collections import defaultdict
from typing import Literal

Outcome = Literal["success", "singular", "inconsistent", "unverified"]


class AttackMetrics:
    """Collect per-run attack outcomes, b-sample counts and durations."""

    def __init__(self):
        self.outcomes = defaultdict(int)  # by outcome
        self.singular_by_matrix = defaultdict(int)  # "c" or "d"

        # b draws, over successful runs only
        self.b_samples_sum = 0
        self.b_samples_count = 0
        self.b_samples_max = 0

        self.duration_sum = 0.0
        self.duration_max = 0.0

    def record_run(self, outcome: Outcome, duration: float, b_samples: int = 0, singular: str = None):
        """Record one attack run."""
        self.outcomes[outcome] += 1
        if singular:
            self.singular_by_matrix[singular] += 1
        if outcome == "success":
            self.b_samples_sum += b_samples
            self.b_samples_count += 1
            self.b_samples_max = max(self.b_samples_max, b_samples)

        self.duration_sum += duration
        self.duration_max = max(self.duration_max, duration)

    @property
    def runs(self) -> int:
        return sum(self.outcomes.values())

    @property
    def successes(self) -> int:
        return self.outcomes["success"]

    @property
    def mean_b_samples(self) -> float:
        if self.b_samples_count == 0:
            return 0.0
        return self.b_samples_sum / self.b_samples_count

    @property
    def mean_duration(self) -> float:
        runs = self.runs
        return self.duration_sum / runs if runs else 0.0

    def timing_summary(self) -> str:
        """One line of per-trial timings; these vary between reruns, so keep them off stdout."""
        return f"{self.runs} trials, mean {self.mean_duration * 1000:.2f} ms, max {self.duration_max * 1000:.2f} ms"
