"""
Search Budgets
Wall-clock and evaluation-count budgets, and the tracker that splits them
between the search phase and the final selection phase.
"""

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Any, Optional, Sequence

from ..shared.exceptions import ConfigurationError
from ..shared.models import CandidateRecord

logger = logging.getLogger(__name__)

# Share of the total budget that final selection may use at most.
PHASE2_SHARE = 0.3


class BudgetKind(Enum):
    """What a budget counts."""
    SECONDS = "seconds"
    EVALUATIONS = "evaluations"


@dataclass(frozen=True)
class Budget:
    """
    A search budget.

    Count budgets make runs deterministic; wall-clock budgets are checked
    cooperatively between evaluations.
    """
    kind: BudgetKind
    total: float
    per_candidate: Optional[float] = None

    def __post_init__(self):
        if not self.total > 0:
            raise ConfigurationError(f"Budget must be positive, got {self.total}")
        if self.kind is BudgetKind.EVALUATIONS and self.total != int(self.total):
            raise ConfigurationError(f"Evaluation budget must be a whole number, got {self.total}")
        if self.per_candidate is not None:
            if not self.per_candidate > 0:
                raise ConfigurationError(f"Per-candidate limit must be positive, got {self.per_candidate}")
            if self.kind is BudgetKind.SECONDS and self.per_candidate > self.total:
                raise ConfigurationError(
                    f"Per-candidate limit {self.per_candidate}s exceeds the total budget {self.total}s"
                )

    @classmethod
    def seconds(cls, total: float, per_candidate: Optional[float] = None) -> 'Budget':
        return cls(BudgetKind.SECONDS, float(total), per_candidate)

    @classmethod
    def evaluations(cls, total: int, per_candidate: Optional[float] = None) -> 'Budget':
        return cls(BudgetKind.EVALUATIONS, float(total), per_candidate)

    @property
    def is_count(self) -> bool:
        return self.kind is BudgetKind.EVALUATIONS

    def scaled(self, factor: float) -> 'Budget':
        """The same budget shrunk by a factor; count budgets are unchanged."""
        if self.is_count:
            return self
        per_candidate = self.per_candidate
        if per_candidate is not None:
            per_candidate = min(per_candidate, self.total * factor)
        return Budget(self.kind, self.total * factor, per_candidate)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {"kind": self.kind.value, "total": self.total, "per_candidate": self.per_candidate}


def _best_cost(records: Sequence[CandidateRecord], k: int) -> float:
    successful = sorted(
        (r for r in records if not r.failed),
        key=lambda r: (r.mean_score, r.discovery_index),
    )
    return float(sum(r.cost for r in successful[:k]))


class BudgetTracker:
    """
    Tracks spending against a budget.

    Under a count budget the search phase stops ``min(floor(0.3 * total), 2k)``
    evaluations short of ``total`` and final selection may spend what is left,
    so both phases together never exceed ``total``. Under a wall-clock budget
    the search phase stops early enough to leave a reserve of
    ``min(cost of the k best candidates, 0.3 * T)`` seconds for final selection.
    """

    def __init__(self, budget: Budget, selection_k: int = 10,
                 clock: Callable[[], float] = time.monotonic):
        self.budget = budget
        self.selection_k = selection_k
        self.clock = clock
        self.evaluations = 0
        self._started: Optional[float] = None

    def start(self) -> None:
        if self._started is None:
            self._started = self.clock()

    @property
    def elapsed(self) -> float:
        if self._started is None:
            return 0.0
        return self.clock() - self._started

    def remaining_seconds(self) -> Optional[float]:
        if self.budget.is_count:
            return None
        return max(0.0, self.budget.total - self.elapsed)

    def reserve(self, records: Sequence[CandidateRecord]) -> float:
        """Seconds held back for final selection."""
        if self.budget.is_count or self.selection_k <= 0:
            return 0.0
        return min(_best_cost(records, self.selection_k), PHASE2_SHARE * self.budget.total)

    def reserve_evaluations(self) -> int:
        """Evaluations held back for final selection under a count budget."""
        if not self.budget.is_count or self.selection_k <= 0:
            return 0
        return min(math.floor(PHASE2_SHARE * self.budget.total), 2 * self.selection_k)

    def can_start(self, records: Sequence[CandidateRecord], pending: int = 0) -> bool:
        """
        Whether the search phase may start one more evaluation.

        Args:
            records: Candidates recorded so far
            pending: Evaluations already admitted but not yet counted
        """
        if self.budget.is_count:
            return self.evaluations + pending < int(self.budget.total) - self.reserve_evaluations()
        return self.elapsed < self.budget.total - self.reserve(records)

    def spend(self, evaluations: int = 1) -> None:
        self.evaluations += evaluations

    def candidate_limit(self) -> Optional[float]:
        """Per-candidate time limit, capped by the remaining time of a wall-clock budget."""
        if self.budget.is_count:
            return self.budget.per_candidate
        remaining = self.remaining_seconds()
        if self.budget.per_candidate is None:
            return remaining
        return min(self.budget.per_candidate, remaining)

    def phase2_evaluations(self, pool_size: int) -> Optional[int]:
        """Re-evaluation allowance under a count budget, ``None`` otherwise."""
        if not self.budget.is_count:
            return None
        left = max(0, int(self.budget.total) - self.evaluations)
        return min(pool_size, math.floor(PHASE2_SHARE * self.budget.total), left)

    def phase2_seconds(self, pool: Sequence[CandidateRecord]) -> Optional[float]:
        """Re-evaluation allowance in seconds under a wall-clock budget."""
        if self.budget.is_count:
            return None
        allowance = min(sum(r.cost for r in pool), PHASE2_SHARE * self.budget.total)
        return max(0.0, min(allowance, self.remaining_seconds()))
