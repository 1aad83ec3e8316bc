"""
Optimizers
The guided two-phase optimizer and the random-search baseline behind one
interface, so the harness can swap them freely.
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional

from ..shared.exceptions import ConfigurationError
from ..shared.interfaces import IOptimizer
from ..shared.models import EventKind, MultiLabelData, SearchResult
from .best_first import BestFirstSearch
from .budget import Budget, BudgetTracker
from .candidates import CandidateEvaluator
from .component_space import ComponentSpace
from .events import EventLog
from .node_evaluation import RandomCompletionNodeEvaluator
from .random_search import RandomSearch
from .selection import select_final
from .session import SearchSession

logger = logging.getLogger(__name__)

OPTIMIZERS = ("mlplan", "random")


@dataclass(frozen=True)
class SearchSettings:
    """Search knobs shared by both optimizers."""
    completions: int = 3
    repetitions: int = 3
    selection_k: int = 10
    phase2_repetitions: int = 5
    objective: str = "instance_f"
    node_score: str = "min_mean"
    n_jobs: int = 1

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)


class _SessionOptimizer(IOptimizer):
    name = ""

    def __init__(self, space: ComponentSpace, budget: Budget, seed: int,
                 settings: Optional[SearchSettings] = None,
                 clock: Callable[[], float] = time.monotonic):
        self.space = space
        self.budget = budget
        self.seed = seed
        self.settings = settings or SearchSettings()
        self.clock = clock

    def _session(self, search_data: MultiLabelData, selection_k: int) -> SearchSession:
        log = EventLog(clock=self.clock)
        log.emit(EventKind.DATA, rows=search_data.row_ids.tolist())
        evaluator = CandidateEvaluator(search_data, self.seed, self.settings.repetitions,
                                       self.settings.objective, self.clock)
        tracker = BudgetTracker(self.budget, selection_k, self.clock)
        return SearchSession(evaluator, tracker, log, self.settings.n_jobs)


class MLPlanOptimizer(_SessionOptimizer):
    """Best-first search with random-completion node scores, then final selection."""

    name = "mlplan"

    def optimize(self, search_data: MultiLabelData) -> SearchResult:
        settings = self.settings
        session = self._session(search_data, settings.selection_k)
        node_evaluator = RandomCompletionNodeEvaluator(
            self.space, session, self.seed, settings.completions, settings.node_score,
        )
        search = BestFirstSearch(self.space, session, node_evaluator)
        records = search.run()
        selection = select_final(
            records, session.evaluator, session.tracker, self.seed,
            k=settings.selection_k, repetitions=settings.phase2_repetitions, log=session.log,
        )
        return SearchResult(
            pipeline=selection.pipeline,
            internal_score=selection.score,
            records=records,
            events=session.log.events,
            optimizer=self.name,
            metadata={
                "expansions": search.expansions,
                "pool": [r.pipeline.serialize() for r in selection.pool],
                "reevaluated": selection.reevaluated,
                "selection_fallback": selection.fallback,
            },
        )


class RandomSearchOptimizer(_SessionOptimizer):
    """Random completions of the root, best mean wins."""

    name = "random"

    def optimize(self, search_data: MultiLabelData) -> SearchResult:
        session = self._session(search_data, selection_k=0)
        records = RandomSearch(self.space, session, self.seed).run()
        best = session.best()
        session.log.emit(EventKind.FINAL, best.pipeline, best.mean_score)
        logger.info("Random search selected %s (loss %.4f)", best.pipeline.serialize(), best.mean_score)
        return SearchResult(
            pipeline=best.pipeline,
            internal_score=best.mean_score,
            records=records,
            events=session.log.events,
            optimizer=self.name,
        )


def build_optimizer(name: str, space: ComponentSpace, budget: Budget, seed: int,
                    settings: Optional[SearchSettings] = None,
                    clock: Callable[[], float] = time.monotonic) -> IOptimizer:
    """
    Raises:
        ConfigurationError: For an unknown optimizer name
    """
    if name == MLPlanOptimizer.name:
        return MLPlanOptimizer(space, budget, seed, settings, clock)
    if name == RandomSearchOptimizer.name:
        return RandomSearchOptimizer(space, budget, seed, settings, clock)
    raise ConfigurationError(f"Unknown optimizer '{name}', expected one of {OPTIMIZERS}")


def random_search(space: ComponentSpace, search_data: MultiLabelData, budget: Budget, seed: int,
                  settings: Optional[SearchSettings] = None,
                  clock: Callable[[], float] = time.monotonic) -> SearchResult:
    """Random-search baseline on the given space; evaluation protocol as for guided search."""
    return RandomSearchOptimizer(space, budget, seed, settings, clock).optimize(search_data)
