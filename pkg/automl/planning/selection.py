"""
Final Selection
Re-evaluates a pool of promising candidates on fresh splits and picks the one
with the lowest re-evaluated loss, guarding against overfitting the search
splits.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..evaluation.statistics import significantly_worse
from ..shared.exceptions import NoCandidateFound, SampleTooSmall
from ..shared.models import CandidateRecord, ComponentInstance, EventKind
from ..shared.rng import derive_rng, derive_seed
from .budget import BudgetTracker
from .candidates import WORST_LOSS
from .events import EventLog

logger = logging.getLogger(__name__)


@dataclass
class SelectionResult:
    """Chosen pipeline and the evidence for it."""
    pipeline: ComponentInstance
    score: float
    pool: List[CandidateRecord] = field(default_factory=list)
    reevaluated: Dict[str, float] = field(default_factory=dict)
    fallback: bool = False


def ranked(records: Sequence[CandidateRecord]) -> List[CandidateRecord]:
    """Successful records by mean loss, then discovery order."""
    return sorted(
        (r for r in records if not r.failed),
        key=lambda r: (r.mean_score, r.discovery_index),
    )


def _not_worse(record: CandidateRecord, best: CandidateRecord) -> bool:
    # Score lists too short for the test count as eligible.
    try:
        return not significantly_worse(record.scores, best.scores)
    except SampleTooSmall:
        return True


def selection_pool(records: Sequence[CandidateRecord], k: int, seed: int) -> List[CandidateRecord]:
    """
    The k best candidates plus up to k random ones not significantly worse than the best.

    Raises:
        NoCandidateFound: If no record succeeded
    """
    successful = ranked(records)
    if not successful:
        raise NoCandidateFound("No successful candidate to select from")
    top, rest = successful[:k], successful[k:]
    eligible = [r for r in rest if _not_worse(r, top[0])]
    draws = min(k, len(eligible))
    if draws == 0:
        return top
    picks = derive_rng(seed, "selection-pool").choice(len(eligible), size=draws, replace=False)
    return top + [eligible[int(i)] for i in picks]


def select_final(records: Sequence[CandidateRecord], evaluator, tracker: BudgetTracker, seed: int,
                 k: int = 10, repetitions: int = 5, log: Optional[EventLog] = None) -> SelectionResult:
    """
    Second phase: re-evaluate the selection pool and choose among it.

    Every pool member is re-evaluated with the same fresh seed so that members
    are compared on identical splits. Re-evaluations stop when the phase
    allowance of the tracker is spent.

    Args:
        records: Search-phase records
        evaluator: Object with ``run(pipeline, time_limit, seed, repetitions)``
        tracker: Tracker of the search budget
        seed: Run seed
        k: Pool size parameter
        repetitions: Fresh splits per pool member
        log: Event log for phase events

    Returns:
        SelectionResult; falls back to the best search-phase mean when nothing
        could be re-evaluated

    Raises:
        NoCandidateFound: If no record succeeded
    """
    successful = ranked(records)
    if len(successful) == 1:
        only = successful[0]
        if log is not None:
            log.emit(EventKind.FINAL, only.pipeline, only.mean_score, reevaluated=False)
        return SelectionResult(only.pipeline, only.mean_score, [only])

    pool = selection_pool(records, k, seed)
    max_evaluations = tracker.phase2_evaluations(len(pool))
    seconds = tracker.phase2_seconds(pool)
    logger.info("Final selection over a pool of %d (allowance: %s evaluations, %s seconds)",
                len(pool), max_evaluations, seconds)
    if log is not None:
        log.emit(EventKind.PHASE2_START, pool=[r.pipeline.serialize() for r in pool],
                 max_evaluations=max_evaluations)

    phase2_seed = derive_seed(seed, "phase2")
    started = tracker.elapsed
    reevaluated: Dict[str, float] = {}
    for i, record in enumerate(pool):
        if max_evaluations is not None and i >= max_evaluations:
            break
        limit = tracker.budget.per_candidate
        if seconds is not None:
            left = seconds - (tracker.elapsed - started)
            if left <= 0:
                break
            per_candidate = tracker.budget.per_candidate
            limit = left if per_candidate is None else min(left, per_candidate)
        outcome = evaluator.run(record.pipeline, limit, seed=phase2_seed, repetitions=repetitions)
        tracker.spend()
        mean = WORST_LOSS if outcome.failed else float(np.mean(outcome.scores))
        reevaluated[record.pipeline.serialize()] = mean
        if log is not None:
            log.emit(EventKind.EVALUATE, record.pipeline, mean, phase=2,
                     scores=list(outcome.scores), rows=list(outcome.rows))

    if not reevaluated:
        best = pool[0]
        logger.info("No re-evaluation fit the allowance; keeping the best search-phase candidate")
        if log is not None:
            log.emit(EventKind.FINAL, best.pipeline, best.mean_score, reevaluated=False)
        return SelectionResult(best.pipeline, best.mean_score, pool, reevaluated, fallback=True)

    # min() keeps pool order on ties
    chosen = min((r for r in pool if r.pipeline.serialize() in reevaluated),
                 key=lambda r: reevaluated[r.pipeline.serialize()])
    score = reevaluated[chosen.pipeline.serialize()]
    logger.info("Selected %s (re-evaluated loss %.4f)", chosen.pipeline.serialize(), score)
    if log is not None:
        log.emit(EventKind.FINAL, chosen.pipeline, score, reevaluated=True)
    return SelectionResult(chosen.pipeline, score, pool, reevaluated)
