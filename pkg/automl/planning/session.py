"""
Search session: the mutable state one optimizer run owns.

Holds the budget tracker, the evaluation cache (one CandidateRecord per
distinct pipeline) and the event log. Evaluations may run on a worker pool;
their outcomes are always applied in submission order.
"""

import logging
from typing import Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from ..shared.models import CandidateRecord, ComponentInstance, EventKind
from .budget import BudgetTracker
from .candidates import WORST_LOSS, EvaluationOutcome
from .events import EventLog

logger = logging.getLogger(__name__)


class SearchSession:
    """Budgeted, cached evaluation of pipelines with event logging."""

    def __init__(self, evaluator, tracker: BudgetTracker, log: Optional[EventLog] = None,
                 n_jobs: int = 1):
        """
        Args:
            evaluator: Object with ``run(pipeline, time_limit) -> EvaluationOutcome``
            tracker: Budget tracker, started by the session
            log: Event log; a fresh one when omitted
            n_jobs: Concurrent evaluations
        """
        self.evaluator = evaluator
        self.tracker = tracker
        self.log = log if log is not None else EventLog(clock=tracker.clock)
        self.n_jobs = n_jobs
        self._records: Dict[str, CandidateRecord] = {}
        self.tracker.start()

    @property
    def records(self) -> List[CandidateRecord]:
        """Records in discovery order."""
        return list(self._records.values())

    def lookup(self, pipeline: ComponentInstance) -> Optional[CandidateRecord]:
        return self._records.get(pipeline.serialize())

    def exhausted(self) -> bool:
        return not self.tracker.can_start(self.records)

    def best(self) -> Optional[CandidateRecord]:
        successful = [r for r in self._records.values() if not r.failed]
        if not successful:
            return None
        return min(successful, key=lambda r: (r.mean_score, r.discovery_index))

    def evaluate(self, pipeline: ComponentInstance) -> Optional[CandidateRecord]:
        """Evaluate one pipeline; ``None`` when the budget refused it."""
        return self.evaluate_many([pipeline])[0]

    def evaluate_many(self, pipelines: Sequence[ComponentInstance]) -> List[Optional[CandidateRecord]]:
        """
        Evaluate pipelines in order, reusing cached records.

        Args:
            pipelines: Pipelines in submission order; duplicates are evaluated once

        Returns:
            The record of each pipeline, or None where the budget ran out first
        """
        if self.n_jobs <= 1:
            for pipeline in pipelines:
                if self.lookup(pipeline) is not None:
                    continue
                if self.exhausted():
                    break
                self._commit(self.evaluator.run(pipeline, self.tracker.candidate_limit()))
        else:
            admitted: Dict[str, ComponentInstance] = {}
            for pipeline in pipelines:
                key = pipeline.serialize()
                if key in self._records or key in admitted:
                    continue
                if not self.tracker.can_start(self.records, pending=len(admitted)):
                    break
                admitted[key] = pipeline
            limit = self.tracker.candidate_limit()
            outcomes = Parallel(n_jobs=self.n_jobs, backend="threading")(
                delayed(self.evaluator.run)(pipeline, limit) for pipeline in admitted.values()
            )
            for outcome in outcomes:
                self._commit(outcome)
        return [self.lookup(pipeline) for pipeline in pipelines]

    def _commit(self, outcome: EvaluationOutcome) -> CandidateRecord:
        record = CandidateRecord(
            pipeline=outcome.pipeline,
            scores=outcome.scores,
            cost=outcome.cost,
            discovery_index=len(self._records),
            discovery_time=self.tracker.elapsed,
            failed=outcome.failed,
            error=outcome.error,
        )
        self._records[outcome.pipeline.serialize()] = record
        self.tracker.spend()
        if record.failed:
            self.log.emit(EventKind.FAIL, outcome.pipeline, WORST_LOSS, error=outcome.error)
        else:
            self.log.emit(EventKind.EVALUATE, outcome.pipeline, record.mean_score,
                          scores=list(record.scores), rows=list(outcome.rows))
            self.log.offer(outcome.pipeline, record.mean_score)
        return record
