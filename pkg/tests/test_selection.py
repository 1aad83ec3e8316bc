"""
Tests for final selection.
"""

from unittest.mock import Mock

import pytest

from automl.learners import SL_BASE
from automl.planning import Budget, BudgetTracker, EvaluationOutcome, EventLog, select_final, selection_pool
from automl.shared.exceptions import NoCandidateFound
from automl.shared.models import CandidateRecord, ComponentInstance, EventKind, Layer

PIPELINES = [
    ComponentInstance.from_decisions([(ml, Layer.ML_BASE), (sl, Layer.SL_BASE)])
    for ml in ("BR", "LC") for sl in SL_BASE
]


def _records(*score_lists):
    return [CandidateRecord(PIPELINES[i], tuple(scores), 1.0, i) for i, scores in enumerate(score_lists)]


def _evaluator(reevaluated=None, default=0.5):
    """Mock evaluator whose re-evaluated loss depends on the pipeline."""
    reevaluated = reevaluated or {}
    evaluator = Mock()
    evaluator.run.side_effect = lambda pipeline, limit=None, seed=None, repetitions=None: EvaluationOutcome(
        pipeline, (reevaluated.get(pipeline.serialize(), default),) * (repetitions or 1), 0.1,
    )
    return evaluator


class TestSelectionPool:
    """Test selection_pool."""

    def test_significantly_worse_candidates_excluded(self):
        """Test a clearly worse candidate never enters the pool."""
        records = _records((0.1, 0.2, 0.15), (0.12, 0.18, 0.2), (0.9, 0.9, 0.9))
        pool = selection_pool(records, k=1, seed=0)
        assert [r.discovery_index for r in pool] == [0, 1]

    def test_pool_size_bounded(self):
        """Test the pool holds the k best plus at most k others."""
        records = _records(*[(0.1 + 0.01 * i, 0.2 + 0.01 * i) for i in range(10)])
        pool = selection_pool(records, k=2, seed=4)
        assert 2 < len(pool) <= 4
        assert [r.discovery_index for r in pool[:2]] == [0, 1]
        assert len({r.discovery_index for r in pool}) == len(pool)

    def test_deterministic(self):
        """Test the random part of the pool depends only on the seed."""
        records = _records(*[(0.1 + 0.01 * i, 0.2 + 0.01 * i) for i in range(10)])
        assert selection_pool(records, 2, seed=8) == selection_pool(records, 2, seed=8)

    def test_failed_records_ignored(self):
        """Test failed records never enter the pool and an all-failed history raises."""
        failed = CandidateRecord(PIPELINES[0], (), 0.0, 0, failed=True)
        ok = CandidateRecord(PIPELINES[1], (0.3,), 1.0, 1)
        assert selection_pool([failed, ok], k=3, seed=0) == [ok]
        with pytest.raises(NoCandidateFound):
            selection_pool([failed], k=3, seed=0)


class TestSelectFinal:
    """Test select_final."""

    def test_single_candidate_returned_unchanged(self):
        """Test one successful record is chosen without re-evaluation."""
        records = _records((0.4, 0.2))
        evaluator = _evaluator()
        log = EventLog()
        result = select_final(records, evaluator, BudgetTracker(Budget.evaluations(10)), seed=0, log=log)
        assert result.pipeline == records[0].pipeline
        assert result.score == pytest.approx(0.3)
        evaluator.run.assert_not_called()
        assert [e.kind for e in log.events] == [EventKind.FINAL]

    def test_reevaluation_decides(self):
        """Test the lowest re-evaluated loss wins even against the search order."""
        records = _records((0.1, 0.1), (0.2, 0.2))
        evaluator = _evaluator({records[0].pipeline.serialize(): 0.6, records[1].pipeline.serialize(): 0.3})
        log = EventLog()
        result = select_final(records, evaluator, BudgetTracker(Budget.evaluations(10)), seed=3, k=2, log=log)
        assert result.pipeline == records[1].pipeline
        assert result.score == pytest.approx(0.3)
        assert not result.fallback
        kinds = [e.kind for e in log.events]
        assert kinds == [EventKind.PHASE2_START, EventKind.EVALUATE, EventKind.EVALUATE, EventKind.FINAL]

    def test_shared_fresh_seed(self):
        """Test every pool member is re-evaluated with the same seed and repetition count."""
        records = _records((0.1, 0.1), (0.2, 0.2), (0.3, 0.3))
        evaluator = _evaluator()
        select_final(records, evaluator, BudgetTracker(Budget.evaluations(10)), seed=3, k=3, repetitions=5)
        seeds = {call.kwargs["seed"] for call in evaluator.run.call_args_list}
        assert len(seeds) == 1 and seeds != {3}
        assert {call.kwargs["repetitions"] for call in evaluator.run.call_args_list} == {5}

    def test_ties_keep_pool_order(self):
        """Test equal re-evaluated losses choose the earlier pool member."""
        records = _records((0.1, 0.1), (0.2, 0.2))
        result = select_final(records, _evaluator(default=0.4), BudgetTracker(Budget.evaluations(10)), seed=0, k=2)
        assert result.pipeline == records[0].pipeline

    def test_count_allowance(self):
        """Test at most floor(0.3 N) re-evaluations under a count budget of N."""
        records = _records(*[(0.1 + 0.01 * i, 0.2 + 0.01 * i) for i in range(10)])
        evaluator = _evaluator()
        result = select_final(records, evaluator, BudgetTracker(Budget.evaluations(10)), seed=0, k=10)
        assert evaluator.run.call_count == 3
        assert len(result.reevaluated) == 3

    def test_count_allowance_after_search_spending(self):
        """Test re-evaluations only use what the search phase left of the total."""
        records = _records(*[(0.1 + 0.01 * i, 0.2 + 0.01 * i) for i in range(10)])
        evaluator = _evaluator()
        tracker = BudgetTracker(Budget.evaluations(10, per_candidate=4.0))
        tracker.spend(8)
        result = select_final(records, evaluator, tracker, seed=0, k=10)
        assert evaluator.run.call_count == 2
        assert len(result.reevaluated) == 2
        assert tracker.evaluations == 10
        assert all(call.args[1] == 4.0 for call in evaluator.run.call_args_list)

    def test_fallback_without_allowance(self):
        """Test the best search-phase mean is kept when nothing may be re-evaluated."""
        records = _records((0.3, 0.3), (0.2, 0.2))
        evaluator = _evaluator()
        result = select_final(records, evaluator, BudgetTracker(Budget.evaluations(3)), seed=0, k=2)
        evaluator.run.assert_not_called()
        assert result.fallback
        assert result.pipeline == records[1].pipeline
        assert result.score == pytest.approx(0.2)

    def test_failed_reevaluation_scores_worst_loss(self):
        """Test a pool member failing on fresh splits gets loss 1.0."""
        records = _records((0.1, 0.1), (0.2, 0.2))
        evaluator = Mock()
        evaluator.run.side_effect = [
            EvaluationOutcome(records[0].pipeline, (), 0.1, error="broken"),
            EvaluationOutcome(records[1].pipeline, (0.4,), 0.1),
        ]
        result = select_final(records, evaluator, BudgetTracker(Budget.evaluations(10)), seed=0, k=2)
        assert result.reevaluated[records[0].pipeline.serialize()] == 1.0
        assert result.pipeline == records[1].pipeline

    def test_wall_clock_allowance(self, fake_clock):
        """Test re-evaluation stops once the phase allowance in seconds is spent."""
        tracker = BudgetTracker(Budget.seconds(10.0), clock=fake_clock)
        tracker.start()
        records = _records(*[(0.1 + 0.01 * i, 0.2 + 0.01 * i) for i in range(5)])

        def slow_run(pipeline, limit=None, seed=None, repetitions=None):
            fake_clock.now += 2.0
            return EvaluationOutcome(pipeline, (0.5,), 2.0)

        evaluator = Mock()
        evaluator.run.side_effect = slow_run
        result = select_final(records, evaluator, tracker, seed=0, k=5)
        assert evaluator.run.call_count == 2
        assert evaluator.run.call_args_list[0].args[1] == pytest.approx(3.0)
        assert evaluator.run.call_args_list[1].args[1] == pytest.approx(1.0)
        assert len(result.reevaluated) == 2
