"""
Tests for the search graph, candidate evaluation, node scores, best-first
search, random search and the optimizers.
"""

import itertools
import time
from unittest.mock import Mock, patch

import pytest
import numpy as np

from automl.learners import ML_BASE, ML_META, SL_BASE, SL_META
from automl.planning import (
    BestFirstSearch, Budget, BudgetTracker, CandidateEvaluator, EventLog, ExactNodeEvaluator,
    LeafLossEvaluator, MLPlanOptimizer, RandomCompletionNodeEvaluator, RandomSearchOptimizer, SearchSession,
    SearchSettings, build_optimizer, build_space, best_first_search, count_pipelines,
    enumerate_completions, enumerate_pipelines, evaluate_candidate, evaluate_node, goal_pipeline,
    is_goal, random_completion, random_search, root_node, score_from_records, successors,
)
from automl.planning import candidates
from automl.planning.node_evaluation import UNSCORED
from automl.shared.exceptions import ConfigurationError, EvaluationFailed, SearchError
from automl.shared.models import CandidateRecord, ComponentInstance, EventKind, Layer


def _child(node, space, algorithm):
    return next(c for c in successors(node, space) if c.methods[-1].algorithm == algorithm)


def _random_space(rng):
    """A random non-empty slice of the native portfolio."""
    def pick(names, minimum):
        size = int(rng.integers(minimum, len(names) + 1))
        return sorted(str(name) for name in rng.choice(names, size=size, replace=False))
    return build_space(
        ml_meta=pick(ML_META, 0), ml_base=pick(ML_BASE, 1),
        sl_meta=pick(SL_META, 0), sl_base=pick(SL_BASE, 1),
    )


def _failing_for(fragment):
    """Wrap the real fit so that specs mentioning ``fragment`` raise."""
    real = candidates.fit_multi_label

    def fit(spec, *args, **kwargs):
        if fragment in str(spec):
            raise RuntimeError(f"{fragment} cannot fit")
        return real(spec, *args, **kwargs)
    return fit


class TestSearchGraph:
    """Test successors and random completions."""

    def test_root_children(self, full_space):
        """Test the root has one child per top-level method, numbered after it."""
        root = root_node(full_space)
        children = successors(root, full_space)
        assert len(children) == 9
        assert [c.creation_index for c in children] == list(range(1, 10))
        assert root.describe() == "<root> ['createMLClassifier']"

    def test_child_remaining_tasks(self, full_space):
        """Test choosing BR leaves the decision marker and the single-label task."""
        child = _child(root_node(full_space), full_space, "BR")
        assert child.remaining == ("choose", "createWekaClassifier")
        assert child.partial_pipeline() == ComponentInstance("BR", Layer.ML_BASE)
        assert not is_goal(child, full_space)

    def test_goal_has_no_successors(self, full_space):
        """Test a finished node cannot be expanded."""
        goal = _child(root_node(full_space), full_space, "MajorityLabelSet")
        assert is_goal(goal, full_space)
        assert successors(goal, full_space) == []
        assert goal_pipeline(goal, full_space).serialize() == "MajorityLabelSet"

    def test_shared_counter(self, tiny_space):
        """Test creation indices keep increasing across expansions with one counter."""
        counter = itertools.count(1)
        first = successors(root_node(tiny_space), tiny_space, counter)
        second = successors(first[0], tiny_space, counter)
        assert [c.creation_index for c in first + second] == [1, 2, 3, 4]

    def test_random_completion_of_goal(self, full_space):
        """Test completing a goal node returns its own pipeline."""
        goal = _child(_child(root_node(full_space), full_space, "BR"), full_space, "ZeroR")
        rng = np.random.default_rng(0)
        assert random_completion(goal, full_space, rng).serialize() == "BR(ZeroR)"

    def test_random_completion_stays_below_node(self, full_space):
        """Test completions keep the decisions already taken."""
        node = _child(root_node(full_space), full_space, "BaggingML")
        rng = np.random.default_rng(3)
        below = set(enumerate_completions(node, full_space))
        for _ in range(200):
            assert random_completion(node, full_space, rng) in below

    @pytest.mark.slow
    def test_random_completion_covers_space(self, full_space):
        """Test 50,000 completions of the root reach every pipeline."""
        rng = np.random.default_rng(11)
        root = root_node(full_space)
        seen = {random_completion(root, full_space, rng) for _ in range(50_000)}
        assert seen == set(enumerate_pipelines(full_space))


class TestEvaluateCandidate:
    """Test evaluate_candidate and CandidateEvaluator."""

    def test_losses_and_determinism(self, search_data):
        """Test three repetitions give three bounded losses, reproducibly."""
        pipeline = ComponentInstance.from_decisions([("BR", Layer.ML_BASE), ("NaiveBayes", Layer.SL_BASE)])
        first = evaluate_candidate(pipeline, search_data, seed=4)
        assert len(first) == 3
        assert all(0.0 <= loss <= 1.0 for loss in first)
        assert evaluate_candidate(pipeline, search_data, seed=4) == first

    def test_too_few_rows(self, search_data):
        """Test search data below ten rows is rejected."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with pytest.raises(SearchError):
            evaluate_candidate(pipeline, search_data.subset(range(9)), seed=0)

    def test_first_repetition_failure(self, search_data):
        """Test a pipeline that never fits raises EvaluationFailed."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with patch("automl.planning.candidates.fit_multi_label", side_effect=RuntimeError("broken")):
            with pytest.raises(EvaluationFailed):
                evaluate_candidate(pipeline, search_data, seed=0)

    def test_later_failure_scores_worst_loss(self, search_data):
        """Test a failure after one finished repetition appends loss 1.0 and stops."""
        real = candidates.fit_multi_label
        calls = []

        def flaky(*args, **kwargs):
            calls.append(1)
            if len(calls) > 1:
                raise RuntimeError("out of memory")
            return real(*args, **kwargs)

        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with patch("automl.planning.candidates.fit_multi_label", side_effect=flaky):
            losses = evaluate_candidate(pipeline, search_data, seed=0, repetitions=3)
        assert len(losses) == 2
        assert losses[1] == 1.0

    def test_slow_fit_stopped_at_limit(self, search_data):
        """Test a fit still running at the limit is interrupted rather than waited for."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        evaluator = CandidateEvaluator(search_data, seed=0)
        with patch("automl.planning.candidates.fit_multi_label", side_effect=lambda *a, **k: time.sleep(2.0)):
            start = time.monotonic()
            outcome = evaluator.run(pipeline, time_limit=0.5)
            took = time.monotonic() - start
        assert outcome.failed
        assert "limit" in outcome.error
        assert took < 1.5

    def test_slow_later_repetition_keeps_earlier_losses(self, search_data):
        """Test an interrupted second repetition leaves the first loss as the result."""
        real = candidates.fit_multi_label
        calls = []

        def slow_second(*args, **kwargs):
            calls.append(1)
            if len(calls) > 1:
                time.sleep(2.0)
            return real(*args, **kwargs)

        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with patch("automl.planning.candidates.fit_multi_label", side_effect=slow_second):
            start = time.monotonic()
            losses = evaluate_candidate(pipeline, search_data, seed=0, repetitions=3, per_candidate_limit=0.5)
            took = time.monotonic() - start
        assert len(losses) == 1
        assert took < 1.5

    def test_time_limit(self, search_data):
        """Test the per-candidate limit with a clock that ticks once per reading."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with pytest.raises(EvaluationFailed):
            evaluate_candidate(pipeline, search_data, seed=0, per_candidate_limit=0.5,
                               clock=itertools.count().__next__)
        losses = evaluate_candidate(pipeline, search_data, seed=0, per_candidate_limit=1.5,
                                    clock=itertools.count().__next__)
        assert len(losses) == 2

    def test_majority_label_set_losses(self, constant_data):
        """Test the modal vector (1, 0) yields per-row F of 1, 0 or 2/3 on six validation rows."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        for loss in evaluate_candidate(pipeline, constant_data, seed=7):
            thirds = (1.0 - loss) * 6 * 3
            assert thirds == pytest.approx(round(thirds))

    def test_evaluator_reports_failures_as_outcomes(self, search_data):
        """Test CandidateEvaluator.run never raises for a failing pipeline."""
        evaluator = CandidateEvaluator(search_data, seed=0)
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        with patch("automl.planning.candidates.fit_multi_label", side_effect=RuntimeError("broken")):
            outcome = evaluator.run(pipeline)
        assert outcome.failed
        assert outcome.scores == ()
        assert "broken" in outcome.error

    def test_evaluator_records_rows(self, search_data):
        """Test the rows audit only covers search rows."""
        outcome = CandidateEvaluator(search_data, seed=0).run(ComponentInstance("MajorityLabelSet", Layer.ML_BASE))
        assert set(outcome.rows) <= set(search_data.row_ids.tolist())

    @pytest.mark.parametrize("kwargs", [{"objective": "accuracy"}, {"repetitions": 0}])
    def test_evaluator_settings(self, search_data, kwargs):
        """Test unknown objectives and non-positive repetitions are rejected."""
        with pytest.raises(ConfigurationError):
            CandidateEvaluator(search_data, seed=0, **kwargs)


class TestNodeEvaluation:
    """Test node scores."""

    def _records(self, *means):
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        return [CandidateRecord(pipeline, (m,), 0.1, i) for i, m in enumerate(means)]

    def test_min_over_completions(self, full_space):
        """Test the node score is the lowest completion mean."""
        session = Mock()
        session.evaluate_many.return_value = self._records(0.4, 0.2, 0.3)
        node = _child(root_node(full_space), full_space, "BR")
        score = evaluate_node(node, full_space, session, np.random.default_rng(0), completions=3)
        assert score == 0.2
        assert len(session.evaluate_many.call_args[0][0]) == 3

    def test_goal_node_evaluates_itself(self, tiny_space):
        """Test a goal node is scored by its own pipeline only."""
        session = Mock()
        session.evaluate_many.return_value = self._records(0.3)
        goal = _child(_child(root_node(tiny_space), tiny_space, "LC"), tiny_space, "ZeroR")
        evaluate_node(goal, tiny_space, session, np.random.default_rng(0))
        assert [p.serialize() for p in session.evaluate_many.call_args[0][0]] == ["LC(ZeroR)"]

    def test_unscored_when_nothing_succeeds(self):
        """Test failed and refused completions leave the node unscored."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        failed = CandidateRecord(pipeline, (), 0.0, 0, failed=True)
        assert score_from_records([failed, None]) == UNSCORED

    def test_min_split(self):
        """Test min_split uses the best single split."""
        pipeline = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
        records = [CandidateRecord(pipeline, (0.5, 0.1), 0.0, 0), CandidateRecord(pipeline, (0.2, 0.2), 0.0, 1)]
        assert score_from_records(records, "min_mean") == pytest.approx(0.2)
        assert score_from_records(records, "min_split") == pytest.approx(0.1)

    @pytest.mark.parametrize("kwargs", [{"completions": 0}, {"node_score": "median"}])
    def test_evaluator_settings(self, tiny_space, kwargs):
        """Test invalid completion counts and node scores are rejected."""
        with pytest.raises(ConfigurationError):
            RandomCompletionNodeEvaluator(tiny_space, Mock(), seed=0, **kwargs)


class TestBestFirstExactness:
    """Test best-first search with exact node scores finds the global optimum."""

    @pytest.mark.parametrize("seed", range(50))
    def test_finds_global_minimum(self, seed):
        """Test the best record is the minimum-loss pipeline on a random space."""
        rng = np.random.default_rng(seed)
        space = _random_space(rng)
        pipelines = enumerate_pipelines(space)
        losses = dict(zip(pipelines, rng.permutation(len(pipelines)) / len(pipelines)))
        leaf_loss = losses.__getitem__
        max_methods = max(len(space.decompositions(task)) for task in space.tasks
                          if not space.is_simple(task))
        session = SearchSession(LeafLossEvaluator(leaf_loss),
                                BudgetTracker(Budget.evaluations(4 * max_methods), selection_k=0))
        BestFirstSearch(space, session, ExactNodeEvaluator(space, leaf_loss, session)).run()
        assert session.best().pipeline == min(pipelines, key=leaf_loss)

    def test_exact_score_without_session(self, tiny_space):
        """Test the exact score of a node is the minimum over its completions."""
        losses = {"BR(NaiveBayes)": 0.3, "BR(ZeroR)": 0.1, "LC(NaiveBayes)": 0.2, "LC(ZeroR)": 0.4}
        evaluator = ExactNodeEvaluator(tiny_space, lambda p: losses[p.serialize()])
        lc = _child(root_node(tiny_space), tiny_space, "LC")
        assert evaluator.evaluate(lc) == 0.2
        assert evaluator.evaluate(_child(lc, tiny_space, "ZeroR")) == 0.4


class TestBestFirstSearch:
    """Test the search phase on real candidates."""

    def test_single_evaluation_budget(self, small_space, search_data):
        """Test a budget of one evaluation records exactly one candidate."""
        records = best_first_search(small_space, search_data, Budget.evaluations(1), seed=0)
        assert len(records) == 1

    def test_deterministic_under_count_budget(self, small_space, search_data):
        """Test equal seeds give equal records, sequentially and with two workers."""
        runs = [
            best_first_search(small_space, search_data, Budget.evaluations(8), seed=2, n_jobs=n_jobs)
            for n_jobs in (1, 1, 2)
        ]
        summaries = [[(r.pipeline, r.scores) for r in run] for run in runs]
        assert summaries[0] == summaries[1] == summaries[2]

    def test_expansion_and_new_best_events(self, small_space, search_data):
        """Test expansions are logged and new-best scores strictly decrease."""
        log = EventLog()
        best_first_search(small_space, search_data, Budget.evaluations(8), seed=5, log=log)
        assert log.events[0].kind is EventKind.EXPAND
        assert log.events[0].details["node"].startswith("<root>")
        improvements = [e.score for e in log.of_kind(EventKind.NEW_BEST)]
        assert improvements
        assert all(later < earlier for earlier, later in zip(improvements, improvements[1:]))

    def test_failures_are_contained(self, tiny_space, search_data):
        """Test pipelines that raise are logged as failures and the search goes on."""
        log = EventLog()
        with patch("automl.planning.candidates.fit_multi_label", side_effect=_failing_for("NaiveBayes")):
            records = best_first_search(tiny_space, search_data, Budget.evaluations(10), seed=1,
                                        completions=10, log=log)
        failed = [r for r in records if r.failed]
        assert failed
        assert all("NaiveBayes" in r.pipeline.serialize() for r in failed)
        assert all("ZeroR" in r.pipeline.serialize() for r in records if not r.failed)
        fail_events = [e for e in log.of_kind(EventKind.FAIL) if not e.details.get("pruned")]
        assert fail_events and all(e.score == 1.0 for e in fail_events)


class TestRandomSearch:
    """Test the random-search baseline."""

    def test_budget_respected(self, small_space, search_data):
        """Test no more candidates than the count budget."""
        result = random_search(small_space, search_data, Budget.evaluations(3), seed=0)
        assert len(result.records) <= 3
        assert result.optimizer == "random"

    def test_same_seed_same_sequence(self, small_space, search_data):
        """Test equal seeds draw the same pipelines."""
        first = random_search(small_space, search_data, Budget.evaluations(4), seed=9)
        second = random_search(small_space, search_data, Budget.evaluations(4), seed=9)
        assert [r.pipeline for r in first.records] == [r.pipeline for r in second.records]

    def test_stops_when_space_exhausted(self, tiny_space, search_data):
        """Test a budget larger than the space evaluates every pipeline once."""
        result = random_search(tiny_space, search_data, Budget.evaluations(20), seed=0)
        assert len(result.records) == count_pipelines(tiny_space) == 4
        assert result.pipeline == min(result.records, key=lambda r: (r.mean_score, r.discovery_index)).pipeline
        assert result.events[-1].kind is EventKind.FINAL


class TestOptimizers:
    """Test the two-phase optimizer and the factory."""

    def test_two_phase_run(self, small_space, search_data):
        """Test the event sequence and the phase-two allowance under a count budget."""
        optimizer = MLPlanOptimizer(small_space, Budget.evaluations(10), seed=1,
                                    settings=SearchSettings(selection_k=2))
        result = optimizer.optimize(search_data)
        first = result.events[0]
        assert first.kind is EventKind.DATA
        assert first.details["rows"] == search_data.row_ids.tolist()
        kinds = [e.kind for e in result.events]
        assert result.events[-1].kind is EventKind.FINAL
        if len([r for r in result.records if not r.failed]) > 1:
            assert EventKind.PHASE2_START in kinds
            phase2 = [e for e in result.events if e.kind is EventKind.EVALUATE and e.details.get("phase") == 2]
            assert len(phase2) <= 3
        assert result.pipeline in {r.pipeline for r in result.records}
        assert len(result.records) <= 10
        assert result.optimizer == "mlplan"

    def test_count_budget_shared_fairly(self, small_space, search_data):
        """Test the two-phase optimizer spends no more evaluations than the baseline gets."""
        budget = Budget.evaluations(20)
        settings = SearchSettings(completions=2, repetitions=2, selection_k=3, phase2_repetitions=2)
        spent = {}
        for optimizer in (MLPlanOptimizer(small_space, budget, seed=4, settings=settings),
                          RandomSearchOptimizer(small_space, budget, seed=4, settings=settings)):
            result = optimizer.optimize(search_data)
            phase2 = [e for e in result.events if e.kind is EventKind.EVALUATE and e.details.get("phase") == 2]
            spent[optimizer.name] = len(result.records) + len(phase2)
        assert spent["mlplan"] <= 20
        assert spent["random"] == 20

    def test_build_optimizer(self, tiny_space):
        """Test the factory knows both optimizers and nothing else."""
        assert build_optimizer("mlplan", tiny_space, Budget.evaluations(3), seed=0).name == "mlplan"
        assert build_optimizer("random", tiny_space, Budget.evaluations(3), seed=0).name == "random"
        with pytest.raises(ConfigurationError):
            build_optimizer("smac", tiny_space, Budget.evaluations(3), seed=0)

