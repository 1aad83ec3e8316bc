"""
Tests for experiment configuration, the runner and the leakage audit.
"""

import json
import time
from unittest.mock import patch

import pytest

from automl.data import random_split
from automl.experiment import runner as runner_module
from automl.experiment import (
    ExperimentConfig, ExperimentRunner, audit_event_log, load_run_report, load_run_reports,
    run_experiment, save_run_report,
)
from automl.planning import BudgetTracker, EventLog, read_events
from automl.shared.exceptions import ConfigurationError, DatasetError
from automl.shared.models import EventKind, RunReport


class TestExperimentConfig:
    """Test ExperimentConfig validation and derived values."""

    def test_defaults(self):
        """Test defaults produce a count budget and the standard search settings."""
        config = ExperimentConfig.build(dataset="data/emotions.arff")
        assert config.budget().is_count
        assert config.budget().total == 50
        assert config.settings().objective == "instance_f"
        assert config.run_name() == "emotions_mlplan_50e_seed0"
        assert config.budget_label() == "50 evals"

    def test_wall_clock_budget(self):
        """Test a seconds budget carries the per-candidate limit."""
        config = ExperimentConfig.build(dataset="d.arff", budget_kind="seconds", budget_total=60,
                                        eval_limit=10, optimizer="random", seed=3)
        budget = config.budget()
        assert not budget.is_count
        assert budget.per_candidate == 10
        assert config.run_name() == "d_random_60s_seed3"

    def test_count_budget_keeps_eval_limit(self):
        """Test an evaluation budget carries the per-candidate limit to the tracker."""
        config = ExperimentConfig.build(dataset="d.arff", budget_total=40, eval_limit=5)
        budget = config.budget()
        assert budget.is_count
        assert budget.per_candidate == 5
        assert BudgetTracker(budget).candidate_limit() == 5

    @pytest.mark.parametrize("values", [
        {"optimizer": "smac"},
        {"budget_kind": "hours"},
        {"budget_total": 0},
        {"split_fraction": 1.0},
        {"objective": "accuracy"},
        {"node_score": "median"},
        {"completions": 0},
        {"eval_limit": -1.0},
        {"budget_kind": "seconds", "budget_total": 5, "eval_limit": 10},
        {"budget_total": 2.5},
    ])
    def test_invalid_values(self, values):
        """Test every invalid value surfaces as ConfigurationError."""
        with pytest.raises(ConfigurationError):
            ExperimentConfig.build(dataset="d.arff", **values)

    def test_to_dict(self):
        """Test the configuration serializes every field."""
        data = ExperimentConfig.build(dataset="d.arff").to_dict()
        assert data["dataset"] == "d.arff"
        assert data["optimizer"] == "mlplan"
        assert "space_file" in data


class TestExperimentRunner:
    """Test complete runs on the dense sample."""

    @pytest.fixture
    def setup_run(self, fixture_dir, tmp_path):
        """Configuration of a small random-search run."""
        def make(out, optimizer="random", evaluations=5, seed=0, eval_limit=None):
            return ExperimentConfig.build(
                dataset=str(fixture_dir / "dense_sample.arff"),
                optimizer=optimizer,
                budget_total=evaluations,
                eval_limit=eval_limit,
                seed=seed,
                completions=2,
                repetitions=2,
                selection_k=2,
                phase2_repetitions=2,
                output_dir=str(tmp_path / out),
            )
        return make

    def test_run_writes_artifacts(self, setup_run):
        """Test a run writes its report and event log and reports consistent values."""
        config = setup_run("a")
        runner = ExperimentRunner(config)
        report = runner.run()

        assert (runner.output_dir / "report.json").exists()
        assert report.candidates_evaluated <= 5
        assert set(report.test_metrics) == {"exact_match", "hamming_loss", "instance_f", "rank_loss"}
        assert all(0.0 <= value <= 1.0 for value in report.test_metrics.values())
        assert report.dataset["labels"] == 3
        assert report.space_fingerprint == runner.space.fingerprint()
        assert report.top_candidates[0]["pipeline"] in {r.pipeline.serialize() for r in runner.result.records}
        assert load_run_report(runner.output_dir / "report.json") == report

    def test_slow_refit_falls_back(self, setup_run):
        """Test a refit running past the limit is stopped and a fallback pipeline is scored."""
        config = setup_run("slow", eval_limit=2.0)
        real = runner_module.fit_multi_label
        calls = []

        def slow_first(*args, **kwargs):
            calls.append(1)
            if len(calls) == 1:
                time.sleep(60.0)
            return real(*args, **kwargs)

        start = time.monotonic()
        with patch("automl.experiment.runner.fit_multi_label", side_effect=slow_first):
            report = ExperimentRunner(config).run()
        assert time.monotonic() - start < 30.0
        assert report.refit_fallback == runner_module.REFIT_FALLBACK.serialize()
        assert set(report.test_metrics) == {"exact_match", "hamming_loss", "instance_f", "rank_loss"}
        assert len(calls) == 2

    def test_refit_without_fallback(self, setup_run):
        """Test an ordinary run records no refit fallback."""
        assert ExperimentRunner(setup_run("quick")).run().refit_fallback is None

    def test_no_test_rows_reach_the_search(self, setup_run):
        """Test the event log only touches outer-train rows."""
        config = setup_run("a", optimizer="mlplan", evaluations=6)
        report = run_experiment(config)
        n = report.dataset["instances"]
        split = random_split(n, config.split_fraction, config.seed)
        assert audit_event_log(report.event_log_path, split.test_indices)
        data_event = read_events(report.event_log_path)[0]
        assert data_event.kind is EventKind.DATA
        assert sorted(data_event.details["rows"]) == sorted(split.train_indices)

    def test_reproducible(self, setup_run):
        """Test equal configurations give equal choices, metrics and logs apart from timing."""
        first = run_experiment(setup_run("a", optimizer="mlplan", evaluations=6, seed=4))
        second = run_experiment(setup_run("b", optimizer="mlplan", evaluations=6, seed=4))
        assert first.pipeline == second.pipeline
        assert first.test_metrics == second.test_metrics
        assert first.top_candidates == second.top_candidates

        def stripped(path):
            return [e.to_dict(include_timestamp=False) for e in read_events(path)]
        assert stripped(first.event_log_path) == stripped(second.event_log_path)

    def test_custom_space(self, setup_run, fixture_dir):
        """Test a run on the restricted space records its fingerprint."""
        config = setup_run("a").model_copy(update={"space_file": str(fixture_dir / "restricted_space.txt")})
        runner = ExperimentRunner(config)
        report = runner.run()
        assert report.space_fingerprint != ExperimentRunner(setup_run("b")).space.fingerprint()

    def test_missing_dataset(self, tmp_path):
        """Test an unreadable dataset fails before any search."""
        config = ExperimentConfig.build(dataset=str(tmp_path / "missing.arff"), output_dir=str(tmp_path))
        with pytest.raises(DatasetError):
            run_experiment(config)

    def test_load_run_reports(self, setup_run, tmp_path):
        """Test reports are collected from nested run directories."""
        run_experiment(setup_run("all", seed=0))
        run_experiment(setup_run("all", seed=1))
        reports = load_run_reports(tmp_path / "all")
        assert sorted(r.config["seed"] for r in reports) == [0, 1]


class TestAudit:
    """Test audit_event_log on hand-made logs."""

    def test_leak_detected(self, tmp_path):
        """Test an evaluation touching a test row fails the audit."""
        log = EventLog()
        log.emit(EventKind.DATA, rows=[0, 1, 2])
        log.emit(EventKind.EVALUATE, "BR(ZeroR)", 0.5, rows=[1, 2, 7])
        path = log.write(tmp_path / "events.jsonl")
        assert not audit_event_log(path, [7, 8])
        assert audit_event_log(path, [8, 9])

    def test_report_round_trip(self, tmp_path):
        """Test a saved report is sorted-key JSON that loads back equal."""
        report = RunReport(
            config={"dataset": "d.arff"}, dataset={"relation": "d"}, pipeline="BR(ZeroR)",
            internal_score=0.4, test_metrics={"instance_f": 0.6}, candidates_evaluated=3,
            space_fingerprint="abc",
        )
        path = save_run_report(report, tmp_path / "r" / "report.json")
        text = path.read_text(encoding="utf-8")
        assert list(json.loads(text)) == sorted(json.loads(text))
        assert load_run_report(path) == report
