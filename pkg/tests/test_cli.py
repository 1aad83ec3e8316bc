"""
Tests for the command-line entry point.
"""

import time

import pytest

from automl.data import load_arff
from automl.experiment import comparison_datasets, guided_wins, load_run_reports, run_comparison, summarize
from cli import build_parser, main


class TestParser:
    """Test argument parsing."""

    def test_budget_required(self):
        """Test run needs exactly one budget option."""
        parser = build_parser()
        with pytest.raises(SystemExit):
            parser.parse_args(["run", "--data", "d.arff"])
        with pytest.raises(SystemExit):
            parser.parse_args(["run", "--data", "d.arff", "--budget-evals", "5", "--budget-seconds", "5"])

    def test_run_defaults(self):
        """Test defaults of the run command."""
        args = build_parser().parse_args(["run", "--data", "d.arff", "--budget-evals", "5"])
        assert args.optimizer == "mlplan"
        assert args.seed == 0
        assert args.split_fraction == 0.7
        assert args.budget_seconds is None


class TestCommands:
    """Test the subcommands end to end."""

    def test_space(self, capsys, fixture_dir):
        """Test counting the default and the restricted space."""
        assert main(["space"]) == 0
        assert capsys.readouterr().out.startswith("484 pipelines")
        assert main(["space", "--space", str(fixture_dir / "restricted_space.txt"), "--list"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("111 pipelines")
        assert len(lines) == 112

    def test_gen_fixture(self, tmp_path, capsys):
        """Test writing a fixture to a file and to stdout."""
        path = tmp_path / "fx" / "chained.arff"
        assert main(["gen-fixture", "--kind", "chained", "--n", "30", "--seed", "1", "--out", str(path)]) == 0
        assert load_arff(path).n_instances == 30
        capsys.readouterr()
        assert main(["gen-fixture", "--kind", "independent", "--n", "12"]) == 0
        assert "@relation" in capsys.readouterr().out.lower()

    def test_run_and_summarize(self, tmp_path, fixture_dir, capsys):
        """Test a run writes its artifacts and summarize reads them back."""
        out = tmp_path / "runs"
        for optimizer in ("mlplan", "random"):
            assert main(["run", "--data", str(fixture_dir / "dense_sample.arff"), "--optimizer", optimizer,
                         "--budget-evals", "4", "--completions", "2", "--repetitions", "2",
                         "--out", str(out)]) == 0
        assert "instance_f=" in capsys.readouterr().out
        assert len(load_run_reports(out)) == 2
        assert len(list(out.rglob("report.md"))) == 2

        csv_path = tmp_path / "summary.csv"
        choices_path = tmp_path / "choices.csv"
        assert main(["summarize", "--in", str(out), "--out", str(csv_path), "--choices", str(choices_path)]) == 0
        assert "dense_sample" in capsys.readouterr().out
        assert csv_path.exists() and choices_path.exists()

    def test_errors_return_one(self, tmp_path):
        """Test library errors and empty inputs exit with status 1."""
        assert main(["run", "--data", str(tmp_path / "missing.arff"), "--budget-evals", "3",
                     "--out", str(tmp_path)]) == 1
        assert main(["run", "--data", "d.arff", "--budget-evals", "3", "--k", "0"]) == 1
        (tmp_path / "empty").mkdir()
        assert main(["summarize", "--in", str(tmp_path / "empty")]) == 1

    @pytest.mark.slow
    def test_wall_clock_budget(self, tmp_path, fixture_dir):
        """Test a 30-second run finishes within 33 seconds and still writes its report."""
        out = tmp_path / "runs"
        start = time.monotonic()
        status = main(["run", "--data", str(fixture_dir / "dense_sample.arff"), "--budget-seconds", "30",
                       "--eval-limit", "5", "--out", str(out)])
        assert time.monotonic() - start <= 33.0
        assert status == 0
        assert len(load_run_reports(out)) == 1

    def test_compare(self, tmp_path, fixture_dir, capsys):
        """Test compare writes the fixtures, runs both optimizers per seed and reports the win count."""
        out = tmp_path / "compare"
        assert main(["compare", "--samples", str(fixture_dir), "--out", str(out), "--seeds", "1",
                     "--budget-evals", "4", "--fixture-size", "60", "--completions", "2",
                     "--required-wins", "0"]) == 0
        text = capsys.readouterr().out
        assert "datasets" in text.splitlines()[-1]
        assert sorted(p.stem for p in (out / "datasets").glob("*.arff")) == ["chained", "dependent", "independent"]
        assert len(load_run_reports(out / "runs")) == 10
        assert (out / "summary.csv").exists()

    def test_compare_missing_samples(self, tmp_path):
        """Test compare fails cleanly without the shipped samples."""
        assert main(["compare", "--samples", str(tmp_path / "none"), "--out", str(tmp_path / "c")]) == 1


class TestGuidedAgainstRandom:
    """Test the guided search holds up against random search over many seeds."""

    @pytest.mark.slow
    def test_guided_not_worse_on_most_datasets(self, tmp_path, fixture_dir):
        """Test over 10 seeds at 200 evaluations the guided mean is at least the random mean on 4 of 5 datasets."""
        datasets = comparison_datasets(fixture_dir, tmp_path / "datasets")
        reports = run_comparison(datasets, tmp_path / "runs", seeds=10, evaluations=200)
        table = summarize(reports)
        assert len(table) == 5
        assert (table["mlplan_runs"] == 10).all() and (table["random_runs"] == 10).all()
        assert guided_wins(table) >= 4
