"""
Experiment Runner
One run: outer 70/30 split, search on the train portion, refit of the chosen
pipeline on the whole train portion, scoring on the untouched test portion.
"""

import json
import logging
import time
from pathlib import Path
from typing import Callable, Collection, List, Optional, Tuple, Union

import numpy as np

from ..data.arff_reader import load_arff
from ..data.describe import describe_dataset
from ..data.encoding import FeatureEncoder
from ..data.splits import random_split
from ..evaluation.metrics import evaluate_all
from ..learners.ml_specs import fit_multi_label, predict_multi_label
from ..planning.component_space import ComponentSpace, default_space, load_space_file, to_spec
from ..planning.events import read_events, write_events
from ..planning.optimizers import build_optimizer
from ..planning.selection import ranked
from ..shared.exceptions import AutoMLError, SearchError, TimeLimitExceeded
from ..shared.models import ComponentInstance, EventKind, Layer, MultiLabelData, RunReport, SearchResult
from ..shared.rng import derive_seed
from ..shared.timeouts import call_with_limit
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

# Share of a wall-clock budget handed to the search; the rest covers the
# outer refit and test scoring.
SEARCH_SHARE = 0.9
TOP_CANDIDATES = 10
# Scored instead of a chosen pipeline whose refit cannot finish in time.
REFIT_FALLBACK = ComponentInstance("MajorityLabelSet", Layer.ML_BASE)
REPORT_FILE = "report.json"
EVENTS_FILE = "events.jsonl"


class ExperimentRunner:
    """Runs one configured experiment and writes its artifacts."""

    def __init__(self, config: ExperimentConfig, space: Optional[ComponentSpace] = None,
                 clock: Callable[[], float] = time.monotonic):
        self.config = config
        if space is None:
            space = load_space_file(config.space_file) if config.space_file else default_space()
        self.space = space
        self.clock = clock
        self.result: Optional[SearchResult] = None

    @property
    def output_dir(self) -> Path:
        return Path(self.config.output_dir) / self.config.run_name()

    def run(self) -> RunReport:
        """
        Execute the run.

        Returns:
            RunReport; also written to ``<output_dir>/<run name>/report.json``

        Raises:
            DatasetError: If the dataset cannot be read or split
            SearchError: If the search or the final refit fails
        """
        config = self.config
        started = self.clock()
        logger.info("Run %s: optimizer=%s budget=%s seed=%d",
                    config.run_name(), config.optimizer, config.budget_label(), config.seed)

        dataset = load_arff(config.dataset)
        split = random_split(dataset.n_instances, config.split_fraction, config.seed)
        train = dataset.subset(split.train_indices)
        test = dataset.subset(split.test_indices)
        encoder = FeatureEncoder().fit(train)
        search_data = encoder.to_multilabel(train, split.train_indices)
        test_data = encoder.to_multilabel(test, split.test_indices)
        logger.info("Outer split: %d search rows, %d test rows", len(split.train_indices), len(split.test_indices))

        optimizer = build_optimizer(config.optimizer, self.space, config.budget().scaled(SEARCH_SHARE),
                                    config.seed, config.settings(), self.clock)
        search_started = self.clock()
        self.result = result = optimizer.optimize(search_data)
        search_seconds = self.clock() - search_started

        refit_seed = derive_seed(config.seed, "refit")
        refit_limit = self._refit_limit(started)
        refit_fallback = None
        try:
            pred, scores = call_with_limit(_refit_and_predict, refit_limit, result.pipeline,
                                           search_data, refit_seed, test_data.features)
        except TimeLimitExceeded:
            refit_fallback = REFIT_FALLBACK.serialize()
            logger.warning("Refit of %s did not finish within %.2fs; scoring %s instead",
                           result.pipeline.serialize(), refit_limit, refit_fallback)
            pred, scores = _refit_and_predict(REFIT_FALLBACK, search_data, refit_seed, test_data.features)
        except AutoMLError:
            raise
        except Exception as e:
            raise SearchError(f"Refit of {result.pipeline.serialize()} failed: {str(e)}") from e
        metrics = evaluate_all(test_data.labels, pred, scores)

        out_dir = self.output_dir
        events_path = write_events(result.events, out_dir / EVENTS_FILE)
        report = RunReport(
            config=config.to_dict(),
            dataset=describe_dataset(dataset),
            pipeline=result.pipeline.serialize(),
            internal_score=result.internal_score,
            test_metrics=metrics,
            candidates_evaluated=result.candidates_evaluated,
            space_fingerprint=self.space.fingerprint(),
            event_log_path=str(events_path),
            top_candidates=[
                {"pipeline": r.pipeline.serialize(), "mean_score": r.mean_score, "scores": list(r.scores)}
                for r in ranked(result.records)[:TOP_CANDIDATES]
            ],
            timing={
                "search_seconds": search_seconds,
                "total_seconds": self.clock() - started,
            },
            refit_fallback=refit_fallback,
        )
        save_run_report(report, out_dir / REPORT_FILE)
        logger.info("Run %s chose %s: test instance F %.4f",
                    config.run_name(), report.pipeline, metrics["instance_f"])
        return report

    def _refit_limit(self, started: float) -> Optional[float]:
        """Seconds the final refit may take: what is left of a wall-clock budget, else the per-candidate limit."""
        budget = self.config.budget()
        if budget.is_count:
            return budget.per_candidate
        return budget.total - (self.clock() - started)


def _refit_and_predict(pipeline: ComponentInstance, search_data: MultiLabelData, seed: int,
                       features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    model = fit_multi_label(to_spec(pipeline), search_data, seed)
    return predict_multi_label(model, features)


def run_experiment(config: ExperimentConfig, space: Optional[ComponentSpace] = None,
                   clock: Callable[[], float] = time.monotonic) -> RunReport:
    """Run one experiment; see ExperimentRunner.run."""
    return ExperimentRunner(config, space, clock).run()


def save_run_report(report: RunReport, path: Union[str, Path]) -> Path:
    """Write a report as sorted-key JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Report written to %s", path)
    return path


def load_run_report(path: Union[str, Path]) -> RunReport:
    with open(path, "r", encoding="utf-8") as f:
        return RunReport.from_dict(json.load(f))


def load_run_reports(directory: Union[str, Path]) -> List[RunReport]:
    """Every ``report.json`` below a directory, in path order."""
    return [load_run_report(path) for path in sorted(Path(directory).rglob(REPORT_FILE))]


def audit_event_log(path: Union[str, Path], test_indices: Collection[int]) -> bool:
    """
    Check that no search event touched an outer-test row.

    Args:
        path: JSON-lines event log
        test_indices: Original row ids of the outer test portion

    Returns:
        True when the data event and every evaluation avoid all test rows
    """
    test = set(int(i) for i in test_indices)
    for event in read_events(path):
        if event.kind in (EventKind.DATA, EventKind.EVALUATE):
            if test.intersection(event.details.get("rows", ())):
                logger.error("Event %d uses outer-test rows", event.index)
                return False
    return True
