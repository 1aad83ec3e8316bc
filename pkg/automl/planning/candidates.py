"""
Candidate Evaluation
Scores a pipeline by repeated 70/30 validation splits of the search data.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Set, Tuple

from ..data.splits import random_split
from ..evaluation.metrics import OBJECTIVES, loss_for
from ..learners.ml_specs import fit_multi_label, predict_multi_label
from ..shared.exceptions import ConfigurationError, EvaluationFailed, SearchError, TimeLimitExceeded
from ..shared.models import ComponentInstance, MultiLabelData
from ..shared.rng import derive_seed
from ..shared.timeouts import call_with_limit
from .component_space import to_spec

logger = logging.getLogger(__name__)

MIN_SEARCH_INSTANCES = 10
VALIDATION_TRAIN_FRACTION = 0.7
# Loss given to a repetition whose fit raised after others finished.
WORST_LOSS = 1.0


@dataclass(frozen=True)
class EvaluationOutcome:
    """Result of evaluating one pipeline; ``error`` is set when no repetition finished."""
    pipeline: ComponentInstance
    scores: Tuple[float, ...]
    cost: float
    rows: Tuple[int, ...] = ()
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def _check_search_data(search_data: MultiLabelData) -> None:
    if search_data.n_instances < MIN_SEARCH_INSTANCES:
        raise SearchError(
            f"Search data needs at least {MIN_SEARCH_INSTANCES} instances, "
            f"got {search_data.n_instances}"
        )


def _repetition(pipeline: ComponentInstance, search_data: MultiLabelData, seed: int,
                repetition: int, objective: str, fraction: float) -> Tuple[float, Set[int]]:
    split = random_split(search_data.n_instances, fraction, seed + repetition)
    train = search_data.subset(split.train_indices)
    valid = search_data.subset(split.test_indices)
    model = fit_multi_label(to_spec(pipeline), train, derive_seed(seed, "fit", repetition))
    pred, scores = predict_multi_label(model, valid.features)
    loss = loss_for(objective, valid.labels, pred, scores)
    rows = set(train.row_ids.tolist()) | set(valid.row_ids.tolist())
    return float(loss), rows


def _run_repetitions(pipeline: ComponentInstance, search_data: MultiLabelData, seed: int,
                     repetitions: int, per_candidate_limit: Optional[float], objective: str,
                     fraction: float, clock: Callable[[], float]) -> Tuple[List[float], Set[int]]:
    start = clock()
    # The hard limit runs on real time whatever clock is injected.
    deadline = None if per_candidate_limit is None else time.monotonic() + per_candidate_limit
    losses: List[float] = []
    rows: Set[int] = set()
    for r in range(1, repetitions + 1):
        remaining = None if deadline is None else deadline - time.monotonic()
        try:
            loss, used = call_with_limit(_repetition, remaining, pipeline, search_data, seed, r,
                                         objective, fraction)
        except TimeLimitExceeded as exc:
            if not losses:
                raise EvaluationFailed(
                    f"{pipeline.serialize()} was stopped at the {per_candidate_limit:.2f}s limit "
                    "before finishing one repetition"
                ) from exc
            logger.warning("Per-candidate limit stopped repetition %d of %s; keeping %d loss(es)",
                           r, pipeline.serialize(), len(losses))
            break
        except Exception as exc:
            if not losses:
                raise EvaluationFailed(f"{pipeline.serialize()} failed: {exc}") from exc
            logger.warning("Repetition %d of %s failed, scored %.1f: %s",
                           r, pipeline.serialize(), WORST_LOSS, exc)
            losses.append(WORST_LOSS)
            break
        overrun = per_candidate_limit is not None and clock() - start > per_candidate_limit
        if overrun and not losses:
            raise EvaluationFailed(
                f"{pipeline.serialize()} exceeded the {per_candidate_limit:.2f}s limit "
                "before finishing one repetition"
            )
        losses.append(loss)
        rows |= used
        if overrun:
            logger.warning("Per-candidate limit reached for %s after %d repetition(s)",
                           pipeline.serialize(), len(losses))
            break
    return losses, rows


def evaluate_candidate(pipeline: ComponentInstance, search_data: MultiLabelData, seed: int,
                       repetitions: int = 3, per_candidate_limit: Optional[float] = None,
                       objective: str = "instance_f",
                       clock: Callable[[], float] = time.monotonic) -> List[float]:
    """
    Validation losses of a pipeline over repeated 70/30 splits.

    Repetition r splits with seed ``seed + r``. A fit still running at the
    limit is interrupted and its repetition dropped. The clock is also read
    between repetitions; a repetition that finished past the limit still
    counts unless it was the first one.

    Args:
        pipeline: Pipeline to evaluate
        search_data: Encoded search portion (at least 10 rows)
        seed: Evaluation seed
        repetitions: Number of splits
        per_candidate_limit: Seconds, or None for no limit
        objective: Loss to score with
        clock: Time source

    Returns:
        One loss per finished repetition

    Raises:
        EvaluationFailed: If no repetition finished
        SearchError: If the search data is too small
    """
    _check_search_data(search_data)
    losses, _ = _run_repetitions(pipeline, search_data, seed, repetitions, per_candidate_limit,
                                 objective, VALIDATION_TRAIN_FRACTION, clock)
    return losses


class CandidateEvaluator:
    """Evaluates pipelines against one search portion with fixed protocol settings."""

    def __init__(self, search_data: MultiLabelData, seed: int, repetitions: int = 3,
                 objective: str = "instance_f", clock: Callable[[], float] = time.monotonic):
        _check_search_data(search_data)
        if objective not in OBJECTIVES:
            raise ConfigurationError(f"Unknown objective '{objective}', expected one of {OBJECTIVES}")
        if repetitions < 1:
            raise ConfigurationError(f"Repetitions must be positive, got {repetitions}")
        self.search_data = search_data
        self.seed = seed
        self.repetitions = repetitions
        self.objective = objective
        self.clock = clock

    def run(self, pipeline: ComponentInstance, time_limit: Optional[float] = None,
            seed: Optional[int] = None, repetitions: Optional[int] = None) -> EvaluationOutcome:
        """Evaluate without raising; failures come back as an outcome with ``error`` set."""
        start = self.clock()
        try:
            losses, rows = _run_repetitions(
                pipeline, self.search_data,
                self.seed if seed is None else seed,
                self.repetitions if repetitions is None else repetitions,
                time_limit, self.objective, VALIDATION_TRAIN_FRACTION, self.clock,
            )
        except EvaluationFailed as exc:
            logger.warning("Evaluation failed: %s", exc)
            return EvaluationOutcome(pipeline, (), self.clock() - start, error=str(exc))
        logger.debug("Evaluated %s: %s", pipeline.serialize(), losses)
        return EvaluationOutcome(pipeline, tuple(losses), self.clock() - start, tuple(sorted(rows)))


class LeafLossEvaluator:
    """Scores pipelines with a known loss function; used on synthetic spaces."""

    def __init__(self, leaf_loss: Callable[[ComponentInstance], float]):
        self.leaf_loss = leaf_loss

    def run(self, pipeline: ComponentInstance, time_limit: Optional[float] = None,
            seed: Optional[int] = None, repetitions: Optional[int] = None) -> EvaluationOutcome:
        count = 1 if repetitions is None else repetitions
        return EvaluationOutcome(pipeline, (float(self.leaf_loss(pipeline)),) * count, 0.0)
