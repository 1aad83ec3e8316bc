"""
Multi-label performance measures.

All measures average a per-instance value over the rows of an n x m truth
matrix. Predictions are binary matrices, scores are real matrices of the
same shape.
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ..shared.exceptions import ShapeMismatch

OBJECTIVES = ("instance_f", "hamming", "subset_zero_one", "rank_loss")


@dataclass(frozen=True)
class MetricReport:
    """A metric's mean together with its per-instance values."""
    name: str
    mean: float
    per_instance: np.ndarray
    raw: np.ndarray = field(default=None)
    flagged: np.ndarray = field(default=None)

    @classmethod
    def from_values(cls, name: str, per_instance: np.ndarray, **extra) -> 'MetricReport':
        values = np.asarray(per_instance, dtype=np.float64)
        return cls(name=name, mean=float(values.mean()), per_instance=values, **extra)


def _validated(truth, other) -> Tuple[np.ndarray, np.ndarray]:
    truth = np.asarray(truth)
    other = np.asarray(other)
    if truth.ndim != 2 or truth.shape != other.shape:
        raise ShapeMismatch(f"Truth shape {truth.shape} != prediction shape {other.shape}")
    if truth.shape[0] == 0 or truth.shape[1] == 0:
        raise ShapeMismatch("Metrics need at least one instance and one label")
    return truth.astype(np.int64), other


def subset_zero_one_report(truth, pred) -> MetricReport:
    truth, pred = _validated(truth, pred)
    mismatch = np.any(truth != pred.astype(np.int64), axis=1)
    return MetricReport.from_values("subset_zero_one", mismatch.astype(np.float64))


def hamming_report(truth, pred) -> MetricReport:
    truth, pred = _validated(truth, pred)
    wrong = (truth != pred.astype(np.int64)).mean(axis=1)
    return MetricReport.from_values("hamming", wrong)


def instance_f_report(truth, pred) -> MetricReport:
    """Per-instance F-measure; an instance with empty truth and empty prediction scores 1."""
    truth, pred = _validated(truth, pred)
    pred = pred.astype(np.int64)
    numerator = 2.0 * (truth * pred).sum(axis=1)
    denominator = (truth.sum(axis=1) + pred.sum(axis=1)).astype(np.float64)
    values = np.ones(truth.shape[0], dtype=np.float64)
    nonempty = denominator > 0
    values[nonempty] = numerator[nonempty] / denominator[nonempty]
    return MetricReport.from_values("instance_f", values)


def rank_loss_report(truth, scores) -> MetricReport:
    """
    Ranking loss over (relevant, irrelevant) label pairs.

    A pair counts 1 when the relevant label scores lower and 1/2 on a tie.
    ``per_instance`` holds counts divided by the instance's pair count,
    ``raw`` the plain counts. Instances without any such pair contribute 0
    and are marked in ``flagged``.
    """
    truth, scores = _validated(truth, scores)
    scores = scores.astype(np.float64)
    if not np.all(np.isfinite(scores)):
        raise ValueError("Score matrices must be finite")

    relevant = truth == 1
    pair_mask = relevant[:, :, None] & ~relevant[:, None, :]
    diff = scores[:, :, None] - scores[:, None, :]
    wrong = (diff < 0).astype(np.float64) + 0.5 * (diff == 0)
    raw = (wrong * pair_mask).sum(axis=(1, 2))
    pairs = pair_mask.sum(axis=(1, 2))
    flagged = pairs == 0
    normalized = np.zeros_like(raw)
    normalized[~flagged] = raw[~flagged] / pairs[~flagged]
    return MetricReport.from_values("rank_loss", normalized, raw=raw, flagged=flagged)


def subset_zero_one(truth, pred) -> float:
    """Fraction of instances whose predicted label vector is not exactly right."""
    return subset_zero_one_report(truth, pred).mean


def hamming(truth, pred) -> float:
    """Fraction of wrongly predicted label bits."""
    return hamming_report(truth, pred).mean


def instance_f_measure(truth, pred) -> float:
    """Instance-wise F-measure averaged over instances."""
    return instance_f_report(truth, pred).mean


def rank_loss(truth, scores, normalize: bool = True) -> float:
    """Mean rank loss; ``normalize=False`` averages the raw pair counts."""
    report = rank_loss_report(truth, scores)
    if normalize:
        return report.mean
    return float(report.raw.mean())


def loss_for(objective: str, truth, pred, scores) -> float:
    """
    Search loss in [0, 1] for a named objective.

    Raises:
        ValueError: If the objective is unknown
    """
    if objective == "instance_f":
        return 1.0 - instance_f_measure(truth, pred)
    if objective == "hamming":
        return hamming(truth, pred)
    if objective == "subset_zero_one":
        return subset_zero_one(truth, pred)
    if objective == "rank_loss":
        return rank_loss(truth, scores)
    raise ValueError(f"Unknown objective '{objective}'; choose from {OBJECTIVES}")


def evaluate_all(truth, pred, scores) -> Dict[str, float]:
    """The four test metrics reported for a run."""
    return {
        "exact_match": 1.0 - subset_zero_one(truth, pred),
        "hamming_loss": hamming(truth, pred),
        "instance_f": instance_f_measure(truth, pred),
        "rank_loss": rank_loss(truth, scores),
    }
