"""
Synthetic multi-label datasets used by tests and desk-scale experiments.
"""

import logging
from typing import Callable, Dict

import numpy as np

from ..shared.exceptions import ConfigurationError
from ..shared.models import AttributeKind, AttributeSpec, LabeledDataset
from ..shared.rng import derive_rng

logger = logging.getLogger(__name__)


def _numeric(names):
    return tuple(AttributeSpec(name, AttributeKind.NUMERIC) for name in names)


def _flip(labels: np.ndarray, rate: float, rng: np.random.Generator) -> np.ndarray:
    noise = rng.random(labels.shape) < rate
    return np.where(noise, 1 - labels, labels)


def independent_labels(n: int = 200, seed: int = 0, m: int = 4, d: int = 6) -> LabeledDataset:
    """Each label thresholds its own pair of features; labels are independent given x."""
    rng = derive_rng(seed, "fixture-independent")
    features = rng.normal(size=(n, d))
    labels = np.empty((n, m), dtype=np.int8)
    for j in range(m):
        signal = features[:, j % d] + 0.5 * features[:, (j + 1) % d]
        labels[:, j] = (signal + 0.3 * rng.normal(size=n) > 0).astype(np.int8)
    return LabeledDataset(
        relation_name=f"independent_labels: -C {m}",
        attributes=_numeric([f"x{i}" for i in range(d)]),
        label_names=tuple(f"y{j}" for j in range(m)),
        features=features,
        labels=_flip(labels, 0.05, rng),
    )


def chained_labels(n: int = 200, seed: int = 0, m: int = 4, d: int = 5) -> LabeledDataset:
    """
    Labels along a chain: each label combines its predecessor with one
    feature, and a nominal ``group`` attribute flips the last label.
    """
    rng = derive_rng(seed, "fixture-chained")
    numeric = rng.normal(size=(n, d))
    group = rng.integers(0, 3, size=n)
    labels = np.empty((n, m), dtype=np.int8)
    labels[:, 0] = (numeric[:, 0] > 0).astype(np.int8)
    for j in range(1, m):
        labels[:, j] = (labels[:, j - 1] ^ (numeric[:, j % d] > 0.5)).astype(np.int8)
    labels[group == 2, m - 1] ^= 1

    # 5% missing numeric entries exercise imputation
    numeric[rng.random(numeric.shape) < 0.05] = np.nan
    attributes = _numeric([f"x{i}" for i in range(d)]) + (
        AttributeSpec("group", AttributeKind.NOMINAL, ("a", "b", "c")),
    )
    return LabeledDataset(
        relation_name=f"chained_labels: -C {m}",
        attributes=attributes,
        label_names=tuple(f"y{j}" for j in range(m)),
        features=np.column_stack([numeric, group.astype(np.float64)]),
        labels=_flip(labels, 0.03, rng),
    )


# Joint label distribution of the dependence fixture: (1,1), (0,0), (1,0).
DEPENDENT_PAIR_PATTERNS = np.array([[1, 1], [0, 0], [1, 0]], dtype=np.int8)
DEPENDENT_PAIR_PROBABILITIES = np.array([0.4, 0.4, 0.2])


def dependent_pairs(n: int = 1000, seed: int = 0) -> LabeledDataset:
    """
    Two strongly dependent labels and one constant, uninformative feature.

    The Bayes-optimal subset 0/1 loss is 0.6 for a label-powerset learner
    and 0.8 for per-label prediction.
    """
    rng = derive_rng(seed, "fixture-dependent")
    draws = rng.choice(len(DEPENDENT_PAIR_PATTERNS), size=n, p=DEPENDENT_PAIR_PROBABILITIES)
    return LabeledDataset(
        relation_name="dependent_pairs: -C 2",
        attributes=_numeric(["constant"]),
        label_names=("y0", "y1"),
        features=np.ones((n, 1)),
        labels=DEPENDENT_PAIR_PATTERNS[draws],
    )


FIXTURE_KINDS: Dict[str, Callable[..., LabeledDataset]] = {
    "independent": independent_labels,
    "chained": chained_labels,
    "dependent": dependent_pairs,
}


def generate_fixture(kind: str, n: int, seed: int) -> LabeledDataset:
    """Build a synthetic dataset by kind name."""
    try:
        generator = FIXTURE_KINDS[kind]
    except KeyError as exc:
        raise ConfigurationError(
            f"Unknown fixture kind '{kind}'; choose from {sorted(FIXTURE_KINDS)}"
        ) from exc
    if n < 2:
        raise ConfigurationError("A fixture needs at least 2 instances")
    logger.debug("Generating %s fixture with n=%d seed=%d", kind, n, seed)
    return generator(n=n, seed=seed)
