"""
Multi-label reductions to single-label problems.

Each strategy fits one or more single-label learners and predicts a binary
matrix together with a score matrix in [0, 1].
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from ..shared.exceptions import ShapeMismatch
from ..shared.interfaces import IMultiLabelLearner
from ..shared.models import MultiLabelData
from ..shared.rng import derive_rng, derive_seed
from .label_sets import LPCodebook, label_powerset_encode, label_powerset_decode, \
    prune_label_sets, draw_label_subsets
from .single_label import SLSpec, SLDataset, SLModel, fit_single_label, predict_class_scores

logger = logging.getLogger(__name__)


class MultiLabelLearner(IMultiLabelLearner):
    """Shared shape bookkeeping for multi-label learners."""

    name = "MultiLabelLearner"

    def __init__(self):
        self.n_features: Optional[int] = None
        self.n_labels: Optional[int] = None

    def fit(self, data: MultiLabelData, seed: int) -> 'MultiLabelLearner':
        self.n_features = data.features.shape[1]
        self.n_labels = data.n_labels
        self._fit(np.asarray(data.features), np.asarray(data.labels, dtype=np.int64), seed)
        return self

    def predict(self, features) -> Tuple[np.ndarray, np.ndarray]:
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.n_features:
            raise ShapeMismatch(
                f"{self.name} was fitted on {self.n_features} columns, got shape {features.shape}"
            )
        pred, scores = self._predict(features)
        return pred.astype(np.int8), np.clip(scores, 0.0, 1.0)

    def _fit(self, features: np.ndarray, labels: np.ndarray, seed: int):
        raise NotImplementedError

    def _predict(self, features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError


def _binary_model(spec: SLSpec, features, targets, seed) -> SLModel:
    return fit_single_label(spec, SLDataset(features, targets, 2), seed)


class BinaryRelevance(MultiLabelLearner):
    """One independent binary learner per label."""

    name = "BR"

    def __init__(self, base: SLSpec):
        super().__init__()
        self.base = base
        self.models: List[SLModel] = []

    def _fit(self, features, labels, seed):
        self.models = [
            _binary_model(self.base, features, labels[:, j], derive_seed(seed, "label", j))
            for j in range(labels.shape[1])
        ]

    def _predict(self, features):
        class_scores = [predict_class_scores(model, features) for model in self.models]
        pred = np.column_stack([np.argmax(s, axis=1) for s in class_scores])
        scores = np.column_stack([s[:, 1] for s in class_scores])
        return pred, scores


class ClassifierChain(MultiLabelLearner):
    """
    Binary learners along a seeded random label order. Each learner sees the
    features plus the labels earlier in the chain: true labels while fitting,
    predicted labels at inference.
    """

    name = "CC"

    def __init__(self, base: SLSpec):
        super().__init__()
        self.base = base
        self.order: Optional[np.ndarray] = None
        self.models: List[SLModel] = []

    def _fit(self, features, labels, seed):
        m = labels.shape[1]
        self.order = derive_rng(seed, "chain").permutation(m)
        self.models = []
        for position, label in enumerate(self.order):
            augmented = np.hstack([features, labels[:, self.order[:position]]])
            self.models.append(
                _binary_model(self.base, augmented, labels[:, label], derive_seed(seed, "label", position))
            )

    def _predict(self, features):
        n, m = features.shape[0], len(self.order)
        pred = np.zeros((n, m), dtype=np.int64)
        scores = np.zeros((n, m))
        for position, (label, model) in enumerate(zip(self.order, self.models)):
            augmented = np.hstack([features, pred[:, self.order[:position]]])
            class_scores = predict_class_scores(model, augmented)
            pred[:, label] = np.argmax(class_scores, axis=1)
            scores[:, label] = class_scores[:, 1]
        return pred, scores


class LabelCombination(MultiLabelLearner):
    """
    Label powerset: one multi-class learner over the observed label vectors.
    Predictions decode the argmax class; scores are label marginals of the
    class scores.
    """

    name = "LC"

    def __init__(self, base: SLSpec):
        super().__init__()
        self.base = base
        self.codebook: Optional[LPCodebook] = None
        self.model: Optional[SLModel] = None

    def _fit(self, features, labels, seed):
        ids, self.codebook = label_powerset_encode(labels)
        self.model = fit_single_label(
            self.base, SLDataset(features, ids, self.codebook.size), derive_seed(seed, "powerset")
        )

    def _predict(self, features):
        class_scores = predict_class_scores(self.model, features)
        pred = label_powerset_decode(np.argmax(class_scores, axis=1), self.codebook)
        return pred, class_scores @ self.codebook.patterns


class PrunedSetsLearner(LabelCombination):
    """Label powerset over pruned label sets; falls back to plain LC if nothing survives."""

    name = "PS"

    def __init__(self, base: SLSpec, p: int = 2, b: int = 2):
        super().__init__(base)
        self.p = p
        self.b = b

    def _fit(self, features, labels, seed):
        pruned = prune_label_sets(labels, self.p, self.b)
        if pruned.size == 0:
            logger.debug("Pruning removed every instance; fitting plain label powerset")
            super()._fit(features, labels, seed)
            return
        super()._fit(features[pruned.rows], pruned.labels, seed)


class RAkEL(MultiLabelLearner):
    """Label powerset models on random k-label subsets, aggregated by voting."""

    name = "RAkEL"

    def __init__(self, base: SLSpec, k: int = 3, count: Optional[int] = None):
        super().__init__()
        self.base = base
        self.k = k
        self.count = count
        self.subsets: List[Tuple[int, ...]] = []
        self.models: List[LabelCombination] = []

    def _fit(self, features, labels, seed):
        m = labels.shape[1]
        k = min(self.k, m)
        count = self.count if self.count is not None else math.ceil(2 * m / k)
        self.subsets = draw_label_subsets(m, k, count, derive_seed(seed, "rakel"))
        self.models = []
        row_ids = np.arange(len(labels))
        for i, subset in enumerate(self.subsets):
            member = LabelCombination(self.base)
            member.fit(MultiLabelData(features, labels[:, list(subset)], row_ids),
                       derive_seed(seed, "subset", i))
            self.models.append(member)

    def _predict(self, features):
        votes = np.zeros((features.shape[0], self.n_labels))
        coverage = np.zeros(self.n_labels)
        for subset, model in zip(self.subsets, self.models):
            pred, _ = model.predict(features)
            votes[:, list(subset)] += pred
            coverage[list(subset)] += 1
        scores = votes / coverage
        return (scores >= 0.5).astype(np.int64), scores


class MajorityLabelSet(MultiLabelLearner):
    """Predicts the most frequent training label vector; ties go to the first seen."""

    name = "MajorityLabelSet"

    def __init__(self):
        super().__init__()
        self.vector: Optional[np.ndarray] = None

    def _fit(self, features, labels, seed):
        ids, codebook = label_powerset_encode(labels)
        self.vector = codebook.patterns[int(np.argmax(np.bincount(ids)))].astype(np.int64)

    def _predict(self, features):
        pred = np.tile(self.vector, (features.shape[0], 1))
        return pred, pred.astype(np.float64)


