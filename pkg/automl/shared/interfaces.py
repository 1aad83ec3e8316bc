"""
Shared interfaces for the multi-label AutoML engine.
"""

from abc import ABC, abstractmethod
from typing import Any, Tuple

import numpy as np

from .models import MultiLabelData, SearchResult


class ISingleLabelLearner(ABC):
    """Interface for single-label (multi-class) learners."""

    @abstractmethod
    def fit(self, features: np.ndarray, targets: np.ndarray, class_count: int,
            seed: int, weights: np.ndarray = None) -> 'ISingleLabelLearner':
        """Fit the learner and return it."""
        pass

    @abstractmethod
    def predict_scores(self, features: np.ndarray) -> np.ndarray:
        """Return an n x c matrix of class scores with rows summing to 1."""
        pass

    @property
    def supports_weights(self) -> bool:
        """Whether ``fit`` honours instance weights."""
        return False


class IMultiLabelLearner(ABC):
    """Interface for multi-label learners."""

    @abstractmethod
    def fit(self, data: MultiLabelData, seed: int) -> 'IMultiLabelLearner':
        """Fit the learner and return it."""
        pass

    @abstractmethod
    def predict(self, features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Return the binary prediction matrix and the score matrix."""
        pass


class INodeEvaluator(ABC):
    """Interface for search node scoring."""

    @abstractmethod
    def evaluate(self, node: Any) -> float:
        """Score a node; lower is better and +inf marks a prunable node."""
        pass


class IOptimizer(ABC):
    """Interface for pipeline optimizers."""

    @abstractmethod
    def optimize(self, search_data: MultiLabelData) -> SearchResult:
        """Search for a pipeline on the given data."""
        pass
