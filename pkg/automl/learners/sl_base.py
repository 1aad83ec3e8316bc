"""
Single-label base learners.

Every learner emits class scores that are nonnegative and sum to 1 per row.
Argmax ties resolve toward the smaller class id. A training set with a single
observed class never raises; the learner then behaves like ZeroR.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import logsumexp, softmax

from ..shared.exceptions import ShapeMismatch
from ..shared.interfaces import ISingleLabelLearner

logger = logging.getLogger(__name__)


def class_distribution(targets: np.ndarray, class_count: int,
                       weights: Optional[np.ndarray] = None) -> np.ndarray:
    """Weighted class frequencies; uniform when no weight is present."""
    counts = np.bincount(targets, weights=weights, minlength=class_count).astype(np.float64)
    total = counts.sum()
    if total <= 0:
        return np.full(class_count, 1.0 / class_count)
    return counts / total


def normalize_rows(scores: np.ndarray) -> np.ndarray:
    scores = np.clip(scores, 0.0, None)
    totals = scores.sum(axis=1, keepdims=True)
    uniform = np.full_like(scores, 1.0 / scores.shape[1])
    return np.where(totals > 0, scores / np.where(totals > 0, totals, 1.0), uniform)


class SingleLabelLearner(ISingleLabelLearner):
    """Shared fit/predict plumbing: weight handling, shape checks, degenerate fallback."""

    name = "SingleLabelLearner"

    def __init__(self):
        self.class_count: Optional[int] = None
        self.n_features: Optional[int] = None
        self._fallback: Optional[np.ndarray] = None

    def fit(self, features, targets, class_count, seed, weights=None):
        features = np.asarray(features, dtype=np.float64)
        targets = np.asarray(targets, dtype=np.int64)
        weights = np.ones(len(targets)) if weights is None else np.asarray(weights, dtype=np.float64)
        self.class_count = int(class_count)
        self.n_features = features.shape[1]
        self._fallback = None
        if self.class_count < 2 or np.unique(targets).size < 2:
            self._fallback = class_distribution(targets, self.class_count, weights)
            return self
        self._fit(features, targets, weights, seed)
        return self

    def predict_scores(self, features):
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.n_features:
            raise ShapeMismatch(
                f"{self.name} was fitted on {self.n_features} columns, got shape {features.shape}"
            )
        if self._fallback is not None:
            return np.tile(self._fallback, (features.shape[0], 1))
        return normalize_rows(self._scores(features))

    def predict(self, features) -> np.ndarray:
        return np.argmax(self.predict_scores(features), axis=1)

    def _fit(self, features, targets, weights, seed):
        raise NotImplementedError

    def _scores(self, features):
        raise NotImplementedError


class ZeroR(SingleLabelLearner):
    """Predicts the empirical class frequencies of the training targets."""

    name = "ZeroR"

    @property
    def supports_weights(self) -> bool:
        return True

    def _fit(self, features, targets, weights, seed):
        self._fallback = class_distribution(targets, self.class_count, weights)


@dataclass
class _TreeNode:
    distribution: np.ndarray
    feature: int = -1
    threshold: float = 0.0
    left: Optional['_TreeNode'] = None
    right: Optional['_TreeNode'] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def best_gini_split(features: np.ndarray, onehot: np.ndarray,
                    min_leaf: int) -> Optional[Tuple[int, float, float]]:
    """
    Scan every feature for the midpoint threshold with the lowest weighted
    Gini impurity.

    Args:
        features: n x d matrix
        onehot: n x c matrix of instance weights spread over class columns
        min_leaf: Minimum number of instances on each side

    Returns:
        (feature, threshold, impurity) of the best split, or None if no split
        strictly improves on the parent
    """
    n = features.shape[0]
    total = onehot.sum(axis=0)
    weight = total.sum()
    best_impurity = weight - (total ** 2).sum() / weight - 1e-12
    best = None
    sizes = np.arange(1, n)
    size_ok = (sizes >= min_leaf) & (n - sizes >= min_leaf)

    for j in range(features.shape[1]):
        order = np.argsort(features[:, j], kind="stable")
        xs = features[order, j]
        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = total - left
        w_left = left.sum(axis=1)
        w_right = right.sum(axis=1)
        valid = size_ok & (xs[:-1] < xs[1:]) & (w_left > 0) & (w_right > 0)
        if not valid.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            impurity = (w_left - (left ** 2).sum(axis=1) / w_left) \
                + (w_right - (right ** 2).sum(axis=1) / w_right)
        impurity = np.where(valid, impurity, np.inf)
        i = int(np.argmin(impurity))
        if impurity[i] < best_impurity:
            best_impurity = impurity[i]
            best = (j, float((xs[i] + xs[i + 1]) / 2.0), float(impurity[i]))
    return best


class DecisionTree(SingleLabelLearner):
    """CART-style tree with Gini impurity; leaves emit weighted class frequencies."""

    name = "DecisionTree"

    def __init__(self, max_depth: int = 20, min_leaf: int = 2):
        super().__init__()
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.root: Optional[_TreeNode] = None

    @property
    def supports_weights(self) -> bool:
        return True

    def _fit(self, features, targets, weights, seed):
        onehot = np.zeros((len(targets), self.class_count))
        onehot[np.arange(len(targets)), targets] = weights
        self.root = self._grow(features, onehot, depth=0)

    def _grow(self, features: np.ndarray, onehot: np.ndarray, depth: int) -> _TreeNode:
        totals = onehot.sum(axis=0)
        node = _TreeNode(distribution=normalize_rows(totals[None, :])[0])
        pure = np.count_nonzero(totals) <= 1
        if pure or depth >= self.max_depth or len(onehot) < 2 * self.min_leaf:
            return node

        split = best_gini_split(features, onehot, self.min_leaf)
        if split is None:
            return node
        node.feature, node.threshold, _ = split
        goes_left = features[:, node.feature] <= node.threshold
        node.left = self._grow(features[goes_left], onehot[goes_left], depth + 1)
        node.right = self._grow(features[~goes_left], onehot[~goes_left], depth + 1)
        return node

    def _scores(self, features):
        scores = np.empty((features.shape[0], self.class_count))
        self._route(self.root, features, np.arange(features.shape[0]), scores)
        return scores

    def _route(self, node: _TreeNode, features, rows, scores):
        if node.is_leaf:
            scores[rows] = node.distribution
            return
        goes_left = features[rows, node.feature] <= node.threshold
        self._route(node.left, features, rows[goes_left], scores)
        self._route(node.right, features, rows[~goes_left], scores)

    @property
    def depth(self) -> int:
        def walk(node):
            return 0 if node is None or node.is_leaf else 1 + max(walk(node.left), walk(node.right))
        return walk(self.root)


class DecisionStump(DecisionTree):
    """A single Gini split."""

    name = "DecisionStump"

    def __init__(self):
        super().__init__(max_depth=1, min_leaf=1)


class NaiveBayes(SingleLabelLearner):
    """Gaussian naive Bayes over every encoded column."""

    name = "NaiveBayes"

    def __init__(self, var_smoothing: float = 1e-9):
        super().__init__()
        self.var_smoothing = var_smoothing

    @property
    def supports_weights(self) -> bool:
        return True

    def _fit(self, features, targets, weights, seed):
        c, d = self.class_count, features.shape[1]
        self.priors = class_distribution(targets, c, weights)
        self.means = np.zeros((c, d))
        self.variances = np.ones((c, d))
        epsilon = self.var_smoothing * max(float(features.var(axis=0).max(initial=0.0)), 1.0)
        for k in range(c):
            mask = targets == k
            w = weights[mask]
            if w.sum() <= 0:
                continue
            mean = np.average(features[mask], axis=0, weights=w)
            self.means[k] = mean
            self.variances[k] = np.average((features[mask] - mean) ** 2, axis=0, weights=w)
        self.variances = self.variances + epsilon

    def _scores(self, features):
        with np.errstate(divide="ignore"):
            log_prior = np.log(self.priors)
        log_likelihood = -0.5 * (
            np.log(2.0 * np.pi * self.variances)[None, :, :]
            + (features[:, None, :] - self.means[None, :, :]) ** 2 / self.variances[None, :, :]
        ).sum(axis=2)
        joint = log_likelihood + log_prior[None, :]
        return np.exp(joint - logsumexp(joint, axis=1, keepdims=True))


def loss_and_gradient(weights: np.ndarray, bias: np.ndarray, features: np.ndarray,
                      onehot: np.ndarray, sample_weights: np.ndarray,
                      l2: float) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Weighted multinomial cross-entropy with an L2 penalty on the weights.

    Returns:
        (loss, gradient w.r.t. weights, gradient w.r.t. bias)
    """
    share = sample_weights / sample_weights.sum()
    logits = features @ weights + bias
    log_probs = logits - logsumexp(logits, axis=1, keepdims=True)
    loss = -float((share[:, None] * onehot * log_probs).sum()) + 0.5 * l2 * float((weights ** 2).sum())
    residual = share[:, None] * (np.exp(log_probs) - onehot)
    return loss, features.T @ residual + l2 * weights, residual.sum(axis=0)


class Logistic(SingleLabelLearner):
    """Multinomial logistic regression trained by full-batch gradient descent."""

    name = "Logistic"

    def __init__(self, epochs: int = 200, learning_rate: float = 0.1, l2: float = 1e-4):
        super().__init__()
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.l2 = l2

    @property
    def supports_weights(self) -> bool:
        return True

    def _fit(self, features, targets, weights, seed):
        self.center = features.mean(axis=0)
        scale = features.std(axis=0)
        self.scale = np.where(scale > 0, scale, 1.0)
        standardized = (features - self.center) / self.scale
        onehot = np.eye(self.class_count)[targets]
        self.weights = np.zeros((features.shape[1], self.class_count))
        self.bias = np.zeros(self.class_count)
        for _ in range(self.epochs):
            _, grad_w, grad_b = loss_and_gradient(
                self.weights, self.bias, standardized, onehot, weights, self.l2
            )
            self.weights -= self.learning_rate * grad_w
            self.bias -= self.learning_rate * grad_b

    def _scores(self, features):
        standardized = (features - self.center) / self.scale
        return softmax(standardized @ self.weights + self.bias, axis=1)


class KNN(SingleLabelLearner):
    """k nearest neighbours under Euclidean distance; scores are vote proportions."""

    name = "KNN"

    def __init__(self, k: int = 5):
        super().__init__()
        self.k = k

    def _fit(self, features, targets, weights, seed):
        self.train_features = features.copy()
        self.train_targets = targets.copy()

    def _scores(self, features):
        k = min(self.k, len(self.train_targets))
        distances = cdist(features, self.train_features, metric="euclidean")
        neighbours = np.argsort(distances, axis=1, kind="stable")[:, :k]
        votes = self.train_targets[neighbours]
        scores = np.zeros((features.shape[0], self.class_count))
        for column in range(k):
            scores[np.arange(features.shape[0]), votes[:, column]] += 1.0
        return scores / k
