"""
Single-label meta learners wrapping one base learner.
"""

import logging
import math
from typing import Callable, List

import numpy as np

from ..shared.rng import derive_rng, derive_seed
from .sl_base import SingleLabelLearner, normalize_rows

logger = logging.getLogger(__name__)

BaseFactory = Callable[[], SingleLabelLearner]


def bootstrap_indices(n: int, seed: int) -> np.ndarray:
    """n uniform draws with replacement from 0..n-1."""
    return derive_rng(seed, "bootstrap").integers(0, n, size=n)


class Bagging(SingleLabelLearner):
    """Averages the scores of members fitted on bootstrap samples."""

    name = "Bagging"

    def __init__(self, base_factory: BaseFactory, members: int = 10, bootstrap: bool = True):
        super().__init__()
        self.base_factory = base_factory
        self.members = members
        self.bootstrap = bootstrap
        self.models: List[SingleLabelLearner] = []

    def _fit(self, features, targets, weights, seed):
        self.models = []
        for i in range(self.members):
            if self.bootstrap:
                rows = bootstrap_indices(len(targets), derive_seed(seed, "bagging", i))
            else:
                rows = np.arange(len(targets))
            model = self.base_factory().fit(
                features[rows], targets[rows], self.class_count,
                derive_seed(seed, "member", i), weights[rows],
            )
            self.models.append(model)

    def _scores(self, features):
        return np.mean([model.predict_scores(features) for model in self.models], axis=0)


class AdaBoostM1(SingleLabelLearner):
    """
    Multi-class boosting with SAMME member weights. Members are fitted on
    weighted data when the base honours weights, on a weighted resample
    otherwise. Scores are normalized weighted votes.
    """

    name = "AdaBoostM1"

    def __init__(self, base_factory: BaseFactory, rounds: int = 10, eps: float = 1e-10):
        super().__init__()
        self.base_factory = base_factory
        self.rounds = rounds
        self.eps = eps
        self.models: List[SingleLabelLearner] = []
        self.alphas: List[float] = []

    def _fit(self, features, targets, weights, seed):
        n = len(targets)
        c = self.class_count
        boost = weights / weights.sum()
        self.models, self.alphas = [], []
        for t in range(self.rounds):
            model = self.base_factory()
            member_seed = derive_seed(seed, "boost", t)
            if model.supports_weights:
                model.fit(features, targets, c, member_seed, boost * n)
            else:
                rows = derive_rng(member_seed, "resample").choice(n, size=n, p=boost)
                model.fit(features[rows], targets[rows], c, member_seed)

            missed = model.predict(features) != targets
            error = float(boost[missed].sum())
            if error >= 1.0 - 1.0 / c:
                if not self.models:
                    self.models.append(model)
                    self.alphas.append(1.0)
                logger.debug("Boosting stopped at round %d with error %.4f", t, error)
                break

            clamped = min(max(error, self.eps), 1.0 - self.eps)
            alpha = math.log((1.0 - clamped) / clamped) + math.log(c - 1)
            self.models.append(model)
            self.alphas.append(alpha)
            if error <= 0.0:
                break
            boost = boost * np.exp(alpha * missed)
            boost = boost / boost.sum()

    def _scores(self, features):
        votes = np.zeros((features.shape[0], self.class_count))
        rows = np.arange(features.shape[0])
        for model, alpha in zip(self.models, self.alphas):
            votes[rows, model.predict(features)] += alpha
        return normalize_rows(votes)

    def staged_predict(self, features) -> List[np.ndarray]:
        """Predictions after each boosting round."""
        features = np.asarray(features, dtype=np.float64)
        votes = np.zeros((features.shape[0], self.class_count))
        rows = np.arange(features.shape[0])
        stages = []
        for model, alpha in zip(self.models, self.alphas):
            votes[rows, model.predict(features)] += alpha
            stages.append(np.argmax(votes, axis=1))
        return stages


class RandomSubspace(SingleLabelLearner):
    """Averages members fitted on random halves of the feature columns."""

    name = "RandomSubspace"

    def __init__(self, base_factory: BaseFactory, members: int = 10, fraction: float = 0.5):
        super().__init__()
        self.base_factory = base_factory
        self.members = members
        self.fraction = fraction
        self.models: List[SingleLabelLearner] = []
        self.subspaces: List[np.ndarray] = []

    def _fit(self, features, targets, weights, seed):
        d = features.shape[1]
        size = max(1, math.ceil(round(self.fraction * d, 9))) if d else 0
        self.models, self.subspaces = [], []
        for i in range(self.members):
            columns = np.sort(derive_rng(seed, "subspace", i).choice(d, size=size, replace=False))
            model = self.base_factory().fit(
                features[:, columns], targets, self.class_count,
                derive_seed(seed, "member", i), weights,
            )
            self.models.append(model)
            self.subspaces.append(columns)

    def _scores(self, features):
        return np.mean([
            model.predict_scores(features[:, columns])
            for model, columns in zip(self.models, self.subspaces)
        ], axis=0)
