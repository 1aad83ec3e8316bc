"""
Multi-label meta learners: ensembles of one multi-label base strategy.

Member i is fitted with seed ``seed + i`` so members can be fitted
concurrently; scores are averaged and thresholded at 0.5 (ties predict 1).
"""

import logging
import math
from typing import Callable, List

import numpy as np
from joblib import Parallel, delayed

from ..shared.models import MultiLabelData
from ..shared.rng import derive_rng
from .multi_label import MultiLabelLearner
from .sl_meta import bootstrap_indices

logger = logging.getLogger(__name__)

MemberFactory = Callable[[], MultiLabelLearner]


class MultiLabelEnsemble(MultiLabelLearner):
    """Score-averaging ensemble over row or column subsets of the training data."""

    name = "MultiLabelEnsemble"

    def __init__(self, member_factory: MemberFactory, members: int = 10, n_jobs: int = 1):
        super().__init__()
        self.member_factory = member_factory
        self.members = members
        self.n_jobs = n_jobs
        self.models: List[MultiLabelLearner] = []
        self.columns: List[np.ndarray] = []

    def _member_rows(self, n: int, member_seed: int) -> np.ndarray:
        return np.arange(n)

    def _member_columns(self, d: int, member_seed: int) -> np.ndarray:
        return np.arange(d)

    def _fit_member(self, features, labels, seed: int, index: int):
        member_seed = seed + index
        rows = self._member_rows(len(labels), member_seed)
        columns = self._member_columns(features.shape[1], member_seed)
        data = MultiLabelData(features[np.ix_(rows, columns)], labels[rows], rows)
        return self.member_factory().fit(data, member_seed), columns

    def _fit(self, features, labels, seed):
        fitted = Parallel(n_jobs=self.n_jobs, backend="threading")(
            delayed(self._fit_member)(features, labels, seed, i) for i in range(self.members)
        )
        self.models = [model for model, _ in fitted]
        self.columns = [columns for _, columns in fitted]

    def _predict(self, features):
        scores = np.mean([
            model.predict(features[:, columns])[1]
            for model, columns in zip(self.models, self.columns)
        ], axis=0)
        return (scores >= 0.5).astype(np.int64), scores


class BaggingML(MultiLabelEnsemble):
    """Members fitted on bootstrap samples."""

    name = "BaggingML"

    def _member_rows(self, n, member_seed):
        return bootstrap_indices(n, member_seed)


class EnsembleML(MultiLabelEnsemble):
    """Members fitted on subsamples drawn without replacement."""

    name = "EnsembleML"

    def __init__(self, member_factory: MemberFactory, members: int = 10,
                 fraction: float = 0.67, n_jobs: int = 1):
        super().__init__(member_factory, members, n_jobs)
        self.fraction = fraction

    def _member_rows(self, n, member_seed):
        size = max(1, math.ceil(round(self.fraction * n, 9)))
        return np.sort(derive_rng(member_seed, "subsample").choice(n, size=size, replace=False))


class RandomSubspaceML(MultiLabelEnsemble):
    """Members fitted on random feature subspaces."""

    name = "RandomSubspaceML"

    def __init__(self, member_factory: MemberFactory, members: int = 10,
                 fraction: float = 0.5, n_jobs: int = 1):
        super().__init__(member_factory, members, n_jobs)
        self.fraction = fraction

    def _member_columns(self, d, member_seed):
        if d == 0:
            return np.arange(0)
        size = max(1, math.ceil(round(self.fraction * d, 9)))
        return np.sort(derive_rng(member_seed, "subspace").choice(d, size=size, replace=False))
