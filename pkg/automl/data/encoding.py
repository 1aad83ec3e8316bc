"""
Fixed numeric encoding of the feature block.

Numeric attributes pass through with mean imputation; nominal attributes are
one-hot expanded, with a missing value encoded as an all-zero block. Columns
follow attribute order, then category order.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..shared.exceptions import ShapeMismatch
from ..shared.models import AttributeSpec, LabeledDataset, MultiLabelData

logger = logging.getLogger(__name__)


class FeatureEncoder:
    """
    Learns imputation means on one dataset and encodes any dataset with the
    same attributes. Fit it on the training portion only.
    """

    def __init__(self):
        self.attributes: Optional[Sequence[AttributeSpec]] = None
        self.means: Optional[np.ndarray] = None

    @property
    def is_fitted(self) -> bool:
        return self.attributes is not None

    @property
    def output_width(self) -> int:
        self._check_fitted()
        return sum(len(a.categories) if a.is_nominal else 1 for a in self.attributes)

    @property
    def feature_names(self) -> List[str]:
        """Encoded column names, e.g. ``colour=red`` for one-hot columns."""
        self._check_fitted()
        names = []
        for spec in self.attributes:
            if spec.is_nominal:
                names.extend(f"{spec.name}={category}" for category in spec.categories)
            else:
                names.append(spec.name)
        return names

    def fit(self, data: LabeledDataset) -> 'FeatureEncoder':
        self.attributes = data.attributes
        means = np.zeros(data.n_features, dtype=np.float64)
        for j, spec in enumerate(data.attributes):
            if spec.is_nominal:
                continue
            column = data.features[:, j]
            present = column[~np.isnan(column)]
            means[j] = float(present.mean()) if present.size else 0.0
        self.means = means
        return self

    def transform(self, data: LabeledDataset) -> np.ndarray:
        """
        Encode a dataset.

        Returns:
            An n x d' float matrix without missing entries

        Raises:
            ShapeMismatch: If the dataset's attributes differ from the fitted ones
        """
        self._check_fitted()
        if tuple(data.attributes) != tuple(self.attributes):
            raise ShapeMismatch("Dataset attributes differ from the fitted encoder")

        blocks = []
        for j, spec in enumerate(self.attributes):
            column = data.features[:, j]
            missing = np.isnan(column)
            if spec.is_nominal:
                block = np.zeros((data.n_instances, len(spec.categories)), dtype=np.float64)
                rows = np.flatnonzero(~missing)
                block[rows, column[rows].astype(np.int64)] = 1.0
                blocks.append(block)
            else:
                blocks.append(np.where(missing, self.means[j], column)[:, None])

        if not blocks:
            return np.zeros((data.n_instances, 0), dtype=np.float64)
        return np.hstack(blocks)

    def to_multilabel(self, data: LabeledDataset,
                      row_ids: Optional[Sequence[int]] = None) -> MultiLabelData:
        """Encode a dataset into learner input, carrying the original row ids."""
        if row_ids is None:
            row_ids = np.arange(data.n_instances)
        return MultiLabelData(self.transform(data), data.labels, np.asarray(row_ids))

    def _check_fitted(self):
        if not self.is_fitted:
            raise RuntimeError("FeatureEncoder must be fitted before use")


def encode_features(data: LabeledDataset) -> np.ndarray:
    """Encode a dataset with an encoder fitted on the dataset itself."""
    return FeatureEncoder().fit(data).transform(data)
