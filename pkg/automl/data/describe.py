"""
Descriptive statistics of a multi-label dataset.
"""

from typing import Dict, Any

import numpy as np

from ..shared.models import LabeledDataset


def describe_dataset(data: LabeledDataset) -> Dict[str, Any]:
    """
    Summarize a dataset.

    Returns:
        Dictionary with instances, attributes, labels, label cardinality
        (mean relevant labels per instance), label density (cardinality / m)
        and the number of distinct label sets
    """
    per_instance = data.labels.sum(axis=1)
    cardinality = float(per_instance.mean())
    return {
        "relation": data.relation_name,
        "instances": data.n_instances,
        "attributes": data.n_features,
        "labels": data.n_labels,
        "cardinality": cardinality,
        "density": cardinality / data.n_labels,
        "distinct_label_sets": int(np.unique(data.labels, axis=0).shape[0]),
    }
