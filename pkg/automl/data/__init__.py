"""
Dataset Module
ARFF input/output, feature encoding, splits and synthetic fixtures.
"""

from .arff_reader import parse_arff, load_arff, write_arff, save_arff, label_count_from_relation
from .encoding import FeatureEncoder, encode_features
from .splits import random_split, train_size
from .describe import describe_dataset
from .fixtures import (
    independent_labels, chained_labels, dependent_pairs, generate_fixture, FIXTURE_KINDS,
)

__all__ = [
    'parse_arff',
    'load_arff',
    'write_arff',
    'save_arff',
    'label_count_from_relation',
    'FeatureEncoder',
    'encode_features',
    'random_split',
    'train_size',
    'describe_dataset',
    'independent_labels',
    'chained_labels',
    'dependent_pairs',
    'generate_fixture',
    'FIXTURE_KINDS',
]
