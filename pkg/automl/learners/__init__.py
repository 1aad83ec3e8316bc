"""
Learners Module
Native single-label learners, multi-label reductions and their meta wrappers.
"""

from .single_label import (
    SL_BASE, SL_META, SL_DEFAULTS, SLSpec, SLDataset, SLModel, validate_sl_spec,
    build_single_label, fit_single_label, predict_single_label, predict_class_scores,
)
from .sl_meta import bootstrap_indices
from .label_sets import (
    LPCodebook, PrunedSets, label_powerset_encode, label_powerset_decode,
    prune_label_sets, draw_label_subsets,
)
from .multi_label import MultiLabelLearner
from .ml_specs import (
    ML_BASE, ML_META, ML_BASE_WITHOUT_LEARNER, ML_DEFAULTS, MLSpec, validate_ml_spec,
    build_multi_label, fit_multi_label, predict_multi_label,
)

__all__ = [
    'SL_BASE',
    'SL_META',
    'SL_DEFAULTS',
    'SLSpec',
    'SLDataset',
    'SLModel',
    'validate_sl_spec',
    'build_single_label',
    'fit_single_label',
    'predict_single_label',
    'predict_class_scores',
    'bootstrap_indices',
    'LPCodebook',
    'PrunedSets',
    'label_powerset_encode',
    'label_powerset_decode',
    'prune_label_sets',
    'draw_label_subsets',
    'MultiLabelLearner',
    'ML_BASE',
    'ML_META',
    'ML_BASE_WITHOUT_LEARNER',
    'ML_DEFAULTS',
    'MLSpec',
    'validate_ml_spec',
    'build_multi_label',
    'fit_multi_label',
    'predict_multi_label',
]
