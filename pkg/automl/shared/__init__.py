"""
Shared Module
Contains the exception hierarchy, data models, interfaces and seed derivation.
"""

from .interfaces import ISingleLabelLearner, IMultiLabelLearner, INodeEvaluator, IOptimizer
from .models import (
    MISSING, AttributeKind, AttributeSpec, LabeledDataset, SplitPair, MultiLabelData,
    Layer, CHILD_ROLES, ComponentInstance, CandidateRecord, EventKind, SearchEvent,
    SearchResult, RunReport,
)
from .exceptions import AutoMLError, DatasetError, LearnerError, SpaceError, SearchError
from .rng import derive_rng, derive_seed
from .timeouts import call_with_limit

__all__ = [
    'ISingleLabelLearner',
    'IMultiLabelLearner',
    'INodeEvaluator',
    'IOptimizer',
    'MISSING',
    'AttributeKind',
    'AttributeSpec',
    'LabeledDataset',
    'SplitPair',
    'MultiLabelData',
    'Layer',
    'CHILD_ROLES',
    'ComponentInstance',
    'CandidateRecord',
    'EventKind',
    'SearchEvent',
    'SearchResult',
    'RunReport',
    'AutoMLError',
    'DatasetError',
    'LearnerError',
    'SpaceError',
    'SearchError',
    'derive_rng',
    'derive_seed',
    'call_with_limit',
]
