"""
Multi-label learner specifications and the functional fit/predict surface.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..shared.exceptions import UnsupportedSpec
from ..shared.models import MultiLabelData
from .ml_meta import BaggingML, EnsembleML, RandomSubspaceML
from .multi_label import (
    MultiLabelLearner, BinaryRelevance, ClassifierChain, LabelCombination,
    PrunedSetsLearner, RAkEL, MajorityLabelSet,
)
from .single_label import SLSpec, validate_sl_spec

# Choice order inside each layer is alphabetical.
ML_BASE = ("BR", "CC", "LC", "MajorityLabelSet", "PS", "RAkEL")
ML_META = ("BaggingML", "EnsembleML", "RandomSubspaceML")
# ML-base strategies that take no single-label learner.
ML_BASE_WITHOUT_LEARNER = ("MajorityLabelSet",)

ML_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "BR": {},
    "CC": {},
    "LC": {},
    "MajorityLabelSet": {},
    "PS": {"p": 2, "b": 2},
    "RAkEL": {"k": 3, "count": None},
    "BaggingML": {"members": 10},
    "EnsembleML": {"members": 10, "fraction": 0.67},
    "RandomSubspaceML": {"members": 10, "fraction": 0.5},
}

_BASE_CLASSES = {
    "BR": BinaryRelevance,
    "CC": ClassifierChain,
    "LC": LabelCombination,
    "PS": PrunedSetsLearner,
    "RAkEL": RAkEL,
}
_META_CLASSES = {
    "BaggingML": BaggingML,
    "EnsembleML": EnsembleML,
    "RandomSubspaceML": RandomSubspaceML,
}


@dataclass(frozen=True)
class MLSpec:
    """A multi-label algorithm choice with its child specification."""
    name: str
    child: Optional[Union['MLSpec', SLSpec]] = None
    params: Dict[str, Any] = field(default_factory=dict, hash=False)

    @property
    def is_meta(self) -> bool:
        return self.name in ML_META

    def __str__(self) -> str:
        return f"{self.name}({self.child})" if self.child else self.name


def validate_ml_spec(spec: MLSpec) -> None:
    """
    Raises:
        UnsupportedSpec: Unknown name or a child that violates the layering
    """
    if spec.name in ML_META:
        if not isinstance(spec.child, MLSpec) or spec.child.is_meta:
            raise UnsupportedSpec(f"{spec.name} must wrap exactly one ML-base spec, got {spec.child}")
        validate_ml_spec(spec.child)
    elif spec.name in ML_BASE_WITHOUT_LEARNER:
        if spec.child is not None:
            raise UnsupportedSpec(f"{spec.name} takes no base learner")
    elif spec.name in ML_BASE:
        if not isinstance(spec.child, SLSpec):
            raise UnsupportedSpec(f"{spec.name} needs a single-label learner, got {spec.child}")
        validate_sl_spec(spec.child)
    else:
        raise UnsupportedSpec(f"Unknown multi-label algorithm '{spec.name}'")
    unknown = set(spec.params) - set(ML_DEFAULTS[spec.name])
    if unknown:
        raise UnsupportedSpec(f"{spec.name} has no parameters {sorted(unknown)}")


def build_multi_label(spec: MLSpec, n_jobs: int = 1) -> MultiLabelLearner:
    """Instantiate an unfitted learner for a spec."""
    validate_ml_spec(spec)
    params = {**ML_DEFAULTS[spec.name], **spec.params}
    if spec.is_meta:
        child = spec.child
        return _META_CLASSES[spec.name](lambda: build_multi_label(child), n_jobs=n_jobs, **params)
    if spec.name == "MajorityLabelSet":
        return MajorityLabelSet()
    return _BASE_CLASSES[spec.name](spec.child, **params)


def fit_multi_label(spec: MLSpec, data: MultiLabelData, seed: int,
                    n_jobs: int = 1) -> MultiLabelLearner:
    """
    Fit a multi-label learner; deterministic in (spec, data, seed).

    Args:
        spec: Validated or unvalidated specification
        data: Encoded training data
        seed: Fit seed
        n_jobs: Threads for fitting ensemble members

    Raises:
        UnsupportedSpec: Unknown name or malformed nesting
    """
    return build_multi_label(spec, n_jobs=n_jobs).fit(data, seed)


def predict_multi_label(model: MultiLabelLearner, features) -> Tuple[np.ndarray, np.ndarray]:
    """Binary prediction matrix and score matrix for a batch."""
    return model.predict(features)
