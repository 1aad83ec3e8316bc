"""
Single-label learner specifications, construction and the functional
fit/predict surface used by the multi-label reductions.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from ..shared.exceptions import LearnerError, ShapeMismatch, UnsupportedSpec
from .sl_base import SingleLabelLearner, ZeroR, DecisionStump, DecisionTree, NaiveBayes, Logistic, KNN
from .sl_meta import Bagging, AdaBoostM1, RandomSubspace

# Choice order inside each layer is alphabetical.
SL_BASE = ("DecisionStump", "DecisionTree", "KNN", "Logistic", "NaiveBayes", "ZeroR")
SL_META = ("AdaBoostM1", "Bagging", "RandomSubspace")

_BASE_CLASSES = {
    "ZeroR": ZeroR,
    "DecisionStump": DecisionStump,
    "DecisionTree": DecisionTree,
    "NaiveBayes": NaiveBayes,
    "Logistic": Logistic,
    "KNN": KNN,
}
_META_CLASSES = {
    "Bagging": Bagging,
    "AdaBoostM1": AdaBoostM1,
    "RandomSubspace": RandomSubspace,
}

# Fixed hyperparameters; there is no configuration search.
SL_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "ZeroR": {},
    "DecisionStump": {},
    "DecisionTree": {"max_depth": 20, "min_leaf": 2},
    "NaiveBayes": {"var_smoothing": 1e-9},
    "Logistic": {"epochs": 200, "learning_rate": 0.1, "l2": 1e-4},
    "KNN": {"k": 5},
    "Bagging": {"members": 10, "bootstrap": True},
    "AdaBoostM1": {"rounds": 10},
    "RandomSubspace": {"members": 10, "fraction": 0.5},
}


@dataclass(frozen=True)
class SLSpec:
    """A single-label algorithm choice, optionally wrapping a base learner."""
    name: str
    base: Optional['SLSpec'] = None
    params: Dict[str, Any] = field(default_factory=dict, hash=False)

    @property
    def is_meta(self) -> bool:
        return self.name in _META_CLASSES

    def __str__(self) -> str:
        return f"{self.name}({self.base})" if self.base else self.name


@dataclass(frozen=True, eq=False)
class SLDataset:
    """Encoded features with class ids in 0..class_count-1."""
    features: np.ndarray
    targets: np.ndarray
    class_count: int

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        targets = np.asarray(self.targets, dtype=np.int64)
        if features.ndim != 2 or features.shape[0] != targets.shape[0]:
            raise ShapeMismatch("Features and targets disagree on the row count")
        if targets.size < 1 or self.class_count < 1:
            raise LearnerError("A single-label dataset needs an instance and a class")
        if targets.min() < 0 or targets.max() >= self.class_count:
            raise LearnerError(f"Targets must lie in 0..{self.class_count - 1}")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)


@dataclass(frozen=True, eq=False)
class SLModel:
    """A fitted single-label learner."""
    spec: SLSpec
    learner: SingleLabelLearner
    class_count: int


def validate_sl_spec(spec: SLSpec) -> None:
    """
    Raises:
        UnsupportedSpec: Unknown name, a meta learner without exactly one
            base learner, a base learner with a child, or meta over meta
    """
    if spec.name in _BASE_CLASSES:
        if spec.base is not None:
            raise UnsupportedSpec(f"{spec.name} does not take a base learner")
    elif spec.name in _META_CLASSES:
        if spec.base is None:
            raise UnsupportedSpec(f"{spec.name} needs a base learner")
        if spec.base.name not in _BASE_CLASSES or spec.base.base is not None:
            raise UnsupportedSpec(f"{spec.name} can only wrap a base learner, got {spec.base}")
    else:
        raise UnsupportedSpec(f"Unknown single-label algorithm '{spec.name}'")
    unknown = set(spec.params) - set(SL_DEFAULTS[spec.name])
    if unknown:
        raise UnsupportedSpec(f"{spec.name} has no parameters {sorted(unknown)}")


def build_single_label(spec: SLSpec) -> SingleLabelLearner:
    """Instantiate an unfitted learner for a validated spec."""
    validate_sl_spec(spec)
    params = {**SL_DEFAULTS[spec.name], **spec.params}
    if spec.is_meta:
        base = spec.base
        return _META_CLASSES[spec.name](lambda: build_single_label(base), **params)
    return _BASE_CLASSES[spec.name](**params)


def fit_single_label(spec: SLSpec, data: SLDataset, seed: int) -> SLModel:
    """
    Fit a single-label learner.

    Degenerate data (a single class, constant features) falls back to
    majority-class behaviour instead of raising.

    Raises:
        UnsupportedSpec: Unknown name or malformed nesting
    """
    learner = build_single_label(spec)
    learner.fit(data.features, data.targets, data.class_count, seed)
    return SLModel(spec=spec, learner=learner, class_count=data.class_count)


def predict_class_scores(model: SLModel, features) -> np.ndarray:
    """n x c scores; rows are nonnegative and sum to 1."""
    return model.learner.predict_scores(features)


def predict_single_label(model: SLModel, features) -> np.ndarray:
    """Argmax of the class scores, ties toward the smaller class id."""
    return np.argmax(predict_class_scores(model, features), axis=1)
