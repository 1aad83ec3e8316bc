"""
Shared data models for the multi-label AutoML engine.
"""

from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import List, Dict, Any, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DatasetError, ShapeMismatch

# Missing marker for raw feature values.
MISSING = float("nan")


def _frozen_array(values: Any, dtype: Any) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


class AttributeKind(Enum):
    """Feature attribute kinds."""
    NUMERIC = "numeric"
    NOMINAL = "nominal"


@dataclass(frozen=True)
class AttributeSpec:
    """A single feature attribute of a dataset."""
    name: str
    kind: AttributeKind
    categories: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        if self.kind is AttributeKind.NOMINAL:
            if not self.categories:
                raise DatasetError(f"Nominal attribute '{self.name}' has no categories")
            if len(set(self.categories)) != len(self.categories):
                raise DatasetError(f"Nominal attribute '{self.name}' repeats a category")
        elif self.categories:
            raise DatasetError(f"Numeric attribute '{self.name}' cannot carry categories")

    @property
    def is_nominal(self) -> bool:
        return self.kind is AttributeKind.NOMINAL

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {"name": self.name, "kind": self.kind.value, "categories": list(self.categories)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AttributeSpec':
        """Create from dictionary."""
        return cls(
            name=data["name"],
            kind=AttributeKind(data["kind"]),
            categories=tuple(data.get("categories", ())),
        )


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """
    A parsed multi-label dataset.

    Features hold raw values: numeric values as floats, nominal values as the
    category index, and ``MISSING`` (NaN) for '?'. Labels are an n x m matrix
    over {0, 1}. Arrays are read-only so a dataset can be shared freely.
    """
    relation_name: str
    attributes: Tuple[AttributeSpec, ...]
    label_names: Tuple[str, ...]
    features: np.ndarray
    labels: np.ndarray
    labels_first: bool = True

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "label_names", tuple(self.label_names))
        features = _frozen_array(self.features, np.float64)
        labels = _frozen_array(self.labels, np.int8)
        if labels.ndim != 2 or labels.shape[1] < 1:
            raise DatasetError("A dataset needs at least one label column")
        if labels.shape[0] < 1:
            raise DatasetError("A dataset needs at least one instance")
        if features.size == 0:
            features = features.reshape(labels.shape[0], len(self.attributes))
        if features.ndim != 2 or features.shape[0] != labels.shape[0]:
            raise ShapeMismatch(
                f"Feature rows {features.shape[0]} != label rows {labels.shape[0]}"
            )
        if features.shape[1] != len(self.attributes):
            raise ShapeMismatch(
                f"Feature columns {features.shape[1]} != attributes {len(self.attributes)}"
            )
        if labels.shape[1] != len(self.label_names):
            raise ShapeMismatch("Label columns do not match label names")
        if not np.isin(labels, (0, 1)).all():
            raise DatasetError("Label entries must be 0 or 1")
        names = [a.name for a in self.attributes] + list(self.label_names)
        if len(set(names)) != len(names):
            raise DatasetError("Attribute names must be unique")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n_instances(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_features(self) -> int:
        return len(self.attributes)

    @property
    def n_labels(self) -> int:
        return int(self.labels.shape[1])

    def subset(self, indices: Sequence[int]) -> 'LabeledDataset':
        """Return the dataset restricted to the given rows, in the given order."""
        rows = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(
            relation_name=self.relation_name,
            attributes=self.attributes,
            label_names=self.label_names,
            features=self.features[rows],
            labels=self.labels[rows],
            labels_first=self.labels_first,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledDataset):
            return NotImplemented
        return (
            self.relation_name == other.relation_name
            and self.attributes == other.attributes
            and self.label_names == other.label_names
            and self.labels_first == other.labels_first
            and np.array_equal(self.labels, other.labels)
            and self.features.shape == other.features.shape
            and np.array_equal(self.features, other.features, equal_nan=True)
        )

    __hash__ = None


@dataclass(frozen=True)
class SplitPair:
    """Disjoint train/test row indices covering 0..n-1."""
    train_indices: Tuple[int, ...]
    test_indices: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class MultiLabelData:
    """Encoded features plus labels; row ids point back into the parsed dataset."""
    features: np.ndarray
    labels: np.ndarray
    row_ids: np.ndarray

    def __post_init__(self):
        features = _frozen_array(self.features, np.float64)
        labels = _frozen_array(self.labels, np.int8)
        row_ids = _frozen_array(self.row_ids, np.int64)
        if features.ndim != 2 or labels.ndim != 2:
            raise ShapeMismatch("Features and labels must be matrices")
        if not (features.shape[0] == labels.shape[0] == row_ids.shape[0]):
            raise ShapeMismatch("Features, labels and row ids disagree on the row count")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "row_ids", row_ids)

    @property
    def n_instances(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_labels(self) -> int:
        return int(self.labels.shape[1])

    def subset(self, indices: Sequence[int]) -> 'MultiLabelData':
        """Rows by position; row ids follow along."""
        rows = np.asarray(indices, dtype=np.int64)
        return MultiLabelData(self.features[rows], self.labels[rows], self.row_ids[rows])


class Layer(Enum):
    """Pipeline layers, outermost first."""
    ML_META = "ml-meta"
    ML_BASE = "ml-base"
    SL_META = "sl-meta"
    SL_BASE = "sl-base"


# Role under which a component of a layer holds its child.
CHILD_ROLES = {
    Layer.ML_META: "mlBase",
    Layer.ML_BASE: "slClassifier",
    Layer.SL_META: "slBase",
}


@dataclass(frozen=True)
class ComponentInstance:
    """A (possibly partial) pipeline: a chosen algorithm and its nested children."""
    name: str
    layer: Layer
    children: Tuple[Tuple[str, 'ComponentInstance'], ...] = ()

    def child(self, role: str) -> Optional['ComponentInstance']:
        for child_role, instance in self.children:
            if child_role == role:
                return instance
        return None

    def chain(self) -> List['ComponentInstance']:
        """Components from the outermost to the innermost."""
        nodes = [self]
        while nodes[-1].children:
            nodes.append(nodes[-1].children[0][1])
        return nodes

    def serialize(self) -> str:
        """Canonical text form, e.g. ``BaggingML(CC(AdaBoostM1(NaiveBayes)))``."""
        if not self.children:
            return self.name
        inner = ",".join(instance.serialize() for _, instance in self.children)
        return f"{self.name}({inner})"

    def __str__(self) -> str:
        return self.serialize()

    @classmethod
    def from_decisions(cls, decisions: Sequence[Tuple[str, Layer]]) -> 'ComponentInstance':
        """Nest a top-down list of (name, layer) choices into one instance."""
        if not decisions:
            raise ValueError("At least one decision is needed")
        instance = None
        for name, layer in reversed(list(decisions)):
            if instance is None:
                instance = cls(name, layer)
            else:
                instance = cls(name, layer, ((CHILD_ROLES[layer], instance),))
        return instance


@dataclass
class CandidateRecord:
    """A validated pipeline and what its evaluation cost."""
    pipeline: ComponentInstance
    scores: Tuple[float, ...]
    cost: float
    discovery_index: int
    discovery_time: float = 0.0
    failed: bool = False
    error: Optional[str] = None

    @property
    def mean_score(self) -> float:
        """Mean validation loss; failed candidates score the worst loss."""
        if self.failed or not self.scores:
            return 1.0
        return float(np.mean(self.scores))

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "pipeline": self.pipeline.serialize(),
            "scores": list(self.scores),
            "mean_score": self.mean_score,
            "cost": self.cost,
            "discovery_index": self.discovery_index,
            "failed": self.failed,
            "error": self.error,
        }


class EventKind(Enum):
    """Kinds of search log events."""
    DATA = "data"
    EXPAND = "expand"
    EVALUATE = "evaluate"
    FAIL = "fail"
    NEW_BEST = "new-best"
    PHASE2_START = "phase2-start"
    FINAL = "final"


@dataclass
class SearchEvent:
    """One line of the search event log."""
    index: int
    kind: EventKind
    pipeline: Optional[str] = None
    score: Optional[float] = None
    timestamp: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_timestamp: bool = True) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data = {
            "index": self.index,
            "kind": self.kind.value,
            "pipeline": self.pipeline,
            "score": self.score,
            "details": self.details,
        }
        if include_timestamp:
            data["timestamp"] = self.timestamp
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SearchEvent':
        """Create from dictionary."""
        return cls(
            index=data["index"],
            kind=EventKind(data["kind"]),
            pipeline=data.get("pipeline"),
            score=data.get("score"),
            timestamp=data.get("timestamp", 0.0),
            details=data.get("details") or {},
        )


@dataclass
class SearchResult:
    """Outcome of one optimizer run."""
    pipeline: ComponentInstance
    internal_score: float
    records: List[CandidateRecord]
    events: List[SearchEvent]
    optimizer: str
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def candidates_evaluated(self) -> int:
        return len(self.records)


@dataclass
class RunReport:
    """Complete result of one experiment run."""
    config: Dict[str, Any]
    dataset: Dict[str, Any]
    pipeline: str
    internal_score: float
    test_metrics: Dict[str, float]
    candidates_evaluated: int
    space_fingerprint: str
    event_log_path: Optional[str] = None
    top_candidates: List[Dict[str, Any]] = field(default_factory=list)
    timing: Dict[str, Any] = field(default_factory=dict)
    # Pipeline scored on the test portion when the chosen one could not be refit in time.
    refit_fallback: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunReport':
        """Create from dictionary."""
        return cls(**data)
