"""
ARFF reading and writing for multi-label datasets.

Datasets follow the MEKA convention: the relation name carries an option
``-C L``. For L > 0 the first L attributes are labels, for L < 0 the last |L|
attributes are. Decoding of dense and sparse rows is delegated to liac-arff.
"""

import logging
import re
from pathlib import Path
from typing import List, Any, Tuple, Union, TextIO

import arff
import numpy as np

from ..shared.exceptions import (
    DatasetError, MissingLabelCount, NonBinaryLabel, MalformedRow,
    UnknownCategory, UnsupportedAttributeType,
)
from ..shared.models import MISSING, AttributeKind, AttributeSpec, LabeledDataset

logger = logging.getLogger(__name__)

_LABEL_COUNT = re.compile(r"-C\s+(-?\d+)")
_BINARY = ("0", "1")


def label_count_from_relation(relation_name: str) -> int:
    """
    Read the signed label count from a relation name.

    Raises:
        MissingLabelCount: If no non-zero ``-C <int>`` option is present
    """
    match = _LABEL_COUNT.search(relation_name)
    if not match:
        raise MissingLabelCount(f"Relation '{relation_name}' has no '-C <int>' option")
    count = int(match.group(1))
    if count == 0:
        raise MissingLabelCount(f"Relation '{relation_name}' declares zero labels")
    return count


def _decode(text: Union[str, TextIO]) -> dict:
    loader = arff.loads if isinstance(text, str) else arff.load
    try:
        return loader(text, encode_nominal=True, return_type=arff.DENSE)
    except arff.BadNominalValue as exc:
        raise UnknownCategory(str(exc)) from exc
    except arff.BadDataFormat as exc:
        raise MalformedRow(str(exc)) from exc
    except arff.BadAttributeType as exc:
        raise UnsupportedAttributeType(str(exc)) from exc
    except arff.ArffException as exc:
        raise DatasetError(str(exc)) from exc


def _attribute_spec(name: str, type_: Any) -> AttributeSpec:
    if isinstance(type_, (list, tuple)):
        return AttributeSpec(name, AttributeKind.NOMINAL, tuple(str(v) for v in type_))
    if type_ in ("NUMERIC", "REAL", "INTEGER"):
        return AttributeSpec(name, AttributeKind.NUMERIC)
    raise UnsupportedAttributeType(f"Attribute '{name}' has unsupported type {type_}")


def _label_column(name: str, type_: Any, column: List[Any]) -> np.ndarray:
    if not isinstance(type_, (list, tuple)) or sorted(str(v) for v in type_) != list(_BINARY):
        raise NonBinaryLabel(f"Label '{name}' must be nominal over {{0,1}}, got {type_}")
    categories = [str(v) for v in type_]
    values = np.empty(len(column), dtype=np.int8)
    for row, index in enumerate(column):
        if index is None:
            raise NonBinaryLabel(f"Label '{name}' is missing in row {row}")
        values[row] = int(categories[index])
    return values


def parse_arff(text: Union[str, TextIO]) -> LabeledDataset:
    """
    Parse a multi-label ARFF document.

    Args:
        text: ARFF text or an open text stream

    Returns:
        The parsed dataset

    Raises:
        MissingLabelCount: The relation name has no '-C' option
        NonBinaryLabel: A label attribute is not nominal over {0,1}
        MalformedRow: A row's arity does not match the attributes
        UnknownCategory: A nominal value is not declared
        UnsupportedAttributeType: A string or date attribute is present
    """
    decoded = _decode(text)
    relation = decoded["relation"]
    declared = decoded["attributes"]
    label_count = label_count_from_relation(relation)

    if abs(label_count) > len(declared):
        raise DatasetError(
            f"Relation declares {abs(label_count)} labels but only {len(declared)} attributes exist"
        )
    if label_count > 0:
        label_positions = list(range(label_count))
    else:
        label_positions = list(range(len(declared) + label_count, len(declared)))
    label_set = set(label_positions)
    feature_positions = [i for i in range(len(declared)) if i not in label_set]

    attributes = tuple(_attribute_spec(*declared[i]) for i in feature_positions)
    rows = decoded["data"]
    if not rows:
        raise DatasetError("The @data section holds no instances")

    columns = list(zip(*rows))
    labels = np.column_stack([
        _label_column(declared[i][0], declared[i][1], columns[i]) for i in label_positions
    ])
    features = np.empty((len(rows), len(feature_positions)), dtype=np.float64)
    for out, position in enumerate(feature_positions):
        features[:, out] = [MISSING if v is None else float(v) for v in columns[position]]

    dataset = LabeledDataset(
        relation_name=relation,
        attributes=attributes,
        label_names=tuple(declared[i][0] for i in label_positions),
        features=features,
        labels=labels,
        labels_first=label_count > 0,
    )
    logger.debug("Parsed '%s': n=%d d=%d m=%d", relation, dataset.n_instances,
                 dataset.n_features, dataset.n_labels)
    return dataset


def load_arff(path: Union[str, Path]) -> LabeledDataset:
    """Read and parse an ARFF file from disk."""
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"Dataset file not found: {path}")
    with path.open("r", encoding="utf-8") as handle:
        dataset = parse_arff(handle)
    logger.info("Loaded dataset %s (%d instances, %d labels)", path.name,
                dataset.n_instances, dataset.n_labels)
    return dataset


def _feature_value(spec: AttributeSpec, value: float) -> Any:
    if np.isnan(value):
        return None
    if spec.is_nominal:
        return spec.categories[int(value)]
    return float(value)


def write_arff(data: LabeledDataset) -> str:
    """
    Serialize a dataset as dense ARFF.

    The relation name (with its ``-C`` option) and the label position are
    preserved, so parsing the output yields an equal dataset.
    """
    label_attrs: List[Tuple[str, Any]] = [(name, list(_BINARY)) for name in data.label_names]
    feature_attrs: List[Tuple[str, Any]] = [
        (spec.name, list(spec.categories) if spec.is_nominal else "NUMERIC")
        for spec in data.attributes
    ]
    rows = []
    for features, labels in zip(data.features, data.labels):
        label_values = [str(int(v)) for v in labels]
        feature_values = [_feature_value(spec, v) for spec, v in zip(data.attributes, features)]
        rows.append(label_values + feature_values if data.labels_first
                    else feature_values + label_values)

    attributes = label_attrs + feature_attrs if data.labels_first else feature_attrs + label_attrs
    return arff.dumps({
        "relation": data.relation_name,
        "attributes": attributes,
        "data": rows,
    })


def save_arff(data: LabeledDataset, path: Union[str, Path]) -> Path:
    """Write a dataset to disk as dense ARFF and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(write_arff(data) + "\n", encoding="utf-8")
    logger.info("Wrote dataset to %s", path)
    return path
