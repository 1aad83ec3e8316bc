"""
Label-set utilities for the powerset family: codebooks, pruning of rare
label sets and random label subsets.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..shared.exceptions import InvalidK, UnknownClassId
from ..shared.rng import derive_rng

logger = logging.getLogger(__name__)

MAX_COVERAGE_ATTEMPTS = 100


@dataclass(frozen=True, eq=False)
class LPCodebook:
    """Bijection between observed label vectors and dense class ids."""
    patterns: np.ndarray

    def __post_init__(self):
        patterns = np.array(self.patterns, dtype=np.int8, copy=True)
        patterns.setflags(write=False)
        object.__setattr__(self, "patterns", patterns)

    @property
    def size(self) -> int:
        return int(self.patterns.shape[0])

    @property
    def n_labels(self) -> int:
        return int(self.patterns.shape[1])

    def id_of(self, vector: Sequence[int]) -> int:
        matches = np.flatnonzero(np.all(self.patterns == np.asarray(vector), axis=1))
        if matches.size == 0:
            raise UnknownClassId(f"Label vector {tuple(vector)} is not in the codebook")
        return int(matches[0])


def label_powerset_encode(labels: np.ndarray) -> Tuple[np.ndarray, LPCodebook]:
    """
    Map each distinct row to a class id in first-appearance order.

    Returns:
        (class ids, codebook)
    """
    labels = np.asarray(labels, dtype=np.int8)
    ids = np.empty(labels.shape[0], dtype=np.int64)
    seen: Dict[bytes, int] = {}
    patterns = []
    for row, vector in enumerate(labels):
        key = vector.tobytes()
        if key not in seen:
            seen[key] = len(patterns)
            patterns.append(vector)
        ids[row] = seen[key]
    return ids, LPCodebook(np.array(patterns, dtype=np.int8).reshape(len(patterns), labels.shape[1]))


def label_powerset_decode(ids: Sequence[int], codebook: LPCodebook) -> np.ndarray:
    """
    Inverse of ``label_powerset_encode``.

    Raises:
        UnknownClassId: If an id lies outside the codebook
    """
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= codebook.size):
        raise UnknownClassId(f"Class ids must lie in 0..{codebook.size - 1}")
    return codebook.patterns[ids].copy()


@dataclass(frozen=True, eq=False)
class PrunedSets:
    """Training rows after pruning; a row may appear several times."""
    rows: np.ndarray
    labels: np.ndarray

    @property
    def size(self) -> int:
        return int(self.rows.shape[0])


def prune_label_sets(labels: np.ndarray, p: int, b: int) -> PrunedSets:
    """
    Keep label vectors seen at least ``p`` times and re-express the rest.

    An instance with a rare vector is replaced by up to ``b`` copies carrying
    the frequent, non-empty strict sub-vectors of its vector, ranked by
    occurrence count, then cardinality (larger first), then lexicographically.
    Instances without any such sub-vector are dropped.
    """
    if p < 1 or b < 0:
        raise ValueError("prune_label_sets needs p >= 1 and b >= 0")
    labels = np.asarray(labels, dtype=np.int8)
    keys = [tuple(int(v) for v in row) for row in labels]
    counts: Dict[Tuple[int, ...], int] = {}
    for key in keys:
        counts[key] = counts.get(key, 0) + 1
    frequent = [key for key, count in counts.items() if count >= p]

    rows: List[int] = []
    vectors: List[Tuple[int, ...]] = []
    for row, key in enumerate(keys):
        if counts[key] >= p:
            rows.append(row)
            vectors.append(key)
            continue
        candidates = [
            sub for sub in frequent
            if sub != key and any(sub) and all(s <= v for s, v in zip(sub, key))
        ]
        candidates.sort(key=lambda sub: (-counts[sub], -sum(sub), sub))
        for sub in candidates[:b]:
            rows.append(row)
            vectors.append(sub)

    m = labels.shape[1]
    return PrunedSets(
        rows=np.asarray(rows, dtype=np.int64),
        labels=np.asarray(vectors, dtype=np.int8).reshape(len(vectors), m),
    )


def draw_label_subsets(m: int, k: int, count: int, seed: int) -> List[Tuple[int, ...]]:
    """
    Draw ``count`` random k-subsets of 0..m-1 that together cover every label.

    Draws are repeated until the union covers all labels. After
    MAX_COVERAGE_ATTEMPTS failures, uncovered labels are patched into the
    last subsets, each replacing the largest label that another subset
    already covers.

    Raises:
        InvalidK: If k is outside 1..m or count * k < m
    """
    if not 1 <= k <= m:
        raise InvalidK(f"k must lie in 1..{m}, got {k}")
    if count < 1 or count * k < m:
        raise InvalidK(f"{count} subsets of size {k} cannot cover {m} labels")

    rng = derive_rng(seed, "labelsets")
    subsets: List[List[int]] = []
    for _ in range(MAX_COVERAGE_ATTEMPTS):
        subsets = [sorted(int(v) for v in rng.choice(m, size=k, replace=False)) for _ in range(count)]
        covered = set().union(*subsets)
        if len(covered) == m:
            return [tuple(subset) for subset in subsets]

    logger.debug("Patching label subsets after %d attempts", MAX_COVERAGE_ATTEMPTS)
    covered = set().union(*subsets)
    for label in sorted(set(range(m)) - covered):
        occurrences = np.bincount([v for subset in subsets for v in subset], minlength=m)
        for subset in reversed(subsets):
            redundant = [v for v in subset if occurrences[v] > 1]
            if redundant:
                subset.remove(max(redundant))
                subset.append(label)
                subset.sort()
                break
    return [tuple(subset) for subset in subsets]
