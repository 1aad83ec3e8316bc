"""
Seeded random train/test splits.
"""

import math

from ..shared.exceptions import DegenerateSplit
from ..shared.models import SplitPair
from ..shared.rng import derive_rng


def train_size(n: int, fraction: float) -> int:
    """Size of the train portion: ceil(fraction * n), robust to float noise."""
    return math.ceil(round(fraction * n, 9))


def random_split(n: int, fraction: float, seed: int) -> SplitPair:
    """
    Shuffle 0..n-1 and cut it into train and test portions.

    Args:
        n: Number of instances
        fraction: Train fraction in (0, 1)
        seed: Split seed

    Returns:
        SplitPair whose first ceil(fraction * n) shuffled indices are train

    Raises:
        DegenerateSplit: If either portion would be empty
    """
    if not 0.0 < fraction < 1.0:
        raise DegenerateSplit(f"Split fraction must lie in (0, 1), got {fraction}")
    if n < 2:
        raise DegenerateSplit(f"Cannot split {n} instance(s)")
    cut = train_size(n, fraction)
    if cut == 0 or cut == n:
        raise DegenerateSplit(f"Fraction {fraction} of {n} leaves an empty portion")

    order = derive_rng(seed, "split").permutation(n)
    return SplitPair(
        train_indices=tuple(int(i) for i in order[:cut]),
        test_indices=tuple(int(i) for i in order[cut:]),
    )
