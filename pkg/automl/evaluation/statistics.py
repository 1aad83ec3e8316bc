"""
Welch's unequal-variance t-test.
"""

from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import betainc

from ..shared.exceptions import SampleTooSmall

SIGNIFICANCE_LEVEL = 0.05


class WelchResult(NamedTuple):
    statistic: float
    pvalue: float


def welch_degrees_of_freedom(var_a: float, n_a: int, var_b: float, n_b: int) -> float:
    """Welch-Satterthwaite approximation of the degrees of freedom."""
    se_a = var_a / n_a
    se_b = var_b / n_b
    return (se_a + se_b) ** 2 / (se_a ** 2 / (n_a - 1) + se_b ** 2 / (n_b - 1))


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> WelchResult:
    """
    Two-sided Welch t-test of equal means.

    When both samples have zero variance the test degenerates: p is 1 if the
    means are equal and 0 otherwise.

    Args:
        a: First sample, at least 2 observations
        b: Second sample, at least 2 observations

    Returns:
        WelchResult(statistic, pvalue)

    Raises:
        SampleTooSmall: If either sample has fewer than 2 observations
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise SampleTooSmall(f"Welch test needs 2+ observations per sample, got {a.size} and {b.size}")

    mean_a, mean_b = float(a.mean()), float(b.mean())
    var_a, var_b = float(a.var(ddof=1)), float(b.var(ddof=1))

    if var_a == 0.0 and var_b == 0.0:
        if mean_a == mean_b:
            return WelchResult(0.0, 1.0)
        return WelchResult(float(np.copysign(np.inf, mean_a - mean_b)), 0.0)

    statistic = (mean_a - mean_b) / np.sqrt(var_a / a.size + var_b / b.size)
    df = welch_degrees_of_freedom(var_a, a.size, var_b, b.size)
    pvalue = float(betainc(df / 2.0, 0.5, df / (df + statistic ** 2)))
    return WelchResult(float(statistic), min(1.0, max(0.0, pvalue)))


def significantly_worse(candidate: Sequence[float], reference: Sequence[float],
                        alpha: float = SIGNIFICANCE_LEVEL) -> bool:
    """Whether a loss sample is significantly higher than a reference loss sample."""
    statistic, pvalue = welch_t_test(candidate, reference)
    return pvalue < alpha and statistic > 0
