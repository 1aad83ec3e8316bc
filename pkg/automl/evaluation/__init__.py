"""
Evaluation Module
Multi-label metrics and significance testing.
"""

from .metrics import (
    OBJECTIVES, MetricReport, subset_zero_one, hamming, instance_f_measure, rank_loss,
    subset_zero_one_report, hamming_report, instance_f_report, rank_loss_report,
    loss_for, evaluate_all,
)
from .statistics import (
    SIGNIFICANCE_LEVEL, WelchResult, welch_t_test, welch_degrees_of_freedom, significantly_worse,
)

__all__ = [
    'OBJECTIVES',
    'MetricReport',
    'subset_zero_one',
    'hamming',
    'instance_f_measure',
    'rank_loss',
    'subset_zero_one_report',
    'hamming_report',
    'instance_f_report',
    'rank_loss_report',
    'loss_for',
    'evaluate_all',
    'SIGNIFICANCE_LEVEL',
    'WelchResult',
    'welch_t_test',
    'welch_degrees_of_freedom',
    'significantly_worse',
]
