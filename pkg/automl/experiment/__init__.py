"""
Experiment Module
Run configuration, the experiment runner and comparison summaries.
"""

from .config import ExperimentConfig
from .runner import (
    ExperimentRunner, run_experiment, save_run_report, load_run_report, load_run_reports,
    audit_event_log,
)
from .comparison import comparison_datasets, run_comparison, guided_wins
from .summary import (
    summarize, format_summary, format_cell, significance_mark, choice_matrix, split_pipeline,
)

__all__ = [
    'ExperimentConfig',
    'ExperimentRunner',
    'run_experiment',
    'save_run_report',
    'load_run_report',
    'load_run_reports',
    'audit_event_log',
    'summarize',
    'format_summary',
    'format_cell',
    'significance_mark',
    'choice_matrix',
    'split_pipeline',
    'comparison_datasets',
    'run_comparison',
    'guided_wins',
]
