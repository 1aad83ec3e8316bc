"""
Run Summaries
Comparison tables over many runs: mean ± population standard deviation of
the test instance F-measure per (dataset, budget, optimizer), with marks for
significant differences between the guided search and the baseline.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from ..evaluation.statistics import SIGNIFICANCE_LEVEL, welch_t_test
from ..learners.ml_specs import ML_BASE, ML_META
from ..planning.budget import BudgetKind
from ..planning.optimizers import OPTIMIZERS
from ..shared.exceptions import SampleTooSmall
from ..shared.models import RunReport

logger = logging.getLogger(__name__)

GUIDED, BASELINE = OPTIMIZERS
IMPROVEMENT_MARK = "•"
DEGRADATION_MARK = "◦"
NO_LEARNER = "-"
TABLE_NOTE = (
    f"mean±std of test instance F (std is the population std); "
    f"{IMPROVEMENT_MARK}/{DEGRADATION_MARK}: {GUIDED} significantly better/worse than {BASELINE} "
    f"(Welch t-test, p < {SIGNIFICANCE_LEVEL})"
)


def _dataset_name(report: RunReport) -> str:
    return Path(report.config["dataset"]).stem


def _budget_label(report: RunReport) -> str:
    unit = "s" if report.config["budget_kind"] == BudgetKind.SECONDS.value else " evals"
    return f"{report.config['budget_total']:g}{unit}"


def format_cell(values: Sequence[float]) -> str:
    """``mean±std`` with two decimals; population std."""
    values = np.asarray(values, dtype=np.float64)
    return f"{values.mean():.2f}±{values.std(ddof=0):.2f}"


def significance_mark(guided: Sequence[float], baseline: Sequence[float],
                      alpha: float = SIGNIFICANCE_LEVEL) -> str:
    """Mark for the baseline cell: guided search better, worse, or no mark."""
    try:
        statistic, pvalue = welch_t_test(guided, baseline)
    except SampleTooSmall:
        return ""
    if pvalue >= alpha:
        return ""
    return IMPROVEMENT_MARK if statistic > 0 else DEGRADATION_MARK


def _grouped(reports: Sequence[RunReport]) -> Dict[Tuple[str, str, str], List[float]]:
    groups: Dict[Tuple[str, str, str], List[float]] = {}
    for report in reports:
        key = (_dataset_name(report), _budget_label(report), report.config["optimizer"])
        groups.setdefault(key, []).append(float(report.test_metrics["instance_f"]))
    # sorted values keep the table independent of report order
    return {key: sorted(values) for key, values in groups.items()}


def summarize(reports: Sequence[RunReport], alpha: float = SIGNIFICANCE_LEVEL) -> pd.DataFrame:
    """
    Comparison table, one row per (dataset, budget).

    Args:
        reports: Run reports in any order
        alpha: Significance threshold for the marks

    Returns:
        DataFrame with columns dataset, budget, runs, one cell per optimizer
        and the numeric means as ``<optimizer>_mean``
    """
    groups = _grouped(reports)
    rows = []
    for dataset, budget in sorted({(d, b) for d, b, _ in groups}):
        row = {"dataset": dataset, "budget": budget}
        for optimizer in OPTIMIZERS:
            values = groups.get((dataset, budget, optimizer))
            row[optimizer] = format_cell(values) if values else ""
            row[f"{optimizer}_mean"] = float(np.mean(values)) if values else np.nan
            row[f"{optimizer}_runs"] = len(values) if values else 0
        guided = groups.get((dataset, budget, GUIDED))
        baseline = groups.get((dataset, budget, BASELINE))
        if guided and baseline:
            row[BASELINE] += significance_mark(guided, baseline, alpha)
        rows.append(row)
    columns = ["dataset", "budget", *OPTIMIZERS,
               *(f"{o}_mean" for o in OPTIMIZERS), *(f"{o}_runs" for o in OPTIMIZERS)]
    return pd.DataFrame(rows, columns=columns)


def format_summary(table: pd.DataFrame) -> str:
    """Aligned text rendering with the notation note on top."""
    shown = table[["dataset", "budget", *OPTIMIZERS]]
    return TABLE_NOTE + "\n" + shown.to_string(index=False)


def split_pipeline(pipeline: str) -> Tuple[str, str]:
    """
    Multi-label and single-label parts of a serialized pipeline.

    ``BaggingML(CC(AdaBoostM1(NaiveBayes)))`` -> ``("BaggingML>CC", "AdaBoostM1>NaiveBayes")``;
    a pipeline without a single-label learner gets ``-``.
    """
    names = re.findall(r"[A-Za-z0-9_]+", pipeline)
    multi = [n for n in names if n in ML_META or n in ML_BASE]
    single = [n for n in names if n not in ML_META and n not in ML_BASE]
    return ">".join(multi), ">".join(single) or NO_LEARNER


def choice_matrix(reports: Sequence[RunReport]) -> pd.DataFrame:
    """How often each (multi-label, single-label) combination was the final choice."""
    pairs = [split_pipeline(report.pipeline) for report in reports]
    if not pairs:
        return pd.DataFrame()
    frame = pd.DataFrame(pairs, columns=["multi_label", "single_label"])
    matrix = pd.crosstab(frame["multi_label"], frame["single_label"])
    return matrix.sort_index().sort_index(axis=1)
