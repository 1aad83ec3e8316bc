"""
Guided Search Against the Baseline
Runs both optimizers over the synthetic fixtures and the shipped samples for
a range of seeds and counts the datasets on which the guided search does at
least as well as random search.
"""

import logging
from pathlib import Path
from typing import Any, List, Sequence, Union

import pandas as pd

from ..data import generate_fixture, save_arff
from ..planning.optimizers import OPTIMIZERS
from ..shared.exceptions import ConfigurationError
from ..shared.models import RunReport
from .config import ExperimentConfig
from .runner import run_experiment
from .summary import BASELINE, GUIDED

logger = logging.getLogger(__name__)

COMPARISON_FIXTURES = ("independent", "chained", "dependent")
SHIPPED_SAMPLES = ("dense_sample.arff", "sparse_sample.arff")
DEFAULT_FIXTURE_SIZE = 200
DEFAULT_SEEDS = 10
DEFAULT_EVALUATIONS = 200


def comparison_datasets(samples_dir: Union[str, Path], work_dir: Union[str, Path],
                        fixture_size: int = DEFAULT_FIXTURE_SIZE) -> List[Path]:
    """
    Write the synthetic fixtures and list them with the shipped samples.

    Args:
        samples_dir: Directory holding the shipped ARFF samples
        work_dir: Directory the fixtures are written to
        fixture_size: Instances per synthetic fixture

    Returns:
        Paths of the three fixtures followed by the two samples
    """
    samples_dir, work_dir = Path(samples_dir), Path(work_dir)
    paths = [save_arff(generate_fixture(kind, fixture_size, 0), work_dir / f"{kind}.arff")
             for kind in COMPARISON_FIXTURES]
    for name in SHIPPED_SAMPLES:
        path = samples_dir / name
        if not path.exists():
            raise ConfigurationError(f"Sample dataset not found: {path}")
        paths.append(path)
    return paths


def run_comparison(datasets: Sequence[Union[str, Path]], output_dir: Union[str, Path],
                   seeds: int = DEFAULT_SEEDS, evaluations: int = DEFAULT_EVALUATIONS,
                   **settings: Any) -> List[RunReport]:
    """
    Run every optimizer on every dataset for seeds ``0 .. seeds-1``.

    Args:
        datasets: ARFF files
        output_dir: Root directory for the run artifacts
        seeds: Number of seeds per (dataset, optimizer)
        evaluations: Evaluation budget of each run
        **settings: Further ExperimentConfig fields shared by all runs

    Returns:
        One report per run
    """
    reports = []
    for dataset in datasets:
        for seed in range(seeds):
            for optimizer in OPTIMIZERS:
                config = ExperimentConfig.build(
                    dataset=str(dataset),
                    optimizer=optimizer,
                    budget_total=evaluations,
                    seed=seed,
                    output_dir=str(output_dir),
                    **settings,
                )
                reports.append(run_experiment(config))
        logger.info("Finished %d seeds on %s", seeds, Path(dataset).stem)
    return reports


def guided_wins(table: pd.DataFrame) -> int:
    """Number of summary rows where the guided mean is at least the baseline mean."""
    compared = table.dropna(subset=[f"{GUIDED}_mean", f"{BASELINE}_mean"])
    return int((compared[f"{GUIDED}_mean"] >= compared[f"{BASELINE}_mean"]).sum())
