"""
Experiment Configuration
Validated settings of one run: dataset, outer split, optimizer, budget and
search knobs. Knob defaults can be overridden from the environment.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from ..evaluation.metrics import OBJECTIVES
from ..planning.budget import Budget, BudgetKind
from ..planning.node_evaluation import NODE_SCORES
from ..planning.optimizers import OPTIMIZERS, SearchSettings
from ..shared.exceptions import ConfigurationError

load_dotenv()

DEFAULT_COMPLETIONS = int(os.getenv("AUTOML_COMPLETIONS", "3"))
DEFAULT_REPETITIONS = int(os.getenv("AUTOML_REPETITIONS", "3"))
DEFAULT_SELECTION_K = int(os.getenv("AUTOML_SELECTION_K", "10"))
DEFAULT_PHASE2_REPETITIONS = int(os.getenv("AUTOML_PHASE2_REPETITIONS", "5"))
DEFAULT_N_JOBS = int(os.getenv("AUTOML_N_JOBS", "1"))


class ExperimentConfig(BaseModel):
    """Settings of one experiment run."""
    dataset: str
    optimizer: str = "mlplan"
    budget_kind: str = BudgetKind.EVALUATIONS.value
    budget_total: float = 50
    eval_limit: Optional[float] = None
    seed: int = 0
    split_fraction: float = 0.7
    completions: int = DEFAULT_COMPLETIONS
    repetitions: int = DEFAULT_REPETITIONS
    selection_k: int = DEFAULT_SELECTION_K
    phase2_repetitions: int = DEFAULT_PHASE2_REPETITIONS
    objective: str = "instance_f"
    node_score: str = "min_mean"
    n_jobs: int = DEFAULT_N_JOBS
    output_dir: str = "runs"
    space_file: Optional[str] = None

    @field_validator('optimizer')
    @classmethod
    def validate_optimizer(cls, v):
        if v not in OPTIMIZERS:
            raise ValueError(f"Optimizer must be one of {OPTIMIZERS}")
        return v

    @field_validator('budget_kind')
    @classmethod
    def validate_budget_kind(cls, v):
        kinds = [kind.value for kind in BudgetKind]
        if v not in kinds:
            raise ValueError(f"Budget kind must be one of {kinds}")
        return v

    @field_validator('budget_total', 'completions', 'repetitions', 'selection_k',
                     'phase2_repetitions', 'n_jobs')
    @classmethod
    def validate_positive(cls, v):
        if not v > 0:
            raise ValueError("Must be positive")
        return v

    @field_validator('eval_limit')
    @classmethod
    def validate_eval_limit(cls, v):
        if v is not None and not v > 0:
            raise ValueError("Per-candidate limit must be positive")
        return v

    @field_validator('split_fraction')
    @classmethod
    def validate_split_fraction(cls, v):
        if not 0.0 < v < 1.0:
            raise ValueError("Split fraction must lie in (0, 1)")
        return v

    @field_validator('objective')
    @classmethod
    def validate_objective(cls, v):
        if v not in OBJECTIVES:
            raise ValueError(f"Objective must be one of {OBJECTIVES}")
        return v

    @field_validator('node_score')
    @classmethod
    def validate_node_score(cls, v):
        if v not in NODE_SCORES:
            raise ValueError(f"Node score must be one of {NODE_SCORES}")
        return v

    @classmethod
    def build(cls, **values: Any) -> 'ExperimentConfig':
        """
        Create and fully validate a configuration.

        Raises:
            ConfigurationError: If any value is invalid
        """
        try:
            config = cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(f"Invalid experiment configuration: {exc}") from exc
        config.budget()
        return config

    def budget(self) -> Budget:
        if self.budget_kind == BudgetKind.SECONDS.value:
            return Budget.seconds(self.budget_total, self.eval_limit)
        return Budget.evaluations(self.budget_total, self.eval_limit)

    def settings(self) -> SearchSettings:
        return SearchSettings(
            completions=self.completions,
            repetitions=self.repetitions,
            selection_k=self.selection_k,
            phase2_repetitions=self.phase2_repetitions,
            objective=self.objective,
            node_score=self.node_score,
            n_jobs=self.n_jobs,
        )

    def budget_label(self) -> str:
        unit = "s" if self.budget_kind == BudgetKind.SECONDS.value else " evals"
        return f"{self.budget_total:g}{unit}"

    def run_name(self) -> str:
        unit = "s" if self.budget_kind == BudgetKind.SECONDS.value else "e"
        return f"{Path(self.dataset).stem}_{self.optimizer}_{self.budget_total:g}{unit}_seed{self.seed}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return self.model_dump()
