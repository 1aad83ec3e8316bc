"""
Node Evaluation
Scores search nodes either by evaluating random completions or, on synthetic
spaces, by the exact minimum over every completion.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from ..shared.exceptions import ConfigurationError
from ..shared.interfaces import INodeEvaluator
from ..shared.models import CandidateRecord, ComponentInstance
from ..shared.rng import derive_rng
from .component_space import ComponentSpace
from .search_graph import (
    SearchNode, enumerate_completions, goal_pipeline, is_goal, random_completion,
)
from .session import SearchSession

logger = logging.getLogger(__name__)

NODE_SCORES = ("min_mean", "min_split")
UNSCORED = float("inf")


def score_from_records(records: Sequence[Optional[CandidateRecord]], node_score: str = "min_mean") -> float:
    """
    Lowest loss observed among successful records.

    Args:
        records: Completion records; None and failed entries contribute nothing
        node_score: ``min_mean`` over record means or ``min_split`` over single splits

    Returns:
        The node score, or +inf when nothing succeeded
    """
    successful = [r for r in records if r is not None and not r.failed]
    if not successful:
        return UNSCORED
    if node_score == "min_split":
        return float(min(min(r.scores) for r in successful))
    return float(min(r.mean_score for r in successful))


def evaluate_node(node: SearchNode, space: ComponentSpace, session: SearchSession,
                  rng: np.random.Generator, completions: int = 3,
                  node_score: str = "min_mean") -> float:
    """
    Score a node by evaluating random completions of it.

    A goal node is evaluated as is. Every evaluated pipeline is recorded in the
    session.
    """
    if is_goal(node, space):
        pipelines = [goal_pipeline(node, space)]
    else:
        pipelines = [random_completion(node, space, rng) for _ in range(completions)]
    return score_from_records(session.evaluate_many(pipelines), node_score)


class RandomCompletionNodeEvaluator(INodeEvaluator):
    """Node score from random completions drawn on a per-node stream."""

    def __init__(self, space: ComponentSpace, session: SearchSession, seed: int,
                 completions: int = 3, node_score: str = "min_mean"):
        if completions < 1:
            raise ConfigurationError(f"Completions must be positive, got {completions}")
        if node_score not in NODE_SCORES:
            raise ConfigurationError(f"Unknown node score '{node_score}', expected one of {NODE_SCORES}")
        self.space = space
        self.session = session
        self.seed = seed
        self.completions = completions
        self.node_score = node_score

    def evaluate(self, node: SearchNode) -> float:
        rng = derive_rng(self.seed, "completion", node.creation_index)
        score = evaluate_node(node, self.space, self.session, rng, self.completions, self.node_score)
        logger.debug("Node %d %s scored %s", node.creation_index, node.describe(), score)
        return score


class ExactNodeEvaluator(INodeEvaluator):
    """
    Node score = minimum leaf loss over all completions.

    Goal nodes are evaluated through the session when one is given, so they
    are recorded like any other candidate.
    """

    def __init__(self, space: ComponentSpace, leaf_loss: Callable[[ComponentInstance], float],
                 session: Optional[SearchSession] = None):
        self.space = space
        self.leaf_loss = leaf_loss
        self.session = session

    def evaluate(self, node: SearchNode) -> float:
        if is_goal(node, self.space):
            pipeline = goal_pipeline(node, self.space)
            if self.session is None:
                return float(self.leaf_loss(pipeline))
            return score_from_records([self.session.evaluate(pipeline)])
        return float(min(self.leaf_loss(p) for p in enumerate_completions(node, self.space)))
