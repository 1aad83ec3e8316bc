"""
Random search baseline: evaluates random completions of the root of the same
component space the guided search uses.
"""

import logging
from typing import List

from ..shared.exceptions import NoCandidateFound
from ..shared.models import CandidateRecord
from ..shared.rng import derive_rng
from .component_space import ComponentSpace, count_pipelines
from .search_graph import random_completion, root_node
from .session import SearchSession

logger = logging.getLogger(__name__)


class RandomSearch:
    """Draws pipelines uniformly per decision until the budget or the space runs out."""

    def __init__(self, space: ComponentSpace, session: SearchSession, seed: int):
        self.space = space
        self.session = session
        self.seed = seed

    def run(self) -> List[CandidateRecord]:
        total = count_pipelines(self.space)
        logger.info("Random search over %d pipelines", total)
        rng = derive_rng(self.seed, "random-search")
        root = root_node(self.space)
        batch = max(1, self.session.n_jobs)
        while not self.session.exhausted() and len(self.session.records) < total:
            pipelines = [random_completion(root, self.space, rng) for _ in range(batch)]
            self.session.evaluate_many(pipelines)
        if self.session.best() is None:
            raise NoCandidateFound("Budget expired before any pipeline was evaluated successfully")
        return self.session.records
