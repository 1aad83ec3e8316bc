"""
Best-First Search
Expands the most promising node of the decomposition graph first; nodes are
ordered by their score, ties by creation index.
"""

import heapq
import itertools
import logging
import time
from typing import Callable, List, Optional

from ..shared.exceptions import NoCandidateFound
from ..shared.interfaces import INodeEvaluator
from ..shared.models import CandidateRecord, EventKind, MultiLabelData
from .budget import Budget, BudgetTracker
from .candidates import CandidateEvaluator
from .component_space import ComponentSpace, count_pipelines
from .events import EventLog
from .node_evaluation import UNSCORED, RandomCompletionNodeEvaluator
from .search_graph import is_goal, root_node, successors
from .session import SearchSession

logger = logging.getLogger(__name__)


class BestFirstSearch:
    """
    Anytime best-first search over a component space.

    Children scored +inf are pruned; goal children are recorded by their
    evaluation and never re-opened. The search ends when the open list is
    empty or the session's budget is spent.
    """

    def __init__(self, space: ComponentSpace, session: SearchSession, node_evaluator: INodeEvaluator):
        self.space = space
        self.session = session
        self.node_evaluator = node_evaluator
        self.expansions = 0

    def run(self) -> List[CandidateRecord]:
        """
        Search until the budget or the graph is exhausted.

        Returns:
            All records in discovery order

        Raises:
            UnboundedSpace: If the space's grammar recurses
            NoCandidateFound: If no evaluation succeeded
        """
        total = count_pipelines(self.space)
        logger.info("Best-first search over %d pipelines", total)
        log = self.session.log
        counter = itertools.count(1)
        root = root_node(self.space)
        open_list = [(0.0, root.creation_index, root)]

        while open_list and not self.session.exhausted():
            score, _, node = heapq.heappop(open_list)
            children = successors(node, self.space, counter)
            self.expansions += 1
            log.emit(EventKind.EXPAND, node.partial_pipeline(), score,
                     node=node.describe(), children=len(children))
            logger.debug("Expanding %s (score %.4f, %d children)", node.describe(), score, len(children))

            for child in children:
                if self.session.exhausted():
                    break
                child_score = self.node_evaluator.evaluate(child)
                if child_score == UNSCORED:
                    log.emit(EventKind.FAIL, child.partial_pipeline(), None,
                             pruned=True, node=child.describe())
                    continue
                if not is_goal(child, self.space):
                    heapq.heappush(open_list, (child_score, child.creation_index, child))

        if self.session.best() is None:
            raise NoCandidateFound("Budget expired before any pipeline was evaluated successfully")
        logger.info("Best-first search finished: %d expansions, %d candidates",
                    self.expansions, len(self.session.records))
        return self.session.records


def best_first_search(space: ComponentSpace, search_data: MultiLabelData, budget: Budget, seed: int,
                      completions: int = 3, repetitions: int = 3, objective: str = "instance_f",
                      node_score: str = "min_mean", n_jobs: int = 1,
                      log: Optional[EventLog] = None,
                      clock: Callable[[], float] = time.monotonic) -> List[CandidateRecord]:
    """
    Run the search phase alone and return every candidate it recorded.

    Args:
        space: Component space
        search_data: Encoded search portion
        budget: Search budget; no time is reserved for final selection
        seed: Run seed
        completions: Random completions per node
        repetitions: Validation splits per candidate
        objective: Search loss
        node_score: ``min_mean`` or ``min_split``
        n_jobs: Concurrent candidate evaluations
        log: Event log to append to
        clock: Time source

    Returns:
        CandidateRecords in discovery order
    """
    evaluator = CandidateEvaluator(search_data, seed, repetitions, objective, clock)
    tracker = BudgetTracker(budget, selection_k=0, clock=clock)
    session = SearchSession(evaluator, tracker, log, n_jobs)
    node_evaluator = RandomCompletionNodeEvaluator(space, session, seed, completions, node_score)
    return BestFirstSearch(space, session, node_evaluator).run()
