"""
Planning Module
HTN component space, search graph, candidate evaluation, best-first search,
final selection and the random-search baseline.
"""

from .component_space import (
    CREATE_ML_CLASSIFIER, TaskKind, Task, Method, Plan, ComponentDecl, ComponentSpace,
    build_space, default_space, load_space, load_space_file, decompositions, interpret,
    count_pipelines, enumerate_pipelines, to_spec,
)
from .search_graph import (
    SearchNode, root_node, is_goal, successors, goal_pipeline, random_completion,
    enumerate_completions,
)
from .budget import BudgetKind, Budget, BudgetTracker
from .events import EventLog, read_events, write_events
from .candidates import EvaluationOutcome, CandidateEvaluator, LeafLossEvaluator, evaluate_candidate
from .session import SearchSession
from .node_evaluation import (
    NODE_SCORES, RandomCompletionNodeEvaluator, ExactNodeEvaluator, evaluate_node, score_from_records,
)
from .best_first import BestFirstSearch, best_first_search
from .selection import SelectionResult, selection_pool, select_final
from .random_search import RandomSearch
from .optimizers import (
    OPTIMIZERS, SearchSettings, MLPlanOptimizer, RandomSearchOptimizer, build_optimizer, random_search,
)

__all__ = [
    'CREATE_ML_CLASSIFIER',
    'TaskKind',
    'Task',
    'Method',
    'Plan',
    'ComponentDecl',
    'ComponentSpace',
    'build_space',
    'default_space',
    'load_space',
    'load_space_file',
    'decompositions',
    'interpret',
    'count_pipelines',
    'enumerate_pipelines',
    'to_spec',
    'SearchNode',
    'root_node',
    'is_goal',
    'successors',
    'goal_pipeline',
    'random_completion',
    'enumerate_completions',
    'BudgetKind',
    'Budget',
    'BudgetTracker',
    'EventLog',
    'read_events',
    'write_events',
    'EvaluationOutcome',
    'CandidateEvaluator',
    'LeafLossEvaluator',
    'evaluate_candidate',
    'SearchSession',
    'NODE_SCORES',
    'RandomCompletionNodeEvaluator',
    'ExactNodeEvaluator',
    'evaluate_node',
    'score_from_records',
    'BestFirstSearch',
    'best_first_search',
    'SelectionResult',
    'selection_pool',
    'select_final',
    'RandomSearch',
    'OPTIMIZERS',
    'SearchSettings',
    'MLPlanOptimizer',
    'RandomSearchOptimizer',
    'build_optimizer',
    'random_search',
]
