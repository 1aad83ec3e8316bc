"""
Forward-decomposition search graph over a component space.
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..shared.models import ComponentInstance
from .component_space import ComponentSpace, Method, Plan


@dataclass(frozen=True, eq=False)
class SearchNode:
    """Remaining tasks plus the methods applied so far."""
    remaining: Tuple[str, ...]
    methods: Tuple[Method, ...] = ()
    parent: Optional['SearchNode'] = None
    creation_index: int = 0

    @property
    def depth(self) -> int:
        return len(self.methods)

    @property
    def plan(self) -> Plan:
        return Plan(self.methods)

    def partial_pipeline(self) -> Optional[ComponentInstance]:
        """Decisions taken so far, nested outermost first."""
        if not self.methods:
            return None
        return ComponentInstance.from_decisions([(m.algorithm, m.layer) for m in self.methods])

    def describe(self) -> str:
        decided = ">".join(m.algorithm for m in self.methods) or "<root>"
        return f"{decided} {list(self.remaining)}"


def root_node(space: ComponentSpace) -> SearchNode:
    return SearchNode(remaining=(space.initial_task,))


def is_goal(node: SearchNode, space: ComponentSpace) -> bool:
    """A node is a goal when all of its remaining tasks are simple."""
    return space.is_goal(node.remaining)


def successors(node: SearchNode, space: ComponentSpace,
               counter: Optional[Iterator[int]] = None) -> List[SearchNode]:
    """
    One child per method of the node's first complex task.

    Args:
        node: Node to expand
        space: Component space
        counter: Source of creation indices; children of one call are
            numbered consecutively after the parent when omitted

    Returns:
        Children in method order; empty for goal nodes
    """
    index = space.first_complex(node.remaining)
    if index is None:
        return []
    if counter is None:
        counter = itertools.count(node.creation_index + 1)
    return [
        SearchNode(
            remaining=space.apply(node.remaining, method),
            methods=node.methods + (method,),
            parent=node,
            creation_index=next(counter),
        )
        for method in space.decompositions(node.remaining[index])
    ]


def goal_pipeline(node: SearchNode, space: ComponentSpace) -> ComponentInstance:
    return space.interpret(node.plan)


def random_completion(node: SearchNode, space: ComponentSpace,
                      rng: np.random.Generator) -> ComponentInstance:
    """Apply uniformly random methods to the first complex task until a goal is reached."""
    remaining, methods = node.remaining, node.methods
    index = space.first_complex(remaining)
    while index is not None:
        options = space.decompositions(remaining[index])
        method = options[int(rng.integers(len(options)))]
        remaining = space.apply(remaining, method)
        methods = methods + (method,)
        index = space.first_complex(remaining)
    return space.interpret(Plan(methods))


def enumerate_completions(node: SearchNode, space: ComponentSpace) -> List[ComponentInstance]:
    """Every goal pipeline below a node."""
    return space.complete_all(node.remaining, node.methods)
