"""
Component Space
The pipeline search space as an HTN problem: tasks, methods and the
interpretation of finished plans as pipelines.

Every method decomposes a complex task into the simple task ``choose``
(realizing one algorithm decision) followed by the complex task of the
chosen algorithm's child, if any.
"""

import hashlib
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..learners.ml_specs import ML_BASE, ML_META, ML_BASE_WITHOUT_LEARNER, MLSpec
from ..learners.single_label import SL_BASE, SL_META, SLSpec
from ..shared.exceptions import (
    SpaceError, SimpleTaskHasNoMethods, IncompletePlan, UnboundedSpace,
    SpaceDefinitionError, UnsupportedSpec,
)
from ..shared.models import Layer, ComponentInstance

logger = logging.getLogger(__name__)

CREATE_ML_CLASSIFIER = "createMLClassifier"
CREATE_ML_BASE_CLASSIFIER = "createMLBaseClassifier"
CREATE_SL_CLASSIFIER = "createWekaClassifier"
SETUP_BASE_CLASSIFIER = "setupBaseClassifier"
CHOOSE = "choose"

# Child tokens of the definition format and the task each one induces.
CHILD_TASKS = {
    "ml": CREATE_ML_CLASSIFIER,
    "ml-base": CREATE_ML_BASE_CLASSIFIER,
    "sl": CREATE_SL_CLASSIFIER,
    "sl-base": SETUP_BASE_CLASSIFIER,
}
_ALLOWED_CHILDREN = {
    Layer.ML_META: ("ml-base", "ml"),
    Layer.ML_BASE: ("sl", None),
    Layer.SL_META: ("sl-base", "sl"),
    Layer.SL_BASE: (None,),
}


class TaskKind(Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Task:
    name: str
    kind: TaskKind

    @property
    def is_simple(self) -> bool:
        return self.kind is TaskKind.SIMPLE


@dataclass(frozen=True)
class Method:
    """Decomposes ``task`` into ``subtasks`` while choosing ``algorithm``."""
    task: str
    subtasks: Tuple[str, ...]
    algorithm: str
    layer: Layer

    @property
    def name(self) -> str:
        return f"{self.task}->{self.algorithm}"


@dataclass(frozen=True)
class ComponentDecl:
    """One line of a space definition: ``layer:name[:child-layer]``."""
    layer: Layer
    name: str
    child: Optional[str] = None

    def to_line(self) -> str:
        return f"{self.layer.value}:{self.name}" + (f":{self.child}" if self.child else "")


@dataclass(frozen=True)
class Plan:
    """Methods applied from the initial task to an all-simple task list."""
    methods: Tuple[Method, ...]

    @property
    def choices(self) -> List[str]:
        return [method.algorithm for method in self.methods]


class ComponentSpace:
    """
    Immutable registry of tasks and methods.

    Method order per task: ML-base before ML-meta, SL-base before SL-meta,
    alphabetical within a layer. The order decides which pipelines random
    completions and best-first search meet first.
    """

    def __init__(self, declarations: Sequence[ComponentDecl]):
        self.declarations: Tuple[ComponentDecl, ...] = tuple(declarations)
        self.initial_task = CREATE_ML_CLASSIFIER
        self._layer_of: Dict[str, Layer] = {}
        for decl in self.declarations:
            if decl.name in self._layer_of:
                raise SpaceDefinitionError(f"Component '{decl.name}' is declared twice")
            if decl.child not in _ALLOWED_CHILDREN[decl.layer]:
                raise SpaceDefinitionError(
                    f"{decl.layer.value} component '{decl.name}' cannot take child '{decl.child}'"
                )
            self._layer_of[decl.name] = decl.layer

        def methods_for(task: str, layers: Sequence[Layer]) -> Tuple[Method, ...]:
            methods = []
            for layer in layers:
                for decl in sorted((d for d in self.declarations if d.layer is layer), key=lambda d: d.name):
                    subtasks = (CHOOSE,) + ((CHILD_TASKS[decl.child],) if decl.child else ())
                    methods.append(Method(task, subtasks, decl.name, layer))
            return tuple(methods)

        candidates = {
            CREATE_ML_CLASSIFIER: methods_for(CREATE_ML_CLASSIFIER, (Layer.ML_BASE, Layer.ML_META)),
            CREATE_ML_BASE_CLASSIFIER: methods_for(CREATE_ML_BASE_CLASSIFIER, (Layer.ML_BASE,)),
            CREATE_SL_CLASSIFIER: methods_for(CREATE_SL_CLASSIFIER, (Layer.SL_BASE, Layer.SL_META)),
            SETUP_BASE_CLASSIFIER: methods_for(SETUP_BASE_CLASSIFIER, (Layer.SL_BASE,)),
        }
        if not candidates[CREATE_ML_CLASSIFIER]:
            raise SpaceDefinitionError("The space declares no multi-label component")

        # Only tasks reachable from the initial task are registered.
        self._methods: Dict[str, Tuple[Method, ...]] = {}
        pending = [CREATE_ML_CLASSIFIER]
        while pending:
            task = pending.pop()
            if task in self._methods:
                continue
            if not candidates[task]:
                raise SpaceDefinitionError(f"Task '{task}' is required but has no methods")
            self._methods[task] = candidates[task]
            pending.extend(sub for m in candidates[task] for sub in m.subtasks if sub != CHOOSE)

        self.tasks: Dict[str, Task] = {name: Task(name, TaskKind.COMPLEX) for name in self._methods}
        self.tasks[CHOOSE] = Task(CHOOSE, TaskKind.SIMPLE)

    # -- queries -----------------------------------------------------------

    def task(self, name: str) -> Task:
        try:
            return self.tasks[name]
        except KeyError as exc:
            raise SpaceError(f"Unknown task '{name}'") from exc

    def is_simple(self, name: str) -> bool:
        return self.task(name).is_simple

    def decompositions(self, task: Union[str, Task]) -> List[Method]:
        """
        Registered methods of a complex task, in the space's order.

        Raises:
            SimpleTaskHasNoMethods: If the task is simple
        """
        name = task.name if isinstance(task, Task) else task
        if self.task(name).is_simple:
            raise SimpleTaskHasNoMethods(f"Task '{name}' is simple")
        return list(self._methods[name])

    def layer_of(self, name: str) -> Layer:
        try:
            return self._layer_of[name]
        except KeyError as exc:
            raise SpaceError(f"Component '{name}' is not part of the space") from exc

    def components(self, layer: Layer) -> List[str]:
        return sorted(d.name for d in self.declarations if d.layer is layer)

    @property
    def method_count(self) -> int:
        return sum(len(methods) for methods in self._methods.values())

    # -- plans -------------------------------------------------------------

    def apply(self, remaining: Sequence[str], method: Method) -> Tuple[str, ...]:
        """Replace the first complex task of ``remaining`` by the method's subtasks."""
        index = self.first_complex(remaining)
        if index is None or remaining[index] != method.task:
            raise IncompletePlan(f"Method {method.name} does not apply to {list(remaining)}")
        return tuple(remaining[:index]) + method.subtasks + tuple(remaining[index + 1:])

    def first_complex(self, remaining: Sequence[str]) -> Optional[int]:
        for index, name in enumerate(remaining):
            if not self.is_simple(name):
                return index
        return None

    def is_goal(self, remaining: Sequence[str]) -> bool:
        return self.first_complex(remaining) is None

    def complete_all(self, remaining: Sequence[str],
                     methods: Sequence[Method]) -> List[ComponentInstance]:
        """All goal pipelines reachable from a partial plan, in method order."""
        pipelines = []
        stack = [(tuple(remaining), tuple(methods))]
        while stack:
            tasks, applied = stack.pop()
            index = self.first_complex(tasks)
            if index is None:
                pipelines.append(self.interpret(Plan(applied)))
                continue
            for method in reversed(self.decompositions(tasks[index])):
                stack.append((self.apply(tasks, method), applied + (method,)))
        return pipelines

    def replay(self, plan: Plan) -> Tuple[str, ...]:
        """Task list after applying a plan to the initial task list."""
        remaining: Tuple[str, ...] = (self.initial_task,)
        for method in plan.methods:
            if method not in self._methods.get(method.task, ()):
                raise IncompletePlan(f"Method {method.name} is not part of the space")
            remaining = self.apply(remaining, method)
        return remaining

    def interpret(self, plan: Plan) -> ComponentInstance:
        """
        Realize a goal plan as a pipeline.

        Raises:
            IncompletePlan: If the plan does not replay to a goal node
        """
        remaining = self.replay(plan)
        if not plan.methods or not self.is_goal(remaining):
            raise IncompletePlan(f"Plan {plan.choices} leaves complex tasks {list(remaining)}")
        return ComponentInstance.from_decisions([(m.algorithm, m.layer) for m in plan.methods])

    def plan_from_choices(self, choices: Sequence[str]) -> Plan:
        """Build the plan that picks the named algorithms in order."""
        remaining: Tuple[str, ...] = (self.initial_task,)
        methods = []
        for choice in choices:
            index = self.first_complex(remaining)
            if index is None:
                raise IncompletePlan(f"Choice '{choice}' follows a finished plan")
            matching = [m for m in self._methods[remaining[index]] if m.algorithm == choice]
            if not matching:
                raise IncompletePlan(f"'{choice}' cannot refine task '{remaining[index]}'")
            methods.append(matching[0])
            remaining = self.apply(remaining, matching[0])
        return Plan(tuple(methods))

    def plan_for(self, instance: ComponentInstance) -> Plan:
        """The unique plan whose interpretation is ``instance``."""
        plan = self.plan_from_choices([node.name for node in instance.chain()])
        if self.interpret(plan) != instance:
            raise IncompletePlan(f"{instance} is not expressible in this space")
        return plan

    def parse_pipeline(self, text: str) -> ComponentInstance:
        """
        Parse the canonical ``Name(child)`` serialization.

        Raises:
            SpaceError: Unknown component or malformed text
            IncompletePlan: A pipeline the space cannot produce
        """
        names = []
        rest = text.strip()
        while rest:
            head, sep, tail = rest.partition("(")
            names.append(head.strip())
            if not sep:
                break
            if not tail.endswith(")"):
                raise SpaceError(f"Unbalanced pipeline text '{text}'")
            rest = tail[:-1]
        if not names or not all(names):
            raise SpaceError(f"Malformed pipeline text '{text}'")
        for name in names:
            self.layer_of(name)
        return self.interpret(self.plan_from_choices(names))

    # -- description -------------------------------------------------------

    def definition_text(self) -> str:
        """The space in the line-oriented definition format."""
        return "\n".join(decl.to_line() for decl in self.declarations) + "\n"

    def fingerprint(self) -> str:
        """Stable digest of tasks and method order."""
        lines = [
            f"{task}:{','.join(m.algorithm + '>' + '/'.join(m.subtasks) for m in methods)}"
            for task, methods in sorted(self._methods.items())
        ]
        return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()[:16]


def build_space(ml_meta: Sequence[str] = (), ml_base: Sequence[str] = (),
                sl_meta: Sequence[str] = (), sl_base: Sequence[str] = (),
                ml_base_without_learner: Sequence[str] = ML_BASE_WITHOUT_LEARNER) -> ComponentSpace:
    """Wire a space from per-layer algorithm lists using the standard nesting."""
    declarations = [ComponentDecl(Layer.ML_META, name, "ml-base") for name in ml_meta]
    declarations += [
        ComponentDecl(Layer.ML_BASE, name, None if name in ml_base_without_learner else "sl")
        for name in ml_base
    ]
    declarations += [ComponentDecl(Layer.SL_META, name, "sl-base") for name in sl_meta]
    declarations += [ComponentDecl(Layer.SL_BASE, name) for name in sl_base]
    return ComponentSpace(declarations)


def default_space() -> ComponentSpace:
    """The full native portfolio."""
    return build_space(ML_META, ML_BASE, SL_META, SL_BASE)


def load_space(text: str) -> ComponentSpace:
    """
    Build a space from ``layer:name[:child-layer]`` lines. Blank lines and
    lines starting with '#' are ignored.

    Raises:
        SpaceDefinitionError: Malformed line, unknown layer or child token
    """
    layers = {layer.value: layer for layer in Layer}
    declarations = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [part.strip() for part in line.split(":")]
        if len(parts) not in (2, 3) or not all(parts):
            raise SpaceDefinitionError(f"Line {number}: expected 'layer:name[:child-layer]', got '{raw}'")
        if parts[0] not in layers:
            raise SpaceDefinitionError(f"Line {number}: unknown layer '{parts[0]}'")
        child = parts[2] if len(parts) == 3 else None
        if child is not None and child not in CHILD_TASKS:
            raise SpaceDefinitionError(f"Line {number}: unknown child layer '{child}'")
        declarations.append(ComponentDecl(layers[parts[0]], parts[1], child))
    return ComponentSpace(declarations)


def load_space_file(path: Union[str, Path]) -> ComponentSpace:
    return load_space(Path(path).read_text(encoding="utf-8"))


def decompositions(task: Union[str, Task], space: ComponentSpace) -> List[Method]:
    """Registered methods of a complex task."""
    return space.decompositions(task)


def interpret(plan: Plan, space: ComponentSpace) -> ComponentInstance:
    """Realize a goal plan as a pipeline."""
    return space.interpret(plan)


def count_pipelines(space: ComponentSpace) -> int:
    """
    Exact number of distinct goal pipelines by dynamic programming over tasks.

    Raises:
        UnboundedSpace: If a task can reach itself
    """
    memo: Dict[str, int] = {}
    visiting = set()

    def count(task: str) -> int:
        if space.is_simple(task):
            return 1
        if task in memo:
            return memo[task]
        if task in visiting:
            raise UnboundedSpace(f"Task '{task}' is recursive")
        visiting.add(task)
        total = 0
        for method in space.decompositions(task):
            product = 1
            for sub in method.subtasks:
                product *= count(sub)
            total += product
        visiting.discard(task)
        memo[task] = total
        return total

    return count(space.initial_task)


def enumerate_pipelines(space: ComponentSpace) -> List[ComponentInstance]:
    """Every goal pipeline by exhaustive forward decomposition, in method order."""
    count_pipelines(space)
    return space.complete_all((space.initial_task,), ())


def to_spec(instance: ComponentInstance) -> MLSpec:
    """
    Convert a pipeline into a learner specification.

    Raises:
        UnsupportedSpec: If the nesting does not form a multi-label pipeline
    """
    def sl_spec(node: ComponentInstance) -> SLSpec:
        if node.layer is Layer.SL_BASE:
            return SLSpec(node.name)
        if node.layer is Layer.SL_META and node.children:
            return SLSpec(node.name, base=sl_spec(node.children[0][1]))
        raise UnsupportedSpec(f"'{node.name}' is not a single-label component")

    def ml_spec(node: ComponentInstance) -> MLSpec:
        if node.layer is Layer.ML_META and node.children:
            return MLSpec(node.name, child=ml_spec(node.children[0][1]))
        if node.layer is Layer.ML_BASE:
            return MLSpec(node.name, child=sl_spec(node.children[0][1]) if node.children else None)
        raise UnsupportedSpec(f"'{node.name}' is not a multi-label component")

    return ml_spec(instance)
