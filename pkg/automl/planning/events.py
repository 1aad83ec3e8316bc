"""
Search event log: one JSON line per expansion, evaluation, failure, new best,
phase change and final choice.
"""

import json
import logging
import time
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence, Union

from ..shared.models import ComponentInstance, EventKind, SearchEvent

logger = logging.getLogger(__name__)


class EventLog:
    """Append-only log of search events with a running best score."""

    def __init__(self, clock: Callable[[], float] = time.monotonic):
        self.clock = clock
        self.events: List[SearchEvent] = []
        self.best_score = float("inf")
        self._origin = clock()

    def emit(self, kind: EventKind, pipeline: Union[ComponentInstance, str, None] = None,
             score: Optional[float] = None, **details: Any) -> SearchEvent:
        if isinstance(pipeline, ComponentInstance):
            pipeline = pipeline.serialize()
        event = SearchEvent(
            index=len(self.events),
            kind=kind,
            pipeline=pipeline,
            score=None if score is None else float(score),
            timestamp=self.clock() - self._origin,
            details=details,
        )
        self.events.append(event)
        return event

    def offer(self, pipeline: ComponentInstance, score: float) -> bool:
        """Emit ``new-best`` when ``score`` improves on the running best."""
        if score < self.best_score:
            self.best_score = score
            self.emit(EventKind.NEW_BEST, pipeline, score)
            logger.info("New best %.4f: %s", score, pipeline.serialize())
            return True
        return False

    def of_kind(self, kind: EventKind) -> List[SearchEvent]:
        return [event for event in self.events if event.kind is kind]

    def lines(self, include_timestamp: bool = True) -> List[str]:
        return [
            json.dumps(event.to_dict(include_timestamp), sort_keys=True)
            for event in self.events
        ]

    def write(self, path: Union[str, Path]) -> Path:
        return write_events(self.events, path)


def read_events(path: Union[str, Path]) -> List[SearchEvent]:
    """Read a JSON-lines event log."""
    with open(path, "r", encoding="utf-8") as f:
        return [SearchEvent.from_dict(json.loads(line)) for line in f if line.strip()]


def write_events(events: Sequence[SearchEvent], path: Union[str, Path],
                 include_timestamp: bool = True) -> Path:
    """Write events as JSON lines."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for event in events:
            f.write(json.dumps(event.to_dict(include_timestamp), sort_keys=True) + "\n")
    logger.info("Event log written to %s (%d events)", path, len(events))
    return path
