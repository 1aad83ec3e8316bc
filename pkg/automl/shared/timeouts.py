"""
Hard time limits for fits.

On the main thread a SIGALRM interrupts the call at the limit. Worker threads
cannot receive signals, so there the call runs in a child process that is
terminated at the limit; its arguments and result must be picklable.
"""

import logging
import threading
from typing import Any, Callable, Optional

import timeout_decorator

from .exceptions import TimeLimitExceeded

logger = logging.getLogger(__name__)


def call_with_limit(function: Callable[..., Any], limit: Optional[float], *args, **kwargs) -> Any:
    """
    Call a function, interrupting it after ``limit`` seconds.

    Args:
        function: Module-level callable
        limit: Seconds, or None to call without a limit
        *args: Positional arguments of the call
        **kwargs: Keyword arguments of the call

    Returns:
        Whatever the function returns

    Raises:
        TimeLimitExceeded: If the limit is not positive or the call ran past it
    """
    if limit is None:
        return function(*args, **kwargs)
    if limit <= 0:
        raise TimeLimitExceeded(f"No time left to call {function.__name__}")
    use_signals = threading.current_thread() is threading.main_thread()
    limited = timeout_decorator.timeout(
        limit,
        use_signals=use_signals,
        timeout_exception=TimeLimitExceeded,
        exception_message=f"{function.__name__} exceeded {limit:.2f}s",
    )(function)
    return limited(*args, **kwargs)
