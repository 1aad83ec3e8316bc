"""
Tests for hard call limits.
"""

import math
import threading
import time

import pytest

from automl.shared.exceptions import TimeLimitExceeded
from automl.shared.timeouts import call_with_limit


def _in_thread(function, *args):
    """Run call_with_limit on a worker thread and return (result, error)."""
    outcome = {}

    def target():
        try:
            outcome["result"] = call_with_limit(function, *args)
        except Exception as exc:
            outcome["error"] = exc

    worker = threading.Thread(target=target)
    worker.start()
    worker.join(timeout=30)
    return outcome.get("result"), outcome.get("error")


class TestCallWithLimit:
    """Test call_with_limit."""

    def test_no_limit(self):
        """Test a call without a limit runs directly."""
        assert call_with_limit(math.sqrt, None, 16.0) == 4.0

    def test_fast_call_returns(self):
        """Test a call finishing in time returns its value."""
        assert call_with_limit(math.sqrt, 5.0, 9.0) == 3.0

    def test_slow_call_interrupted(self):
        """Test a call on the main thread is interrupted at the limit."""
        start = time.monotonic()
        with pytest.raises(TimeLimitExceeded):
            call_with_limit(time.sleep, 0.3, 5.0)
        assert time.monotonic() - start < 2.0

    def test_no_time_left(self):
        """Test a non-positive limit fails without calling."""
        with pytest.raises(TimeLimitExceeded):
            call_with_limit(math.sqrt, 0.0, 4.0)

    def test_worker_thread(self):
        """Test calls from worker threads are limited too."""
        result, error = _in_thread(math.sqrt, 5.0, 25.0)
        assert error is None
        assert result == 5.0

        start = time.monotonic()
        _, error = _in_thread(time.sleep, 0.5, 10.0)
        assert isinstance(error, TimeLimitExceeded)
        assert time.monotonic() - start < 8.0
