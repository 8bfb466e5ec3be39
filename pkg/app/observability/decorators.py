"""
Decorators for timing expensive operations
"""
import functools
import time
from typing import Callable, Optional

from app.core.logging_config import get_logger

logger = get_logger("app.observability.decorators")


def log_duration(name: Optional[str] = None, level: str = "debug"):
    """Decorator logging the wall time of each call, and failures with their duration"""

    def decorator(func: Callable) -> Callable:
        trace_name = name or f"{func.__module__}.{func.__qualname__}"
        log = getattr(logger, level)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = time.perf_counter() - started
                logger.error(f"Error in {trace_name} after {elapsed:.3f}s: {e}")
                raise
            log(f"{trace_name} took {time.perf_counter() - started:.3f}s")
            return result

        return wrapper

    return decorator

