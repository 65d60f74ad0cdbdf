"""
Decorators for timing and error logging.
"""

import functools
import time
from typing import Any, Callable

from src.core.exceptions import MsadError
from src.core.logger import get_logger

logger = get_logger(__name__)


def timing(func: Callable) -> Callable:
    """
    Decorator to measure function execution time.

    The elapsed time is logged at DEBUG level with the function name as an
    extra field, so sweeps stay quiet at the default level.

    Example:
        @timing
        def run(...):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        start = time.perf_counter()
        result = func(*args, **kwargs)
        elapsed = time.perf_counter() - start
        logger.debug(
            f"{func.__name__} took {elapsed:.3f} seconds",
            extra={"function": func.__name__, "elapsed_s": round(elapsed, 6)},
        )
        return result

    return wrapper


def log_errors(func: Callable) -> Callable:
    """
    Decorator to log errors before re-raising them.

    Domain errors are logged with their error code and details; anything
    else is logged with a traceback.

    Example:
        @log_errors
        def run_experiment(...):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        try:
            return func(*args, **kwargs)
        except MsadError as e:
            logger.error(
                f"Error in {func.__name__}: {e.message}",
                extra={"error_code": e.error_code, "details": e.details},
            )
            raise
        except Exception as e:
            logger.error(f"Error in {func.__name__}: {str(e)}", exc_info=True)
            raise

    return wrapper
