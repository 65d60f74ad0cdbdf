"""
Utilities module for decorators and parsing helpers.
"""

from .decorators import timing, log_errors
from .helpers import safe_divide, parse_float_list, parse_name_list

__all__ = [
    # Decorators
    "timing",
    "log_errors",
    # Helpers
    "safe_divide",
    "parse_float_list",
    "parse_name_list",
]
