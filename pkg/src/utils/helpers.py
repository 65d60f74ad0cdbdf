"""
Helper utility functions.
"""

from typing import Iterable, List, Union

from src.core.exceptions import InvalidConfigurationError
from src.core.logger import get_logger

logger = get_logger(__name__)


def safe_divide(
    numerator: Union[int, float],
    denominator: Union[int, float],
    default: float = 0.0
) -> float:
    """
    Safely divide two numbers.

    Args:
        numerator: Numerator
        denominator: Denominator
        default: Value to return if denominator is 0

    Returns:
        Division result or default
    """
    if denominator == 0:
        logger.debug("Division by zero, returning default")
        return default
    return numerator / denominator


def _split_items(raw: Union[str, Iterable]) -> List[str]:
    if isinstance(raw, str):
        items = raw.split(",")
    else:
        items = [str(item) for item in raw]
    return [item.strip() for item in items if item.strip()]


def parse_float_list(raw: Union[str, Iterable], field: str = "betas") -> List[float]:
    """
    Parse a comma-separated list of numbers.

    Args:
        raw: String such as ``"0,0.7,1.1"`` or an iterable of values
        field: Field name reported on error

    Returns:
        List of floats in input order

    Raises:
        InvalidConfigurationError: If the list is empty or a value is not numeric
    """
    values = []
    for item in _split_items(raw):
        try:
            values.append(float(item))
        except ValueError:
            raise InvalidConfigurationError(
                f"{field}: '{item}' is not a number", field=field
            )
    if not values:
        raise InvalidConfigurationError(f"{field} must not be empty", field=field)
    return values


def parse_name_list(raw: Union[str, Iterable], field: str = "topologies") -> List[str]:
    """
    Parse a comma-separated list of names, lower-cased, duplicates dropped.

    Raises:
        InvalidConfigurationError: If the list is empty
    """
    names: List[str] = []
    for item in _split_items(raw):
        name = item.lower()
        if name not in names:
            names.append(name)
    if not names:
        raise InvalidConfigurationError(f"{field} must not be empty", field=field)
    return names
