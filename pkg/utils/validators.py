"""
Input validation helpers shared by the pipeline stages
"""
import math
from typing import Any, Union

import numpy as np

Number = Union[int, float]


def validate_probability(value: Any) -> bool:
    """Validate value is a finite number in [0, 1]"""
    try:
        if value is None or isinstance(value, bool):
            return False
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return False
        return 0.0 <= value <= 1.0
    except (TypeError, ValueError):
        return False


def validate_positive_int(value: Any) -> bool:
    """Validate value is an integer >= 1"""
    if isinstance(value, bool):
        return False
    if isinstance(value, (int, np.integer)):
        return value >= 1
    return False


def all_finite(*arrays: np.ndarray) -> bool:
    """True when every entry of every array is finite"""
    return all(bool(np.isfinite(a).all()) for a in arrays if a is not None and a.size)


def clamp_value(value: Number, min_val: Number, max_val: Number) -> Number:
    """Clamp value between min and max"""
    if value < min_val:
        return min_val
    if value > max_val:
        return max_val
    return value

