import math
from typing import List, Optional

import numpy as np


def parse_float(val: str) -> float:
    val = val.strip().lower()
    if val in ('-inf', '-infinity', 'euclidean'):
        return -math.inf
    return float(val)


def parse_float_list(val: Optional[str]) -> List[float]:
    if not val:
        return []
    return [parse_float(item) for item in val.split(',') if item.strip()]


def format_float(val: float) -> str:
    if val == -math.inf:
        return '-inf'
    return repr(float(val))


def inclusive_linspace(start: float, stop: float, num: int) -> List[float]:
    return [float(v) for v in np.linspace(start, stop, int(num))]
