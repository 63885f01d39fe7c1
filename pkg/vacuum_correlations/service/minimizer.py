import math
from typing import Callable, Tuple

import numpy as np

INV_GOLDEN = (math.sqrt(5) - 1) / 2


def golden_section_minimize(f: Callable[[float], float], a: float, b: float,
                            tol: float) -> Tuple[float, float]:
    """Minimum of a unimodal ``f`` on [a, b], located to within ``tol``.

    Returns the centre of the final bracket and ``f`` there. Equal inner-point
    values shrink the bracket from the right, so a flat ``f`` keeps the
    left part of the interval.
    """
    lo, hi = min(a, b), max(a, b)
    if hi - lo > tol:
        inner = hi - INV_GOLDEN * (hi - lo)
        outer = lo + INV_GOLDEN * (hi - lo)
        f_inner, f_outer = f(inner), f(outer)
        # each step shrinks the bracket by INV_GOLDEN
        steps = math.ceil(math.log(tol / (hi - lo)) / math.log(INV_GOLDEN))
        for _ in range(steps):
            if f_inner <= f_outer:
                hi, outer, f_outer = outer, inner, f_inner
                inner = hi - INV_GOLDEN * (hi - lo)
                f_inner = f(inner)
            else:
                lo, inner, f_inner = inner, outer, f_outer
                outer = lo + INV_GOLDEN * (hi - lo)
                f_outer = f(outer)
    x = 0.5 * (lo + hi)
    return x, f(x)


def grid_argmin(values: np.ndarray, tol: float = 0.0) -> Tuple[int, ...]:
    """Index of the smallest value.

    Values within ``tol`` of the minimum count as ties; ties go to the first
    index in C order.
    """
    values = np.asarray(values, dtype=float)
    ties = values <= values.min() + tol
    return np.unravel_index(int(np.argmax(ties)), values.shape)
