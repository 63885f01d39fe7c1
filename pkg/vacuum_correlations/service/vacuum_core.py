"""
Mode parameters -> squeezing and deformation quantities.

Every state built by this package depends on a single number
T = tanh(r) * f, with tanh(r) = q = exp(-pi k / H) the Gibbons-Hawking
factor and f the alpha-vacuum deformation

    f = (1 + e^alpha / q) / (1 + e^alpha q)

so that T = (q + a) / (1 + a q) with a = e^alpha.
"""

import logging
import math
import warnings

import numpy as np
from pydantic import BaseModel

from vacuum_correlations.models.common import EffectiveParams, ModeSpec
from vacuum_correlations.models.exception import InvalidMode, InvalidParameter, TruncationWarning

logger = logging.getLogger(__name__)

MIN_N_CAP = 8


class Truncation(BaseModel):
    n_max    : int
    tail_mass: float
    clamped  : bool = False


def _check_alpha(alpha: float) -> float:
    if alpha is None or math.isnan(alpha):
        raise InvalidMode(f"alpha must be a real number, got {alpha}")
    if alpha >= 0:
        raise InvalidMode(f"alpha must be strictly negative (or -inf for the Euclidean vacuum), got {alpha}")
    return 0.0 if alpha == -math.inf else math.exp(alpha)


def _thermal_q(mode: ModeSpec) -> float:
    if mode.q is not None:
        q = mode.q
        if math.isnan(q) or not 0.0 <= q < 1.0:
            raise InvalidMode(f"q must lie in [0, 1), got {q}")
        return q

    k, H = mode.wavenumber_k, mode.hubble_H
    if k is None or H is None:
        raise InvalidMode("Either q or both wavenumber_k and hubble_H must be given.")
    if not k > 0:
        raise InvalidMode(f"wavenumber_k must be positive, got {k}")
    if not H > 0:
        raise InvalidMode(f"hubble_H must be positive, got {H}")
    q = math.exp(-math.pi * k / H)
    if not 0.0 < q < 1.0:
        raise InvalidMode(f"k / H = {k / H} gives q = {q} outside (0, 1)")
    return q


def mobius(q: float, a: float) -> float:
    # cancellation-free form of q * f
    return (q + a) / (1.0 + a * q)


def effective_parameters(mode: ModeSpec) -> EffectiveParams:
    a = _check_alpha(mode.alpha)
    q = _thermal_q(mode)

    if a == 0.0:
        f = 1.0
    elif q == 0.0:
        # f diverges while T = q * f -> a stays finite
        f = math.inf
    else:
        f = (1.0 + a / q) / (1.0 + a * q)

    T = mobius(q, a)
    if T >= 1.0:
        raise InvalidMode(f"alpha = {mode.alpha} is too close to 0: T rounds to 1")

    return EffectiveParams(q=q, r=math.atanh(q), f=f, T=T, a=a)


def invert_effective(T: float, alpha: float) -> float:
    """q such that (q, alpha) maps to T."""
    a = _check_alpha(alpha)
    check_T(T)
    q = (T - a) / (1.0 - a * T)
    if not 0.0 <= q < 1.0:
        raise InvalidParameter(f"T = {T} is not reachable with alpha = {alpha} (needs T >= e^alpha = {a})")
    return q


def check_T(T: float) -> float:
    if T is None or math.isnan(T) or not 0.0 <= T < 1.0:
        raise InvalidParameter(f"T must lie in [0, 1), got {T}")
    return T


def tail_mass(T: float, n_max) -> np.ndarray:
    """Probability mass of the joint state beyond pair level n_max.

    Sum over m > n_max of (1/2) T^2m (1 - T^2) [1 + (m + 1)(1 - T^2)],
    summed in closed form: (1/2) s^N [1 + s + (N + 1)(1 - s)], s = T^2, N = n_max + 1.
    """
    s = T * T
    N = np.asarray(n_max) + 1
    with np.errstate(under='ignore'):
        tail = 0.5 * np.power(s, N) * (1.0 + s + (N + 1) * (1.0 - s))
    if np.ndim(tail) == 0:
        return float(tail)
    return tail


def truncation_level(T: float, tail_tol: float, n_cap: int) -> Truncation:
    check_T(T)
    if not tail_tol > 0:
        raise InvalidParameter(f"tail_tol must be positive, got {tail_tol}")
    if n_cap < MIN_N_CAP:
        raise InvalidParameter(f"n_cap must be at least {MIN_N_CAP}, got {n_cap}")

    tails = tail_mass(T, np.arange(n_cap + 1))
    below = np.flatnonzero(tails < tail_tol)
    if below.size:
        n_max = int(below[0])
        return Truncation(n_max=n_max, tail_mass=float(tails[n_max]))

    warnings.warn(
        f"T = {T}: tail mass {tails[-1]:.3e} at n_cap = {n_cap} exceeds tail_tol = {tail_tol:.1e}",
        TruncationWarning,
        stacklevel=2,
    )
    logger.info("Truncation clamped at n_cap = %d for T = %.10g", n_cap, T)
    return Truncation(n_max=n_cap, tail_mass=float(tails[-1]), clamped=True)
