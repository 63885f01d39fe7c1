import math
from typing import Optional, Tuple

from pydantic import BaseModel, field_validator

# Euclidean (Bunch-Davies) vacuum, e^alpha = 0
NEGATIVE_INFINITY = float('-inf')


class ModeSpec(BaseModel):
    """Physical inputs of one field mode.

    Either ``wavenumber_k`` and ``hubble_H`` are given (q = exp(-pi k / H))
    or the thermal parameter ``q`` directly. Domain checks live in
    ``vacuum_core.effective_parameters`` so they raise ``InvalidMode``.
    """
    alpha       : float
    wavenumber_k: Optional[float] = None
    hubble_H    : Optional[float] = None
    q           : Optional[float] = None

    @classmethod
    def from_q(cls, alpha: float, q: float) -> "ModeSpec":
        return cls(alpha=alpha, q=q)

    @property
    def is_euclidean(self) -> bool:
        return self.alpha == NEGATIVE_INFINITY

    @property
    def thermal_q(self) -> Optional[float]:
        if self.q is not None:
            return self.q
        if self.wavenumber_k is None or self.hubble_H is None:
            return None
        return math.exp(-math.pi * self.wavenumber_k / self.hubble_H)

    @property
    def gibbons_hawking_temperature(self) -> Optional[float]:
        if self.hubble_H is None:
            return None
        return self.hubble_H / (2 * math.pi)


class EffectiveParams(BaseModel):
    q: float  # tanh r
    r: float
    f: float  # deformation factor, 1 for the Euclidean vacuum
    T: float  # q * f, the only number the states depend on
    a: float  # e^alpha


class MeasurementDirection(BaseModel):
    theta: float
    phi  : float = 0.0

    @field_validator('theta')
    @classmethod
    def check_theta(cls, v: float) -> float:
        if not 0.0 <= v <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {v}")
        return v

    @field_validator('phi')
    @classmethod
    def wrap_phi(cls, v: float) -> float:
        v = math.fmod(v, 2 * math.pi)
        if v < 0:
            v += 2 * math.pi
        # fmod of a tiny negative value can round up to exactly 2 pi
        if v >= 2 * math.pi:
            v = 0.0
        return v

    @property
    def bloch_vector(self) -> Tuple[float, float, float]:
        return (
            math.sin(self.theta) * math.cos(self.phi),
            math.sin(self.theta) * math.sin(self.phi),
            math.cos(self.theta),
        )
