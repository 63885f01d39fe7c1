from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from vacuum_correlations.enums.config import FigureTag
from vacuum_correlations.models.common import MeasurementDirection

NEGATIVITY_MAX = 0.5
MUTUAL_INFO_MAX = 2.0
BOUND_SLACK = 1e-9


class CorrelationReport(BaseModel):
    T                           : float
    negativity_spectral         : float
    negativity_closed_as_printed: float
    negativity_closed_variantB  : float
    entropy_A                   : float
    entropy_RI                  : float
    entropy_joint               : float
    entropy_joint_closed        : float
    mutual_info_I               : float
    mutual_info_II              : float
    mutual_info_closed          : float
    discord                     : float
    discord_argmin              : MeasurementDirection
    discord_minimized           : bool = True  # False when evaluated at a fixed direction
    classical_correlation       : float
    n_max_used                  : int
    tail_mass                   : float
    truncation_clamped          : bool = False
    closed_vs_oracle_deltas     : Dict[str, float] = {}

    def violations(self) -> List[str]:
        """Bounds every sound report satisfies; empty when all hold."""
        problems = []
        if not -BOUND_SLACK <= self.negativity_spectral <= NEGATIVITY_MAX + BOUND_SLACK:
            problems.append(f"negativity {self.negativity_spectral} outside [0, 0.5]")
        for name in ('entropy_A', 'entropy_RI', 'entropy_joint'):
            if getattr(self, name) < -1e-12:
                problems.append(f"{name} {getattr(self, name)} is negative")
        if not -BOUND_SLACK <= self.mutual_info_I <= MUTUAL_INFO_MAX + BOUND_SLACK:
            problems.append(f"mutual_info_I {self.mutual_info_I} outside [0, 2]")
        if not -BOUND_SLACK <= self.discord <= self.mutual_info_I + BOUND_SLACK:
            problems.append(f"discord {self.discord} outside [0, mutual_info_I = {self.mutual_info_I}]")
        return problems


class FigureDataset(BaseModel):
    figure_tag: FigureTag
    rows      : List[Dict[str, Any]] = []
    metadata  : Dict[str, Any] = {}

    @property
    def truncation_warnings(self) -> List[int]:
        return list(self.metadata.get('truncation_warnings', []))
