from enum import Enum


class GridAxis(str, Enum):
    HUBBLE = 'hubble'
    Q      = 'q'
    T      = 't'


class OutputFormat(str, Enum):
    CSV  = 'csv'
    JSON = 'json'


class FigureTag(str, Enum):
    FIG2_NEGATIVITY_SURFACE = 'FIG2_NEGATIVITY_SURFACE'
    FIG3_NEGATIVITY_VS_ALPHA = 'FIG3_NEGATIVITY_VS_ALPHA'
    FIG4_MUTUAL_INFO        = 'FIG4_MUTUAL_INFO'
    FIG5_DISCORD_SURFACE    = 'FIG5_DISCORD_SURFACE'
    FIG6_DISCORD_CURVES     = 'FIG6_DISCORD_CURVES'
    DISCREPANCY_REPORT      = 'DISCREPANCY_REPORT'

    @classmethod
    def from_short(cls, tag: str) -> "FigureTag":
        """Accepts either the full tag or its prefix, e.g. ``FIG6``."""
        tag = tag.strip().upper()
        for member in cls:
            if member.value == tag or member.value.split('_')[0] == tag:
                return member
        raise ValueError(f"Unknown figure tag: {tag}")


class NegativityVariant(str, Enum):
    AS_PRINTED = 'as_printed'
    VARIANT_B  = 'variant_b'
