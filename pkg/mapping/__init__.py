"""
Raw score to 0..7 mapping (MapLin, MapLog, MapRange)
"""
from mapping.mappers import (
    MappingKind,
    MappingSpec,
    apply_mapping,
    map_lin,
    map_log,
    map_range,
    round_half_up,
)

__all__ = [
    "MappingKind", "MappingSpec", "apply_mapping",
    "map_lin", "map_log", "map_range", "round_half_up",
]
