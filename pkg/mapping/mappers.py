"""
Map raw relevance in [0, 1] to the 0..max_value human label scale
"""
import math
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Any, Dict, List, Sequence, Union

from scoring.base_scorer import ScoreRecord
from utils.errors import ConfigurationError, MappingError
from utils.validators import clamp_value, validate_probability

DEFAULT_MAX_VALUE = 7
DEFAULT_LOG_FLOOR = 1e-4

# absorbs float noise such as 3.4999999999999996 in log-space scores
_HALF_UP_SLACK = 1e-9


class MappingKind(str, Enum):
    LIN = "lin"
    LOG = "log"
    RANGE = "range"

    @classmethod
    def parse(cls, name: Any) -> "MappingKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ConfigurationError(f"unknown mapping '{name}' (expected lin, log or range)") from None


@dataclass(frozen=True)
class MappingSpec:
    kind: MappingKind = MappingKind.LIN
    max_value: int = DEFAULT_MAX_VALUE
    log_floor: float = DEFAULT_LOG_FLOOR

    def __post_init__(self):
        object.__setattr__(self, 'kind', MappingKind.parse(self.kind))
        if isinstance(self.max_value, bool) or not isinstance(self.max_value, int) or self.max_value < 1:
            raise ConfigurationError(f"max_value must be an integer >= 1, got {self.max_value!r}")
        if not (0.0 < self.log_floor < 1.0):
            raise ConfigurationError(f"log_floor must lie in (0, 1), got {self.log_floor}")


def round_half_up(x: Union[float, Decimal]) -> int:
    """Nearest integer, halves up; exact for Decimal input"""
    if isinstance(x, Decimal):
        return int(x.quantize(Decimal(1), rounding=ROUND_HALF_UP))
    return int(math.floor(x + 0.5 + _HALF_UP_SLACK))


def _decimal(x: float) -> Decimal:
    """A score as the decimal number it prints as (0.2 is 0.2, not 0.2000000000000000111)"""
    return Decimal(repr(float(x)))


def _check_raw(raw: float) -> float:
    if not validate_probability(raw):
        raise MappingError(f"raw score {raw!r} is outside [0, 1]")
    return float(raw)


def map_lin(raw: float, max_value: int = DEFAULT_MAX_VALUE) -> int:
    """round(raw * max_value), halves rounded up"""
    raw = _check_raw(raw)
    return int(clamp_value(round_half_up(_decimal(raw) * max_value), 0, max_value))


def map_log(raw: float, max_value: int = DEFAULT_MAX_VALUE, log_floor: float = DEFAULT_LOG_FLOOR) -> int:
    """Linear interpolation in log space between log_floor (-> 0) and 1 (-> max_value)"""
    raw = _check_raw(raw)
    raw = max(raw, log_floor)
    score = max_value * (1.0 - math.log(raw) / math.log(log_floor))
    return int(clamp_value(round_half_up(score), 0, max_value))


def map_range(all_raws: Sequence[float], raw: float, max_value: int = DEFAULT_MAX_VALUE) -> float:
    """
    max_value * (raw - min(A)) / (max(A) - min(A)), unrounded

    When every score in A is equal the result is max_value.
    """
    return float(_range_score(all_raws, raw, max_value))


def _range_score(all_raws: Sequence[float], raw: float, max_value: int) -> Decimal:
    if len(all_raws) == 0:
        raise MappingError("cannot range-map against an empty score array")
    lo, hi = min(all_raws), max(all_raws)
    if hi == lo:
        return Decimal(max_value)
    score = max_value * (_decimal(raw) - _decimal(lo)) / (_decimal(hi) - _decimal(lo))
    return clamp_value(score, Decimal(0), Decimal(max_value))


def apply_mapping(records: List[ScoreRecord], spec: MappingSpec) -> List[ScoreRecord]:
    """
    Fill `mapped` for every record

    lin and log map each record on its own; range uses the raw scores of
    the record's subject as A. Input order is preserved.
    """
    if spec.kind is MappingKind.RANGE:
        by_subject: Dict[str, List[float]] = {}
        for rec in records:
            by_subject.setdefault(rec.subject, []).append(rec.raw)

    mapped: List[ScoreRecord] = []
    for rec in records:
        try:
            if spec.kind is MappingKind.LIN:
                score = map_lin(rec.raw, spec.max_value)
            elif spec.kind is MappingKind.LOG:
                score = map_log(rec.raw, spec.max_value, spec.log_floor)
            else:
                _check_raw(rec.raw)
                score = round_half_up(_range_score(by_subject[rec.subject], rec.raw, spec.max_value))
        except MappingError as e:
            raise MappingError(f"subject '{rec.subject}', value '{rec.value}': {e}") from e
        mapped.append(replace(rec, mapped=int(score)))
    return mapped
