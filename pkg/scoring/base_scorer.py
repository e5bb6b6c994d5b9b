"""
Base Scorer Class
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, List

import numpy as np

from utils.errors import ConfigurationError


class ScoringMethod(str, Enum):
    COSSIM = "cossim"
    LOGREG = "logreg"

    @classmethod
    def parse(cls, name: Any) -> "ScoringMethod":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ConfigurationError(f"unknown scoring method '{name}' (expected cossim or logreg)") from None


@dataclass
class ScoreRecord:
    """One scored triple; `mapped` stays 0 until the mapping stage runs"""
    subject: str
    value: str
    raw: float
    mapped: int = 0


class BaseScorer(ABC):
    """Relevance of a value to a subject vector, in [0, 1]"""

    method: ScoringMethod

    @abstractmethod
    def values(self) -> List[str]:
        """Values this scorer holds a model for"""
        pass

    def knows(self, value: str) -> bool:
        return value in set(self.values())

    @abstractmethod
    def score(self, person_vec: np.ndarray, value: str) -> float:
        """
        Raw relevance of `value` for the subject with `person_vec`

        Returns:
            float in [0, 1]
        """
        pass
