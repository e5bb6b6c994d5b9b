"""
Paragraph vector model state and training configuration
"""
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Dict, List

import numpy as np

from embedding.vocab import Vocabulary
from utils.errors import ConfigurationError
from utils.validators import all_finite, validate_positive_int


class TrainMode(str, Enum):
    DBOW = "dbow"
    DM_CONCAT = "dm-concat"
    DM_AVG = "dm-avg"

    @classmethod
    def parse(cls, name: Any) -> "TrainMode":
        if isinstance(name, cls):
            return name
        aliases = {"pv-dbow": "dbow", "pv-dm-concat": "dm-concat", "pv-dm-avg": "dm-avg"}
        key = str(name).strip().lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            known = ", ".join(m.value for m in cls)
            raise ConfigurationError(f"unknown training mode '{name}' (expected one of: {known})") from None

    @property
    def is_dm(self) -> bool:
        return self is not TrainMode.DBOW


class Combine(str, Enum):
    """How PV-DM merges the doc vector with its context word vectors"""
    CONCAT = "concat"
    AVERAGE = "average"


@dataclass(frozen=True)
class TrainConfig:
    """Paragraph vector hyperparameters"""
    mode: TrainMode = TrainMode.DBOW
    dim: int = 200
    window: int = 5
    negative: int = 5
    epochs: int = 20
    min_count: int = 10
    workers: int = 1
    initial_lr: float = 0.025
    final_lr: float = 0.0001
    seed: int = 1
    noise_power: float = 0.75
    dbow_words: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'mode', TrainMode.parse(self.mode))
        for name in ('dim', 'window', 'negative', 'epochs', 'min_count', 'workers'):
            value = getattr(self, name)
            if not validate_positive_int(value):
                raise ConfigurationError(f"training.{name} must be an integer >= 1, got {value!r}")
        if not (0.0 < self.final_lr < self.initial_lr):
            raise ConfigurationError(
                f"learning rates must satisfy 0 < final_lr < initial_lr, got {self.final_lr} / {self.initial_lr}")
        if not self.noise_power > 0:
            raise ConfigurationError(f"training.noise_power must be positive, got {self.noise_power}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ConfigurationError(f"training.seed must be an integer, got {self.seed!r}")

    @property
    def combine(self) -> Combine:
        if self.mode is TrainMode.DM_CONCAT:
            return Combine.CONCAT
        return Combine.AVERAGE

    @property
    def hidden_width(self) -> int:
        """Width of the layer feeding the output weights"""
        if self.mode is TrainMode.DM_CONCAT:
            return self.dim * (1 + 2 * self.window)
        return self.dim

    @property
    def uses_word_vectors(self) -> bool:
        return self.mode.is_dm or self.dbow_words

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['mode'] = self.mode.value
        return data


@dataclass
class EmbeddingModel:
    """Vocabulary plus document, word-input and output weight matrices"""
    vocab: Vocabulary
    config: TrainConfig
    doc_tags: List[str]
    doc_vectors: np.ndarray
    word_in_vectors: np.ndarray
    word_out_vectors: np.ndarray
    doc_index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.doc_index = {tag: row for row, tag in enumerate(self.doc_tags)}
        if len(self.doc_index) != len(self.doc_tags):
            raise ConfigurationError("document tags must be unique")
        if self.doc_vectors.shape != (len(self.doc_tags), self.config.dim):
            raise ConfigurationError(
                f"doc_vectors shape {self.doc_vectors.shape} does not match "
                f"({len(self.doc_tags)}, {self.config.dim})")

    @property
    def dim(self) -> int:
        return self.config.dim

    def __contains__(self, subject: str) -> bool:
        return subject in self.doc_index

    def vector(self, subject: str) -> np.ndarray:
        """Copy of a subject's trained doc vector"""
        return np.array(self.doc_vectors[self.doc_index[subject]], dtype=np.float64)

    def is_finite(self) -> bool:
        return all_finite(self.doc_vectors, self.word_in_vectors, self.word_out_vectors)
