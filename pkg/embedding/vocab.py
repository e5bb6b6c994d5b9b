"""
Vocabulary with min-count filtering and the negative-sampling noise table
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence

import numpy as np

from utils.errors import EmbeddingError, EmptyVocabularyError
from utils.logger import setup_logger

logger = setup_logger("vocab")


@dataclass
class Vocabulary:
    """
    Retained words, their counts and a cumulative noise table

    Word ids are dense, ordered by descending count then word. The noise
    table is the cumulative distribution of count**noise_power, ending in
    exactly 1.0; a uniform draw u maps to the first slot with table > u.
    """
    words: List[str]
    counts: np.ndarray
    min_count: int
    noise_power: float = 0.75
    word_to_id: Dict[str, int] = field(init=False, repr=False)
    noise_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        self.word_to_id = {w: i for i, w in enumerate(self.words)}
        weights = self.counts.astype(np.float64) ** self.noise_power
        if len(weights):
            table = np.cumsum(weights) / weights.sum()
            table[-1] = 1.0
        else:
            table = np.zeros(0)
        self.noise_table = table

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.word_to_id

    @property
    def total_tokens(self) -> int:
        return int(self.counts.sum())

    def noise_probabilities(self) -> np.ndarray:
        """Per-word noise probabilities (differences of the cumulative table)"""
        return np.diff(self.noise_table, prepend=0.0)

    def sample_noise(self, rng: np.random.Generator, size) -> np.ndarray:
        """Draw word ids from the noise distribution"""
        draws = np.searchsorted(self.noise_table, rng.random(size), side='right')
        return np.minimum(draws, len(self.words) - 1).astype(np.int64)

    def encode(self, tokens: Iterable[str]) -> np.ndarray:
        """In-vocabulary token ids, out-of-vocabulary tokens dropped"""
        lookup = self.word_to_id
        return np.fromiter((lookup[t] for t in tokens if t in lookup), dtype=np.int64)


def build_vocab(docs: Sequence, min_count: int = 10, noise_power: float = 0.75) -> Vocabulary:
    """
    Count tokens over all docs and keep words seen at least min_count times

    Args:
        docs: PersonDoc-like objects with a `tokens` sequence
        min_count: minimum total occurrences for a word to be kept
        noise_power: exponent applied to counts for the noise distribution
    """
    if not docs:
        raise EmbeddingError("cannot build a vocabulary from zero documents")

    counter: Counter = Counter()
    for doc in docs:
        counter.update(doc.tokens)

    kept = [(w, c) for w, c in counter.items() if c >= min_count]
    if not kept:
        raise EmptyVocabularyError(
            f"empty vocabulary: none of {len(counter)} distinct words reaches min_count={min_count}")
    kept.sort(key=lambda wc: (-wc[1], wc[0]))

    vocab = Vocabulary(
        words=[w for w, _ in kept],
        counts=np.array([c for _, c in kept], dtype=np.int64),
        min_count=min_count,
        noise_power=noise_power,
    )
    logger.info(f"[OK] Vocabulary: {len(vocab)} of {len(counter)} words kept "
                f"(min_count={min_count}, {vocab.total_tokens} tokens)")
    return vocab
