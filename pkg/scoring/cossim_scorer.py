"""
CosSim: cosine between a subject vector and each value's normalised centroid
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List

import numpy as np
from sklearn.preprocessing import normalize

from corpus.types import ValueGroup
from embedding.model import EmbeddingModel
from scoring.base_scorer import BaseScorer, ScoringMethod
from utils.errors import ScoringError
from utils.logger import setup_logger
from utils.validators import clamp_value

logger = setup_logger("cossim_scorer")

_ZERO_NORM = 1e-12


@dataclass(frozen=True)
class ValueCentroid:
    value: str
    centroid: np.ndarray
    support: int


def build_centroids(model: EmbeddingModel, groups: List[ValueGroup]) -> List[ValueCentroid]:
    """
    Normalised mean doc vector per value group

    Members without a model row are ignored; a group with no resolvable
    member, or whose mean is the zero vector, is omitted with a warning.
    Rows are summed in row order, so member order does not matter.
    """
    if not groups:
        raise ScoringError("cannot build centroids from an empty list of value groups")

    centroids: List[ValueCentroid] = []
    for group in groups:
        rows = sorted(model.doc_index[s] for s in group.subjects if s in model.doc_index)
        if not rows:
            logger.warning(f"[WARN] '{group.value}': no member has a doc vector, value omitted")
            continue
        if len(rows) < len(group):
            logger.debug(f"'{group.value}': {len(group) - len(rows)} members without a doc vector")
        mean = model.doc_vectors[rows].astype(np.float64).mean(axis=0)
        if np.linalg.norm(mean) < _ZERO_NORM:
            logger.warning(f"[WARN] '{group.value}': member vectors cancel out, value omitted")
            continue
        centroid = normalize(mean.reshape(1, -1))[0]
        centroids.append(ValueCentroid(group.value, centroid, len(rows)))

    logger.info(f"[OK] Built {len(centroids)} value centroids from {len(groups)} groups")
    return centroids


def cos_sim_score(person_vec: np.ndarray, centroid: ValueCentroid) -> float:
    """Cosine similarity clamped to [0, 1]; negative similarity counts as no relevance"""
    person_vec = np.asarray(person_vec, dtype=np.float64)
    norm = np.linalg.norm(person_vec)
    if norm < _ZERO_NORM:
        raise ScoringError("person vector is the zero vector")
    cosine = float(person_vec @ centroid.centroid) / (norm * float(np.linalg.norm(centroid.centroid)))
    return float(clamp_value(cosine, 0.0, 1.0))


class CosSimScorer(BaseScorer):
    """Nearest-centroid relevance"""

    method = ScoringMethod.COSSIM

    def __init__(self, centroids: Iterable[ValueCentroid]):
        self.centroids: Dict[str, ValueCentroid] = {c.value: c for c in centroids}

    def values(self) -> List[str]:
        return list(self.centroids)

    def knows(self, value: str) -> bool:
        return value in self.centroids

    def score(self, person_vec: np.ndarray, value: str) -> float:
        if value not in self.centroids:
            raise ScoringError(f"no centroid for value '{value}'")
        return cos_sim_score(person_vec, self.centroids[value])
