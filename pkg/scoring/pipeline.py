"""
Subject scoring: resolve the subject vector, then score each candidate value
"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from corpus.types import PersonDoc, ValueGroup
from embedding.model import EmbeddingModel
from embedding.trainer import infer_vector
from scoring.base_scorer import BaseScorer, ScoreRecord, ScoringMethod
from scoring.cossim_scorer import CosSimScorer, build_centroids
from scoring.logreg_scorer import DEFAULT_ITERS, DEFAULT_LR, DEFAULT_REG, LogRegScorer, train_logreg
from utils.errors import InferenceError, ScoringError
from utils.logger import setup_logger
from utils.validators import clamp_value

logger = setup_logger("scoring")


@dataclass
class ScoringModels:
    """
    Everything needed to score subjects with one method

    Subjects absent from the embedding model fall back to an inferred
    vector when their doc is in `fallback_docs`.
    """
    embedding: EmbeddingModel
    scorer: BaseScorer
    fallback_docs: Mapping[str, PersonDoc] = field(default_factory=dict)
    infer_epochs: Optional[int] = None
    _inferred: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def method(self) -> ScoringMethod:
        return self.scorer.method

    def vector_for(self, subject: str) -> np.ndarray:
        if subject in self.embedding:
            return self.embedding.vector(subject)
        if subject in self._inferred:
            return self._inferred[subject]
        doc = self.fallback_docs.get(subject)
        if doc is None:
            raise ScoringError(f"no doc vector for subject '{subject}' and no text to infer one from")
        try:
            vec = infer_vector(self.embedding, doc.tokens, epochs=self.infer_epochs)
        except InferenceError as e:
            raise ScoringError(f"no doc vector for subject '{subject}': {e}") from e
        logger.debug(f"Inferred vector for '{subject}'")
        self._inferred[subject] = vec
        return vec


def build_scoring_models(
    method: Union[ScoringMethod, str],
    embedding: EmbeddingModel,
    groups: List[ValueGroup],
    fallback_docs: Optional[Mapping[str, PersonDoc]] = None,
    infer_epochs: Optional[int] = None,
    reg: float = DEFAULT_REG,
    iters: int = DEFAULT_ITERS,
    lr: float = DEFAULT_LR,
) -> ScoringModels:
    """Centroids (cossim) or a softmax classifier (logreg) from the value groups"""
    method = ScoringMethod.parse(method)
    if method is ScoringMethod.COSSIM:
        scorer: BaseScorer = CosSimScorer(build_centroids(embedding, groups))
    else:
        scorer = LogRegScorer(train_logreg(embedding, groups, reg=reg, iters=iters, lr=lr))
    return ScoringModels(embedding, scorer, dict(fallback_docs or {}), infer_epochs)


def score_subject(
    subject: str,
    candidate_values: Sequence[str],
    method: Union[ScoringMethod, str],
    models: ScoringModels,
    errors: Optional[List[str]] = None,
) -> List[ScoreRecord]:
    """
    Raw relevance of each candidate value for one subject

    Output follows candidate order. Values without a model are skipped and
    reported through `errors`; a subject without a vector raises.
    """
    method = ScoringMethod.parse(method)
    if models.method is not method:
        raise ScoringError(f"models were built for {models.method.value}, not {method.value}")

    person_vec = models.vector_for(subject)
    records: List[ScoreRecord] = []
    for value in candidate_values:
        if not models.scorer.knows(value):
            message = f"{subject}\t{value}: no {method.value} model for this value"
            logger.warning(f"[WARN] {message}")
            if errors is not None:
                errors.append(message)
            continue
        raw = float(clamp_value(models.scorer.score(person_vec, value), 0.0, 1.0))
        records.append(ScoreRecord(subject=subject, value=value, raw=raw))
    return records
