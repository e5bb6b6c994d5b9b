"""
Per-value models and raw relevance scoring (CosSim, LogReg)
"""
from scoring.base_scorer import BaseScorer, ScoreRecord, ScoringMethod
from scoring.cossim_scorer import CosSimScorer, ValueCentroid, build_centroids, cos_sim_score
from scoring.logreg_scorer import Classifier, LogRegScorer, predict_proba, train_logreg
from scoring.pipeline import ScoringModels, build_scoring_models, score_subject

__all__ = [
    "BaseScorer", "ScoreRecord", "ScoringMethod",
    "CosSimScorer", "ValueCentroid", "build_centroids", "cos_sim_score",
    "Classifier", "LogRegScorer", "predict_proba", "train_logreg",
    "ScoringModels", "build_scoring_models", "score_subject",
]
