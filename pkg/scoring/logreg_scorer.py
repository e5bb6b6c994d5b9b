"""
LogReg: multinomial logistic regression over doc vectors
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.special import logsumexp
from sklearn.preprocessing import LabelEncoder

from corpus.types import ValueGroup
from embedding.model import EmbeddingModel
from scoring.base_scorer import BaseScorer, ScoringMethod
from utils.errors import ScoringError, TrainingError
from utils.logger import setup_logger
from utils.validators import clamp_value

logger = setup_logger("logreg_scorer")

DEFAULT_REG = 1e-4
DEFAULT_ITERS = 500
DEFAULT_LR = 0.1


@dataclass
class Classifier:
    weights: np.ndarray             # K x dim
    bias: np.ndarray                # K
    class_labels: List[str]
    loss_history: List[float] = field(default_factory=list)

    def log_proba(self, x: np.ndarray) -> np.ndarray:
        z = self.weights @ np.asarray(x, dtype=np.float64) + self.bias
        return z - logsumexp(z)

    def proba(self, x: np.ndarray) -> np.ndarray:
        """Softmax distribution over class_labels"""
        return np.exp(self.log_proba(x))


def softmax_loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    X: np.ndarray,
    y: np.ndarray,
    reg: float,
) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Mean softmax cross-entropy plus (reg/2)*||weights||^2, and its gradients

    Args:
        weights: K x dim
        bias: K
        X: N x dim inputs
        y: N class indices
        reg: L2 strength (bias is not regularised)
    """
    n = X.shape[0]
    logits = X @ weights.T + bias
    log_p = logits - logsumexp(logits, axis=1, keepdims=True)
    loss = -log_p[np.arange(n), y].mean() + 0.5 * reg * float(np.sum(weights * weights))
    delta = np.exp(log_p)
    delta[np.arange(n), y] -= 1.0
    delta /= n
    return float(loss), delta.T @ X + reg * weights, delta.sum(axis=0)


def fit_softmax(
    X: np.ndarray,
    labels: List[str],
    reg: float = DEFAULT_REG,
    iters: int = DEFAULT_ITERS,
    lr: float = DEFAULT_LR,
) -> Classifier:
    """Full-batch gradient descent from zero weights; deterministic"""
    encoder = LabelEncoder()
    y = encoder.fit_transform(labels)
    classes = [str(c) for c in encoder.classes_]
    if len(classes) < 2:
        raise ScoringError(f"single class: logistic regression needs at least 2 classes, got {classes}")

    X = np.asarray(X, dtype=np.float64)
    weights = np.zeros((len(classes), X.shape[1]))
    bias = np.zeros(len(classes))
    history: List[float] = []
    for step in range(iters):
        loss, grad_w, grad_b = softmax_loss_and_grad(weights, bias, X, y, reg)
        if not np.isfinite(loss):
            raise TrainingError(f"logistic regression loss became non-finite at iteration {step}")
        history.append(loss)
        weights -= lr * grad_w
        bias -= lr * grad_b

    final_loss, _, _ = softmax_loss_and_grad(weights, bias, X, y, reg)
    if not np.isfinite(final_loss):
        raise TrainingError(f"logistic regression loss became non-finite at iteration {iters}")
    history.append(final_loss)
    logger.info(f"[OK] Softmax classifier: {len(classes)} classes, {len(X)} examples, "
                f"loss {history[0]:.4f} -> {final_loss:.4f}")
    return Classifier(weights, bias, classes, history)


def train_logreg(
    model: EmbeddingModel,
    groups: List[ValueGroup],
    reg: float = DEFAULT_REG,
    iters: int = DEFAULT_ITERS,
    lr: float = DEFAULT_LR,
) -> Classifier:
    """Train on the doc vectors of group members, labelled with the group's value"""
    rows: List[int] = []
    labels: List[str] = []
    for group in groups:
        for subject in group.subjects:
            if subject in model.doc_index:
                rows.append(model.doc_index[subject])
                labels.append(group.value)
    if not rows:
        raise ScoringError("no group member has a doc vector")
    X = model.doc_vectors[rows].astype(np.float64)
    return fit_softmax(X, labels, reg, iters, lr)


def predict_proba(classifier: Classifier, person_vec: np.ndarray, value: str) -> float:
    """Probability of `value` given the person vector"""
    try:
        k = classifier.class_labels.index(value)
    except ValueError:
        known = ", ".join(classifier.class_labels)
        raise ScoringError(f"unknown value '{value}'; known labels: {known}") from None
    return float(clamp_value(float(classifier.proba(person_vec)[k]), 0.0, 1.0))


class LogRegScorer(BaseScorer):
    """Class-probability relevance"""

    method = ScoringMethod.LOGREG

    def __init__(self, classifier: Classifier):
        self.classifier = classifier
        self._labels = set(classifier.class_labels)

    def values(self) -> List[str]:
        return list(self.classifier.class_labels)

    def knows(self, value: str) -> bool:
        return value in self._labels

    def score(self, person_vec: np.ndarray, value: str) -> float:
        return predict_proba(self.classifier, person_vec, value)
