"""
Accuracy@delta, Kendall's tau-b and average score difference against gold labels
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from scoring.base_scorer import ScoreRecord
from utils.errors import EvaluationError, PairMismatchError
from utils.logger import setup_logger

logger = setup_logger("evaluation")

MAX_SCORE = 7
DEFAULT_DELTA = 2

Prediction = Union[ScoreRecord, Tuple[str, str, int]]


@dataclass(frozen=True)
class GoldLabel:
    """Human relevance judgement on the 0..7 scale"""
    subject: str
    value: str
    score: int

    def __post_init__(self):
        if isinstance(self.score, bool) or not isinstance(self.score, (int, np.integer)):
            raise EvaluationError(f"gold score for {self.subject}\t{self.value} must be an integer, got {self.score!r}")
        if not 0 <= self.score <= MAX_SCORE:
            raise EvaluationError(f"gold score for {self.subject}\t{self.value} outside 0..{MAX_SCORE}: {self.score}")


@dataclass
class TauSummary:
    """Per-subject tau-b values and the subjects that were skipped or all-tied"""
    mean: float
    per_subject: Dict[str, float]
    skipped: List[str] = field(default_factory=list)
    all_tied: List[str] = field(default_factory=list)


@dataclass
class EvalReport:
    method: str
    accuracy: float
    kendall_tau: float
    asd: float
    n_subjects: int
    n_pairs: int
    delta: int = DEFAULT_DELTA
    tau_subjects: int = 0
    skipped_subjects: List[str] = field(default_factory=list)
    all_tied_subjects: List[str] = field(default_factory=list)
    tau_aggregation: str = "unweighted mean over subjects"
    pair_aggregation: str = "pooled over pairs"


def _prediction_rows(preds: Iterable[Prediction]) -> List[Tuple[str, str, float]]:
    rows = []
    for p in preds:
        if isinstance(p, ScoreRecord):
            rows.append((p.subject, p.value, p.mapped))
        else:
            subject, value, score = p
            rows.append((subject, value, score))
    return rows


def _check_unique(frame: pd.DataFrame, what: str):
    dup = frame.duplicated(subset=['subject', 'value'], keep='first')
    if dup.any():
        first = frame[dup].iloc[0]
        raise EvaluationError(f"duplicate {what} pair: {first['subject']}\t{first['value']} "
                              f"({int(dup.sum())} duplicates)")


def align(preds: Iterable[Prediction], gold: Iterable[GoldLabel]) -> pd.DataFrame:
    """
    Join predictions and gold labels on (subject, value)

    Returns a frame with columns subject, value, pred, gold in gold order.
    Raises PairMismatchError listing every pair present on one side only.
    """
    pred_frame = pd.DataFrame(_prediction_rows(preds), columns=['subject', 'value', 'pred'])
    gold_frame = pd.DataFrame([(g.subject, g.value, g.score) for g in gold],
                              columns=['subject', 'value', 'gold'])
    _check_unique(pred_frame, "prediction")
    _check_unique(gold_frame, "gold")

    merged = gold_frame.merge(pred_frame, on=['subject', 'value'], how='outer',
                              indicator=True, sort=False)
    missing_in_preds = merged.loc[merged['_merge'] == 'left_only', ['subject', 'value']]
    missing_in_gold = merged.loc[merged['_merge'] == 'right_only', ['subject', 'value']]
    if len(missing_in_preds) or len(missing_in_gold):
        raise PairMismatchError(
            missing_in_preds=list(missing_in_preds.itertuples(index=False, name=None)),
            missing_in_gold=list(missing_in_gold.itertuples(index=False, name=None)),
        )
    if merged.empty:
        raise EvaluationError("no (subject, value) pairs to evaluate")

    aligned = gold_frame.merge(pred_frame, on=['subject', 'value'], how='inner', sort=False)
    return aligned[['subject', 'value', 'pred', 'gold']]


def accuracy_at_delta(preds: Iterable[Prediction], gold: Iterable[GoldLabel], delta: int = DEFAULT_DELTA) -> float:
    """Fraction of pairs with |pred - gold| <= delta"""
    if delta < 0:
        raise EvaluationError(f"delta must be >= 0, got {delta}")
    frame = align(preds, gold)
    return _accuracy(frame, delta)


def _accuracy(frame: pd.DataFrame, delta: int) -> float:
    hits = int((np.abs(frame['pred'].to_numpy() - frame['gold'].to_numpy()) <= delta).sum())
    return hits / len(frame)


def avg_score_diff(preds: Iterable[Prediction], gold: Iterable[GoldLabel]) -> float:
    """Mean |pred - gold| over pairs"""
    return _asd(align(preds, gold))


def _asd(frame: pd.DataFrame) -> float:
    diffs = np.abs(frame['pred'].to_numpy() - frame['gold'].to_numpy())
    return float(math.fsum(diffs.tolist()) / len(diffs))


def pair_counts(x: Sequence, y: Sequence) -> Tuple[int, int, int, int]:
    """
    (concordant, discordant, pairs untied in x, pairs untied in y)

    Counts over all i < j; a pair tied in either variable is neither
    concordant nor discordant.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.ndim != 1:
        raise EvaluationError(f"tau needs two equal-length 1-D sequences, got {x.shape} and {y.shape}")
    i, j = np.triu_indices(len(x), k=1)
    sx = np.sign(x[i] - x[j])
    sy = np.sign(y[i] - y[j])
    prod = sx * sy
    return (int(np.count_nonzero(prod > 0)), int(np.count_nonzero(prod < 0)),
            int(np.count_nonzero(sx)), int(np.count_nonzero(sy)))


def kendall_tau_b(x: Sequence, y: Sequence) -> float:
    """
    Tie-corrected Kendall tau: (C - D) / sqrt(Px * Py)

    Px and Py count the pairs not tied in x and y. When either side is
    entirely tied the coefficient is undefined and 0.0 is returned.
    """
    if len(x) < 2:
        raise EvaluationError(f"tau needs at least 2 observations, got {len(x)}")
    c, d, px, py = pair_counts(x, y)
    if px == 0 or py == 0:
        return 0.0
    return (c - d) / math.sqrt(px * py)


def _tau_summary(frame: pd.DataFrame) -> TauSummary:
    per_subject: Dict[str, float] = {}
    skipped: List[str] = []
    all_tied: List[str] = []
    for subject, rows in frame.groupby('subject', sort=True):
        if len(rows) < 2:
            skipped.append(subject)
            continue
        pred = rows['pred'].to_numpy()
        gold = rows['gold'].to_numpy()
        _, _, px, py = pair_counts(pred, gold)
        if px == 0 or py == 0:
            all_tied.append(subject)
        per_subject[subject] = kendall_tau_b(pred, gold)

    if not per_subject:
        raise EvaluationError(f"no subject has 2 or more candidate values ({len(skipped)} skipped)")
    mean = math.fsum(per_subject.values()) / len(per_subject)
    return TauSummary(mean=mean, per_subject=per_subject, skipped=skipped, all_tied=all_tied)


def kendall_tau_details(preds: Iterable[Prediction], gold: Iterable[GoldLabel]) -> TauSummary:
    return _tau_summary(align(preds, gold))


def kendall_tau(preds: Iterable[Prediction], gold: Iterable[GoldLabel]) -> float:
    """
    Unweighted mean of per-subject tau-b

    Subjects with fewer than 2 values are skipped; all-tied subjects count
    as 0.
    """
    return kendall_tau_details(preds, gold).mean


def evaluate(
    preds: Iterable[Prediction],
    gold: Iterable[GoldLabel],
    delta: int = DEFAULT_DELTA,
    method: str = "",
) -> EvalReport:
    """All three metrics plus counts, from one alignment of the pairs"""
    if delta < 0:
        raise EvaluationError(f"delta must be >= 0, got {delta}")
    frame = align(preds, gold)
    tau = _tau_summary(frame)
    report = EvalReport(
        method=method,
        accuracy=_accuracy(frame, delta),
        kendall_tau=tau.mean,
        asd=_asd(frame),
        n_subjects=int(frame['subject'].nunique()),
        n_pairs=len(frame),
        delta=delta,
        tau_subjects=len(tau.per_subject),
        skipped_subjects=tau.skipped,
        all_tied_subjects=tau.all_tied,
    )
    logger.info(f"[EVAL] {method or 'scores'}: accuracy={report.accuracy:.4f} tau={report.kendall_tau:.4f} "
                f"asd={report.asd:.4f} over {report.n_pairs} pairs, {report.n_subjects} subjects")
    if tau.skipped:
        logger.info(f"[EVAL] {len(tau.skipped)} subjects with fewer than 2 values left out of tau")
    if tau.all_tied:
        logger.info(f"[EVAL] {len(tau.all_tied)} all-tied subjects counted as tau=0")
    return report
