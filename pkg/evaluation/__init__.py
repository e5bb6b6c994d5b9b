"""
Accuracy@delta, Kendall's tau-b and ASD against gold labels
"""
from evaluation.metrics import (
    DEFAULT_DELTA,
    EvalReport,
    GoldLabel,
    TauSummary,
    accuracy_at_delta,
    align,
    avg_score_diff,
    evaluate,
    kendall_tau,
    kendall_tau_b,
    kendall_tau_details,
    pair_counts,
)
from evaluation.report import format_report, metric_lines, results_table

__all__ = [
    "DEFAULT_DELTA", "EvalReport", "GoldLabel", "TauSummary",
    "accuracy_at_delta", "align", "avg_score_diff", "evaluate",
    "kendall_tau", "kendall_tau_b", "kendall_tau_details", "pair_counts",
    "format_report", "metric_lines", "results_table",
]
