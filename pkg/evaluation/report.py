"""
Plain-text result tables and machine-readable metric lines
"""
from typing import List

import pandas as pd

from evaluation.metrics import EvalReport


def results_table(reports: List[EvalReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [(r.method or "-", r.accuracy, r.kendall_tau, r.asd) for r in reports],
        columns=["Method", "Accuracy", "Kendall's Tau", "ASD"],
    )


def metric_lines(report: EvalReport) -> List[str]:
    """key=value lines for one report"""
    return [
        f"method={report.method}",
        f"accuracy={report.accuracy:.6f}",
        f"tau={report.kendall_tau:.6f}",
        f"asd={report.asd:.6f}",
        f"delta={report.delta}",
        f"n_subjects={report.n_subjects}",
        f"n_pairs={report.n_pairs}",
        f"tau_subjects={report.tau_subjects}",
        f"skipped_subjects={len(report.skipped_subjects)}",
        f"all_tied_subjects={len(report.all_tied_subjects)}",
        f"tau_aggregation={report.tau_aggregation}",
        f"pair_aggregation={report.pair_aggregation}",
    ]


def format_report(reports: List[EvalReport]) -> str:
    """
    Method / Accuracy / Kendall's Tau / ASD table, two decimals, one row per
    method, followed by a key=value block per method
    """
    table = results_table(reports).to_string(index=False, float_format=lambda v: f"{v:.2f}")
    blocks = [table]
    for report in reports:
        blocks.append("\n".join(metric_lines(report)))
    return "\n\n".join(blocks) + "\n"
