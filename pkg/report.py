from typing import Dict, Any, List
import os
from datetime import datetime

from automl.shared.models import RunReport

METRIC_LABELS = {
    "exact_match": "Exact-match accuracy",
    "hamming_loss": "Hamming loss",
    "instance_f": "Instance-wise F-measure",
    "rank_loss": "Rank loss",
}


def generate_markdown_report(report: RunReport) -> str:
    """
    Generate a markdown report from a run report.

    Args:
        report: RunReport from run_experiment()

    Returns:
        Markdown formatted report
    """
    config = report.config
    dataset = report.dataset

    report_lines = [
        "# AutoML Run Report",
        "",
        f"**Generated on:** {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}",
        "",
        "## Setup",
        "",
        f"- **Dataset:** {config['dataset']} (`{dataset['relation']}`)",
        f"- **Optimizer:** {config['optimizer']}",
        f"- **Budget:** {config['budget_total']:g} {config['budget_kind']}",
        f"- **Seed:** {config['seed']}",
        f"- **Search space fingerprint:** `{report.space_fingerprint}`",
        "",
        "## Chosen Pipeline",
        "",
        f"`{report.pipeline}`",
        "",
        f"**Internal validation loss:** {report.internal_score:.4f}",
        f"**Candidates evaluated:** {report.candidates_evaluated}",
        "",
    ]
    if report.refit_fallback:
        report_lines.extend([
            f"**Refit fallback:** the chosen pipeline could not be refit within the budget; "
            f"test metrics are of `{report.refit_fallback}`.",
            "",
        ])
    report_lines += [
        "## Test Metrics",
        "",
        format_metrics_for_display(report.test_metrics),
        "",
        "## Dataset",
        "",
        "| instances | attributes | labels | cardinality | density | distinct label sets |",
        "|---|---|---|---|---|---|",
        f"| {dataset['instances']} | {dataset['attributes']} | {dataset['labels']} "
        f"| {dataset['cardinality']:.3f} | {dataset['density']:.3f} | {dataset['distinct_label_sets']} |",
        "",
    ]

    if report.top_candidates:
        report_lines.extend([
            "## Top Candidates",
            "",
            format_candidates_for_display(report.top_candidates),
            "",
        ])

    # Add footer
    report_lines.extend([
        "---",
        "",
        f"*Event log: {report.event_log_path}*",
    ])
    if report.timing:
        report_lines.append(f"*Total time: {report.timing.get('total_seconds', 0.0):.1f}s*")

    return "\n".join(report_lines)


def save_report(report: str, filename: str = None, directory: str = "reports") -> str:
    """
    Save markdown report to file.

    Args:
        report: Markdown report content
        filename: Output filename (optional)
        directory: Output directory

    Returns:
        Path to saved file
    """
    if filename is None:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        filename = f"run_report_{timestamp}.md"

    os.makedirs(directory, exist_ok=True)

    filepath = os.path.join(directory, filename)

    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(report)

    return filepath


def format_metrics_for_display(metrics: Dict[str, float]) -> str:
    """
    Format test metrics as a markdown table.

    Args:
        metrics: Metric name to value

    Returns:
        Markdown table string
    """
    lines = ["| metric | value |", "|---|---|"]
    for name, value in metrics.items():
        lines.append(f"| {METRIC_LABELS.get(name, name)} | {value:.4f} |")
    return "\n".join(lines)


def format_candidates_for_display(candidates: List[Dict[str, Any]], max_display: int = 10) -> str:
    """
    Format the best candidates of a run for display.

    Args:
        candidates: Candidate dictionaries with pipeline, mean_score and scores
        max_display: Maximum number of candidates to display

    Returns:
        Formatted candidate list
    """
    if not candidates:
        return "No candidates evaluated."

    candidate_lines = []

    for i, candidate in enumerate(candidates[:max_display], 1):
        scores = ", ".join(f"{s:.3f}" for s in candidate['scores'])
        candidate_lines.append(
            f"{i}. `{candidate['pipeline']}` (loss {candidate['mean_score']:.4f}; splits: {scores})"
        )

    if len(candidates) > max_display:
        candidate_lines.append(f"... and {len(candidates) - max_display} more candidates")

    return "\n".join(candidate_lines)
