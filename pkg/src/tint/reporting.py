"""Deterministic serialization of sweep results to CSV and JSON.

Two tables come out of a sweep: the long-format correspondence counts
(algorithm, policy, metric, beta, source_label, target_label, count) and the
evaluation table (beta, algorithm, policy, metric, data_fit, mean_width,
novelty) that the plotting frontend consumes.  Formatting is fully
deterministic - floats via repr (shortest round-trip), undefined values as
empty cells, '\n' newlines - so identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .evaluation import EvaluationReport
from .exploration import TrialConfig
from .simulation import TrialEnsemble

EVALUATION_COLUMNS = ("beta", "algorithm", "policy", "metric", "data_fit", "mean_width", "novelty")
COUNTS_COLUMNS = ("algorithm", "policy", "metric", "beta", "source_label", "target_label", "count")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def _beta_of(config: TrialConfig):
    return config.policy.beta if config.policy.kind == "softmax" else None


def counts_csv(results: list[tuple[TrialConfig, TrialEnsemble]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COUNTS_COLUMNS)
    for config, ensemble in results:
        beta = _fmt(_beta_of(config))
        for i, src in enumerate(ensemble.source_labels):
            for j, tgt in enumerate(ensemble.target_labels):
                writer.writerow(
                    [config.algorithm, config.policy.kind, config.metric, beta,
                     src, tgt, int(ensemble.counts[i, j])]
                )
    return buf.getvalue()


def evaluation_csv(rows: list[tuple[TrialConfig, EvaluationReport]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EVALUATION_COLUMNS)
    for config, report in rows:
        writer.writerow(
            [
                _fmt(_beta_of(config)),
                config.algorithm,
                config.policy.kind,
                config.metric,
                _fmt(report.data_fit),
                _fmt(report.mean_width),
                _fmt(report.novelty),
            ]
        )
    return buf.getvalue()


def summary_json(
    results: list[tuple[TrialConfig, TrialEnsemble]],
    reports: list[tuple[TrialConfig, EvaluationReport]] | None = None,
) -> str:
    """One JSON document per sweep: setup echo plus per-point aggregates."""
    by_key = {}
    if reports:
        by_key = {config.point_key(): report for config, report in reports}
    points = []
    for config, ensemble in results:
        entry = {
            "algorithm": config.algorithm,
            "policy": config.policy.kind,
            "beta": _beta_of(config),
            "metric": config.metric,
            "n_trials": ensemble.n_trials,
            "mean_width": ensemble.mean_width(),
            "unmapped": {
                label: int(n) for label, n in zip(ensemble.source_labels, ensemble.unmapped)
            },
        }
        report = by_key.get(config.point_key())
        if report is not None:
            entry["data_fit"] = None if math.isnan(report.data_fit) else report.data_fit
            entry["novelty"] = None if math.isnan(report.novelty) else report.novelty
            if report.data_fit_excluded:
                entry["data_fit_excluded"] = report.data_fit_excluded
        points.append(entry)

    first = results[0][0] if results else None
    doc = {
        "metaphor": None
        if first is None
        else {
            "source_root": first.source_root.label,
            "target_root": first.target_root.label,
            "source_initials": [im.label for im in first.source_initials],
            "target_initials": [im.label for im in first.target_initials],
        },
        "master_seed": results[0][1].master_seed if results else None,
        "points": points,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
