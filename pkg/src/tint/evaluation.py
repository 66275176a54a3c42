"""The three output measures: data fit, systematicity (width), novelty.

Data fit ranks the target initials twice for every source initial, once by
simulated correspondence counts and once by human interpretation agreement,
and averages the per-source rank correlations.  Width is the size of a
functor's range (how many distinct target initials were hit); systematicity
is its ensemble mean.  Novelty correlates correspondence counts with
embedding cosine similarity over all pairs; a LOWER coefficient means the
algorithm pairs semantically distant images, i.e. the comprehension is more
novel.

Rank correlations are Spearman's rho with average ranks on ties.  A constant
vector on either side leaves the coefficient undefined: such source initials
are excluded from the data-fit mean (and named in the report), and an
undefined novelty is returned as NaN rather than coerced to a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import stats

from .category import FunctorMap
from .ingestion import InterpretationData, SimilarityMatrix
from .simulation import TrialEnsemble

CorrMethod = Literal["spearman", "kendall", "pearson"]


def _correlation(x: np.ndarray, y: np.ndarray, method: CorrMethod) -> float | None:
    """Correlation of two vectors, or None when either side is constant."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise ValueError("vectors must have equal length")
    if len(x) < 2 or np.all(x == x[0]) or np.all(y == y[0]):
        return None
    if method == "spearman":
        return float(stats.spearmanr(x, y).statistic)
    if method == "kendall":
        return float(stats.kendalltau(x, y).statistic)
    if method == "pearson":
        return float(np.corrcoef(x, y)[0, 1])
    raise ValueError(f"unknown correlation method {method!r}")


def _human_matrix(ensemble: TrialEnsemble, human: InterpretationData) -> np.ndarray:
    pairs = [
        (s, t) for s in ensemble.source_labels for t in ensemble.target_labels
    ]
    missing = human.missing_pairs(pairs)
    if missing:
        raise ValueError(f"interpretation data missing pairs: {missing[:5]}")
    return np.array(
        [
            [human.value(s, t) for t in ensemble.target_labels]
            for s in ensemble.source_labels
        ],
        dtype=np.float64,
    )


def per_source_data_fit(
    ensemble: TrialEnsemble,
    human: InterpretationData,
    *,
    method: CorrMethod = "spearman",
) -> dict[str, float | None]:
    """Rank correlation per source initial; None where undefined."""
    h = _human_matrix(ensemble, human)
    out: dict[str, float | None] = {}
    for i, label in enumerate(ensemble.source_labels):
        out[label] = _correlation(ensemble.counts[i], h[i], method)
    return out


def data_fit(
    ensemble: TrialEnsemble,
    human: InterpretationData,
    *,
    method: CorrMethod = "spearman",
    pooled: bool = False,
) -> float:
    """Mean per-source rank correlation (NaN if undefined for every source).

    pooled=True instead ranks all (source, target) pairs in one flat vector.
    """
    if pooled:
        h = _human_matrix(ensemble, human)
        rho = _correlation(ensemble.counts.ravel(), h.ravel(), method)
        return math.nan if rho is None else rho
    rhos = [r for r in per_source_data_fit(ensemble, human, method=method).values() if r is not None]
    return float(np.mean(rhos)) if rhos else math.nan


def width(functor: FunctorMap) -> int:
    """Number of distinct target coslice objects in the functor's range."""
    return functor.width()


def mean_width(ensemble: TrialEnsemble) -> float:
    return ensemble.mean_width()


def novelty(
    ensemble: TrialEnsemble,
    sim: SimilarityMatrix,
    *,
    method: CorrMethod = "spearman",
) -> float:
    """Correlation between correspondence counts and cosine similarity.

    Lower is more novel.  NaN when the correlation is undefined (constant
    counts or similarities).
    """
    pairs = [(s, t) for s in ensemble.source_labels for t in ensemble.target_labels]
    missing = sim.missing_pairs(pairs)
    if missing:
        raise ValueError(f"similarity data missing pairs: {missing[:5]}")
    sims = np.array([sim.value(s, t) for s, t in pairs], dtype=np.float64)
    rho = _correlation(ensemble.counts.ravel(), sims, method)
    return math.nan if rho is None else rho


@dataclass
class EvaluationReport:
    """The three measures for one ensemble; NaN marks undefined correlations."""

    data_fit: float
    mean_width: float
    novelty: float
    data_fit_excluded: list[str] = field(default_factory=list)


def evaluate_ensemble(
    ensemble: TrialEnsemble,
    human: InterpretationData,
    sim: SimilarityMatrix,
    *,
    method: CorrMethod = "spearman",
    pooled: bool = False,
) -> EvaluationReport:
    per_source = per_source_data_fit(ensemble, human, method=method)
    excluded = sorted(label for label, rho in per_source.items() if rho is None)
    return EvaluationReport(
        data_fit=data_fit(ensemble, human, method=method, pooled=pooled),
        mean_width=ensemble.mean_width(),
        novelty=novelty(ensemble, sim, method=method),
        data_fit_excluded=excluded,
    )
