"""Parsing of survey, interpretation, and similarity data, and the weight conversion.

Association strength is collected on a 5-point scale and converted to an
elicitation probability by the affine map mu = 0.05 + 0.225*(s - 1), so the
scale endpoints land on 0.05 and 0.95 and probability 1 stays reserved for
identity arrows.  Interpretation scores (human agreement with a given
correspondence) and embedding cosine similarities arrive as per-pair tables;
both are produced upstream and only read here.

All files are strict UTF-8 CSV with '.' as the decimal point.  Parsers fail
loudly, naming file and line: a byte-order mark, a ragged row, an unknown
label, or an out-of-range value is an error, never a warning.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .category import Image, LatentCategory, build_latent
from .errors import InputError


def strength_to_weight(s: float, *, strict: bool = True) -> float:
    """Convert a 5-point association strength to a weight in [0.05, 0.95].

    Computed as (9s - 7) / 40, which equals 0.05 + 0.225*(s - 1) but rounds
    once, so the five scale points map to 0.05, 0.275, 0.5, 0.725, 0.95
    exactly.  strict demands integers 1..5; otherwise any real in [1, 5]
    (e.g. participant averages) is accepted.
    """
    if strict:
        if not float(s).is_integer() or not 1 <= s <= 5:
            raise ValueError(f"association strength must be an integer in 1..5, got {s}")
    elif not (np.isfinite(s) and 1.0 <= s <= 5.0):
        raise ValueError(f"association strength must lie in [1, 5], got {s}")
    return (9.0 * float(s) - 7.0) / 40.0


@dataclass
class AssociationSurvey:
    """Raw survey responses: labels plus the n x n strength matrix."""

    labels: list[str]
    strength: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass
class InterpretationData:
    """Mean human agreement score per (source initial, target initial) pair."""

    scores: dict[tuple[str, str], float] = field(default_factory=dict)

    def value(self, source_label: str, target_label: str) -> float:
        return self.scores[(source_label, target_label)]

    def missing_pairs(self, pairs: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
        return [p for p in pairs if p not in self.scores]


@dataclass
class SimilarityMatrix:
    """Embedding cosine similarity per (source initial, target initial) pair."""

    similarities: dict[tuple[str, str], float] = field(default_factory=dict)

    def value(self, source_label: str, target_label: str) -> float:
        return self.similarities[(source_label, target_label)]

    def missing_pairs(self, pairs: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
        return [p for p in pairs if p not in self.similarities]


def _read_text(path) -> str:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read file ({e.strerror})", path=str(path)) from None
    if raw.startswith(b"\xef\xbb\xbf"):
        raise InputError(
            "file starts with a UTF-8 byte-order mark; save it as plain UTF-8",
            path=str(path), line=1,
        )
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw[: e.start].count(b"\n") + 1
        raise InputError(f"not valid UTF-8 ({e.reason})", path=str(path), line=line) from None


def _parse_number(cell: str, path: str, line: int) -> float:
    cell = cell.strip()
    if "," in cell:
        raise InputError(
            f"bad number {cell!r} (decimal point must be '.')", path=path, line=line
        )
    try:
        return float(cell)
    except ValueError:
        raise InputError(f"bad number {cell!r}", path=path, line=line) from None


def load_survey(path, *, strict: bool = True) -> AssociationSurvey:
    """Read a survey CSV: header ``label,<l1>,...,<ln>``, one row per image.

    Row labels must repeat the header labels in the same order, and every
    strength must be on the 5-point scale (integers when strict).
    """
    path = str(path)
    rows = list(csv.reader(io.StringIO(_read_text(path))))
    rows = [r for r in rows if r]  # ignore trailing blank lines
    if not rows:
        raise InputError("empty survey file", path=path, line=1)
    header = rows[0]
    if len(header) < 2 or header[0].strip() != "label":
        raise InputError(
            "survey header must be 'label,<label_1>,...,<label_n>'", path=path, line=1
        )
    labels = [c.strip() for c in header[1:]]
    if any(not l for l in labels):
        raise InputError("empty label in survey header", path=path, line=1)
    if len(set(labels)) != len(labels):
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        raise InputError(f"duplicate labels in survey header: {dupes}", path=path, line=1)
    n = len(labels)
    if len(rows) - 1 != n:
        raise InputError(
            f"survey has {len(rows) - 1} data rows but {n} labels in the header",
            path=path, line=len(rows),
        )

    strength = np.zeros((n, n), dtype=np.float64)
    for k, row in enumerate(rows[1:]):
        line = k + 2
        if len(row) != n + 1:
            raise InputError(
                f"row has {len(row)} cells, expected {n + 1}", path=path, line=line
            )
        if row[0].strip() != labels[k]:
            raise InputError(
                f"row label {row[0].strip()!r} does not match header label {labels[k]!r}",
                path=path, line=line,
            )
        for j, cell in enumerate(row[1:]):
            s = _parse_number(cell, path, line)
            try:
                strength_to_weight(s, strict=strict)
            except ValueError as e:
                raise InputError(str(e), path=path, line=line) from None
            strength[k, j] = s
    return AssociationSurvey(labels=labels, strength=strength)


def save_survey(survey: AssociationSurvey, path) -> None:
    """Write a survey back to CSV in the exact format load_survey reads."""
    n = survey.n
    if survey.strength.shape != (n, n):
        raise ValueError("survey strength matrix does not match its labels")
    lines = ["label," + ",".join(survey.labels)]
    for i in range(n):
        cells = [survey.labels[i]]
        for j in range(n):
            v = survey.strength[i, j]
            cells.append(str(int(v)) if float(v).is_integer() else repr(float(v)))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def survey_to_latent(survey: AssociationSurvey, *, strict: bool = True) -> LatentCategory:
    """Convert strengths to weights elementwise; identity arrows get weight 1."""
    n = survey.n
    w = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(n):
            w[i, j] = strength_to_weight(survey.strength[i, j], strict=strict)
    np.fill_diagonal(w, 1.0)
    return build_latent([Image(i, l) for i, l in enumerate(survey.labels)], w)


def _load_pair_table(path, value_check, what: str) -> dict[tuple[str, str], float]:
    path = str(path)
    table: dict[tuple[str, str], float] = {}
    for k, row in enumerate(csv.reader(io.StringIO(_read_text(path)))):
        line = k + 1
        if not row:
            continue
        if len(row) != 3:
            raise InputError(
                f"{what} rows must be 'source_label,target_label,value'", path=path, line=line
            )
        src, tgt = row[0].strip(), row[1].strip()
        if not src or not tgt:
            raise InputError("empty label", path=path, line=line)
        value = _parse_number(row[2], path, line)
        err = value_check(value)
        if err:
            raise InputError(err, path=path, line=line)
        if (src, tgt) in table:
            raise InputError(f"duplicate pair ({src!r}, {tgt!r})", path=path, line=line)
        table[(src, tgt)] = value
    return table


def load_interpretation(path) -> InterpretationData:
    """Read interpretation agreement triples; scores must be finite."""
    check = lambda v: None if np.isfinite(v) else f"non-finite score {v!r}"
    return InterpretationData(scores=_load_pair_table(path, check, "interpretation"))


def load_similarity(path) -> SimilarityMatrix:
    """Read cosine-similarity triples; values must lie in [-1, 1]."""
    check = lambda v: None if -1.0 <= v <= 1.0 else f"cosine similarity {v!r} outside [-1, 1]"
    return SimilarityMatrix(similarities=_load_pair_table(path, check, "similarity"))


def save_pair_table(table: dict[tuple[str, str], float], path) -> None:
    lines = [f"{s},{t},{repr(float(v))}" for (s, t), v in table.items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
