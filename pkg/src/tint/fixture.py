"""A synthetic demonstration dataset for the metaphor "butterflies are dancers".

Eight initial images per side with 'woman' shared between them, association
strengths on the 5-point survey scale, interpretation agreements, and
embedding similarities.  All values are invented for this package (chosen so
the two algorithms behave distinguishably: a common high-association
attractor target concentrates the object-based search, while triangle
structure spreads the relation-based one); none of them are measurements.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .category import LatentCategory
from .ingestion import (
    AssociationSurvey,
    InterpretationData,
    SimilarityMatrix,
    save_pair_table,
    save_survey,
    survey_to_latent,
)

TARGET_ROOT = "butterfly"
SOURCE_ROOT = "dancer"
SOURCE_INITIALS = ("woman", "dance", "stage", "music", "costume", "spin", "night", "applause")
TARGET_INITIALS = ("woman", "flower", "sky", "spring", "wings", "flutter", "garden", "light")

LABELS = (
    TARGET_ROOT,
    SOURCE_ROOT,
    "woman",
    "dance", "stage", "music", "costume", "spin", "night", "applause",
    "flower", "sky", "spring", "wings", "flutter", "garden", "light",
)

# Directed association strengths on the 1..5 scale; unlisted pairs are 1.
_STRENGTHS: dict[tuple[str, str], int] = {
    # source root -> its initials
    ("dancer", "woman"): 5, ("dancer", "dance"): 5, ("dancer", "stage"): 5,
    ("dancer", "music"): 4, ("dancer", "costume"): 4, ("dancer", "spin"): 4,
    ("dancer", "night"): 3, ("dancer", "applause"): 4,
    # target root -> its initials
    ("butterfly", "woman"): 3, ("butterfly", "flower"): 5, ("butterfly", "sky"): 4,
    ("butterfly", "spring"): 4, ("butterfly", "wings"): 5, ("butterfly", "flutter"): 5,
    ("butterfly", "garden"): 4, ("butterfly", "light"): 3,
    # the metaphor pair itself
    ("butterfly", "dancer"): 2,
    # cross arrows, source initial -> target initial: 'light' is the common
    # attractor; each row keeps its own weaker secondary targets
    ("woman", "flower"): 2, ("woman", "garden"): 2, ("woman", "light"): 2,
    ("dance", "light"): 5, ("dance", "flutter"): 3, ("dance", "sky"): 2,
    ("stage", "light"): 5, ("stage", "sky"): 3, ("stage", "garden"): 2,
    ("music", "light"): 5, ("music", "spring"): 3, ("music", "flutter"): 2,
    ("costume", "light"): 5, ("costume", "wings"): 3, ("costume", "flower"): 2,
    ("spin", "light"): 5, ("spin", "flutter"): 3, ("spin", "wings"): 2,
    ("night", "light"): 5, ("night", "sky"): 3, ("night", "flower"): 2,
    ("applause", "light"): 5, ("applause", "garden"): 3, ("applause", "spring"): 2,
    # structure among source initials
    ("woman", "dance"): 3, ("dance", "woman"): 2, ("dance", "music"): 4,
    ("music", "dance"): 4, ("dance", "stage"): 3, ("stage", "dance"): 3,
    ("stage", "night"): 2, ("night", "stage"): 3, ("music", "night"): 2,
    ("costume", "stage"): 2, ("spin", "dance"): 3, ("applause", "stage"): 3,
    ("woman", "costume"): 2, ("spin", "music"): 2, ("night", "music"): 2,
    ("applause", "dance"): 2,
    # structure among target initials
    ("flower", "garden"): 4, ("garden", "flower"): 4,
    ("sky", "light"): 3, ("light", "sky"): 3, ("wings", "flutter"): 4,
    ("flutter", "wings"): 3, ("spring", "flower"): 3, ("flower", "spring"): 3,
    ("sky", "spring"): 2, ("garden", "spring"): 2, ("flutter", "sky"): 2,
    ("wings", "sky"): 2,
    # a few associations back to the roots
    ("dance", "dancer"): 4, ("stage", "dancer"): 3, ("flower", "butterfly"): 4,
    ("flutter", "butterfly"): 4, ("woman", "dancer"): 2,
}

# Human agreement with "<target initial> for butterfly is <source initial>
# for dancer", per (source initial, target initial); synthetic.
_INTERPRETATION_ROWS: dict[str, tuple[float, ...]] = {
    "woman":    (4.8, 2.6, 1.9, 2.4, 1.6, 2.1, 2.8, 1.8),
    "dance":    (2.2, 1.7, 2.6, 2.9, 2.4, 4.5, 1.5, 3.1),
    "stage":    (1.9, 1.6, 3.8, 1.8, 2.0, 2.2, 2.7, 4.0),
    "music":    (2.4, 2.1, 2.3, 4.1, 1.7, 3.0, 1.9, 3.3),
    "costume":  (2.7, 3.2, 1.5, 1.9, 4.3, 2.5, 2.0, 2.9),
    "spin":     (1.8, 1.5, 2.2, 1.6, 3.1, 4.4, 1.4, 2.6),
    "night":    (2.1, 2.4, 4.2, 1.7, 1.5, 1.8, 2.3, 3.6),
    "applause": (2.0, 3.0, 1.8, 2.5, 1.6, 2.0, 3.9, 2.7),
}

# Embedding cosine similarity per (source initial, target initial); synthetic,
# high exactly where raw association is strongest (the attractor column and
# the shared image), so association-following searches score as less novel.
_SIMILARITY_ROWS: dict[str, tuple[float, ...]] = {
    "woman":    (0.92, 0.35, 0.28, 0.22, 0.15, 0.18, 0.31, 0.40),
    "dance":    (0.31, 0.12, 0.44, 0.25, 0.33, 0.38, 0.05, 0.78),
    "stage":    (0.22, 0.08, 0.47, 0.10, 0.21, 0.17, 0.26, 0.82),
    "music":    (0.28, 0.15, 0.36, 0.29, 0.12, 0.24, 0.09, 0.75),
    "costume":  (0.33, 0.27, 0.18, 0.07, 0.31, 0.22, 0.16, 0.71),
    "spin":     (0.19, 0.04, 0.29, 0.11, 0.26, 0.35, -0.02, 0.69),
    "night":    (0.24, 0.21, 0.52, 0.06, 0.08, 0.13, 0.19, 0.85),
    "applause": (0.26, 0.18, 0.23, 0.20, 0.10, 0.15, 0.28, 0.73),
}

MANIFEST_FILENAME = "manifest.yaml"

_MANIFEST_TEXT = """\
# Synthetic demonstration run: "butterflies are dancers".
# Paths are relative to this file.
data:
  survey: survey.csv
  interpretation: interpretation.csv
  similarity: similarity.csv
metaphor:
  target_root: butterfly
  source_root: dancer
  source_initials: [woman, dance, stage, music, costume, spin, night, applause]
  target_initials: [woman, flower, sky, spring, wings, flutter, garden, light]
sweep:
  algorithms: [object, relation]
  policies: [hardmax, softmax]
  metrics: [squared]
  beta_grid: "0.1:100:21"
  n_trials: 10000
  master_seed: 20240601
output:
  dir: out
threads: 1
"""


def fixture_survey() -> AssociationSurvey:
    n = len(LABELS)
    idx = {label: k for k, label in enumerate(LABELS)}
    strength = np.ones((n, n), dtype=np.float64)
    np.fill_diagonal(strength, 5)
    for (src, tgt), s in _STRENGTHS.items():
        strength[idx[src], idx[tgt]] = s
    return AssociationSurvey(labels=list(LABELS), strength=strength)


def fixture_latent() -> LatentCategory:
    return survey_to_latent(fixture_survey())


def fixture_interpretation() -> InterpretationData:
    scores = {
        (src, tgt): value
        for src, row in _INTERPRETATION_ROWS.items()
        for tgt, value in zip(TARGET_INITIALS, row)
    }
    return InterpretationData(scores=scores)


def fixture_similarity() -> SimilarityMatrix:
    sims = {
        (src, tgt): value
        for src, row in _SIMILARITY_ROWS.items()
        for tgt, value in zip(TARGET_INITIALS, row)
    }
    return SimilarityMatrix(similarities=sims)


def fixture_manifest_text() -> str:
    return _MANIFEST_TEXT


def write_fixture(directory) -> dict[str, Path]:
    """Materialize the dataset plus a ready-to-run manifest into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "survey": directory / "survey.csv",
        "interpretation": directory / "interpretation.csv",
        "similarity": directory / "similarity.csv",
        "manifest": directory / MANIFEST_FILENAME,
    }
    save_survey(fixture_survey(), paths["survey"])
    save_pair_table(fixture_interpretation().scores, paths["interpretation"])
    save_pair_table(fixture_similarity().similarities, paths["similarity"])
    paths["manifest"].write_text(fixture_manifest_text(), encoding="utf-8", newline="\n")
    return paths


def packaged_fixture_dir() -> Path:
    """Location of the fixture CSVs shipped as package data."""
    return Path(__file__).parent / "data" / "fixture"
