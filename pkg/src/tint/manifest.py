"""The declarative run manifest: one YAML file describing a whole pipeline run.

Schema (all paths relative to the manifest file):

    data:
      survey: survey.csv              # association survey (required)
      interpretation: scores.csv      # human agreement triples (required)
      similarity: sims.csv            # embedding cosine triples (required)
    metaphor:
      target_root: butterfly          # A in "A is B"
      source_root: dancer             # B
      source_initials: [..]           # associates of the source root
      target_initials: [..]           # associates of the target root
    sweep:
      algorithms: [object, relation]
      policies: [hardmax, softmax]
      metrics: [squared]              # squared | absolute
      beta_grid: "0.1:100:21"         # log-spaced; or beta_values: [..]
      n_trials: 10000
      master_seed: 20240601
      softmax_conflict_resolution: false
    output:
      dir: out
    threads: 1

Command-line flags override the corresponding keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import yaml

from .category import LatentCategory
from .errors import InputError
from .ingestion import (
    InterpretationData,
    SimilarityMatrix,
    load_interpretation,
    load_similarity,
    load_survey,
    survey_to_latent,
)
from .simulation import SweepSpec, log_beta_grid


@dataclass
class RunManifest:
    survey_path: Path
    interpretation_path: Path
    similarity_path: Path
    source_root: str
    target_root: str
    source_initials: tuple[str, ...]
    target_initials: tuple[str, ...]
    algorithms: tuple[str, ...]
    policies: tuple[str, ...]
    metrics: tuple[str, ...]
    beta_values: tuple[float, ...]
    n_trials: int
    master_seed: int
    softmax_conflict_resolution: bool
    out_dir: Path
    threads: int
    path: Path

    def sweep_spec(self) -> SweepSpec:
        return SweepSpec(
            source_root=self.source_root,
            target_root=self.target_root,
            source_initials=self.source_initials,
            target_initials=self.target_initials,
            algorithms=self.algorithms,  # type: ignore[arg-type]
            policies=self.policies,  # type: ignore[arg-type]
            metrics=self.metrics,  # type: ignore[arg-type]
            beta_values=self.beta_values,
            n_trials=self.n_trials,
            master_seed=self.master_seed,
            softmax_conflict_resolution=self.softmax_conflict_resolution,
        )


def parse_beta_grid(spec: str) -> tuple[float, ...]:
    """Parse 'low:high:n' into a log-spaced grid ('low:high:n:lin' for linear)."""
    parts = spec.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
        raise ValueError(
            f"beta grid must look like 'low:high:n' or 'low:high:n:lin', got {spec!r}"
        )
    try:
        low, high, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"bad beta grid {spec!r}") from None
    if len(parts) == 4 and parts[3] == "lin":
        if n < 1 or not (0 <= low <= high):
            raise ValueError(f"bad beta grid {spec!r}")
        return tuple(float(b) for b in np.linspace(low, high, n))
    return log_beta_grid(low, high, n)


def _need(mapping: dict, key: str, path: str, section: str):
    if key not in mapping:
        raise InputError(f"manifest is missing '{section}.{key}'", path=path)
    return mapping[key]


def _as_str_list(value, what: str, path: str) -> tuple[str, ...]:
    if not isinstance(value, (list, tuple)) or not all(isinstance(x, str) for x in value):
        raise InputError(f"'{what}' must be a list of strings", path=path)
    return tuple(value)


def load_manifest(manifest_path, **overrides) -> RunManifest:
    """Read and structurally validate a manifest; apply flag overrides.

    Recognized overrides: out_dir, threads, master_seed, beta_grid.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise InputError("manifest file not found", path=str(manifest_path))
    p = str(manifest_path)
    try:
        doc = yaml.safe_load(manifest_path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise InputError(
            f"manifest is not valid YAML: {e}", path=p,
            line=None if mark is None else mark.line + 1,
        ) from None
    if not isinstance(doc, dict):
        raise InputError("manifest must be a YAML mapping", path=p)

    data = _need(doc, "data", p, "")
    metaphor = _need(doc, "metaphor", p, "")
    sweep = _need(doc, "sweep", p, "")
    output = doc.get("output", {})
    for section, name in ((data, "data"), (metaphor, "metaphor"), (sweep, "sweep"), (output, "output")):
        if not isinstance(section, dict):
            raise InputError(f"manifest section '{name}' must be a mapping", path=p)

    base = manifest_path.parent

    if "beta_grid" in overrides and overrides["beta_grid"] is not None:
        betas = parse_beta_grid(overrides["beta_grid"])
    elif "beta_grid" in sweep:
        try:
            betas = parse_beta_grid(str(sweep["beta_grid"]))
        except ValueError as e:
            raise InputError(str(e), path=p) from None
    elif "beta_values" in sweep:
        values = sweep["beta_values"]
        if not isinstance(values, (list, tuple)) or not values:
            raise InputError("'sweep.beta_values' must be a non-empty list", path=p)
        betas = tuple(float(b) for b in values)
    else:
        raise InputError("manifest needs 'sweep.beta_grid' or 'sweep.beta_values'", path=p)

    def override(key, fallback):
        value = overrides.get(key)
        return fallback if value is None else value

    manifest = RunManifest(
        survey_path=base / _need(data, "survey", p, "data"),
        interpretation_path=base / _need(data, "interpretation", p, "data"),
        similarity_path=base / _need(data, "similarity", p, "data"),
        source_root=str(_need(metaphor, "source_root", p, "metaphor")),
        target_root=str(_need(metaphor, "target_root", p, "metaphor")),
        source_initials=_as_str_list(
            _need(metaphor, "source_initials", p, "metaphor"), "metaphor.source_initials", p
        ),
        target_initials=_as_str_list(
            _need(metaphor, "target_initials", p, "metaphor"), "metaphor.target_initials", p
        ),
        algorithms=_as_str_list(
            sweep.get("algorithms", ["object", "relation"]), "sweep.algorithms", p
        ),
        policies=_as_str_list(
            sweep.get("policies", ["hardmax", "softmax"]), "sweep.policies", p
        ),
        metrics=_as_str_list(sweep.get("metrics", ["squared"]), "sweep.metrics", p),
        beta_values=betas,
        n_trials=int(override("n_trials", sweep.get("n_trials", 10_000))),
        master_seed=int(override("master_seed", sweep.get("master_seed", 0))),
        softmax_conflict_resolution=bool(sweep.get("softmax_conflict_resolution", False)),
        out_dir=Path(override("out_dir", base / str(output.get("dir", "out")))),
        threads=int(override("threads", doc.get("threads", 1))),
        path=manifest_path,
    )
    if manifest.threads < 1:
        raise InputError("'threads' must be >= 1", path=p)
    return manifest


@dataclass
class LoadedInputs:
    latent: LatentCategory
    human: InterpretationData
    similarity: SimilarityMatrix
    problems: list[str] = field(default_factory=list)


def load_inputs(manifest: RunManifest) -> LoadedInputs:
    """Load and cross-validate every input the manifest references.

    Raises InputError for unreadable/malformed files; label problems
    (unknown roots/initials, missing coverage) are collected so a validate
    run can report them all at once.
    """
    survey = load_survey(manifest.survey_path)
    latent = survey_to_latent(survey)
    human = load_interpretation(manifest.interpretation_path)
    sim = load_similarity(manifest.similarity_path)

    problems: list[str] = []
    known = set(latent.labels())
    for what, labels in (
        ("source_root", [manifest.source_root]),
        ("target_root", [manifest.target_root]),
        ("source_initials", manifest.source_initials),
        ("target_initials", manifest.target_initials),
    ):
        for label in labels:
            if label not in known:
                problems.append(f"unknown label {label!r} in metaphor.{what}")
    for root, initials, side in (
        (manifest.source_root, manifest.source_initials, "source"),
        (manifest.target_root, manifest.target_initials, "target"),
    ):
        if root in initials:
            problems.append(f"{side} root {root!r} listed among its own initials")
        if len(set(initials)) != len(initials):
            problems.append(f"duplicate {side} initials")
        if not initials:
            problems.append(f"empty {side} initial list")

    if not problems:
        pairs = [(s, t) for s in manifest.source_initials for t in manifest.target_initials]
        for name, table in (("interpretation", human), ("similarity", sim)):
            missing = table.missing_pairs(pairs)
            if missing:
                shown = ", ".join(f"({s!r}, {t!r})" for s, t in missing[:4])
                more = "" if len(missing) <= 4 else f" and {len(missing) - 4} more"
                problems.append(f"{name} data missing pairs: {shown}{more}")
    return LoadedInputs(latent=latent, human=human, similarity=sim, problems=problems)
