"""The two correspondence-search algorithms and their selection policies.

Both algorithms try to turn the trivial composition functor into a more
informative one by finding, for source coslice objects, target coslice
objects witnessed by an elicited cross arrow.  The object-based search treats
each source initial independently and follows raw association strength.  The
relation-based search compares triangle structures: for every ordered pair of
source initials it looks for the target triangle whose three weights are
closest, so the local shape of meaning matters, not just single arrows.

Selection is pluggable: hardmax takes the deterministic optimum (ties broken
by lowest id), softmax samples with probability proportional to
exp(beta * score) (max direction) or exp(-beta * score) (min direction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from ._seeds import stable_digest
from .category import (
    Correspondence,
    ElicitedCategory,
    FunctorMap,
    Image,
    ImageRef,
    LatentCategory,
    add_metaphor_arrow,
    bmf,
    elicit_initial,
)

Algorithm = Literal["object", "relation"]
Metric = Literal["squared", "absolute"]
Direction = Literal["max", "min"]

ALGORITHMS: tuple[Algorithm, ...] = ("object", "relation")
METRICS: tuple[Metric, ...] = ("squared", "absolute")


@dataclass(frozen=True)
class SelectionPolicy:
    """hardmax = deterministic argmax/argmin; softmax = Boltzmann sampling."""

    kind: Literal["hardmax", "softmax"]
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in ("hardmax", "softmax"):
            raise ValueError(f"unknown selection policy {self.kind!r}")
        if self.kind == "softmax":
            if self.beta is None or not np.isfinite(self.beta) or self.beta < 0:
                raise ValueError("softmax needs a finite inverse temperature beta >= 0")


def hardmax() -> SelectionPolicy:
    return SelectionPolicy("hardmax")


def softmax(beta: float) -> SelectionPolicy:
    return SelectionPolicy("softmax", float(beta))


def triangle_distance(mu_src, mu_tgt, metric: Metric = "squared") -> float:
    """Structure distance between two triangles, component by component.

    Each argument is the weight triple (root arrow 1, root arrow 2,
    connecting arrow).  Squared metric sums squared differences; absolute
    sums absolute differences.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown distance metric {metric!r}")
    total = 0.0
    for b, a in zip(mu_src, mu_tgt, strict=True):
        diff = b - a
        total += diff * diff if metric == "squared" else abs(diff)
    return total


def select(
    candidates: Sequence[tuple[int, float]],
    policy: SelectionPolicy,
    direction: Direction,
    rng: np.random.Generator | None = None,
    size: int | None = None,
):
    """Pick one candidate id (or ``size`` ids) from (id, score) pairs.

    hardmax returns the argmax (direction='max') or argmin ('min'), ties
    broken by lowest id.  softmax samples ids with probability proportional
    to exp(beta*score) for 'max' and exp(-beta*score) for 'min'; beta=0 is
    uniform over the candidates.
    """
    if len(candidates) == 0:
        raise ValueError("cannot select from an empty candidate list")
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    ids = [int(c) for c, _ in candidates]
    scores = np.asarray([s for _, s in candidates], dtype=np.float64)
    if not np.all(np.isfinite(scores)):
        raise ValueError("candidate scores must be finite")

    if policy.kind == "hardmax":
        if direction == "max":
            k = min(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
        else:
            k = min(range(len(ids)), key=lambda i: (scores[i], ids[i]))
        if size is None:
            return ids[k]
        return np.full(size, ids[k], dtype=np.int64)

    if rng is None:
        raise ValueError("softmax selection needs a random generator")
    sign = 1.0 if direction == "max" else -1.0
    logits = sign * policy.beta * scores
    logits -= logits.max()
    probs = np.exp(logits)
    probs /= probs.sum()
    idx = rng.choice(len(ids), size=size, p=probs)
    arr = np.asarray(ids, dtype=np.int64)
    if size is None:
        return int(arr[idx])
    return arr[idx]


@dataclass(frozen=True)
class TrialConfig:
    """Everything one trial needs besides the latent category itself."""

    algorithm: Algorithm
    policy: SelectionPolicy
    metric: Metric
    source_root: Image
    target_root: Image
    source_initials: tuple[Image, ...]
    target_initials: tuple[Image, ...]
    rng_seed: int | None = None
    softmax_conflict_resolution: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown distance metric {self.metric!r}")
        if not self.source_initials or not self.target_initials:
            raise ValueError("both initial-image lists must be non-empty")
        if self.algorithm == "relation" and len(self.source_initials) < 2:
            raise ValueError("relation-based search needs at least 2 source initials")

    def point_key(self) -> str:
        """Canonical string identifying the configuration point (seed excluded)."""
        return "|".join(
            [
                self.algorithm,
                self.policy.kind,
                "" if self.policy.beta is None else repr(float(self.policy.beta)),
                self.metric,
                self.source_root.label,
                self.target_root.label,
                ",".join(im.label for im in self.source_initials),
                ",".join(im.label for im in self.target_initials),
                "scr" if self.softmax_conflict_resolution else "",
            ]
        )

    def digest(self) -> int:
        return stable_digest(self.point_key())


def make_trial_config(
    latent: LatentCategory,
    algorithm: Algorithm,
    policy: SelectionPolicy,
    source_root: ImageRef,
    target_root: ImageRef,
    source_initials: Sequence[ImageRef],
    target_initials: Sequence[ImageRef],
    metric: Metric = "squared",
    rng_seed: int | None = None,
    softmax_conflict_resolution: bool = False,
) -> TrialConfig:
    """Resolve label/id references against the latent category and validate."""
    return TrialConfig(
        algorithm=algorithm,
        policy=policy,
        metric=metric,
        source_root=latent.image(source_root),
        target_root=latent.image(target_root),
        source_initials=tuple(latent.image(x) for x in source_initials),
        target_initials=tuple(latent.image(x) for x in target_initials),
        rng_seed=rng_seed,
        softmax_conflict_resolution=softmax_conflict_resolution,
    )


def ordered_pairs(k: int) -> list[tuple[int, int]]:
    """All ordered index pairs (p, q), p != q, in enumeration order."""
    return [(p, q) for p in range(k) for q in range(k) if p != q]


class _TrialState:
    """Per-trial elicitation state: one Bernoulli draw per arrow, cached.

    Arrows the setup already elicited count as fired without consuming
    randomness; a drawn arrow that fires is added to the elicited category.
    """

    def __init__(self, elicited: ElicitedCategory, rng: np.random.Generator):
        self.elicited = elicited
        self.rng = rng
        self._drawn: dict[tuple[int, int], bool] = {}

    def consult(self, i: int, j: int) -> bool:
        if self.elicited.is_elicited(i, j):
            return True
        key = (i, j)
        if key not in self._drawn:
            fired = bool(self.rng.random() < self.elicited.base.weight[i, j])
            self._drawn[key] = fired
            if fired:
                self.elicited.elicit(i, j)
        return self._drawn[key]


@dataclass
class TrialOutcome:
    """One trial's functor together with the elicited category that produced it."""

    functor: FunctorMap
    elicited: ElicitedCategory
    base_functor: FunctorMap
    source_pairs_searched: int = 0

    def unmapped(self, config: TrialConfig) -> list[Image]:
        return [im for im in config.source_initials if im.id not in self.functor.object_map]


def run_trial(
    latent: LatentCategory, config: TrialConfig, rng: np.random.Generator | None = None
) -> TrialOutcome:
    """Run one full comprehension episode and return its functor and state.

    Pipeline: deterministic initial elicitation, metaphor arrow, composition
    functor, then the configured search.  With the same config (seed
    included) the outcome is identical.
    """
    if rng is None:
        if config.rng_seed is None:
            raise ValueError("run_trial needs either an rng or a config with rng_seed set")
        rng = np.random.default_rng(np.random.PCG64(config.rng_seed))

    ec = elicit_initial(
        latent,
        config.source_root,
        config.source_initials,
        config.target_root,
        config.target_initials,
        mode=config.algorithm,
    )
    add_metaphor_arrow(ec, config.target_root, config.source_root)
    base = bmf(ec, (config.target_root.id, config.source_root.id))
    state = _TrialState(ec, rng)

    if config.algorithm == "object":
        fmap, searched = _object_search(latent, config, state)
    else:
        fmap, searched = _relation_search(latent, config, state)
    return TrialOutcome(functor=fmap, elicited=ec, base_functor=base, source_pairs_searched=searched)


def _object_search(
    latent: LatentCategory, config: TrialConfig, state: _TrialState
) -> tuple[FunctorMap, int]:
    w = latent.weight
    fmap = FunctorMap(source_root=config.source_root, target_root=config.target_root)
    for bi in config.source_initials:
        candidates = [
            (aj.id, float(w[bi.id, aj.id]))
            for aj in config.target_initials
            if state.consult(bi.id, aj.id)
        ]
        if not candidates:
            continue
        winner = select(candidates, config.policy, "max", state.rng)
        aj = latent.images[winner]
        fmap.object_map[bi.id] = aj.id
        fmap.witnesses[bi.id] = (bi.id, aj.id)
        fmap.correspondences[bi.id] = Correspondence(
            source_initial=bi,
            target_initial=aj,
            witness_weight=float(w[bi.id, aj.id]),
            via="object",
        )
    return fmap, 0


def _relation_search(
    latent: LatentCategory, config: TrialConfig, state: _TrialState
) -> tuple[FunctorMap, int]:
    w = latent.weight
    b = config.source_root.id
    a = config.target_root.id
    src = [im.id for im in config.source_initials]
    tgt = [im.id for im in config.target_initials]
    src_pairs = ordered_pairs(len(src))
    tgt_pairs = ordered_pairs(len(tgt))

    # tentative correspondences per source initial: (d, pair index, target id)
    tentative: dict[int, list[tuple[float, int, int]]] = {}
    for pair_idx, (p, q) in enumerate(src_pairs):
        bp, bq = src[p], src[q]
        mu_src = (w[b, bp], w[b, bq], w[bp, bq])
        candidates = []
        dvals = {}
        for tp_idx, (i, j) in enumerate(tgt_pairs):
            ai, aj = tgt[i], tgt[j]
            if state.consult(bp, ai) and state.consult(bq, aj):
                d = triangle_distance(mu_src, (w[a, ai], w[a, aj], w[ai, aj]), config.metric)
                candidates.append((tp_idx, d))
                dvals[tp_idx] = d
        if not candidates:
            continue
        win = select(candidates, config.policy, "min", state.rng)
        i, j = tgt_pairs[win]
        d_win = dvals[win]
        tentative.setdefault(bp, []).append((d_win, pair_idx, tgt[i]))
        tentative.setdefault(bq, []).append((d_win, pair_idx, tgt[j]))

    fmap = FunctorMap(source_root=config.source_root, target_root=config.target_root)
    resolve_stochastically = (
        config.softmax_conflict_resolution and config.policy.kind == "softmax"
    )
    for bi_img in config.source_initials:
        bi = bi_img.id
        tents = tentative.get(bi)
        if not tents:
            continue
        by_pair = {pair_idx: (d, aj) for d, pair_idx, aj in tents}
        cands = [(pair_idx, d) for d, pair_idx, _ in tents]
        policy = config.policy if resolve_stochastically else hardmax()
        win_pair = select(cands, policy, "min", state.rng)
        d, aj = by_pair[win_pair]
        aj_img = latent.images[aj]
        fmap.object_map[bi] = aj
        fmap.witnesses[bi] = (bi, aj)
        fmap.correspondences[bi] = Correspondence(
            source_initial=bi_img,
            target_initial=aj_img,
            witness_weight=float(w[bi, aj]),
            via="triangle",
            distance=d,
            pair_index=win_pair,
        )
    return fmap, len(src_pairs)


def explore_object_based(
    latent: LatentCategory, config: TrialConfig, rng: np.random.Generator | None = None
) -> FunctorMap:
    """One object-based trial; see run_trial for the full pipeline."""
    if config.algorithm != "object":
        raise ValueError("config.algorithm must be 'object'")
    return run_trial(latent, config, rng).functor


def explore_relation_based(
    latent: LatentCategory, config: TrialConfig, rng: np.random.Generator | None = None
) -> FunctorMap:
    """One relation-based trial; see run_trial for the full pipeline."""
    if config.algorithm != "relation":
        raise ValueError("config.algorithm must be 'relation'")
    return run_trial(latent, config, rng).functor
