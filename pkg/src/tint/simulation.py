"""Monte Carlo ensembles over trials, and sweeps over algorithm configurations.

An ensemble repeats one configuration for n independent trials and aggregates
correspondence counts per (source initial, target initial) pair, plus the
width of every trial's functor.  A sweep runs the Cartesian product of
algorithms x policies x metrics (x beta for softmax).

Execution is chunked: trials are processed in fixed blocks of 1024 by
vectorized kernels, and each block's generator is seeded by a splitmix64 mix
of (master seed, first trial index of the block, configuration digest).  The
block partition depends only on the trial count, so results are bit-identical
for any thread count and across machines.  The kernels implement exactly the
same selection and tie-breaking rules as the per-trial functions in
exploration.py; on deterministic instances (all weights 0/1, hardmax) the two
routes agree trial for trial.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from ._seeds import mix_seeds
from .category import LatentCategory, add_metaphor_arrow, bmf, elicit_initial
from .errors import TintError
from .exploration import (
    ALGORITHMS,
    METRICS,
    Algorithm,
    Metric,
    SelectionPolicy,
    TrialConfig,
    hardmax,
    make_trial_config,
    ordered_pairs,
    softmax,
)

CHUNK = 1024

DEFAULT_BETA_GRID: tuple[float, ...] = tuple(
    float(b) for b in np.logspace(np.log10(0.1), np.log10(100.0), 21)
)


@dataclass
class TrialEnsemble:
    """Aggregated outcomes of n_trials independent trials of one configuration.

    counts[i, j] is how many trials mapped source initial i to target initial
    j (indices follow the config's initial-image order); unmapped[i] counts
    trials in which initial i mapped to nothing, so each row satisfies
    counts.sum() + unmapped == n_trials exactly.  elicitation_counts, when
    tracked, counts the stochastic elicitation events per cross arrow.
    """

    config: TrialConfig
    n_trials: int
    counts: np.ndarray
    per_trial_widths: np.ndarray
    unmapped: np.ndarray
    master_seed: int
    elicitation_counts: np.ndarray | None = None

    @property
    def source_labels(self) -> list[str]:
        return [im.label for im in self.config.source_initials]

    @property
    def target_labels(self) -> list[str]:
        return [im.label for im in self.config.target_initials]

    def mean_width(self) -> float:
        return float(np.mean(self.per_trial_widths))

    def _check_conservation(self) -> None:
        total = self.counts.sum(axis=1) + self.unmapped
        if not np.all(total == self.n_trials):
            raise TintError("ensemble count conservation violated (internal error)")


class _ConfigTables:
    """Per-configuration precomputation shared by every chunk of an ensemble."""

    def __init__(self, latent: LatentCategory, config: TrialConfig):
        self.latent = latent
        self.config = config
        w = latent.weight
        self.src = np.array([im.id for im in config.source_initials], dtype=np.intp)
        self.tgt = np.array([im.id for im in config.target_initials], dtype=np.intp)
        ks, kt = len(self.src), len(self.tgt)
        self.w_cross = w[self.src[:, None], self.tgt[None, :]]

        # replay the deterministic setup once; arrows it elicits stay elicited
        # in every trial, so their effective elicitation probability is 1.
        ec = elicit_initial(
            latent, config.source_root, config.source_initials,
            config.target_root, config.target_initials, mode=config.algorithm,
        )
        add_metaphor_arrow(ec, config.target_root, config.source_root)
        bmf(ec, (config.target_root.id, config.source_root.id))
        self.pre = np.array(
            [[ec.is_elicited(int(i), int(j)) for j in self.tgt] for i in self.src],
            dtype=bool,
        )

        # object-based selection scans targets in image-id order (tie rule)
        self.id_order = np.argsort(self.tgt, kind="stable")
        self.w_cross_id_order = self.w_cross[:, self.id_order]

        if config.algorithm == "relation":
            b, a = config.source_root.id, config.target_root.id
            sp = ordered_pairs(ks)
            tp = ordered_pairs(kt)
            self.sp_p = np.array([p for p, _ in sp], dtype=np.intp)
            self.sp_q = np.array([q for _, q in sp], dtype=np.intp)
            self.tp_i = np.array([i for i, _ in tp], dtype=np.intp)
            self.tp_j = np.array([j for _, j in tp], dtype=np.intp)
            mb1 = w[b, self.src[self.sp_p]]
            mb2 = w[b, self.src[self.sp_q]]
            mb3 = w[self.src[self.sp_p], self.src[self.sp_q]]
            ma1 = w[a, self.tgt[self.tp_i]]
            ma2 = w[a, self.tgt[self.tp_j]]
            ma3 = w[self.tgt[self.tp_i], self.tgt[self.tp_j]]
            d1 = mb1[:, None] - ma1[None, :]
            d2 = mb2[:, None] - ma2[None, :]
            d3 = mb3[:, None] - ma3[None, :]
            if config.metric == "squared":
                self.D = d1 * d1 + d2 * d2 + d3 * d3
            else:
                self.D = np.abs(d1) + np.abs(d2) + np.abs(d3)
            # which ordered source pairs mention each source initial, and on
            # which side; ascending pair index keeps the tie rule intact
            self.pairs_of = []
            self.side_of = []
            for s in range(ks):
                idxs = [k for k, (p, q) in enumerate(sp) if p == s or q == s]
                self.pairs_of.append(np.array(idxs, dtype=np.intp))
                self.side_of.append(
                    np.array([0 if sp[k][0] == s else 1 for k in idxs], dtype=np.int8)
                )


@dataclass
class _ChunkResult:
    counts: np.ndarray
    widths: np.ndarray
    unmapped: np.ndarray
    elicitations: np.ndarray | None


def _elicitation_mask(tables: _ConfigTables, rng: np.random.Generator, n: int):
    """One uniform per cross arrow per trial: the Bernoulli elicitation events."""
    u = rng.random((n, *tables.w_cross.shape))
    bern = u < tables.w_cross
    return bern, bern | tables.pre


def _object_chunk(
    tables: _ConfigTables, rng: np.random.Generator, n: int, track: bool
) -> _ChunkResult:
    policy = tables.config.policy
    ks, kt = tables.w_cross.shape
    bern, elicited = _elicitation_mask(tables, rng, n)

    es = elicited[:, :, tables.id_order]
    if policy.kind == "hardmax":
        scores = np.where(es, tables.w_cross_id_order[None], -np.inf)
    else:
        gumbel = rng.gumbel(size=(n, ks, kt))
        scores = np.where(es, policy.beta * tables.w_cross_id_order[None] + gumbel, -np.inf)
    sel = tables.id_order[np.argmax(scores, axis=2)]  # config-order target index
    mapped = es.any(axis=2)

    counts = np.zeros((ks, kt), dtype=np.int64)
    hit = np.zeros((n, kt), dtype=bool)
    rows = np.arange(n)
    for s in range(ks):
        m = mapped[:, s]
        counts[s] = np.bincount(sel[m, s], minlength=kt)
        hit[rows[m], sel[m, s]] = True
    return _ChunkResult(
        counts=counts,
        widths=hit.sum(axis=1).astype(np.int64),
        unmapped=(~mapped).sum(axis=0).astype(np.int64),
        elicitations=bern.sum(axis=0).astype(np.int64) if track else None,
    )


def _relation_chunk(
    tables: _ConfigTables, rng: np.random.Generator, n: int, track: bool
) -> _ChunkResult:
    policy = tables.config.policy
    ks, kt = tables.w_cross.shape
    bern, elicited = _elicitation_mask(tables, rng, n)

    if len(tables.tp_i) == 0:  # a lone target initial admits no triangles
        return _ChunkResult(
            counts=np.zeros((ks, kt), dtype=np.int64),
            widths=np.zeros(n, dtype=np.int64),
            unmapped=np.full(ks, n, dtype=np.int64),
            elicitations=bern.sum(axis=0).astype(np.int64) if track else None,
        )

    # candidate target triangles per (trial, source pair)
    cand = (
        elicited[:, tables.sp_p[:, None], tables.tp_i[None, :]]
        & elicited[:, tables.sp_q[:, None], tables.tp_j[None, :]]
    )
    n_sp = len(tables.sp_p)
    if policy.kind == "hardmax":
        scores = np.where(cand, tables.D[None], np.inf)
        sel_tp = np.argmin(scores, axis=2)  # first minimum: lowest pair index
    else:
        gumbel = rng.gumbel(size=cand.shape)
        scores = np.where(cand, -policy.beta * tables.D[None] + gumbel, -np.inf)
        sel_tp = np.argmax(scores, axis=2)
    has_cand = cand.any(axis=2)
    d_sel = tables.D[np.arange(n_sp)[None, :], sel_tp]
    t_for_p = tables.tp_i[sel_tp]
    t_for_q = tables.tp_j[sel_tp]

    stochastic_conflict = (
        tables.config.softmax_conflict_resolution and policy.kind == "softmax"
    )
    counts = np.zeros((ks, kt), dtype=np.int64)
    unmapped = np.zeros(ks, dtype=np.int64)
    hit = np.zeros((n, kt), dtype=bool)
    rows = np.arange(n)
    for s in range(ks):
        idxs = tables.pairs_of[s]
        side = tables.side_of[s]
        valid = has_cand[:, idxs]
        if stochastic_conflict:
            gumbel = rng.gumbel(size=(n, len(idxs)))
            sc = np.where(valid, -policy.beta * d_sel[:, idxs] + gumbel, -np.inf)
            win = np.argmax(sc, axis=1)
        else:
            dm = np.where(valid, d_sel[:, idxs], np.inf)
            win = np.argmin(dm, axis=1)  # smallest d, ties to lowest pair index
        mapped = valid.any(axis=1)
        win_sp = idxs[win]
        tgt_sel = np.where(
            side[win] == 0, t_for_p[rows, win_sp], t_for_q[rows, win_sp]
        )
        counts[s] = np.bincount(tgt_sel[mapped], minlength=kt)
        unmapped[s] = int((~mapped).sum())
        hit[rows[mapped], tgt_sel[mapped]] = True
    return _ChunkResult(
        counts=counts,
        widths=hit.sum(axis=1).astype(np.int64),
        unmapped=unmapped,
        elicitations=bern.sum(axis=0).astype(np.int64) if track else None,
    )


def run_ensemble(
    latent: LatentCategory,
    config: TrialConfig,
    n_trials: int,
    master_seed: int,
    *,
    threads: int = 1,
    track_elicitation: bool = False,
) -> TrialEnsemble:
    """Run n_trials independent trials of one configuration and aggregate.

    Deterministic for a given (config point, n_trials, master_seed): the
    chunk partition and per-chunk seeds do not depend on thread count or
    scheduling, and aggregation is exact integer arithmetic.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    tables = _ConfigTables(latent, config)
    kernel = _object_chunk if config.algorithm == "object" else _relation_chunk
    digest = config.digest()

    starts = list(range(0, n_trials, CHUNK))

    def run_chunk(start: int) -> _ChunkResult:
        count = min(CHUNK, n_trials - start)
        rng = np.random.default_rng(np.random.PCG64(mix_seeds(master_seed, start, digest)))
        return kernel(tables, rng, count, track_elicitation)

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, starts))
    else:
        results = [run_chunk(s) for s in starts]

    counts = sum(r.counts for r in results)
    unmapped = sum(r.unmapped for r in results)
    widths = np.concatenate([r.widths for r in results])
    elicitations = sum(r.elicitations for r in results) if track_elicitation else None
    ensemble = TrialEnsemble(
        config=dataclasses.replace(config, rng_seed=None),
        n_trials=n_trials,
        counts=counts,
        per_trial_widths=widths,
        unmapped=unmapped,
        master_seed=master_seed,
        elicitation_counts=elicitations,
    )
    ensemble._check_conservation()
    return ensemble


PolicyKind = Literal["hardmax", "softmax"]


@dataclass(frozen=True)
class SweepSpec:
    """The grid of configurations a sweep explores, plus the metaphor setup.

    hardmax ignores beta: each (algorithm, metric) gets exactly one hardmax
    ensemble regardless of how many beta values are listed.
    """

    source_root: str
    target_root: str
    source_initials: tuple[str, ...]
    target_initials: tuple[str, ...]
    algorithms: tuple[Algorithm, ...] = ("object", "relation")
    policies: tuple[PolicyKind, ...] = ("hardmax", "softmax")
    metrics: tuple[Metric, ...] = ("squared",)
    beta_values: tuple[float, ...] = DEFAULT_BETA_GRID
    n_trials: int = 10_000
    master_seed: int = 0
    softmax_conflict_resolution: bool = False

    def __post_init__(self):
        if not self.algorithms or not self.policies or not self.metrics:
            raise ValueError("algorithms, policies, and metrics must be non-empty")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        for p in self.policies:
            if p not in ("hardmax", "softmax"):
                raise ValueError(f"unknown policy {p!r}")
        for m in self.metrics:
            if m not in METRICS:
                raise ValueError(f"unknown metric {m!r}")
        if "softmax" in self.policies:
            if not self.beta_values:
                raise ValueError("softmax sweeps need at least one beta value")
            bad = [b for b in self.beta_values if not (np.isfinite(b) and b >= 0)]
            if bad:
                raise ValueError(f"beta values must be finite and >= 0, got {bad}")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")

    def policies_for(self) -> list[SelectionPolicy]:
        out: list[SelectionPolicy] = []
        for kind in self.policies:
            if kind == "hardmax":
                out.append(hardmax())
            else:
                out.extend(softmax(b) for b in self.beta_values)
        return out


def sweep_points(latent: LatentCategory, spec: SweepSpec) -> list[TrialConfig]:
    """The configurations of a sweep, in deterministic output order."""
    points = []
    for algorithm in spec.algorithms:
        for policy in spec.policies_for():
            for metric in spec.metrics:
                points.append(
                    make_trial_config(
                        latent,
                        algorithm=algorithm,
                        policy=policy,
                        metric=metric,
                        source_root=spec.source_root,
                        target_root=spec.target_root,
                        source_initials=spec.source_initials,
                        target_initials=spec.target_initials,
                        softmax_conflict_resolution=spec.softmax_conflict_resolution,
                    )
                )
    return points


def run_sweep(
    latent: LatentCategory,
    spec: SweepSpec,
    *,
    threads: int = 1,
    track_elicitation: bool = False,
) -> list[tuple[TrialConfig, TrialEnsemble]]:
    """Run one ensemble per configuration point; deterministic given master_seed."""
    out = []
    for config in sweep_points(latent, spec):
        ensemble = run_ensemble(
            latent,
            config,
            spec.n_trials,
            spec.master_seed,
            threads=threads,
            track_elicitation=track_elicitation,
        )
        out.append((config, ensemble))
    return out


def log_beta_grid(low: float, high: float, n: int) -> tuple[float, ...]:
    """n log-spaced beta values from low to high inclusive."""
    if not (0 < low <= high) or n < 1:
        raise ValueError("need 0 < low <= high and n >= 1")
    if n == 1:
        return (float(low),)
    return tuple(float(b) for b in np.logspace(np.log10(low), np.log10(high), n))
