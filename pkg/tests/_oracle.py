"""Brute-force reference for deterministic (all-0/1-weight, hardmax) instances.

Written independently of the engine on purpose: plain nested loops over the
raw weight matrix, no shared helpers, so it can arbitrate both the per-trial
functions and the vectorized ensemble kernels.  With weights in {0, 1},
elicitation is deterministic, so one enumeration decides the unique outcome.
"""

from __future__ import annotations


def _cross_elicited(w, algorithm, bi, aj, src_ids, tgt_ids):
    """Is the cross arrow bi -> aj elicited, given the deterministic setup?"""
    if bi == aj:
        return True  # identity arrow
    if algorithm == "relation":
        # setup force-elicits all ordered pairs within each side's initials
        if bi in src_ids and aj in src_ids:
            return True
        if bi in tgt_ids and aj in tgt_ids:
            return True
    return w[bi][aj] == 1.0


def oracle_object_map(w, a, b, src_ids, tgt_ids):
    """Expected object-based hardmax mapping: argmax weight, ties to lowest id."""
    mapping = {}
    for bi in src_ids:
        best_id = None
        best_mu = None
        for aj in sorted(tgt_ids):
            if not _cross_elicited(w, "object", bi, aj, src_ids, tgt_ids):
                continue
            mu = w[bi][aj]
            if best_mu is None or mu > best_mu:
                best_mu, best_id = mu, aj
        if best_id is not None:
            mapping[bi] = best_id
    return mapping


def oracle_relation_map(w, a, b, src_ids, tgt_ids, metric="squared"):
    """Expected relation-based hardmax mapping via exhaustive enumeration."""
    src_pairs = [(p, q) for p in src_ids for q in src_ids if p != q]
    tgt_pairs = [(i, j) for i in tgt_ids for j in tgt_ids if i != j]

    tentative = {}  # source id -> list of (d, pair_index, target id)
    for pair_idx, (bp, bq) in enumerate(src_pairs):
        best = None  # (d, tp_index, ai, aj)
        for tp_idx, (ai, aj) in enumerate(tgt_pairs):
            if not _cross_elicited(w, "relation", bp, ai, src_ids, tgt_ids):
                continue
            if not _cross_elicited(w, "relation", bq, aj, src_ids, tgt_ids):
                continue
            d = 0.0
            for x, y in ((w[b][bp], w[a][ai]), (w[b][bq], w[a][aj]), (w[bp][bq], w[ai][aj])):
                d += (x - y) ** 2 if metric == "squared" else abs(x - y)
            if best is None or d < best[0]:
                best = (d, tp_idx, ai, aj)
        if best is not None:
            d, _, ai, aj = best
            tentative.setdefault(bp, []).append((d, pair_idx, ai))
            tentative.setdefault(bq, []).append((d, pair_idx, aj))

    mapping = {}
    for bi in src_ids:
        best = None  # (d, pair_idx, target)
        for d, pair_idx, tgt in tentative.get(bi, []):
            if best is None or d < best[0] or (d == best[0] and pair_idx < best[1]):
                best = (d, pair_idx, tgt)
        if best is not None:
            mapping[bi] = best[2]
    return mapping
