import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tint import (
    FunctorMap,
    InterpretationData,
    SimilarityMatrix,
    TrialEnsemble,
    evaluate_ensemble,
    data_fit,
    hardmax,
    make_trial_config,
    mean_width,
    novelty,
    per_source_data_fit,
    width,
)

from conftest import tiny_latent


def make_ensemble(counts, src=("b1",), tgt=("a1", "a2", "a3")):
    """A TrialEnsemble with prescribed counts over a throwaway latent."""
    labels = ["A", "B", *src, *[t for t in tgt if t not in src]]
    latent = tiny_latent(labels, default=0.4)
    cfg = make_trial_config(latent, "object", hardmax(), "B", "A", src, tgt)
    counts = np.asarray(counts, dtype=np.int64)
    n = int(counts.sum(axis=1).max()) if counts.size else 1
    return TrialEnsemble(
        config=cfg,
        n_trials=n,
        counts=counts,
        per_trial_widths=np.zeros(n, dtype=np.int64),
        unmapped=n - counts.sum(axis=1),
        master_seed=0,
    )


def table(kind, rows, src, tgt):
    values = {
        (s, t): float(rows[i][j]) for i, s in enumerate(src) for j, t in enumerate(tgt)
    }
    return InterpretationData(scores=values) if kind == "human" else SimilarityMatrix(
        similarities=values
    )


class TestDataFit:
    def test_identical_ranking_gives_one(self):
        ens = make_ensemble([[50, 30, 10]])
        human = table("human", [[5.0, 3.0, 1.0]], ("b1",), ("a1", "a2", "a3"))
        assert data_fit(ens, human) == pytest.approx(1.0)

    def test_reversed_ranking_gives_minus_one(self):
        ens = make_ensemble([[50, 30, 10]])
        human = table("human", [[1.0, 2.0, 3.0]], ("b1",), ("a1", "a2", "a3"))
        assert data_fit(ens, human) == pytest.approx(-1.0)

    def test_worked_three_target_example(self):
        # counts (5,3,1) against human (1.0,3.0,2.0): ranks (3,2,1) vs (1,3,2),
        # sum of squared rank differences 6, rho = 1 - 6*6/(3*8) = -0.5
        ens = make_ensemble([[5, 3, 1]])
        human = table("human", [[1.0, 3.0, 2.0]], ("b1",), ("a1", "a2", "a3"))
        assert data_fit(ens, human) == pytest.approx(-0.5)

    def test_mean_over_source_initials(self):
        ens = make_ensemble([[50, 30, 10], [10, 30, 50]], src=("b1", "b2"))
        human = table(
            "human", [[5.0, 3.0, 1.0], [5.0, 3.0, 1.0]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        assert data_fit(ens, human) == pytest.approx((1.0 - 1.0) / 2)

    def test_constant_side_excluded_and_reported(self):
        ens = make_ensemble([[20, 20, 20], [10, 30, 50]], src=("b1", "b2"))
        human = table(
            "human", [[5.0, 3.0, 1.0], [1.0, 3.0, 5.0]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        per = per_source_data_fit(ens, human)
        assert per["b1"] is None and per["b2"] == pytest.approx(1.0)
        assert data_fit(ens, human) == pytest.approx(1.0)

    def test_all_constant_gives_nan(self):
        ens = make_ensemble([[20, 20, 20]])
        human = table("human", [[1.0, 2.0, 3.0]], ("b1",), ("a1", "a2", "a3"))
        assert math.isnan(data_fit(ens, human))

    def test_missing_pair_rejected(self):
        ens = make_ensemble([[5, 3, 1]])
        human = InterpretationData(scores={("b1", "a1"): 1.0})
        with pytest.raises(ValueError, match="missing"):
            data_fit(ens, human)

    def test_pooled_flag(self):
        ens = make_ensemble([[50, 30, 10], [10, 30, 50]], src=("b1", "b2"))
        human = table(
            "human", [[5.0, 3.0, 1.0], [1.0, 3.0, 5.0]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        assert data_fit(ens, human, pooled=True) == pytest.approx(1.0)

    def test_kendall_flag(self):
        ens = make_ensemble([[5, 3, 1]])
        human = table("human", [[5.0, 3.0, 1.0]], ("b1",), ("a1", "a2", "a3"))
        assert data_fit(ens, human, method="kendall") == pytest.approx(1.0)

    @settings(max_examples=40, deadline=None)
    @given(
        counts=st.lists(st.integers(0, 100), min_size=3, max_size=3),
        scores=st.lists(st.floats(0.1, 10.0, allow_nan=False), min_size=3, max_size=3),
        scale=st.floats(0.5, 4.0, allow_nan=False),
    )
    def test_scale_invariance_under_monotone_transforms(self, counts, scores, scale):
        src, tgt = ("b1",), ("a1", "a2", "a3")
        ens1 = make_ensemble([counts])
        # x -> x^3 preserves order (and ties) of non-negative counts
        ens2 = make_ensemble([[c**3 for c in counts]])
        h1 = table("human", [scores], src, tgt)
        h2 = table("human", [[math.exp(scale * s) for s in scores]], src, tgt)
        f11, f22 = data_fit(ens1, h1), data_fit(ens2, h2)
        assert (math.isnan(f11) and math.isnan(f22)) or f11 == pytest.approx(f22)


class TestWidth:
    def _functor(self, mapping):
        latent = tiny_latent(["A", "B", *(f"x{i}" for i in range(16))], default=0.3)
        return FunctorMap(
            source_root=latent.image("B"),
            target_root=latent.image("A"),
            object_map=mapping,
        )

    def test_injective_eight_mapping_has_width_eight(self):
        assert width(self._functor({i: i + 8 for i in range(8)})) == 8

    def test_empty_functor_has_width_zero(self):
        assert width(self._functor({})) == 0

    def test_collapsed_mapping_has_width_one(self):
        assert width(self._functor({2: 9, 3: 9, 4: 9})) == 1

    def test_mean_width_is_average_of_trials(self):
        ens = make_ensemble([[1, 0, 0]])
        ens.per_trial_widths = np.array([0, 1, 2, 3])
        assert mean_width(ens) == pytest.approx(1.5)


class TestNovelty:
    def test_counts_on_high_similarity_pairs_not_novel(self):
        # counts and similarities are co-monotone over all six pairs
        ens = make_ensemble([[90, 5, 3], [4, 88, 2]], src=("b1", "b2"))
        sim = table(
            "sim", [[0.9, 0.5, 0.2], [0.3, 0.85, 0.1]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        assert novelty(ens, sim) == pytest.approx(1.0)

    def test_worked_four_pair_example(self):
        # counts (10,0,0,0) vs sims (0.1,0.9,0.8,0.7): count ranks (4,2,2,2),
        # sim ranks (1,4,3,2) give rho = -3/sqrt(15)
        ens = make_ensemble([[10, 0, 0, 0]], tgt=("a1", "a2", "a3", "a4"))
        sim = table("sim", [[0.1, 0.9, 0.8, 0.7]], ("b1",), ("a1", "a2", "a3", "a4"))
        assert novelty(ens, sim) == pytest.approx(-3 / math.sqrt(15))
        assert novelty(ens, sim) < 0

    def test_uniform_counts_undefined(self):
        ens = make_ensemble([[10, 10, 10]])
        sim = table("sim", [[0.1, 0.5, 0.9]], ("b1",), ("a1", "a2", "a3"))
        assert math.isnan(novelty(ens, sim))

    def test_missing_pair_rejected(self):
        ens = make_ensemble([[10, 0, 0]])
        with pytest.raises(ValueError, match="missing"):
            novelty(ens, SimilarityMatrix(similarities={}))

    def test_pearson_flag(self):
        ens = make_ensemble([[10, 5, 1]])
        sim = table("sim", [[0.9, 0.5, 0.1]], ("b1",), ("a1", "a2", "a3"))
        assert novelty(ens, sim, method="pearson") > 0.9


class TestEvaluateEnsemble:
    def test_report_fields(self):
        ens = make_ensemble([[50, 30, 10], [20, 20, 20]], src=("b1", "b2"))
        human = table(
            "human", [[5.0, 3.0, 1.0], [1.0, 2.0, 3.0]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        sim = table(
            "sim", [[0.9, 0.5, 0.1], [0.2, 0.4, 0.6]], ("b1", "b2"), ("a1", "a2", "a3")
        )
        report = evaluate_ensemble(ens, human, sim)
        assert report.data_fit == pytest.approx(1.0)
        assert report.data_fit_excluded == ["b2"]
        assert -1.0 <= report.novelty <= 1.0
        assert report.mean_width == mean_width(ens)
