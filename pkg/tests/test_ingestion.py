import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tint import (
    AssociationSurvey,
    InputError,
    load_interpretation,
    load_similarity,
    load_survey,
    save_survey,
    strength_to_weight,
    survey_to_latent,
)
from tint.ingestion import save_pair_table


class TestStrengthToWeight:
    def test_scale_points_map_exactly(self):
        assert [strength_to_weight(s) for s in (1, 2, 3, 4, 5)] == [
            0.05, 0.275, 0.50, 0.725, 0.95,
        ]

    @pytest.mark.parametrize("bad", [0, 6, 2.5, -1])
    def test_strict_rejects_off_scale(self, bad):
        with pytest.raises(ValueError):
            strength_to_weight(bad)

    def test_lenient_accepts_reals_in_range(self):
        assert strength_to_weight(2.5, strict=False) == pytest.approx(0.3875)
        with pytest.raises(ValueError):
            strength_to_weight(5.2, strict=False)
        with pytest.raises(ValueError):
            strength_to_weight(float("nan"), strict=False)

    @given(st.floats(1.0, 5.0, allow_nan=False))
    def test_range_and_monotonicity(self, s):
        mu = strength_to_weight(s, strict=False)
        assert 0.05 <= mu <= 0.95
        if s + 1e-6 <= 5.0:
            assert strength_to_weight(s + 1e-6, strict=False) > mu


def _write(tmp_path, name, text, encoding="utf-8"):
    p = tmp_path / name
    p.write_bytes(text.encode(encoding) if isinstance(text, str) else text)
    return p


GOOD_SURVEY = "label,x,y\nx,1,3\ny,5,2\n"


class TestLoadSurvey:
    def test_round_trip_values(self, tmp_path):
        survey = load_survey(_write(tmp_path, "s.csv", GOOD_SURVEY))
        assert survey.labels == ["x", "y"]
        assert survey.strength.tolist() == [[1, 3], [5, 2]]

    def test_all_ones_gives_low_uniform_weights(self, tmp_path):
        text = "label,x,y,z\nx,1,1,1\ny,1,1,1\nz,1,1,1\n"
        latent = survey_to_latent(load_survey(_write(tmp_path, "s.csv", text)))
        off = ~np.eye(3, dtype=bool)
        assert np.all(latent.weight[off] == 0.05)

    def test_diagonal_weight_is_one_even_for_strength_one(self, tmp_path):
        latent = survey_to_latent(load_survey(_write(tmp_path, "s.csv", GOOD_SURVEY)))
        assert latent.weight[0, 0] == 1.0 and latent.weight[1, 1] == 1.0

    def test_row_count_mismatch_rejected(self, tmp_path):
        with pytest.raises(InputError, match="data rows"):
            load_survey(_write(tmp_path, "s.csv", "label,x,y\nx,1,2\n"))

    def test_ragged_row_rejected(self, tmp_path):
        with pytest.raises(InputError, match="cells"):
            load_survey(_write(tmp_path, "s.csv", "label,x,y\nx,1\ny,1,2\n"))

    def test_bad_header_rejected(self, tmp_path):
        with pytest.raises(InputError, match="header"):
            load_survey(_write(tmp_path, "s.csv", "name,x,y\nx,1,2\ny,1,2\n"))

    def test_row_label_mismatch_rejected(self, tmp_path):
        with pytest.raises(InputError, match="does not match"):
            load_survey(_write(tmp_path, "s.csv", "label,x,y\ny,1,2\nx,1,2\n"))

    def test_out_of_scale_value_rejected_with_line(self, tmp_path):
        with pytest.raises(InputError, match="s.csv:3"):
            load_survey(_write(tmp_path, "s.csv", "label,x,y\nx,1,2\ny,9,1\n"))

    def test_bom_rejected(self, tmp_path):
        p = _write(tmp_path, "s.csv", b"\xef\xbb\xbf" + GOOD_SURVEY.encode())
        with pytest.raises(InputError, match="byte-order mark"):
            load_survey(p)

    def test_invalid_utf8_rejected(self, tmp_path):
        p = _write(tmp_path, "s.csv", b"label,x\xff\nx,1\n")
        with pytest.raises(InputError, match="UTF-8"):
            load_survey(p)

    def test_comma_decimal_rejected(self, tmp_path):
        p = _write(tmp_path, "s.csv", 'label,x,y\nx,1,"2,5"\ny,1,2\n')
        with pytest.raises(InputError, match="decimal point"):
            load_survey(p)

    def test_duplicate_header_label_rejected(self, tmp_path):
        with pytest.raises(InputError, match="duplicate"):
            load_survey(_write(tmp_path, "s.csv", "label,x,x\nx,1,2\nx,1,2\n"))

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_save_load_round_trip(self, tmp_path_factory, data):
        n = data.draw(st.integers(1, 6))
        labels = [f"im{i}" for i in range(n)]
        values = data.draw(
            st.lists(st.integers(1, 5), min_size=n * n, max_size=n * n)
        )
        survey = AssociationSurvey(
            labels=labels, strength=np.array(values, dtype=float).reshape(n, n)
        )
        path = tmp_path_factory.mktemp("rt") / "survey.csv"
        save_survey(survey, path)
        back = load_survey(path)
        assert back.labels == survey.labels
        assert np.array_equal(back.strength, survey.strength)


class TestPairTables:
    def test_interpretation_round_trip(self, tmp_path):
        p = _write(tmp_path, "i.csv", "b1,a1,3.5\nb1,a2,1.25\n")
        data = load_interpretation(p)
        assert data.value("b1", "a1") == 3.5
        assert data.missing_pairs([("b1", "a2"), ("b2", "a1")]) == [("b2", "a1")]

    def test_similarity_range_enforced(self, tmp_path):
        with pytest.raises(InputError, match=r"\[-1, 1\]"):
            load_similarity(_write(tmp_path, "s.csv", "b1,a1,1.5\n"))

    def test_interpretation_rejects_non_finite(self, tmp_path):
        with pytest.raises(InputError, match="non-finite"):
            load_interpretation(_write(tmp_path, "i.csv", "b1,a1,inf\n"))

    def test_wrong_arity_rejected(self, tmp_path):
        with pytest.raises(InputError, match="source_label,target_label,value"):
            load_interpretation(_write(tmp_path, "i.csv", "b1,a1\n"))

    def test_duplicate_pair_rejected(self, tmp_path):
        with pytest.raises(InputError, match="duplicate"):
            load_interpretation(_write(tmp_path, "i.csv", "b1,a1,1\nb1,a1,2\n"))

    def test_negative_similarity_accepted(self, tmp_path):
        sim = load_similarity(_write(tmp_path, "s.csv", "b1,a1,-0.25\n"))
        assert sim.value("b1", "a1") == -0.25

    def test_save_pair_table_round_trips(self, tmp_path):
        table = {("b1", "a1"): 0.5, ("b2", "a2"): -0.125}
        p = tmp_path / "t.csv"
        save_pair_table(table, p)
        assert load_similarity(p).similarities == table
