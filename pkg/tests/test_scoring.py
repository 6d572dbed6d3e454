"""Scoring math: worked examples first, then property checks."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from binsim.errors import EmptyFeatureSet, MissingFeature, NegativeFeature
from binsim.scoring import (
    available_features,
    relative_difference,
    similarity,
    tp_tn_gap,
)


class TestRelativeDifference:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (0.0, 0.0, 0.0),
            (5.0, 5.0, 0.0),
            (0.0, 5.0, 1.0),
            (5.0, 0.0, 1.0),
            (3.0, 6.0, 0.5),
            (6.0, 3.0, 0.5),
            (1.0, 100.0, 0.99),
            (2.0, 3.0, 1.0 / 3.0),
        ],
    )
    def test_examples(self, a, b, expected):
        assert relative_difference(a, b) == pytest.approx(expected, abs=1e-15)

    def test_negative_rejected(self):
        with pytest.raises(NegativeFeature):
            relative_difference(-1.0, 2.0)
        with pytest.raises(NegativeFeature):
            relative_difference(2.0, -0.5)

    @given(
        st.floats(min_value=0, max_value=1e12, allow_nan=False),
        st.floats(min_value=0, max_value=1e12, allow_nan=False),
    )
    def test_symmetric_and_bounded(self, a, b):
        d = relative_difference(a, b)
        assert 0.0 <= d <= 1.0
        assert d == relative_difference(b, a)

    @given(
        st.floats(min_value=0, max_value=1e9, allow_nan=False),
        st.floats(min_value=0, max_value=1e9, allow_nan=False),
        st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
    )
    def test_scale_free(self, a, b, k):
        # counts in different units compare identically after scaling
        d0 = relative_difference(a, b)
        d1 = relative_difference(k * a, k * b)
        assert math.isclose(d0, d1, rel_tol=1e-9, abs_tol=1e-9)

    @given(st.floats(min_value=0, max_value=1e12, allow_nan=False))
    def test_zero_iff_equal(self, a):
        assert relative_difference(a, a) == 0.0


class TestSimilarity:
    def test_identical_vectors_score_one(self):
        v = {"x": 3.0, "y": 0.0, "z": 17.0}
        assert similarity(v, v, ["x", "y", "z"]) == 1.0

    def test_mean_over_features(self):
        va = {"x": 1.0, "y": 0.0}
        vb = {"x": 1.0, "y": 5.0}
        # deltas 0 and 1, mean 0.5
        assert similarity(va, vb, ["x", "y"]) == pytest.approx(0.5)

    def test_single_feature(self):
        assert similarity({"x": 3.0}, {"x": 6.0}, ["x"]) == pytest.approx(0.5)

    def test_empty_feature_set_rejected(self):
        with pytest.raises(EmptyFeatureSet):
            similarity({"x": 1.0}, {"x": 1.0}, [])

    def test_absent_feature_rejected(self):
        with pytest.raises(MissingFeature):
            similarity({"x": 1.0}, {}, ["x"])

    def test_unavailable_feature_rejected(self):
        with pytest.raises(MissingFeature):
            similarity({"x": 1.0}, {"x": None}, ["x"])

    @given(
        st.dictionaries(
            st.sampled_from(["a", "b", "c", "d"]),
            st.floats(min_value=0, max_value=1e6, allow_nan=False),
            min_size=1,
        )
    )
    def test_bounded_and_symmetric(self, va):
        vb = {k: v * 1.5 + 1 for k, v in va.items()}
        feats = sorted(va)
        s1 = similarity(va, vb, feats)
        s2 = similarity(vb, va, feats)
        assert 0.0 <= s1 <= 1.0
        assert s1 == pytest.approx(s2, abs=1e-12)


class TestAvailability:
    def test_pairwise_skip(self):
        va = {"x": 1.0, "y": None, "z": 2.0}
        vb = {"x": 2.0, "y": 3.0}
        assert available_features(["x", "y", "z"], va, vb) == ["x"]

    def test_all_available(self):
        v = {"x": 1.0, "y": 2.0}
        assert available_features(["x", "y"], v, v) == ["x", "y"]


class TestTpTnGap:
    def test_separating_feature_gap(self):
        # query matches TP exactly, TN is twice as big: gap = 0.5 - 0 = 0.5
        triples = [({"f": 2.0}, {"f": 2.0}, {"f": 4.0})]
        assert tp_tn_gap(triples, "f") == pytest.approx(0.5)

    def test_useless_feature_gap_zero(self):
        triples = [({"f": 3.0}, {"f": 3.0}, {"f": 3.0})]
        assert tp_tn_gap(triples, "f") == 0.0

    def test_inverted_feature_gap_negative(self):
        triples = [({"f": 2.0}, {"f": 8.0}, {"f": 2.0})]
        assert tp_tn_gap(triples, "f") == pytest.approx(-0.75)

    def test_mean_over_triples(self):
        triples = [
            ({"f": 2.0}, {"f": 2.0}, {"f": 4.0}),
            ({"f": 3.0}, {"f": 3.0}, {"f": 3.0}),
        ]
        assert tp_tn_gap(triples, "f") == pytest.approx(0.25)

    def test_unavailable_triples_skipped(self):
        triples = [
            ({"f": None}, {"f": 1.0}, {"f": 9.0}),
            ({"f": 2.0}, {"f": 2.0}, {"f": 4.0}),
        ]
        assert tp_tn_gap(triples, "f") == pytest.approx(0.5)

    def test_no_usable_triples(self):
        with pytest.raises(MissingFeature):
            tp_tn_gap([({"f": None}, {"f": 1.0}, {"f": 2.0})], "f")
