"""Ranking metrics against brute-force oracles and worked examples."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from binsim.errors import DegenerateLabels, EmptyInput
from binsim.evaluate import average_precision, roc_auc


def auc_bruteforce(scores, labels):
    """Literal pairwise definition: P(pos > neg) + 0.5 P(pos == neg)."""
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    total = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                total += 1.0
            elif p == n:
                total += 0.5
    return total / (len(pos) * len(neg))


def ap_bruteforce(scores, labels):
    """Literal definition with stable descending order on ties."""
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    hits = 0
    precisions = []
    for rank, idx in enumerate(order, start=1):
        if labels[idx] == 1:
            hits += 1
            precisions.append(hits / rank)
    return sum(precisions) / len(precisions)


class TestRocAuc:
    def test_perfect_separation(self):
        assert roc_auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0

    def test_perfect_inversion(self):
        assert roc_auc([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0]) == 0.0

    def test_all_tied_is_half(self):
        assert roc_auc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]) == 0.5

    def test_partial_tie_worked_example(self):
        # sorted ranks: 0.1->1, 0.5/0.5 -> 2.5 each, 0.9->4
        # positive rank sum 4 + 2.5 = 6.5, U = 6.5 - 3 = 3.5, AUC 3.5/4
        assert roc_auc([0.9, 0.5, 0.5, 0.1], [1, 1, 0, 0]) == pytest.approx(0.875)

    def test_single_pair_each(self):
        assert roc_auc([0.3, 0.7], [0, 1]) == 1.0
        assert roc_auc([0.7, 0.3], [0, 1]) == 0.0
        assert roc_auc([0.3, 0.3], [0, 1]) == 0.5

    def test_degenerate_labels(self):
        with pytest.raises(DegenerateLabels):
            roc_auc([0.1, 0.2], [1, 1])
        with pytest.raises(DegenerateLabels):
            roc_auc([0.1, 0.2], [0, 0])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            roc_auc([], [])

    def test_matches_bruteforce_on_random_instances(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(2, 60)
            # coarse grid forces plenty of ties
            scores = [rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]) for _ in range(n)]
            labels = [rng.randint(0, 1) for _ in range(n)]
            if sum(labels) in (0, n):
                labels[0] = 1 - labels[0]
            assert roc_auc(scores, labels) == pytest.approx(
                auc_bruteforce(scores, labels), abs=1e-12
            )

    @given(
        st.lists(
            st.tuples(st.integers(0, 5), st.integers(0, 1)), min_size=2, max_size=80
        )
    )
    @settings(max_examples=150)
    def test_bruteforce_property(self, pairs):
        scores = [float(s) for s, _ in pairs]
        labels = [y for _, y in pairs]
        if sum(labels) in (0, len(labels)):
            labels[0] = 1 - labels[0]
        assert roc_auc(scores, labels) == pytest.approx(
            auc_bruteforce(scores, labels), abs=1e-12
        )

    def test_invariant_under_monotone_transform(self):
        scores = [0.1, 0.4, 0.4, 0.9, 0.7]
        labels = [0, 1, 0, 1, 1]
        transformed = [3.0 * s + 1.0 for s in scores]
        assert roc_auc(scores, labels) == pytest.approx(
            roc_auc(transformed, labels), abs=1e-12
        )


class TestAveragePrecision:
    def test_perfect_ranking(self):
        assert average_precision([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0

    def test_positive_ranked_last(self):
        assert average_precision([0.1, 0.9], [1, 0]) == pytest.approx(0.5)

    def test_interleaved(self):
        # ranks: pos@1 (p=1), neg@2, pos@3 (p=2/3) -> AP = (1 + 2/3)/2
        assert average_precision([0.9, 0.5, 0.4], [1, 0, 1]) == pytest.approx(5.0 / 6.0)

    def test_tie_uses_stable_input_order(self):
        # equal scores keep input order: first record outranks the second
        assert average_precision([0.5, 0.5], [1, 0]) == 1.0
        assert average_precision([0.5, 0.5], [0, 1]) == pytest.approx(0.5)

    def test_no_positives_rejected(self):
        with pytest.raises(DegenerateLabels):
            average_precision([0.5, 0.6], [0, 0])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            average_precision([], [])

    def test_matches_bruteforce_on_random_instances(self):
        rng = random.Random(23)
        for _ in range(200):
            n = rng.randint(1, 60)
            scores = [rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]) for _ in range(n)]
            labels = [rng.randint(0, 1) for _ in range(n)]
            if sum(labels) == 0:
                labels[rng.randrange(n)] = 1
            assert average_precision(scores, labels) == pytest.approx(
                ap_bruteforce(scores, labels), abs=1e-12
            )


class TestAucApAgreement:
    def test_auc_one_implies_ap_one(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n_pos, n_neg = rng.integers(1, 20), rng.integers(1, 20)
            pos = rng.uniform(0.6, 1.0, n_pos)
            neg = rng.uniform(0.0, 0.4, n_neg)
            scores = np.concatenate([pos, neg])
            labels = [1] * int(n_pos) + [0] * int(n_neg)
            assert roc_auc(scores, labels) == 1.0
            assert average_precision(scores, labels) == 1.0
