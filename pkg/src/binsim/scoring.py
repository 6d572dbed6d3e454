"""Feature-space similarity scoring.

Relative difference of two non-negative feature values:

    delta(a, b) = |a - b| / max(a, b),  delta(0, 0) = 0

Similarity of two functions over a feature set F is 1 minus the mean
relative difference across F, every feature weighted equally.  Scores
live in [0, 1]; scale-free per feature, so counts with different units
mix without normalization.

The TP-TN gap of a feature is the mean, over (query, TP, TN) triples,
of delta(query, TN) - delta(query, TP): positive means the feature
pulls true pairs closer than confusers, i.e. it carries signal.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import EmptyFeatureSet, MissingFeature, NegativeFeature

Vector = Mapping[str, float | None]


def relative_difference(a: float, b: float) -> float:
    """delta(a, b) in [0, 1]; symmetric; 0 iff a == b."""
    if a < 0 or b < 0:
        raise NegativeFeature(f"negative feature value: delta({a!r}, {b!r})")
    if a == b:
        # covers delta(0, 0) = 0 without a divide
        return 0.0
    m = a if a > b else b
    return abs(a - b) / m


def similarity(va: Vector, vb: Vector, feats: Sequence[str]) -> float:
    """Mean-delta similarity of two feature vectors over feats.

    Both vectors must carry every requested feature with an available
    (non-None) value; callers that want pairwise-skip semantics filter
    feats first (see available_features).
    """
    if not feats:
        raise EmptyFeatureSet("similarity over an empty feature set")
    total = 0.0
    for name in feats:
        a = va.get(name)
        b = vb.get(name)
        if a is None or b is None:
            raise MissingFeature(name)
        total += relative_difference(a, b)
    return 1.0 - total / len(feats)


def available_features(feats: Iterable[str], *vectors: Vector) -> list[str]:
    """Subset of feats carried with available values by every vector.

    This is the pairwise-skip rule for features that can be absent
    (type features on binaries without debug info).
    """
    out = []
    for name in feats:
        if all(v.get(name) is not None for v in vectors):
            out.append(name)
    return out


def tp_tn_gap(
    triples: Sequence[tuple[Vector, Vector, Vector]], feature: str
) -> float:
    """Mean of delta(query, TN) - delta(query, TP) for one feature.

    Triples where the feature is unavailable on any side are skipped;
    if none remain the gap is undefined and raises MissingFeature.
    """
    total = 0.0
    n = 0
    for query, tp, tn in triples:
        q = query.get(feature)
        p = tp.get(feature)
        m = tn.get(feature)
        if q is None or p is None or m is None:
            continue
        total += relative_difference(q, m) - relative_difference(q, p)
        n += 1
    if n == 0:
        raise MissingFeature(feature)
    return total / n
