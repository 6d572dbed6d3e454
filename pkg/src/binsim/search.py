"""Ranked function search: find a query function inside a corpus.

Every corpus record is scored against the query with the same
averaged-relative-difference similarity the evaluation uses, then
sorted descending.  Ties break on (binary, address) so output is
stable across runs and platforms.  A record counts as the true match
when its ground-truth identity equals the query's.
"""

from __future__ import annotations

import io
import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyCorpus, EmptyModel
from .evaluate import Model
from .groundtruth import FunctionRecord
from .util import atomic_write_text


def _corpus_matrix(
    corpus: Sequence[FunctionRecord], feats: Sequence[str]
) -> np.ndarray:
    m = np.full((len(feats), len(corpus)), np.nan)
    for j, rec in enumerate(corpus):
        rf = rec.features
        for i, name in enumerate(feats):
            v = rf.get(name)
            if v is not None:
                m[i, j] = v
    return m


def score_corpus(
    query: Mapping[str, float | None],
    corpus: Sequence[FunctionRecord],
    feats: Sequence[str],
) -> np.ndarray:
    """Similarity of each corpus record to the query, pairwise-skipping
    features either side lacks; 0.5 where nothing is comparable."""
    qv = np.array(
        [np.nan if query.get(f) is None else float(query.get(f)) for f in feats]
    ).reshape(-1, 1)
    cv = _corpus_matrix(corpus, feats)
    with np.errstate(invalid="ignore", divide="ignore"):
        mx = np.maximum(qv, cv)
        delta = np.abs(qv - cv) / mx
    delta[qv == cv] = 0.0  # covers the both-zero case; NaN never equals
    avail = ~np.isnan(delta)
    counts = avail.sum(axis=0)
    sums = np.where(avail, delta, 0.0).sum(axis=0)
    return np.where(counts > 0, 1.0 - sums / np.maximum(counts, 1), 0.5)


def rank_functions(
    query: Mapping[str, float | None],
    corpus: Sequence[FunctionRecord],
    model: Model,
) -> list[tuple[FunctionRecord, float]]:
    """Full descending ranking of the corpus against one query vector."""
    if not corpus:
        raise EmptyCorpus("empty corpus")
    if not model.selected:
        raise EmptyModel("model has no selected features")
    scores = score_corpus(query, corpus, model.selected)
    order = sorted(
        range(len(corpus)),
        key=lambda j: (-scores[j], corpus[j].binary, corpus[j].addr),
    )
    return [(corpus[j], float(scores[j])) for j in order]


def rank_queries(
    queries: Sequence[Mapping[str, float | None]],
    corpus: Sequence[FunctionRecord],
    model: Model,
    aggregate: str = "mean",
) -> list[tuple[FunctionRecord, float]]:
    """Rank against several query variants at once.

    Per-record scores across the variants are combined by mean
    (default) or max before ranking.
    """
    if not corpus:
        raise EmptyCorpus("empty corpus")
    if not model.selected:
        raise EmptyModel("model has no selected features")
    if not queries:
        raise EmptyCorpus("no query variants")
    if aggregate not in ("mean", "max"):
        raise ValueError(f"unknown aggregate {aggregate!r}")
    all_scores = np.stack(
        [score_corpus(q, corpus, model.selected) for q in queries]
    )
    scores = all_scores.mean(axis=0) if aggregate == "mean" else all_scores.max(axis=0)
    order = sorted(
        range(len(corpus)),
        key=lambda j: (-scores[j], corpus[j].binary, corpus[j].addr),
    )
    return [(corpus[j], float(scores[j])) for j in order]


def rank_of_identity(
    ranking: Sequence[tuple[FunctionRecord, float]], identity_key: tuple
) -> int | None:
    """1-based rank of the best-placed record with this identity."""
    for pos, (rec, _score) in enumerate(ranking, 1):
        if rec.identity_key() == identity_key:
            return pos
    return None


@dataclass
class SearchResult:
    ranking: list[tuple[FunctionRecord, float]]
    rank_of_match: int | None

    def to_summary(self) -> dict:
        return {
            "rank_of_match": self.rank_of_match,
            "precision_at_1": 1.0 if self.rank_of_match == 1 else 0.0,
            "corpus_size": len(self.ranking),
        }


def search_record(
    query: FunctionRecord,
    corpus: Sequence[FunctionRecord],
    model: Model,
) -> SearchResult:
    ranking = rank_functions(query.features, corpus, model)
    return SearchResult(ranking, rank_of_identity(ranking, query.identity_key()))


def precision_at_k(
    outcomes: Sequence[tuple[Sequence[tuple[FunctionRecord, float]], tuple]],
    k: int,
) -> float:
    """Fraction of (ranking, true identity) outcomes with the truth in
    the top k; an absent truth is a miss."""
    if not outcomes:
        raise EmptyCorpus("no rankings")
    hits = 0
    for ranking, identity in outcomes:
        r = rank_of_identity(ranking, identity)
        if r is not None and r <= k:
            hits += 1
    return hits / len(outcomes)


def write_ranking_tsv(
    path: str | Path,
    ranking: Sequence[tuple[FunctionRecord, float]],
    limit: int | None = None,
) -> None:
    buf = io.StringIO()
    buf.write("rank\tscore\tpackage\tbinary\tfunction\tsource\n")
    rows = ranking if limit is None else ranking[:limit]
    for pos, (rec, score) in enumerate(rows, 1):
        locus = ""
        if rec.source_file is not None:
            locus = f"{rec.source_file}:{rec.source_line}"
        buf.write(
            f"{pos}\t{score:.12f}\t{rec.package}\t{rec.binary}\t{rec.name}\t{locus}\n"
        )
    atomic_write_text(path, buf.getvalue())


def write_search_summary(path: str | Path, result: SearchResult) -> None:
    atomic_write_text(
        path, json.dumps(result.to_summary(), indent=2, sort_keys=True) + "\n"
    )
