"""Pair generation, ranking metrics, greedy selection, k-fold evaluation.

The evaluation protocol: for each query function drawn from the source
side of a test spec, pick one true positive (same original function,
different compile config) and one true negative (different function,
same compile config as the TP).  Scoring the resulting ~2N labeled
pairs with mean-delta similarity yields an ROC curve; the AUC is the
quality measure everywhere.

Feature selection is greedy forward search on training pairs: start
empty (baseline AUC 0.5, constant score), repeatedly add the feature
whose addition raises AUC the most, stop when no candidate improves by
more than GREEDY_EPS.  Ties go to the lexicographically smallest name
so runs are reproducible.

k-fold evaluation splits by function identity, never by record, so the
same source function cannot appear on both sides of a fold.

Records are duck-typed: anything with .package/.binary/.name, an
.identity_key(), an .options_key(), a .features mapping, and a .config
carrying the compile-option fields works (see groundtruth.FunctionRecord).
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import (
    BadTestSpec,
    DegenerateLabels,
    EmptyInput,
    NoCandidates,
    TooFewGroups,
)
from .scoring import available_features, relative_difference, similarity, tp_tn_gap
from .util import atomic_write_text, stable_seed

# Improvement threshold for accepting a feature during greedy search.
GREEDY_EPS = 1e-6

# Training-side cap on functions per fold, applied before pairing.
TRAIN_FUNCTION_CAP = 200_000

# Compile-option fields a test spec may constrain or hold fixed.
OPTION_FIELDS = (
    "arch",
    "bits",
    "endianness",
    "compiler",
    "compiler_version",
    "opt_level",
    "extra",
)

# Constraining a field on the target side releases its dependents from
# the "hold the rest" rule: pairing gcc against clang cannot also pin
# the version string.
_DEPENDENT_FIELDS = {"compiler": ("compiler_version",)}

_FILTER_FIELDS = ("package", "binary") + OPTION_FIELDS


# -- ranking metrics --------------------------------------------------------


def _average_ranks(scores: np.ndarray) -> np.ndarray:
    """1-based ranks, ties sharing the mean rank of their run."""
    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    run_start = np.flatnonzero(np.diff(sorted_scores) != 0) + 1
    starts = np.concatenate(([0], run_start))
    ends = np.concatenate((run_start, [scores.size]))
    run_rank = (starts + 1 + ends) / 2.0
    run_id = np.zeros(scores.size, dtype=np.intp)
    run_id[run_start] = 1
    np.cumsum(run_id, out=run_id)
    ranks = np.empty(scores.size, dtype=float)
    ranks[order] = run_rank[run_id]
    return ranks


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Mann-Whitney AUC: P(pos > neg) + 0.5 * P(pos == neg)."""
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels)
    if s.ndim != 1 or s.shape != y.shape:
        raise ValueError("scores and labels must be 1-d and equally long")
    if s.size == 0:
        raise EmptyInput("roc_auc over zero pairs")
    pos = y == 1
    n_pos = int(pos.sum())
    n_neg = s.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabels(f"need both classes, got {n_pos} pos / {n_neg} neg")
    ranks = _average_ranks(s)
    u = ranks[pos].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def average_precision(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Mean of precision@rank over positive ranks, descending scores.

    Ties keep input order (stable sort), so the value is deterministic
    for a fixed input sequence.
    """
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels)
    if s.ndim != 1 or s.shape != y.shape:
        raise ValueError("scores and labels must be 1-d and equally long")
    if s.size == 0:
        raise EmptyInput("average_precision over zero pairs")
    pos = y == 1
    if not pos.any():
        raise DegenerateLabels("average_precision needs at least one positive")
    order = np.argsort(-s, kind="stable")
    hits = pos[order]
    cum_hits = np.cumsum(hits)
    ranks = np.arange(1, s.size + 1)
    return float((cum_hits[hits] / ranks[hits]).mean())


# -- test specs -------------------------------------------------------------


@dataclass(frozen=True)
class TestSpec:
    """Declarative pairing rule: which configs face which.

    source/target map config fields to allowed values.  hold is "rest"
    (equalize every option field the target does not constrain), "none"
    (free-for-all on untested options), or an explicit field tuple.
    """

    name: str
    source: dict[str, tuple[str, ...]]
    target: dict[str, tuple[str, ...]]
    hold: str | tuple[str, ...] = "rest"

    def __post_init__(self) -> None:
        for side in (self.source, self.target):
            for key in side:
                if key not in _FILTER_FIELDS:
                    raise BadTestSpec(f"unknown filter field {key!r}")
        if isinstance(self.hold, str) and self.hold not in ("rest", "none"):
            raise BadTestSpec(f"hold must be 'rest', 'none', or a field list")

    def hold_fields(self) -> tuple[str, ...]:
        if self.hold == "none":
            return ()
        if isinstance(self.hold, tuple):
            return self.hold
        released = set(self.target) | set(self.source)
        for f in list(released):
            released.update(_DEPENDENT_FIELDS.get(f, ()))
        return tuple(f for f in OPTION_FIELDS if f not in released)

    @classmethod
    def from_mapping(cls, raw: dict[str, Any]) -> "TestSpec":
        try:
            name = raw["name"]
            source = {k: _as_value_tuple(v) for k, v in raw.get("source", {}).items()}
            target = {k: _as_value_tuple(v) for k, v in raw.get("target", {}).items()}
        except (KeyError, TypeError) as exc:
            raise BadTestSpec(str(exc)) from exc
        hold = raw.get("hold", "rest")
        if isinstance(hold, list):
            hold = tuple(hold)
        return cls(name=name, source=source, target=target, hold=hold)

    @classmethod
    def from_file(cls, path: str | Path) -> "TestSpec":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise BadTestSpec(f"{path}: {exc}") from exc
        return cls.from_mapping(raw)


def _as_value_tuple(v: Any) -> tuple[str, ...]:
    if isinstance(v, (list, tuple)):
        return tuple(str(x) for x in v)
    return (str(v),)


def _pairing_test(name: str, fld: str, a: str, b: str) -> TestSpec:
    return TestSpec(name=name, source={fld: (a,)}, target={fld: (b,)})


# Ready-made specs for the usual comparison axes.
BUILTIN_TESTS: dict[str, TestSpec] = {
    t.name: t
    for t in (
        _pairing_test("o0-vs-o3", "opt_level", "O0", "O3"),
        _pairing_test("o1-vs-o2", "opt_level", "O1", "O2"),
        _pairing_test("o2-vs-o3", "opt_level", "O2", "O3"),
        _pairing_test("o0-vs-o2", "opt_level", "O0", "O2"),
        _pairing_test("o1-vs-o3", "opt_level", "O1", "O3"),
        _pairing_test("gcc-vs-clang", "compiler", "gcc", "clang"),
        TestSpec(name="opt-rand", source={}, target={}, hold="none"),
    )
}


def resolve_test_spec(name_or_path: str) -> TestSpec:
    """Builtin name, else a JSON spec file path."""
    key = name_or_path.lower()
    if key in BUILTIN_TESTS:
        return BUILTIN_TESTS[key]
    if Path(name_or_path).exists():
        return TestSpec.from_file(name_or_path)
    raise BadTestSpec(
        f"{name_or_path!r} is neither a builtin test ({', '.join(sorted(BUILTIN_TESTS))}) "
        "nor a spec file"
    )


# -- pair generation --------------------------------------------------------


def _record_field(rec: Any, name: str) -> str:
    if name in ("package", "binary"):
        return str(getattr(rec, name))
    value = getattr(rec.config, name)
    if name == "extra":
        return "+".join(sorted(value))
    return str(value)


def _matches(rec: Any, filt: dict[str, tuple[str, ...]]) -> bool:
    return all(_record_field(rec, f) in allowed for f, allowed in filt.items())


def _record_key(rec: Any) -> tuple:
    return (
        rec.package,
        rec.binary,
        _record_field(rec, "compiler"),
        _record_field(rec, "compiler_version"),
        _record_field(rec, "opt_level"),
        _record_field(rec, "arch"),
        _record_field(rec, "bits"),
        _record_field(rec, "extra"),
        rec.name,
        rec.addr,
    )


@dataclass
class PairSet:
    """Labeled pairs, kept as (query, TP, TN) triples plus provenance."""

    triples: list[tuple[Any, Any, Any]]
    seed: int
    spec_name: str

    @property
    def pairs(self) -> list[tuple[Any, Any, int]]:
        out = []
        for q, tp, tn in self.triples:
            out.append((q, tp, 1))
            out.append((q, tn, 0))
        return out

    def __len__(self) -> int:
        return 2 * len(self.triples)


def generate_pairs(records: Sequence[Any], spec: TestSpec, seed: int) -> PairSet:
    """Draw one TP and one TN per matching query, seeded per query.

    Per-query RNG streams keyed on (seed, record key) keep draws stable
    when unrelated records join or leave the dataset.
    """
    if not records:
        raise EmptyInput("no records to pair")
    by_identity: dict[tuple, list[Any]] = defaultdict(list)
    by_options: dict[tuple, list[Any]] = defaultdict(list)
    for r in records:
        by_identity[r.identity_key()].append(r)
        by_options[r.options_key()].append(r)
    for bucket in by_identity.values():
        bucket.sort(key=_record_key)
    for bucket in by_options.values():
        bucket.sort(key=_record_key)

    hold = spec.hold_fields()
    queries = sorted((r for r in records if _matches(r, spec.source)), key=_record_key)
    triples = []
    for q in queries:
        rng = random.Random(stable_seed(seed, _record_key(q)))
        q_opts = q.options_key()
        tps = [
            r
            for r in by_identity[q.identity_key()]
            if r.options_key() != q_opts
            and _matches(r, spec.target)
            and all(_record_field(r, h) == _record_field(q, h) for h in hold)
        ]
        if not tps:
            continue
        tp = rng.choice(tps)
        tns = [
            r
            for r in by_options[tp.options_key()]
            if r.identity_key() != q.identity_key() and _matches(r, spec.target)
        ]
        if not tns:
            continue
        tn = rng.choice(tns)
        triples.append((q, tp, tn))
    if not triples:
        raise NoCandidates(f"test {spec.name!r} produced no pairs")
    return PairSet(triples=triples, seed=seed, spec_name=spec.name)


# -- pair scoring -----------------------------------------------------------


def _delta_matrix(
    pairs: Sequence[tuple[Any, Any, int]], candidates: Sequence[str]
) -> np.ndarray:
    """delta per (feature, pair); NaN where either side lacks the value."""
    n = len(pairs)
    left = np.full((len(candidates), n), np.nan)
    right = np.full((len(candidates), n), np.nan)
    for j, (q, c, _label) in enumerate(pairs):
        qf = q.features
        cf = c.features
        for i, name in enumerate(candidates):
            a = qf.get(name)
            b = cf.get(name)
            if a is None or b is None:
                continue
            left[i, j] = a
            right[i, j] = b
    with np.errstate(invalid="ignore", divide="ignore"):
        mx = np.maximum(left, right)
        delta = np.abs(left - right) / mx
    delta[left == right] = 0.0  # includes delta(0, 0); NaNs never compare equal
    return delta


def score_pairs(
    pairs: Sequence[tuple[Any, Any, int]], feats: Sequence[str]
) -> np.ndarray:
    """Similarity per pair over feats with pairwise-skip semantics.

    A pair for which no selected feature is available on both sides
    scores the uninformative 0.5.
    """
    if not pairs:
        raise EmptyInput("no pairs to score")
    if not feats:
        return np.full(len(pairs), 0.5)
    delta = _delta_matrix(pairs, feats)
    avail = ~np.isnan(delta)
    counts = avail.sum(axis=0)
    sums = np.where(avail, delta, 0.0).sum(axis=0)
    return np.where(counts > 0, 1.0 - sums / np.maximum(counts, 1), 0.5)


# -- greedy feature selection ----------------------------------------------


@dataclass
class Model:
    """A selected feature set plus the training trace that produced it."""

    selected: list[str]
    seed: int
    fold: int | None
    train_auc_trace: list[float] = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "selected": list(self.selected),
            "seed": self.seed,
            "fold": self.fold,
            "train_auc_trace": [round(x, 12) for x in self.train_auc_trace],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, path: str | Path) -> None:
        atomic_write_text(path, self.to_json())

    @classmethod
    def from_json(cls, text: str) -> "Model":
        raw = json.loads(text)
        return cls(
            selected=list(raw["selected"]),
            seed=int(raw["seed"]),
            fold=raw.get("fold"),
            train_auc_trace=[float(x) for x in raw.get("train_auc_trace", [])],
        )

    @classmethod
    def read(cls, path: str | Path) -> "Model":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def greedy_select(
    pair_set: PairSet, candidates: Sequence[str], fold: int | None = None
) -> Model:
    """Forward selection maximizing training AUC.

    Candidates are tried in sorted-name order and accepted only on an
    improvement > GREEDY_EPS over the current best, so the trace is
    strictly increasing after the 0.5 baseline and ties resolve to the
    smallest name.
    """
    pairs = pair_set.pairs
    labels = np.array([label for _q, _c, label in pairs])
    if not (labels == 1).any() or not (labels == 0).any():
        raise DegenerateLabels("greedy selection needs both labels")
    ordered = sorted(dict.fromkeys(candidates))
    delta = _delta_matrix(pairs, ordered)
    avail = ~np.isnan(delta)
    filled = np.where(avail, delta, 0.0)

    selected: list[str] = []
    trace = [0.5]
    best_auc = 0.5
    sum_d = np.zeros(len(pairs))
    cnt_d = np.zeros(len(pairs))
    remaining = list(range(len(ordered)))
    while remaining:
        round_best_auc = None
        round_best_idx = None
        for idx in remaining:
            cnt = cnt_d + avail[idx]
            sums = sum_d + filled[idx]
            sims = np.where(cnt > 0, 1.0 - sums / np.maximum(cnt, 1), 0.5)
            auc = roc_auc(sims, labels)
            if round_best_auc is None or auc > round_best_auc:
                round_best_auc = auc
                round_best_idx = idx
        if round_best_auc is None or round_best_auc <= best_auc + GREEDY_EPS:
            break
        selected.append(ordered[round_best_idx])
        trace.append(round_best_auc)
        best_auc = round_best_auc
        sum_d += filled[round_best_idx]
        cnt_d += avail[round_best_idx]
        remaining.remove(round_best_idx)
    return Model(selected=selected, seed=pair_set.seed, fold=fold, train_auc_trace=trace)


# -- k-fold evaluation ------------------------------------------------------


@dataclass
class FoldResult:
    fold: int
    model: Model
    auc: float | None
    ap: float | None
    gaps: dict[str, float | None]
    n_train_pairs: int
    n_test_pairs: int
    skipped: str | None = None


@dataclass
class EvalResult:
    spec_name: str
    k: int
    seed: int
    folds: list[FoldResult]

    def mean_auc(self) -> float | None:
        vals = [f.auc for f in self.folds if f.auc is not None]
        return float(np.mean(vals)) if vals else None

    def std_auc(self) -> float | None:
        vals = [f.auc for f in self.folds if f.auc is not None]
        return float(np.std(vals)) if vals else None

    def mean_ap(self) -> float | None:
        vals = [f.ap for f in self.folds if f.ap is not None]
        return float(np.mean(vals)) if vals else None

    def report_rows(self) -> list[dict[str, str]]:
        """Rows for the CSV report: one per fold plus a mean summary."""
        rows = []
        for f in self.folds:
            rows.append(
                {
                    "test": self.spec_name,
                    "fold": str(f.fold),
                    "n_train_pairs": str(f.n_train_pairs),
                    "n_test_pairs": str(f.n_test_pairs),
                    "auc": _fmt(f.auc),
                    "ap": _fmt(f.ap),
                    "selected": ";".join(f.model.selected),
                    "gaps": ";".join(
                        f"{name}={_fmt(val)}" for name, val in sorted(f.gaps.items())
                    ),
                    "note": f.skipped or "",
                }
            )
        rows.append(
            {
                "test": self.spec_name,
                "fold": "mean",
                "n_train_pairs": str(sum(f.n_train_pairs for f in self.folds)),
                "n_test_pairs": str(sum(f.n_test_pairs for f in self.folds)),
                "auc": _fmt(self.mean_auc()),
                "ap": _fmt(self.mean_ap()),
                "selected": "",
                "gaps": "",
                "note": f"std_auc={_fmt(self.std_auc())}",
            }
        )
        return rows


REPORT_COLUMNS = (
    "test",
    "fold",
    "n_train_pairs",
    "n_test_pairs",
    "auc",
    "ap",
    "selected",
    "gaps",
    "note",
)


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def fold_of(identity_key: tuple, k: int, seed: int) -> int:
    """Stable fold assignment for a function identity."""
    return stable_seed("fold", seed, identity_key) % k


def kfold_evaluate(
    records: Sequence[Any],
    spec: TestSpec,
    k: int,
    seed: int,
    candidates: Sequence[str],
) -> EvalResult:
    """Group-disjoint k-fold: select on train folds, measure on the rest."""
    if not records:
        raise EmptyInput("no records to evaluate")
    identities = sorted({r.identity_key() for r in records})
    if len(identities) < k:
        raise TooFewGroups(f"{len(identities)} identities for {k} folds")
    folds_of = {ident: fold_of(ident, k, seed) for ident in identities}

    results = []
    for i in range(k):
        train = [r for r in records if folds_of[r.identity_key()] != i]
        test = [r for r in records if folds_of[r.identity_key()] == i]
        if len(train) > TRAIN_FUNCTION_CAP:
            rng = random.Random(stable_seed(seed, "cap", i))
            train = rng.sample(sorted(train, key=_record_key), TRAIN_FUNCTION_CAP)
        try:
            train_pairs = generate_pairs(train, spec, stable_seed(seed, "train", i))
            test_pairs = generate_pairs(test, spec, stable_seed(seed, "test", i))
        except (NoCandidates, EmptyInput) as exc:
            empty = Model(selected=[], seed=seed, fold=i, train_auc_trace=[0.5])
            results.append(
                FoldResult(
                    fold=i,
                    model=empty,
                    auc=None,
                    ap=None,
                    gaps={},
                    n_train_pairs=0,
                    n_test_pairs=0,
                    skipped=str(exc),
                )
            )
            continue
        model = greedy_select(train_pairs, candidates, fold=i)
        pairs = test_pairs.pairs
        labels = np.array([label for _q, _c, label in pairs])
        sims = score_pairs(pairs, model.selected)
        auc = roc_auc(sims, labels)
        ap = average_precision(sims, labels)
        gaps: dict[str, float | None] = {}
        vec_triples = [
            (q.features, tp.features, tn.features) for q, tp, tn in test_pairs.triples
        ]
        for name in model.selected:
            try:
                gaps[name] = tp_tn_gap(vec_triples, name)
            except Exception:
                gaps[name] = None
        results.append(
            FoldResult(
                fold=i,
                model=model,
                auc=auc,
                ap=ap,
                gaps=gaps,
                n_train_pairs=len(train_pairs),
                n_test_pairs=len(test_pairs),
            )
        )
    return EvalResult(spec_name=spec.name, k=k, seed=seed, folds=results)
