"""Temporal evaluation of decay scores, plus edge-survival analysis.

The protocol: cut an event stream at ``t1 = first + fraction * span``.
Edges alive at ``t1`` but gone by the final time form the positive test
set; an equal-size seeded sample of edges that survived forms the zero
(negative) set.  A scorer ranks the union, and average precision over that
ranking measures how well decayed edges float to the top.  A creation-side
twin (:func:`evaluate_link_prediction`) ranks newly formed edges against
never-present pairs with the raw measures, so decay and creation
difficulty can be compared on the same stream.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .events import TemporalEdgeList
from .graph import Graph, snapshot_at
from .scoring import (Measure, ScoreSpec, DegreeCombination,
                      link_prediction_score, score_batch)

__all__ = [
    "APResult",
    "EdgeLifetimes",
    "EvaluationSplit",
    "SurvivalFit",
    "average_precision",
    "edge_ages",
    "edge_lifetimes",
    "evaluate",
    "evaluate_link_prediction",
    "fit_exponential_half_life",
    "random_baseline",
    "survival_curve",
    "temporal_split",
]


# ---------------------------------------------------------------------------
# temporal split


@dataclass
class EvaluationSplit:
    """Train/test cut of an event stream.

    ``test_set`` holds decayed edges (present at ``t1``, absent at the
    end); ``zero_test_set`` is the seeded sample of surviving edges.  All
    edge sets are ``(k, 2)`` arrays in lexicographic order.
    """

    t1: float
    t_end: int
    training_edges: np.ndarray
    test_set: np.ndarray
    zero_test_set: np.ndarray
    seed: int


def _edge_keys(g: Graph) -> np.ndarray:
    edges = g.edges()
    return edges[:, 0] * np.int64(g.node_count) + edges[:, 1]


def _keys_to_pairs(keys: np.ndarray, n: int) -> np.ndarray:
    return np.column_stack((keys // n, keys % n)).astype(np.int64)


def temporal_split(tel: TemporalEdgeList, fraction: float = 0.75, *,
                   seed: int) -> EvaluationSplit:
    """Split an event stream at ``t1 = first + fraction * (last - first)``.

    Parameters
    ----------
    tel : TemporalEdgeList
        The full event stream.
    fraction : float
        Position of the cut within the stream's time span (0 < f < 1).
    seed : int
        Seed for sampling the zero test set: a uniform sample, without
        replacement, of the edges present both at ``t1`` and at the end,
        of size ``min(#decayed, #survivors)``.  A warning is issued when
        the survivor count is the binding minimum.

    Raises
    ------
    ValueError
        On an empty stream, a degenerate fraction, or when no edge decays
        in the test window (nothing to rank).
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be strictly between 0 and 1, got {fraction}")
    if len(tel) == 0:
        raise ValueError("cannot split an empty event stream")
    t0, t_end = tel.time_first, tel.time_last
    t1 = t0 + fraction * (t_end - t0)
    n = tel.node_count
    g1 = snapshot_at(tel, t1)
    g_end = snapshot_at(tel, t_end)
    k1 = _edge_keys(g1)
    k_end = _edge_keys(g_end)
    test_keys = np.setdiff1d(k1, k_end, assume_unique=True)
    survivor_keys = np.intersect1d(k1, k_end, assume_unique=True)
    if len(test_keys) == 0:
        raise ValueError(
            f"no decayed edges between t1={t1:g} and t_end={t_end}: "
            "nothing to evaluate"
        )
    size = min(len(test_keys), len(survivor_keys))
    if size < len(test_keys):
        warnings.warn(
            f"only {len(survivor_keys)} surviving edges for "
            f"{len(test_keys)} decayed ones; zero test set truncated",
            stacklevel=2,
        )
    rng = np.random.default_rng(seed)
    pick = rng.choice(len(survivor_keys), size=size, replace=False)
    pick.sort()
    return EvaluationSplit(
        t1=float(t1),
        t_end=int(t_end),
        training_edges=_keys_to_pairs(k1, n),
        test_set=_keys_to_pairs(test_keys, n),
        zero_test_set=_keys_to_pairs(survivor_keys[pick], n),
        seed=int(seed),
    )


# ---------------------------------------------------------------------------
# average precision


@dataclass
class APResult:
    """Average precision plus the ranking it was computed from.

    ``ranking`` is the deterministically ordered list of
    ``((src, dst), score, label)`` (descending score, ties by endpoint
    pair); ``precision_at[k]`` is the precision after the first ``k+1``
    entries of that ranking.  With the default tie policy, ``ap`` equals
    the mean of ``precision_at`` over positive positions, so the value can
    be recomputed from the stored ranking.
    """

    ap: float
    ranking: list = field(repr=False)
    precision_at: list = field(repr=False)
    positives: int
    tie_break: str = "lexicographic"


def _expected_ap(ranking: list[tuple], positives: int) -> float:
    """Expected AP when items with equal scores are ordered uniformly at
    random, computed blockwise in closed form."""
    total = 0.0
    above = 0          # items ranked strictly above the current block
    above_pos = 0      # positives among them
    k = 0
    length = len(ranking)
    while k < length:
        score = ranking[k][1]
        block_end = k
        while block_end < length and ranking[block_end][1] == score:
            block_end += 1
        block = ranking[k:block_end]
        t = sum(1 for item in block if item[2] == "test")
        size = len(block)
        if t:
            if size == 1:
                total += (above_pos + 1) / (above + 1)
            else:
                # A positive lands at in-block rank r with probability t/size;
                # conditioned on that, it is preceded (within the block) by
                # (r-1)(t-1)/(size-1) positives in expectation.
                for r in range(1, size + 1):
                    expected_hits = above_pos + 1 + (r - 1) * (t - 1) / (size - 1)
                    total += (t / size) * expected_hits / (above + r)
        above += size
        above_pos += t
        k = block_end
    return total / positives


def average_precision(scored: Iterable[tuple], tie_break: str = "lexicographic") -> APResult:
    """Average precision of a labeled scored edge list.

    ``scored`` yields ``((src, dst), score, label)`` with label ``"test"``
    (positive: the edge decayed) or ``"zero"``.  Items are ranked by
    descending score; exact score ties are broken by the endpoint pair,
    ascending, so the ranking is deterministic.  AP is the mean precision
    at the positive positions.  ``tie_break="expected"`` instead returns
    the expected AP when tied items are ordered uniformly at random
    (useful when a sparse measure assigns many identical scores).
    """
    if tie_break not in ("lexicographic", "expected"):
        raise ValueError(f"tie_break must be 'lexicographic' or 'expected', got {tie_break!r}")
    items = []
    for edge, score, label in scored:
        if label not in ("test", "zero"):
            raise ValueError(f"label must be 'test' or 'zero', got {label!r}")
        items.append(((int(edge[0]), int(edge[1])), float(score), label))
    positives = sum(1 for item in items if item[2] == "test")
    if positives == 0:
        raise ValueError("average precision needs at least one 'test' item")
    ranking = sorted(items, key=lambda item: (-item[1], item[0]))
    hits = 0
    precision_at = []
    lex_total = 0.0
    for rank, item in enumerate(ranking, start=1):
        if item[2] == "test":
            hits += 1
            lex_total += hits / rank
        precision_at.append(hits / rank)
    if tie_break == "lexicographic":
        ap = lex_total / positives
    else:
        ap = _expected_ap(ranking, positives)
    return APResult(ap=ap, ranking=ranking, precision_at=precision_at,
                    positives=positives, tie_break=tie_break)


# ---------------------------------------------------------------------------
# end-to-end protocols


def _label_pairs(split: EvaluationSplit) -> tuple[np.ndarray, list[str]]:
    pairs = np.vstack((split.test_set, split.zero_test_set))
    labels = ["test"] * len(split.test_set) + ["zero"] * len(split.zero_test_set)
    return pairs, labels


def evaluate(tel: TemporalEdgeList, spec: ScoreSpec, fraction: float = 0.75, *,
             seed: int, tie_break: str = "lexicographic",
             split: EvaluationSplit | None = None) -> APResult:
    """Run the decay-evaluation protocol end to end.

    Parameters
    ----------
    tel : TemporalEdgeList
        Event stream to evaluate on.
    spec : ScoreSpec
        Scorer to rank with; scoring happens on the snapshot at ``t1``.
    fraction : float
        Temporal cut position (default 3/4 of the span).
    seed : int
        Drives the zero-test-set sample; everything else is deterministic.
    tie_break : str
        Passed to :func:`average_precision`.
    split : EvaluationSplit, optional
        Reuse an existing split (skips recomputation); its seed wins.

    Returns
    -------
    APResult
    """
    if split is None:
        split = temporal_split(tel, fraction, seed=seed)
    g1 = snapshot_at(tel, split.t1)
    pairs, labels = _label_pairs(split)
    scored = score_batch(g1, pairs, spec)
    return average_precision(
        (((e.src, e.dst), e.score, label) for e, label in zip(scored, labels)),
        tie_break=tie_break,
    )


def random_baseline(split: EvaluationSplit, *, seed: int,
                    tie_break: str = "lexicographic") -> APResult:
    """AP of uniform-random scores on a split's test + zero pairs.

    With equal-size test and zero sets this hovers around 0.5; it is the
    floor any real scorer has to beat.
    """
    pairs, labels = _label_pairs(split)
    rng = np.random.default_rng(seed)
    scores = rng.random(len(pairs))
    return average_precision(
        (((int(p[0]), int(p[1])), float(s), label)
         for p, s, label in zip(pairs, scores, labels)),
        tie_break=tie_break,
    )


def evaluate_link_prediction(tel: TemporalEdgeList, measure: Measure,
                             combo: DegreeCombination, fraction: float = 0.75, *,
                             seed: int, tie_break: str = "lexicographic") -> APResult:
    """Creation-side mirror of :func:`evaluate`.

    Positives are edges present at the end but not at ``t1`` (newly
    formed); negatives are an equal-size seeded sample of ordered pairs
    that never occur anywhere in the stream.  Pairs are ranked by the raw
    link-prediction measure on the ``t1`` snapshot (no negation).
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be strictly between 0 and 1, got {fraction}")
    if len(tel) == 0:
        raise ValueError("cannot evaluate an empty event stream")
    t0, t_end = tel.time_first, tel.time_last
    t1 = t0 + fraction * (t_end - t0)
    n = tel.node_count
    g1 = snapshot_at(tel, t1)
    g_end = snapshot_at(tel, t_end)
    k1 = _edge_keys(g1)
    k_end = _edge_keys(g_end)
    new_keys = np.setdiff1d(k_end, k1, assume_unique=True)
    if len(new_keys) == 0:
        raise ValueError(f"no new edges between t1={t1:g} and t_end={t_end}")
    ever = set((tel.src * np.int64(n) + tel.dst).tolist())
    need = len(new_keys)
    capacity = n * (n - 1) - len(ever)
    if capacity < need:
        raise ValueError(
            f"cannot sample {need} never-present pairs: only {capacity} exist"
        )
    rng = np.random.default_rng(seed)
    chosen: set[int] = set()
    while len(chosen) < need:
        draw = rng.integers(0, n * n, size=max(64, 2 * (need - len(chosen))))
        for key in draw.tolist():
            i, j = divmod(key, n)
            if i == j or key in ever or key in chosen:
                continue
            chosen.add(key)
            if len(chosen) == need:
                break
    negative_keys = np.array(sorted(chosen), dtype=np.int64)
    scored = []
    for keys, label in ((new_keys, "test"), (negative_keys, "zero")):
        for key in keys.tolist():
            i, j = divmod(key, n)
            score = link_prediction_score(g1, i, j, measure, combo)
            scored.append(((i, j), score, label))
    return average_precision(scored, tie_break=tie_break)


# ---------------------------------------------------------------------------
# survival


@dataclass
class EdgeLifetimes:
    """Per-presence-interval durations with censoring flags."""

    durations: np.ndarray
    censored: np.ndarray

    def __len__(self) -> int:
        return len(self.durations)

    @property
    def n_censored(self) -> int:
        return int(self.censored.sum())

    @property
    def n_uncensored(self) -> int:
        return len(self.durations) - self.n_censored


def edge_lifetimes(tel: TemporalEdgeList) -> EdgeLifetimes:
    """Replay the stream into edge lifetime records.

    Every add opens an interval; a matching delete closes it (uncensored,
    duration = delete - add).  Intervals still open at the final event
    time are censored with duration ``t_end - add``.  A pair deleted and
    re-added later therefore contributes one record per interval.
    """
    live: dict[tuple[int, int], int] = {}
    durations: list[int] = []
    censored: list[bool] = []
    for k in range(len(tel)):
        pair = (int(tel.src[k]), int(tel.dst[k]))
        t = int(tel.time[k])
        if tel.sign[k] > 0:
            live.setdefault(pair, t)
        elif pair in live:
            durations.append(t - live.pop(pair))
            censored.append(False)
    if live:
        t_end = tel.time_last
        for pair in sorted(live):
            durations.append(t_end - live[pair])
            censored.append(True)
    return EdgeLifetimes(np.array(durations, dtype=np.int64),
                         np.array(censored, dtype=bool))


@dataclass
class SurvivalFit:
    """Exponential lifetime fit."""

    half_life: float
    lifetimes_used: int
    censored: int

    @property
    def rate(self) -> float:
        return math.log(2.0) / self.half_life


def _as_lifetimes(lifetimes) -> EdgeLifetimes:
    if isinstance(lifetimes, EdgeLifetimes):
        return lifetimes
    rows = list(lifetimes)
    return EdgeLifetimes(
        np.array([r[0] for r in rows], dtype=np.float64),
        np.array([bool(r[1]) for r in rows], dtype=bool),
    )


def fit_exponential_half_life(lifetimes) -> SurvivalFit:
    """Censored maximum-likelihood exponential fit.

    The rate estimate is ``#uncensored / sum(all durations)`` — censored
    intervals contribute observation time but no event — and the half-life
    is ``ln 2 / rate``.  Requires at least two uncensored records.
    """
    records = _as_lifetimes(lifetimes)
    uncensored = records.n_uncensored
    if uncensored < 2:
        raise ValueError(
            f"need at least two uncensored lifetimes to fit, got {uncensored}"
        )
    total = float(records.durations.sum())
    if total <= 0:
        raise ValueError("total observed lifetime is zero; cannot fit a rate")
    rate = uncensored / total
    return SurvivalFit(half_life=math.log(2.0) / rate,
                       lifetimes_used=len(records),
                       censored=records.n_censored)


def survival_curve(lifetimes) -> list[tuple[float, float]]:
    """Kaplan–Meier survival estimate as ``(t, fraction_surviving)`` steps.

    Starts at ``(0, 1.0)``; censored records leave the risk set without
    producing a drop.
    """
    records = _as_lifetimes(lifetimes)
    if len(records) == 0:
        return [(0.0, 1.0)]
    order = np.argsort(records.durations, kind="stable")
    durations = records.durations[order]
    censored = records.censored[order]
    points = [(0.0, 1.0)]
    surviving = 1.0
    total = len(durations)
    k = 0
    while k < total:
        t = durations[k]
        deaths = 0
        block_end = k
        while block_end < total and durations[block_end] == t:
            if not censored[block_end]:
                deaths += 1
            block_end += 1
        if deaths:
            at_risk = total - k
            surviving *= 1.0 - deaths / at_risk
            points.append((float(t), surviving))
        k = block_end
    return points


def edge_ages(tel: TemporalEdgeList, t: float) -> dict[tuple[int, int], float]:
    """Age of each edge alive at ``t`` (time since its current presence
    interval began).

    Support for age-based baseline scorers: under memoryless lifetimes,
    ranking by age carries no decay signal.
    """
    live: dict[tuple[int, int], int] = {}
    for k in range(len(tel)):
        if tel.time[k] > t:
            break
        pair = (int(tel.src[k]), int(tel.dst[k]))
        if tel.sign[k] > 0:
            live.setdefault(pair, int(tel.time[k]))
        else:
            live.pop(pair, None)
    return {pair: float(t - added) for pair, added in live.items()}
