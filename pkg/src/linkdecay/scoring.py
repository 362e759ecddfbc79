"""Decay scores for directed edges.

Two families of scores rank edges by how likely they are to disappear:

* ``score`` model — the negation of a classic link-prediction measure.
  A pair that looks like a bad candidate for link *formation* is a good
  candidate for decay, so ``complement_score = -link_prediction_score``.
* ``network`` model — the same measure evaluated on the complement graph
  (every absent pair becomes an edge, self-loops stay excluded), computed
  through closed forms in the original graph's degrees and neighbor sets,
  so the quadratic-size complement is never materialized.

Five measures are supported (:class:`Measure`): preferential attachment,
common neighbors, cosine, Jaccard, and inverse-log-degree-weighted common
neighbors.  All of them are parameterized by a
:class:`~linkdecay.graph.DegreeCombination` that adapts the undirected
definitions to directed graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .graph import DegreeCombination, Graph, _check_pair

__all__ = [
    "Measure",
    "ScoreModel",
    "ScoreSpec",
    "ScoredEdge",
    "all_specs",
    "complement_network_score",
    "complement_score",
    "decay_score",
    "link_prediction_score",
    "score_batch",
]


class Measure(str, Enum):
    """Similarity measures underlying the decay scores."""

    PA = "pa"        # preferential attachment: product of endpoint degrees
    CN = "cn"        # common neighbor count
    COS = "cos"      # cosine: cn / sqrt(d1 * d2)
    JACC = "jacc"    # Jaccard: cn / |union of neighborhoods|
    ADAD = "adad"    # common neighbors weighted by 1 / log(degree)

    @classmethod
    def parse(cls, text: str) -> "Measure":
        try:
            return cls(text)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown measure {text!r} (expected one of: {valid})") from None


class ScoreModel(str, Enum):
    """How a measure is turned into a decay score."""

    COMPLEMENT_SCORE = "score"      # negated link-prediction score
    COMPLEMENT_NETWORK = "network"  # measure evaluated on the complement graph

    @classmethod
    def parse(cls, text: str) -> "ScoreModel":
        try:
            return cls(text)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown model {text!r} (expected one of: {valid})") from None


@dataclass(frozen=True)
class ScoreSpec:
    """A fully resolved scorer: model x measure x combo (+ flags)."""

    model: ScoreModel
    measure: Measure
    combo: DegreeCombination
    adad_complement_weights: bool = False

    @classmethod
    def from_strings(cls, model: str, measure: str, combo: str,
                     adad_complement_weights: bool = False) -> "ScoreSpec":
        return cls(ScoreModel.parse(model), Measure.parse(measure),
                   DegreeCombination.parse(combo), bool(adad_complement_weights))

    def fields(self) -> dict[str, str]:
        """Serialized form, e.g. for manifests and TSV rows."""
        return {
            "model": self.model.value,
            "measure": self.measure.value,
            "combo": self.combo.value,
            "adad-complement-weights": "true" if self.adad_complement_weights else "false",
        }

    def __str__(self) -> str:
        tag = f"{self.model.value}/{self.measure.value}/{self.combo.value}"
        if self.adad_complement_weights:
            tag += "+acw"
        return tag


def all_specs() -> list[ScoreSpec]:
    """The full grid: 2 models x 5 measures x 4 combos = 40 specs."""
    return [ScoreSpec(model, measure, combo)
            for model in ScoreModel
            for measure in Measure
            for combo in DegreeCombination]


@dataclass(frozen=True)
class ScoredEdge:
    src: int
    dst: int
    score: float


def _log_weight(degree: int) -> float:
    """Inverse-log weight, 0 whenever the log is undefined or non-positive."""
    return 0.0 if degree <= 1 else 1.0 / math.log(degree)


def _common(s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    return np.intersect1d(s1, s2, assume_unique=True)


def link_prediction_score(g: Graph, i: int, j: int, measure: Measure,
                          combo: DegreeCombination) -> float:
    """Raw link-prediction score of the pair ``(i, j)``.

    Parameters
    ----------
    g : Graph
        Snapshot to score against.
    i, j : int
        Candidate endpoints; must be distinct known nodes.
    measure : Measure
        Similarity measure.
    combo : DegreeCombination
        Directed reading of degrees / neighbor sets.

    Returns
    -------
    float
        Always finite.  Degenerate denominators (zero degrees for cosine,
        empty union for Jaccard) yield 0.

    Raises
    ------
    IndexError
        If an endpoint is not a node of ``g``.
    ValueError
        If ``i == j``.
    """
    _check_pair(g, i, j)
    measure = Measure(measure)
    combo = DegreeCombination(combo)
    if measure is Measure.PA:
        d1, d2 = combo.endpoint_degrees(g, i, j)
        return float(d1 * d2)
    s1, s2 = combo.endpoint_sets(g, i, j)
    common = _common(s1, s2)
    cn = len(common)
    if measure is Measure.CN:
        return float(cn)
    if measure is Measure.COS:
        d1, d2 = combo.endpoint_degrees(g, i, j)
        if d1 == 0 or d2 == 0:
            return 0.0
        return cn / (math.sqrt(d1) * math.sqrt(d2))
    if measure is Measure.JACC:
        union = len(s1) + len(s2) - cn
        if union == 0:
            return 0.0
        return cn / union
    # ADAD: accumulate in ascending node order for reproducible float sums.
    total = 0.0
    for k in common:
        if combo is DegreeCombination.OUT:
            dk = g.out_degree(int(k))
        elif combo is DegreeCombination.IN:
            dk = g.in_degree(int(k))
        else:
            dk = g.total_degree(int(k))
        total += _log_weight(dk)
    return total


def complement_score(g: Graph, i: int, j: int, measure: Measure,
                     combo: DegreeCombination) -> float:
    """Decay score of ``(i, j)`` as the negated link-prediction score.

    High values mean the pair looks structurally weak: the maximum
    attainable value is 0 (no support at all for the tie).
    """
    return -link_prediction_score(g, i, j, measure, combo)


def complement_network_score(g: Graph, i: int, j: int, measure: Measure,
                             combo: DegreeCombination,
                             adad_complement_weights: bool = False) -> float:
    """Decay score of ``(i, j)``: the measure evaluated on the complement
    graph via closed forms.

    Parameters
    ----------
    g : Graph
        Snapshot to score against.
    i, j : int
        Candidate endpoints; must be distinct known nodes.
    measure : Measure
        Similarity measure, evaluated as if every absent pair were an edge
        and every present edge absent (self-loops excluded throughout).
    combo : DegreeCombination
        Directed reading of degrees / neighbor sets.
    adad_complement_weights : bool
        Only for ``Measure.ADAD``.  Off (default): common-neighbor weights
        use the *original* degrees, ``1 / log d(k)``.  On: weights use the
        complement degrees, ``1 / log(n - 1 - d(k))``.  Either way the
        log-guard maps arguments <= 1 to weight 0, so scores stay finite.

    Returns
    -------
    float
        Always finite.

    Notes
    -----
    With ``n`` nodes, endpoint degrees ``d1, d2``, common-neighbor count
    ``cn`` and neighborhood union ``u`` read off the *original* graph, the
    closed forms are::

        pa    (n - 1 - d1) * (n - 1 - d2)
        cn    n - d1 - d2 + cn
        cos   (n - d1 - d2 + cn) / sqrt((n - 1 - d1) * (n - 1 - d2))
        jacc  (n - d1 - d2 + cn) / u
        adad  sum_V w - sum_{N(i)} w - sum_{N(j)} w + sum_{N(i) cap N(j)} w

    The ``jacc`` denominator deliberately reuses the original graph's
    union, and the ``adad`` sums run over original neighborhoods without
    excluding the endpoints; both follow the published closed forms even
    though an exhaustive complement evaluation differs (the oracle module
    measures that deviation rather than hiding it).  ``cn`` and ``pa`` are
    exact on reciprocated existing edges; on arbitrary pairs the ``cn``
    form can overcount by at most 2 (the endpoints themselves).
    """
    _check_pair(g, i, j)
    measure = Measure(measure)
    combo = DegreeCombination(combo)
    n = g.node_count
    d1, d2 = combo.endpoint_degrees(g, i, j)
    if measure is Measure.PA:
        return float((n - 1 - d1) * (n - 1 - d2))
    if measure is Measure.ADAD:
        weights = _adad_weights(g, combo, adad_complement_weights)
        s1, s2 = combo.endpoint_sets(g, i, j)
        common = _common(s1, s2)
        return (float(weights.sum())
                - float(weights[s1].sum())
                - float(weights[s2].sum())
                + float(weights[common].sum()))
    s1, s2 = combo.endpoint_sets(g, i, j)
    cn = len(_common(s1, s2))
    numerator = n - d1 - d2 + cn
    if measure is Measure.CN:
        return float(numerator)
    if measure is Measure.COS:
        a = n - 1 - d1
        b = n - 1 - d2
        if a <= 0 or b <= 0:
            return 0.0
        return numerator / (math.sqrt(a) * math.sqrt(b))
    # JACC
    union = len(s1) + len(s2) - cn
    if union == 0:
        return 0.0
    return numerator / union


def _adad_weights(g: Graph, combo: DegreeCombination,
                  complement: bool) -> np.ndarray:
    degrees = combo.weight_degrees(g)
    if complement:
        degrees = g.node_count - 1 - degrees
    weights = np.zeros(len(degrees), dtype=np.float64)
    mask = degrees > 1
    weights[mask] = 1.0 / np.log(degrees[mask])
    return weights


def decay_score(g: Graph, i: int, j: int, spec: ScoreSpec) -> float:
    """Score one pair under a fully resolved :class:`ScoreSpec`."""
    if spec.model is ScoreModel.COMPLEMENT_SCORE:
        return complement_score(g, i, j, spec.measure, spec.combo)
    return complement_network_score(g, i, j, spec.measure, spec.combo,
                                    spec.adad_complement_weights)


def score_batch(g: Graph, pairs: Iterable[Sequence[int]],
                spec: ScoreSpec) -> list[ScoredEdge]:
    """Score many pairs under one spec, preserving input order.

    Per-pair failures are re-raised with the offending position prepended,
    so a bad row in a large batch is easy to locate.
    """
    out: list[ScoredEdge] = []
    for k, pair in enumerate(pairs):
        i, j = int(pair[0]), int(pair[1])
        try:
            out.append(ScoredEdge(i, j, decay_score(g, i, j, spec)))
        except (ValueError, IndexError) as exc:
            raise type(exc)(f"pair {k} = ({i}, {j}): {exc}") from exc
    return out
