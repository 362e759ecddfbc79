"""Directed graph snapshots with CSR-style sorted adjacency.

A :class:`Graph` is an immutable snapshot of a directed simple graph over a
fixed node universe ``0..n-1``.  Neighbors are held as per-node sorted
integer arrays, giving O(degree) scans and O(log degree) membership tests.
Snapshots are produced from event streams by :func:`snapshot_at`: an edge is
present at time ``t`` iff its last event at or before ``t`` is an add.

Pairwise queries (common neighbors, neighborhood unions) are parameterized
by a :class:`DegreeCombination`, which fixes how a directed graph's two
degrees and two neighbor sets are assigned to the endpoints of a candidate
edge ``(i, j)``.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

import numpy as np

from .events import TemporalEdgeList

__all__ = [
    "DegreeCombination",
    "Graph",
    "common_neighbor_count",
    "snapshot_at",
    "union_neighborhood_size",
]


class Graph:
    """Immutable directed simple graph with sorted neighbor arrays."""

    __slots__ = ("_n", "_out_indptr", "_out_indices", "_in_indptr",
                 "_in_indices", "_both_indptr", "_both_indices")

    def __init__(self, n: int, src: np.ndarray, dst: np.ndarray,
                 validate: bool = True):
        if n < 0:
            raise ValueError(f"node count must be >= 0, got {n}")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.shape != dst.shape or src.ndim != 1:
            raise ValueError("src and dst must be 1-d arrays of equal length")
        if validate and len(src):
            if src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(src == dst):
                raise ValueError("self-loops are not allowed")
        self._n = int(n)
        self._out_indptr, self._out_indices = _build_csr(n, src, dst)
        self._in_indptr, self._in_indices = _build_csr(n, dst, src)
        if validate and len(src):
            # Sorted rows make duplicate edges adjacent.
            rows = np.repeat(np.arange(n), np.diff(self._out_indptr))
            dup = (rows[1:] == rows[:-1]) & (self._out_indices[1:] == self._out_indices[:-1])
            if np.any(dup):
                raise ValueError("duplicate edges are not allowed")
        self._both_indptr, self._both_indices = _merge_csr(
            n, self._out_indptr, self._out_indices,
            self._in_indptr, self._in_indices)
        for arr in (self._out_indptr, self._out_indices, self._in_indptr,
                    self._in_indices, self._both_indptr, self._both_indices):
            arr.flags.writeable = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on ``n`` nodes from ``(src, dst)`` pairs."""
        pairs = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls(n, pairs[:, 0], pairs[:, 1])

    # ---- size ----

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._out_indices)

    # ---- per-node queries ----

    def _check_node(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self._n:
            raise IndexError(f"unknown node {v} (graph has {self._n} nodes)")
        return v

    def out_neighbors(self, v: int) -> np.ndarray:
        """Sorted successors of ``v`` (targets of edges v -> *)."""
        v = self._check_node(v)
        return self._out_indices[self._out_indptr[v]:self._out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        """Sorted predecessors of ``v`` (sources of edges * -> v)."""
        v = self._check_node(v)
        return self._in_indices[self._in_indptr[v]:self._in_indptr[v + 1]]

    def all_neighbors(self, v: int) -> np.ndarray:
        """Sorted union of successors and predecessors of ``v``."""
        v = self._check_node(v)
        return self._both_indices[self._both_indptr[v]:self._both_indptr[v + 1]]

    def neighbors(self, v: int, direction: str = "both") -> np.ndarray:
        """Neighbor set of ``v`` in the given ``direction`` (out/in/both)."""
        if direction == "both":
            return self.all_neighbors(v)
        if direction == "out":
            return self.out_neighbors(v)
        if direction == "in":
            return self.in_neighbors(v)
        raise ValueError(f"direction must be 'out', 'in' or 'both', got {direction!r}")

    def out_degree(self, v: int) -> int:
        v = self._check_node(v)
        return int(self._out_indptr[v + 1] - self._out_indptr[v])

    def in_degree(self, v: int) -> int:
        v = self._check_node(v)
        return int(self._in_indptr[v + 1] - self._in_indptr[v])

    def total_degree(self, v: int) -> int:
        """Out-degree plus in-degree.  An edge present in both directions
        contributes twice."""
        return self.out_degree(v) + self.in_degree(v)

    def neighbor_count(self, v: int) -> int:
        """Number of distinct neighbors, irrespective of direction."""
        v = self._check_node(v)
        return int(self._both_indptr[v + 1] - self._both_indptr[v])

    def degree(self, v: int, mode: str = "total") -> int:
        """Degree of ``v``: ``'out'``, ``'in'`` or ``'total'`` (= out + in)."""
        if mode == "total":
            return self.total_degree(v)
        if mode == "out":
            return self.out_degree(v)
        if mode == "in":
            return self.in_degree(v)
        raise ValueError(f"mode must be 'out', 'in' or 'total', got {mode!r}")

    # ---- whole-graph views ----

    @property
    def out_degrees(self) -> np.ndarray:
        return np.diff(self._out_indptr)

    @property
    def in_degrees(self) -> np.ndarray:
        return np.diff(self._in_indptr)

    @property
    def neighbor_counts(self) -> np.ndarray:
        return np.diff(self._both_indptr)

    def has_edge(self, i: int, j: int) -> bool:
        i = self._check_node(i)
        j = self._check_node(j)
        row = self.out_neighbors(i)
        k = np.searchsorted(row, j)
        return bool(k < len(row) and row[k] == j)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array in lexicographic order."""
        rows = np.repeat(np.arange(self._n), self.out_degrees)
        return np.column_stack((rows, self._out_indices))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._n == other._n
                and np.array_equal(self._out_indptr, other._out_indptr)
                and np.array_equal(self._out_indices, other._out_indices))

    def __hash__(self):  # mutable-free but identity hashing keeps caching sane
        return id(self)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.edge_count})"


def _build_csr(n: int, rows: np.ndarray, cols: np.ndarray):
    order = np.lexsort((cols, rows))
    indices = cols[order]
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


def _merge_csr(n, aptr, aidx, bptr, bidx):
    """Per-node sorted union of two CSR adjacency structures."""
    merged = [np.union1d(aidx[aptr[v]:aptr[v + 1]], bidx[bptr[v]:bptr[v + 1]])
              for v in range(n)]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum([len(m) for m in merged], out=indptr[1:])
    indices = (np.concatenate(merged) if merged
               else np.empty(0, dtype=np.int64)).astype(np.int64, copy=False)
    return indptr, indices


class DegreeCombination(str, Enum):
    """How the two endpoint degrees and neighbor sets of a candidate edge
    ``(i, j)`` are read off a directed graph.

    ======  =======================  ==========================================
    member  endpoint degrees         endpoint neighbor sets
    ======  =======================  ==========================================
    SYM     distinct-neighbor        all_neighbors(i), all_neighbors(j)
            counts of i and j
    ASYM    out_degree(i),           out_neighbors(i), in_neighbors(j)
            in_degree(j)             (common count = directed 2-paths i->k->j)
    IN      in_degree(i),            in_neighbors(i), in_neighbors(j)
            in_degree(j)
    OUT     out_degree(i),           out_neighbors(i), out_neighbors(j)
            out_degree(j)
    ======  =======================  ==========================================

    ``weight_degree`` — the per-node degree used to weight a common neighbor
    ``k`` (log-degree weighting) — follows the neighbor direction for OUT and
    IN, and the in+out total for SYM and ASYM.  Note the deliberate
    asymmetry for SYM: endpoint degrees count distinct neighbors, while
    weight degrees use the in+out total.
    """

    SYM = "sym"
    ASYM = "asym"
    IN = "in"
    OUT = "out"

    @classmethod
    def parse(cls, text: str) -> "DegreeCombination":
        try:
            return cls(text)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown combo {text!r} (expected one of: {valid})") from None

    def endpoint_degrees(self, g: Graph, i: int, j: int) -> tuple[int, int]:
        if self is DegreeCombination.SYM:
            return g.neighbor_count(i), g.neighbor_count(j)
        if self is DegreeCombination.ASYM:
            return g.out_degree(i), g.in_degree(j)
        if self is DegreeCombination.IN:
            return g.in_degree(i), g.in_degree(j)
        return g.out_degree(i), g.out_degree(j)

    def endpoint_sets(self, g: Graph, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
        if self is DegreeCombination.SYM:
            return g.all_neighbors(i), g.all_neighbors(j)
        if self is DegreeCombination.ASYM:
            return g.out_neighbors(i), g.in_neighbors(j)
        if self is DegreeCombination.IN:
            return g.in_neighbors(i), g.in_neighbors(j)
        return g.out_neighbors(i), g.out_neighbors(j)

    def degree_arrays(self, g: Graph) -> tuple[np.ndarray, np.ndarray]:
        """Whole-graph endpoint-degree vectors (first slot, second slot)."""
        if self is DegreeCombination.SYM:
            counts = g.neighbor_counts
            return counts, counts
        if self is DegreeCombination.ASYM:
            return g.out_degrees, g.in_degrees
        if self is DegreeCombination.IN:
            return g.in_degrees, g.in_degrees
        return g.out_degrees, g.out_degrees

    def weight_degrees(self, g: Graph) -> np.ndarray:
        """Per-node degrees used to weight common neighbors."""
        if self is DegreeCombination.OUT:
            return g.out_degrees
        if self is DegreeCombination.IN:
            return g.in_degrees
        return g.out_degrees + g.in_degrees


def snapshot_at(tel: TemporalEdgeList, t: float) -> Graph:
    """Materialize the graph at time ``t`` from an event stream.

    An edge is present iff its most recent event at or before ``t`` is an
    add.  The node universe is every id the stream has ever seen, so
    snapshots at different times are over the same nodes.
    """
    n = tel.node_count
    hi = int(np.searchsorted(tel.time, t, side="right"))
    src = tel.src[:hi]
    dst = tel.dst[:hi]
    sign = tel.sign[:hi]
    if hi == 0:
        return Graph(n, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64),
                     validate=False)
    keys = src * np.int64(n) + dst
    # Index of the last event per edge key: first occurrence in the reversed
    # stream.
    _, first_in_reversed = np.unique(keys[::-1], return_index=True)
    last = hi - 1 - first_in_reversed
    live = last[sign[last] > 0]
    return Graph(n, src[live], dst[live], validate=False)


def _check_pair(g: Graph, i: int, j: int) -> None:
    g._check_node(i)
    g._check_node(j)
    if int(i) == int(j):
        raise ValueError(f"candidate pair must have distinct endpoints, got ({i}, {j})")


def common_neighbor_count(g: Graph, i: int, j: int,
                          combo: DegreeCombination = DegreeCombination.SYM) -> int:
    """Size of the intersection of the combo-selected neighbor sets.

    For ASYM this is the number of directed 2-paths ``i -> k -> j``.
    """
    _check_pair(g, i, j)
    s1, s2 = combo.endpoint_sets(g, i, j)
    return len(np.intersect1d(s1, s2, assume_unique=True))


def union_neighborhood_size(g: Graph, i: int, j: int,
                            combo: DegreeCombination = DegreeCombination.SYM) -> int:
    """Size of the union of the combo-selected neighbor sets."""
    _check_pair(g, i, j)
    s1, s2 = combo.endpoint_sets(g, i, j)
    inter = len(np.intersect1d(s1, s2, assume_unique=True))
    return len(s1) + len(s2) - inter
