"""Graph snapshots, degree/neighborhood queries, and combo semantics."""

import io

import numpy as np
import pytest

from linkdecay.datasets import swim_surf, swim_surf_events
from linkdecay.events import read_events
from linkdecay.graph import (DegreeCombination, Graph, common_neighbor_count,
                             snapshot_at, union_neighborhood_size)

COMBOS = list(DegreeCombination)


def _read(text):
    return read_events(io.StringIO(text))


def _names(g, ids, nodes):
    return {ids[v] for v in nodes}


# ---- construction and validation ----

def test_from_edges_basic():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert g.node_count == 3
    assert g.edge_count == 3
    assert g.has_edge(0, 1) and not g.has_edge(1, 0)


def test_rejects_self_loop():
    with pytest.raises(ValueError, match="self-loop"):
        Graph.from_edges(2, [(0, 0)])


def test_rejects_duplicate_edge():
    with pytest.raises(ValueError, match="duplicate"):
        Graph.from_edges(2, [(0, 1), (0, 1)])


def test_rejects_out_of_range_endpoint():
    with pytest.raises(ValueError, match="out of range"):
        Graph.from_edges(2, [(0, 5)])


def test_neighbor_arrays_sorted_and_read_only():
    g = Graph.from_edges(5, [(2, 4), (2, 0), (2, 3), (1, 2)])
    out = g.out_neighbors(2)
    assert list(out) == [0, 3, 4]
    with pytest.raises(ValueError):
        out[0] = 9


def test_edges_lexicographic():
    g = Graph.from_edges(4, [(3, 0), (1, 2), (1, 0)])
    assert [tuple(e) for e in g.edges()] == [(1, 0), (1, 2), (3, 0)]


def test_equality():
    a = Graph.from_edges(3, [(0, 1), (2, 1)])
    b = Graph.from_edges(3, [(2, 1), (0, 1)])
    c = Graph.from_edges(3, [(0, 1)])
    assert a == b
    assert a != c


# ---- degrees ----

def test_degree_modes_on_mixed_node():
    # node 0 has 2 outgoing and 3 incoming links (one reciprocated)
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 0), (3, 0), (4, 0)])
    assert g.degree(0, "out") == 2
    assert g.degree(0, "in") == 3
    assert g.degree(0, "total") == 5
    # total counts the reciprocated neighbor twice; distinct neighbors don't
    assert g.neighbor_count(0) == 4


def test_isolated_node_degrees():
    g = Graph.from_edges(3, [(0, 1)])
    for mode in ("in", "out", "total"):
        assert g.degree(2, mode) == 0
    assert g.neighbor_count(2) == 0


def test_directed_three_cycle_degrees():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert g.degree(0, "out") == 1
    assert g.degree(0, "in") == 1
    assert g.degree(0, "total") == 2


def test_unknown_node_rejected():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(IndexError, match="unknown node"):
        g.degree(7, "out")
    with pytest.raises(IndexError, match="unknown node"):
        g.neighbors(7, "both")


def test_bad_mode_rejected():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        g.degree(0, "sideways")


def test_degree_arrays_match_scalar_queries():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(2, 25))
        mask = rng.random((n, n)) < 0.2
        np.fill_diagonal(mask, False)
        src, dst = np.nonzero(mask)
        g = Graph(n, src, dst)
        assert [g.out_degree(v) for v in range(n)] == list(g.out_degrees)
        assert [g.in_degree(v) for v in range(n)] == list(g.in_degrees)
        assert [g.neighbor_count(v) for v in range(n)] == list(g.neighbor_counts)
        assert int(g.out_degrees.sum()) == g.edge_count


# ---- neighborhoods on the bundled fixture ----

def test_fixture_neighbors_both():
    g = swim_surf()
    tel = swim_surf_events()
    ids = tel.node_ids
    swim = ids.index("swim")
    assert _names(g, ids, g.neighbors(swim, "both")) == {"water", "beach", "surf"}


def test_directed_neighbors_single_edge():
    g = Graph.from_edges(2, [(0, 1)])
    assert list(g.neighbors(1, "out")) == []
    assert list(g.neighbors(1, "in")) == [0]
    assert list(g.neighbors(1, "both")) == [0]


def test_fixture_common_neighbors():
    g = swim_surf()
    ids = swim_surf_events().node_ids
    swim, surf = ids.index("swim"), ids.index("surf")
    water, beach = ids.index("water"), ids.index("beach")
    assert common_neighbor_count(g, swim, surf, DegreeCombination.SYM) == 0
    assert common_neighbor_count(g, water, beach, DegreeCombination.SYM) == 1
    assert union_neighborhood_size(g, swim, surf, DegreeCombination.SYM) == 6
    assert union_neighborhood_size(g, water, beach, DegreeCombination.SYM) == 3


def test_common_neighbors_empty_for_isolated():
    g = Graph.from_edges(4, [(0, 1)])
    for combo in COMBOS:
        assert common_neighbor_count(g, 2, 3, combo) == 0


def test_pair_queries_reject_equal_endpoints():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError, match="distinct"):
        common_neighbor_count(g, 1, 1)
    with pytest.raises(ValueError, match="distinct"):
        union_neighborhood_size(g, 2, 2)


def test_asym_counts_directed_two_paths():
    # exactly the paths 0 -> k -> 3, k in {1, 2}
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)])
    assert common_neighbor_count(g, 0, 3, DegreeCombination.ASYM) == 2
    assert common_neighbor_count(g, 3, 0, DegreeCombination.ASYM) == 0


def test_inclusion_exclusion_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(3, 20))
        mask = rng.random((n, n)) < rng.uniform(0.1, 0.4)
        np.fill_diagonal(mask, False)
        src, dst = np.nonzero(mask)
        g = Graph(n, src, dst)
        i, j = rng.choice(n, size=2, replace=False)
        for combo in COMBOS:
            s1, s2 = combo.endpoint_sets(g, int(i), int(j))
            inter = common_neighbor_count(g, int(i), int(j), combo)
            union = union_neighborhood_size(g, int(i), int(j), combo)
            assert inter + union == len(s1) + len(s2)


def test_combo_endpoint_degrees_match_sets():
    """The degree pair each combo reports equals the sizes of the neighbor
    sets it selects, except ASYM/IN/OUT where they coincide by definition
    and SYM where the count is over distinct neighbors."""
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = int(rng.integers(3, 15))
        mask = rng.random((n, n)) < 0.3
        np.fill_diagonal(mask, False)
        src, dst = np.nonzero(mask)
        g = Graph(n, src, dst)
        i, j = rng.choice(n, size=2, replace=False)
        for combo in COMBOS:
            d1, d2 = combo.endpoint_degrees(g, int(i), int(j))
            s1, s2 = combo.endpoint_sets(g, int(i), int(j))
            assert (d1, d2) == (len(s1), len(s2))


def test_combo_parse():
    assert DegreeCombination.parse("sym") is DegreeCombination.SYM
    with pytest.raises(ValueError, match="unknown combo"):
        DegreeCombination.parse("diag")


# ---- snapshots ----

def test_snapshot_before_any_event_is_empty():
    tel = _read("a\tb\t+1\t10\n")
    g = snapshot_at(tel, 5)
    assert g.edge_count == 0
    assert g.node_count == 2


def test_snapshot_sees_edge_until_delete():
    tel = _read("a\tb\t+1\t10\na\tb\t-1\t80\n")
    assert snapshot_at(tel, 75).has_edge(0, 1)
    assert not snapshot_at(tel, 80).has_edge(0, 1)


def test_snapshot_after_re_add():
    tel = _read("a\tb\t+1\t10\na\tb\t-1\t80\na\tb\t+1\t90\n")
    assert snapshot_at(tel, 95).has_edge(0, 1)
    assert not snapshot_at(tel, 85).has_edge(0, 1)


def test_snapshot_idempotent_between_event_times():
    tel = _read("a\tb\t+1\t10\nb\tc\t+1\t20\na\tb\t-1\t30\n")
    assert snapshot_at(tel, 20) == snapshot_at(tel, 29)
    assert snapshot_at(tel, 10) == snapshot_at(tel, 19)


def test_snapshot_equal_time_events_apply_in_input_order():
    tel = _read("a\tb\t+1\t5\na\tb\t-1\t5\n")
    assert not snapshot_at(tel, 5).has_edge(0, 1)
    tel2 = _read("a\tb\t-1\t5\na\tb\t+1\t5\n")
    assert snapshot_at(tel2, 5).has_edge(0, 1)


def test_snapshot_matches_naive_replay_on_random_streams():
    rng = np.random.default_rng(202)
    for _ in range(30):
        n = int(rng.integers(2, 30))
        k = int(rng.integers(1, 200))
        records = []
        live = set()
        for _ in range(k):
            i, j = rng.integers(0, n, size=2)
            if i == j:
                continue
            pair = (int(i), int(j))
            t = int(rng.integers(0, 50))
            if pair in live and rng.random() < 0.4:
                records.append((pair[0], pair[1], -1, t))
                live.discard(pair)
            elif pair not in live:
                records.append((pair[0], pair[1], 1, t))
                live.add(pair)
        records.sort(key=lambda r: r[3])
        text = "".join(f"n{a}\tn{b}\t{'+1' if s > 0 else '-1'}\t{t}\n"
                       for a, b, s, t in records)
        tel = _read(text)
        t_query = int(rng.integers(0, 55))
        # naive replay of the prefix, honoring input order at equal times
        state = set()
        for e in tel.events:
            if e.time > t_query:
                break
            if e.is_add:
                state.add((e.src, e.dst))
            else:
                state.discard((e.src, e.dst))
        g = snapshot_at(tel, t_query)
        assert {tuple(e) for e in g.edges()} == state


def test_fixture_snapshot_loses_bridge_after_delete():
    tel = swim_surf_events(bridge_delete_time=80)
    ids = tel.node_ids
    swim, surf = ids.index("swim"), ids.index("surf")
    g75 = snapshot_at(tel, 75)
    assert g75.edge_count == 14
    g80 = snapshot_at(tel, 80)
    assert g80.edge_count == 12
    assert not g80.has_edge(swim, surf) and not g80.has_edge(surf, swim)
