"""Synthetic stream generator: determinism, validity, and planted signals."""

import math
import warnings

import numpy as np
import pytest
from scipy.stats import spearmanr

from linkdecay.evaluation import (edge_lifetimes, fit_exponential_half_life,
                                  temporal_split)
from linkdecay.generate import (GenConfig, deletion_share, generate,
                                solve_window_span)
from linkdecay.graph import snapshot_at


def test_byte_identical_given_seed(tmp_path):
    config = GenConfig(seed=99, n_nodes=120, n_add_events=1500)
    a, b = generate(config), generate(config)
    pa, pb = tmp_path / "a.tsv", tmp_path / "b.tsv"
    a.write(str(pa))
    b.write(str(pb))
    assert pa.read_bytes() == pb.read_bytes()


def test_different_seeds_differ():
    a = generate(GenConfig(seed=1, n_nodes=120, n_add_events=1500))
    b = generate(GenConfig(seed=2, n_nodes=120, n_add_events=1500))
    assert not (np.array_equal(a.src, b.src) and np.array_equal(a.time, b.time))


def test_output_is_valid_event_stream():
    tel = generate(GenConfig(seed=4, n_nodes=150, n_add_events=2500))
    assert np.all(np.diff(tel.time) >= 0)
    assert np.all(tel.src != tel.dst)
    # deletes only ever target live edges; adds only absent ones
    live = set()
    for e in tel.events:
        pair = (e.src, e.dst)
        if e.is_add:
            assert pair not in live
            live.add(pair)
        else:
            assert pair in live
            live.discard(pair)
    assert tel.stats.noop_deletes == 0
    assert tel.stats.duplicate_adds == 0


def test_add_event_count_matches_config():
    tel = generate(GenConfig(seed=8, n_nodes=100, n_add_events=2000))
    assert int((tel.sign > 0).sum()) == 2000


def test_deletion_share_near_target():
    shares = [deletion_share(generate(GenConfig(seed=s)))
              for s in (0, 1, 2)]
    for share in shares:
        assert 0.24 <= share <= 0.31


def test_window_span_solver_consistency():
    span = solve_window_span(0.27, 23.0)
    rate = math.log(2.0) / 23.0
    x = span * rate
    deleted = 1.0 - (1.0 - math.exp(-x)) / x
    assert deleted == pytest.approx(0.27 / 0.73, rel=1e-9)


def test_infeasible_config_rejected():
    with pytest.raises(ValueError, match="capacity"):
        GenConfig(seed=0, n_nodes=5, n_add_events=100).validated()


def test_bad_bias_rejected():
    with pytest.raises(ValueError, match="decay_bias"):
        GenConfig(seed=0, decay_bias="heavy").validated()


def test_bad_share_target_rejected():
    with pytest.raises(ValueError, match="deletion_share_target"):
        GenConfig(seed=0, deletion_share_target=0.6).validated()


def test_half_life_round_trip():
    tel = generate(GenConfig(seed=12, n_nodes=500, n_add_events=20000))
    fit = fit_exponential_half_life(edge_lifetimes(tel))
    assert abs(fit.half_life - 23.0) / 23.0 < 0.05


def test_custom_half_life_round_trip():
    tel = generate(GenConfig(seed=13, n_nodes=500, n_add_events=20000,
                             decay_half_life=40.0))
    fit = fit_exponential_half_life(edge_lifetimes(tel))
    assert abs(fit.half_life - 40.0) / 40.0 < 0.05


def test_low_degree_bias_shows_in_rank_correlation():
    """With the low-degree hazard bias, survival through the evaluation
    window correlates positively with the endpoint-degree product."""
    tel = generate(GenConfig(seed=21, n_nodes=800, n_add_events=8000,
                             decay_bias="low_degree"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        split = temporal_split(tel, 0.75, seed=21)
    g = snapshot_at(tel, split.t1)
    products, survived = [], []
    for label, pairs in ((0, split.test_set), (1, split.zero_test_set)):
        for i, j in pairs:
            products.append(g.out_degree(int(i)) * g.out_degree(int(j)))
            survived.append(label)
    rho = spearmanr(products, survived).statistic
    assert rho > 0.1


def test_unbiased_streams_show_no_degree_correlation():
    tel = generate(GenConfig(seed=22, n_nodes=800, n_add_events=8000))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        split = temporal_split(tel, 0.75, seed=22)
    g = snapshot_at(tel, split.t1)
    products, survived = [], []
    for label, pairs in ((0, split.test_set), (1, split.zero_test_set)):
        for i, j in pairs:
            products.append(g.out_degree(int(i)) * g.out_degree(int(j)))
            survived.append(label)
    rho = spearmanr(products, survived).statistic
    assert abs(rho) < 0.1


def test_few_common_neighbors_bias_runs_and_biases():
    """Edges with no shared neighbor at add time die faster under the
    few_common_neighbors bias, raising the deletion share."""
    biased = generate(GenConfig(seed=31, n_nodes=300, n_add_events=5000,
                                decay_bias="few_common_neighbors"))
    plain = generate(GenConfig(seed=31, n_nodes=300, n_add_events=5000))
    assert deletion_share(biased) > deletion_share(plain)


def test_span_override_respected():
    tel = generate(GenConfig(seed=41, n_nodes=200, n_add_events=3000,
                             span=10.0))
    assert tel.time_last <= 10
    # a short window censors most lifetimes, so deletes are scarce
    assert deletion_share(tel) < 0.27


def test_attach_exponent_skews_degrees():
    flat = generate(GenConfig(seed=51, n_nodes=300, n_add_events=4000,
                              attach_exponent=0.0))
    skewed = generate(GenConfig(seed=51, n_nodes=300, n_add_events=4000,
                                attach_exponent=1.5))
    g_flat = snapshot_at(flat, flat.time_last)
    g_skew = snapshot_at(skewed, skewed.time_last)
    assert g_skew.out_degrees.max() > g_flat.out_degrees.max()
