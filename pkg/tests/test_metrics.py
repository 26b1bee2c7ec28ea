from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import naive_adjacency, table
from gfparadox import (AttributeTable, DomainError, GFPError, average_paradox_probability,
                       bin_edges, build_graph, characteristic_assortativity, degree_table,
                       evaluate_nodes, gfp_report, neighbor_average, paradox_holds,
                       paradox_probability_grid, pearson_degree_correlation, ring_graph)


def naive_holds(adj, x, i):
    nbrs = sorted(adj[i])
    total = 0.0
    for j in nbrs:
        total += x[j]
    return x[i] < total / len(nbrs)


def literal_assortativity(graph, x):
    """Raw-sum edge formula evaluated in exact rational arithmetic."""
    pairs = [(Fraction(x[u]), Fraction(x[v])) for u, v in graph.edges().tolist()]
    L = len(pairs)
    s_prod = sum(a * b for a, b in pairs)
    s_half = sum((a + b) / 2 for a, b in pairs)
    s_sq = sum((a * a + b * b) / 2 for a, b in pairs)
    return float((L * s_prod - s_half ** 2) / (L * s_sq - s_half ** 2))


random_graphs = st.builds(
    lambda n, p, seed: nx.gnp_random_graph(n, p, seed=seed),
    st.integers(3, 40), st.floats(0.05, 0.6), st.integers(0, 10 ** 6))


def from_nx(G):
    return build_graph(list(G.edges()), nodes=list(G.nodes()))


# -- per-node test -----------------------------------------------------------

def test_star_leaf_and_hub(star):
    k = degree_table(star)
    assert paradox_holds(star, k, 1) is True
    assert paradox_holds(star, k, 0) is False


def test_ties_do_not_count(path3):
    x = table("x", [2, 2, 2])
    assert not any(paradox_holds(path3, x, i) for i in range(3))


def test_limiting_cases_min_and_max():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    x = table("x", [5, -1, 9, 4])
    assert paradox_holds(g, x, 1) is True   # unique minimum
    assert paradox_holds(g, x, 2) is False  # unique maximum


def test_isolated_node_is_undefined():
    g = build_graph([(0, 1)], nodes=[2])
    with pytest.raises(DomainError, match="k=0"):
        paradox_holds(g, degree_table(g), 2)


def test_missing_neighbour_is_named():
    g = build_graph([(0, 1), (0, 7)])
    x = table("x", [1, 2, np.nan])
    with pytest.raises(DomainError, match="neighbour 7"):
        paradox_holds(g, x, 0)


def test_missing_neighbour_excludes_node_from_H():
    g = build_graph([(0, 1), (1, 2), (2, 3)])
    x = table("x", [1, 2, np.nan, 4])
    ev = evaluate_nodes(g, x)
    assert ev.evaluable.tolist() == [True, False, False, False]
    assert ev.n_neighbor_missing == 2
    assert average_paradox_probability(g, x) == 1.0


# -- H ------------------------------------------------------------------------

def test_H_star(star):
    assert average_paradox_probability(star, degree_table(star)) == 0.75


def test_H_path(path3):
    assert average_paradox_probability(path3, degree_table(path3)) == pytest.approx(2 / 3, abs=0)


def test_H_requires_evaluable_nodes():
    g = build_graph([(0, 1)], nodes=[2])
    x = table("x", [np.nan, np.nan, 1.0])
    with pytest.raises(DomainError):
        average_paradox_probability(g, x)


@settings(max_examples=60, deadline=None)
@given(random_graphs, st.integers(0, 10 ** 6))
def test_vectorised_test_matches_naive(G, seed):
    g = from_nx(G)
    x = np.random.default_rng(seed).integers(0, 6, g.node_count).astype(float)
    t = AttributeTable("x", x)
    adj = naive_adjacency(g)
    ev = evaluate_nodes(g, t)
    for i in range(g.node_count):
        if adj[i]:
            assert ev.evaluable[i]
            assert bool(ev.holds[i]) == naive_holds(adj, x, i) == paradox_holds(g, t, i)
        else:
            assert not ev.evaluable[i]


@pytest.mark.parametrize("threads", [1, 2, 3, 7])
def test_worker_count_does_not_change_results(threads):
    G = nx.barabasi_albert_graph(500, 2, seed=4)
    g = from_nx(G)
    x = AttributeTable("x", np.random.default_rng(0).random(g.node_count))
    ref = evaluate_nodes(g, x, threads=1)
    ev = evaluate_nodes(g, x, threads=threads)
    assert np.array_equal(ev.holds, ref.holds)
    np.testing.assert_array_equal(ev.neighbor_mean, ref.neighbor_mean)


# -- correlation and assortativity ---------------------------------------------

def test_rho_degree_is_one():
    g = build_graph([(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)])
    assert pearson_degree_correlation(g, degree_table(g)) == pytest.approx(1.0, abs=1e-12)


def test_rho_anticorrelated():
    g = build_graph([(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)])
    x = AttributeTable("x", 10.0 - g.degrees)
    assert pearson_degree_correlation(g, x) == pytest.approx(-1.0, abs=1e-12)


def test_rho_constant_is_undefined(star):
    with pytest.raises(DomainError, match="correlation undefined"):
        pearson_degree_correlation(star, table("x", [3, 3, 3, 3]))


@settings(max_examples=60, deadline=None)
@given(random_graphs, st.integers(0, 10 ** 6))
def test_rho_matches_numpy_corrcoef(G, seed):
    g = from_nx(G)
    assume(g.degrees.std() > 0)
    x = np.random.default_rng(seed).normal(size=g.node_count)
    expected = np.corrcoef(g.degrees, x)[0, 1]
    assert pearson_degree_correlation(g, AttributeTable("x", x)) == pytest.approx(expected, abs=1e-12)


def test_assortativity_star(star):
    assert characteristic_assortativity(star, degree_table(star)) == -1.0


def test_assortativity_constant_undefined(star):
    with pytest.raises(DomainError, match="assortativity undefined"):
        characteristic_assortativity(star, table("x", [2, 2, 2, 2]))


@settings(max_examples=60, deadline=None)
@given(random_graphs, st.integers(0, 10 ** 6))
def test_assortativity_matches_literal_formula(G, seed):
    g = from_nx(G)
    assume(g.edge_count >= 2)
    x = np.random.default_rng(seed).integers(0, 20, g.node_count).astype(float)
    try:
        expected = literal_assortativity(g, x)
    except ZeroDivisionError:
        with pytest.raises(DomainError):
            characteristic_assortativity(g, AttributeTable("x", x))
        return
    got = characteristic_assortativity(g, AttributeTable("x", x))
    assert got == pytest.approx(expected, abs=1e-12)


def test_assortativity_matches_networkx():
    G = nx.barabasi_albert_graph(400, 3, seed=1)
    g = from_nx(G)
    expected = nx.degree_assortativity_coefficient(G)
    assert characteristic_assortativity(g, degree_table(g)) == pytest.approx(expected, abs=1e-10)


def test_assortativity_skips_edges_with_missing_endpoint():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    x = table("x", [1, 2, 3, 4, np.nan])
    sub = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert characteristic_assortativity(g, x) == pytest.approx(
        literal_assortativity(sub, [1, 2, 3, 4]), abs=1e-12)


# -- neighbour average, report -------------------------------------------------

def test_neighbor_average_star(star):
    assert neighbor_average(star, degree_table(star)) == 2.0


def test_neighbor_average_constant(path3):
    assert neighbor_average(path3, table("x", [4.5, 4.5, 4.5])) == 4.5


def test_neighbor_average_edgeless():
    g = build_graph([], nodes=[0, 1])
    with pytest.raises(DomainError):
        neighbor_average(g, table("x", [1, 2]))


def test_report_path_identity(path3):
    rep = gfp_report(path3, degree_table(path3))
    assert rep.F == pytest.approx(1 / 6, abs=1e-15)
    assert rep.F_from_correlation == pytest.approx(1 / 6, abs=1e-15)
    assert rep.gfp_network_level is True
    assert rep.H == pytest.approx(2 / 3)


def test_report_regular_graph():
    g = ring_graph(12)
    rep = gfp_report(g, degree_table(g))
    assert rep.F == 0.0
    assert rep.gfp_network_level is False
    assert rep.rho_kx is None          # sigma_k = 0
    assert rep.r_xx is None
    assert rep.H == 0.0


def test_report_fields_and_invariants(star):
    rep = gfp_report(star, degree_table(star))
    d = rep.to_dict()
    for key in ("rho_kx", "r_xx", "H", "mean_x", "mean_x_nn", "F", "std_x", "std_k",
                "mean_k", "n_evaluated", "gfp_network_level"):
        assert key in d
    assert rep.F == rep.mean_x_nn - rep.mean_x
    assert rep.gfp_network_level == (rep.mean_x < rep.mean_x_nn)


def test_report_counts_exclusions():
    g = build_graph([(0, 1), (1, 2)], nodes=[3])
    x = table("x", [1, 5, 2, np.nan])
    rep = gfp_report(g, x)
    assert (rep.n_isolated, rep.n_missing, rep.n_evaluated) == (1, 1, 3)


def test_isolated_nodes_enter_moments():
    g = build_graph([(0, 1), (1, 2)], nodes=[3])
    x = table("x", [1, 5, 2, 10])
    rep = gfp_report(g, x)
    assert rep.mean_x == 4.5
    assert rep.mean_k == 1.0
    assert rep.F == pytest.approx(rep.F_from_correlation, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(random_graphs, st.integers(0, 10 ** 6))
def test_identity_property(G, seed):
    g = from_nx(G)
    assume(g.degrees.std() > 0 and g.edge_count > 0)
    x = AttributeTable("x", np.random.default_rng(seed).lognormal(size=g.node_count))
    rep = gfp_report(g, x)
    assert abs(rep.F - rep.F_from_correlation) <= 1e-9 * max(1.0, abs(rep.mean_x_nn))


@settings(max_examples=80, deadline=None)
@given(random_graphs)
def test_friendship_paradox_property(G):
    g = from_nx(G)
    assume(g.edge_count > 0)
    rep = gfp_report(g, degree_table(g))
    if g.degrees.std() > 0:
        assert rep.mean_x_nn > rep.mean_x
    else:
        assert rep.mean_x_nn == rep.mean_x


# -- grid -----------------------------------------------------------------------

def test_grid_single_bin_equals_H(path3):
    k = degree_table(path3)
    grid = paradox_probability_grid(path3, k, [0, 10], [0, 10])
    assert grid.h.shape == (1, 1)
    assert grid.h[0, 0] == average_paradox_probability(path3, k)


def test_grid_star_unit_bins(star):
    k = degree_table(star)
    grid = paradox_probability_grid(star, k, "unit", "unit")
    assert grid.h[grid.cell_of(1, 1)] == 1.0
    assert grid.h[grid.cell_of(3, 3)] == 0.0
    assert grid.counts.sum() == 4


def test_grid_empty_cells_are_undefined(star):
    k = degree_table(star)
    grid = paradox_probability_grid(star, k, [1, 2, 3, 4], [1, 2, 3, 4])
    assert np.isnan(grid.h[grid.cell_of(2, 2)])
    assert all(row[4] > 0 for row in grid.rows())


def test_grid_rejects_bad_edges(star):
    k = degree_table(star)
    with pytest.raises(GFPError, match="strictly increasing"):
        paradox_probability_grid(star, k, [1, 1, 4], "unit")
    with pytest.raises(GFPError, match="cover"):
        paradox_probability_grid(star, k, [2, 4], "unit")


@pytest.mark.parametrize("values, expected", [
    ([1, 3, 8], [1, 2, 4, 8, 16]),
    ([0.3, 5], [0.25, 0.5, 1, 2, 4, 8]),
    ([0, 2, 3], [0, 2, 4]),
    ([-3, 0.5], [-3, 0.5, 1]),
])
def test_log2_bin_edges(values, expected):
    assert bin_edges(values, "log2").tolist() == expected


def test_unit_bin_edges():
    assert bin_edges([1, 3], "unit").tolist() == [1, 2, 3, 4]


@settings(max_examples=60, deadline=None)
@given(random_graphs, st.integers(0, 10 ** 6), st.sampled_from(["log2", "unit"]))
def test_grid_consistency(G, seed, policy):
    g = from_nx(G)
    assume(g.edge_count > 0)
    x = AttributeTable("x", np.random.default_rng(seed).integers(0, 50, g.node_count))
    grid = paradox_probability_grid(g, x, policy, policy)
    H = average_paradox_probability(g, x)
    assert grid.counts.sum() == evaluate_nodes(g, x).n_evaluated
    assert abs(grid.H - H) <= 1e-12
    assert np.all((grid.h[grid.counts > 0] >= 0) & (grid.h[grid.counts > 0] <= 1))
