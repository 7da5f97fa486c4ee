import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corpus import make_topology, random_links
from oracles import floyd_warshall, simple_paths
from vsdnplace import ConnectivityError, all_pairs_shortest, passes_through, path_nodes
from vsdnplace.paths import dist_csv
from vsdnplace.topology import PhysicalNode, PhysicalTopology

LINE4 = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]


def test_line4_distance_matches_path_enumeration(line4_table):
    best = min(cost for cost, _ in simple_paths(4, LINE4, 0, 3))
    assert best == 3.0
    assert line4_table.dist[0, 3] == 3.0


def test_diagonal_zero(line4_table):
    assert np.all(np.diag(line4_table.dist) == 0.0)


def test_cycle_tie_prefers_smaller_predecessor(cycle4):
    table = all_pairs_shortest(cycle4)
    costs = sorted(cost for cost, _ in simple_paths(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)], 0, 2))
    assert costs[:2] == [2.0, 2.0]
    assert table.dist[0, 2] == 2.0
    assert path_nodes(table, 0, 2) == [0, 1, 2]


@pytest.mark.parametrize("s,t,expected", [(0, 3, [0, 1, 2, 3]), (3, 1, [3, 2, 1]), (2, 2, [2])])
def test_path_nodes_line4(line4_table, s, t, expected):
    assert path_nodes(line4_table, s, t) == expected


@pytest.mark.parametrize("s,t,x,expected", [(0, 2, 1, True), (0, 2, 0, True), (3, 2, 0, False), (0, 2, 2, True)])
def test_passes_through(line4_table, s, t, x, expected):
    assert passes_through(line4_table, s, t, x) is expected


def test_disconnected_rejected():
    nodes = [PhysicalNode(i, str(i)) for i in range(3)]
    topo = PhysicalTopology.from_links(nodes, [])
    with pytest.raises(ConnectivityError):
        all_pairs_shortest(topo)


def test_path_nodes_bad_index(line4_table):
    with pytest.raises(IndexError):
        path_nodes(line4_table, 0, 9)


def _random_graph(seed, max_nodes=30, integer=False):
    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    weight = (lambda: float(rng.randint(0, 4))) if integer else (lambda: rng.uniform(0.0, 10.0))
    links = random_links(rng, n, rng.randint(0, 2 * n), weight)
    return n, links


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.booleans())
def test_table_invariants(seed, integer):
    n, links = _random_graph(seed, integer=integer)
    table = all_pairs_shortest(make_topology(n, links))
    d = table.dist
    assert np.array_equal(d, d.T)
    assert np.all(d[:, :, None] <= d[:, None, :] + d[None, :, :] + 1e-9)
    topo = make_topology(n, links)
    weight = {(a, b): w for a, row in enumerate(topo.adjacency) for b, w in row}
    for s in range(n):
        for t in range(n):
            path = path_nodes(table, s, t)
            assert path[0] == s and path[-1] == t
            cost = sum(weight[(a, b)] for a, b in zip(path, path[1:]))
            assert cost == pytest.approx(d[s, t], abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_matches_floyd_warshall(seed):
    n, links = _random_graph(seed)
    table = all_pairs_shortest(make_topology(n, links))
    assert np.allclose(table.dist, floyd_warshall(n, links), rtol=0, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_pred_is_smallest_tight_predecessor(seed):
    # Integer weights >= 1 make ties exact and common.
    rng = random.Random(seed)
    n = rng.randint(2, 15)
    links = random_links(rng, n, rng.randint(0, 2 * n), lambda: float(rng.randint(1, 3)))
    topo = make_topology(n, links)
    table = all_pairs_shortest(topo)
    for s in range(n):
        for v in range(n):
            if v == s:
                assert table.pred[s, v] == -1
                continue
            tight = [u for u, w in topo.adjacency[v] if table.dist[s, u] + w == table.dist[s, v]]
            assert table.pred[s, v] == min(tight)


def test_threads_do_not_change_result():
    n, links = _random_graph(7, max_nodes=40)
    topo = make_topology(n, links)
    a = all_pairs_shortest(topo, threads=1)
    b = all_pairs_shortest(topo, threads=4)
    assert np.array_equal(a.dist, b.dist) and np.array_equal(a.pred, b.pred)


def test_dist_csv(line4_table):
    lines = dist_csv(line4_table).splitlines()
    assert lines[0] == "source,0,1,2,3"
    assert lines[1] == "0,0.0,1.0,2.0,3.0"
