import numpy as np
import pytest

from zetagraph.graphs import (Digraph, Graph, GraphError, build_graph,
                              complete_graph, cycle_graph, digraph_matrices,
                              graph_matrices, struct_matrices,
                              symmetric_digraph, torus_graph)
from zetagraph.oracle import trace_of_power
from zetagraph.zeta import ihara_reciprocal


def test_triangle_arcs_and_degrees():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.num_arcs == 6
    assert g.degrees.tolist() == [2, 2, 2]
    for a in range(6):
        assert g.inv[g.inv[a]] == a
        assert g.inv[a] != a
        assert g.origin[g.inv[a]] == g.terminus[a]


def test_single_edge_and_square():
    k2 = build_graph(2, [(0, 1)])
    assert k2.num_arcs == 2
    assert k2.inv.tolist() == [1, 0]
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4.num_arcs == 8
    assert set(c4.degrees.tolist()) == {2}


def test_rejects_self_loop_and_disconnection():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(2, [(0, 0)])
    with pytest.raises(GraphError, match="components"):
        build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        build_graph(2, [(0, 5)])


def test_parallel_edges_allowed():
    g = build_graph(2, [(0, 1), (0, 1)])
    assert g.m == 2 and g.num_arcs == 4
    assert g.degrees.tolist() == [2, 2]
    assert g.adjacency_matrix().tolist() == [[0, 2], [2, 0]]


def test_graph_matrix_invariants():
    for g in (complete_graph(3), complete_graph(4), cycle_graph(5),
              build_graph(2, [(0, 1), (0, 1)])):
        mats = graph_matrices(g)
        two_m = g.num_arcs
        assert np.array_equal(mats.j0 @ mats.j0, np.eye(two_m, dtype=np.int64))
        simple = np.all(g.adjacency_matrix() <= 1)
        if simple:
            assert np.array_equal(mats.j0, mats.b * mats.b.T)  # Schur identity
        else:
            # parallel arcs also meet head-to-tail both ways, so the Schur
            # product can only gain entries over J0
            assert np.all(mats.j0 <= mats.b * mats.b.T)
        # row sums of B count the out-arcs at the head vertex
        rows = mats.b.sum(axis=1)
        for e in range(two_m):
            assert rows[e] == g.degrees[g.terminus[e]]


def test_k2_arc_matrix_vanishes():
    mats = graph_matrices(build_graph(2, [(0, 1)]))
    assert not mats.b_minus_j0.any()


def test_k3_trace_cube():
    mats = graph_matrices(complete_graph(3))
    assert trace_of_power(mats.b_minus_j0, 3) == 6


def test_torus_shapes():
    t23 = torus_graph(2, 3)
    assert t23.n == 9 and t23.m == 18
    assert set(t23.degrees.tolist()) == {4}
    t34 = torus_graph(3, 4)
    assert t34.n == 64 and t34.m == 192
    with pytest.raises(GraphError):
        torus_graph(2, 2)
    with pytest.raises(GraphError):
        torus_graph(0, 5)


def test_one_dimensional_torus_is_cycle():
    t = torus_graph(1, 5)
    c = cycle_graph(5)
    assert t.n == c.n and t.m == c.m
    assert ihara_reciprocal(t, "ihara").value == ihara_reciprocal(c, "ihara").value


def test_symmetric_digraph_sizes():
    assert symmetric_digraph(complete_graph(3)).m == 6
    assert symmetric_digraph(build_graph(2, [(0, 1)])).m == 2
    assert symmetric_digraph(cycle_graph(9)).m == 18
    d = symmetric_digraph(complete_graph(3))
    assert all(d.inv[d.inv[a]] == a for a in range(d.m))
    assert np.all(d.inv >= 0)


def test_digraph_validation():
    with pytest.raises(GraphError, match="duplicate"):
        Digraph(2, [(0, 1), (0, 1)])
    Digraph(2, [(0, 1), (0, 1)], allow_multi=True)
    with pytest.raises(GraphError):
        Digraph(3, [(0, 1)])  # vertex 2 is isolated


def test_digraph_matrices_on_symmetric_digraph():
    g = complete_graph(4)
    d = symmetric_digraph(g)
    dm = digraph_matrices(d)
    # B1 equals B2 after relabeling both indices by the involution
    inv = d.inv
    assert np.array_equal(dm.b1, dm.b2[np.ix_(inv, inv)])
    assert np.array_equal(np.diag(dm.d1), g.degrees)
    assert np.array_equal(dm.d1, dm.d2)
    # on a simple digraph the arc-count diagonals match diag(AA^T), diag(A^T A)
    a = dm.a
    assert np.array_equal(np.diag(dm.d1), np.diag(a @ a.T))
    assert np.array_equal(np.diag(dm.d2), np.diag(a.T @ a))
    assert np.array_equal(dm.cal_j @ dm.cal_j, np.eye(2 * d.m, dtype=np.int64))


def test_one_arc_digraph_matrices():
    d = Digraph(2, [(0, 1)])
    dm = digraph_matrices(d)
    assert dm.b1.tolist() == [[1]]
    assert dm.b2.tolist() == [[1]]
    assert not dm.calb_minus_calj.any()


def test_struct_matrices_dispatch():
    assert struct_matrices(complete_graph(3)).b.shape == (6, 6)
    assert struct_matrices(Digraph(2, [(0, 1), (1, 0)])).cal_b.shape == (4, 4)
    with pytest.raises(TypeError):
        struct_matrices([1, 2])


def test_graph_hash_is_stable_and_order_insensitive():
    g1 = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    g2 = build_graph(3, [(2, 0), (0, 1), (1, 2)])
    assert g1.graph_hash() == g2.graph_hash()
    assert g1.graph_hash() != complete_graph(4).graph_hash()
