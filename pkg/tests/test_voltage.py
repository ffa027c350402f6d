import numpy as np
import pytest

from zetagraph.graphs import build_graph, complete_graph, cycle_graph
from zetagraph.voltage import (Group, Representation, VoltageError,
                               VoltageGraph, cyclic_characters,
                               cyclic_voltage_graph, derived_digraph,
                               derived_graph, element_adjacency,
                               graph_from_json, validate_pseudo_voltages,
                               voltage_graph_from_json, voltage_matrices)
from zetagraph.graphs import Digraph
from zetagraph.zeta import ihara_reciprocal


def test_cyclic_group_table():
    g = Group.cyclic(4)
    assert g.order == 4
    assert g.mul(3, 2) == 1
    assert g.inv(1) == 3 and g.inv(0) == 0


def test_group_rejects_bad_tables():
    with pytest.raises(VoltageError, match="identity"):
        Group([[1, 0], [0, 1]])
    with pytest.raises(VoltageError, match="square"):
        Group([[0, 1], [1]])
    with pytest.raises(VoltageError, match="associative"):
        # a "multiplication" that is not associative: x*y = y except one cell
        Group([[0, 1, 2], [1, 2, 1], [2, 0, 0]])


def test_representation_validation():
    g3 = Group.cyclic(3)
    chars = cyclic_characters(3)
    for rep in chars:
        rep.validate(g3)
    bad = Representation("bad", [np.eye(1), np.array([[2.0]]), np.eye(1)])
    with pytest.raises(VoltageError, match="unitary"):
        bad.validate(g3)
    skew = Representation("skew", [np.eye(1), np.array([[1j]]), np.array([[1j]])])
    with pytest.raises(VoltageError, match="homomorphism"):
        skew.validate(g3)


def test_voltage_inverse_condition_is_automatic():
    vg = cyclic_voltage_graph(complete_graph(3), 3, [1, 0, 2])
    for arc in range(vg.base.num_arcs):
        inv_arc = int(vg.base.inv[arc])
        assert vg.voltage(inv_arc) == vg.group.inv(vg.voltage(arc))


def test_element_adjacency_worked_example():
    vg = cyclic_voltage_graph(complete_graph(3), 3, [1, 0, 0])
    a_tau = element_adjacency(vg, 1)
    expect = np.zeros((3, 3), dtype=np.int64)
    expect[0, 1] = 1
    assert np.array_equal(a_tau, expect)
    # summed over all elements the twisted adjacencies rebuild A
    total = sum(element_adjacency(vg, g) for g in range(3))
    assert np.array_equal(total, vg.base.adjacency_matrix())


def test_trivial_representation_collapses_to_plain_matrices():
    vg = cyclic_voltage_graph(complete_graph(3), 3, [1, 0, 0])
    vm = voltage_matrices(vg, "chi0")
    from zetagraph.graphs import graph_matrices
    mats = graph_matrices(vg.base)
    assert np.allclose(vm.a_rho, mats.a)
    assert np.allclose(vm.b_rho, mats.b)
    assert np.allclose(vm.j_rho, mats.j0)


def test_sign_character_on_triangle():
    vg = cyclic_voltage_graph(cycle_graph(3), 2, [1, 0, 0])
    vm = voltage_matrices(vg, "chi1")
    vals = set(np.unique(np.real(vm.a_rho)).tolist())
    assert vals <= {-1.0, 0.0, 1.0}
    sums = set(np.real(vm.a_rho).sum(axis=1).tolist())
    assert sums <= {-1.0, 0.0, 1.0, 2.0}


def test_derived_graph_counts_and_trivial_voltages():
    base = complete_graph(4)
    vg = cyclic_voltage_graph(base, 3, [0] * base.m)
    cover = derived_graph(vg)
    assert cover.n == 3 * base.n and cover.m == 3 * base.m
    assert not cover.is_connected  # identity voltages give 3 disjoint copies
    assert len(cover.components) == 3


def test_derived_graph_c3_over_z2_is_c6():
    vg = cyclic_voltage_graph(cycle_graph(3), 2, [1, 0, 0])
    cover = derived_graph(vg)
    c6 = cycle_graph(6)
    assert cover.is_connected
    assert sorted(cover.degrees.tolist()) == sorted(c6.degrees.tolist())
    assert ihara_reciprocal(cover, "ihara").value == \
        ihara_reciprocal(c6, "ihara").value


def test_derived_digraph_and_pseudo_voltages():
    d = Digraph(3, [(0, 1), (1, 0), (1, 2), (2, 0)])
    g2 = Group.cyclic(2)
    validate_pseudo_voltages(d, g2, [1, 1, 0, 0])
    with pytest.raises(VoltageError, match="inverse"):
        validate_pseudo_voltages(d, Group.cyclic(3), [1, 2, 0, 0][:3] + [1])
    cover = derived_digraph(d, g2, [1, 1, 0, 0])
    assert cover.n == 6 and cover.m == 8


def test_voltage_json_ingestion():
    gobj = {"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}
    g = graph_from_json(gobj)
    vobj = {"group": "Z_3", "voltages": [{"edge": 0, "g": 1}]}
    vg = voltage_graph_from_json(g, vobj)
    assert vg.group.order == 3
    assert vg.edge_voltages == (1, 0, 0)
    assert [r.rep_id for r in vg.reps] == ["chi0", "chi1", "chi2"]
    explicit = {
        "group": {"order": 2, "table": [[0, 1], [1, 0]]},
        "reps": [[[[1.0, 0.0]]], [[[1.0, 0.0]]]],
        "voltages": [],
    }
    with pytest.raises(VoltageError):
        voltage_graph_from_json(g, {"group": "Q_8"})
    vg2 = voltage_graph_from_json(g, explicit)
    assert vg2.reps[0].degree == 1


def test_incomplete_reps_detected():
    vg = VoltageGraph(complete_graph(3), Group.cyclic(3), [1, 0, 0],
                      cyclic_characters(3)[:2])
    assert not vg.irreps_complete()
    with pytest.raises(VoltageError, match="unknown representation"):
        vg.rep("chi9")
