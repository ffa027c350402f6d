"""Finite groups as multiplication tables, unitary representations, voltage
graphs and their derived (covering) graphs and digraphs.

Groups arrive as explicit tables (identity must be element 0); the cyclic
groups come with their full character list built in.  Representations are
validated to be homomorphic and unitary to 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .graphs import Digraph, Graph, GraphError

REP_TOL = 1e-12


class VoltageError(ValueError):
    pass


class Group:
    """Finite group given by its multiplication table; element ids 0..order-1."""

    def __init__(self, table: Sequence[Sequence[int]]):
        table = [list(map(int, row)) for row in table]
        p = len(table)
        if any(len(row) != p for row in table):
            raise VoltageError("multiplication table must be square")
        if any(not (0 <= x < p) for row in table for x in row):
            raise VoltageError("table entries must be element ids")
        if any(table[0][h] != h or table[h][0] != h for h in range(p)):
            raise VoltageError("element 0 must be the identity")
        for g in range(p):
            for h in range(p):
                for k in range(p):
                    if table[table[g][h]][k] != table[g][table[h][k]]:
                        raise VoltageError("multiplication table is not associative")
        self.order = p
        self.table = [tuple(row) for row in table]
        inverse = [-1] * p
        for g in range(p):
            for h in range(p):
                if table[g][h] == 0:
                    inverse[g] = h
                    break
            if inverse[g] == -1 or table[inverse[g]][g] != 0:
                raise VoltageError(f"element {g} has no two-sided inverse")
        self.inverse = tuple(inverse)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    @classmethod
    def cyclic(cls, k: int) -> "Group":
        return cls([[(i + j) % k for j in range(k)] for i in range(k)])

    def __repr__(self):
        return f"Group(order={self.order})"


@dataclass
class Representation:
    """Unitary matrix representation: one d x d matrix per group element."""

    rep_id: str
    matrices: List[np.ndarray]

    def __post_init__(self):
        self.matrices = [np.asarray(m, dtype=np.complex128) for m in self.matrices]

    @property
    def degree(self) -> int:
        return self.matrices[0].shape[0]

    def validate(self, group: Group, tol: float = REP_TOL):
        d = self.degree
        if len(self.matrices) != group.order:
            raise VoltageError(f"representation {self.rep_id} must supply one "
                               f"matrix per group element")
        eye = np.eye(d)
        if not np.allclose(self.matrices[0], eye, atol=tol):
            raise VoltageError(f"representation {self.rep_id}: identity element "
                               f"must map to the identity matrix")
        for g in range(group.order):
            mg = self.matrices[g]
            if mg.shape != (d, d):
                raise VoltageError(f"representation {self.rep_id}: inconsistent degree")
            if not np.allclose(mg @ mg.conj().T, eye, atol=tol):
                raise VoltageError(f"representation {self.rep_id}: element {g} "
                                   f"is not unitary")
            for h in range(group.order):
                if not np.allclose(mg @ self.matrices[h],
                                   self.matrices[group.mul(g, h)], atol=tol):
                    raise VoltageError(
                        f"representation {self.rep_id} is not a homomorphism "
                        f"at ({g},{h})")

    def is_trivial(self) -> bool:
        return self.degree == 1 and all(abs(m[0, 0] - 1) <= REP_TOL
                                        for m in self.matrices)


def cyclic_characters(k: int) -> List[Representation]:
    """All k characters of the cyclic group of order k (eta^(i*j) values)."""
    eta = np.exp(2j * np.pi / k)
    return [Representation(rep_id=f"chi{i}",
                           matrices=[np.array([[eta ** (i * j)]]) for j in range(k)])
            for i in range(k)]


class VoltageGraph:
    """Graph plus an ordinary voltage assignment into a finite group.

    ``edge_voltages[i]`` is the group element on the forward arc of edge i; the
    inverse arc automatically carries the group inverse, which is exactly the
    ordinary-assignment condition.
    """

    def __init__(self, base: Graph, group: Group, edge_voltages: Sequence[int],
                 reps: Sequence[Representation] = None):
        if len(edge_voltages) != base.m:
            raise VoltageError("need one voltage per edge")
        if any(not (0 <= g < group.order) for g in edge_voltages):
            raise VoltageError("voltage ids out of range")
        self.base = base
        self.group = group
        self.edge_voltages = tuple(int(g) for g in edge_voltages)
        volt = list(self.edge_voltages) + [group.inv(g) for g in self.edge_voltages]
        self.arc_voltages = tuple(volt)
        if reps is None:
            reps = []
        self.reps = list(reps)
        for rep in self.reps:
            rep.validate(group)
        self._rep_index: Dict[str, Representation] = {r.rep_id: r for r in self.reps}

    def rep(self, rep_id: str) -> Representation:
        try:
            return self._rep_index[rep_id]
        except KeyError:
            raise VoltageError(f"unknown representation id {rep_id!r}") from None

    def irreps_complete(self) -> bool:
        return sum(r.degree**2 for r in self.reps) == self.group.order

    def voltage(self, arc: int) -> int:
        return self.arc_voltages[arc]


def cyclic_voltage_graph(base: Graph, k: int, edge_voltages: Sequence[int]) -> VoltageGraph:
    return VoltageGraph(base, Group.cyclic(k), edge_voltages, cyclic_characters(k))


def derived_graph(vg: VoltageGraph) -> Graph:
    """The covering graph: vertex (v,h), edge ((u,h),(v,h*g)) per base edge.

    Vertex (v,h) gets index v*p + h.  The result may be disconnected; its
    ``is_connected`` flag reports that instead of raising.
    """
    p = vg.group.order
    base = vg.base
    edges = []
    for i, (u, v) in enumerate(base.edges):
        g = vg.edge_voltages[i]
        for h in range(p):
            edges.append((u * p + h, v * p + vg.group.mul(h, g)))
    return Graph(base.n * p, edges, require_connected=False)


def derived_digraph(d: Digraph, group: Group, arc_voltages: Sequence[int]) -> Digraph:
    """Covering digraph of a pseudo voltage assignment on a digraph."""
    p = group.order
    arcs = []
    for i, (u, v) in enumerate(d.arcs):
        g = arc_voltages[i]
        for h in range(p):
            arcs.append((u * p + h, v * p + group.mul(h, g)))
    return Digraph(d.n * p, arcs, allow_multi=True, require_connected=False)


def validate_pseudo_voltages(d: Digraph, group: Group, arc_voltages: Sequence[int]):
    """Check alpha(v,u) = alpha(u,v)^{-1} wherever both arc directions exist."""
    if len(arc_voltages) != d.m:
        raise VoltageError("need one voltage per arc")
    for i in range(d.m):
        j = int(d.inv[i])
        if j >= 0 and arc_voltages[j] != group.inv(arc_voltages[i]):
            raise VoltageError(
                f"arcs {i} and {j} are mutual reverses but their voltages are "
                f"not mutually inverse")


@dataclass
class VoltageMatrices:
    """rho-twisted structural matrices of a voltage graph (complex, nd / 2md)."""

    a_rho: np.ndarray
    b_rho: np.ndarray
    j_rho: np.ndarray
    degree: int


def element_adjacency(vg: VoltageGraph, g: int) -> np.ndarray:
    """0/1 matrix of base arcs carrying voltage g (the A_g of the covering theory)."""
    base = vg.base
    a = np.zeros((base.n, base.n), dtype=np.int64)
    for arc in range(base.num_arcs):
        if vg.arc_voltages[arc] == g:
            a[base.origin[arc], base.terminus[arc]] += 1
    return a


def voltage_matrices(vg: VoltageGraph, rep_id: str) -> VoltageMatrices:
    """Sum_g rho(g) (x) A_g, B_g, J_g for one representation."""
    rep = vg.rep(rep_id)
    base = vg.base
    d = rep.degree
    n, na = base.n, base.num_arcs
    a_rho = np.zeros((n * d, n * d), dtype=np.complex128)
    b_rho = np.zeros((na * d, na * d), dtype=np.complex128)
    j_rho = np.zeros((na * d, na * d), dtype=np.complex128)
    for g in range(vg.group.order):
        rg = rep.matrices[g]
        ag = element_adjacency(vg, g)
        if ag.any():
            a_rho += np.kron(rg, ag)
        bg = np.zeros((na, na), dtype=np.int64)
        jg = np.zeros((na, na), dtype=np.int64)
        for e in range(na):
            if vg.arc_voltages[e] != g:
                continue
            bg[e, :] = (base.origin == base.terminus[e]).astype(np.int64)
            jg[e, base.inv[e]] = 1
        if bg.any():
            b_rho += np.kron(rg, bg)
        if jg.any():
            j_rho += np.kron(rg, jg)
    return VoltageMatrices(a_rho=a_rho, b_rho=b_rho, j_rho=j_rho, degree=d)


# ---------------------------------------------------------------------------
# JSON ingestion
# ---------------------------------------------------------------------------

def graph_from_json(obj: dict) -> Graph:
    """{"n": int, "edges": [[u,v], ...]} with 0-based vertices."""
    if "n" not in obj or "edges" not in obj:
        raise GraphError("graph JSON needs 'n' and 'edges'")
    return Graph(int(obj["n"]), obj["edges"])


def _group_from_json(spec) -> Group:
    if isinstance(spec, str):
        if not spec.startswith("Z_"):
            raise VoltageError(f"unknown group shorthand {spec!r}")
        return Group.cyclic(int(spec[2:]))
    return Group(spec["table"])


def voltage_graph_from_json(base: Graph, obj: dict) -> VoltageGraph:
    """Voltage JSON: group (shorthand "Z_k" or {"order","table"}), optional
    "reps" (list of representations, each a list of [[re,im],...] matrices per
    element), and "voltages" as [{"edge": i, "g": id}, ...] on forward arcs."""
    group = _group_from_json(obj["group"])
    volts = [0] * base.m
    for item in obj.get("voltages", []):
        i = int(item["edge"])
        if not (0 <= i < base.m):
            raise VoltageError(f"voltage refers to missing edge {i}")
        volts[i] = int(item["g"])
    reps_spec = obj.get("reps")
    if reps_spec is None:
        if isinstance(obj["group"], str) or _is_cyclic_table(group):
            reps = cyclic_characters(group.order)
        else:
            reps = []
    else:
        reps = []
        for idx, mats in enumerate(reps_spec):
            matrices = [_complex_matrix(m) for m in mats]
            reps.append(Representation(rep_id=f"rho{idx}", matrices=matrices))
    return VoltageGraph(base, group, volts, reps)


def _complex_matrix(rows) -> np.ndarray:
    out = []
    for row in rows:
        vals = []
        for cell in row:
            if isinstance(cell, (list, tuple)):
                vals.append(complex(cell[0], cell[1]))
            else:
                vals.append(complex(cell))
        out.append(vals)
    return np.array(out, dtype=np.complex128)


def _is_cyclic_table(group: Group) -> bool:
    cyc = Group.cyclic(group.order)
    return group.table == cyc.table
