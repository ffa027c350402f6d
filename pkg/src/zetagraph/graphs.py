"""Finite graphs, digraphs and the structural matrices behind the zeta formulas.

A Graph stores an explicit arc set: the two orientations of edge i sit at arc
indices i and i+m, so the inverse involution is index arithmetic and all block
matrices come out in a reproducible order (forward arcs first, then inverses).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np


class GraphError(ValueError):
    pass


def _components(n, neighbor_sets):
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in neighbor_sets[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _csr_group(keys, nkeys):
    """CSR grouping of arc indices by an integer key (origin or terminus)."""
    keys = np.asarray(keys, dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    indptr = np.zeros(nkeys + 1, dtype=np.int64)
    np.add.at(indptr, keys + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, order.astype(np.int64)


class Graph:
    """Connected (multi)graph with explicit arcs; self-loops are rejected.

    Parallel edges are allowed.  Connectivity is enforced unless
    ``require_connected=False`` (used for covering constructions, where the
    caller inspects ``is_connected`` instead).
    """

    def __init__(self, n: int, edges, require_connected: bool = True):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        edges = [tuple(int(x) for x in e) for e in edges]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u} is not allowed")
        self.n = n
        self.edges = tuple(edges)
        self.m = len(edges)
        fwd_o = [u for u, _ in edges]
        fwd_t = [v for _, v in edges]
        self.origin = np.array(fwd_o + fwd_t, dtype=np.int64)
        self.terminus = np.array(fwd_t + fwd_o, dtype=np.int64)
        self.inv = np.array([(i + self.m) % (2 * self.m) for i in range(2 * self.m)],
                            dtype=np.int64)
        neighbor_sets = [set() for _ in range(n)]
        for u, v in edges:
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.components = _components(n, neighbor_sets)
        self.is_connected = len(self.components) == 1
        if require_connected and not self.is_connected:
            raise GraphError(
                f"graph is disconnected; components: {self.components}")
        self.degrees = np.zeros(n, dtype=np.int64)
        np.add.at(self.degrees, self.origin, 1)
        self._vout = None

    @property
    def num_arcs(self) -> int:
        return 2 * self.m

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(a, (self.origin, self.terminus), 1)
        return a

    def arcs_by_origin(self):
        if self._vout is None:
            self._vout = _csr_group(self.origin, self.n)
        return self._vout

    def is_regular(self):
        """Common degree if regular, else None."""
        d = int(self.degrees[0])
        return d if bool(np.all(self.degrees == d)) else None

    def graph_hash(self) -> str:
        payload = f"{self.n}|{sorted(tuple(sorted(e)) for e in self.edges)}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def arc_label(self, a: int) -> str:
        return f"e{a}" if a < self.m else f"e{a - self.m}^-1"

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list) -> Graph:
    """Connected graph with the canonical arc ordering e_1..e_m, e_1^-1..e_m^-1."""
    return Graph(n, edge_list)


def torus_graph(d: int, side: int) -> Graph:
    """Discrete d-dimensional torus: side^d vertices, 2d-regular, d*side^d edges.

    side >= 3 so that wrap-around never produces a parallel edge.
    """
    if d < 1:
        raise GraphError("torus dimension must be >= 1")
    if side < 3:
        raise GraphError("torus side must be >= 3 (avoids parallel edges)")
    n = side**d
    strides = [side**j for j in range(d)]

    def coords(idx):
        return [(idx // strides[j]) % side for j in range(d)]

    edges = []
    for v in range(n):
        cs = coords(v)
        for j in range(d):
            w = v + strides[j] * ((cs[j] + 1) % side - cs[j])
            edges.append((v, w))
    return Graph(n, edges)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle graph needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


class Digraph:
    """Digraph with an arbitrary arc set and an optional partial involution.

    Arc pairs (u,v)/(v,u) are matched greedily when both directions exist;
    unmatched arcs have inv == -1.  Duplicate arcs require allow_multi=True.
    """

    def __init__(self, n: int, arcs, allow_multi: bool = False,
                 require_connected: bool = True, inv=None):
        if n < 1:
            raise GraphError("digraph needs at least one vertex")
        arcs = [tuple(int(x) for x in a) for a in arcs]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u},{v}) out of range for n={n}")
        if not allow_multi and len(set(arcs)) != len(arcs):
            raise GraphError("duplicate arcs; pass allow_multi=True for a multi-digraph")
        self.n = n
        self.arcs = tuple(arcs)
        self.m = len(arcs)
        self.origin = np.array([u for u, _ in arcs], dtype=np.int64)
        self.terminus = np.array([v for _, v in arcs], dtype=np.int64)
        if inv is not None:
            self.inv = np.asarray(inv, dtype=np.int64)
        else:
            self.inv = self._pair_involution()
        neighbor_sets = [set() for _ in range(n)]
        for u, v in arcs:
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.components = _components(n, neighbor_sets)
        self.is_connected = len(self.components) == 1
        if require_connected and not self.is_connected:
            raise GraphError(
                f"digraph is weakly disconnected; components: {self.components}")
        self.outdeg = np.zeros(n, dtype=np.int64)
        self.indeg = np.zeros(n, dtype=np.int64)
        np.add.at(self.outdeg, self.origin, 1)
        np.add.at(self.indeg, self.terminus, 1)
        self._byo = None
        self._byt = None

    def _pair_involution(self):
        inv = np.full(self.m, -1, dtype=np.int64)
        pool = {}
        for i, (u, v) in enumerate(self.arcs):
            pool.setdefault((u, v), []).append(i)
        for i, (u, v) in enumerate(self.arcs):
            if inv[i] != -1 or u == v:
                continue
            rev = pool.get((v, u), [])
            for j in rev:
                if inv[j] == -1 and j != i:
                    inv[i] = j
                    inv[j] = i
                    break
        return inv

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(a, (self.origin, self.terminus), 1)
        return a

    def arcs_by_origin(self):
        if self._byo is None:
            self._byo = _csr_group(self.origin, self.n)
        return self._byo

    def arcs_by_terminus(self):
        if self._byt is None:
            self._byt = _csr_group(self.terminus, self.n)
        return self._byt

    def digraph_hash(self) -> str:
        payload = f"{self.n}|{sorted(self.arcs)}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.m})"


def symmetric_digraph(g: Graph) -> Digraph:
    """The digraph whose arc set is exactly the graph's arc set (total involution)."""
    arcs = [(int(g.origin[a]), int(g.terminus[a])) for a in range(g.num_arcs)]
    return Digraph(g.n, arcs, allow_multi=True, require_connected=False,
                   inv=g.inv.copy())


@dataclass
class GraphMatrices:
    """Arc and vertex matrices of a graph: B, J0 (2m x 2m), A, D, Q (n x n)."""

    a: np.ndarray
    deg: np.ndarray
    q: np.ndarray
    b: np.ndarray
    j0: np.ndarray

    @property
    def b_minus_j0(self) -> np.ndarray:
        return self.b - self.j0


@dataclass
class DigraphMatrices:
    """Walk matrices of a digraph.

    d1/d2 are the out/in arc-count diagonals.  On a simple digraph they agree
    with diag(A A^T) and diag(A^T A); on a multi-digraph only the arc counts
    keep the two determinant routes equal, so they are taken as the definition.
    """

    a: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    cal_b: np.ndarray
    cal_j: np.ndarray
    cal_a: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    delta: np.ndarray

    @property
    def calb_minus_calj(self) -> np.ndarray:
        return self.cal_b - self.cal_j


def graph_matrices(g: Graph) -> GraphMatrices:
    a = g.adjacency_matrix()
    deg = np.diag(g.degrees)
    q = deg - np.eye(g.n, dtype=np.int64)
    b = (g.terminus[:, None] == g.origin[None, :]).astype(np.int64)
    j0 = np.zeros((g.num_arcs, g.num_arcs), dtype=np.int64)
    j0[np.arange(g.num_arcs), g.inv] = 1
    return GraphMatrices(a=a, deg=deg, q=q, b=b, j0=j0)


def digraph_matrices(d: Digraph) -> DigraphMatrices:
    a = d.adjacency_matrix()
    b1 = (d.origin[:, None] == d.origin[None, :]).astype(np.int64)
    b2 = (d.terminus[:, None] == d.terminus[None, :]).astype(np.int64)
    m = d.m
    zero_m = np.zeros((m, m), dtype=np.int64)
    eye_m = np.eye(m, dtype=np.int64)
    cal_b = np.block([[zero_m, b1], [b2, zero_m]])
    cal_j = np.block([[zero_m, eye_m], [eye_m, zero_m]])
    zero_n = np.zeros((d.n, d.n), dtype=np.int64)
    cal_a = np.block([[zero_n, a], [a.T, zero_n]])
    d1 = np.diag(d.outdeg)
    d2 = np.diag(d.indeg)
    delta = np.block([[d1, zero_n], [zero_n, d2]])
    return DigraphMatrices(a=a, b1=b1, b2=b2, cal_b=cal_b, cal_j=cal_j,
                           cal_a=cal_a, d1=d1, d2=d2, delta=delta)


def struct_matrices(obj):
    """GraphMatrices or DigraphMatrices, depending on the input."""
    if isinstance(obj, Graph):
        return graph_matrices(obj)
    if isinstance(obj, Digraph):
        return digraph_matrices(obj)
    raise TypeError(f"expected Graph or Digraph, got {type(obj).__name__}")
