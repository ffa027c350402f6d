"""Exact zeta reciprocals: Ihara zeta, alternating zeta of digraphs and graphs.

Reciprocals are the primary representation (they are polynomials or rational
functions); the zeta itself only ever materializes as a truncated series.
Every operation offers at least two independent determinant routes which must
agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactpoly import (DEFAULT_SERIES_ORDER, RationalFn, RationalPoly,
                        TruncatedSeries, one_minus_t2_power)
from .graphs import (Digraph, Graph, GraphError, digraph_matrices,
                     graph_matrices, symmetric_digraph)
from .linalg import char_matrix, poly_det

GRAPH_METHODS = ("hashimoto", "ihara")
ALT_GRAPH_METHODS = ("hashimoto", "ihara", "factorized")


@dataclass
class ZetaReciprocal:
    """A reciprocal zeta value plus the route that produced it."""

    value: RationalFn
    method: str
    graph_hash: str

    def __post_init__(self):
        if self.value(Fraction(0)) != 1:
            raise ValueError("a zeta reciprocal must equal 1 at t = 0")

    def series(self, order: int = DEFAULT_SERIES_ORDER) -> TruncatedSeries:
        """Truncated series of the reciprocal itself."""
        return TruncatedSeries.from_rationalfn(self.value, order)

    def zeta_series(self, order: int = DEFAULT_SERIES_ORDER) -> TruncatedSeries:
        """Truncated series of the zeta function (inverse of the reciprocal)."""
        return self.series(order).inverse()


def ihara_reciprocal(g: Graph, method: str = "hashimoto") -> ZetaReciprocal:
    """Reciprocal Ihara zeta of a connected graph.

    hashimoto: det(I_2m - t(B - J0)).
    ihara:     (1-t^2)^(m-n) * det(I_n - tA + t^2 Q), reduced to lowest terms.
    """
    if method not in GRAPH_METHODS:
        raise ValueError(f"method must be one of {GRAPH_METHODS}")
    mats = graph_matrices(g)
    if method == "hashimoto":
        det = poly_det(char_matrix(mats.b_minus_j0))
        value = RationalFn.from_poly(det)
    else:
        det = poly_det(char_matrix(mats.a, t2_matrix=mats.q))
        value = one_minus_t2_power(g.m - g.n) * det
    return ZetaReciprocal(value=value, method=method, graph_hash=g.graph_hash())


def alt_reciprocal_digraph(d: Digraph, method: str = "hashimoto") -> ZetaReciprocal:
    """Reciprocal alternating zeta of a connected digraph with m arcs.

    hashimoto: det(I_2m - t(calB - calJ)).
    ihara:     (1-t^2)^(m-2n) * det(I_2n - t calA + t^2 (Delta - I)).
    """
    if method not in GRAPH_METHODS:
        raise ValueError(f"method must be one of {GRAPH_METHODS}")
    mats = digraph_matrices(d)
    if method == "hashimoto":
        det = poly_det(char_matrix(mats.calb_minus_calj))
        value = RationalFn.from_poly(det)
    else:
        delta_minus_i = mats.delta - np.eye(2 * d.n, dtype=np.int64)
        det = poly_det(char_matrix(mats.cal_a, t2_matrix=delta_minus_i))
        value = one_minus_t2_power(d.m - 2 * d.n) * det
    return ZetaReciprocal(value=value, method=method, graph_hash=d.digraph_hash())


def alt_reciprocal_graph(g: Graph, method: str = "factorized") -> ZetaReciprocal:
    """Reciprocal alternating zeta of a graph.

    factorized: Z(G,t)^-1 * Z(G,-t)^-1 from the Ihara zeta; the hashimoto and
    ihara methods delegate to the symmetric digraph.  All routes agree exactly.
    """
    if method not in ALT_GRAPH_METHODS:
        raise ValueError(f"method must be one of {ALT_GRAPH_METHODS}")
    if method == "factorized":
        z = ihara_reciprocal(g, "ihara").value
        value = z * z.substitute_neg()
        return ZetaReciprocal(value=value, method=method, graph_hash=g.graph_hash())
    rec = alt_reciprocal_digraph(symmetric_digraph(g), method)
    return ZetaReciprocal(value=rec.value, method=method, graph_hash=g.graph_hash())


def regular_spectral_reciprocal(g: Graph) -> ZetaReciprocal:
    """Alternating zeta reciprocal of a (q+1)-regular graph via its transition
    matrix: (1-t^2)^(2(m-n)) det((1+qt^2)I - (q+1)tP) det((1+qt^2)I + (q+1)tP),
    all over exact rationals with P = A/(q+1)."""
    deg = g.is_regular()
    if deg is None:
        raise GraphError("spectral route needs a regular graph")
    q = deg - 1
    mats = graph_matrices(g)
    n = g.n
    plus = []
    minus = []
    for i in range(n):
        rp = []
        rm = []
        for j in range(n):
            diag = RationalPoly((1 if i == j else 0, 0, q if i == j else 0))
            p_entry = Fraction(int(mats.a[i, j]), deg)
            tp = RationalPoly((0, deg * p_entry))
            rp.append(diag - tp)
            rm.append(diag + tp)
        plus.append(rp)
        minus.append(rm)
    det = poly_det(plus) * poly_det(minus)
    value = one_minus_t2_power(2 * (g.m - g.n)) * det
    return ZetaReciprocal(value=value, method="spectral-exact",
                          graph_hash=g.graph_hash())


def generalized_alt_zeta_series(g: Graph, order: int = DEFAULT_SERIES_ORDER
                                ) -> TruncatedSeries:
    """Series of the per-vertex alternating zeta: Z_a(G,t)^(1/n).

    Meaningful when the graph is vertex-transitive; that is the caller's
    responsibility and is deliberately not checked here.
    """
    recip = alt_reciprocal_graph(g, "factorized").value
    za = TruncatedSeries.from_rationalfn(recip, order).inverse()
    return za.pow(Fraction(1, g.n))
