"""L-functions of voltage graphs and the covering decomposition checks.

Per-representation determinants run in complex floating arithmetic and are
snapped back to exact rationals; character values are roots of unity, so an
individual factor may legitimately keep irrational real coefficients (order-5
characters produce 2cos(2pi/5)), but the product over all irreducibles must
always rationalize, and is compared exactly against the derived graph.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .exactpoly import (ComplexPoly, RATIONALIZE_TOL, RationalFn, RationalPoly,
                        RationalizationError)
from .graphs import Digraph, Graph, digraph_matrices, graph_matrices
from .linalg import cpoly_det
from .oracle import (T_SHARE, _closed_alt_token_lists, _closed_nbt_sequences,
                     enumeration_budget)
from .voltage import (Group, Representation, VoltageGraph, derived_digraph,
                      derived_graph, validate_pseudo_voltages, voltage_matrices)
from .zeta import alt_reciprocal_digraph, alt_reciprocal_graph, ihara_reciprocal

L_METHODS = ("hashimoto", "ihara")
ALT_L_METHODS = ("hashimoto", "factorized")


@dataclass
class LReciprocal:
    """Reciprocal L-function: exact polynomial when rationalization succeeds,
    otherwise the raw complex polynomial."""

    value: Union[RationalPoly, ComplexPoly]
    rep_id: str
    method: str

    def __post_init__(self):
        at0 = self.value(0) if isinstance(self.value, RationalPoly) else self.value(0j)
        if abs(complex(at0) - 1) > 1e-6:
            raise ValueError("an L-function reciprocal must equal 1 at t = 0")

    @property
    def rationalized(self) -> bool:
        return isinstance(self.value, RationalPoly)

    def to_json(self) -> dict:
        out = {"rep": self.rep_id, "method": self.method,
               "rationalized": self.rationalized}
        out["reciprocal"] = self.value.to_json()
        return out


def _try_rationalize(cp: ComplexPoly):
    try:
        return cp.rationalize()
    except RationalizationError:
        return cp


def _one_minus_t2_coeffs(e: int) -> np.ndarray:
    """(1-t^2)^e for e >= 0 as exact integer coefficients."""
    out = np.zeros(2 * e + 1, dtype=np.complex128)
    c = 1
    for j in range(e + 1):
        out[2 * j] = c * (-1) ** j
        c = c * (e - j) // (j + 1)
    return out


def _apply_t2_prefactor(cp: ComplexPoly, e: int) -> ComplexPoly:
    """Multiply (e >= 0) or exactly divide (e < 0) by (1-t^2)^|e|."""
    if e == 0:
        return cp
    if e > 0:
        return cp * ComplexPoly(_one_minus_t2_coeffs(e), cp.tol)
    coeffs = list(cp.coeffs)
    for _ in range(-e):
        q = [0j] * len(coeffs)
        for k in range(len(coeffs)):
            q[k] = coeffs[k] + (q[k - 2] if k >= 2 else 0j)
        tail = max(abs(q[-1]), abs(q[-2])) if len(q) >= 2 else 0.0
        scale = max(1.0, max(abs(c) for c in coeffs))
        if tail > 1e-7 * scale:
            raise ArithmeticError("(1-t^2) does not divide this determinant")
        coeffs = q[:-2]
    return ComplexPoly(coeffs, cp.tol)


def ihara_L_reciprocal(vg: VoltageGraph, rep_id: str,
                       method: str = "hashimoto") -> LReciprocal:
    """Reciprocal Ihara L-function for one unitary representation.

    hashimoto: det(I_2md - t sum_g rho(g)x(B_g - J_g)).
    ihara:     (1-t^2)^((m-n)d) det(I_nd - t sum_g rho(g)xA_g + t^2 I_d x Q).
    """
    if method not in L_METHODS:
        raise ValueError(f"method must be one of {L_METHODS}")
    vm = voltage_matrices(vg, rep_id)
    base = vg.base
    if method == "hashimoto":
        x = vm.b_rho - vm.j_rho
        cp = cpoly_det([np.eye(x.shape[0]), -x])
    else:
        q = graph_matrices(base).q
        qd = np.kron(np.eye(vm.degree), q).astype(np.complex128)
        cp = cpoly_det([np.eye(vm.a_rho.shape[0]), -vm.a_rho, qd])
        cp = _apply_t2_prefactor(cp, (base.m - base.n) * vm.degree)
    return LReciprocal(value=_try_rationalize(cp), rep_id=rep_id, method=method)


def alt_L_reciprocal(vg: VoltageGraph, rep_id: str,
                     method: str = "hashimoto") -> LReciprocal:
    """Reciprocal alternating L-function: det(I-tX)det(I+tX) with the twisted
    arc matrix X, or the product L(t)L(-t) of the Ihara L-function."""
    if method not in ALT_L_METHODS:
        raise ValueError(f"method must be one of {ALT_L_METHODS}")
    if method == "hashimoto":
        vm = voltage_matrices(vg, rep_id)
        x = vm.b_rho - vm.j_rho
        eye = np.eye(x.shape[0])
        cp = cpoly_det([eye, -x]) * cpoly_det([eye, x])
        return LReciprocal(value=_try_rationalize(cp), rep_id=rep_id, method=method)
    li = ihara_L_reciprocal(vg, rep_id, "ihara")
    if isinstance(li.value, RationalPoly):
        value = li.value * li.value.substitute_neg()
    else:
        value = _try_rationalize(li.value * li.value.substitute_neg())
    return LReciprocal(value=value, rep_id=rep_id, method=method)


# ---------------------------------------------------------------------------
# covering decompositions
# ---------------------------------------------------------------------------

@dataclass
class CoverDecomposition:
    kind: str
    factors: List[Tuple[LReciprocal, int]]
    product: RationalFn
    direct: RationalFn
    match: bool
    cover_connected: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "factors": [dict(f.to_json(), degree=d) for f, d in self.factors],
            "product": self.product.to_json(),
            "direct": self.direct.to_json(),
            "cover_connected": self.cover_connected,
            "match": self.match,
        }


def _interpolated_product(evaluators, total_degree: int) -> RationalPoly:
    """Multiply factor polynomials by shared evaluation at roots of unity."""
    count = total_degree + 1
    omega = np.exp(2j * np.pi / count)
    values = np.ones(count, dtype=np.complex128)
    nodes = omega ** np.arange(count)
    for ev, power in evaluators:
        values *= np.array([ev(t) for t in nodes]) ** power
    coeffs = np.fft.fft(values) / count
    return ComplexPoly(coeffs, RATIONALIZE_TOL).rationalize()


def cover_zeta_decomposition(vg: VoltageGraph, kind: str = "ihara"
                             ) -> CoverDecomposition:
    """Product of L-reciprocals over all irreducible representations (each with
    multiplicity its degree) against the directly computed reciprocal of the
    derived graph; they must agree exactly after rationalization."""
    if kind not in ("ihara", "alternating", "alt"):
        raise ValueError("kind must be 'ihara' or 'alternating'")
    kind = "alternating" if kind in ("alternating", "alt") else "ihara"
    if not vg.irreps_complete():
        raise ValueError(
            "representation list is incomplete: sum of squared degrees "
            f"{sum(r.degree ** 2 for r in vg.reps)} != group order {vg.group.order}")
    base = vg.base
    p = vg.group.order
    cover = derived_graph(vg)
    if not cover.is_connected:
        warnings.warn("derived graph is disconnected; the decomposition still "
                      "holds determinant-wise but the covering theorems "
                      "hypothesize connectivity", stacklevel=2)
    use_vertex_form = base.m >= base.n
    q = graph_matrices(base).q
    factors = []
    evaluators = []
    for rep in vg.reps:
        vm = voltage_matrices(vg, rep.rep_id)
        d = rep.degree
        if use_vertex_form:
            eye = np.eye(vm.a_rho.shape[0], dtype=np.complex128)
            qd = np.kron(np.eye(d), q).astype(np.complex128)
            a_rho = vm.a_rho
            exp0 = (base.m - base.n) * d
            if kind == "ihara":
                def ev(t, a_rho=a_rho, qd=qd, eye=eye, exp0=exp0):
                    return (1 - t * t) ** exp0 * np.linalg.det(
                        eye - t * a_rho + t * t * qd)
            else:
                def ev(t, a_rho=a_rho, qd=qd, eye=eye, exp0=exp0):
                    m_plus = eye - t * a_rho + t * t * qd
                    m_minus = eye + t * a_rho + t * t * qd
                    return ((1 - t * t) ** (2 * exp0) *
                            np.linalg.det(m_plus) * np.linalg.det(m_minus))
        else:
            x = vm.b_rho - vm.j_rho
            eye = np.eye(x.shape[0], dtype=np.complex128)
            if kind == "ihara":
                def ev(t, x=x, eye=eye):
                    return np.linalg.det(eye - t * x)
            else:
                def ev(t, x=x, eye=eye):
                    return np.linalg.det(eye - t * x) * np.linalg.det(eye + t * x)
        evaluators.append((ev, d))
        if kind == "ihara":
            factors.append((ihara_L_reciprocal(vg, rep.rep_id, "ihara"), d))
        else:
            factors.append((alt_L_reciprocal(vg, rep.rep_id, "factorized"), d))
    total_degree = (2 if kind == "ihara" else 4) * base.m * p
    product = RationalFn.from_poly(_interpolated_product(evaluators, total_degree))
    if kind == "ihara":
        direct = ihara_reciprocal(cover, "ihara").value
    else:
        direct = alt_reciprocal_graph(cover, "factorized").value
    return CoverDecomposition(kind=kind, factors=factors, product=product,
                              direct=direct, match=product == direct,
                              cover_connected=cover.is_connected)


# ---------------------------------------------------------------------------
# digraph covers (pseudo voltage assignments)
# ---------------------------------------------------------------------------

def _twisted_terminus_blocks(d: Digraph, group: Group, volts, rep: Representation):
    """sum_h rho(h) x B^alpha_h where B^alpha_h[e,f] = [t(e)=t(f)] and
    alpha(e) alpha(f)^-1 = h."""
    m = d.m
    deg = rep.degree
    out = np.zeros((m * deg, m * deg), dtype=np.complex128)
    for h in range(group.order):
        bh = np.zeros((m, m), dtype=np.int64)
        for e in range(m):
            for f in range(m):
                if d.terminus[e] == d.terminus[f] and \
                        group.mul(volts[e], group.inv(volts[f])) == h:
                    bh[e, f] = 1
        if bh.any():
            out += np.kron(rep.matrices[h], bh)
    return out


def _digraph_factor_stack(d: Digraph, group: Group, volts, rep: Representation):
    """I - t(calB_rho - J) for the alternating L-function of a digraph cover."""
    m = d.m
    deg = rep.degree
    b1 = digraph_matrices(d).b1
    top_right = np.kron(np.eye(deg), b1).astype(np.complex128)
    bottom_left = _twisted_terminus_blocks(d, group, volts, rep)
    size = m * deg
    eye = np.eye(size, dtype=np.complex128)
    mat = np.zeros((2 * size, 2 * size), dtype=np.complex128)
    mat[:size, size:] = top_right - eye
    mat[size:, :size] = bottom_left - eye
    return [np.eye(2 * size, dtype=np.complex128), -mat]


def digraph_cover_alt_zeta(d: Digraph, group: Group, arc_voltages: Sequence[int],
                           reps: Sequence[Representation]) -> CoverDecomposition:
    """Alternating zeta of a digraph cover as the product of per-representation
    factors, verified against the derived digraph."""
    validate_pseudo_voltages(d, group, arc_voltages)
    for rep in reps:
        rep.validate(group)
    if sum(r.degree**2 for r in reps) != group.order:
        raise ValueError("representation list is incomplete")
    volts = [int(g) for g in arc_voltages]
    factors = []
    evaluators = []
    for rep in reps:
        stack = _digraph_factor_stack(d, group, volts, rep)
        cp = cpoly_det(stack)
        factors.append((LReciprocal(value=_try_rationalize(cp), rep_id=rep.rep_id,
                                    method="hashimoto"), rep.degree))

        def ev(t, stack=stack):
            return np.linalg.det(stack[0] + t * stack[1])

        evaluators.append((ev, rep.degree))
    total_degree = 2 * d.m * group.order
    product = RationalFn.from_poly(_interpolated_product(evaluators, total_degree))
    cover = derived_digraph(d, group, volts)
    if not cover.is_connected:
        warnings.warn("derived digraph is weakly disconnected", stacklevel=2)
    direct = alt_reciprocal_digraph(cover, "ihara").value
    return CoverDecomposition(kind="alternating-digraph", factors=factors,
                              product=product, direct=direct,
                              match=product == direct,
                              cover_connected=cover.is_connected)


# ---------------------------------------------------------------------------
# representation-weighted enumeration (the independent oracle for L-functions)
# ---------------------------------------------------------------------------

def weighted_cycle_trace(vg: VoltageGraph, rep_id: str, k: int,
                         budget: Optional[int] = None) -> complex:
    """trace of sum over reduced cycles of length k of the product of rho of
    the voltages along the cycle."""
    rep = vg.rep(rep_id)
    budget = enumeration_budget(budget)
    total = 0j
    eye = np.eye(rep.degree, dtype=np.complex128)
    for seq in _closed_nbt_sequences(vg.base, k, budget):
        w = eye
        for a in seq:
            w = w @ rep.matrices[vg.arc_voltages[a]]
        total += np.trace(w)
    return complex(total)


def weighted_alt_cycle_trace(d: Digraph, group: Group, arc_voltages: Sequence[int],
                             rep: Representation, k: int,
                             budget: Optional[int] = None) -> complex:
    """trace-weighted count of reduced alternating cycles of length k:
    transitions at a shared terminus contribute rho(alpha(e) alpha(f)^-1),
    matching the twisted arc matrix, so this independently reproduces
    tr(M^k) of the determinant route."""
    budget = enumeration_budget(budget)
    volts = [int(g) for g in arc_voltages]
    total = 0j
    eye = np.eye(rep.degree, dtype=np.complex128)
    for tokens in _closed_alt_token_lists(d, k, budget):
        w = eye
        for i, (arc, share) in enumerate(tokens):
            if share == T_SHARE:
                nxt = tokens[(i + 1) % k][0]
                g = group.mul(volts[arc], group.inv(volts[nxt]))
                w = w @ rep.matrices[g]
        total += np.trace(w)
    return complex(total)


def complex_log_coeffs(poly, kmax: int) -> List[complex]:
    """First kmax coefficients (index 1..kmax) of log of a polynomial with
    constant term 1, in floating complex arithmetic."""
    if isinstance(poly, RationalPoly):
        coeffs = [complex(float(c)) for c in poly.coeffs]
    else:
        coeffs = [complex(c) for c in getattr(poly, "coeffs", poly)]
    a = [coeffs[i] if i < len(coeffs) else 0j for i in range(kmax + 1)]
    out = [0j] * (kmax + 1)
    for k in range(1, kmax + 1):
        s = k * a[k]
        for j in range(1, k):
            s -= j * out[j] * a[k - j]
        out[k] = s / k
    return out[1:]
