"""Exact determinants of polynomial matrices by evaluation and interpolation.

Degrees of all matrix entries are tiny (the zeta formulas only produce
I - tX + t^2 Y shapes), so the determinant polynomial is recovered from its
values at size*degree+1 integer nodes.  Each nodal determinant is exact:
fraction-free Bareiss elimination over the integers, or (faster, still exact)
residues modulo enough 31-bit primes to exceed the Hadamard bound, recombined
by the Chinese remainder theorem.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from . import _kernels
from .exactpoly import ComplexPoly, RationalPoly

_MODDET_MIN_SIZE = 8


def _gen_primes31(count: int) -> List[int]:
    primes = []
    cand = 2**31 - 1
    while len(primes) < count:
        is_p = cand % 2 == 1
        if is_p:
            f = 3
            while f * f <= cand:
                if cand % f == 0:
                    is_p = False
                    break
                f += 2
        if is_p:
            primes.append(cand)
        cand -= 1 if cand % 2 == 0 else 2
    return primes

_PRIMES31 = _gen_primes31(80)


def kron(a, b):
    """Kronecker product of two list-of-lists matrices (any scalar entries)."""
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    return [[a[i][j] * b[k][l] for j in range(ca) for l in range(cb)]
            for i in range(ra) for k in range(rb)]


def block2x2(a, b, c, d):
    """[[a, b], [c, d]] assembled from four equally partitioned blocks."""
    if len(a) != len(b) or len(c) != len(d) or len(a[0]) != len(c[0]):
        raise ValueError("block dimensions do not fit together")
    top = [row_a + row_b for row_a, row_b in zip(a, b)]
    bot = [row_c + row_d for row_c, row_d in zip(c, d)]
    return top + bot


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][x] * b[x][j] for x in range(k)) for j in range(m)]
            for i in range(n)]


def int_det_bareiss(rows: List[List[int]]) -> int:
    """Exact determinant of an integer matrix, fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        piv = next((r for r in range(col, n) if m[r][col] != 0), -1)
        if piv == -1:
            return 0
        if piv != col:
            m[piv], m[col] = m[col], m[piv]
            sign = -sign
        pivot = m[col][col]
        for r in range(col + 1, n):
            mr = m[r]
            mc = m[col]
            f = mr[col]
            for c in range(col + 1, n):
                mr[c] = (mr[c] * pivot - f * mc[c]) // prev
            mr[col] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _hadamard_bits(mat: List[List[int]]):
    """log2 of the Hadamard bound, or None when a zero row forces det = 0."""
    bits = 0.0
    for row in mat:
        s = sum(x * x for x in row)
        if s == 0:
            return None
        bits += 0.5 * math.log2(s)
    return bits


def int_det(rows: List[List[int]]) -> int:
    """Exact integer determinant; modular/CRT kernel path when available."""
    n = len(rows)
    if n < _MODDET_MIN_SIZE or not _kernels.accel_active():
        return int_det_bareiss(rows)
    bits = _hadamard_bits(rows)
    if bits is None:
        return 0
    nprimes = int(bits + 2) // 30 + 1
    if nprimes > len(_PRIMES31):
        return int_det_bareiss(rows)
    if any(abs(x) >= 2**62 for row in rows for x in row):
        return int_det_bareiss(rows)
    primes = _PRIMES31[:nprimes]
    residues = _kernels.moddet(np.array(rows, dtype=np.int64),
                               np.array(primes, dtype=np.int64))
    modulus = 1
    acc = 0
    for r, p in zip(residues, primes):
        if modulus == 1:
            acc = int(r) % p
            modulus = p
            continue
        # combine acc (mod modulus) with r (mod p)
        inv = pow(modulus % p, p - 2, p)
        diff = (int(r) - acc) % p
        acc = acc + modulus * ((diff * inv) % p)
        modulus *= p
    if acc > modulus // 2:
        acc -= modulus
    return acc


def det_exact(rows: List[List]) -> Fraction:
    """Exact determinant of a matrix of Fractions/ints via row scaling."""
    n = len(rows)
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        denlcm = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                denlcm = denlcm * x.denominator // math.gcd(denlcm, x.denominator)
        scale *= denlcm
        int_rows.append([int(x * denlcm) if isinstance(x, Fraction) else int(x) * denlcm
                         for x in row])
    return Fraction(int_det(int_rows)) / scale


def lagrange_interpolate(xs: Sequence, ys: Sequence) -> RationalPoly:
    """Exact polynomial through the points (xs[i], ys[i])."""
    n = len(xs)
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    # Newton divided differences keep the arithmetic incremental and exact
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RationalPoly.zero()
    basis = RationalPoly.one()
    for j in range(n):
        poly = poly + basis * coef[j]
        basis = basis * RationalPoly((-xs[j], 1))
    return poly


def default_nodes(count: int) -> List[int]:
    """0, 1, -1, 2, -2, ... - small integers keep the nodal matrices small."""
    nodes = [0]
    k = 1
    while len(nodes) < count:
        nodes.append(k)
        if len(nodes) < count:
            nodes.append(-k)
        k += 1
    return nodes[:count]


def poly_det(mat: List[List[RationalPoly]], nodes: Sequence = None) -> RationalPoly:
    """Exact determinant of a square matrix of RationalPoly entries.

    Evaluate at size*maxdeg+1 distinct integer nodes, take exact determinants,
    interpolate.  The result is independent of the node choice; ``nodes`` exists
    so tests can prove that.
    """
    s = len(mat)
    if s == 0:
        return RationalPoly.one()
    for row in mat:
        if len(row) != s:
            raise ValueError("poly_det needs a square matrix")
    maxdeg = max((e.degree for row in mat for e in row), default=0)
    maxdeg = max(maxdeg, 0)
    count = s * maxdeg + 1
    if nodes is None:
        nodes = default_nodes(count)
    else:
        nodes = list(nodes)
        if len(nodes) < count:
            raise ValueError(f"need at least {count} nodes, got {len(nodes)}")
        if len(set(nodes)) != len(nodes):
            raise ValueError("interpolation nodes must be distinct")
        nodes = nodes[:count]
    values = []
    for x in nodes:
        xf = Fraction(x)
        evaluated = [[e(xf) for e in row] for row in mat]
        values.append(det_exact(evaluated))
    return lagrange_interpolate(nodes, values)


def identity_poly(s: int) -> List[List[RationalPoly]]:
    one = RationalPoly.one()
    zero = RationalPoly.zero()
    return [[one if i == j else zero for j in range(s)] for i in range(s)]


def char_matrix(m: np.ndarray, t_coeff=-1, t2_matrix: np.ndarray = None):
    """I + t_coeff*t*M + t^2*Y as a RationalPoly matrix (Y optional)."""
    s = m.shape[0]
    out = []
    for i in range(s):
        row = []
        for j in range(s):
            c0 = 1 if i == j else 0
            c1 = t_coeff * int(m[i, j])
            c2 = int(t2_matrix[i, j]) if t2_matrix is not None else 0
            row.append(RationalPoly((c0, c1, c2)))
        out.append(row)
    return out


def cpoly_det(coeff_mats: Sequence[np.ndarray], tol: float = None) -> ComplexPoly:
    """Determinant of M(t) = sum_k coeff_mats[k] * t^k, complex coefficients.

    Values are taken at roots of unity and the coefficients recovered with one
    inverse DFT; with unit-circle nodes the system is perfectly conditioned.
    """
    from .exactpoly import RATIONALIZE_TOL

    tol = RATIONALIZE_TOL if tol is None else tol
    mats = [np.asarray(m, dtype=np.complex128) for m in coeff_mats]
    s = mats[0].shape[0]
    if s == 0:
        return ComplexPoly([1.0], tol)
    maxdeg = len(mats) - 1
    count = s * maxdeg + 1
    omega = np.exp(2j * np.pi / count)
    values = np.empty(count, dtype=np.complex128)
    for j in range(count):
        t = omega**j
        m = mats[0].copy()
        tp = t
        for k in range(1, len(mats)):
            m += tp * mats[k]
            tp *= t
        values[j] = np.linalg.det(m)
    # values[j] = p(omega^j) is an inverse DFT of the coefficients, so the
    # forward transform (scaled) recovers them
    coeffs = np.fft.fft(values) / count
    return ComplexPoly(coeffs, tol)


def weinstein_aronszajn_pair(a: List[List[int]], b: List[List[int]]):
    """det(I_r - a b) and det(I_s - b a), both exact, for rectangular a, b."""
    r, s = len(a), len(b)
    ab = matmul(a, b)
    ba = matmul(b, a)
    left = [[(1 if i == j else 0) - ab[i][j] for j in range(r)] for i in range(r)]
    right = [[(1 if i == j else 0) - ba[i][j] for j in range(s)] for i in range(s)]
    return int_det(left), int_det(right)
