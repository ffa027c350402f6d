import random
from fractions import Fraction

import numpy as np
import pytest

from zetagraph.exactpoly import RationalPoly
from zetagraph.linalg import (block2x2, cpoly_det, default_nodes, det_exact,
                              int_det, int_det_bareiss, kron,
                              lagrange_interpolate, matmul, poly_det,
                              weinstein_aronszajn_pair)

F = Fraction


def cofactor_det(mat):
    """Independent oracle: Laplace expansion along the first row."""
    n = len(mat)
    if n == 0:
        return RationalPoly.one()
    if n == 1:
        return mat[0][0]
    total = RationalPoly.zero()
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in mat[1:]]
        term = mat[0][j] * cofactor_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def rand_poly_matrix(rng, n, maxdeg=2):
    return [[RationalPoly([rng.randint(-3, 3) for _ in range(maxdeg + 1)])
             for _ in range(n)] for _ in range(n)]


def test_int_det_small_cases():
    assert int_det_bareiss([[5]]) == 5
    assert int_det_bareiss([[1, 2], [3, 4]]) == -2
    assert int_det_bareiss([[0, 1], [1, 0]]) == -1
    assert int_det_bareiss([[1, 1], [1, 1]]) == 0
    assert int_det([[0] * 3 for _ in range(3)]) == 0


def test_int_det_crt_matches_bareiss():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randint(8, 14)
        m = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        assert int_det(m) == int_det_bareiss(m)
    eye = [[1 if i == j else 0 for j in range(12)] for i in range(12)]
    assert int_det(eye) == 1


def test_det_exact_rational_entries():
    m = [[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]
    assert det_exact(m) == F(1, 10) - F(1, 12)


def test_poly_det_trivial_and_known():
    t = RationalPoly([0, 1])
    one = RationalPoly.one()
    assert poly_det([[one, t], [t, one]]) == RationalPoly([1, 0, -1])
    assert poly_det([]) == RationalPoly.one()


def test_poly_det_matches_cofactor_expansion():
    rng = random.Random(7)
    for n in (2, 3, 4):
        for _ in range(8):
            m = rand_poly_matrix(rng, n)
            assert poly_det(m) == cofactor_det(m)


def test_poly_det_node_set_independence():
    rng = random.Random(11)
    m = rand_poly_matrix(rng, 3)
    count = 3 * 2 + 1
    nodes_a = list(range(0, count))
    nodes_b = list(range(100, 100 + count))
    assert set(nodes_a).isdisjoint(nodes_b)
    assert poly_det(m, nodes_a) == poly_det(m, nodes_b) == poly_det(m)


def test_poly_det_rejects_bad_nodes():
    m = rand_poly_matrix(random.Random(0), 2)
    with pytest.raises(ValueError):
        poly_det(m, [0, 1])  # too few
    with pytest.raises(ValueError):
        poly_det(m, [0, 1, 1, 2, 3])  # duplicates


def test_interpolation_exactness():
    p = RationalPoly([F(3, 7), -2, 0, F(5, 3)])
    nodes = default_nodes(6)
    ys = [p(F(x)) for x in nodes]
    assert lagrange_interpolate(nodes, ys) == p


def test_kron_identity_blocks():
    eye2 = [[1, 0], [0, 1]]
    m = [[1, 2], [3, 4]]
    k = kron(eye2, m)
    assert k == [[1, 2, 0, 0], [3, 4, 0, 0], [0, 0, 1, 2], [0, 0, 3, 4]]
    assert kron([[5]], m) == [[5, 10], [15, 20]]


def test_kron_mixed_product_property():
    rng = random.Random(17)
    for _ in range(10):
        a, b, c, d = (([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
                      for _ in range(4))
        left = matmul(kron(a, b), kron(c, d))
        right = kron(matmul(a, c), matmul(b, d))
        assert left == right


def test_block2x2_layout():
    a = [[1]]
    b = [[2]]
    c = [[3]]
    d = [[4]]
    assert block2x2(a, b, c, d) == [[1, 2], [3, 4]]
    with pytest.raises(ValueError):
        block2x2([[1]], [[1, 2]], [[1], [2]], [[1]])


def test_weinstein_aronszajn_identity():
    rng = random.Random(123)
    for _ in range(100):
        r = rng.randint(1, 5)
        s = rng.randint(1, 5)
        a = [[rng.randint(-5, 5) for _ in range(s)] for _ in range(r)]
        b = [[rng.randint(-5, 5) for _ in range(r)] for _ in range(s)]
        left, right = weinstein_aronszajn_pair(a, b)
        assert left == right


def test_cpoly_det_agrees_with_exact_on_rational_input():
    rng = random.Random(31)
    for n in (2, 3, 4):
        m_int = [[[rng.randint(-3, 3) for _ in range(3)] for _ in range(n)]
                 for _ in range(n)]
        poly_m = [[RationalPoly(m_int[i][j]) for j in range(n)] for i in range(n)]
        stacks = [np.array([[m_int[i][j][k] for j in range(n)] for i in range(n)],
                           dtype=np.complex128) for k in range(3)]
        exact = poly_det(poly_m)
        approx = cpoly_det(stacks).rationalize()
        assert approx == exact


def test_cpoly_det_single_complex_entry():
    eta = np.exp(2j * np.pi / 3)
    cp = cpoly_det([np.array([[0.0 + 0j]]), np.array([[eta]])])
    assert cp.degree == 1
    assert abs(cp[1] - eta) < 1e-12
