import random
from fractions import Fraction

import pytest

from zetagraph.exactpoly import (ComplexPoly, RationalFn, RationalPoly,
                                 RationalizationError, TruncatedSeries,
                                 one_minus_t2_power, poly_gcd,
                                 squarefree_factors)

F = Fraction


def rand_poly(rng, deg, denom=4):
    return RationalPoly([F(rng.randint(-6, 6), rng.randint(1, denom))
                         for _ in range(deg + 1)])


def test_trailing_zeros_stripped():
    assert RationalPoly([1, 2, 0, 0]).coeffs == (F(1), F(2))
    assert RationalPoly([0, 0]).is_zero()
    assert RationalPoly([]).degree == -1


def test_arithmetic_and_eval():
    p = RationalPoly([1, 0, -1])  # 1 - t^2
    q = RationalPoly([1, 1])
    assert p * q == RationalPoly([1, 1, -1, -1])
    assert p - p == RationalPoly.zero()
    assert p(F(1, 2)) == F(3, 4)
    assert (q**3)(2) == 27
    assert p.substitute_neg() == p
    assert RationalPoly([0, 1, 3]).substitute_neg() == RationalPoly([0, -1, 3])


def test_divmod_property():
    rng = random.Random(5)
    for _ in range(40):
        a = rand_poly(rng, rng.randint(0, 6))
        b = rand_poly(rng, rng.randint(0, 4))
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree or r.is_zero()


def test_gcd_contains_common_factor():
    rng = random.Random(9)
    for _ in range(20):
        c = rand_poly(rng, rng.randint(1, 3))
        if c.degree < 1:
            continue
        a = rand_poly(rng, 2) * c
        b = rand_poly(rng, 2) * c
        if a.is_zero() or b.is_zero():
            continue
        g = poly_gcd(a, b)
        _, rem = g.divmod(c.monic())
        assert rem.is_zero()


def test_squarefree_factorization_reassembles():
    p = (RationalPoly([1, -1]) ** 2) * (RationalPoly([1, 1]) ** 3) * RationalPoly([2, 0, 1])
    factors = squarefree_factors(p)
    prod = RationalPoly.one()
    for f, mult in factors:
        prod = prod * f**mult
    assert prod == p
    mults = sorted(m for f, m in factors if f.degree > 0)
    assert mults == [1, 2, 3]


def test_rationalfn_normalization():
    num = RationalPoly([1, 0, -1])          # (1-t)(1+t)
    den = RationalPoly([2, -2])             # 2(1-t)
    fn = RationalFn(num, den)
    assert fn.den.is_one()                  # cancels to a polynomial
    assert fn.num == RationalPoly([F(1, 2), F(1, 2)])
    g = RationalFn(RationalPoly([0, 1]), RationalPoly([0, 0, 2]))  # t / 2t^2
    assert g.den.coeffs[-1] == 1            # monic denominator
    assert g(F(1, 3)) == F(3, 2)


def test_one_minus_t2_power_negative_exponent():
    fn = one_minus_t2_power(-2)
    assert fn.num.is_one()
    assert fn.den == RationalPoly([1, 0, -2, 0, 1])
    assert (one_minus_t2_power(3) * one_minus_t2_power(-3)) == RationalFn.one()


def test_series_exp_log_roundtrip():
    rng = random.Random(13)
    for _ in range(15):
        coeffs = [F(1)] + [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(10)]
        s = TruncatedSeries(coeffs, 10)
        assert s.log().exp() == s


def test_series_log_of_squared_geometric():
    # log(1/(1-t^3)^2) = 2t^3 + t^6 + (2/3) t^9 + ...
    recip = RationalPoly([1, 0, 0, -1]) ** 2
    s = TruncatedSeries.from_poly(recip, 12).inverse().log()
    assert s[3] == 2 and s[6] == 1 and s[9] == F(2, 3)
    assert all(s[k] == 0 for k in (1, 2, 4, 5, 7, 8))


def test_series_exp_of_zero_and_preconditions():
    z = TruncatedSeries([0], 6)
    assert z.exp() == TruncatedSeries.one(6)
    with pytest.raises(ValueError):
        TruncatedSeries([1, 1], 4).exp()
    with pytest.raises(ValueError):
        TruncatedSeries([0, 1], 4).log()
    with pytest.raises(ValueError):
        TruncatedSeries([0, 1], 4).inverse()


def test_series_pow_binomial():
    # ((1-t^6)^2)^(1/3) = 1 - (2/3) t^6 - (1/9) t^12 - ...
    sq = RationalPoly([1] + [0] * 5 + [-1]) ** 2
    s = TruncatedSeries.from_poly(sq, 12).pow(F(1, 3))
    assert s[0] == 1 and s[6] == F(-2, 3) and s[12] == F(-1, 9)


def test_series_inverse_is_multiplicative_inverse():
    rng = random.Random(3)
    coeffs = [F(1)] + [F(rng.randint(-4, 4)) for _ in range(9)]
    s = TruncatedSeries(coeffs, 9)
    assert s * s.inverse() == TruncatedSeries.one(9)


def test_series_never_reads_past_truncation():
    a = TruncatedSeries([1, 1, 1], 2)
    b = TruncatedSeries([1] * 10, 9)
    assert (a * b).order == 2
    with pytest.raises(IndexError):
        _ = a[3]


def test_complex_poly_rationalize():
    cp = ComplexPoly([1.0 + 1e-12j, 0.5 + 1e-13, 0.0, -2.0])
    assert cp.rationalize() == RationalPoly([1, F(1, 2), 0, -2])
    with pytest.raises(RationalizationError):
        ComplexPoly([1.0, 0.25 + 1e-3j]).rationalize()  # imaginary residue
    with pytest.raises(RationalizationError):
        # golden-type numbers are the worst rational approximants; a tight
        # tolerance exposes them as non-rational
        ComplexPoly([1.0, 0.6180339887498949], tol=1e-15).rationalize()


def test_rationalfn_json_roundtrip():
    fn = RationalFn(RationalPoly([1, F(-1, 2)]), RationalPoly([1, 0, -1]))
    assert RationalFn.from_json(fn.to_json()) == fn
