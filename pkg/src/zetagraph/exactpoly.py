"""Exact univariate polynomial, rational function and truncated series arithmetic.

Everything here is over the rationals (``fractions.Fraction``); nothing is ever
rounded.  ``ComplexPoly`` is the one floating type: it carries a tolerance used
when snapping numerically computed coefficients back onto exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_SERIES_ORDER = 24

RATIONALIZE_TOL = 1e-9
RATIONALIZE_MAX_DEN = 10**6


class RationalizationError(ValueError):
    """A complex coefficient could not be matched to a small exact rational."""

    def __init__(self, message, coeffs=None):
        super().__init__(message)
        self.coeffs = tuple(coeffs) if coeffs is not None else None


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class RationalPoly:
    """Polynomial in one variable t with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of t^k; trailing zeros are stripped so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "RationalPoly":
        return cls(())

    @classmethod
    def one(cls) -> "RationalPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def term(cls, power: int, coeff=1) -> "RationalPoly":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RationalPoly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return RationalPoly([c * f for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RationalFn")
        result = RationalPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly((other,))
        raise TypeError(f"cannot combine RationalPoly with {type(other).__name__}")

    def __call__(self, x):
        """Evaluate at x (Fraction, int, float or complex) by Horner."""
        acc = 0 if not isinstance(x, (float, complex)) else type(x)(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, (float, complex)) else float(c))
        return acc

    def substitute_neg(self) -> "RationalPoly":
        """The polynomial p(-t)."""
        return RationalPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RationalPoly([c / lead for c in self.coeffs])

    def divmod(self, other: "RationalPoly"):
        """Exact quotient and remainder over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - d + j] -= c * b
        return RationalPoly(q), RationalPoly(rem[:d] if d > 0 else ())

    def __repr__(self):
        return f"RationalPoly({self.format()})"

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                tk = var if k == 1 else f"{var}^{k}"
                parts.append(("-" if c < 0 else "+") + f" {mag}{tk}"
                             if parts else (("-" if c < 0 else "") + f"{mag}{tk}"))
        return " ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalPoly":
        return cls([Fraction(s) for s in obj["coeffs"]])


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd over the rationals by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def squarefree_factors(p: RationalPoly):
    """Yun's square-free decomposition: list of (factor, multiplicity).

    Factors are monic and pairwise coprime; the leading coefficient is returned
    separately as the first element ``(constant, 1)`` when it is not 1.
    """
    if p.is_zero() or p.degree <= 0:
        return [(p, 1)] if not p.is_one() else []
    out = []
    lead = p.coeffs[-1]
    if lead != 1:
        out.append((RationalPoly.constant(lead), 1))
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.divmod(a)[0]
    c = df.divmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


class RationalFn:
    """Quotient of two RationalPoly, normalized to lowest terms, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: RationalPoly, den: RationalPoly = None):
        if den is None:
            den = RationalPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = RationalPoly.zero()
            self.den = RationalPoly.one()
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != 1:
            den = den.monic()
            num = num * (Fraction(1) / lead)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: RationalPoly) -> "RationalFn":
        return cls(p, RationalPoly.one())

    @classmethod
    def one(cls) -> "RationalFn":
        return cls.from_poly(RationalPoly.one())

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> RationalPoly:
        if not self.is_polynomial():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (RationalPoly, int, Fraction)):
            return self == RationalFn.from_poly(RationalPoly._coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self.num * other.den, self.den * other.num)

    def __add__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    def __sub__(self, other) -> "RationalFn":
        other = self._coerce(other)
        return RationalFn(self.num * other.den - other.num * self.den,
                          self.den * other.den)

    def __pow__(self, n: int) -> "RationalFn":
        if n >= 0:
            return RationalFn(self.num ** n, self.den ** n)
        return RationalFn(self.den ** (-n), self.num ** (-n))

    @staticmethod
    def _coerce(other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (RationalPoly, int, Fraction)):
            return RationalFn.from_poly(RationalPoly._coerce(other))
        raise TypeError(f"cannot combine RationalFn with {type(other).__name__}")

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def substitute_neg(self) -> "RationalFn":
        return RationalFn(self.num.substitute_neg(), self.den.substitute_neg())

    def __repr__(self):
        if self.is_polynomial():
            return f"RationalFn({self.num.format()})"
        return f"RationalFn(({self.num.format()}) / ({self.den.format()}))"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFn":
        return cls(RationalPoly.from_json(obj["num"]), RationalPoly.from_json(obj["den"]))


def one_minus_t2_power(e: int) -> RationalFn:
    """(1 - t^2)^e as a rational function, any integer e."""
    base = RationalPoly((1, 0, -1))
    if e >= 0:
        return RationalFn.from_poly(base ** e)
    return RationalFn(RationalPoly.one(), base ** (-e))


class TruncatedSeries:
    """Power series with exact rational coefficients, truncated at a fixed order.

    Arithmetic never looks past the truncation order; ``exp`` requires constant
    term 0 and ``log``/``pow`` require constant term 1.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = [_as_fraction(c) for c in coeffs[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p: RationalPoly, order: int) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    @classmethod
    def from_rationalfn(cls, fn: RationalFn, order: int) -> "TruncatedSeries":
        num = cls.from_poly(fn.num, order)
        if fn.is_polynomial():
            return num
        return num * cls.from_poly(fn.den, order).inverse()

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"coefficient {k} beyond truncation order {self.order}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def __add__(self, other) -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __sub__(self, other) -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return TruncatedSeries([c * f for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ValueError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / a0
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += self.coeffs[j] * out[k - j]
            out[k] = -s / a0
        return TruncatedSeries(out, n)

    def exp(self) -> "TruncatedSeries":
        if self.coeffs[0] != 0:
            raise ValueError("exp of a series requires constant term 0")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += j * self.coeffs[j] * out[k - j]
            out[k] = s / k
        return TruncatedSeries(out, n)

    def log(self) -> "TruncatedSeries":
        if self.coeffs[0] != 1:
            raise ValueError("log of a series requires constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            s = k * self.coeffs[k]
            for j in range(1, k):
                s -= j * out[j] * self.coeffs[k - j]
            out[k] = s / k
        return TruncatedSeries(out, n)

    def pow(self, r) -> "TruncatedSeries":
        """S^r for an exact rational exponent; requires S(0) = 1."""
        r = _as_fraction(r)
        return (self.log() * r).exp()

    def __repr__(self):
        shown = RationalPoly(self.coeffs[: min(self.order, 8) + 1]).format()
        return f"TruncatedSeries({shown} + O(t^{self.order + 1}))"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "order": self.order}


class ComplexPoly:
    """Polynomial with complex floating coefficients and a rationalization tolerance."""

    __slots__ = ("coeffs", "tol")

    def __init__(self, coeffs: Sequence[complex], tol: float = RATIONALIZE_TOL):
        cs = [complex(c) for c in coeffs]
        while cs and abs(cs[-1]) <= tol:
            cs.pop()
        self.coeffs = tuple(cs)
        self.tol = tol

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> complex:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0j

    def __call__(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other) -> "ComplexPoly":
        if isinstance(other, (int, float, complex)):
            return ComplexPoly([c * other for c in self.coeffs], self.tol)
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ComplexPoly(out, max(self.tol, other.tol))

    __rmul__ = __mul__

    def substitute_neg(self) -> "ComplexPoly":
        return ComplexPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)],
                           self.tol)

    def isclose(self, other: "ComplexPoly", tol: float = None) -> bool:
        tol = tol if tol is not None else max(self.tol, other.tol)
        n = max(len(self.coeffs), len(other.coeffs))
        scale = max(1.0, max((abs(c) for c in self.coeffs), default=0.0))
        return all(abs(self[k] - other[k]) <= tol * scale for k in range(n))

    def rationalize(self, max_den: int = RATIONALIZE_MAX_DEN) -> RationalPoly:
        """Snap every coefficient onto an exact rational with a small denominator.

        Raises RationalizationError when any coefficient has a residual imaginary
        part or sits farther than tol from every rational with denominator
        <= max_den; the raw coefficients ride along on the exception.
        """
        out = []
        for k, c in enumerate(self.coeffs):
            if abs(c.imag) > self.tol:
                raise RationalizationError(
                    f"coefficient of t^{k} has imaginary part {c.imag:.3e}", self.coeffs)
            fr = Fraction(c.real).limit_denominator(max_den)
            if abs(float(fr) - c.real) > self.tol:
                raise RationalizationError(
                    f"coefficient of t^{k} = {c.real!r} is not a small rational",
                    self.coeffs)
            out.append(fr)
        return RationalPoly(out)

    def to_json(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs], "tol": self.tol}

    def __repr__(self):
        return f"ComplexPoly(degree={self.degree})"
