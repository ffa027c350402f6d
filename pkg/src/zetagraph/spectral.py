"""Floating-point side: spectra, the spectral form of the alternating zeta,
torus limits by tensor-grid quadrature, and Mahler measures.

Quadrature is the midpoint rule on a uniform grid over [0, 2pi)^d, which for
smooth periodic integrands converges geometrically; G = 128 nodes per axis is
far past convergence for every case in scope (d = 4 is capped at 48 for
runtime).  Node sums run in a fixed order, so outputs are bit-stable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .graphs import Graph, GraphError

DEFAULT_GRID = 128
GRID_CAP_4D = 48
SINGULAR_EPS = 1e-14


class DomainError(ValueError):
    pass


@dataclass
class Spectrum:
    """Finite multiset of real eigenvalues acting as an empirical spectral measure."""

    values: np.ndarray
    source: str

    def __post_init__(self):
        self.values = np.sort(np.asarray(self.values, dtype=np.float64))

    @property
    def n(self) -> int:
        return len(self.values)


def transition_spectrum(g: Graph) -> Spectrum:
    """Eigenvalues of the simple random walk transition matrix D^-1 A.

    Computed from the symmetric conjugate D^-1/2 A D^-1/2, so the spectrum is
    real for any connected graph; it lies in [-1, 1] and contains 1.
    """
    a = g.adjacency_matrix().astype(np.float64)
    dinv_sqrt = 1.0 / np.sqrt(g.degrees.astype(np.float64))
    sym = a * dinv_sqrt[:, None] * dinv_sqrt[None, :]
    return Spectrum(values=np.linalg.eigvalsh(sym), source="transition-P")


def laplacian_spectrum(g: Graph) -> Spectrum:
    lap = np.diag(g.degrees.astype(np.float64)) - g.adjacency_matrix()
    return Spectrum(values=np.linalg.eigvalsh(lap), source="laplacian")


def torus_transition_spectrum(d: int, side: int) -> Spectrum:
    """Closed-form random walk spectrum of the discrete torus:
    (1/d) sum_j cos(2 pi k_j / side) over all k in {0..side-1}^d."""
    cosv = np.cos(2 * np.pi * np.arange(side) / side)
    s = cosv
    for _ in range(d - 1):
        s = (s[:, None] + cosv[None, :]).ravel()
    return Spectrum(values=s / d, source="torus-closed-form")


def zeta_a_spectral(g: Graph, t: float, basis: str = "P") -> float:
    """Per-vertex alternating zeta reciprocal of a regular graph from a spectrum.

    basis="P":        (1-t^2)^(q-1) exp[(1/n) sum log((1+qt^2)^2 - (q+1)^2 t^2 l^2)]
    basis="laplacian": same with (1+qt^2)^2 - t^2 (l - (q+1))^2, the form the
    substitution l = (q+1)(1 - l_P) maps termwise onto the P basis.
    """
    deg = g.is_regular()
    if deg is None:
        raise GraphError("spectral evaluation needs a regular graph")
    q = deg - 1
    if basis == "P":
        spec = transition_spectrum(g)
        args = (1 + q * t * t) ** 2 - deg**2 * t * t * spec.values**2
    elif basis == "laplacian":
        spec = laplacian_spectrum(g)
        args = (1 + q * t * t) ** 2 - t * t * (spec.values - deg) ** 2
    else:
        raise ValueError("basis must be 'P' or 'laplacian'")
    bad = np.flatnonzero(args <= 0)
    if len(bad):
        raise DomainError(
            f"log argument <= 0 at eigenvalue {spec.values[bad[0]]:.6f} (t={t})")
    return (1 - t * t) ** (q - 1) * math.exp(float(np.log(args).mean()))


@dataclass
class QuadratureGrid:
    """Uniform midpoint tensor grid on [0, 2pi)^d with weight (1/points)^d."""

    d: int
    points: int = DEFAULT_GRID

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.points < 2:
            raise ValueError("need at least 2 points per axis")
        if self.d >= 4 and self.points > GRID_CAP_4D:
            self.points = GRID_CAP_4D

    def axis_cosines(self) -> np.ndarray:
        theta = 2 * np.pi * (np.arange(self.points) + 0.5) / self.points
        return np.cos(theta)

    @property
    def weight(self) -> float:
        return self.points ** (-self.d)


def _default_grid(d: int, grid) -> QuadratureGrid:
    if grid is None:
        return QuadratureGrid(d=d)
    if isinstance(grid, int):
        return QuadratureGrid(d=d, points=grid)
    if grid.d != d:
        raise ValueError("grid dimension does not match")
    return grid


def torus_finite_reciprocal(d: int, side: int, t: float) -> float:
    """Per-vertex alternating zeta reciprocal of the finite torus via the
    closed-form transition spectrum."""
    if d < 1:
        raise DomainError("dimension must be >= 1")
    if side < 3:
        raise DomainError("torus side must be >= 3")
    q = 2 * d - 1
    spec = torus_transition_spectrum(d, side)
    s = d * spec.values  # sum of cosines
    args = (1 + q * t * t) ** 2 - 4 * t * t * s * s
    bad = np.flatnonzero(args <= 0)
    if len(bad):
        raise DomainError(f"log argument <= 0 at spectral point {s[bad[0]]:.6f}")
    return (1 - t * t) ** (2 * (d - 1)) * math.exp(float(np.log(args).mean()))


def _torus_integral(d: int, t: float, grid) -> float:
    """Quadrature of log((1+(2d-1)t^2)^2 - 4t^2 (sum cos)^2) over the torus."""
    grid = _default_grid(d, grid)
    a2 = (1 + (2 * d - 1) * t * t) ** 2
    b2 = 4 * t * t
    total, minarg = _kernels.torus_logsum(grid.axis_cosines(), d, a2, b2)
    if minarg <= 0 or math.isnan(total):
        raise DomainError(
            f"integrand argument {minarg:.3e} <= 0 somewhere on the grid (t={t})")
    return total * grid.weight


def torus_limit(d: int, t: float, grid=None) -> float:
    """Limit of the per-vertex alternating zeta reciprocals of growing tori:
    (1-t^2)^(2(d-1)) exp[integral of the spectral log over the torus]."""
    return (1 - t * t) ** (2 * (d - 1)) * math.exp(_torus_integral(d, t, grid))


def log_zeta_torus(d: int, t: float, grid=None) -> float:
    """Logarithm of the torus limit: 2(d-1)log(1-t^2) + integral term."""
    return 2 * (d - 1) * math.log1p(-t * t) + _torus_integral(d, t, grid)


def mahler_measure(d: int, c: float, sign: int = 1, grid=None) -> float:
    """Logarithmic Mahler measure of sign*sum_j(X_j + X_j^-1) - c.

    On the unit torus the integrand is log|sign*2*(sum cos theta_j) - c|.
    |c| > 2d keeps it away from zero; other c are accepted with a warning, and
    any node where |f| < 1e-14 triggers a singular-integrand warning naming the
    first few flat node indices (those nodes are skipped).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    grid = _default_grid(d, grid)
    if abs(c) <= 2 * d:
        warnings.warn(f"|c| = {abs(c)} <= 2d = {2 * d}: the integrand may vanish "
                      f"on the torus; the quadrature converges only slowly",
                      stacklevel=2)
    total, minabs, nsing, first = _kernels.mahler_logsum(
        grid.axis_cosines(), d, float(sign), float(c), SINGULAR_EPS)
    if nsing:
        warnings.warn(f"integrand smaller than {SINGULAR_EPS} at {nsing} nodes "
                      f"(first flat indices {first}); those nodes were skipped",
                      stacklevel=2)
    return total * grid.weight


def constant_mahler(c: float) -> float:
    """m(constant) = log|c|; tiny convenience used by tests and the CLI."""
    if c == 0:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    return math.log(abs(c))


@dataclass
class MahlerIdentityReport:
    d: int
    t: float
    c: float
    lhs: float
    rhs: float

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_json(self) -> dict:
        return {"d": self.d, "t": self.t, "c": self.c, "lhs": self.lhs,
                "rhs": self.rhs, "diff": self.diff}


def mahler_identity_check(d: int, t: float, grid=None) -> MahlerIdentityReport:
    """Check the closed form of the torus logarithmic zeta against Mahler
    measures: for -1/(2d-1) < t < 0 and c = (2d-1)t + 1/t,

        log-zeta = 2(d-1)log(1-t^2) + 2log(-t) + m(S - c) + m(-S - c)

    with S = sum_j (X_j + X_j^-1).  Both sides are quadratures of algebraically
    different integrands.
    """
    if not (-1.0 / (2 * d - 1) < t < 0):
        raise DomainError(
            f"t must lie strictly inside (-1/{2 * d - 1}, 0); got {t}")
    grid = _default_grid(d, grid)
    c = (2 * d - 1) * t + 1.0 / t
    lhs = log_zeta_torus(d, t, grid)
    rhs = (2 * (d - 1) * math.log1p(-t * t) + 2 * math.log(-t)
           + mahler_measure(d, c, sign=1, grid=grid)
           + mahler_measure(d, c, sign=-1, grid=grid))
    return MahlerIdentityReport(d=d, t=t, c=c, lhs=lhs, rhs=rhs)


def quadrature_delta(fn, d: int, t: float, points: int) -> float:
    """|fn at points - fn at points/2|, the convergence indicator the CLI emits."""
    hi = fn(d, t, QuadratureGrid(d=d, points=points))
    lo = fn(d, t, QuadratureGrid(d=d, points=max(2, points // 2)))
    return abs(hi - lo)


def circle_log_mean(r: float, points: int = 2**14) -> float:
    """Midpoint quadrature of log(1 - r cos theta) over the circle.

    For |r| <= 1 the closed form is log((1 + sqrt(1-r^2))/2); the quadrature
    reproducing it is the 1-d sanity anchor for the whole grid machinery.
    """
    if abs(r) > 1:
        raise DomainError("closed form needs |r| <= 1")
    theta = 2 * np.pi * (np.arange(points) + 0.5) / points
    vals = 1.0 - r * np.cos(theta)
    if np.any(vals <= 0):
        raise DomainError("integrand hit zero on the grid")
    return float(np.log(vals).mean())
