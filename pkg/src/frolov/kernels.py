"""Reproducing kernel of the zero-boundary mixed Sobolev space.

The univariate space consists of functions on ``[0, 1]`` whose derivatives
up to order ``r - 1`` vanish at both endpoints, with inner product
``<f, g> = int_0^1 f^(r) g^(r)``.  The base kernel

    K(x, y) = int_0^1 (x - t)_+^(r-1) (y - t)_+^(r-1) / ((r-1)!)^2 dt

reproduces the left boundary conditions.  The right boundary conditions are
imposed by projecting out ``span{x^r, ..., x^(2r-1)}``, whose Gramian
``G[j, k] = 1 / (j! k! (j + k + 1))`` is inverted exactly in rationals.

Written in ``s = min(x, y)``, ``t = 1 - max(x, y)`` and ``u = |x - y|`` the
projected kernel factors as ``s^r t^r P_r(s, t, u)`` where ``P_r`` is a
homogeneous form of degree ``2r - 2`` with positive coefficients.  The
evaluation routines use this form: every term is positive, so the kernel keeps
full relative accuracy near the boundary of the cube, where the projection
formula loses it to cancellation.  The Riesz representer of integration
factors the same way, as ``y^r (1 - y)^r / (2r)!``.

All evaluation functions broadcast over numpy arrays.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import InvalidSmoothnessError, UnsupportedSmoothnessError

__all__ = [
    "SmoothnessVector",
    "GramianInverse",
    "MAX_SMOOTHNESS",
    "k_base",
    "gram_inverse",
    "boundary_representer",
    "k_zero",
    "k_zero_projection",
    "k_zero_matrix",
    "factored_form",
    "k_tensor",
    "riesz_univariate",
    "riesz_projection",
    "riesz_tensor",
    "kernel_double_integral",
    "initial_error",
    "norm_equivalence_constant",
]

MAX_SMOOTHNESS = 8


@dataclass(frozen=True)
class SmoothnessVector:
    """Integer smoothness ``r = (r_1, ..., r_d)`` with every ``r_i >= 1``."""

    r: tuple

    def __init__(self, r):
        if isinstance(r, SmoothnessVector):
            r = r.r
        elif isinstance(r, (int, np.integer)):
            r = (r,)
        r = tuple(int(v) for v in r)
        if not r:
            raise InvalidSmoothnessError("smoothness vector must be non-empty")
        if min(r) < 1:
            raise InvalidSmoothnessError(f"smoothness components must be >= 1, got {r}")
        object.__setattr__(self, "r", r)

    @classmethod
    def parse(cls, text: str) -> "SmoothnessVector":
        """Parse a comma-separated list such as ``"1,2,2"``."""
        try:
            values = [int(v) for v in text.split(",") if v.strip()]
        except ValueError as exc:
            raise InvalidSmoothnessError(f"cannot parse smoothness {text!r}") from exc
        return cls(values)

    def __len__(self):
        return len(self.r)

    def __iter__(self):
        return iter(self.r)

    def __str__(self):
        return ",".join(str(v) for v in self.r)

    @property
    def d(self) -> int:
        return len(self.r)

    @property
    def r_min(self) -> int:
        return min(self.r)

    @property
    def eta(self) -> int:
        """Number of components equal to the minimum."""
        return self.r.count(self.r_min)

    @property
    def r_next(self):
        """Smallest component above the minimum, or ``None`` if all are equal."""
        above = [v for v in self.r if v > self.r_min]
        return min(above) if above else None


def _as_smoothness(r) -> SmoothnessVector:
    return r if isinstance(r, SmoothnessVector) else SmoothnessVector(r)


def _check_r(r):
    if int(r) != r or r < 1:
        raise InvalidSmoothnessError(f"smoothness must be an integer >= 1, got {r}")
    return int(r)


@dataclass(frozen=True)
class GramianInverse:
    """Exact inverse of ``G[j, k] = 1 / (j! k! (j + k + 1))``, ``0 <= j, k < r``."""

    r: int
    entries: tuple

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])


def _gramian(r):
    f = math.factorial
    return [[Fraction(1, f(j) * f(k) * (j + k + 1)) for k in range(r)] for j in range(r)]


def _invert_exact(M):
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for i in range(n):
            if i != col and A[i][col] != 0:
                fac = A[i][col]
                A[i] = [a - fac * b for a, b in zip(A[i], A[col])]
    return [row[n:] for row in A]


@lru_cache(maxsize=None)
def gram_inverse(r: int) -> GramianInverse:
    """Exact rational inverse of the ``r x r`` boundary Gramian.

    Raises
    ------
    UnsupportedSmoothnessError
        If ``r > MAX_SMOOTHNESS``.
    """
    r = _check_r(r)
    if r > MAX_SMOOTHNESS:
        raise UnsupportedSmoothnessError(f"r={r} exceeds cap {MAX_SMOOTHNESS}")
    inv = _invert_exact(_gramian(r))
    return GramianInverse(r=r, entries=tuple(tuple(row) for row in inv))


@lru_cache(maxsize=None)
def _correction_matrix(r):
    """``C[j, k] = Ginv[j, k] / ((j + r)! (k + r)!)`` as floats."""
    f = math.factorial
    inv = gram_inverse(r).entries
    return np.array(
        [[float(inv[j][k] / (f(j + r) * f(k + r))) for k in range(r)] for j in range(r)]
    )


@lru_cache(maxsize=None)
def _riesz_correction(r):
    """``c[k] = sum_j Ginv[j, k] / ((j + r + 1)! (k + r)!)`` as floats."""
    f = math.factorial
    inv = gram_inverse(r).entries
    return np.array(
        [float(sum(inv[j][k] / (f(j + r + 1) * f(k + r)) for j in range(r))) for k in range(r)]
    )


def _powers(x, lo, hi):
    """Stack ``x**lo, ..., x**(hi-1)`` along a new trailing axis."""
    x = np.asarray(x, dtype=float)
    return np.stack([x**p for p in range(lo, hi)], axis=-1)


def k_base(r: int, x, y):
    """Base kernel ``K_1^r(x, y)``.

    Evaluated in the min/max form
    ``(-1)^r / (2r-1)! * sum_{k=r}^{2r-1} C(2r-1, k) (-min)^k max^(2r-1-k)``.
    """
    r = _check_r(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    if r == 1:
        return lo
    if r == 2:
        return lo * lo * (0.5 * hi - lo / 6.0)
    n = 2 * r - 1
    scale = (-1) ** r / math.factorial(n)
    acc = np.zeros(np.broadcast(lo, hi).shape)
    for k in range(r, n + 1):
        acc = acc + math.comb(n, k) * (-lo) ** k * hi ** (n - k)
    return scale * acc


def boundary_representer(r: int, j: int, x):
    """``u_j(x) = d^j/dy^j K_1^r(x, y)`` at ``y = 1``, for ``0 <= j < r``."""
    r = _check_r(r)
    if not 0 <= j < r:
        raise ValueError(f"j must satisfy 0 <= j < r={r}, got {j}")
    x = np.asarray(x, dtype=float)
    n = 2 * r - 1 - j
    acc = np.zeros_like(x)
    for k in range(r, n + 1):
        acc = acc + math.comb(n, k) * (-x) ** k
    return (-1) ** r / math.factorial(n) * acc


def _poly_mul(p, q):
    out = defaultdict(Fraction)
    for a, ca in p.items():
        for b, cb in q.items():
            out[tuple(i + j for i, j in zip(a, b))] += ca * cb
    return {m: c for m, c in out.items() if c}


def _poly_pow(p, n, one):
    out = one
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


@lru_cache(maxsize=None)
def factored_form(r: int) -> tuple:
    """Coefficients of ``P_r`` with ``k_zero = s^r t^r P_r(s, t, u)``.

    Returns
    -------
    tuple of (a, b, c, Fraction)
        Terms ``coef * s^a t^b u^c`` with ``a + b + c = 2r - 2``.

    Raises
    ------
    ArithmeticError
        If the exact expansion does not have the expected shape.
    """
    r = _check_r(r)
    f = math.factorial
    inv = gram_inverse(r).entries
    one = {(0, 0): Fraction(1)}
    X = {(1, 0): Fraction(1)}
    Y = {(0, 0): Fraction(1), (0, 1): Fraction(-1)}
    # kernel on x <= y as a polynomial in (s, t) = (x, 1 - y)
    G = defaultdict(Fraction)
    n = 2 * r - 1
    for k in range(r, n + 1):
        c = Fraction((-1) ** (r + k) * math.comb(n, k), f(n))
        for m, v in _poly_mul(_poly_pow(X, k, one), _poly_pow(Y, n - k, one)).items():
            G[m] += c * v
    for j in range(r):
        for k in range(r):
            c = inv[j][k] / (f(j + r) * f(k + r))
            for m, v in _poly_mul(_poly_pow(X, j + r, one), _poly_pow(Y, k + r, one)).items():
                G[m] -= c * v
    G = {m: v for m, v in G.items() if v}
    if any(a < r or b < r for a, b in G):
        raise ArithmeticError(f"kernel for r={r} is not divisible by s^r t^r")
    # homogenize with 1 = s + t + u
    D = 2 * r - 2
    h = {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1), (0, 0, 1): Fraction(1)}
    one3 = {(0, 0, 0): Fraction(1)}
    H = defaultdict(Fraction)
    for (a, b), v in G.items():
        for m, w in _poly_mul({(a - r, b - r, 0): v}, _poly_pow(h, D - a - b + 2 * r, one3)).items():
            H[m] += w
    terms = tuple(sorted((a, b, c, v) for (a, b, c), v in H.items() if v))
    if any(v < 0 for *_, v in terms):
        raise ArithmeticError(f"factored kernel for r={r} has a negative coefficient")
    return terms


def _factored_eval(r, lo, hi):
    s = lo
    t = 1.0 - hi
    if r == 1:
        return s * t
    u = hi - lo
    if r == 2:
        return (s * t) ** 2 * ((s * t) / 3.0 + 0.5 * u * (s + t + u))
    acc = np.zeros(np.broadcast(s, t).shape)
    for a, b, c, v in factored_form(r):
        acc = acc + float(v) * (s**a * t**b * u**c)
    return (s * t) ** r * acc


def k_zero(r: int, x, y):
    """Zero-boundary kernel: base kernel minus the boundary projection.

    Evaluated in the factored form (see the module notes).
    """
    r = _check_r(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return _factored_eval(r, np.minimum(x, y), np.maximum(x, y))


def k_zero_projection(r: int, x, y):
    """``k_zero`` evaluated literally as base kernel minus projection.

    Loses relative accuracy near the boundary; kept as a reference.
    """
    r = _check_r(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    C = _correction_matrix(r)
    xp = _powers(x, r, 2 * r)
    yp = _powers(y, r, 2 * r)
    corr = np.einsum("...j,jk,...k->...", xp, C, yp)
    return k_base(r, x, y) - corr


def k_zero_matrix(r: int, x, y):
    """Kernel matrix ``k_zero(r, x[i], y[j])`` for 1-d arrays ``x``, ``y``."""
    r = _check_r(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return _factored_eval(r, np.minimum.outer(x, y), np.maximum.outer(x, y))


def k_tensor(r, x, y):
    """Product kernel ``prod_l k_zero(r_l, x_l, y_l)``.

    ``x`` and ``y`` have trailing dimension ``d``; leading axes broadcast.
    """
    r = _as_smoothness(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != r.d or y.shape[-1] != r.d:
        raise ValueError(f"points must have trailing dimension {r.d}")
    out = 1.0
    for l, rl in enumerate(r):
        out = out * k_zero(rl, x[..., l], y[..., l])
    return out


def riesz_univariate(r: int, y):
    """``int_0^1 k_zero(r, x, y) dx = y^r (1 - y)^r / (2r)!``."""
    r = _check_r(r)
    y = np.asarray(y, dtype=float)
    return (y * (1.0 - y)) ** r / math.factorial(2 * r)


def riesz_projection(r: int, y):
    """Riesz representer from the integrated projection formula (reference)."""
    r = _check_r(r)
    y = np.asarray(y, dtype=float)
    n = 2 * r
    acc = np.zeros_like(y)
    for k in range(r, n + 1):
        acc = acc + math.comb(n, k) * (-y) ** k
    base = (-1) ** r / math.factorial(n) * acc
    return base - _powers(y, r, 2 * r) @ _riesz_correction(r)


def riesz_tensor(r, points):
    """Riesz representer of integration evaluated at rows of ``points``."""
    r = _as_smoothness(r)
    pts = np.asarray(points, dtype=float)
    out = np.ones(pts.shape[:-1])
    for l, rl in enumerate(r):
        out = out * riesz_univariate(rl, pts[..., l])
    return out


@lru_cache(maxsize=None)
def kernel_double_integral(r: int) -> Fraction:
    """Exact ``int_0^1 int_0^1 k_zero(r, x, y) dx dy``."""
    r = _check_r(r)
    f = math.factorial
    inv = gram_inverse(r).entries
    total = Fraction(1, f(r) ** 2 * (2 * r + 1))
    for j in range(r):
        for k in range(r):
            total -= inv[j][k] / (f(j + r + 1) * f(k + r + 1))
    return total


def initial_error(r) -> float:
    """Norm of the integration functional, ``prod_l sqrt(int int k_zero)``."""
    r = _as_smoothness(r)
    sq = Fraction(1)
    for rl in r:
        sq *= kernel_double_integral(rl)
    return math.sqrt(sq)


def norm_equivalence_constant(r) -> Fraction:
    """``sum_{e subset [d]} prod_{i in e} 1 / ([(r_i-1)!]^2 (2r_i-1) 2r_i)``, exactly."""
    r = _as_smoothness(r)
    out = Fraction(1)
    for rl in r:
        out *= 1 + Fraction(1, math.factorial(rl - 1) ** 2 * (2 * rl - 1) * 2 * rl)
    return out
