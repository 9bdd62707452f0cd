"""Exact worst-case errors of weighted cubature rules.

For a rule ``Q(f) = sum_i w_i f(x_i)`` the squared worst-case error in the
reproducing kernel Hilbert space with kernel ``K`` is

    int int K  -  2 sum_i w_i int K(x_i, y) dy  +  sum_{i,j} w_i w_j K(x_i, x_j).

The three terms are of the size of the squared initial error, while their
combination can be many orders of magnitude smaller, so every sum is
accumulated with error-free (``math.fsum``) merging of blocked partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .kernels import (
    SmoothnessVector,
    initial_error,
    k_zero,
    k_zero_matrix,
    riesz_tensor,
)

__all__ = ["CubatureRule", "WceReport", "worst_case_error", "fit_rate"]

# Target number of kernel entries per block of the Gram sum.
BLOCK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class CubatureRule:
    """Nodes in ``[0, 1]^d`` with real weights.

    Parameters
    ----------
    points : array_like, shape (N, d)
    weights : array_like, shape (N,)
    method : str
        Free-form label used in reports.
    n_param : float, optional
        Scaling parameter the rule was generated with, if any.
    """

    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    method: str = "custom"
    n_param: Optional[float] = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-d array of shape (N, d)")
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.shape[0] != pts.shape[0]:
            raise ValueError(f"{pts.shape[0]} points but {w.shape[0]} weights")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if pts.size and (not np.all(np.isfinite(pts)) or pts.min() < 0.0 or pts.max() > 1.0):
            raise ValueError("points must lie in [0, 1]^d")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def equal_weight(cls, points, method="custom", n_param=None):
        """Rule with weights ``1/N`` (or ``1/n_param`` when given)."""
        pts = np.asarray(points, dtype=float)
        N = pts.shape[0]
        denom = n_param if n_param else max(N, 1)
        return cls(pts, np.full(N, 1.0 / denom), method, n_param)

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def N(self) -> int:
        return self.points.shape[0]

    def __call__(self, f):
        """Apply the rule to a vectorized integrand ``f(points) -> (N,)``."""
        if self.N == 0:
            return 0.0
        return math.fsum(self.weights * np.asarray(f(self.points), dtype=float))


@dataclass(frozen=True)
class WceReport:
    """Worst-case error with the three summands kept for diagnostics.

    ``clamped`` is set when rounding drove the squared error below zero; the
    reported error is then 0 and only says the precision floor was reached.
    """

    absolute_wce: float
    normalized_wce: float
    term_const: float
    term_cross: float
    term_gram: float
    clamped: bool
    initial_error: float


def _gram_term(points, weights, r: SmoothnessVector, precise: bool) -> float:
    """``sum_{i,j} w_i w_j K(x_i, x_j)`` using symmetry of the kernel."""
    N = points.shape[0]
    if N == 0:
        return 0.0
    rows = max(1, min(N, BLOCK_ENTRIES // max(N, 1)))
    diag = np.ones(N)
    for l, rl in enumerate(r):
        x = points[:, l]
        diag *= k_zero(rl, x, x)
    parts = [math.fsum(weights * weights * diag)]
    off = []
    for a in range(0, N, rows):
        b = min(N, a + rows)
        block = np.ones((b - a, N - a))
        for l, rl in enumerate(r):
            x = points[:, l]
            block *= k_zero_matrix(rl, x[a:b], x[a:])
        # keep strictly upper entries of the square head
        block[:, : b - a] = np.triu(block[:, : b - a], 1)
        if precise:
            vals = (weights[a:b, None] * block) * weights[None, a:]
            off.append(math.fsum(vals.ravel()))
        else:
            off.append(math.fsum(weights[a:b] * (block @ weights[a:])))
    parts.append(2.0 * math.fsum(off))
    return math.fsum(parts)


def worst_case_error(rule: CubatureRule, r, precise: bool = False) -> WceReport:
    """Exact worst-case error of ``rule`` for smoothness ``r``.

    Parameters
    ----------
    rule : CubatureRule
    r : SmoothnessVector or sequence of int
        Must have one component per dimension of the rule.
    precise : bool
        Accumulate every Gram entry with ``math.fsum`` instead of per-row
        dot products.  Slower; for very large rules near the precision floor.
    """
    r = r if isinstance(r, SmoothnessVector) else SmoothnessVector(r)
    if rule.N and rule.d != r.d:
        raise ValueError(f"rule has dimension {rule.d}, smoothness has {r.d}")
    init = initial_error(r)
    const = init * init
    if rule.N:
        cross = math.fsum(rule.weights * riesz_tensor(r, rule.points))
        gram = _gram_term(rule.points, rule.weights, r, precise)
    else:
        cross = gram = 0.0
    sq = math.fsum([const, -2.0 * cross, gram])
    clamped = sq < 0.0
    absolute = math.sqrt(max(sq, 0.0))
    return WceReport(
        absolute_wce=absolute,
        normalized_wce=absolute / init,
        term_const=const,
        term_cross=cross,
        term_gram=gram,
        clamped=clamped,
        initial_error=init,
    )


def fit_rate(series: Sequence) -> tuple:
    """Least-squares line through ``(log N, log wce)``.

    Returns
    -------
    (slope, intercept)
        The slope estimates the empirical convergence order (negative).

    Raises
    ------
    ValueError
        For fewer than three pairs or non-positive entries.
    """
    data = np.asarray(list(series), dtype=float)
    if data.ndim != 2 or data.shape[0] < 3 or data.shape[1] != 2:
        raise ValueError("need at least three (N, wce) pairs")
    N, e = data[:, 0], data[:, 1]
    if np.any(N < 1) or np.any(e <= 0):
        raise ValueError("N must be >= 1 and wce must be positive")
    slope, intercept = np.polyfit(np.log(N), np.log(e), 1)
    return float(slope), float(intercept)
