"""Enumeration of Frolov lattice points in the unit cube.

The lattice ``A_n(Z^d)`` is intersected with the centered cube
``[-1/2, 1/2]^d``.  With ``A_n = QR`` the ball ``|A_n k|_2^2 <= d/4``, which
contains the cube, becomes ``sum_i (R k)_i^2 <= d/4``.  Because ``R`` is upper
triangular, ``(R k)_j`` depends only on ``k_j, ..., k_d``; fixing the trailing
coordinates turns the constraint on ``k_j`` into an interval.  Coordinates
are expanded from ``j = d`` down to ``j = 1`` level by level, vectorized over
all partial vectors of a level, and the surviving full vectors are tested for
cube membership.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import SingularMatrixError
from .lattice import ScaledBasis

__all__ = ["EnumerationResult", "qr_split", "enumerate_points"]

# Guard on the closed cube membership test.
CUBE_EPS = 1e-12
# Widening of each integer interval, in units of k.
RANGE_EPS = 1e-9
# Soft cap on partial vectors expanded at once.
CHUNK = 1 << 18


@dataclass(frozen=True)
class EnumerationResult:
    """Lattice points in ``[0, 1]^d``.

    Attributes
    ----------
    points : ndarray, shape (N, d)
        ``A_n k + 1/2`` for every admissible ``k``, clipped to ``[0, 1]``.
    indices : ndarray of int64, shape (N, d)
        The integer vectors ``k``, sorted lexicographically.
    visited : int
        Full integer vectors tested for cube membership.
    wall_time : float
        Seconds spent enumerating.
    """

    points: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    visited: int
    wall_time: float

    @property
    def N(self) -> int:
        return self.points.shape[0]


def qr_split(T):
    """QR decomposition with a positive diagonal in ``R``.

    Raises
    ------
    SingularMatrixError
        If ``T`` is singular.
    """
    T = np.asarray(T, dtype=float)
    Q, R = np.linalg.qr(T)
    diag = np.diag(R)
    if np.any(np.abs(diag) <= np.abs(R).max() * 1e-14) or not np.all(np.isfinite(R)):
        raise SingularMatrixError("matrix is singular")
    s = np.sign(diag)
    return Q * s, R * s[:, None]


def _expand(R, j, prefix, budget, partial):
    """Append every admissible ``k_j`` to each partial vector.

    ``prefix`` holds ``k_{j+1..d}`` (columns in coordinate order),
    ``partial[:, i]`` holds ``sum_{l>j} R[i, l] k_l`` for ``i <= j``.
    """
    r = R[j, j]
    center = -partial[:, j] / r
    half = np.sqrt(np.maximum(budget, 0.0)) / r
    lo = np.ceil(center - half - RANGE_EPS).astype(np.int64)
    hi = np.floor(center + half + RANGE_EPS).astype(np.int64)
    counts = np.maximum(hi - lo + 1, 0)
    parent = np.repeat(np.arange(len(lo)), counts)
    offsets = np.cumsum(counts) - counts
    k = lo[parent] + (np.arange(parent.size) - offsets[parent])
    kf = k.astype(float)
    g = (r * kf + partial[parent, j]) ** 2
    new_budget = budget[parent] - g
    new_partial = partial[parent, :j] + kf[:, None] * R[:j, j][None, :]
    new_prefix = np.column_stack([k, prefix[parent]])
    return new_prefix, new_budget, new_partial


def _chunks_for(budget, R, j):
    # estimate expansion sizes to split oversized levels
    r = R[j, j]
    width = 2.0 * np.sqrt(np.maximum(budget, 0.0)) / r + 1.0
    cum = np.cumsum(width)
    if cum[-1] <= CHUNK:
        return [slice(0, len(budget))]
    cuts = np.searchsorted(cum, np.arange(CHUNK, cum[-1], CHUNK))
    edges = np.unique(np.concatenate([[0], cuts, [len(budget)]]))
    return [slice(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def enumerate_points(basis: ScaledBasis) -> EnumerationResult:
    """All points of ``A_n(Z^d)`` in the closed centered cube, shifted to ``[0,1]^d``.

    The returned points are sorted by their integer coordinate vectors, so
    the output is deterministic.
    """
    t0 = time.perf_counter()
    A = np.asarray(basis.A_n, dtype=float)
    d = A.shape[0]
    _, R = qr_split(A)
    found = []
    visited = 0

    def recurse(j, prefix, budget, partial):
        nonlocal visited
        for sl in _chunks_for(budget, R, j):
            pre, bud, par = _expand(R, j, prefix[sl], budget[sl], partial[sl])
            if j > 0:
                keep = bud >= -RANGE_EPS
                if np.any(keep):
                    recurse(j - 1, pre[keep], bud[keep], par[keep])
            else:
                visited += pre.shape[0]
                X = pre @ A.T
                inside = np.all(np.abs(X) <= 0.5 + CUBE_EPS, axis=1)
                found.append(pre[inside])

    recurse(
        d - 1,
        np.zeros((1, 0), dtype=np.int64),
        np.array([d / 4.0]),
        np.zeros((1, d)),
    )
    K = np.concatenate(found) if found else np.zeros((0, d), dtype=np.int64)
    order = np.lexsort(K.T[::-1])
    K = K[order]
    pts = np.clip(K @ A.T + 0.5, 0.0, 1.0)
    return EnumerationResult(
        points=pts,
        indices=K,
        visited=int(visited),
        wall_time=time.perf_counter() - t0,
    )

