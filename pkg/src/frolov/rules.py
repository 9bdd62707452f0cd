"""Comparison cubature rules: trimmed sparse grids, Fibonacci lattices and
point sets read from disk.

The sparse grid is the Smolyak sum ``sum_{|k|_1 <= L} Delta_k`` over the
trapezoidal rules ``Q_{2^k}`` with ``Delta_k = Q_{2^k} - Q_{2^(k-1)}`` and
``Delta_0 = Q_1``.  All of its nodes lie on the dyadic grid ``2^-L Z^d`` and
all of its weights are signed powers of two, so the expansion is carried out
in exact integer arithmetic: nodes are keyed by their grid indices and the
weights are accumulated as multiples of ``2^(-dL)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .enumeration import enumerate_points
from .lattice import LatticeBasis, scale_for_n, stable_representation
from .pointset import read_pointset
from .polynomials import get_classical, get_improved
from .wce import CubatureRule

__all__ = [
    "FAMILIES",
    "lattice_basis",
    "frolov_rule",
    "trapezoid_rule",
    "SparseGridSpec",
    "sparse_grid_rule",
    "sparse_grid_size",
    "fibonacci",
    "fibonacci_rule",
    "load_pointset",
]

# Exact aggregation keys grid indices and weights in int64.
_MAX_BITS = 62


FAMILIES = ("improved", "classical")


@lru_cache(maxsize=None)
def lattice_basis(d: int, family: str = "improved") -> LatticeBasis:
    """Stable lattice basis for the ``family`` polynomial of degree ``d`` (cached)."""
    if family == "improved":
        p = get_improved(d)
    elif family == "classical":
        p = get_classical(d)
    else:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return stable_representation(p)


def frolov_rule(d: int, n, family: str = "improved") -> CubatureRule:
    """Frolov rule ``(1/n) sum f(A_n k + 1/2)`` over lattice points in the cube.

    The weights are ``1/n`` rather than ``1/N``: the lattice has exactly
    ``n`` points per unit volume, and renormalizing by the realized count
    would destroy the higher-order cancellation for ``r >= 2``.
    """
    res = enumerate_points(scale_for_n(lattice_basis(d, family), n))
    return CubatureRule(res.points, np.full(res.N, 1.0 / n), family, float(n))


def trapezoid_rule(N: int) -> CubatureRule:
    """Equal-weight rule on ``j / N``, ``j = 0..N-1`` (periodic trapezoid).

    Raises
    ------
    ValueError
        If ``N < 1``.
    """
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    N = int(N)
    return CubatureRule(np.arange(N, dtype=float)[:, None] / N, np.full(N, 1.0 / N), "trapezoid", N)


@dataclass(frozen=True)
class SparseGridSpec:
    """Level ``L >= 0`` and dimension ``d >= 1`` of a Smolyak sparse grid."""

    L: int
    d: int

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 0:
            raise ValueError(f"level must be a nonnegative integer, got {self.L}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d}")


def _compositions(total_max, d):
    """All ``k`` in ``N_0^d`` with ``|k|_1 <= total_max``."""
    for k in itertools.product(range(total_max + 1), repeat=d):
        if sum(k) <= total_max:
            yield k


def sparse_grid_size(spec: SparseGridSpec) -> int:
    """Node count ``N_L = sum_{|k|_1 <= L} prod_j 2^max(k_j - 1, 0)``.

    This counts every node of the sparse grid, boundary nodes included.
    """
    return sum(
        int(np.prod([2 ** max(kj - 1, 0) for kj in k], dtype=object))
        for k in _compositions(spec.L, spec.d)
    )


def _delta_1d(k, L):
    """Interior nodes and integer weights of ``Delta_k`` on the ``2^L`` grid.

    Weights are in units of ``2^-L``.  Node ``0`` is omitted since it is
    trimmed anyway.  Every node ``j / 2^k`` carries ``+2^(L-k)`` for odd ``j``
    and ``-2^(L-k)`` for even ``j``; ``Delta_0`` has only the node ``0``.
    """
    if k == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    j = np.arange(1, 2**k, dtype=np.int64)
    step = 1 << (L - k)
    w = np.where(j % 2 == 1, step, -step).astype(np.int64)
    return j * step, w


def sparse_grid_rule(spec: SparseGridSpec) -> CubatureRule:
    """Smolyak sparse grid on trapezoidal rules with boundary trimming.

    Signed tensor-product weights are aggregated per node.  Nodes with a
    zero coordinate are dropped together with their weights, as are nodes
    whose aggregated weight cancels to exactly zero (they do not contribute
    to the rule).  ``n_param`` of the result is :func:`sparse_grid_size`.

    Raises
    ------
    ValueError
        If ``d * L`` exceeds the exact int64 aggregation range.
    """
    L, d = int(spec.L), int(spec.d)
    if d * L > _MAX_BITS:
        raise ValueError(f"d*L = {d * L} exceeds the exact aggregation range ({_MAX_BITS} bits)")
    size = sparse_grid_size(spec)
    keys, weights = [], []
    base = np.int64(1) << np.int64(L)
    for k in _compositions(L, d):
        if min(k) == 0:
            # every node of Delta_k then has a zero coordinate
            continue
        parts = [_delta_1d(kj, L) for kj in k]
        idx = np.zeros(1, dtype=np.int64)
        w = np.ones(1, dtype=np.int64)
        for nodes, wj in parts:
            idx = (idx[:, None] * base + nodes[None, :]).ravel()
            w = (w[:, None] * wj[None, :]).ravel()
        keys.append(idx)
        weights.append(w)
    if not keys:
        return CubatureRule(np.zeros((0, d)), np.zeros(0), "sparsegrid", size)
    keys = np.concatenate(keys)
    weights = np.concatenate(weights)
    uniq, inv = np.unique(keys, return_inverse=True)
    agg = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(agg, inv, weights)
    keep = agg != 0
    uniq, agg = uniq[keep], agg[keep]
    coords = np.empty((uniq.shape[0], d), dtype=np.int64)
    rest = uniq.copy()
    for l in range(d - 1, -1, -1):
        coords[:, l] = rest % base
        rest //= base
    points = coords.astype(float) / float(base)
    w = agg.astype(float) * 2.0 ** (-d * L)
    return CubatureRule(points, w, "sparsegrid", size)


def fibonacci(m: int) -> int:
    """``F_m`` with ``F_1 = F_2 = 1``."""
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def fibonacci_rule(m: int) -> CubatureRule:
    """Rank-1 lattice ``(j / F_m, {j F_(m-1) / F_m})``, ``j < F_m``, weights ``1/F_m``.

    Raises
    ------
    ValueError
        If ``m < 2``.
    """
    if int(m) != m or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m}")
    F, G = fibonacci(m), fibonacci(m - 1)
    j = np.arange(F, dtype=np.int64)
    pts = np.column_stack([j / F, (j * G % F) / F])
    return CubatureRule(pts, np.full(F, 1.0 / F), "fibonacci", F)


def load_pointset(path, weights=None) -> CubatureRule:
    """Read a point-set file into a rule.

    Parameters
    ----------
    path : path-like
    weights : array_like, optional
        Explicit weights.  By default a file with a positive scaling
        parameter ``n`` in its header gets weights ``1/n`` (the Frolov
        normalization) and any other file gets ``1/N``.

    Raises
    ------
    PointSetFormatError
        Malformed file, with the offending line number.
    PointSetValidationError
        A coordinate outside ``[0, 1]``.
    """
    ps = read_pointset(path)
    if weights is None:
        return CubatureRule.equal_weight(ps.points, ps.method, ps.n if ps.n > 0 else None)
    return CubatureRule(ps.points, weights, ps.method, ps.n if ps.n > 0 else None)
