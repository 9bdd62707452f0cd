"""Lattice representation matrices built from generating polynomials.

Columns of a representation matrix ``T`` generate the lattice ``T(Z^d)``.
Any ``T @ U`` with unimodular integer ``U`` generates the same lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .exceptions import SingularMatrixError
from .polynomials import MP_DPS, GeneratingPolynomial, discriminant

__all__ = [
    "LatticeBasis",
    "ScaledBasis",
    "vandermonde",
    "stable_representation",
    "lll_reduce",
    "scale_for_n",
    "admissibility_check",
]


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LatticeBasis:
    """A representation matrix of an admissible lattice and its invariants.

    ``B_P_upper`` is the largest entry modulus of the stored matrix.  It is
    only an upper bound for the minimum over all equivalent bases.
    """

    T: np.ndarray = field(repr=False)
    det_abs: float
    D_P: float
    B_P_upper: float
    source: GeneratingPolynomial = field(repr=False)

    @property
    def d(self) -> int:
        return self.T.shape[0]


@dataclass(frozen=True)
class ScaledBasis:
    """``A_n = (n |det T|)^(-1/d) T``, so that ``|det A_n| = 1/n``."""

    A_n: np.ndarray = field(repr=False)
    n: float
    parent: LatticeBasis = field(repr=False)

    @property
    def d(self) -> int:
        return self.A_n.shape[0]

    def dual(self) -> np.ndarray:
        """The dual scaled matrix ``B_n = A_n^{-T}``."""
        return np.linalg.inv(self.A_n).T


def _vandermonde_mp(p: GeneratingPolynomial):
    d = p.degree
    with mpmath.workdps(MP_DPS):
        return mpmath.matrix([[xi**k for k in range(d)] for xi in p.roots_mp])


def _mp_to_array(m):
    return np.array([[float(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def vandermonde(p: GeneratingPolynomial) -> np.ndarray:
    """Vandermonde matrix with rows ``(1, xi_i, ..., xi_i^(d-1))``.

    Powers are formed in extended precision and rounded once.
    """
    return _mp_to_array(_vandermonde_mp(p))


def _gram_schmidt(B):
    d = B.shape[1]
    Bs = np.zeros_like(B)
    mu = np.zeros((d, d))
    for i in range(d):
        v = B[:, i].copy()
        for j in range(i):
            mu[i, j] = B[:, i] @ Bs[:, j] / (Bs[:, j] @ Bs[:, j])
            v -= mu[i, j] * Bs[:, j]
        Bs[:, i] = v
    return Bs, mu, np.einsum("ij,ij->j", Bs, Bs)


def lll_reduce(basis, delta: float = 0.75, return_transform: bool = False):
    """LLL-reduce the columns of a real basis.

    Parameters
    ----------
    basis : array_like, shape (d, d)
        Columns are the lattice generators.
    delta : float
        Lovasz parameter in ``(1/4, 1)``.
    return_transform : bool
        Also return the unimodular integer matrix ``U`` with
        ``reduced = basis @ U``.

    Raises
    ------
    SingularMatrixError
        If ``basis`` is not invertible.
    """
    B0 = np.array(basis, dtype=float)
    if B0.ndim != 2 or B0.shape[0] != B0.shape[1]:
        raise ValueError("basis must be a square matrix")
    d = B0.shape[1]
    sv = np.linalg.svd(B0, compute_uv=False)
    if sv[-1] == 0 or sv[-1] < sv[0] * 1e-13:
        raise SingularMatrixError("basis is singular")
    U = np.eye(d, dtype=np.int64)
    B = B0.copy()
    k = 1
    Bs, mu, norms = _gram_schmidt(B)
    while k < d:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                B[:, k] -= q * B[:, j]
                U[:, k] -= q * U[:, j]
                mu[k, : j + 1] -= q * np.append(mu[j, :j], 1.0)
        if norms[k] >= (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[:, [k - 1, k]] = B[:, [k, k - 1]]
            U[:, [k - 1, k]] = U[:, [k, k - 1]]
            # recomputing from the accumulated transform limits drift
            B = B0 @ U
            Bs, mu, norms = _gram_schmidt(B)
            k = max(k - 1, 1)
    reduced = B0 @ U
    if return_transform:
        return reduced, U
    return reduced


def _make_basis(T, p):
    T = _readonly(T)
    return LatticeBasis(
        T=T,
        det_abs=float(abs(np.linalg.det(T))),
        D_P=discriminant(p),
        B_P_upper=float(np.abs(T).max()),
        source=p,
    )


def stable_representation(p: GeneratingPolynomial) -> LatticeBasis:
    """A well-conditioned representation matrix for the lattice of ``p``.

    If all roots lie in ``(-2, 2)``, write ``xi_k = 2 cos(pi w_k)`` and use
    ``T[k, 0] = 1``, ``T[k, l] = 2 cos(pi l w_k)``; every entry is in
    ``[-2, 2]``.  Otherwise the Vandermonde matrix is assembled in extended
    precision and LLL-reduced; the reduced basis is formed as ``V @ U`` in
    extended precision before rounding.
    """
    d = p.degree
    if all(abs(r) < 2 for r in p.roots_mp):
        with mpmath.workdps(MP_DPS):
            if p.root_formula is not None:
                omegas = [mpmath.mpf(a.numerator) / a.denominator for a in p.root_formula]
            else:
                omegas = [mpmath.acos(r / 2) / mpmath.pi for r in p.roots_mp]
            T = np.array(
                [
                    [1.0] + [float(2 * mpmath.cos(mpmath.pi * l * w)) for l in range(1, d)]
                    for w in omegas
                ]
            )
        return _make_basis(T, p)
    V_mp = _vandermonde_mp(p)
    _, U = lll_reduce(_mp_to_array(V_mp), return_transform=True)
    with mpmath.workdps(MP_DPS):
        U_mp = mpmath.matrix([[int(v) for v in row] for row in U])
        T = _mp_to_array(V_mp * U_mp)
    return _make_basis(T, p)


def scale_for_n(b: LatticeBasis, n: float) -> ScaledBasis:
    """Scale ``b`` so that the lattice has ``n`` points per unit volume.

    Raises
    ------
    ValueError
        If ``n <= 0``.
    """
    if not n > 0:
        raise ValueError(f"n must be positive, got {n}")
    A_n = (n * b.det_abs) ** (-1.0 / b.d) * b.T
    return ScaledBasis(A_n=_readonly(A_n), n=float(n), parent=b)


def admissibility_check(b, radius: int) -> float:
    """Minimum of ``|prod_i (T k)_i|`` over nonzero ``k`` with ``|k|_inf <= radius``.

    ``b`` may be a :class:`LatticeBasis` or a plain square matrix.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    T = b.T if isinstance(b, LatticeBasis) else np.asarray(b, dtype=float)
    d = T.shape[0]
    rng = np.arange(-radius, radius + 1)
    best = np.inf
    rest = np.array(list(itertools.product(rng, repeat=d - 1)), dtype=float)
    rest = rest.reshape(len(rest), d - 1)
    # chunk over the leading coordinate to bound memory
    for k0 in rng:
        K = np.hstack([np.full((rest.shape[0], 1), float(k0)), rest])
        if k0 == 0:
            K = K[np.any(K != 0, axis=1)]
        if K.size == 0:
            continue
        vals = np.abs(np.prod(K @ T.T, axis=1))
        best = min(best, float(vals.min()))
    return best
