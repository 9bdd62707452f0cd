"""Explicit upper bound on the worst-case error of Frolov cubature.

For a lattice with discriminant ``D_P`` and a basis bound ``B_P``, the
worst-case error in the zero-boundary mixed space of smoothness ``r`` obeys

    C(d, eta, r) * max(D_P, (2 B_P)^d / n)^(1/2) * (D_P / n)^r_min
        * (2 + log(n / D_P))^((eta - 1) / 2),

where ``eta`` counts the minimal smoothness components and ``log`` is the
natural logarithm.  Any valid ``B_P`` gives a valid bound, so the max-entry
bound of the stored lattice basis is substituted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernels import SmoothnessVector, norm_equivalence_constant
from .lattice import LatticeBasis

__all__ = ["BoundInputs", "bound_constant", "theoretical_bound", "m_bound"]


@dataclass(frozen=True)
class BoundInputs:
    """Ingredients of the bound.

    Parameters
    ----------
    n : float
        Scaling parameter (expected number of points).
    r : SmoothnessVector
    D_P, B_P : float
        Discriminant and basis bound of the lattice.
    """

    n: float
    r: SmoothnessVector
    D_P: float
    B_P: float

    def __post_init__(self):
        object.__setattr__(self, "r", SmoothnessVector(self.r))
        if not self.D_P > 0 or not self.B_P > 0:
            raise ValueError("D_P and B_P must be positive")

    @classmethod
    def from_basis(cls, basis: LatticeBasis, n, r) -> "BoundInputs":
        """Inputs from a stored lattice basis, using its ``B_P_upper``."""
        return cls(n=n, r=r, D_P=basis.D_P, B_P=basis.B_P_upper)

    @property
    def d(self) -> int:
        return self.r.d

    @property
    def eta(self) -> int:
        return self.r.eta

    @property
    def r_min(self) -> int:
        return self.r.r_min

    @property
    def r_next(self):
        return self.r.r_next


def bound_constant(d: int, r) -> float:
    """``C(d, eta, r)`` of the bound.

    Raises
    ------
    ValueError
        If ``r`` does not have ``d`` components.
    """
    r = SmoothnessVector(r)
    if r.d != d:
        raise ValueError(f"smoothness has {r.d} components, expected d={d}")
    eta, rmin = r.eta, r.r_min
    c = 2.0 ** (d + 1)
    if eta < d:
        c *= (1.0 - 2.0 ** (-2 * (r.r_next - rmin))) ** (-(d - eta) / 2)
    c *= (1.0 - 2.0 ** (1 - 2 * rmin)) ** (-eta / 2)
    return c * math.sqrt(norm_equivalence_constant(r))


def theoretical_bound(b: BoundInputs) -> float:
    """Evaluate the bound for ``b``.

    Raises
    ------
    ValueError
        If ``n <= 0``, or if ``eta > 1`` and ``n < D_P / e^2`` where the
        logarithmic factor is negative and the bound undefined.
    """
    if not b.n > 0:
        raise ValueError(f"n must be positive, got {b.n}")
    d, n = b.d, float(b.n)
    vol = max(b.D_P, (2.0 * b.B_P) ** d / n)
    log_term = 2.0 + math.log(n / b.D_P)
    if b.eta > 1 and log_term < 0:
        raise ValueError(f"n={n} is below D_P / e^2; the bound is undefined there")
    return (
        bound_constant(d, b.r)
        * math.sqrt(vol)
        * (b.D_P / n) ** b.r_min
        * log_term ** ((b.eta - 1) / 2)
    )


def m_bound(n, D_P, B_P, d) -> float:
    """Upper bound ``n D_P (1 + 2 B_P / (D_P n)^(1/d))^d + 1`` on the point count."""
    n, D_P, B_P = float(n), float(D_P), float(B_P)
    if n <= 0 or D_P <= 0 or B_P < 0 or d < 1:
        raise ValueError("need n > 0, D_P > 0, B_P >= 0 and d >= 1")
    return n * D_P * (1.0 + 2.0 * B_P / (D_P * n) ** (1.0 / d)) ** d + 1.0
