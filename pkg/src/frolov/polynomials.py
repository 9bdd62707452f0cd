"""Generating polynomials for admissible Frolov lattices.

Two families are provided:

* ``improved``: monic integer polynomials with small discriminants for
  ``d = 2..10``.  Except for ``d = 7`` they are irreducible factors of scaled
  Chebyshev polynomials of the second kind, so their roots have the closed
  form ``2 cos(pi * a)`` with rational ``a``.
* ``classical``: ``prod_{j=1}^d (x - 2j + 1) - 1``.

Coefficients are stored as exact Python integers in ascending order
(``coefficients[i]`` multiplies ``x**i``).  Roots are kept both as doubles and
as high-precision ``mpmath`` numbers; the latter feed the Vandermonde
assembly where powers of the roots amplify rounding errors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy.optimize import brentq

from .exceptions import CoefficientOverflowError, UnsupportedDimensionError

__all__ = [
    "GeneratingPolynomial",
    "get_improved",
    "get_classical",
    "discriminant",
    "check_irreducible_mod2",
    "real_roots",
    "IMPROVED_DIMENSIONS",
]

# Working precision (decimal digits) of the stored high-precision roots.
MP_DPS = 50

_INT64_MAX = 2**63 - 1


def _cos_args(d):
    return tuple(Fraction(2 * i, 2 * d + 1) for i in range(1, d + 1))


# d -> (name, coefficients from x^d down to x^0, cosine arguments or None)
_IMPROVED_TABLE = {
    2: ("E_{4,2}", (1, 1, -1), _cos_args(2)),
    3: ("E_{6,2}", (1, 1, -2, -1), _cos_args(3)),
    4: (
        "E_{14,2}",
        (1, -1, -4, 4, 1),
        tuple(Fraction(k, 15) for k in (2, 4, 8, 14)),
    ),
    5: ("E_{10,2}", (1, 1, -4, -3, 3, 1), _cos_args(5)),
    6: ("E_{12,2}", (1, 1, -5, -4, 6, 3, -1), _cos_args(6)),
    7: ("P_7", (1, 1, -6, -4, 10, 4, -4, -1), None),
    8: ("E_{16,2}", (1, 1, -7, -6, 15, 10, -10, -4, 1), _cos_args(8)),
    9: ("E_{18,2}", (1, 1, -8, -7, 21, 15, -20, -10, 5, 1), _cos_args(9)),
    10: (
        "E_{24,2}",
        (1, 0, -10, 0, 35, 1, -50, -5, 25, 5, -1),
        tuple(Fraction(k, 25) for k in (2, 4, 6, 8, 12, 14, 16, 18, 22, 24)),
    ),
}

IMPROVED_DIMENSIONS = tuple(sorted(_IMPROVED_TABLE))


@dataclass(frozen=True)
class GeneratingPolynomial:
    """A monic integer polynomial with ``d`` distinct real roots.

    Parameters
    ----------
    coefficients : tuple of int
        Ascending coefficients, ``coefficients[d] == 1``.
    roots : numpy.ndarray
        The ``d`` real roots sorted ascending (read-only copy).
    roots_mp : tuple of mpmath.mpf
        The same roots to ``MP_DPS`` decimal digits.
    family : {"improved", "classical", "custom"}
    name : str
    root_formula : tuple of Fraction or None
        Rational ``a_i`` with ``root_i = 2 cos(pi a_i)`` where a closed form
        is known.  Ordered like ``roots``.
    """

    coefficients: tuple
    roots: np.ndarray = field(repr=False)
    roots_mp: tuple = field(repr=False)
    family: str
    name: str
    root_formula: Optional[tuple] = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    d = degree

    def __call__(self, x):
        """Evaluate the polynomial (Horner) at ``x``."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def residuals(self):
        """``|P(root)|`` at each stored high-precision root, as floats."""
        with mpmath.workdps(MP_DPS):
            return np.array([float(abs(self(r))) for r in self.roots_mp])

    @classmethod
    def from_coefficients(cls, coefficients, name="custom", family="custom"):
        """Build a polynomial from ascending integer coefficients.

        Roots are located numerically; the polynomial must be monic with
        ``degree`` distinct real roots.
        """
        coeffs = tuple(int(c) for c in coefficients)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        roots_mp = real_roots(coeffs)
        return cls(
            coefficients=coeffs,
            roots=_frozen(np.array([float(r) for r in roots_mp])),
            roots_mp=roots_mp,
            family=family,
            name=name,
        )


def _frozen(arr):
    arr = np.asarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _horner_float(coeffs, x):
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def _root_bound(coeffs):
    """Fujiwara bound on the modulus of all roots of a monic polynomial."""
    d = len(coeffs) - 1
    terms = [abs(coeffs[d - i]) ** (1.0 / i) for i in range(1, d)]
    terms.append((abs(coeffs[0]) / 2.0) ** (1.0 / d))
    return 2.0 * max(terms + [1e-3])


def real_roots(coefficients: Sequence[int], dps: int = MP_DPS) -> tuple:
    """All real roots of a monic integer polynomial with simple real roots.

    Sign changes on a uniform grid bracket the roots, ``brentq`` narrows
    each bracket in double precision, and Newton steps in ``dps``-digit
    arithmetic polish the result.

    Returns
    -------
    tuple of mpmath.mpf
        Roots in ascending order.

    Raises
    ------
    ValueError
        If fewer than ``degree`` sign changes are found.
    """
    coeffs = [int(c) for c in coefficients]
    d = len(coeffs) - 1
    bound = _root_bound(coeffs) * 1.01 + 1e-9
    brackets = []
    for samples in (4096, 65536, 1048576):
        # np.linspace endpoints avoid exact roots at the bound in practice
        grid = np.linspace(-bound, bound, samples * d + 1)
        vals = _horner_float(coeffs, grid)
        sign = np.sign(vals)
        exact = np.flatnonzero(sign == 0)
        changes = np.flatnonzero(sign[:-1] * sign[1:] < 0)
        brackets = [(grid[i], grid[i]) for i in exact]
        brackets += [(grid[i], grid[i + 1]) for i in changes]
        if len(brackets) == d:
            break
    if len(brackets) != d:
        raise ValueError(
            f"found {len(brackets)} real roots, expected {d}; "
            "polynomial must have only simple real roots"
        )
    brackets.sort()

    def f(x):
        return float(_horner_float(coeffs, np.array(x)))

    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    out = []
    with mpmath.workdps(dps + 10):
        for lo, hi in brackets:
            x0 = lo if lo == hi else brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)
            x = mpmath.mpf(x0)
            for _ in range(60):
                px = mpmath.polyval(coeffs[::-1], x)
                dpx = mpmath.polyval(deriv[::-1], x)
                step = px / dpx
                x -= step
                if abs(step) <= abs(x) * mpmath.mpf(10) ** (-(dps + 5)) or step == 0:
                    break
            out.append(+x)
    with mpmath.workdps(dps):
        return tuple(+r for r in out)


def get_improved(d: int) -> GeneratingPolynomial:
    """Catalog polynomial with small discriminant for dimension ``d``.

    Roots with a closed form are generated as ``2 cos(pi a)`` from the
    exact rational ``a``; the ``d = 7`` roots are found numerically.

    Raises
    ------
    UnsupportedDimensionError
        If ``d`` is outside ``2..10``.
    """
    if d not in _IMPROVED_TABLE:
        raise UnsupportedDimensionError(
            f"no improved polynomial for d={d}; supported: 2..10"
        )
    name, desc, formula = _IMPROVED_TABLE[d]
    coeffs = tuple(reversed(desc))
    if formula is None:
        roots_mp = real_roots(coeffs)
    else:
        with mpmath.workdps(MP_DPS):
            pairs = sorted(
                ((2 * mpmath.cos(mpmath.pi * a.numerator / a.denominator), a)
                 for a in formula),
                key=lambda t: t[0],
            )
        roots_mp = tuple(p[0] for p in pairs)
        formula = tuple(p[1] for p in pairs)
    return GeneratingPolynomial(
        coefficients=coeffs,
        roots=_frozen([float(r) for r in roots_mp]),
        roots_mp=roots_mp,
        family="improved",
        name=name,
        root_formula=formula,
    )


def get_classical(d: int) -> GeneratingPolynomial:
    """The classical polynomial ``prod_{j=1}^d (x - 2j + 1) - 1``.

    Raises
    ------
    ValueError
        If ``d < 1``.
    CoefficientOverflowError
        If an expanded coefficient leaves the signed 64-bit range
        (first happens at ``d = 17``); root location in double precision
        is unreliable beyond that point.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    coeffs = [1]
    for j in range(1, d + 1):
        shift = -(2 * j - 1)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] += shift * c
        coeffs = nxt
    coeffs[0] -= 1
    if max(abs(c) for c in coeffs) > _INT64_MAX:
        raise CoefficientOverflowError(
            f"classical polynomial coefficients exceed int64 range at d={d}"
        )
    return GeneratingPolynomial.from_coefficients(
        coeffs, name=f"classical_{d}", family="classical"
    )


def discriminant(p: GeneratingPolynomial) -> float:
    """Product of pairwise root distances ``prod_{k<l} |xi_k - xi_l|``."""
    with mpmath.workdps(MP_DPS):
        acc = mpmath.mpf(1)
        for a, b in itertools.combinations(p.roots_mp, 2):
            acc *= abs(a - b)
        return float(acc)


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def check_irreducible_mod2(p) -> bool:
    """Test irreducibility of ``p`` reduced modulo 2 by trial division.

    ``True`` proves irreducibility over the rationals for a monic integer
    polynomial; ``False`` is inconclusive.

    Parameters
    ----------
    p : GeneratingPolynomial or sequence of int
        Ascending integer coefficients are accepted directly.
    """
    coeffs = p.coefficients if isinstance(p, GeneratingPolynomial) else tuple(p)
    bits = 0
    for i, c in enumerate(coeffs):
        if int(c) % 2:
            bits |= 1 << i
    deg = bits.bit_length() - 1
    if deg < 1:
        raise ValueError("polynomial of degree < 1 mod 2 has no factorization")
    # a reducible polynomial has a factor of degree <= deg // 2
    for divisor in range(2, 1 << (deg // 2 + 1)):
        if _gf2_mod(bits, divisor) == 0:
            return False
    return True
