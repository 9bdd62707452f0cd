import itertools
import math

import mpmath
import numpy as np
import pytest

from frolov.exceptions import CoefficientOverflowError, UnsupportedDimensionError
from frolov.polynomials import (
    IMPROVED_DIMENSIONS,
    GeneratingPolynomial,
    check_irreducible_mod2,
    discriminant,
    get_classical,
    get_improved,
    real_roots,
)

from _support import PUBLISHED_DISCRIMINANTS


@pytest.mark.parametrize("d", IMPROVED_DIMENSIONS)
def test_improved_roots_are_roots(d):
    p = get_improved(d)
    assert p.degree == d
    assert p.coefficients[-1] == 1
    assert np.all(p.residuals() < 1e-30)
    assert np.all(np.diff(p.roots) > 0)
    assert not p.roots.flags.writeable


@pytest.mark.parametrize("d", IMPROVED_DIMENSIONS)
def test_improved_discriminant_matches_table(d):
    assert discriminant(get_improved(d)) == pytest.approx(PUBLISHED_DISCRIMINANTS[d], rel=1e-2)


@pytest.mark.parametrize("d, exact", [(3, 7), (5, 121), (9, 130321)])
def test_integer_discriminants(d, exact):
    assert discriminant(get_improved(d)) == pytest.approx(exact, rel=1e-9)


def test_d2_discriminant_is_sqrt5():
    # roots of x^2 + x - 1 differ by sqrt(5)
    assert discriminant(get_improved(2)) == pytest.approx(math.sqrt(5), rel=1e-14)


@pytest.mark.parametrize("d", [p for p in IMPROVED_DIMENSIONS if p != 7])
def test_closed_form_roots(d):
    p = get_improved(d)
    assert p.root_formula is not None
    for root, a in zip(p.roots, p.root_formula):
        assert root == pytest.approx(2 * math.cos(math.pi * a), abs=1e-14)


def test_d7_roots_found_numerically():
    p = get_improved(7)
    assert p.root_formula is None
    np_roots = np.sort(np.roots(p.coefficients[::-1]).real)
    np.testing.assert_allclose(p.roots, np_roots, atol=1e-9)


@pytest.mark.parametrize("d", [0, 1, 11, -3])
def test_improved_rejects_unsupported(d):
    with pytest.raises(UnsupportedDimensionError):
        get_improved(d)


def test_classical_small():
    assert get_classical(1).coefficients == (-2, 1)
    p = get_classical(3)
    # (x-1)(x-3)(x-5) - 1
    assert p.coefficients == (-16, 23, -9, 1)
    assert np.all(p.residuals() < 1e-30)


@pytest.mark.parametrize("d", range(2, 11))
def test_classical_discriminant_larger(d):
    assert discriminant(get_classical(d)) > discriminant(get_improved(d))


def test_classical_overflow():
    get_classical(16)
    with pytest.raises(CoefficientOverflowError):
        get_classical(17)
    with pytest.raises(ValueError):
        get_classical(0)


def test_discriminant_equals_vandermonde_determinant():
    for d in range(2, 7):
        p = get_improved(d)
        with mpmath.workdps(50):
            V = mpmath.matrix([[r**k for k in range(d)] for r in p.roots_mp])
            det = abs(mpmath.det(V))
        assert discriminant(p) == pytest.approx(float(det), rel=1e-12)


def test_discriminant_brute_force_product():
    p = get_improved(4)
    prod = 1.0
    for a, b in itertools.combinations(p.roots, 2):
        prod *= abs(a - b)
    assert discriminant(p) == pytest.approx(prod, rel=1e-12)


@pytest.mark.parametrize("d", [p for p in IMPROVED_DIMENSIONS if p != 8])
def test_irreducible_mod2_catalog(d):
    assert check_irreducible_mod2(get_improved(d))


def test_irreducible_mod2_known_cases():
    assert check_irreducible_mod2((1, 1, 1))  # x^2 + x + 1
    assert not check_irreducible_mod2((1, 0, 1))  # (x + 1)^2
    assert not check_irreducible_mod2((0, 1, 1))  # x (x + 1)
    assert check_irreducible_mod2((1, 1))
    with pytest.raises(ValueError):
        check_irreducible_mod2((2, 4))


def test_from_coefficients_validation():
    with pytest.raises(ValueError):
        GeneratingPolynomial.from_coefficients((1, 2))  # not monic
    with pytest.raises(ValueError):
        GeneratingPolynomial.from_coefficients((1, 0, 1))  # no real roots
    p = GeneratingPolynomial.from_coefficients((-2, 0, 1))
    assert p.roots == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-15)
    assert p(3) == 7


def test_real_roots_precision():
    roots = real_roots((-2, 0, 1), dps=40)
    with mpmath.workdps(40):
        assert abs(roots[1] - mpmath.sqrt(2)) < mpmath.mpf(10) ** -38
