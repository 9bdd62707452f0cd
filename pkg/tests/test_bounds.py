import math

import numpy as np
import pytest

from frolov.bounds import BoundInputs, bound_constant, m_bound, theoretical_bound
from frolov.enumeration import enumerate_points
from frolov.lattice import scale_for_n
from frolov.rules import lattice_basis
from frolov.wce import fit_rate

import _support


def _inputs(d, n, r):
    return BoundInputs.from_basis(lattice_basis(d), n, r)


def test_constant_d1():
    assert bound_constant(1, [1]) == pytest.approx(4 * math.sqrt(3), rel=1e-15)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_constant_uniform_last_factor(r):
    for d in (1, 2, 4):
        last = (1 + 1 / (math.factorial(r - 1) ** 2 * (2 * r - 1) * 2 * r)) ** (d / 2)
        expect = 2 ** (d + 1) * (1 - 2.0 ** (1 - 2 * r)) ** (-d / 2) * last
        assert bound_constant(d, [r] * d) == pytest.approx(expect, rel=1e-14)


def test_constant_d2_r2_regression():
    # 8 * (7/8)^-1 * (13/12) = 208/21
    assert bound_constant(2, [2, 2]) == pytest.approx(208 / 21, rel=1e-14)


def test_constant_anisotropic():
    # r = (1, 2): eta = 1, r' = 2
    expect = 8 * (1 - 2.0**-2) ** -0.5 * (1 - 2.0**-1) ** -0.5 * math.sqrt(1.5 * 13 / 12)
    assert bound_constant(2, [1, 2]) == pytest.approx(expect, rel=1e-14)
    with pytest.raises(ValueError):
        bound_constant(3, [1, 2])


def test_inputs():
    b = _inputs(3, 100, [1, 2, 2])
    assert (b.d, b.eta, b.r_min, b.r_next) == (3, 1, 1, 2)
    with pytest.raises(ValueError):
        BoundInputs(10, [1], 0.0, 1.0)


def test_log_factor_vanishes_for_eta1():
    b1 = _inputs(2, 1e3, [1, 2])
    b2 = _inputs(2, 1e6, [1, 2])
    # without the log factor only the power law and the volume term remain
    ratio = theoretical_bound(b2) / theoretical_bound(b1)
    assert ratio == pytest.approx(1e-3, rel=1e-12)


def test_doubling_ratio_with_log():
    a = theoretical_bound(_inputs(2, 2**20, [1, 1]))
    b = theoretical_bound(_inputs(2, 2**21, [1, 1]))
    assert b / a == pytest.approx(0.5, rel=0.05)


def test_monotone_decreasing():
    basis = lattice_basis(3)
    start = (2 * basis.B_P_upper) ** 3 / basis.D_P
    ns = np.geomspace(start, start * 1e6, 60)
    vals = [theoretical_bound(BoundInputs.from_basis(basis, n, [2, 2, 2])) for n in ns]
    assert np.all(np.diff(vals) < 0)


def test_invalid_n():
    with pytest.raises(ValueError):
        theoretical_bound(_inputs(2, 0, [1, 1]))
    with pytest.raises(ValueError):
        theoretical_bound(_inputs(2, -5, [1, 1]))
    # the log factor is negative for eta > 1 and tiny n
    with pytest.raises(ValueError):
        theoretical_bound(_inputs(2, 0.01, [1, 1]))
    assert theoretical_bound(_inputs(2, 0.01, [1, 2])) > 0


@pytest.mark.parametrize("r", [(1, 1), (2, 2)])
def test_bound_dominates_measured_error(r):
    for n, _, rep in _support.sweep(2, r):
        assert theoretical_bound(_inputs(2, n, r)) >= rep.absolute_wce


def test_bound_slope_eta1():
    ns = [2**k for k in range(8, 17)]
    series = [(n, theoretical_bound(_inputs(2, n, [1, 2]))) for n in ns]
    assert fit_rate(series)[0] == pytest.approx(-1, abs=0.05)


def test_m_bound():
    assert m_bound(100, 3.0, 0.0, 2) == 301.0
    for d in (2, 3, 5):
        basis = lattice_basis(d)
        for n in (64, 1024, 4096):
            m = m_bound(n, basis.D_P, basis.B_P_upper, d)
            second = n * 2**d * max(basis.D_P, (2 * basis.B_P_upper) ** d / n) + 1
            assert m <= second * (1 + 1e-12)
    with pytest.raises(ValueError):
        m_bound(0, 1, 1, 2)


def test_m_bound_regression_d2():
    basis = lattice_basis(2)
    m = m_bound(1024, basis.D_P, basis.B_P_upper, 2)
    expect = 1024 * math.sqrt(5) * (1 + 2 * basis.B_P_upper / math.sqrt(math.sqrt(5) * 1024)) ** 2 + 1
    assert m == pytest.approx(expect, rel=1e-14)
    assert math.isfinite(m) and m > 0


def test_m_bound_counts_points_in_enlarged_box():
    # lattice points of A_n in [-L, 1 + L]^d with L = B_P (D_P n)^(-1/d)
    for d in (2, 3, 4):
        basis = lattice_basis(d)
        for n in (16, 256, 1024):
            s = scale_for_n(basis, n)
            L = basis.B_P_upper * (basis.D_P * n) ** (-1 / d)
            shrunk = type(s)(A_n=s.A_n / (1 + 2 * L), n=s.n, parent=basis)
            count = enumerate_points(shrunk).N
            assert count <= m_bound(n, basis.D_P, basis.B_P_upper, d)
            assert enumerate_points(s).N <= count
