"""Perturbation series: closed-form low orders, truncation scaling, mixing."""

import math

import numpy as np
import pytest

from genosc.errors import DomainError
from genosc.model import (Branch, SystemParams, admissible_branches,
                          channel_constants, separation_constant_A)
from genosc.perturbation import (Regime, large_r_series, small_r_series,
                                 wavefunction_correction)
from genosc.spheroidal import Kind, build_tridiag_t, build_tridiag_u, eigensolve

BOTH = SystemParams(omega=1.0, p_strength=-0.16, q_strength=0.0, m=1)
STEEP = SystemParams(omega=2.0, p_strength=2.0, q_strength=1.5, m=2)
SETS = [BOTH, STEEP, SystemParams(1.0, 2.0, 3.0, 0)]


def cases(n_max):
    for params in SETS:
        for branch in admissible_branches(params):
            for n in range(n_max + 1):
                for k in range(n + 1):
                    yield params, branch, n, k


# closed-form coefficient radicals of the two separation systems
def big_a(n, q, c, sb):
    return math.sqrt(q * (n - q + 1) * (q + c + sb) * (q + sb) * (q + c)
                     * (n + q + c + sb + 1)
                     / ((2 * q + c + sb) ** 2 * (2 * q + c + sb - 1)
                        * (2 * q + c + sb + 1)))


def big_b(n, q, c, sb):
    return (0.5 * (2 * n + c + sb + 2)
            * (2 * q * (q + 1) + (c + sb) * (2 * q + sb + 1))
            / ((2 * q + c + sb) * (2 * q + c + sb + 2)))


def big_c(n, p, c, sb):
    return math.sqrt(p * (p + sb) * (n - p + 1) * (n + c - p + 1))


def big_d(n, p, c, sb):
    return ((p + 1) * (n - p) + (p + sb) * (n + c - p + 1)
            + 0.25 * (c - sb + 0.5) * (c - sb + 1.5))


# ------------------------------------------------------------ small R

def test_small_low_orders_match_closed_forms():
    for params, branch, n, k in cases(4):
        b, c, _ = channel_constants(params)
        sb = branch.sign * b
        gamma = c + sb
        ser = small_r_series(n, k, params, branch, order=2)
        assert ser.lambda_coeffs[0] == pytest.approx(big_b(n, k, c, sb), rel=1e-13)
        lam2 = 0.0
        if k > 0:
            lam2 += big_a(n, k, c, sb) ** 2 / (4 * (2 * k + gamma))
        if k < n:
            lam2 -= big_a(n, k + 1, c, sb) ** 2 / (4 * (2 * k + gamma + 2))
        assert ser.lambda_coeffs[1] == pytest.approx(lam2, rel=1e-12, abs=1e-14)
        first = ser.vector_coeffs[1]
        for q in range(n + 1):
            if q == k - 1:
                assert first[q] == pytest.approx(
                    -big_a(n, k, c, sb) / (4 * (2 * k + gamma)), rel=1e-13)
            elif q == k + 1:
                assert first[q] == pytest.approx(
                    big_a(n, k + 1, c, sb) / (4 * (2 * k + gamma + 2)), rel=1e-13)
            else:
                assert first[q] == 0.0


def test_small_scalar_level_is_exact():
    ser = small_r_series(0, 0, BOTH, Branch.Plus, order=6)
    assert ser.leading == pytest.approx(5.04, abs=1e-14)
    assert ser.lambda_coeffs[0] == pytest.approx(0.65, abs=1e-14)
    assert all(coeff == 0.0 for coeff in ser.lambda_coeffs[1:])
    for R in (0.05, 0.7, 3.0):
        assert ser.eigenvalue(R) == pytest.approx(5.04 + 0.65 * R * R, abs=1e-12)


def test_small_truncation_error_scales_as_third_power():
    for n, k in [(3, 0), (3, 1), (3, 3), (4, 2)]:
        ser = small_r_series(n, k, BOTH, Branch.Plus, order=2)
        errs = []
        for R in (0.05, 0.1):
            lam = eigensolve(build_tridiag_t(n, BOTH, Branch.Plus, R,
                                             Kind.Prolate)).lam[k]
            errs.append(abs(lam - ser.eigenvalue(R)))
        slope = math.log(errs[1] / errs[0]) / math.log(4.0)
        assert slope == pytest.approx(3.0, abs=0.2)


def test_small_high_order_matches_eigensolve():
    for params, n, k in [(BOTH, 3, 1), (BOTH, 4, 0), (STEEP, 3, 3)]:
        ser = small_r_series(n, k, params, Branch.Plus, order=6)
        sol = eigensolve(build_tridiag_t(n, params, Branch.Plus, 0.3,
                                         Kind.Prolate))
        assert ser.eigenvalue(0.3) == pytest.approx(sol.lam[k], abs=1e-12)
        exact = sol.vectors[:, k] / sol.vectors[k, k]
        np.testing.assert_allclose(ser.vector(0.3), exact, atol=1e-12)


# ------------------------------------------------------------ large R

def test_large_low_orders_match_closed_forms():
    for params, branch, n, k in cases(4):
        b, c, _ = channel_constants(params)
        sb = branch.sign * b
        ser = large_r_series(n, k, params, branch, order=2)
        assert ser.leading == pytest.approx(k + 0.5 * (sb + 1), rel=1e-13)
        assert ser.lambda_coeffs[0] == pytest.approx(4 * big_d(n, k, c, sb),
                                                     rel=1e-13)
        lam2 = 16 * (big_c(n, k, c, sb) ** 2 - big_c(n, k + 1, c, sb) ** 2)
        assert ser.lambda_coeffs[1] == pytest.approx(lam2, rel=1e-12, abs=1e-12)
        first = ser.vector_coeffs[1]
        if k > 0:
            assert first[k - 1] == pytest.approx(4 * big_c(n, k, c, sb),
                                                 rel=1e-13)
        if k < n:
            assert first[k + 1] == pytest.approx(-4 * big_c(n, k + 1, c, sb),
                                                 rel=1e-13)


def test_large_scalar_level_is_exact():
    ser = large_r_series(0, 0, BOTH, Branch.Plus, order=6)
    assert ser.leading == pytest.approx(0.65, abs=1e-14)
    assert ser.lambda_coeffs[0] == pytest.approx(5.04, abs=1e-13)
    assert all(coeff == 0.0 for coeff in ser.lambda_coeffs[1:])
    for R in (0.5, 2.0, 40.0):
        assert ser.eigenvalue(R) == pytest.approx(5.04 + 0.65 * R * R, abs=1e-12)


def test_large_truncation_error_scales_as_inverse_third_power():
    # measured on lambda/(omega R^2), the natural large-R object
    for n, k in [(3, 0), (3, 1), (4, 2)]:
        ser = large_r_series(n, k, BOTH, Branch.Plus, order=2)
        errs = []
        for R in (20.0, 40.0):
            x = BOTH.omega * R * R
            lam = eigensolve(build_tridiag_u(n, BOTH, Branch.Plus, R,
                                             Kind.Prolate)).lam[k]
            errs.append(abs(lam - ser.eigenvalue(R)) / x)
        slope = math.log(errs[1] / errs[0]) / math.log(4.0)
        assert slope == pytest.approx(-3.0, abs=0.3)


def test_large_high_order_matches_eigensolve():
    for params in (BOTH, STEEP):
        for n in range(5):
            for k in range(n + 1):
                ser = large_r_series(n, k, params, Branch.Plus, order=6)
                sol = eigensolve(build_tridiag_u(n, params, Branch.Plus, 30.0,
                                                 Kind.Prolate))
                assert ser.eigenvalue(30.0) == pytest.approx(sol.lam[k],
                                                             rel=1e-4)
    ser = large_r_series(3, 1, BOTH, Branch.Plus, order=6)
    sol = eigensolve(build_tridiag_u(3, BOTH, Branch.Plus, 20.0, Kind.Prolate))
    exact = sol.vectors[:, 1] / sol.vectors[1, 1]
    np.testing.assert_allclose(ser.vector(20.0), exact, atol=1e-8)


# ------------------------------------------------------- shared structure

def test_table_pinning_invariants():
    for maker in (small_r_series, large_r_series):
        ser = maker(3, 2, BOTH, Branch.Plus, order=4)
        ek = np.zeros(4)
        ek[2] = 1.0
        np.testing.assert_array_equal(ser.vector_coeffs[0], ek)
        assert np.all(ser.vector_coeffs[1:, 2] == 0.0)
        assert not ser.vector_coeffs.flags.writeable


def test_recursion_residual_order():
    ser = small_r_series(3, 1, BOTH, Branch.Plus, order=3)
    res = []
    for R in (0.05, 0.08):
        system = build_tridiag_t(3, BOTH, Branch.Plus, R, Kind.Prolate)
        vec = ser.vector(R)
        res.append(np.abs(system.dense() @ vec - ser.eigenvalue(R) * vec).max())
    slope = (math.log(res[1] / res[0])
             / math.log((0.08 / 0.05) ** 2))
    assert slope == pytest.approx(4.0, abs=0.4)
    ser = large_r_series(3, 1, BOTH, Branch.Plus, order=3)
    res = []
    for R in (25.0, 40.0):
        x = BOTH.omega * R * R
        system = build_tridiag_u(3, BOTH, Branch.Plus, R, Kind.Prolate)
        vec = ser.vector(R)
        res.append(np.abs(system.dense() @ vec
                          - ser.eigenvalue(R) * vec).max() / x)
    slope = math.log(res[1] / res[0]) / math.log((40.0 / 25.0) ** 2)
    assert slope == pytest.approx(-4.0, abs=0.4)


# --------------------------------------------------- first-order mixing

def test_correction_edge_channels_vanish():
    for regime in Regime:
        lo, center, hi = wavefunction_correction(3, 0, 1, BOTH, Branch.Plus,
                                                 0.5, regime)
        assert lo == 0.0 and center == 1.0
        lo, center, hi = wavefunction_correction(3, 3, 1, BOTH, Branch.Plus,
                                                 0.5, regime)
        assert hi == 0.0 and center == 1.0


def test_correction_closed_forms():
    b, c, _ = channel_constants(BOTH)
    sb = b
    gamma = c + sb
    R = 0.1
    x = BOTH.omega * R * R
    lo, _, hi = wavefunction_correction(3, 1, 1, BOTH, Branch.Plus, R,
                                        Regime.SmallR)
    assert lo == pytest.approx(-x * big_a(3, 1, c, sb) / (4 * (2 + gamma)),
                               rel=1e-13)
    assert hi == pytest.approx(x * big_a(3, 2, c, sb) / (4 * (4 + gamma)),
                               rel=1e-13)
    R = 30.0
    x = BOTH.omega * R * R
    lo, _, hi = wavefunction_correction(3, 1, 1, BOTH, Branch.Plus, R,
                                        Regime.LargeR)
    assert lo == pytest.approx(4 * big_c(3, 1, c, sb) / x, rel=1e-13)
    assert hi == pytest.approx(-4 * big_c(3, 2, c, sb) / x, rel=1e-13)


def test_correction_projection_against_eigenvector():
    for params, n, k in [(BOTH, 3, 1), (STEEP, 2, 1)]:
        R = 0.1
        x = params.omega * R * R
        sol = eigensolve(build_tridiag_t(n, params, Branch.Plus, R,
                                         Kind.Prolate))
        w = sol.vectors[:, k] / sol.vectors[k, k]
        lo, _, hi = wavefunction_correction(n, k, params.m, params,
                                            Branch.Plus, R, Regime.SmallR)
        assert abs(w[k - 1] - lo) <= 0.05 * x * x
        assert abs(w[k + 1] - hi) <= 0.05 * x * x
        R = 30.0
        x = params.omega * R * R
        sol = eigensolve(build_tridiag_u(n, params, Branch.Plus, R,
                                         Kind.Prolate))
        w = sol.vectors[:, k] / sol.vectors[k, k]
        lo, _, hi = wavefunction_correction(n, k, params.m, params,
                                            Branch.Plus, R, Regime.LargeR)
        assert abs(w[k - 1] - lo) <= 1e3 / (x * x)
        assert abs(w[k + 1] - hi) <= 1e3 / (x * x)


# ------------------------------------------------------------ validation

def test_argument_validation():
    with pytest.raises(DomainError):
        small_r_series(2, 3, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        small_r_series(-1, 0, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        large_r_series(2, 1, BOTH, Branch.Plus, order=0)
    with pytest.raises(DomainError):
        small_r_series(2, 1, STEEP, Branch.Minus)
    ser = small_r_series(1, 0, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        ser.eigenvalue(0.0)
    with pytest.raises(DomainError):
        wavefunction_correction(2, 1, 0, BOTH, Branch.Plus, 1.0, Regime.SmallR)
    with pytest.raises(DomainError):
        wavefunction_correction(2, 1, 1, BOTH, Branch.Plus, 1.0, "small")
