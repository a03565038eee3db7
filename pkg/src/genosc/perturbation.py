"""Perturbation series for the spheroidal separation constant in omega R^2.

Both regimes reduce to the same order-by-order recursion: an unperturbed
diagonal plus a tridiagonal coupling read off the interbasis matrix tables.
Small R expands around the spherical constants A_k in powers of omega R^2,
large R around the half z-energies in inverse powers.  The eigenvector
tables keep component k pinned (T_kk^{(j)} = delta_{j0}), so the series
vector is not unit-normalized.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .interbasis import m_matrix_cyl, n_matrix_sph
from .model import (SystemParams, Branch, energy_cylindrical_parts,
                    require_admissible, separation_constant_A)

_RESONANCE_TOL = 1e-12


class Regime(enum.Enum):
    SmallR = "small"
    LargeR = "large"


@dataclass(frozen=True)
class SeriesExpansion:
    """Truncated expansion of one separation-constant branch lambda_k(R)."""

    regime: Regime
    n: int
    k: int
    order: int
    leading: float
    omega: float
    lambda_coeffs: tuple[float, ...]
    vector_coeffs: np.ndarray

    def eigenvalue(self, R: float) -> float:
        """Series value at interfocus half-distance parameter R."""
        x = _check_r(R) ** 2 * self.omega
        if self.regime is Regime.SmallR:
            tail = math.fsum(c * x ** (j + 1)
                             for j, c in enumerate(self.lambda_coeffs))
            return self.leading + tail
        tail = math.fsum(c * x ** (-j)
                         for j, c in enumerate(self.lambda_coeffs))
        return x * self.leading + tail

    def vector(self, R: float) -> np.ndarray:
        """Series eigenvector at R, normalized to component k = 1."""
        x = _check_r(R) ** 2 * self.omega
        sign = 1 if self.regime is Regime.SmallR else -1
        powers = np.array([x ** (sign * j) for j in range(self.order + 1)])
        return powers @ self.vector_coeffs


def _check_r(R: float) -> float:
    R = float(R)
    if not math.isfinite(R) or R <= 0.0:
        raise DomainError(f"R must be positive and finite, got {R!r}")
    return R


def _check_indices(n: int, k: int) -> tuple[int, int]:
    if n != int(n) or n < 0:
        raise DomainError(f"level n must be a nonnegative integer, got {n!r}")
    if k != int(k) or not 0 <= k <= n:
        raise DomainError(f"channel index k must lie in 0..{n}, got {k!r}")
    return int(n), int(k)


def _check_order(order: int) -> int:
    if order != int(order) or order < 1:
        raise DomainError(f"series order must be a positive integer, got {order!r}")
    return int(order)


def _recursion_tables(coupling: np.ndarray, denom, k: int,
                      order: int) -> tuple[tuple[float, ...], np.ndarray]:
    # component k stays pinned at every order, so lambda^{(j)} is just the
    # k-th component of coupling @ previous row
    size = coupling.shape[0]
    table = np.zeros((order + 1, size))
    table[0, k] = 1.0
    lams: list[float] = []
    for j in range(1, order + 1):
        w = [math.fsum(coupling[q, r] * table[j - 1, r] for r in range(size))
             for q in range(size)]
        lams.append(w[k])
        for q in range(size):
            if q == k:
                continue
            den = denom(q)
            if abs(den) < _RESONANCE_TOL:
                raise NumericError(
                    f"resonant denominator at order {j}, component {q}")
            shift = math.fsum(lams[j - t - 1] * table[t, q]
                              for t in range(1, j))
            table[j, q] = (w[q] - shift) / den
    table.flags.writeable = False
    return tuple(lams), table


def small_r_series(n: int, k: int, params: SystemParams, branch: Branch,
                   order: int = 6) -> SeriesExpansion:
    """Expand lambda_k(R) = A_k + sum_j lambda^{(j)} (omega R^2)^j."""
    n, k = _check_indices(n, k)
    order = _check_order(order)
    b, c, _ = require_admissible(params, branch)
    gamma = c + branch.sign * b
    coupling = n_matrix_sph(n, params, branch) / (2.0 * params.omega)
    lams, table = _recursion_tables(
        coupling, lambda q: 4.0 * (k - q) * (k + q + gamma + 1.0), k, order)
    return SeriesExpansion(Regime.SmallR, n, k, order,
                           separation_constant_A(k, params, branch),
                           params.omega, lams, table)


def large_r_series(n: int, k: int, params: SystemParams, branch: Branch,
                   order: int = 6) -> SeriesExpansion:
    """Expand lambda_k(R)/(omega R^2) = E_z(k)/(2 omega) + sum_j lambda^{(j)} (omega R^2)^{-j}."""
    n, k = _check_indices(n, k)
    order = _check_order(order)
    require_admissible(params, branch)
    coupling = 2.0 * m_matrix_cyl(n, params, branch)
    lams, table = _recursion_tables(
        coupling, lambda p: float(k - p), k, order)
    e_z = energy_cylindrical_parts(0, k, params, branch)[1]
    return SeriesExpansion(Regime.LargeR, n, k, order,
                           e_z / (2.0 * params.omega),
                           params.omega, lams, table)


def wavefunction_correction(n: int, k: int, m: int, params: SystemParams,
                            branch: Branch, R: float,
                            regime: Regime) -> tuple[float, float, float]:
    """First-order mixing amplitudes for the neighbour states.

    Returns coefficients (c_minus, c_center, c_plus) multiplying the exact
    R = 0 or R = infinity wavefunctions with channel indices k-1, k, k+1;
    c_center is exactly 1 in this normalization and the edge terms vanish
    at k = 0 and k = n.
    """
    if m != params.m:
        raise DomainError(f"m mismatch: label has {m}, system has {params.m}")
    if not isinstance(regime, Regime):
        raise DomainError(f"regime must be a Regime member, got {regime!r}")
    x = _check_r(R) ** 2 * params.omega
    if regime is Regime.SmallR:
        series = small_r_series(n, k, params, branch, order=1)
        scale = x
    else:
        series = large_r_series(n, k, params, branch, order=1)
        scale = 1.0 / x
    first = series.vector_coeffs[1]
    lo = scale * first[k - 1] if k > 0 else 0.0
    hi = scale * first[k + 1] if k < n else 0.0
    return lo, 1.0, hi
