"""Spheroidal separation constants and eigencoefficients at a fixed level.

Inside one degenerate oscillator level the spheroidal separation operator
acts as a symmetric tridiagonal matrix on either the cylindrical or the
spherical expansion coefficients. Its eigenvalues lambda_k(R) interpolate
between the spherical constants A_k as R -> 0 and (R^2/2) E_z(k) as
R -> infinity; the eigenvectors are the expansion tables U (cylindrical)
and T (spherical) of the spheroidal states.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import tridiag_ql
from .bases import psi_cylindrical, psi_spherical
from .errors import DomainError, NumericError
from .interbasis import m_matrix_cyl, n_matrix_sph, w_matrix
from .model import (Branch, CylindricalLabel, SphericalLabel, SystemParams,
                    require_admissible, separation_constant_A)

_SIGN_PIVOT_TOL = 1e-12
_RESIDUAL_FACTOR = 1e-12


class Kind(enum.Enum):
    """Spheroidal coordinate family; oblate negates every R^2 term."""

    Prolate = "prolate"
    Oblate = "oblate"

    @property
    def sign(self) -> float:
        return 1.0 if self is Kind.Prolate else -1.0


class Route(enum.Enum):
    """Expansion basis used to synthesize a spheroidal wavefunction."""

    ViaSpherical = "spherical"
    ViaCylindrical = "cylindrical"


@dataclass(frozen=True)
class SpheroidalPoint:
    """Point (xi, eta, phi); the prolate sheet additionally needs xi >= 1."""

    xi: float
    eta: float
    phi: float

    def __post_init__(self) -> None:
        if not (self.xi >= 0.0) or not math.isfinite(self.xi):
            raise DomainError(f"need xi >= 0, got {self.xi}")
        if not (-1.0 <= self.eta <= 1.0):
            raise DomainError(f"need -1 <= eta <= 1, got {self.eta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise DomainError(f"need 0 <= phi < 2 pi, got {self.phi}")


@dataclass(frozen=True)
class TridiagonalSystem:
    """Separation operator restricted to one level, in one basis."""

    diag: np.ndarray
    offdiag: np.ndarray
    basis: str
    kind: Kind
    R: float

    @property
    def n(self) -> int:
        return len(self.diag) - 1

    def dense(self) -> np.ndarray:
        mat = np.diag(self.diag).copy()
        idx = np.arange(self.n)
        mat[idx, idx + 1] = self.offdiag
        mat[idx + 1, idx] = self.offdiag
        return mat


@dataclass(frozen=True)
class SpheroidalSolution:
    """Ascending eigenvalues with orthonormal, sign-fixed column vectors."""

    n: int
    basis: str
    kind: Kind
    R: float
    lam: np.ndarray
    vectors: np.ndarray


def _check_level_index(n: int, k: int) -> tuple[int, int]:
    for name, v in (("n", n), ("k", k)):
        if v != int(v) or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v}")
    n, k = int(n), int(k)
    if k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    return n, k


def _check_r(R: float) -> float:
    if not (R > 0.0) or not math.isfinite(R):
        raise DomainError(f"interfocus distance must be positive, got {R}")
    return float(R)


def build_tridiag_u(n: int, params: SystemParams, branch: Branch, R: float,
                    kind: Kind) -> TridiagonalSystem:
    """Cylindrical-side system 2 m_matrix_cyl + sign (R^2/2) diag(E_z(p))."""
    n, _ = _check_level_index(n, 0)
    b, _, _ = require_admissible(params, branch)
    R = _check_r(R)
    base = 2.0 * m_matrix_cyl(n, params, branch)
    p = np.arange(n + 1, dtype=float)
    e_z = params.omega * (2.0 * p + branch.sign * b + 1.0)
    diag = np.diag(base) + kind.sign * 0.5 * R * R * e_z
    offdiag = np.diag(base, 1).copy()
    diag.flags.writeable = False
    offdiag.flags.writeable = False
    return TridiagonalSystem(diag=diag, offdiag=offdiag, basis="cylindrical",
                             kind=kind, R=R)


def build_tridiag_t(n: int, params: SystemParams, branch: Branch, R: float,
                    kind: Kind) -> TridiagonalSystem:
    """Spherical-side system diag(A_q) + sign (R^2/2) n_matrix_sph."""
    n, _ = _check_level_index(n, 0)
    require_admissible(params, branch)
    R = _check_r(R)
    base = kind.sign * 0.5 * R * R * n_matrix_sph(n, params, branch)
    a_q = np.array([separation_constant_A(q, params, branch) for q in range(n + 1)])
    diag = a_q + np.diag(base)
    offdiag = np.diag(base, 1).copy()
    diag.flags.writeable = False
    offdiag.flags.writeable = False
    return TridiagonalSystem(diag=diag, offdiag=offdiag, basis="spherical",
                             kind=kind, R=R)


def eigensolve(system: TridiagonalSystem) -> SpheroidalSolution:
    """Eigenvalues and sign-fixed orthonormal eigenvectors of the system.

    Sign convention: component k of column k nonnegative, falling back to the
    largest-magnitude component when component k is numerically zero.
    """
    size = system.n + 1
    d = np.array(system.diag, dtype=float)
    e = np.zeros(size)
    if size > 1:
        e[: size - 1] = system.offdiag
    z = np.eye(size)
    status = tridiag_ql(d, e, z, True)
    if status != 0:
        raise NumericError(f"tridiagonal eigensolve failed to converge at n={system.n}")
    order = np.argsort(d)
    lam = np.ascontiguousarray(d[order])
    vec = np.ascontiguousarray(z[:, order])
    dense = system.dense()
    residual = np.abs(dense @ vec - vec * lam).max()
    scale = max(np.abs(system.diag).max(), np.abs(system.offdiag).max(initial=0.0), 1.0)
    if residual > _RESIDUAL_FACTOR * size * scale:
        raise NumericError(f"eigensolve residual {residual:.3e} above contract at n={system.n}")
    for k in range(size):
        pivot = vec[k, k]
        if abs(pivot) < _SIGN_PIVOT_TOL:
            pivot = vec[np.argmax(np.abs(vec[:, k])), k]
        if pivot < 0.0:
            vec[:, k] = -vec[:, k]
    lam.flags.writeable = False
    vec.flags.writeable = False
    return SpheroidalSolution(n=system.n, basis=system.basis, kind=system.kind,
                              R=system.R, lam=lam, vectors=vec)


def _pair_columns(n: int, k: int, params: SystemParams, branch: Branch, R: float,
                  kind: Kind) -> tuple[np.ndarray, np.ndarray]:
    """Column k of both eigensolutions with a single consistent global sign.

    The per-system sign rule pins component k of each column independently,
    which flips the two representations of the same state against each other
    whenever the diagonal entries of W are negative. The pair rule keeps the
    per-system sign on whichever column has the better-pinned component k
    (the selecting component stays sharp toward that column's limit end) and
    flips the other column when T != W^T U.
    """
    n, k = _check_level_index(n, k)
    u = eigensolve(build_tridiag_u(n, params, branch, R, kind)).vectors[:, k].copy()
    t = eigensolve(build_tridiag_t(n, params, branch, R, kind)).vectors[:, k].copy()
    ent = w_matrix(n, params, branch).entries
    if float(ent.T @ u @ t) < 0.0:
        if abs(t[k]) >= abs(u[k]):
            u = -u
        else:
            t = -t
    return u, t


def u_coefficients(n: int, k: int, params: SystemParams, branch: Branch, R: float,
                   kind: Kind) -> np.ndarray:
    """Column k of the cylindrical-side eigensolution: Psi_k = sum_p U^p Psi_cyl(p).

    Sign-locked to the spherical partner so that T^q = sum_p U^p W_np^q holds
    with matching global sign.
    """
    return _pair_columns(n, k, params, branch, R, kind)[0]


def t_coefficients(n: int, k: int, params: SystemParams, branch: Branch, R: float,
                   kind: Kind) -> np.ndarray:
    """Column k of the spherical-side eigensolution: Psi_k = sum_q T^q Psi_sph(q).

    Sign-locked to the cylindrical partner; see u_coefficients.
    """
    return _pair_columns(n, k, params, branch, R, kind)[1]


def lambda_curve(n: int, k: int, params: SystemParams, branch: Branch, kind: Kind,
                 R_grid) -> list[tuple[float, float]]:
    """Separation constant lambda_k sampled on an ascending positive R grid."""
    n, k = _check_level_index(n, k)
    grid = np.asarray(R_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("R grid must be a nonempty one-dimensional sequence")
    if not np.all(grid > 0.0) or not np.all(np.diff(grid) > 0.0):
        raise DomainError("R grid must be positive and strictly ascending")
    out = []
    for r_val in grid:
        sol = eigensolve(build_tridiag_t(n, params, branch, float(r_val), kind))
        out.append((float(r_val), float(sol.lam[k])))
    return out


def map_spheroidal_point(point: SpheroidalPoint, R: float, kind: Kind):
    """Cartesian, spherical and cylindrical images of a spheroidal point.

    Prolate: rho = (R/2) sqrt((xi^2-1)(1-eta^2)), z = (R/2) xi eta; the
    oblate sheet replaces xi^2-1 by xi^2+1 and admits xi >= 0.
    """
    R = _check_r(R)
    if kind is Kind.Prolate and point.xi < 1.0:
        raise DomainError(f"prolate sheet needs xi >= 1, got {point.xi}")
    radial2 = point.xi * point.xi - 1.0 if kind is Kind.Prolate \
        else point.xi * point.xi + 1.0
    rho = 0.5 * R * math.sqrt(radial2 * (1.0 - point.eta * point.eta))
    z = 0.5 * R * point.xi * point.eta
    x = rho * math.cos(point.phi)
    y = rho * math.sin(point.phi)
    r = math.hypot(rho, z)
    theta = math.atan2(rho, z)
    return (x, y, z), (r, theta, point.phi), (rho, point.phi, z)


def psi_spheroidal(n: int, k: int, m: int, params: SystemParams, branch: Branch,
                   R: float, kind: Kind, point: SpheroidalPoint,
                   route: Route) -> complex:
    """Spheroidal wavefunction synthesized through either expansion route.

    Evaluable on the z > 0 half-domain only, where the one-dimensional basis
    factors are defined.
    """
    n, k = _check_level_index(n, k)
    if m != params.m:
        raise DomainError(f"label m={m} differs from params m={params.m}")
    if not isinstance(route, Route):
        raise DomainError(f"unknown synthesis route {route!r}")
    _, sph_pt, cyl_pt = map_spheroidal_point(point, R, kind)
    if cyl_pt[2] <= 0.0:
        raise DomainError("synthesis point must map into the z > 0 half-domain")
    if route is Route.ViaSpherical:
        coeff = t_coefficients(n, k, params, branch, R, kind)
        return sum(coeff[q] * psi_spherical(
            SphericalLabel(n_r=n - q, q=q, m=m, branch=branch), params, sph_pt)
            for q in range(n + 1))
    coeff = u_coefficients(n, k, params, branch, R, kind)
    return sum(coeff[p] * psi_cylindrical(
        CylindricalLabel(n_rho=n - p, p=p, m=m, branch=branch), params, cyl_pt)
        for p in range(n + 1))
