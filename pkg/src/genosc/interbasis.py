"""Continued Clebsch-Gordan coefficients and the cylindrical/spherical bridge.

The expansion coefficients W connecting the two eigenbases of one degenerate
level are SU(2) Clebsch-Gordan coefficients continued to real arguments. The
continued Racah sum terminates because a+b-c stays a nonnegative integer for
every argument pattern generated here; 1/Gamma at nonpositive integers is
zero throughout. Also provides the tridiagonal matrix elements of the two
commuting operators (M in the cylindrical basis, N in the spherical one)
that the spheroidal module deforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import AccuracyError, DomainError
from .model import Branch, SystemParams, energy_cylindrical_parts, require_admissible
from .specfun import build_quadrature, jacobi_p, ln_gamma

__all__ = [
    "CgArgs",
    "CoefficientMatrix",
    "cg_continued",
    "w_coefficient",
    "w_matrix",
    "w_integral_oracle",
    "ring_w",
    "m_matrix_cyl",
    "n_matrix_sph",
]

_SELECTION_TOL = 1e-12


@dataclass(frozen=True)
class CgArgs:
    """Arguments (a b alpha beta | c gamma), possibly analytically continued.

    Every pattern produced by this package keeps a+b-c a nonnegative integer
    (sum termination); gamma must equal alpha+beta or the coefficient is zero
    by the projection selection rule.
    """

    a: float
    b: float
    alpha: float
    beta: float
    c: float
    gamma: float


def cg_continued(args: CgArgs) -> float:
    """Continued SU(2) Clebsch-Gordan coefficient via the terminating Racah sum.

    Reduces to the standard coefficient at (half-)integer arguments. Raises
    DomainError when the argument pattern does not terminate (non-integer
    a+b-c) or would need a square root of a negative Gamma value.
    """
    if abs(args.gamma - (args.alpha + args.beta)) > _SELECTION_TOL:
        return 0.0
    val, status = _kernels.cg_sum(float(args.a), float(args.b), float(args.alpha),
                                  float(args.beta), float(args.c))
    if status != 0:
        raise DomainError(
            f"continued CG sum does not terminate for arguments {args}")
    return val


def _check_level_indices(n: int, p: int, q: int) -> tuple[int, int, int]:
    for name, v in (("n", n), ("p", p), ("q", q)):
        if v != int(v) or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v}")
    n, p, q = int(n), int(p), int(q)
    if p > n or q > n:
        raise DomainError(f"indices must satisfy 0 <= p, q <= n, got n={n}, p={p}, q={q}")
    return n, p, q


def w_coefficient(n: int, p: int, q: int, params: SystemParams, branch: Branch) -> float:
    """Interbasis coefficient: Psi_cyl(n, p) = sum_q W_np^q Psi_sph(n, q).

    W_np^q = (-1)^(n-q) (a0 b0 alpha beta | c0 alpha+beta) with
    a0 = (n +- b)/2, b0 = (n + c)/2, c0 = q + (c +- b)/2,
    alpha = p - (n -+ b)/2, beta = (n + c)/2 - p. The 1x1 level gives +1.
    """
    n, p, q = _check_level_indices(n, p, q)
    b, c, _ = require_admissible(params, branch)
    sb = branch.sign * b
    a0 = 0.5 * (n + sb)
    b0 = 0.5 * (n + c)
    c0 = q + 0.5 * (c + sb)
    alpha = p - 0.5 * (n - sb)
    beta = 0.5 * (n + c) - p
    val = cg_continued(CgArgs(a=a0, b=b0, alpha=alpha, beta=beta,
                              c=c0, gamma=alpha + beta))
    return (-1.0) ** (n - q) * val


@dataclass(frozen=True)
class CoefficientMatrix:
    """Orthogonal change-of-basis table at one level.

    entries[p][q] applies as source_state(p) = sum_q entries[p][q] target_state(q);
    the inverse expansion is the transpose.
    """

    n: int
    branch: Branch
    orientation: str
    entries: np.ndarray

    def transposed(self) -> "CoefficientMatrix":
        flipped = ("spherical_to_cylindrical"
                   if self.orientation == "cylindrical_to_spherical"
                   else "cylindrical_to_spherical")
        return CoefficientMatrix(n=self.n, branch=self.branch, orientation=flipped,
                                 entries=self.entries.T.copy())


def w_matrix(n: int, params: SystemParams, branch: Branch) -> CoefficientMatrix:
    """All W_np^q at level n as a CoefficientMatrix (cylindrical to spherical)."""
    n, _, _ = _check_level_indices(n, 0, 0)
    ent = np.empty((n + 1, n + 1))
    for p in range(n + 1):
        for q in range(n + 1):
            ent[p, q] = w_coefficient(n, p, q, params, branch)
    ent.flags.writeable = False
    return CoefficientMatrix(n=n, branch=branch,
                             orientation="cylindrical_to_spherical", entries=ent)


def w_integral_oracle(n: int, p: int, q: int, params: SystemParams, branch: Branch,
                      rule_points: int | None = None) -> float:
    """Same coefficient from the overlap-integral route (Gauss-Jacobi).

    W_np^q = (-1)^(q-p) B_np^q E_np^q, with E the x = cos(2 theta) overlap
    2^-(n+c+-b+1) int (1-x)^(n-p+c) (1+x)^(p+-b) P_q^(c,+-b)(x) dx. The
    integrand splits as the rule's weight times a polynomial of degree n+q,
    so the quadrature value is exact up to roundoff.
    """
    n, p, q = _check_level_indices(n, p, q)
    b, c, _ = require_admissible(params, branch)
    sb = branch.sign * b
    needed = (n + q) // 2 + 1
    npts = n + 8 if rule_points is None else int(rule_points)
    if 2 * npts - 1 < n + q:
        raise AccuracyError(
            f"quadrature of {npts} points is not exact at degree {n + q}; "
            f"needs at least {needed}")
    ln_b2 = (math.log(2.0 * q + c + sb + 1.0)
             + ln_gamma(n - q + 1.0) + ln_gamma(q + 1.0)
             + ln_gamma(q + c + sb + 1.0) + ln_gamma(n + q + c + sb + 2.0)
             - ln_gamma(n - p + 1.0) - ln_gamma(p + 1.0)
             - ln_gamma(q + c + 1.0) - ln_gamma(q + sb + 1.0)
             - ln_gamma(n - p + c + 1.0) - ln_gamma(p + sb + 1.0))
    rule = build_quadrature("jacobi", npts, c, sb)
    x = rule.nodes
    poly = (1.0 - x) ** (n - p) * (1.0 + x) ** p * jacobi_p(q, c, sb, x)
    e_val = 2.0 ** (-(n + c + sb + 1.0)) * rule.integrate(poly)
    return (-1.0) ** (q - p) * math.exp(0.5 * ln_b2) * e_val


def ring_w(N: int, m: int, n3: int, l: int, delta: float) -> float:
    """Ring-regime (b = 1/2) coefficient W_{N m n3}^l(delta).

    Continued CG with a0 = (N+|m|)/4 + delta/2, b0 = (N-|m|-1)/4,
    c0 = (2l-1)/4 + delta/2, alpha = (N+|m|-2 n3)/4 + delta/2,
    beta = (2 n3 - N + |m| - 1)/4; no extra sign factor.
    """
    for name, v in (("N", N), ("n3", n3), ("l", l)):
        if v != int(v) or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v}")
    N, n3, l = int(N), int(n3), int(l)
    ma = abs(int(m))
    if delta < 0.0:
        raise DomainError(f"delta must be nonnegative, got {delta}")
    if l < ma or l > N or (N - l) % 2:
        raise DomainError(f"need |m| <= l <= N with N - l even, got N={N}, l={l}, m={m}")
    if n3 > N - ma or (N - ma - n3) % 2:
        raise DomainError(
            f"need 0 <= n3 <= N - |m| with N - |m| - n3 even, got N={N}, n3={n3}, m={m}")
    a0 = 0.25 * (N + ma) + 0.5 * delta
    b0 = 0.25 * (N - ma - 1.0)
    c0 = 0.25 * (2.0 * l - 1.0) + 0.5 * delta
    alpha = 0.25 * (N + ma - 2.0 * n3) + 0.5 * delta
    beta = 0.25 * (2.0 * n3 - N + ma - 1.0)
    return cg_continued(CgArgs(a=a0, b=b0, alpha=alpha, beta=beta,
                               c=c0, gamma=alpha + beta))


def m_matrix_cyl(n: int, params: SystemParams, branch: Branch) -> np.ndarray:
    """Matrix of the spherical constant's operator in the cylindrical basis.

    Symmetric tridiagonal over p = 0..n; twice this matrix is similar to
    diag(A_q) through the W matrix.
    """
    n, _, _ = _check_level_indices(n, 0, 0)
    b, c, _ = require_admissible(params, branch)
    sb = branch.sign * b
    mat = np.zeros((n + 1, n + 1))
    for p in range(n + 1):
        mat[p, p] = (0.5 * (c - sb + 0.5) * (c - sb + 1.5)
                     + 2.0 * (p + 1.0) * (n - p)
                     + 2.0 * (p + sb) * (n + c - p + 1.0))
        if p < n:
            off = 2.0 * math.sqrt((p + 1.0) * (p + 1.0 + sb) * (n - p) * (n + c - p))
            mat[p, p + 1] = off
            mat[p + 1, p] = off
    return mat


def n_matrix_sph(n: int, params: SystemParams, branch: Branch) -> np.ndarray:
    """Matrix of the cylindrical constant's operator in the spherical basis.

    Symmetric tridiagonal over q = 0..n with eigenvalues E_z(p); the q = 0
    diagonal uses the factored form because c + sb can vanish (c = b on the
    Minus branch).
    """
    n, _, _ = _check_level_indices(n, 0, 0)
    b, c, _ = require_admissible(params, branch)
    sb = branch.sign * b
    omega = params.omega
    e_n = omega * (2.0 * n + c + sb + 2.0)
    mat = np.zeros((n + 1, n + 1))
    mat[0, 0] = e_n * (sb + 1.0) / (c + sb + 2.0)
    for q in range(1, n + 1):
        base = 2.0 * q + c + sb
        mat[q, q] = (e_n * (2.0 * q * (q + 1.0) + (c + sb) * (2.0 * q + sb + 1.0))
                     / (base * (base + 2.0)))
        off = -2.0 * omega * math.sqrt(
            q * (n - q + 1.0) * (q + c + sb) * (q + sb) * (q + c)
            * (n + q + c + sb + 1.0)
            / (base * base * (base - 1.0) * (base + 1.0)))
        mat[q - 1, q] = off
        mat[q, q - 1] = off
    return mat
