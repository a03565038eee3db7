"""Scalar special functions and Gaussian quadrature rules.

Everything downstream (basis evaluation, overlap coefficients, oracle
integrals) is built on these primitives. Normalization-sized quantities are
handled in log space via ln_gamma; polynomial values come from forward
three-term recurrences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import AccuracyError, DomainError, NumericError

__all__ = [
    "QuadratureRule",
    "ln_gamma",
    "gamma_sign_ln",
    "jacobi_p",
    "gen_laguerre",
    "gegenbauer",
    "hermite",
    "assoc_legendre",
    "hyp2f1_unit",
    "build_quadrature",
    "LAGUERRE_MAX_POINTS",
    "ANGULAR_POINTS",
    "RADIAL_POINTS",
]

# Default rule sizes: every integrand in scope is polynomial x weight with
# degree <= 4n + 20 at n <= 20, so these are exact with a wide margin.
ANGULAR_POINTS = 200
RADIAL_POINTS = 128

# Above ~180 points the smallest Gauss-Laguerre weights underflow to zero,
# breaking the all-positive invariant; refuse before that happens.
LAGUERRE_MAX_POINTS = 150

_QUAD_KINDS = ("legendre", "jacobi", "laguerre")


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return _kernels.ln_gamma_pos(float(x))


def gamma_sign_ln(x: float) -> tuple[float, float]:
    """(sign, ln|Gamma(x)|) for any real x; sign 0.0 at the poles."""
    return _kernels.gamma_sign_ln(float(x))


def _poly_eval(kernel, args, x):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = kernel(*args, np.ascontiguousarray(arr.ravel()))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out[0])
    return out.reshape(arr.shape)

def _check_degree(n: int) -> int:
    if n < 0 or n != int(n):
        raise DomainError(f"polynomial degree must be a nonnegative integer, got {n}")
    return int(n)


def jacobi_p(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_n^(alpha, beta)(x), alpha, beta > -1."""
    n = _check_degree(n)
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"jacobi_p requires alpha, beta > -1, got ({alpha}, {beta})")
    return _poly_eval(_kernels.jacobi_arr, (n, float(alpha), float(beta)), x)


def gen_laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x), alpha > -1."""
    n = _check_degree(n)
    if alpha <= -1.0:
        raise DomainError(f"gen_laguerre requires alpha > -1, got {alpha}")
    return _poly_eval(_kernels.laguerre_arr, (n, float(alpha)), x)


def gegenbauer(n: int, lam: float, x):
    """Gegenbauer polynomial C_n^lam(x), lam > -1/2 and lam != 0."""
    n = _check_degree(n)
    if lam <= -0.5 or lam == 0.0:
        raise DomainError(f"gegenbauer requires lam > -1/2, lam != 0, got {lam}")
    return _poly_eval(_kernels.gegenbauer_arr, (n, float(lam)), x)


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x)."""
    n = _check_degree(n)
    return _poly_eval(_kernels.hermite_arr, (n,), x)


def assoc_legendre(l: int, m: int, x):
    """Associated Legendre function on [-1, 1], 0 <= m <= l.

    Defined through the Gegenbauer connection
    P_l^m(x) = (-2)^m / sqrt(pi) * Gamma(m + 1/2) * (1-x^2)^(m/2) * C_{l-m}^{m+1/2}(x),
    which fixes the sign convention (P_1^1(0) = -1).
    """
    l = _check_degree(l)
    m = _check_degree(m)
    if m > l:
        raise DomainError(f"assoc_legendre requires m <= l, got l={l}, m={m}")
    xa = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(xa) > 1.0 + 1e-14):
        raise DomainError("assoc_legendre requires |x| <= 1")
    cval = gegenbauer(l - m, m + 0.5, x)
    if m == 0:
        return cval
    pref = (-2.0) ** m / math.sqrt(math.pi) * math.exp(ln_gamma(m + 0.5))
    s = np.clip(1.0 - np.square(xa), 0.0, None) ** (0.5 * m)
    out = pref * s * cval
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def hyp2f1_unit(a: float, b: float, c: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; 1).

    Terminating case when a or b is a nonpositive integer; otherwise the
    Gauss summation value Gamma(c)Gamma(c-a-b) / [Gamma(c-a)Gamma(c-b)],
    requiring c - a - b > 0. Reciprocal Gamma at a nonpositive integer is
    taken as zero, so the value vanishes when c - a or c - b is one.
    """
    a, b, c = float(a), float(b), float(c)

    def _nonpos_int(v: float) -> bool:
        return v <= 1e-9 and abs(v - round(v)) < 1e-9

    if _nonpos_int(a) or _nonpos_int(b):
        if _nonpos_int(b) and (not _nonpos_int(a) or round(b) > round(a)):
            a, b = b, a
        k_top = int(-round(a))
        total = 1.0
        term = 1.0
        for k in range(k_top):
            den = (c + k) * (k + 1.0)
            if den == 0.0:
                raise DomainError(f"hyp2f1_unit undefined: c hits a nonpositive integer, c={c}")
            term *= (a + k) * (b + k) / den
            total += term
        return total
    if c - a - b <= 0.0:
        raise DomainError(f"hyp2f1_unit diverges at unit argument for c-a-b={c - a - b}")
    sc, lc = gamma_sign_ln(c)
    if sc == 0.0:
        raise DomainError(f"hyp2f1_unit undefined: c is a nonpositive integer, c={c}")
    scab, lcab = gamma_sign_ln(c - a - b)
    sca, lca = gamma_sign_ln(c - a)
    scb, lcb = gamma_sign_ln(c - b)
    if sca == 0.0 or scb == 0.0:
        return 0.0
    return sc * scab * sca * scb * math.exp(lc + lcab - lca - lcb)


@dataclass(frozen=True)
class QuadratureRule:
    """Gaussian rule: sum(w_i f(x_i)) integrates f against the weight function.

    kind is one of 'legendre' (weight 1 on [-1,1]), 'jacobi' (weight
    (1-x)^alpha (1+x)^beta on [-1,1]) or 'laguerre' (weight x^alpha e^-x on
    [0, inf)). Nodes are strictly increasing; weights strictly positive; a
    rule of N points is exact through polynomial degree 2N - 1.
    """

    kind: str
    npoints: int
    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        """Contract sampled integrand values (at .nodes) with the weights."""
        return float(np.dot(self.weights, values))


def _monic_coeffs(kind: str, n: int, alpha: float, beta: float):
    """Monic three-term coefficients (a_k, b_k) with b_0 the weight integral."""
    k = np.arange(n, dtype=np.float64)
    if kind == "laguerre":
        a = 2.0 * k + alpha + 1.0
        b = k * (k + alpha)
        b[0] = math.exp(ln_gamma(alpha + 1.0))
        return a, b
    ab = alpha + beta
    with np.errstate(invalid="ignore", divide="ignore"):
        a = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
        b = (4.0 * k * (k + alpha) * (k + beta) * (k + ab)
             / ((2.0 * k + ab) ** 2 * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0)))
    a[0] = (beta - alpha) / (ab + 2.0)
    b[0] = math.exp((ab + 1.0) * math.log(2.0) + ln_gamma(alpha + 1.0)
                    + ln_gamma(beta + 1.0) - ln_gamma(ab + 2.0))
    if n > 1:
        b[1] = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
    return a, b


@lru_cache(maxsize=256)
def build_quadrature(kind: str, n: int, alpha: float = 0.0, beta: float = 0.0) -> QuadratureRule:
    """Golub-Welsch construction of an n-point Gaussian rule.

    Nodes are eigenvalues of the symmetrized recurrence (Jacobi) matrix;
    weights come from the reciprocal Christoffel sums, so no eigenvectors
    are needed. Rules are cached and immutable.
    """
    if kind not in _QUAD_KINDS:
        raise DomainError(f"unknown quadrature kind {kind!r}, expected one of {_QUAD_KINDS}")
    if n < 1 or n != int(n):
        raise DomainError(f"quadrature size must be a positive integer, got {n}")
    n = int(n)
    alpha = float(alpha)
    beta = float(beta)
    if kind == "legendre":
        if alpha != 0.0 or beta != 0.0:
            raise DomainError("legendre rule takes no exponents")
    elif kind == "laguerre":
        if alpha <= -1.0:
            raise DomainError(f"laguerre rule requires alpha > -1, got {alpha}")
        if beta != 0.0:
            raise DomainError("laguerre rule has a single exponent; beta must stay 0")
        if n > LAGUERRE_MAX_POINTS:
            raise AccuracyError(
                f"laguerre rules above {LAGUERRE_MAX_POINTS} points underflow "
                f"their smallest weights; requested {n}")
    else:
        if alpha <= -1.0 or beta <= -1.0:
            raise DomainError(f"jacobi rule requires alpha, beta > -1, got ({alpha}, {beta})")
    acoef, bcoef = _monic_coeffs("laguerre" if kind == "laguerre" else "jacobi",
                                 n, alpha, beta)
    d = acoef.copy()
    e = np.zeros(n)
    if n > 1:
        e[: n - 1] = np.sqrt(bcoef[1:])
    status = _kernels.tridiag_ql(d, e, np.zeros((1, 1)), False)
    if status != 0:
        raise NumericError(f"quadrature eigensolve failed to converge for {kind}, n={n}")
    order = np.argsort(d)
    nodes = np.ascontiguousarray(d[order])
    weights = _kernels.christoffel_weights(acoef, bcoef, nodes)
    if not np.all(weights > 0.0):
        raise AccuracyError(f"quadrature weights underflowed for {kind}, n={n}")
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(kind=kind, npoints=n, alpha=alpha, beta=beta,
                          nodes=nodes, weights=weights)
