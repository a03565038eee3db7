"""Physical parameters, quantum-number bookkeeping, energies, separation constants.

Scalar backbone shared by every other module. Units: hbar = mass = 1, so the
oscillator frequency omega carries all dimensions. The barrier constants feed
in only through b = sqrt(P + 1/4) and c = sqrt(Q + m^2); the axial channel
splits into a Plus/Minus branch pair (the sign in front of b), with Minus
admissible only while b <= 1/2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Branch",
    "SystemParams",
    "SphericalLabel",
    "CylindricalLabel",
    "RingLabel",
    "channel_constants",
    "admissible_branches",
    "require_admissible",
    "separation_constant_A",
    "energy_level",
    "energy_cylindrical_parts",
    "enumerate_level",
    "ring_relabel",
    "ring_separation_constant",
    "ring_energy",
]


class Branch(enum.Enum):
    """Sign choice in front of b for the axial (theta or z) channel."""

    Plus = 1
    Minus = -1

    @property
    def sign(self) -> int:
        return self.value


def _check_nonneg_int(value, name: str) -> int:
    if value != int(value) or value < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value}")
    return int(value)


@dataclass(frozen=True)
class SystemParams:
    """Potential parameters: (omega^2/2) r^2 + P/(2 z^2) + Q/(2 rho^2), plus m."""

    omega: float
    p_strength: float
    q_strength: float
    m: int

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not self.p_strength > -0.25:
            raise DomainError(f"p_strength must exceed -1/4, got {self.p_strength}")
        if self.q_strength < 0.0:
            raise DomainError(f"q_strength must be nonnegative, got {self.q_strength}")
        if self.m != int(self.m):
            raise DomainError(f"m must be an integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


def channel_constants(params: SystemParams) -> tuple[float, float, float]:
    """(b, c, delta) with b = sqrt(P + 1/4), c = sqrt(Q + m^2), delta = c - |m|."""
    b = (params.p_strength + 0.25) ** 0.5
    c = (params.q_strength + params.m * params.m) ** 0.5
    return b, c, c - abs(params.m)


def admissible_branches(params: SystemParams) -> tuple[Branch, ...]:
    """Plus always; Minus only while b <= 1/2 (i.e. P <= 0)."""
    b, _, _ = channel_constants(params)
    if b > 0.5:
        return (Branch.Plus,)
    return (Branch.Plus, Branch.Minus)


def require_admissible(params: SystemParams, branch: Branch) -> tuple[float, float, float]:
    """Validate the branch against b and hand back (b, c, delta)."""
    b, c, delta = channel_constants(params)
    if branch is Branch.Minus and b > 0.5:
        raise DomainError(
            f"Minus branch is inadmissible for b = {b} > 1/2 (p_strength = {params.p_strength})")
    return b, c, delta


@dataclass(frozen=True)
class SphericalLabel:
    """State (n_r, q, m, branch) in the spherical separation; level n = n_r + q."""

    n_r: int
    q: int
    m: int
    branch: Branch

    def __post_init__(self):
        _check_nonneg_int(self.n_r, "n_r")
        _check_nonneg_int(self.q, "q")

    @property
    def n(self) -> int:
        return self.n_r + self.q


@dataclass(frozen=True)
class CylindricalLabel:
    """State (n_rho, p, m, branch) in the cylindrical separation; n = n_rho + p."""

    n_rho: int
    p: int
    m: int
    branch: Branch

    def __post_init__(self):
        _check_nonneg_int(self.n_rho, "n_rho")
        _check_nonneg_int(self.p, "p")

    @property
    def n(self) -> int:
        return self.n_rho + self.p


@dataclass(frozen=True)
class RingLabel:
    """Ring-regime (b = 1/2) relabeling: principal N with either l or n3.

    A spherical state maps to (N, l); a cylindrical one to (N, n3). The field
    not determined by the source label stays None.
    """

    N: int
    m: int
    delta: float
    l: int | None = None
    n3: int | None = None

    def __post_init__(self):
        _check_nonneg_int(self.N, "N")
        if self.delta < 0.0:
            raise DomainError(f"delta must be nonnegative, got {self.delta}")
        if self.l is not None:
            _check_nonneg_int(self.l, "l")
            if self.l < abs(self.m) or self.l > self.N or (self.N - self.l) % 2:
                raise DomainError(
                    f"ring label needs |m| <= l <= N with N - l even, got N={self.N}, "
                    f"l={self.l}, m={self.m}")
        if self.n3 is not None:
            _check_nonneg_int(self.n3, "n3")
            if self.n3 > self.N - abs(self.m) or (self.N - abs(self.m) - self.n3) % 2:
                raise DomainError(
                    f"ring label needs 0 <= n3 <= N - |m| with N - |m| - n3 even, got "
                    f"N={self.N}, n3={self.n3}, m={self.m}")


def separation_constant_A(q: int, params: SystemParams, branch: Branch) -> float:
    """Angular separation constant A_q = (2q + c +- b + 1/2)(2q + c +- b + 3/2)."""
    q = _check_nonneg_int(q, "q")
    b, c, _ = require_admissible(params, branch)
    base = 2.0 * q + c + branch.sign * b
    return (base + 0.5) * (base + 1.5)


def energy_level(n: int, params: SystemParams, branch: Branch) -> float:
    """E_n = omega (2n + c +- b + 2); degenerate across all splits of n."""
    n = _check_nonneg_int(n, "n")
    b, c, _ = require_admissible(params, branch)
    return params.omega * (2.0 * n + c + branch.sign * b + 2.0)


def energy_cylindrical_parts(n_rho: int, p: int, params: SystemParams,
                             branch: Branch) -> tuple[float, float]:
    """(E_rho, E_z) = (omega (2 n_rho + c + 1), omega (2p +- b + 1))."""
    n_rho = _check_nonneg_int(n_rho, "n_rho")
    p = _check_nonneg_int(p, "p")
    b, c, _ = require_admissible(params, branch)
    e_rho = params.omega * (2.0 * n_rho + c + 1.0)
    e_z = params.omega * (2.0 * p + branch.sign * b + 1.0)
    return e_rho, e_z


def enumerate_level(n: int, params: SystemParams) -> list[tuple[SphericalLabel, CylindricalLabel]]:
    """All states at level n: (n+1) per admissible branch, paired by index.

    Pair k holds the spherical label with q = k and the cylindrical label
    with p = k; the pairing is positional bookkeeping, not a physical map.
    """
    n = _check_nonneg_int(n, "n")
    out = []
    for branch in admissible_branches(params):
        for k in range(n + 1):
            out.append((SphericalLabel(n_r=n - k, q=k, m=params.m, branch=branch),
                        CylindricalLabel(n_rho=n - k, p=k, m=params.m, branch=branch)))
    return out


def ring_relabel(label, params: SystemParams) -> RingLabel:
    """Map a spherical/cylindrical label to ring quantum numbers at b = 1/2.

    Spherical: l = |m| + 2q + 1 (Plus) or |m| + 2q (Minus), N = 2 n_r + l.
    Cylindrical: n3 = 2p + 1 (Plus) or 2p (Minus), N = |m| + 2 n_rho + n3.
    """
    b, _, delta = channel_constants(params)
    if b != 0.5:
        raise DomainError(f"ring relabeling requires b = 1/2 exactly (P = 0), got b = {b}")
    if label.m != params.m:
        raise DomainError(f"label m = {label.m} does not match params m = {params.m}")
    odd = 1 if label.branch is Branch.Plus else 0
    if isinstance(label, SphericalLabel):
        l = abs(label.m) + 2 * label.q + odd
        return RingLabel(N=2 * label.n_r + l, m=label.m, delta=delta, l=l)
    if isinstance(label, CylindricalLabel):
        n3 = 2 * label.p + odd
        return RingLabel(N=abs(label.m) + 2 * label.n_rho + n3, m=label.m, delta=delta, n3=n3)
    raise DomainError(f"cannot ring-relabel {type(label).__name__}")


def ring_separation_constant(l: int, delta: float) -> float:
    """A_l(delta) = (l + delta)(l + delta + 1); reduces to l(l+1) at delta = 0."""
    l = _check_nonneg_int(l, "l")
    return (l + delta) * (l + delta + 1.0)


def ring_energy(N: int, delta: float, omega: float) -> float:
    """E_N = omega (N + delta + 3/2); the isotropic-oscillator ladder at delta = 0."""
    N = _check_nonneg_int(N, "N")
    return omega * (N + delta + 1.5)
