"""Command-line surface: every computation as a reproducible, scriptable run.

Output is a header block (the fully resolved configuration) followed by named
data sections.  Data sections are pure functions of the configuration, carry
no timestamps, and therefore come out byte-identical across runs.  CSV cells
use 17-significant-digit decimals so every float round-trips exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from io import StringIO

import numpy as np

from .errors import DomainError, NumericError
from .interbasis import ring_w, w_matrix
from .model import (Branch, CylindricalLabel, SphericalLabel, SystemParams,
                    energy_cylindrical_parts, energy_level, require_admissible,
                    ring_relabel, separation_constant_A)
from .morse import (MorseParams, morse_spectrum, morse_wavefunction,
                    quadrature_norm)
from .oracles import SUITE_MANIFEST, run_verification_suite
from .perturbation import large_r_series, small_r_series
from .spheroidal import (Kind, build_tridiag_t, eigensolve, t_coefficients,
                         u_coefficients)

__all__ = ["JobConfig", "main", "entry"]

_BRANCHES = {"plus": Branch.Plus, "minus": Branch.Minus}
_KINDS = {"prolate": Kind.Prolate, "oblate": Kind.Oblate}

# fixed probe radii for the perturbation comparison: two per regime so an
# empirical convergence order can be reported
_SMALL_PROBES = (0.05, 0.1)
_LARGE_PROBES = (20.0, 40.0)

_MORSE_GRID_POINTS = 101


@dataclass(frozen=True)
class Section:
    """One named data block: column names plus homogeneous rows."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class JobConfig:
    """Fully resolved run description; echoed verbatim into the output header."""

    command: str
    params: SystemParams | None
    branch: Branch
    morse: MorseParams | None
    n: int
    k: int
    order: int
    R: float
    r_grid: tuple[float, float, int] | None
    kind: Kind
    fmt: str
    out: str | None
    tolerance_profile: str

    def echo(self) -> dict:
        cfg = {"command": self.command, "format": self.fmt,
               "out": self.out, "branch": self.branch.name.lower()}
        if self.params is not None:
            cfg.update(omega=self.params.omega, P=self.params.p_strength,
                       Q=self.params.q_strength, m=self.params.m)
        if self.morse is not None:
            cfg.update(V0=self.morse.v0, a=self.morse.a)
        if self.command in ("spectrum", "interbasis", "spheroidal", "perturb"):
            cfg["n"] = self.n
        if self.command in ("spheroidal", "perturb"):
            cfg["k"] = self.k
        if self.command == "spheroidal":
            cfg.update(kind=self.kind.name.lower(), R=self.R,
                       R_grid=":".join(f"{v:g}" for v in self.r_grid))
        if self.command == "perturb":
            cfg["order"] = self.order
        if self.command == "verify":
            cfg["tolerance_profile"] = self.tolerance_profile
        return cfg


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"R-grid must be start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"R-grid must be start:stop:count, got {text!r}") from exc
    if not (0.0 < start < stop) or count < 2:
        raise DomainError(f"R-grid needs 0 < start < stop and count >= 2, got {text!r}")
    return start, stop, count


def _grid_values(grid: tuple[float, float, int]) -> np.ndarray:
    return np.linspace(grid[0], grid[1], grid[2])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genosc",
        description="Generalized 3D oscillator: spectra, interbasis expansions, "
                    "spheroidal separation constants, Morse mapping.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    def add_system(p):
        p.add_argument("--omega", type=float, default=1.0)
        p.add_argument("--P", type=float, default=0.0)
        p.add_argument("--Q", type=float, default=0.0)
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--branch", choices=("plus", "minus"), default="plus")

    p = sub.add_parser("spectrum", help="energy levels and separation constants")
    add_system(p)
    p.add_argument("--n", type=int, default=3, help="largest level to list")
    add_output(p)

    p = sub.add_parser("interbasis", help="cylindrical-to-spherical W matrix")
    add_system(p)
    p.add_argument("--n", type=int, default=2, help="level of the matrix")
    add_output(p)

    p = sub.add_parser("spheroidal", help="lambda curves and U/T coefficients")
    add_system(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--kind", choices=("prolate", "oblate"), default="prolate")
    p.add_argument("--R", type=float, default=1.0,
                   help="interfocus distance for the coefficient columns")
    p.add_argument("--R-grid", default="0.2:2.0:10", dest="r_grid",
                   help="start:stop:count grid for the lambda curves")
    add_output(p)

    p = sub.add_parser("perturb", help="series vs exact separation constants")
    add_system(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--order", type=int, default=2, help="truncation order J")
    add_output(p)

    p = sub.add_parser("morse", help="Morse levels, wavefunctions, norms")
    p.add_argument("--V0", type=float, default=2.0, dest="v0")
    p.add_argument("--a", type=float, default=1.0)
    add_output(p)

    p = sub.add_parser("verify", help="run the oracle suite")
    p.add_argument("--tolerance-profile", choices=("default", "strict"),
                   default="default", dest="tolerance_profile")
    add_output(p)
    return parser


def resolve_config(args: argparse.Namespace) -> JobConfig:
    """Validate the parsed flags into a JobConfig before any computation."""
    branch = _BRANCHES[getattr(args, "branch", "plus")]
    params = None
    if hasattr(args, "omega"):
        params = SystemParams(omega=args.omega, p_strength=args.P,
                              q_strength=args.Q, m=args.m)
        require_admissible(params, branch)
    morse = MorseParams(v0=args.v0, a=args.a) if hasattr(args, "v0") else None
    n = getattr(args, "n", 0)
    k = getattr(args, "k", 0)
    order = getattr(args, "order", 2)
    if n != int(n) or n < 0:
        raise DomainError(f"level must be a nonnegative integer, got {n}")
    if k != int(k) or not 0 <= k <= n:
        raise DomainError(f"index k must lie in 0..{n}, got {k}")
    if order < 1:
        raise DomainError(f"series order must be >= 1, got {order}")
    R = getattr(args, "R", 1.0)
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"R must be positive and finite, got {R}")
    grid = _parse_grid(args.r_grid) if hasattr(args, "r_grid") else None
    return JobConfig(command=args.command, params=params, branch=branch,
                     morse=morse, n=int(n), k=int(k), order=int(order),
                     R=float(R), r_grid=grid,
                     kind=_KINDS[getattr(args, "kind", "prolate")],
                     fmt=args.format, out=args.out,
                     tolerance_profile=getattr(args, "tolerance_profile", "default"))


# ------------------------------------------------------------------ commands

def cmd_spectrum(cfg: JobConfig) -> tuple[list[Section], int]:
    levels = [(n, energy_level(n, cfg.params, cfg.branch)) for n in range(cfg.n + 1)]
    states = []
    for n in range(cfg.n + 1):
        for idx in range(n + 1):
            e_rho, e_z = energy_cylindrical_parts(n - idx, idx, cfg.params, cfg.branch)
            states.append((n, idx, separation_constant_A(idx, cfg.params, cfg.branch),
                           e_rho, e_z))
    return [Section("levels", ("n", "energy"), tuple(levels)),
            Section("states", ("n", "idx", "A_q", "E_rho", "E_z"), tuple(states))], 0


def cmd_interbasis(cfg: JobConfig) -> tuple[list[Section], int]:
    n = cfg.n
    table = w_matrix(n, cfg.params, cfg.branch).entries
    residual = np.abs(table @ table.T - np.eye(n + 1))
    cols = ("p", *(f"W_q{q}" for q in range(n + 1)), "ortho_dev")
    rows = tuple((p, *table[p], float(residual[p].max())) for p in range(n + 1))
    sections = [Section("w_matrix", cols, rows)]
    if cfg.params.p_strength == 0.0:
        # b = 1/2 exactly: the delta-relabeled ring coefficients must agree
        rows = []
        for p in range(n + 1):
            cyl = ring_relabel(CylindricalLabel(n - p, p, cfg.params.m, cfg.branch),
                               cfg.params)
            for q in range(n + 1):
                sph = ring_relabel(SphericalLabel(n - q, q, cfg.params.m, cfg.branch),
                                   cfg.params)
                ring = ring_w(cyl.N, cfg.params.m, cyl.n3, sph.l, sph.delta)
                rows.append((p, q, table[p, q], ring, abs(table[p, q] - ring)))
        sections.append(Section("ring_agreement",
                                ("p", "q", "general", "ring", "abs_diff"),
                                tuple(rows)))
    return sections, 0


def cmd_spheroidal(cfg: JobConfig) -> tuple[list[Section], int]:
    n = cfg.n
    curve_rows = []
    for radius in _grid_values(cfg.r_grid):
        sol = eigensolve(build_tridiag_t(n, cfg.params, cfg.branch,
                                         float(radius), cfg.kind))
        curve_rows.append((float(radius), *sol.lam))
    u = u_coefficients(n, cfg.k, cfg.params, cfg.branch, cfg.R, cfg.kind)
    t = t_coefficients(n, cfg.k, cfg.params, cfg.branch, cfg.R, cfg.kind)
    coeff_rows = tuple((idx, u[idx], t[idx]) for idx in range(n + 1))
    return [Section("lambda_curve",
                    ("R", *(f"lambda_{k}" for k in range(n + 1))), tuple(curve_rows)),
            Section("coefficients", ("idx", "u", "t"), coeff_rows)], 0


def _observed_order(errs: list[float], xs: list[float]):
    if max(errs) < 1e-13:
        return "exact-to-roundoff"
    if min(errs) == 0.0:
        return "exact-to-roundoff"
    return math.log(errs[1] / errs[0]) / math.log(xs[1] / xs[0])


def cmd_perturb(cfg: JobConfig) -> tuple[list[Section], int]:
    n, k, omega = cfg.n, cfg.k, cfg.params.omega
    small = small_r_series(n, k, cfg.params, cfg.branch, order=cfg.order)
    large = large_r_series(n, k, cfg.params, cfg.branch, order=cfg.order)
    rows, orders = [], []
    for regime, series, probes in (("small", small, _SMALL_PROBES),
                                   ("large", large, _LARGE_PROBES)):
        errs, xs = [], []
        for radius in probes:
            exact = eigensolve(build_tridiag_t(n, cfg.params, cfg.branch,
                                               radius, Kind.Prolate)).lam[k]
            approx = series.eigenvalue(radius)
            err = abs(approx - exact)
            x = omega * radius * radius
            # the large-R comparison happens on the bounded quantity lambda/x
            scaled = err / x if regime == "large" else err
            rows.append((regime, radius, approx, exact, err, scaled))
            errs.append(scaled)
            xs.append(x)
        orders.append((regime, _observed_order(errs, xs)))
    return [Section("comparison",
                    ("regime", "R", "series", "exact", "abs_error", "scaled_error"),
                    tuple(rows)),
            Section("orders", ("regime", "observed_order"), tuple(orders))], 0


def cmd_morse(cfg: JobConfig) -> tuple[list[Section], int]:
    params = cfg.morse
    energies = morse_spectrum(params)
    level_rows = tuple((p, float(e)) for p, e in enumerate(energies))
    # the threshold level (if any) is marginal and has no normalizable state
    lam = params.lam
    normalizable = [p for p in range(len(energies)) if 2.0 * lam - 2.0 * p - 1.0 > 0.0]
    norm_rows = tuple((p, quadrature_norm(p, params),
                       abs(quadrature_norm(p, params) - 1.0)) for p in normalizable)
    x = np.linspace(-2.0 / params.a, 8.0 / params.a, _MORSE_GRID_POINTS)
    psi = [morse_wavefunction(p, params, x) for p in normalizable]
    grid_rows = tuple((float(x[i]), *(float(col[i]) for col in psi))
                      for i in range(x.size))
    return [Section("levels", ("p", "energy"), level_rows),
            Section("norms", ("p", "norm", "abs_dev"), norm_rows),
            Section("wavefunctions",
                    ("x", *(f"psi_{p}" for p in normalizable)), grid_rows)], 0


def cmd_verify(cfg: JobConfig) -> tuple[list[Section], int]:
    reports = run_verification_suite()
    if len(reports) != len(SUITE_MANIFEST):
        raise NumericError("verification suite lost reports against its manifest")
    scale = 1e-6 if cfg.tolerance_profile == "strict" else 1.0
    rows, failures = [], 0
    for rep in reports:
        tol = rep.tolerance * scale
        gap = abs(rep.measured - rep.expected)
        if rep.relative:
            gap /= abs(rep.expected)
        passed = gap <= tol
        failures += not passed
        rows.append((rep.name, rep.measured, rep.expected, tol,
                     int(rep.relative), "pass" if passed else "FAIL"))
    summary = ((len(rows), len(rows) - failures, failures, len(SUITE_MANIFEST)),)
    sections = [Section("reports",
                        ("name", "measured", "expected", "tolerance",
                         "relative", "status"), tuple(rows)),
                Section("summary", ("total", "passed", "failed", "manifest"), summary)]
    return sections, 3 if failures else 0


_COMMANDS = {"spectrum": cmd_spectrum, "interbasis": cmd_interbasis,
             "spheroidal": cmd_spheroidal, "perturb": cmd_perturb,
             "morse": cmd_morse, "verify": cmd_verify}


# ----------------------------------------------------------------- rendering

def _cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _csv_quote(text: str) -> str:
    if any(ch in text for ch in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def render_csv(cfg: JobConfig, sections: list[Section]) -> str:
    out = StringIO()
    echo = cfg.echo()
    for key in sorted(echo):
        out.write(f"# {key} = {echo[key]}\n")
    for section in sections:
        out.write(f"## {section.name}\n")
        out.write(",".join(section.columns) + "\n")
        for row in section.rows:
            out.write(",".join(_csv_quote(_cell(v)) for v in row) + "\n")
    return out.getvalue()


def render_json(cfg: JobConfig, sections: list[Section]) -> str:
    def plain(value):
        if isinstance(value, (np.integer,)):
            return int(value)
        if isinstance(value, (np.floating,)):
            return float(value)
        return value

    data = {s.name: {"columns": list(s.columns),
                     "rows": [[plain(v) for v in row] for row in s.rows]}
            for s in sections}
    return json.dumps({"header": cfg.echo(), "data": data},
                      sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        sections, code = _COMMANDS[cfg.command](cfg)
        text = (render_csv if cfg.fmt == "csv" else render_json)(cfg, sections)
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            with open(cfg.out, "w", newline="") as handle:
                handle.write(text)
        return code
    except DomainError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())
