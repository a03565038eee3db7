"""Quadrature oracles: bi-orthogonality, Gram identities, overlap route."""

import math

import numpy as np
import pytest
from scipy import integrate

from genosc.errors import DomainError
from genosc.model import Branch, SystemParams, admissible_branches
from genosc.morse import MorseParams
from genosc.oracles import (SUITE_MANIFEST, CheckReport, GramFamily,
                            bi_orthogonality, bi_orthogonality_hypergeometric,
                            gram_matrix, reciprocal_gamma,
                            run_verification_suite, w_overlap_oracle)
from genosc.specfun import hermite

BOTH = SystemParams(omega=1.0, p_strength=-0.16, q_strength=0.0, m=1)   # b=0.3, c=1
STEEP = SystemParams(omega=2.0, p_strength=2.0, q_strength=1.5, m=2)    # b=1.5
CRIT = [SystemParams(omega=1.0, p_strength=0.05, q_strength=0.5, m=1),
        SystemParams(omega=1.0, p_strength=2.0, q_strength=3.0, m=0),
        SystemParams(omega=2.0, p_strength=0.1, q_strength=0.0, m=2)]


def branch_cases(param_sets):
    for params in param_sets:
        for branch in admissible_branches(params):
            yield params, branch


# --------------------------------------------------------- reciprocal gamma

def test_reciprocal_gamma_values_and_poles():
    assert reciprocal_gamma(1.0) == 1.0
    assert reciprocal_gamma(4.0) == pytest.approx(1.0 / 6.0, rel=1e-14)
    assert reciprocal_gamma(0.5) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
    assert reciprocal_gamma(-1.5) == pytest.approx(1.0 / 2.3632718012073548, rel=1e-12)
    for pole in (0.0, -1.0, -2.0, -7.0):
        assert reciprocal_gamma(pole) == 0.0


def test_reciprocal_gamma_pair_is_kronecker():
    for q in range(5):
        for qp in range(5):
            prod = reciprocal_gamma(q - qp + 1.0) * reciprocal_gamma(qp - q + 1.0)
            assert prod == pytest.approx(1.0 if q == qp else 0.0, abs=1e-15)


# ---------------------------------------------------------- bi-orthogonality

def test_bi_orthogonality_worked_diagonal():
    rep = bi_orthogonality(0, 0, 0, BOTH, Branch.Plus)
    assert rep.expected == pytest.approx(1.0 / 2.3, rel=1e-15)
    assert rep.measured == pytest.approx(1.0 / 2.3, abs=1e-12)
    assert rep.passed


def test_bi_orthogonality_all_pairs_small_levels():
    for params, branch in branch_cases(CRIT + [BOTH]):
        for n in range(5):
            for q in range(n + 1):
                for qp in range(n + 1):
                    rep = bi_orthogonality(n, q, qp, params, branch)
                    assert rep.passed, (params, branch, n, q, qp, rep.measured)
                    if q != qp:
                        assert abs(rep.measured) <= 1e-10


def test_bi_orthogonality_hypergeometric_route_agrees():
    for params, branch in branch_cases([CRIT[0], BOTH]):
        for n in range(5):
            for q in range(n + 1):
                for qp in range(n + 1):
                    quad = bi_orthogonality(n, q, qp, params, branch)
                    hyp = bi_orthogonality_hypergeometric(n, q, qp, params, branch)
                    assert hyp == pytest.approx(quad.expected, abs=1e-12)


def test_bi_orthogonality_rejects_bad_indices():
    with pytest.raises(DomainError):
        bi_orthogonality(2, 3, 0, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        bi_orthogonality(2, 0, -1, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        bi_orthogonality_hypergeometric(1, 2, 0, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        bi_orthogonality(3, 0, 0, STEEP, Branch.Minus)


# ------------------------------------------------------------- Gram matrices

def test_gram_families_hit_identity_targets():
    targets = {GramFamily.Theta: 0.5, GramFamily.RadialSph: 1.0,
               GramFamily.RadialCyl: 1.0, GramFamily.Axial: 0.5}
    for params, branch in branch_cases(CRIT + [BOTH]):
        for family, target in targets.items():
            gram, rep = gram_matrix(family, 4, params, branch)
            assert rep.passed, (family, params, branch, rep.measured)
            assert np.max(np.abs(gram - target * np.eye(5))) <= 1e-10


def test_gram_axial_consistent_with_hermite_half_line():
    # at b = 1/2 on Minus the axial factors are even/odd oscillator states,
    # so an explicit Hermite quadrature Gram must reproduce the same 1/2 I
    params = SystemParams(omega=1.0, p_strength=0.0, q_strength=0.0, m=1)
    gram, rep = gram_matrix(GramFamily.Axial, 4, params, Branch.Minus)
    assert rep.passed
    for p in range(5):
        for pp in range(5):
            herm = lambda k, z: (hermite(2 * k, z) * np.exp(-0.5 * z * z)
                                 / math.sqrt(math.sqrt(math.pi) * 2.0 ** (2 * k)
                                             * math.factorial(2 * k)))
            val, _ = integrate.quad(lambda z: herm(p, z) * herm(pp, z), 0.0, 12.0)
            sign = (-1.0) ** (p + pp)
            assert sign * gram[p, pp] == pytest.approx(val, abs=1e-10)


def test_gram_morse_identity_and_guards():
    gram, rep = gram_matrix(GramFamily.Morse, 2, MorseParams(v0=8.6528, a=1.3))
    assert rep.passed
    assert np.max(np.abs(gram - np.eye(3))) <= 1e-12
    with pytest.raises(DomainError):
        gram_matrix(GramFamily.Morse, 3, MorseParams(v0=5.12, a=1.0))
    with pytest.raises(DomainError):
        gram_matrix(GramFamily.Morse, 1, BOTH)
    with pytest.raises(DomainError):
        gram_matrix("theta", 2, BOTH)


# ------------------------------------------------------------ overlap oracle

def test_overlap_oracle_trivial_level():
    table, rep = w_overlap_oracle(0, BOTH, Branch.Plus)
    assert table.shape == (1, 1)
    assert table[0, 0] == pytest.approx(1.0, abs=1e-14)
    assert rep.passed


def test_overlap_oracle_matches_closed_form():
    for params, branch in branch_cases(CRIT + [BOTH]):
        for n in (2, 3, 5):
            table, rep = w_overlap_oracle(n, params, branch)
            assert rep.passed, (params, branch, n, rep.measured)
            assert rep.measured <= 1e-10


def test_overlap_oracle_table_is_orthogonal():
    for params, branch in branch_cases([CRIT[1], BOTH]):
        for n in (1, 3, 6):
            table, _ = w_overlap_oracle(n, params, branch)
            assert np.max(np.abs(table @ table.T - np.eye(n + 1))) <= 1e-10


def test_overlap_oracle_level_cap():
    with pytest.raises(DomainError):
        w_overlap_oracle(13, BOTH, Branch.Plus)
    with pytest.raises(DomainError):
        w_overlap_oracle(-1, BOTH, Branch.Plus)


# -------------------------------------------------------- verification suite

def test_suite_runs_green_and_matches_manifest():
    reports = run_verification_suite()
    assert len(reports) == len(SUITE_MANIFEST)
    for report, name in zip(reports, SUITE_MANIFEST):
        assert isinstance(report, CheckReport)
        assert report.name == name
        assert report.passed, report


def test_suite_manifest_is_deterministic():
    assert len(set(SUITE_MANIFEST)) == len(SUITE_MANIFEST)
    first = [r.name for r in run_verification_suite()]
    second = [r.name for r in run_verification_suite()]
    assert first == second == list(SUITE_MANIFEST)


def test_report_pass_logic():
    ok = CheckReport("x", 1.0, 1.0, 1e-12, True)
    assert ok.passed and not ok.relative
    rep = bi_orthogonality(1, 0, 1, BOTH, Branch.Plus)
    assert rep.expected == 0.0
    assert rep.tolerance == 1e-10
