"""Special values: L(1,chi), log-derivatives, zeta_K at integers, digamma."""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import digamma as scipy_digamma
from sympy import kronecker_symbol

from mertensq import (
    EULER_GAMMA,
    DomainError,
    character_for,
    digamma_shift,
    fundamental_discriminants,
    l_at_one,
    l_log_deriv_at_one,
    quad_field,
    zeta_k_at_integer,
    zeta_k_log_deriv,
)

mp.mp.dps = 30


def _chi_values(delta: int) -> np.ndarray:
    D = abs(delta)
    return np.array([kronecker_symbol(delta, a) for a in range(D)], dtype=float)


def l_at_one_oracle(delta: int) -> float:
    """L(1,chi) = -(1/D) sum_{a=1}^{D-1} chi(a) psi(a/D); independent of the
    closed finite formulas used by the implementation."""
    D = abs(delta)
    chi = _chi_values(delta)
    a = np.arange(1, D)
    return float(-np.sum(chi[1:] * scipy_digamma(a / D)) / D)


def l_at_m_oracle(delta: int, m: int) -> float:
    # Hurwitz-zeta decomposition at high precision
    D = abs(delta)
    s = mp.mpf(0)
    for a in range(1, D):
        c = kronecker_symbol(delta, a)
        if c:
            s += c * mp.zeta(m, mp.mpf(a) / D)
    return float(s / mp.mpf(D) ** m)


# ------------------------- L(1, chi) -------------------------

def test_l_at_one_closed_forms():
    assert abs(l_at_one(character_for(-3)).value - math.pi / (3 * math.sqrt(3))) < 1e-12
    phi = (1 + math.sqrt(5)) / 2
    assert abs(l_at_one(character_for(5)).value - 2 * math.log(phi) / math.sqrt(5)) < 1e-12


def test_l_at_one_against_digamma_oracle():
    deltas = [-d for d in fundamental_discriminants(300, "imaginary")]
    deltas += [int(d) for d in fundamental_discriminants(300, "real")]
    for d in deltas:
        got = l_at_one(character_for(d)).value
        want = l_at_one_oracle(d)
        assert abs(got - want) < 1e-10, d


def test_l_at_one_positive_with_tight_error():
    for d in (-3, -4, -163, 5, 8, 229):
        sv = l_at_one(character_for(d))
        assert sv.value > 0
        assert sv.abs_error_bound < 1e-14
        assert sv.method in ("finite-formula", "truncated-series", "euler-maclaurin")


def test_l_at_one_polya_vinogradov_bound():
    for D in fundamental_discriminants(10000, "imaginary"):
        D = int(D)
        bound = 0.5 * math.log(D) + math.log(math.log(D)) + 2 + math.log(2) \
            if D >= 3 else 10.0
        assert l_at_one(character_for(-D)).value <= bound, D


# ------------------------- L'/L(1, chi) -------------------------

def test_l_log_deriv_rejects_odd_character():
    with pytest.raises(DomainError):
        l_log_deriv_at_one(character_for(-4))


def test_l_log_deriv_lemma_lower_bound():
    for D in (5, 8, 12, 13, 17, 229):
        v = l_log_deriv_at_one(character_for(D)).value
        lower = -0.5 * (math.log(D / (2 * math.pi)) - EULER_GAMMA) + 0.5 * math.log(2)
        assert v > lower, D


def test_l_log_deriv_against_mpmath():
    # symmetric +-h evaluations sidestep the Hurwitz pole at s=1
    with mp.workdps(40):
        h = mp.mpf("1e-8")
        for D in (5, 8, 13, 17):
            got = l_log_deriv_at_one(character_for(D)).value
            def L(s, D=D):
                return sum(kronecker_symbol(D, a) * mp.zeta(s, mp.mpf(a) / D)
                           for a in range(1, D)) * mp.power(D, -s)
            lp = (L(1 + h) - L(1 - h)) / (2 * h)
            l1 = (L(1 + h) + L(1 - h)) / 2
            assert abs(got - float(lp / l1)) < 1e-10, D


# ------------------------- zeta_K at integers -------------------------

def test_zeta_k_at_2_catalan_product():
    G = float(mp.catalan)
    got = zeta_k_at_integer(quad_field(-4), 2).value
    assert abs(got - math.pi**2 / 6 * G) < 1e-12


def test_zeta_k_at_least_one():
    for delta in (-3, -4, 5, 8, -163, 229):
        f = quad_field(delta)
        for m in (2, 3, 5, 10):
            sv = zeta_k_at_integer(f, m)
            assert sv.value >= 1.0
            assert sv.abs_error_bound < 1e-14


def test_zeta_k_against_mpmath_product():
    for delta, m in ((-3, 2), (5, 3), (8, 4), (-7, 6)):
        got = zeta_k_at_integer(quad_field(delta), m).value
        want = float(mp.zeta(m)) * l_at_m_oracle(delta, m)
        assert abs(got - want) < 1e-12, (delta, m)


def test_zeta_k_matches_coefficient_sum(tab5_200k):
    # (Delta=5, m=3) against direct Dirichlet summation over n <= 1e5
    n = np.arange(1, 100001, dtype=float)
    partial = float(np.sum(tab5_200k.a[1:100001] / n**3))
    got = zeta_k_at_integer(quad_field(5), 3).value
    # tail below sum_{n>1e5} d(n)/n^3 ~ 2e-9
    assert abs(got - partial) < 1e-8


def test_zeta_k_tends_to_one():
    f = quad_field(-4)
    for m in range(4, 61):
        assert abs(zeta_k_at_integer(f, m).value - 1.0) <= 4 * 2.0**(1 - m)


def test_zeta_k_rejects_small_m():
    with pytest.raises(DomainError):
        zeta_k_at_integer(quad_field(-4), 1)


# ------------------------- zeta_K'/zeta_K at odd integers -------------------------

def test_zeta_k_log_deriv_bound():
    for delta in (5, 8, -4):
        f = quad_field(delta)
        for k in (1, 2, 3, 5):
            v = zeta_k_log_deriv(f, 2 * k + 1).value
            assert abs(v) <= 1 / (2 * k * k), (delta, k)


def test_zeta_k_log_deriv_series_oracle(tab5_200k, qi_tables):
    # matches -sum Lambda_K(n) n^{-m} truncated at 1e5
    for tab, m in ((tab5_200k, 3), (qi_tables, 5)):
        n = np.arange(1, 100001, dtype=float)
        partial = -float(np.sum(tab.lambda_k[1:100001] / n**m))
        got = zeta_k_log_deriv(tab.field, m).value
        assert abs(got - partial) < 1e-9, (tab.field.delta, m)


def test_zeta_k_log_deriv_rejects_even():
    with pytest.raises(DomainError):
        zeta_k_log_deriv(quad_field(5), 4)


# ------------------------- digamma shift -------------------------

def test_digamma_shift_small_k():
    assert abs(digamma_shift(1).value - (3 - 2 * EULER_GAMMA)) < 1e-14
    assert abs(digamma_shift(2).value - 2 * (25.0 / 12 - EULER_GAMMA)) < 1e-14


def test_digamma_shift_matches_harmonic():
    for k in (1, 2, 5, 17):
        H = sum(1.0 / n for n in range(1, 2 * k + 1))
        assert abs(digamma_shift(k).value - 2 * (H - EULER_GAMMA)) < 1e-12


def test_digamma_shift_asymptotic():
    assert abs(digamma_shift(500).value - 2 * math.log(1000)) < 1e-3


def test_digamma_shift_monotone():
    vals = [digamma_shift(k).value for k in range(1, 30)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
