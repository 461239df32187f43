"""Kronecker symbol, fundamental discriminants, field construction."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import kronecker_symbol

from mertensq import (
    DomainError,
    character_for,
    fundamental_discriminants,
    is_fundamental_discriminant,
    kronecker,
    quad_field,
)

SOME_DELTAS = [-3, -4, -7, -8, -11, -15, -20, -23, -24, 5, 8, 12, 13, 17, 21, 28, 229]


# ------------------------- kronecker symbol -------------------------

def test_kronecker_period_minus4():
    assert [kronecker(-4, n) for n in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]


def test_kronecker_period_minus3():
    assert [kronecker(-3, n) for n in range(1, 7)] == [1, -1, 0, 1, -1, 0]


def test_kronecker_period_5():
    assert [kronecker(5, n) for n in range(1, 11)] == [1, -1, -1, 1, 0, 1, -1, -1, 1, 0]


def test_kronecker_period_8():
    assert [kronecker(8, n) for n in range(1, 9)] == [1, 0, -1, 0, -1, 0, 1, 0]


def test_kronecker_against_sympy():
    deltas = [d for d in range(-120, 121) if d not in (0, 1) and is_fundamental_discriminant(d)]
    for d in deltas:
        for n in range(1, 3 * abs(d) + 1):
            assert kronecker(d, n) == kronecker_symbol(d, n), (d, n)


@settings(max_examples=200, deadline=None)
@given(d=st.sampled_from(SOME_DELTAS), m=st.integers(1, 10**4), n=st.integers(1, 10**4))
def test_kronecker_multiplicative(d, m, n):
    assert kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n)


@settings(max_examples=200, deadline=None)
@given(d=st.sampled_from(SOME_DELTAS), n=st.integers(1, 10**6))
def test_kronecker_periodic(d, n):
    assert kronecker(d, n) == kronecker(d, n + abs(d))


@settings(max_examples=200, deadline=None)
@given(d=st.sampled_from(SOME_DELTAS), n=st.integers(1, 10**5))
def test_kronecker_zero_iff_common_factor(d, n):
    import math
    assert (kronecker(d, n) == 0) == (math.gcd(n, abs(d)) > 1)


# ------------------------- fundamental discriminants -------------------------

def _brute_fundamental(d: int) -> bool:
    from sympy import factorint
    if d in (0,):
        return False
    def squarefree(m):
        return all(e == 1 for e in factorint(m).values())
    if d % 4 == 1:
        return d != 1 and squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def test_is_fundamental_matches_brute():
    for d in range(-200, 201):
        if d == 0:
            continue
        assert is_fundamental_discriminant(d) == _brute_fundamental(d), d


def test_fundamental_discriminants_small():
    im = fundamental_discriminants(50, "imaginary")
    assert im.tolist() == [3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 31, 35, 39, 40, 43, 47]
    re = fundamental_discriminants(50, "real")
    assert re.tolist() == [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44]


def test_fundamental_discriminants_counts():
    assert len(fundamental_discriminants(307, "imaginary")) == 96
    assert len(fundamental_discriminants(269, "real")) == 82


def test_fundamental_discriminants_sorted_and_fundamental():
    for sign, sgn in (("imaginary", -1), ("real", 1)):
        ds = fundamental_discriminants(2000, sign)
        assert np.all(np.diff(ds) > 0)
        for D in ds[::17]:
            assert is_fundamental_discriminant(sgn * int(D))


# ------------------------- field / character construction -------------------------

def test_quad_field_attributes():
    f = quad_field(-4)
    assert (f.delta, f.abs_disc, f.signature, f.parity) == (-4, 4, (0, 1), "odd")
    g = quad_field(5)
    assert (g.delta, g.abs_disc, g.signature, g.parity) == (5, 5, (2, 0), "even")


def test_quad_field_rejects_non_fundamental():
    for d in (0, 1, -1, 7, 9, -21, 45):
        with pytest.raises(DomainError):
            quad_field(d)


def test_character_for_modulus_and_values():
    c = character_for(-4)
    assert c.modulus == 4
    assert [c(n) for n in range(9)] == [0, 1, 0, -1, 0, 1, 0, -1, 0]
    c5 = character_for(5)
    assert c5.modulus == 5
    assert [c5(n) for n in range(1, 6)] == [1, -1, -1, 1, 0]


def test_character_sign_matches_field_parity():
    for d in SOME_DELTAS:
        c = character_for(d)
        # chi(-1) = sign of the discriminant: evaluate at |d| - 1
        val = c(abs(d) - 1)
        assert val == (1 if d > 0 else -1), d
