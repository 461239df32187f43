"""Special values feeding the residue series.

L(1,chi) by the classical finite formulas; L'(1,chi)/L(1,chi) for even chi by
term-by-term differentiation of the Hurwitz-zeta decomposition
L(s,chi) = D^{-s} sum_a chi(a) zeta(s, a/D) at s=1 (the 1/(s-1) poles cancel
because sum chi(a) = 0); zeta(m) and L(m,chi) at integers m >= 2 by
Euler-Maclaurin; zeta_K'/zeta_K at odd integers from the same machinery.

Everything returns a SpecialValue carrying a (rigorous or heuristic) absolute
error bound and a method tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadfield import Character, QuadField, is_fundamental_discriminant, primes_up_to

# Euler's constant, 30 digits (universal constant, not an algorithmic output)
EULER_GAMMA = 0.577215664901532860606512090082

_EPS = 2.220446049250313e-16

# Bernoulli numbers B_2..B_14 for the Euler-Maclaurin corrections
_BERN = {2: 1.0 / 6, 4: -1.0 / 30, 6: 1.0 / 42, 8: -1.0 / 30,
         10: 5.0 / 66, 12: -691.0 / 2730, 14: 7.0 / 6}


@dataclass(frozen=True)
class SpecialValue:
    value: float
    abs_error_bound: float
    method: str  # finite-formula | truncated-series | euler-maclaurin


def _require_primitive(chi: Character) -> None:
    if chi.modulus < 3 or not is_fundamental_discriminant(chi.delta):
        raise DomainError(
            f"character must be primitive quadratic with modulus >= 3 "
            f"(got delta={chi.delta})"
        )


def harmonic(n: int) -> float:
    """H_n = sum_{i<=n} 1/i (exactly-rounded float sum)."""
    return math.fsum(1.0 / i for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# Euler-Maclaurin evaluation of zeta(m, alpha) and its s-derivative
# ---------------------------------------------------------------------------


def _poch(s: float, k: int) -> float:
    """Rising factorial s(s+1)...(s+k-1)."""
    out = 1.0
    for i in range(k):
        out *= s + i
    return out


def _hurwitz_em_jet(m: float, alpha: np.ndarray, N: int = 64, J: int = 4,
                    want_deriv: bool = False):
    """zeta(m, alpha) (and d/ds zeta(s, alpha)|_{s=m} on request) for an
    array of shifts alpha in (0, 1], vectorised; returns (value, deriv, bound).

    Sum to n < N, then tail (N+a)^{1-m}/(m-1) + (N+a)^{-m}/2 plus Bernoulli
    corrections through B_{2J}; the reported bound is the first omitted
    correction term (valid for real m > 1).
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    base = alpha[:, None] + np.arange(N)[None, :]  # (n + alpha)
    pw = base ** (-m)
    val = pw.sum(axis=1)
    na = alpha + N
    lna = np.log(na)
    na_m = na ** (-m)
    val += na ** (1.0 - m) / (m - 1.0) + 0.5 * na_m
    corr_next = None
    for j in range(1, J + 2):
        c = _BERN.get(2 * j, 0.0) / math.factorial(2 * j) * _poch(m, 2 * j - 1)
        term = c * na ** (-m - 2 * j + 1)
        if j <= J:
            val += term
        else:
            corr_next = np.abs(term)
    bound = corr_next if corr_next is not None else np.zeros_like(val)

    if not want_deriv:
        return val, None, bound

    logb = np.log(base)
    dval = -(logb * pw).sum(axis=1)
    dval += na ** (1.0 - m) * (-lna / (m - 1.0) - 1.0 / (m - 1.0) ** 2)
    dval += -0.5 * lna * na_m
    for j in range(1, J + 1):
        c = _BERN[2 * j] / math.factorial(2 * j) * _poch(m, 2 * j - 1)
        hsum = math.fsum(1.0 / (m + i) for i in range(2 * j - 1))
        dval += c * na ** (-m - 2 * j + 1) * (hsum - lna)
    # derivative bound: first omitted correction picks up a log factor
    dbound = bound * (np.abs(lna) + 4.0)
    return val, dval, np.maximum(bound, dbound)


def _chi_support(chi: Character):
    table = chi.table()
    a = np.nonzero(table)[0]
    return a.astype(np.float64), table[a].astype(np.float64)


# ---------------------------------------------------------------------------
# L(1, chi) and L'(1, chi)/L(1, chi)
# ---------------------------------------------------------------------------


def l_at_one(chi: Character) -> SpecialValue:
    """L(1, chi) by the finite character-sum formulas.

    odd chi:  -(pi / D^{3/2}) sum_a chi(a) a          (exact integer sum)
    even chi: -(1/sqrt D) sum_a chi(a) log sin(pi a/D)
    """
    _require_primitive(chi)
    D = chi.modulus
    table = chi.table()
    if chi.delta < 0:
        s = int(np.dot(table[1:].astype(np.int64), np.arange(1, D, dtype=np.int64)))
        value = -math.pi * s / D**1.5
        bound = 4 * _EPS * abs(value) + 1e-300
        return SpecialValue(value=value, abs_error_bound=bound, method="finite-formula")
    a, w = _chi_support(chi)
    terms = w * np.log(np.sin(math.pi * a / D))
    value = -math.fsum(terms) / math.sqrt(D)
    # per-term rounding is ~1 ulp; model the accumulated error as an rms walk
    bound = _EPS * (2 * abs(value) + 2 * math.sqrt(float(np.sum(terms * terms))))
    return SpecialValue(value=value, abs_error_bound=bound, method="finite-formula")


def _l_one_jet(chi: Character, N: int = 64, J: int = 4) -> tuple[float, float]:
    """(F(1), F'(1)) for F(s) = sum_a chi(a) zeta(s, a/D).

    The 1/(s-1) (and, in F', the 1/(s-1)^2) pieces cancel across a since
    sum chi(a) = 0, leaving per-a limits:
      F(1):  sum_{n<N} 1/(n+al) - log(N+al) + (1/2)/(N+al)
             + sum_j B_{2j}/(2j) (N+al)^{-2j}
      F'(1): -sum_{n<N} log(n+al)/(n+al) + log^2(N+al)/2
             - (1/2) log(N+al)/(N+al)
             + sum_j B_{2j}/(2j) (N+al)^{-2j} (H_{2j-1} - log(N+al))
    """
    D = chi.modulus
    a, w = _chi_support(chi)
    al = a / D
    base = al[:, None] + np.arange(N)[None, :]
    inv = 1.0 / base
    na = al + N
    lna = np.log(na)
    f1 = inv.sum(axis=1) - lna + 0.5 / na
    fp1 = -(np.log(base) * inv).sum(axis=1) + 0.5 * lna * lna - 0.5 * lna / na
    for j in range(1, J + 1):
        c = _BERN[2 * j] / (2 * j)
        pw = na ** (-2.0 * j)
        f1 += c * pw
        fp1 += c * pw * (harmonic(2 * j - 1) - lna)
    return float(np.dot(w, f1)), float(np.dot(w, fp1))


def l_log_deriv_at_one(chi: Character) -> SpecialValue:
    """L'(1,chi)/L(1,chi) for even primitive chi (the real-quadratic case)."""
    _require_primitive(chi)
    if chi.delta < 0:
        raise DomainError("L'/L(1) is only needed (and implemented) for even characters")
    D = chi.modulus
    f1, fp1 = _l_one_jet(chi)
    value = -math.log(D) + fp1 / f1
    # float-noise model: eps * (sum |per-a| magnitudes) ~ eps * D log D on F',
    # divided by |F(1)|, plus the (tiny) EM truncation
    bound = _EPS * (D * math.log(D) ** 2 + 10.0) / abs(f1) + 1e-18
    return SpecialValue(value=value, abs_error_bound=bound, method="euler-maclaurin")


# ---------------------------------------------------------------------------
# zeta_K at integers and its logarithmic derivative at odd integers
# ---------------------------------------------------------------------------

_DIRECT_M = 25  # beyond this the Dirichlet series to n=64 is past double precision


def _riemann_zeta_em(m: int) -> tuple[float, float, float]:
    """(zeta(m), zeta'(m), error bound) by Euler-Maclaurin at alpha=1."""
    val, dval, bnd = _hurwitz_em_jet(float(m), np.array([1.0]), want_deriv=True)
    return float(val[0]), float(dval[0]), float(bnd[0])


def _l_em(chi: Character, m: int, want_deriv: bool = False):
    """L(m, chi) (and L'(m, chi)) via D^{-s} sum_a chi(a) zeta(s, a/D)."""
    D = chi.modulus
    a, w = _chi_support(chi)
    val, dval, bnd = _hurwitz_em_jet(float(m), a / D, want_deriv=want_deriv)
    dm = float(D) ** (-m)
    L = dm * float(np.dot(w, val))
    err = dm * float(np.dot(np.abs(w), bnd)) + 8 * _EPS * max(1.0, abs(L))
    if not want_deriv:
        return L, None, err
    Lp = -math.log(D) * L + dm * float(np.dot(w, dval))
    return L, Lp, err


def _l_direct(chi: Character, m: int, want_deriv: bool = False):
    """Plain Dirichlet series to n=64; tail < 65^{-m} * 65/(m-1) (m >= 25)."""
    n = np.arange(1, 65, dtype=np.float64)
    w = chi.table()[np.arange(1, 65) % chi.modulus].astype(np.float64)
    pw = n ** (-float(m))
    L = float(np.dot(w, pw))
    tail = 65.0 ** (-m) * 65.0 / (m - 1)
    if not want_deriv:
        return L, None, tail
    Lp = -float(np.dot(w, np.log(n) * pw))
    return L, Lp, tail * math.log(65.0)


def zeta_k_at_integer(field: QuadField, m: int) -> SpecialValue:
    """zeta_K(m) = zeta(m) * L(m, chi_delta) for integer m >= 2 (always >= 1)."""
    if m < 2:
        raise DomainError(f"zeta_K at integers needs m >= 2, got {m}")
    chi = field.character()
    z, _, zb = _riemann_zeta_em(m)
    if m >= _DIRECT_M:
        L, _, lb = _l_direct(chi, m)
        method = "truncated-series"
    else:
        L, _, lb = _l_em(chi, m)
        method = "euler-maclaurin"
    value = z * L
    bound = abs(z) * lb + abs(L) * zb + 4 * _EPS * abs(value)
    return SpecialValue(value=value, abs_error_bound=bound, method=method)


def zeta_k_log_deriv(field: QuadField, m: int) -> SpecialValue:
    """zeta_K'/zeta_K(m) at odd m = 2k+1 >= 3; |value| <= 1/(2k^2)."""
    if m % 2 == 0 or m < 3:
        raise DomainError(f"log-derivative wants odd m >= 3, got {m}")
    chi = field.character()
    if m >= _DIRECT_M:
        # -sum Lambda_K(n) n^{-m} over prime powers n <= 64: tail is below
        # 2 log(65) * 65^{-m} / (1 - 65^{-1}), irrelevant at double precision
        total = 0.0
        D = field.abs_disc
        tab = chi.table()
        for p in primes_up_to(64):
            p = int(p)
            c = int(tab[p % D])
            lp = math.log(p)
            q, j = p, 1
            while q <= 64:
                if c == 1:
                    total -= 2.0 * lp * q ** (-float(m))
                elif c == 0:
                    total -= lp * q ** (-float(m))
                elif j % 2 == 0:
                    total -= 2.0 * lp * q ** (-float(m))
                q *= p
                j += 1
        bound = 4.0 * math.log(65.0) * 65.0 ** (-m)
        return SpecialValue(value=total, abs_error_bound=bound, method="truncated-series")
    z, zp, zb = _riemann_zeta_em(m)
    L, Lp, lb = _l_em(chi, m, want_deriv=True)
    value = zp / z + Lp / L
    bound = (zb * (1 + abs(zp / z)) / abs(z) + lb * (1 + abs(Lp / L)) / abs(L)
             + 8 * _EPS * max(1.0, abs(value)))
    return SpecialValue(value=value, abs_error_bound=bound, method="euler-maclaurin")


def digamma_shift(k: int) -> SpecialValue:
    """2 Gamma'/Gamma(2k+1) = 2 (H_{2k} - gamma)."""
    if k < 1:
        raise DomainError(f"digamma_shift wants k >= 1, got {k}")
    value = 2.0 * (harmonic(2 * k) - EULER_GAMMA)
    return SpecialValue(value=value, abs_error_bound=8 * _EPS * max(1.0, value),
                        method="finite-formula")
