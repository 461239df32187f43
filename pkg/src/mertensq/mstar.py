"""The residue series M_K*(x) and its disproof criteria.

M_K*(x) is minus the sum of residues of x^s/(s zeta_K(s)) over the trivial
zeros and s=0.  For imaginary quadratic K (all trivial zeros simple):

  M_K*(x) = 2 pi / (L(1,chi) sqrt D)
          + sum_{k>=1} (D/4pi^2)^{-k-1/2} (-1)^k x^{-k} / (k (k!)^2 zeta_K(k+1))

For real quadratic K (double trivial zeros at even negative integers, double
pole at s=0 giving the log term):

  M_K*(x) = 4/(L(1,chi) sqrt D) (log(xD/4pi^2) - gamma + L'/L(1,chi))
          + (2/sqrt D) sum_{k>=1} (4pi^2/(xD))^{2k} / (k ((2k)!)^2 zeta_K(2k+1))
            * (log(xD/4pi^2) + 1/(2k) + zeta_K'/zeta_K(2k+1) + 2 Gamma'/Gamma(2k+1))

Series terms die like 1/(k!)^2, so k_max=50 is far past double precision for
every x >= 1; tail bounds use the term-magnitude envelope with zeta_K >= 1.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import coeffs
from .errors import DomainError
from .lvalues import (EULER_GAMMA, digamma_shift, l_at_one, l_log_deriv_at_one,
                      zeta_k_at_integer, zeta_k_log_deriv)
from .quadfield import (QuadField, fundamental_discriminants,
                        is_fundamental_discriminant, quad_field)

_TWO_PI_SQ = 4.0 * math.pi * math.pi
_EARLY_EXIT = 1e-18
_TAIL_FLOOR = 1e-33


@dataclass(frozen=True)
class MStarEval:
    field: QuadField
    x: float
    value: float
    k_max: int  # index of the last term actually summed
    tail_bound: float


# ---------------------------------------------------------------------------
# per-field series data (L-values are reused across x and across k_max)
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class _ImagSeries:
    D: int
    lead: float
    coef: np.ndarray  # term_k(x) = coef[k-1] * x^{-k}
    majorant: np.ndarray  # |term_k(x)| <= majorant[k-1] * x^{-k}


@dataclass(eq=False)
class _RealSeries:
    D: int
    c0: float  # 4 / (L(1) sqrt D)
    log_shift: float  # log(D / 4 pi^2); lg(x) = log_shift + log x
    l_ratio: float  # L'/L(1, chi)
    p: np.ndarray  # (4pi^2/D)^{2k} / (k ((2k)!)^2)
    inner_const: np.ndarray  # 1/(2k) + zeta_K'/zeta_K(2k+1) + 2(H_{2k}-gamma)
    zk: np.ndarray  # zeta_K(2k+1)
    inner_env: np.ndarray  # 1/(2k) + 1/(2k^2) + 2(H_{2k}-gamma)


_lock = threading.Lock()
_imag_cache: dict[tuple[int, int], _ImagSeries] = {}
_real_cache: dict[tuple[int, int], _RealSeries] = {}


def _k_needed(log_ratio: float, is_real: bool) -> int:
    """Smallest K with the x=1 term envelope below the tail floor."""
    k = 1
    while k < 400:
        if is_real:
            lt = 2 * k * log_ratio - math.log(k) - 2 * math.lgamma(2 * k + 1)
        else:
            lt = k * log_ratio - math.log(k) - 2 * math.lgamma(k + 1)
        if lt < math.log(_TAIL_FLOOR) - 5:
            return k
        k += 1
    return 400


def _imag_series(field: QuadField, x: float) -> _ImagSeries:
    D = field.abs_disc
    lr = math.log(_TWO_PI_SQ / D) + max(0.0, -math.log(x))
    K = _k_needed(lr, is_real=False)
    key = (field.delta, K)
    with _lock:
        hit = _imag_cache.get(key)
    if hit is not None:
        return hit
    chi = field.character()
    lead = 2.0 * math.pi / (l_at_one(chi).value * math.sqrt(D))
    lq = math.log(_TWO_PI_SQ / D)
    ks = np.arange(1, K + 1)
    lgam = np.array([math.lgamma(k + 1) for k in range(1, K + 1)])
    logmag = (ks + 0.5) * lq - np.log(ks) - 2.0 * lgam
    zk = np.array([zeta_k_at_integer(field, k + 1).value for k in range(1, K + 1)])
    with np.errstate(under="ignore"):
        mag = np.exp(logmag)
    coef = np.where(ks % 2 == 0, 1.0, -1.0) * mag / zk
    series = _ImagSeries(D=D, lead=lead, coef=coef, majorant=mag)
    with _lock:
        _imag_cache[key] = series
    return series


def _real_series(field: QuadField, x: float) -> _RealSeries:
    D = field.abs_disc
    lr = 2.0 * (math.log(_TWO_PI_SQ / D) + max(0.0, -math.log(x)))
    K = _k_needed(0.5 * lr, is_real=True)
    key = (field.delta, K)
    with _lock:
        hit = _real_cache.get(key)
    if hit is not None:
        return hit
    chi = field.character()
    L1 = l_at_one(chi).value
    c0 = 4.0 / (L1 * math.sqrt(D))
    l_ratio = l_log_deriv_at_one(chi).value
    lq = math.log(_TWO_PI_SQ / D)
    ks = np.arange(1, K + 1)
    lgam2 = np.array([math.lgamma(2 * k + 1) for k in range(1, K + 1)])
    with np.errstate(under="ignore"):
        p = np.exp(2.0 * ks * lq - np.log(ks) - 2.0 * lgam2)
    zl = np.array([zeta_k_log_deriv(field, 2 * k + 1).value for k in range(1, K + 1)])
    dg = np.array([digamma_shift(k).value for k in range(1, K + 1)])
    inner_const = 1.0 / (2.0 * ks) + zl + dg
    inner_env = 1.0 / (2.0 * ks) + 1.0 / (2.0 * ks * ks) + dg
    zk = np.array([zeta_k_at_integer(field, 2 * k + 1).value for k in range(1, K + 1)])
    series = _RealSeries(D=D, c0=c0, log_shift=-lq, l_ratio=l_ratio,
                         p=p, inner_const=inner_const, zk=zk, inner_env=inner_env)
    with _lock:
        _real_cache[key] = series
    return series


# ---------------------------------------------------------------------------
# the two series
# ---------------------------------------------------------------------------


def mstar_imaginary(field: QuadField, x: float, k_max: int = 50) -> MStarEval:
    """M_K*(x) for imaginary quadratic K."""
    if field.delta > 0:
        raise DomainError(f"imaginary series called with delta={field.delta} > 0")
    if x <= 0 or k_max < 1:
        raise DomainError(f"need x > 0 and k_max >= 1 (got x={x}, k_max={k_max})")
    s = _imag_series(field, x)
    total = s.lead
    k_stop = 0
    for k in range(1, min(k_max, len(s.coef)) + 1):
        term = s.coef[k - 1] * x ** (-k)
        total += term
        k_stop = k
        if abs(term) < _EARLY_EXIT:
            break
    tail = 0.0
    lq = math.log(_TWO_PI_SQ / (x * s.D))
    for k in range(k_stop + 1, k_stop + 300):
        t = math.exp(k * lq - math.log(k) - 2.0 * math.lgamma(k + 1))
        tail += (2.0 * math.pi / math.sqrt(s.D)) * t
        if t < _TAIL_FLOOR:
            break
    return MStarEval(field=field, x=x, value=total, k_max=k_stop, tail_bound=tail)


def mstar_real(field: QuadField, x: float, k_max: int = 50) -> MStarEval:
    """M_K*(x) for real quadratic K."""
    if field.delta < 0:
        raise DomainError(f"real series called with delta={field.delta} < 0")
    if x <= 0 or k_max < 1:
        raise DomainError(f"need x > 0 and k_max >= 1 (got x={x}, k_max={k_max})")
    s = _real_series(field, x)
    lg = math.log(x) + s.log_shift  # log(x D / 4 pi^2)
    total = s.c0 * (lg - EULER_GAMMA + s.l_ratio)
    pref = 2.0 / math.sqrt(s.D)
    k_stop = 0
    for k in range(1, min(k_max, len(s.p)) + 1):
        term = pref * s.p[k - 1] * x ** (-2 * k) * (lg + s.inner_const[k - 1]) / s.zk[k - 1]
        total += term
        k_stop = k
        if abs(term) < _EARLY_EXIT:
            break
    tail = 0.0
    lq = 2.0 * math.log(_TWO_PI_SQ / (x * s.D))
    for k in range(k_stop + 1, k_stop + 300):
        env = abs(lg) + 1.0 / (2 * k) + 1.0 / (2 * k * k) + 2.0 * (math.log(2 * k) + 1.0)
        t = math.exp(k * lq - math.log(k) - 2.0 * math.lgamma(2 * k + 1)) * env
        tail += pref * t
        if t < _TAIL_FLOOR:
            break
    return MStarEval(field=field, x=x, value=total, k_max=k_stop, tail_bound=tail)


def mstar(field: QuadField, x: float, k_max: int = 50) -> MStarEval:
    """Dispatch on the sign of the discriminant."""
    if field.delta < 0:
        return mstar_imaginary(field, x, k_max)
    return mstar_real(field, x, k_max)


# ---------------------------------------------------------------------------
# closed-form threshold bounds
# ---------------------------------------------------------------------------


def _l_upper(D: float) -> float:
    """Polya-Vinogradov style upper bound for L(1,chi): log D/2 + loglog D + 2 + log 2."""
    return 0.5 * math.log(D) + math.log(math.log(D)) + 2.0 + math.log(2.0)


def mstar_lower_bound_imaginary(D: int) -> float:
    """Closed-form lower bound for M_K*(1), positive exactly when D > 307:

      (2 pi / sqrt D) (1/(log D/2 + loglog D + 2 + log 2) - exp(4 pi^2/D) + 1)
    """
    if D < 4 or not is_fundamental_discriminant(-D):
        raise DomainError(f"-{D} is not a fundamental discriminant with D >= 4")
    return (2.0 * math.pi / math.sqrt(D)) * (
        1.0 / _l_upper(D) - math.exp(_TWO_PI_SQ / D) + 1.0
    )


def mstar_threshold_check_real(D: int) -> bool:
    """Whether the real-quadratic positivity inequality holds at D:

      2 (log D/2 - (3/2) log pi - log 2 - gamma/2) / (log D/2 + loglog D + 2 + log 2)
        > (cosh(4 pi^2/D) - 1) (log D/2 + 3/2 - gamma - log pi)

    True for every fundamental D > 269; fails at (and well below) 269.
    """
    if D < 5 or not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a positive fundamental discriminant >= 5")
    half_log = 0.5 * math.log(D)
    lhs = 2.0 * (half_log - 1.5 * math.log(math.pi) - math.log(2.0) - EULER_GAMMA / 2.0)
    lhs /= _l_upper(D)
    rhs = (math.cosh(_TWO_PI_SQ / D) - 1.0) * (half_log + 1.5 - EULER_GAMMA - math.log(math.pi))
    return lhs > rhs


# ---------------------------------------------------------------------------
# residues at the trivial zeros
# ---------------------------------------------------------------------------


def residue_at_negative_k(field: QuadField, x: float, k: int) -> float:
    """The -res_{s=-k} x^s/(s zeta_K(s)) contribution as it appears in M_K*.

    Imaginary K: every -k is a simple zero and the residue term is the k-th
    series term.  Real K: odd -k are not zeros (residue 0); even -k are double
    zeros and the term is the (k/2)-th series term.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if x <= 0:
        raise DomainError(f"x must be > 0, got {x}")
    if field.delta < 0:
        s = _imag_series(field, x)
        if k > len(s.coef):
            return 0.0
        return float(s.coef[k - 1] * x ** (-k))
    if k % 2 == 1:
        return 0.0
    s = _real_series(field, x)
    j = k // 2
    if j > len(s.p):
        return 0.0
    lg = math.log(x) + s.log_shift
    return float(2.0 / math.sqrt(s.D) * s.p[j - 1] * x ** (-k)
                 * (lg + s.inner_const[j - 1]) / s.zk[j - 1])


def trivial_zero_residue_bound(field: QuadField, x: float, k: int, c: float = 1.0) -> float:
    """The generic residue envelope c (2pi)^{2k} log(kxD)^{r1+r2}
    / (k x^k D^{k+1/2} (k!)^2); the smallest workable c is reported by tests,
    not asserted here."""
    if k < 1 or x <= 0:
        raise DomainError("need k >= 1 and x > 0")
    r1, r2 = field.signature
    D = field.abs_disc
    lg = (2 * k) * math.log(2 * math.pi) - math.log(k) - k * math.log(x) \
        - (k + 0.5) * math.log(D) - 2.0 * math.lgamma(k + 1)
    return c * math.exp(lg) * math.log(k * x * D) ** (r1 + r2)


# ---------------------------------------------------------------------------
# table generation and counterexample search
# ---------------------------------------------------------------------------


def table_scan(sign: str, d_max: int, x: float = 1.0, k_max: int = 50,
               threads: int = 1) -> list[tuple[int, float]]:
    """(D, M_K*(x)) for every fundamental |delta| <= d_max, ascending D."""
    if d_max < 3:
        raise DomainError(f"d_max must be >= 3, got {d_max}")
    ds = fundamental_discriminants(d_max, sign)
    sgn = -1 if sign == "imaginary" else 1

    def one(D: int) -> tuple[int, float]:
        f = quad_field(sgn * int(D))
        ev = mstar_imaginary(f, x, k_max) if sgn < 0 else mstar_real(f, x, k_max)
        return int(D), ev.value

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, ds))
    return [one(int(D)) for D in ds]


def counterexample_search(field: QuadField, n_max: int,
                          k_max: int = 50) -> tuple[int, float] | None:
    """Smallest n <= n_max with (M_K(n+) + M_K*(n)) / sqrt(n) > 1, with ratio.

    Vectorised: the series terms share the cached per-field L-values, so the
    whole n-range is a couple of matrix products.
    """
    tables = coeffs.build_tables(field, n_max)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    if field.delta < 0:
        s = _imag_series(field, 1.0)
        K = len(s.coef)
        with np.errstate(under="ignore"):
            powers = n[:, None] ** (-np.arange(1, K + 1)[None, :])
        mvals = s.lead + powers @ s.coef
    else:
        s = _real_series(field, 1.0)
        K = len(s.p)
        lg = np.log(n) + s.log_shift
        mvals = s.c0 * (lg - EULER_GAMMA + s.l_ratio)
        with np.errstate(under="ignore"):
            powers = n[:, None] ** (-2.0 * np.arange(1, K + 1)[None, :])
        mvals += (2.0 / math.sqrt(s.D)) * (
            (powers * (lg[:, None] + s.inner_const[None, :])) @ (s.p / s.zk)
        )
    ratios = (tables.prefix[1:].astype(np.float64) + mvals) / np.sqrt(n)
    hits = np.nonzero(ratios > 1.0)[0]
    if len(hits) == 0:
        return None
    i = int(hits[0])
    return i + 1, float(ratios[i])
