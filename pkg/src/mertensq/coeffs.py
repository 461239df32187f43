"""Dirichlet-series coefficient sieves for zeta_K = zeta * L(chi_delta).

Arrays up to a bound N:
  a[n]        = #{ideals of norm n} = sum_{d|n} chi(d)
  mu_k[n]     = coefficient of n^{-s} in 1/zeta_K   (= mu * (mu.chi) convolution)
  lambda_k[n] = coefficient of n^{-s} in -zeta_K'/zeta_K  (von Mangoldt over K)
  prefix[n]   = sum_{m<=n} mu_k[m]  (the right-limit Mertens values)

M_K(x) uses the half-weight convention at integer x; mertens_right_limit is
the full-weight prefix sum M_K(n+).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .quadfield import QuadField, mobius_sieve, primes_up_to, quad_field

MAX_SIEVE_N = 1 << 25  # ~800 MB across the four arrays; desk scale is ~4e5

_MAGIC = b"MQCT"
_VERSION = 1


@dataclass(eq=False)
class CoeffTables:
    field: QuadField
    N: int
    a: np.ndarray  # int32, index 0 unused
    mu_k: np.ndarray  # int32
    lambda_k: np.ndarray  # float64
    prefix: np.ndarray  # int64 cumulative sums of mu_k


def build_tables(field: QuadField, N: int) -> CoeffTables:
    """Sieve all four coefficient arrays for 1 <= n <= N."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if N > MAX_SIEVE_N:
        raise ResourceError(f"sieve bound {N} exceeds cap {MAX_SIEVE_N}")
    D = field.abs_disc
    chi = field.character().table()
    chi_n = chi[np.arange(N + 1) % D]  # chi(n) for 0..N, int8

    # a_n = sum_{d|n} chi(d): one strided add per d with chi(d) != 0
    a = np.zeros(N + 1, dtype=np.int32)
    for d in np.nonzero(chi_n)[0]:
        a[d::d] += int(chi_n[d])

    # mu_k = mu * (mu.chi)
    mu = mobius_sieve(N)
    mu_chi = (mu * chi_n).astype(np.int32)
    mu_k = np.zeros(N + 1, dtype=np.int32)
    for d in np.nonzero(mu)[0]:
        m = N // d
        mu_k[d::d] += int(mu[d]) * mu_chi[1 : m + 1]

    # Lambda^K from the Euler factor at p: split -> 2 log p at every power,
    # inert -> 2 log p at even powers only, ramified -> log p at every power
    lam = np.zeros(N + 1, dtype=np.float64)
    for p in primes_up_to(N):
        p = int(p)
        c = int(chi[p % D])
        lp = math.log(p)
        q, j = p, 1
        while q <= N:
            if c == 1:
                lam[q] = 2.0 * lp
            elif c == 0:
                lam[q] = lp
            elif j % 2 == 0:
                lam[q] = 2.0 * lp
            q *= p
            j += 1

    prefix = np.cumsum(mu_k, dtype=np.int64)
    return CoeffTables(field=field, N=N, a=a, mu_k=mu_k, lambda_k=lam, prefix=prefix)


def mertens(tables: CoeffTables, x: float) -> float:
    """M_K(x) = sum_{n<x} mu_K(n) + (1/2) mu_K(x) if x is an integer."""
    if x <= 0 or x > tables.N:
        raise DomainError(f"x must lie in (0, {tables.N}], got {x}")
    ix = int(math.floor(x))
    if x == ix:
        return float(tables.prefix[ix - 1]) + 0.5 * float(tables.mu_k[ix])
    return float(tables.prefix[ix])


def mertens_right_limit(tables: CoeffTables, n: int) -> int:
    """M_K(n+) = sum_{m<=n} mu_K(m), full weight at n."""
    if n < 1 or n > tables.N:
        raise DomainError(f"n must lie in [1, {tables.N}], got {n}")
    return int(tables.prefix[n])


@dataclass(frozen=True)
class GrowthReport:
    max_a_over_divisors: float  # max a_n / d(n); bounded by 1
    n_at_max_a: int
    max_mu_over_a: float  # max |mu_K(n)| / a_n (a_n > 0); bounded by 1
    n_at_max_mu: int
    mu_vanishes_with_a: bool  # mu_K(n) = 0 wherever a_n = 0


def coeff_growth_check(tables: CoeffTables) -> GrowthReport:
    """Ratios against the divisor function and against a_n itself."""
    if tables.N < 100:
        raise DomainError("growth check wants N >= 100")
    N = tables.N
    divisors = np.zeros(N + 1, dtype=np.int32)
    for k in range(1, N + 1):
        divisors[k::k] += 1
    ratio_a = tables.a[1:] / divisors[1:]
    i_a = int(np.argmax(ratio_a)) + 1
    absmu = np.abs(tables.mu_k[1:])
    safe_a = np.maximum(tables.a[1:], 1)
    ratio_mu = absmu / safe_a
    i_mu = int(np.argmax(ratio_mu)) + 1
    vanish = bool(np.all(absmu[tables.a[1:] == 0] == 0))
    return GrowthReport(
        max_a_over_divisors=float(ratio_a[i_a - 1]),
        n_at_max_a=i_a,
        max_mu_over_a=float(ratio_mu[i_mu - 1]),
        n_at_max_mu=i_mu,
        mu_vanishes_with_a=vanish,
    )


# ---------------------------------------------------------------------------
# binary dump/restore (skip re-sieving in long scans)
# ---------------------------------------------------------------------------


def dump_tables(tables: CoeffTables, path) -> None:
    """Versioned little-endian dump: magic, version, delta, N, then a / mu_k /
    lambda_k raw arrays.  prefix is recomputed on load."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IqQ", _VERSION, tables.field.delta, tables.N))
        fh.write(tables.a.astype("<i4").tobytes())
        fh.write(tables.mu_k.astype("<i4").tobytes())
        fh.write(tables.lambda_k.astype("<f8").tobytes())


def load_tables(path) -> CoeffTables:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise DomainError(f"{path}: not a coefficient-table dump")
        version, delta, N = struct.unpack("<IqQ", fh.read(20))
        if version != _VERSION:
            raise DomainError(f"{path}: unsupported dump version {version}")
        count = N + 1
        a = np.frombuffer(fh.read(4 * count), dtype="<i4").astype(np.int32)
        mu_k = np.frombuffer(fh.read(4 * count), dtype="<i4").astype(np.int32)
        lam = np.frombuffer(fh.read(8 * count), dtype="<f8").astype(np.float64)
    field = quad_field(delta)
    prefix = np.cumsum(mu_k, dtype=np.int64)
    return CoeffTables(field=field, N=int(N), a=a, mu_k=mu_k, lambda_k=lam, prefix=prefix)
