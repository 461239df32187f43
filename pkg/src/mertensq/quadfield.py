"""Quadratic field descriptors and base integer arithmetic.

A field K = Q(sqrt(d)) is identified by its signed fundamental discriminant
delta (e.g. -4 for Q(i), 5 for Q(sqrt 5)); the attached real primitive
character is the Kronecker symbol chi_delta(n) = (delta/n), a character
mod |delta|.  This module also houses the plain-integer helpers the sieves
need: primes and the Mobius function over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

# ---------------------------------------------------------------------------
# integer arithmetic
# ---------------------------------------------------------------------------


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, ascending (empty for n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def mobius_sieve(N: int) -> np.ndarray:
    """mu(n) for 0 <= n <= N as int8 (index 0 is unused and set to 0)."""
    if N < 1:
        raise DomainError(f"mobius_sieve needs N >= 1, got {N}")
    mu = np.ones(N + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(N):
        mu[p::p] *= -1
        sq = p * p
        if sq <= N:
            mu[sq::sq] = 0
    return mu


def _squarefree(m: int) -> bool:
    m = abs(m)
    if m % 4 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 2
    return True


def is_fundamental_discriminant(d: int) -> bool:
    """True iff d is the discriminant of a quadratic field (d != 0, 1).

    d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree.
    Total function: never raises.
    """
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker(delta: int, n: int) -> int:
    """Kronecker symbol (delta/n), completely multiplicative in n.

    Binary algorithm: pull out factors of 2 with the 2-adic supplementary
    rule (delta/2) = 0, +1, -1 for delta = 0, +-1, +-3 mod 8, then flip via
    quadratic reciprocity on the odd parts.
    """
    a = delta
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        n = -n
        k = -1 if a < 0 else 1
    else:
        k = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    a %= n  # Python % makes this the non-negative residue
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def fundamental_discriminants(limit: int, sign: str) -> np.ndarray:
    """Absolute values D of fundamental discriminants with D <= limit.

    sign="imaginary" lists D with -D fundamental (D = 3 mod 4 squarefree or
    D = 4m, m = 1,2 mod 4 squarefree); sign="real" lists fundamental D > 0.
    Vectorised so threshold scans to 1e5 stay cheap.
    """
    if sign not in ("imaginary", "real"):
        raise DomainError(f"sign must be 'imaginary' or 'real', got {sign!r}")
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    sf = mobius_sieve(limit) != 0
    n = np.arange(limit + 1)
    m = np.arange(limit // 4 + 1)
    sf_m = sf[: limit // 4 + 1]
    if sign == "imaginary":
        direct = (n % 4 == 3) & sf
        via4 = ((m % 4 == 1) | (m % 4 == 2)) & sf_m
    else:
        direct = (n % 4 == 1) & sf
        direct[1] = False  # discriminant 1 is excluded
        via4 = ((m % 4 == 2) | (m % 4 == 3)) & sf_m
    out = np.concatenate([n[direct], 4 * m[via4]])
    out.sort()
    return out.astype(np.int64)


# ---------------------------------------------------------------------------
# field and character descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadField:
    """A quadratic field keyed by its signed fundamental discriminant."""

    delta: int
    abs_disc: int
    signature: tuple[int, int]  # (r1, r2): (0,1) imaginary, (2,0) real
    parity: str  # character parity: "odd" iff delta < 0

    def character(self) -> "Character":
        return character_for(self.delta)

    @property
    def is_imaginary(self) -> bool:
        return self.delta < 0


@dataclass(eq=False)
class Character:
    """The real primitive character chi_delta(n) = (delta/n) mod |delta|."""

    delta: int
    modulus: int
    _table: np.ndarray | None = field(default=None, init=False, repr=False)

    def table(self) -> np.ndarray:
        """chi(n) for n = 0..D-1 as int8, built by a multiplicative sieve.

        Each prime power slice p^k multiplies in one factor chi(p), so
        chi(n) = prod chi(p)^{v_p(n)}; chi(p) = 0 zeroes the multiples of p.
        """
        if self._table is None:
            D = self.modulus
            vals = np.ones(D, dtype=np.int8)
            vals[0] = 0
            for p in primes_up_to(D - 1):
                v = kronecker(self.delta, int(p))
                if v == 0:
                    vals[p::p] = 0
                elif v == -1:
                    q = p
                    while q < D:
                        vals[q::q] *= -1
                        q *= p
            self._table = vals
        return self._table

    def values(self, n: int) -> int:
        """chi(n) for any integer n (periodic with period D, chi(-1)=sign delta)."""
        return int(self.table()[n % self.modulus])

    __call__ = values

    @property
    def parity_bit(self) -> int:
        """0 for even characters (delta > 0), 1 for odd (delta < 0)."""
        return 1 if self.delta < 0 else 0


def quad_field(delta: int) -> QuadField:
    """Build the QuadField for a fundamental discriminant, validating it."""
    if not is_fundamental_discriminant(delta):
        raise DomainError(f"{delta} is not a fundamental discriminant")
    signature = (0, 1) if delta < 0 else (2, 0)
    parity = "odd" if delta < 0 else "even"
    return QuadField(delta=delta, abs_disc=abs(delta), signature=signature, parity=parity)


@lru_cache(maxsize=256)
def character_for(delta: int) -> Character:
    if not is_fundamental_discriminant(delta):
        raise DomainError(f"{delta} is not a fundamental discriminant")
    return Character(delta=delta, modulus=abs(delta))
