"""Nontrivial zeros of zeta_K = zeta * L(., chi) on the critical line.

Each factor gets a real Hardy function Z(t) = Re[e^{i theta(t)} F(1/2+it)]
(the root number of a real primitive character is +1, so Z is real and its
sign changes are zeros).  F is evaluated by Euler-Maclaurin on the critical
line with N = max(64, ceil(t)) initial terms and Bernoulli corrections
through B_12; the standard remainder envelope (first omitted correction times
|s+2J+1|/(sigma+2J+1)) stays below 1e-9 for t <= 1000.

Zeros are located by sign changes on a 0.05-grid, refined by Brent's method,
and stored with zeta_K'(rho) = F'(rho) G(rho), F' by a Richardson-extrapolated
central difference along the line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import loggamma

from .errors import (AccuracyError, DomainError, MultiplicityError,
                     ZeroFileFormatError)
from .quadfield import Character, QuadField, quad_field

_GRID_STEP = 0.05
_BRENT_XTOL = 1e-12
_COLLISION_GAP = 1e-6
_EM_TOL = 1e-9
_BERN = {2: 1.0 / 6, 4: -1.0 / 30, 6: 1.0 / 42, 8: -1.0 / 30,
         10: 5.0 / 66, 12: -691.0 / 2730, 14: 7.0 / 6}
_EM_J = 6  # corrections through B_{2J}


@dataclass(frozen=True)
class ZeroRecord:
    component: str  # "zeta" | "chi"
    gamma: float
    zk_deriv_abs: float
    refine_err: float
    zk_deriv_re: float | None = None
    zk_deriv_im: float | None = None


@dataclass(eq=False)
class ZeroSet:
    delta: int
    T: float
    records: list[ZeroRecord]  # ascending gamma, 0 < gamma <= T
    provenance: str  # "computed" | "ingested"

    @property
    def field(self) -> QuadField:
        return quad_field(self.delta)


# ---------------------------------------------------------------------------
# critical-line Euler-Maclaurin
# ---------------------------------------------------------------------------


def _hurwitz_line(t: np.ndarray, alpha: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    """(zeta(1/2+it, alpha), remainder bound) for an array of ordinates t."""
    s = 0.5 + 1j * t
    n = alpha + np.arange(N, dtype=np.float64)
    ln = np.log(n)
    mat = np.exp(-1j * np.outer(t, ln)) * (n ** -0.5)[None, :]
    val = mat.sum(axis=1)
    na = alpha + N
    lna = math.log(na)
    na_ms = np.exp(-s * lna)  # na^{-s}
    val = val + na_ms * na / (s - 1.0) + 0.5 * na_ms
    poch = np.ones_like(s)
    top = 0
    omitted = None
    for j in range(1, _EM_J + 2):
        while top < 2 * j - 1:
            poch = poch * (s + top)
            top += 1
        term = _BERN[2 * j] / math.factorial(2 * j) * poch * na_ms * na ** (-(2 * j - 1))
        if j <= _EM_J:
            val = val + term
        else:
            omitted = term
    bound = np.abs(omitted) * np.abs(s + 2 * _EM_J + 1) / (0.5 + 2 * _EM_J + 1)
    return val, bound


def _check_bound(bound: np.ndarray) -> None:
    worst = float(np.max(bound)) if bound.size else 0.0
    if worst > _EM_TOL:
        raise AccuracyError(
            f"Euler-Maclaurin remainder {worst:.3e} exceeds {_EM_TOL:.0e}; "
            f"ordinate out of the supported range"
        )


def _zeta_line(t: np.ndarray) -> np.ndarray:
    """zeta(1/2 + it), vectorised."""
    t = np.asarray(t, dtype=np.float64)
    N = max(64, int(math.ceil(float(np.max(t, initial=0.0)))))
    val, bound = _hurwitz_line(t, 1.0, N)
    _check_bound(bound)
    return val


def _l_line(chi: Character, t: np.ndarray) -> np.ndarray:
    """L(1/2 + it, chi), vectorised."""
    t = np.asarray(t, dtype=np.float64)
    D = chi.modulus
    N = max(64, int(math.ceil(float(np.max(t, initial=0.0)))))
    s = 0.5 + 1j * t
    total = np.zeros_like(s)
    worst = np.zeros(t.shape)
    table = chi.table()
    for a in np.nonzero(table)[0]:
        val, bound = _hurwitz_line(t, float(a) / D, N)
        total += float(table[a]) * val
        worst = np.maximum(worst, bound)
    _check_bound(worst)
    return np.exp(-s * math.log(D)) * total


def _theta_zeta(t: np.ndarray) -> np.ndarray:
    return np.imag(loggamma(0.25 + 0.5j * t)) - 0.5 * t * math.log(math.pi)


def _theta_chi(chi: Character, t: np.ndarray) -> np.ndarray:
    a = chi.parity_bit
    return (np.imag(loggamma(0.25 + 0.5 * a + 0.5j * t))
            + 0.5 * t * math.log(chi.modulus / math.pi))


def hardy_z_zeta(t):
    """Hardy's Z for zeta: real, with Z(t)=0 iff zeta(1/2+it)=0."""
    arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    z = np.real(np.exp(1j * _theta_zeta(arr)) * _zeta_line(arr))
    return z if np.ndim(t) else float(z[0])


def hardy_z_dirichlet(chi: Character, t):
    """Hardy-style Z for L(s, chi), chi real primitive (root number +1)."""
    if chi.modulus < 3:
        raise DomainError(f"need a primitive character of modulus >= 3, got {chi.modulus}")
    arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    z = np.real(np.exp(1j * _theta_chi(chi, arr)) * _l_line(chi, arr))
    return z if np.ndim(t) else float(z[0])


# ---------------------------------------------------------------------------
# zero location
# ---------------------------------------------------------------------------


def _chunked(fn, ts: np.ndarray, chunk: int = 2048) -> np.ndarray:
    out = np.empty_like(ts)
    for i in range(0, len(ts), chunk):
        out[i:i + chunk] = fn(ts[i:i + chunk])
    return out


def _scan_component(zfn, T: float, step: float) -> list[float]:
    m = int(math.floor(T / step + 1e-9))
    ts = step * np.arange(1, m + 1)
    if len(ts) < 2:
        return []
    zv = _chunked(zfn, ts)
    sign_change = np.nonzero(np.sign(zv[:-1]) * np.sign(zv[1:]) < 0)[0]
    roots = []
    for i in sign_change:
        r = brentq(lambda t: float(zfn(np.array([t]))[0]),
                   float(ts[i]), float(ts[i + 1]), xtol=_BRENT_XTOL)
        roots.append(float(r))
    # a grid point may land exactly on a zero; record it once
    exact = np.nonzero(zv == 0.0)[0]
    for i in exact:
        roots.append(float(ts[i]))
    return sorted(roots)


def expected_count(field: QuadField, T: float) -> float:
    """Asymptotic number of zeros with |gamma| <= T (both signs):
    (T/pi) log(D (T/2 pi e)^2)."""
    D = field.abs_disc
    return (T / math.pi) * math.log(D * (T / (2 * math.pi * math.e)) ** 2)


def _derivatives(line_fn, other_fn, gammas: np.ndarray) -> np.ndarray:
    """zeta_K'(rho) = F'(rho) G(rho) at rho = 1/2 + i gamma for each component
    zero; F' by Richardson central differences along the line (exact to O(h^4))."""
    if len(gammas) == 0:
        return np.zeros(0, dtype=np.complex128)
    h = 1e-5
    pts = np.concatenate([gammas + h, gammas - h, gammas + h / 2, gammas - h / 2])
    fv = line_fn(pts)
    m = len(gammas)
    d_h = (fv[0:m] - fv[m:2 * m]) / (2 * h)
    d_h2 = (fv[2 * m:3 * m] - fv[3 * m:4 * m]) / h
    df_dt = (4.0 * d_h2 - d_h) / 3.0
    f_prime = -1j * df_dt  # d/dt F(1/2+it) = i F'(s)
    return f_prime * other_fn(gammas)


def find_zeros(field: QuadField, T: float, step: float = _GRID_STEP) -> ZeroSet:
    """All zeros of zeta_K with 0 < gamma <= T, as a computed ZeroSet.

    Scans Hardy functions of both factors on a uniform grid; if the count
    deviates from the asymptotic expectation by more than 2% (for T >= 50),
    rescans once at half the step to pick up close pairs.
    """
    if T <= 0:
        raise DomainError(f"T must be positive, got {T}")
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    chi = field.character()

    def zf(ts):
        return np.real(np.exp(1j * _theta_zeta(ts)) * _zeta_line(ts))

    def cf(ts):
        return np.real(np.exp(1j * _theta_chi(chi, ts)) * _l_line(chi, ts))

    cur = step
    for _ in range(2):
        zeta_roots = _scan_component(zf, T, cur)
        chi_roots = _scan_component(cf, T, cur)
        found = 2 * (len(zeta_roots) + len(chi_roots))
        expect = expected_count(field, T)
        if T < 50 or expect <= 0 or abs(found - expect) / expect <= 0.02:
            break
        cur /= 2.0
    zg = np.array(zeta_roots)
    cg = np.array(chi_roots)
    zd = _derivatives(_zeta_line, lambda g: _l_line(chi, g), zg)
    cd = _derivatives(lambda g: _l_line(chi, g), _zeta_line, cg)
    records = []
    for comp, gs, ds in (("zeta", zg, zd), ("chi", cg, cd)):
        for g, d in zip(gs, ds):
            records.append(ZeroRecord(component=comp, gamma=float(g),
                                      zk_deriv_abs=float(abs(d)),
                                      refine_err=_BRENT_XTOL,
                                      zk_deriv_re=float(d.real),
                                      zk_deriv_im=float(d.imag)))
    records.sort(key=lambda r: r.gamma)
    for a, b in zip(records, records[1:]):
        if b.gamma - a.gamma < _COLLISION_GAP:
            raise MultiplicityError(
                f"zeros at gamma={a.gamma!r} ({a.component}) and {b.gamma!r} "
                f"({b.component}) closer than {_COLLISION_GAP}; multiple zero suspected"
            )
    return ZeroSet(delta=field.delta, T=float(T), records=records, provenance="computed")


# ---------------------------------------------------------------------------
# diagnostics and partial sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    total_found: int  # both signs (2x stored records)
    expected_total: float
    rel_dev: float
    max_unit_window: int
    unit_window_bound: float
    ok: bool


def count_sanity(zeroset: ZeroSet, c0: float = 3.0) -> CountReport:
    """Zero-count diagnostics: global density against the asymptotic count and
    a per-unit-window cap c0 (log D + 2 log T)."""
    field = zeroset.field
    T = zeroset.T
    total = 2 * len(zeroset.records)
    expect = expected_count(field, T)
    rel = abs(total - expect) / expect if expect > 0 else math.inf
    gammas = np.array([r.gamma for r in zeroset.records])
    maxw = 0
    for k in range(int(math.ceil(T))):
        maxw = max(maxw, int(np.sum((gammas >= k) & (gammas < k + 1))))
    bound = c0 * (math.log(field.abs_disc) + 2.0 * math.log(max(T, math.e)))
    return CountReport(total_found=total, expected_total=expect, rel_dev=rel,
                       max_unit_window=maxw, unit_window_bound=bound,
                       ok=(rel < 0.05) and (maxw <= bound))


def j_minus_one_partial(zeroset: ZeroSet, T: float | None = None) -> float:
    """sum_{0 < gamma <= T} |zeta_K'(rho)|^{-2} over the stored zeros."""
    cut = zeroset.T if T is None else T
    total = 0.0
    for r in zeroset.records:
        if r.gamma > cut:
            continue
        if r.zk_deriv_abs <= 1e-12:
            raise MultiplicityError(
                f"|zeta_K'(rho)| = {r.zk_deriv_abs!r} at gamma={r.gamma!r}; "
                f"zero too flat to invert"
            )
        total += r.zk_deriv_abs ** -2
    return total


# ---------------------------------------------------------------------------
# CSV persistence
# ---------------------------------------------------------------------------

_HEADER4 = "component,gamma,zk_deriv_abs,refine_err"
_HEADER6 = _HEADER4 + ",zk_deriv_re,zk_deriv_im"


def write_zeros(zeroset: ZeroSet, path) -> None:
    """CSV with a metadata comment; repr-precision floats round-trip exactly."""
    has_phase = all(r.zk_deriv_re is not None for r in zeroset.records)
    with open(path, "w") as fh:
        fh.write(f"# delta={zeroset.delta} T={zeroset.T!r} provenance={zeroset.provenance}\n")
        fh.write((_HEADER6 if has_phase else _HEADER4) + "\n")
        for r in zeroset.records:
            row = f"{r.component},{r.gamma!r},{r.zk_deriv_abs!r},{r.refine_err!r}"
            if has_phase:
                row += f",{r.zk_deriv_re!r},{r.zk_deriv_im!r}"
            fh.write(row + "\n")


_META_RE = re.compile(r"^# delta=(-?\d+) T=([0-9eE.+-]+) provenance=(computed|ingested)$")


def read_zeros(path) -> ZeroSet:
    """Inverse of write_zeros; raises ZeroFileFormatError with the 1-based
    offending line number on malformed input."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ZeroFileFormatError("empty zero file", line=1)
    m = _META_RE.match(lines[0])
    if not m:
        raise ZeroFileFormatError(f"bad metadata comment {lines[0]!r}", line=1)
    delta, T, provenance = int(m.group(1)), float(m.group(2)), m.group(3)
    if len(lines) < 2 or lines[1] not in (_HEADER4, _HEADER6):
        got = lines[1] if len(lines) > 1 else ""
        raise ZeroFileFormatError(f"bad header {got!r}", line=2)
    with_phase = lines[1] == _HEADER6
    ncol = 6 if with_phase else 4
    records = []
    prev = 0.0
    for i, raw in enumerate(lines[2:], start=3):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != ncol:
            raise ZeroFileFormatError(f"expected {ncol} fields, got {len(parts)}", line=i)
        if parts[0] not in ("zeta", "chi"):
            raise ZeroFileFormatError(f"unknown component {parts[0]!r}", line=i)
        try:
            nums = [float(p) for p in parts[1:]]
        except ValueError as exc:
            raise ZeroFileFormatError(f"unparseable number ({exc})", line=i) from None
        if not (0.0 < nums[0] <= T):
            raise ZeroFileFormatError(f"gamma {nums[0]!r} outside (0, T]", line=i)
        if nums[0] < prev:
            raise ZeroFileFormatError(f"gamma {nums[0]!r} not ascending", line=i)
        prev = nums[0]
        records.append(ZeroRecord(
            component=parts[0], gamma=nums[0], zk_deriv_abs=nums[1], refine_err=nums[2],
            zk_deriv_re=nums[3] if with_phase else None,
            zk_deriv_im=nums[4] if with_phase else None))
    try:
        quad_field(delta)
    except DomainError:
        raise ZeroFileFormatError(f"delta={delta} is not a fundamental discriminant",
                                  line=1) from None
    return ZeroSet(delta=delta, T=T, records=records, provenance=provenance)
