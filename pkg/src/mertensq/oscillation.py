"""Truncated explicit-formula sums and smoothed oscillation means.

The disproof device: exhibit t with h*_{K,T}(t) > 1 or < -1, where

  h*_{K,T}(t) = 2 Re sum_{0<gamma<T} f(gamma/T) e^{i gamma t} / (rho zeta_K'(rho))

with rho = 1/2 + i gamma and the Jurkat-Peyerimhoff kernel
f(y) = (1-y) cos(pi y) + sin(pi y)/pi on [0,1].  Almost-periodicity transfers
such a value to a limit point of x^{-1/2} M_K(x) beyond +-1.

Also the sharp-cutoff variant and the explicit-formula residual
|M_K(x) + M_K*(x) - sum_{|gamma|<=T} x^rho/(rho zeta_K'(rho))|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coeffs import CoeffTables, mertens
from .errors import DomainError, MultiplicityError, PhaseMissingError
from .quadfield import QuadField
from .zeros import ZeroSet

_FLAT_TOL = 1e-12


def jp_kernel(y):
    """(1-y) cos(pi y) + sin(pi y)/pi on [0,1), 0 for y >= 1.

    Non-increasing from f(0)=1 to f(1)=0; the Fejer-like taper that makes the
    smoothed sum converge absolutely as T grows.
    """
    arr = np.asarray(y, dtype=np.float64)
    inside = arr < 1.0
    f = np.where(inside,
                 (1.0 - arr) * np.cos(math.pi * arr) + np.sin(math.pi * arr) / math.pi,
                 0.0)
    return f if np.ndim(y) else float(f)


@dataclass(frozen=True)
class OscSum:
    field: QuadField
    T: float
    kind: str  # "sharp" | "jurkat_peyerimhoff"
    value_at: Callable[[float], float]


def _weights(zeroset: ZeroSet, T: float, kernel: bool) -> tuple[np.ndarray, np.ndarray]:
    """(gamma, kernel-weighted 1/(rho zeta_K'(rho))) for the zeros below T."""
    if T > zeroset.T:
        raise DomainError(f"requested T={T} exceeds the zero set's height {zeroset.T}")
    gammas, derivs = [], []
    for r in zeroset.records:
        beyond = (r.gamma >= T) if kernel else (r.gamma > T)
        if beyond:  # kernel support is [0,1): strict cutoff; sharp sum keeps gamma=T
            continue
        if r.zk_deriv_re is None or r.zk_deriv_im is None:
            raise PhaseMissingError(
                f"zero set for delta={zeroset.delta} lacks zk_deriv_re/zk_deriv_im; "
                f"complex zeta_K'(rho) is required for oscillation sums"
            )
        if r.zk_deriv_abs <= _FLAT_TOL:
            raise MultiplicityError(
                f"|zeta_K'(rho)| = {r.zk_deriv_abs!r} at gamma={r.gamma!r}"
            )
        gammas.append(r.gamma)
        derivs.append(complex(r.zk_deriv_re, r.zk_deriv_im))
    g = np.array(gammas, dtype=np.float64)
    d = np.array(derivs, dtype=np.complex128)
    rho = 0.5 + 1j * g
    w = 1.0 / (rho * d)
    if kernel:
        w = w * jp_kernel(g / T)
    return g, w


def _eval_many(g: np.ndarray, w: np.ndarray, ts: np.ndarray, chunk: int = 1024) -> np.ndarray:
    out = np.empty(len(ts))
    for i in range(0, len(ts), chunk):
        block = ts[i:i + chunk]
        out[i:i + chunk] = 2.0 * np.real(np.exp(1j * np.outer(block, g)) @ w)
    return out


def osc_sum(zeroset: ZeroSet, T: float, kind: str = "jurkat_peyerimhoff") -> OscSum:
    """Package the oscillation sum as a reusable t -> value function."""
    if kind not in ("sharp", "jurkat_peyerimhoff"):
        raise DomainError(f"unknown kind {kind!r}")
    g, w = _weights(zeroset, T, kernel=(kind == "jurkat_peyerimhoff"))

    def value_at(t: float) -> float:
        return float(2.0 * np.real(np.exp(1j * g * t) @ w)) if len(g) else 0.0

    return OscSum(field=zeroset.field, T=float(T), kind=kind, value_at=value_at)


def h_star(zeroset: ZeroSet, T: float, t: float) -> float:
    """The smoothed mean h*_{K,T}(t)."""
    g, w = _weights(zeroset, T, kernel=True)
    if len(g) == 0:
        return 0.0
    return float(2.0 * np.real(np.exp(1j * g * t) @ w))


@dataclass(frozen=True)
class HStarScan:
    field: QuadField
    T: float
    t_grid: np.ndarray
    values: np.ndarray
    min_value: float
    argmin: float
    max_value: float
    argmax: float
    exceed_low: bool  # min < -1
    exceed_high: bool  # max > +1

    @property
    def exceedance(self) -> bool:
        return self.exceed_low or self.exceed_high


def _golden_refine(fn, lo: float, hi: float, maximize: bool, iters: int = 40):
    """Golden-section extremum of fn on [lo, hi]; returns (t, fn(t))."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    sign = -1.0 if maximize else 1.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = sign * fn(c), sign * fn(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = sign * fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = sign * fn(d)
    t = (a + b) / 2.0
    return t, fn(t)


def h_star_scan(zeroset: ZeroSet, T: float, t_range: tuple[float, float],
                step: float = 0.01) -> HStarScan:
    """Grid scan of h* over t_range with golden-section refinement of the two
    grid extrema; flags any exceedance beyond +-1."""
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    t0, t1 = float(t_range[0]), float(t_range[1])
    if t1 < t0:
        raise DomainError(f"empty t range [{t0}, {t1}]")
    g, w = _weights(zeroset, T, kernel=True)
    m = int(math.floor((t1 - t0) / step + 1e-9)) + 1
    ts = t0 + step * np.arange(m)
    if len(g) == 0:
        vals = np.zeros(m)
        return HStarScan(field=zeroset.field, T=float(T), t_grid=ts, values=vals,
                         min_value=0.0, argmin=t0, max_value=0.0, argmax=t0,
                         exceed_low=False, exceed_high=False)
    vals = _eval_many(g, w, ts)

    def fn(t: float) -> float:
        return float(2.0 * np.real(np.exp(1j * g * t) @ w))

    i_min, i_max = int(np.argmin(vals)), int(np.argmax(vals))
    lo_t, lo_v = _golden_refine(fn, max(t0, ts[i_min] - step), min(t1, ts[i_min] + step),
                                maximize=False)
    hi_t, hi_v = _golden_refine(fn, max(t0, ts[i_max] - step), min(t1, ts[i_max] + step),
                                maximize=True)
    if lo_v > vals[i_min]:
        lo_t, lo_v = float(ts[i_min]), float(vals[i_min])
    if hi_v < vals[i_max]:
        hi_t, hi_v = float(ts[i_max]), float(vals[i_max])
    return HStarScan(field=zeroset.field, T=float(T), t_grid=ts, values=vals,
                     min_value=lo_v, argmin=lo_t, max_value=hi_v, argmax=hi_t,
                     exceed_low=lo_v < -1.0, exceed_high=hi_v > 1.0)


def write_scan_csv(scan: HStarScan, path) -> None:
    """(t, h_star) rows followed by a summary comment block."""
    with open(path, "w") as fh:
        fh.write("t,h_star\n")
        for t, v in zip(scan.t_grid, scan.values):
            fh.write(f"{float(t)!r},{float(v)!r}\n")
        fh.write(f"# min={scan.min_value!r} argmin={scan.argmin!r}\n")
        fh.write(f"# max={scan.max_value!r} argmax={scan.argmax!r}\n")
        fh.write(f"# exceedance={int(scan.exceedance)}\n")


def explicit_formula_residual(tables: CoeffTables, mstar_fn, zeroset: ZeroSet,
                              x: float, T: float) -> float:
    """|M_K(x) + M_K*(x) - 2 Re sum_{0<gamma<=T} x^rho/(rho zeta_K'(rho))|.

    mstar_fn is called as mstar_fn(field, x) and may return a float or an
    object with .value (an MStarEval).
    """
    if x < 2:
        raise DomainError(f"explicit-formula residual wants x >= 2, got {x}")
    g, w = _weights(zeroset, T, kernel=False)
    osc = 0.0
    if len(g):
        osc = float(2.0 * np.real((math.sqrt(x) * np.exp(1j * g * math.log(x))) @ w))
    ms = mstar_fn(tables.field, x)
    ms_val = getattr(ms, "value", ms)
    return abs(mertens(tables, x) + ms_val - osc)
