"""Empirical logarithmic limiting distribution of phi_K(y) = e^{-y/2} M_K(e^y).

Pieces:
  sample_phi             phi_K on a uniform y-grid + histogram + C_emp
  empirical_cf           (1/(Y-y0)) int e^{-i xi phi_K(y)} dy  (trapezoid)
  log_density            (1/log X) int_{[1,X], |M_K| <= beta sqrt(t)} dt/t
  weak_mertens_integral  int_0^Y (M_K(e^y) e^{-y/2})^2 dy, exact piecewise
  bessel_j0_tilde        J0 via the periodized integral int_0^1 e^{-iz cos 2 pi t} dt
  nu_hat_theoretical     prod_{gamma>0} J0(2 xi / |rho zeta_K'(rho)|)^2
  beta_partial           2 sum_{0<gamma<=T} |rho zeta_K'(rho)|^{-2}

M_K is a step function, so every y- and t-integral here is summed in closed
form between consecutive jumps; no quadrature error enters except in J0
itself (spectrally convergent trapezoid on a periodic integrand).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import CoeffTables
from .errors import DomainError, MultiplicityError
from .quadfield import QuadField
from .zeros import ZeroSet

# ---------------------------------------------------------------------------
# sampling phi_K
# ---------------------------------------------------------------------------

_DEFAULT_BINS = 200


@dataclass(eq=False)
class EmpiricalDist:
    field: QuadField
    y0: float
    Y: float
    step: float
    samples: np.ndarray  # phi_K on the closed grid y0, y0+step, ...
    hist: tuple[np.ndarray, np.ndarray]  # (bin edges, masses summing to 1)
    beta_series: float | None = None  # 2 sum |rho zeta_K'(rho)|^{-2}, if attached

    @property
    def c_emp(self) -> float:
        """max |phi_K| over the sample grid."""
        return float(np.max(np.abs(self.samples)))

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples))

    def mass_within(self, lo: float, hi: float) -> float:
        """Fraction of samples in [lo, hi] -- the nu_K([lo,hi]) estimate."""
        s = self.samples
        return float(np.count_nonzero((s >= lo) & (s <= hi)) / s.size)


def sample_phi(tables: CoeffTables, y0: float, Y: float, step: float,
               bins: int = _DEFAULT_BINS, zeroset: ZeroSet | None = None) -> EmpiricalDist:
    """phi_K(y) = e^{-y/2} M_K(e^y) on the closed grid y0, y0+step, ..., <= Y.

    Needs e^Y <= sieve bound.  M_K takes the half-weight value at integer
    e^y (measure-zero grid hits).  When a zeroset is supplied its
    beta_partial value is attached as beta_series.
    """
    if not (0 < y0 < Y):
        raise DomainError(f"need 0 < y0 < Y, got y0={y0}, Y={Y}")
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    if math.exp(Y) > tables.N:
        raise DomainError(f"e^Y = {math.exp(Y):.1f} exceeds sieve bound {tables.N}")
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")

    m = int(math.floor((Y - y0) / step + 1e-9))
    ys = y0 + step * np.arange(m + 1)
    x = np.exp(ys)
    ix = np.floor(x).astype(np.int64)
    mv = tables.prefix[ix].astype(np.float64)
    exact = x == ix  # half-weight convention at integer grid hits
    if np.any(exact):
        mv[exact] = tables.prefix[ix[exact] - 1] + 0.5 * tables.mu_k[ix[exact]]
    samples = np.exp(-ys / 2) * mv

    counts, edges = np.histogram(samples, bins=bins)
    masses = counts / samples.size
    beta = None if zeroset is None else beta_partial(zeroset)
    return EmpiricalDist(field=tables.field, y0=y0, Y=Y, step=step,
                         samples=samples, hist=(edges, masses), beta_series=beta)


def empirical_cf(dist: EmpiricalDist, xi: float) -> complex:
    """(1/(Y-y0)) int_{y0}^{Y} e^{-i xi phi_K(y)} dy by trapezoid on the grid.

    Exactly 1 at xi = 0 (the trapezoid weights sum to the interval length).
    """
    vals = np.exp(-1j * xi * dist.samples)
    m = dist.samples.size - 1
    if m == 0:
        return complex(vals[0])
    # python-complex arithmetic: numpy's complex scalar division rounds even
    # exact quotients, which would break the ecf(0) = 1 identity
    total = complex(np.sum(vals)) - 0.5 * complex(vals[0] + vals[-1])
    return complex(total.real / m, total.imag / m)


# ---------------------------------------------------------------------------
# logarithmic density and the weak Mertens integral (exact piecewise)
# ---------------------------------------------------------------------------


def log_density(tables: CoeffTables, beta: float, X: float) -> float:
    """(1/log X) * logarithmic measure of {t in [1,X] : |M_K(t)| <= beta sqrt(t)}.

    On [n, n+1) the step value is M = prefix[n], and |M| <= beta sqrt(t) iff
    t >= (M/beta)^2, so each segment contributes log(b/max(a, (M/beta)^2))
    when positive -- an exact closed form per segment.
    """
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if X <= 1:
        raise DomainError(f"X must exceed 1, got {X}")
    if X > tables.N:
        raise DomainError(f"X = {X} exceeds sieve bound {tables.N}")
    n = np.arange(1, int(math.floor(X)) + 1)
    a = n.astype(np.float64)
    b = np.minimum(a + 1.0, X)
    mval = tables.prefix[n].astype(np.float64)
    tstar = (mval / beta) ** 2
    lo = np.maximum(a, tstar)
    contrib = np.where(lo < b, np.log(b / np.maximum(lo, 1e-300)), 0.0)
    return float(np.sum(contrib) / math.log(X))


def weak_mertens_integral(tables: CoeffTables, Y: float) -> float:
    """int_0^Y (M_K(e^y) e^{-y/2})^2 dy, exactly.

    Between y = log n and log(n+1) the integrand is prefix[n]^2 e^{-y}, so the
    segment integral is prefix[n]^2 (1/n - e^{-b}).
    """
    if Y <= 0:
        raise DomainError(f"Y must be positive, got {Y}")
    if math.exp(Y) > tables.N:
        raise DomainError(f"e^Y = {math.exp(Y):.1f} exceeds sieve bound {tables.N}")
    nmax = int(math.floor(math.exp(Y)))
    n = np.arange(1, nmax + 1, dtype=np.float64)
    ea = 1.0 / n
    eb = 1.0 / (n + 1.0)
    if eb.size:
        eb[-1] = max(math.exp(-Y), eb[-1])  # last segment may be cut at Y
    msq = tables.prefix[1:nmax + 1].astype(np.float64) ** 2
    return float(np.sum(msq * (ea - eb)))


# ---------------------------------------------------------------------------
# theoretical Fourier transform: Bessel product over zeros
# ---------------------------------------------------------------------------

_J0_MAX_ARG = 1e3


def bessel_j0_tilde(z: float) -> float:
    """J0(z) as int_0^1 e^{-i z cos(2 pi t)} dt (imaginary part cancels).

    Trapezoid with max(128, 4 ceil|z|) points -- on a smooth periodic
    integrand this converges faster than any power of the step.
    """
    az = abs(z)
    if az > _J0_MAX_ARG:
        raise DomainError(f"|z| = {az} beyond supported range {_J0_MAX_ARG}")
    npts = max(128, 4 * int(math.ceil(az)))
    t = np.arange(npts) / npts
    return float(np.mean(np.cos(z * np.cos(2 * np.pi * t))))


def _rho_deriv_moduli(zeroset: ZeroSet, T: float | None = None) -> np.ndarray:
    """|rho zeta_K'(rho)| for stored zeros with gamma <= T; simplicity-checked."""
    cut = zeroset.T if T is None else T
    out = []
    for r in zeroset.records:
        if r.gamma > cut:
            continue
        if r.zk_deriv_abs <= 1e-12:
            raise MultiplicityError(
                f"|zeta_K'(rho)| = {r.zk_deriv_abs!r} at gamma={r.gamma!r}; "
                f"zero too flat to invert"
            )
        out.append(math.hypot(0.5, r.gamma) * r.zk_deriv_abs)
    return np.array(out)


def nu_hat_theoretical(zeroset: ZeroSet, xi: float) -> float:
    """Truncated nu_K-hat(xi) = prod_{0<gamma<=T} J0(2 xi / |rho zeta_K'(rho)|)^2.

    The conjugate zero -gamma carries the same |rho zeta_K'(rho)|, so each
    recorded gamma > 0 contributes its factor squared.
    """
    moduli = _rho_deriv_moduli(zeroset)
    prod = 1.0
    for mod in moduli:
        prod *= bessel_j0_tilde(2 * xi / mod) ** 2
    return prod


def beta_partial(zeroset: ZeroSet, T: float | None = None) -> float:
    """beta = 2 sum_{0<gamma<=T} |rho zeta_K'(rho)|^{-2}, truncated at T."""
    moduli = _rho_deriv_moduli(zeroset, T)
    return float(2.0 * np.sum(moduli ** -2.0)) if moduli.size else 0.0


# ---------------------------------------------------------------------------
# CSV emitters (plotting happens elsewhere)
# ---------------------------------------------------------------------------


def _meta_line(dist: EmpiricalDist) -> str:
    return (f"# delta={dist.field.delta} y0={dist.y0!r} Y={dist.Y!r} "
            f"step={dist.step!r} samples={dist.samples.size}")


def write_histogram_csv(dist: EmpiricalDist, path) -> None:
    edges, masses = dist.hist
    with open(path, "w") as fh:
        fh.write(_meta_line(dist) + "\n")
        fh.write("bin_lo,bin_hi,mass\n")
        for lo, hi, ms in zip(edges[:-1], edges[1:], masses):
            fh.write(f"{float(lo)!r},{float(hi)!r},{float(ms)!r}\n")


def write_cdf_csv(dist: EmpiricalDist, path) -> None:
    edges, masses = dist.hist
    cum = np.cumsum(masses)
    with open(path, "w") as fh:
        fh.write(_meta_line(dist) + "\n")
        fh.write("value,cdf\n")
        fh.write(f"{float(edges[0])!r},0.0\n")
        for hi, c in zip(edges[1:], cum):
            fh.write(f"{float(hi)!r},{float(c)!r}\n")


def write_cf_csv(dist: EmpiricalDist, xi_values, path,
                 zeroset: ZeroSet | None = None) -> None:
    """xi, Re/Im of the empirical characteristic function, and (optionally)
    the truncated theoretical nu_K-hat alongside."""
    with open(path, "w") as fh:
        fh.write(_meta_line(dist) + "\n")
        fh.write("xi,ecf_re,ecf_im" + (",nu_hat" if zeroset is not None else "") + "\n")
        for xi in xi_values:
            cf = empirical_cf(dist, float(xi))
            row = f"{float(xi)!r},{cf.real!r},{cf.imag!r}"
            if zeroset is not None:
                row += f",{nu_hat_theoretical(zeroset, float(xi))!r}"
            fh.write(row + "\n")
