"""Command-line front end: reproducible runs with CSV/text/json output.

Subcommands:
  mertens          M_K(x) point values or a mu_K / M_K prefix table
  tables           M_K*(1) over all fundamental discriminants up to a bound
  counterexamples  smallest n with M_K(n+)+M_K*(n) > sqrt(n) per field
  zeros            find zeros of zeta*L up to height T, write the CSV
  hstar            smoothed oscillation h*_{K,T}(t), point or scan
  dist             empirical logarithmic distribution of phi_K, CSV emitters
  report           CSV bundle + PNG figures for one field in one directory

Exit codes: 0 success / exceedance found; 1 clean not-found; 2 bad usage or
domain validation; 3 numeric-accuracy abort; 4 I/O or zero-file format error.

Thread count comes from --threads or MERTENSQ_THREADS (scan partitioning is
ordered, so outputs are byte-identical regardless of the value).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import distribution as dist_mod
from .coeffs import build_tables, mertens, mertens_right_limit
from .errors import (AccuracyError, DomainError, PhaseMissingError,
                     ResourceError, ZeroFileFormatError)
from .mstar import counterexample_search, mstar, table_scan
from .oscillation import h_star, h_star_scan, write_scan_csv
from .quadfield import fundamental_discriminants, quad_field
from .zeros import count_sanity, find_zeros, read_zeros, write_zeros

# ---------------------------------------------------------------------------
# formatting / output plumbing
# ---------------------------------------------------------------------------


def _trunc4(v: float) -> str:
    return f"{math.trunc(v * 10000) / 10000:.4f}"


def _round4(v: float) -> str:
    return f"{v:.4f}"


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _render(columns: list[str], rows: list[list], fmt: str) -> str:
    """rows of already-stringified cells -> csv / aligned text / json."""
    if fmt == "csv":
        out = [",".join(columns)]
        out += [",".join(r) for r in rows]
        return "\n".join(out) + "\n"
    if fmt == "text":
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
                  for i, c in enumerate(columns)]
        out = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
        for r in rows:
            out.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
        return "\n".join(out) + "\n"
    # json: parse the cells back so numbers stay numbers
    recs = []
    for r in rows:
        rec = {}
        for c, cell in zip(columns, r):
            try:
                rec[c] = json.loads(cell)
            except (json.JSONDecodeError, ValueError):
                rec[c] = cell
            except Exception:
                rec[c] = cell
        recs.append(rec)
    return json.dumps(recs, sort_keys=True) + "\n"


def _sieve_bound(x: float) -> int:
    return int(math.floor(x)) + 2


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_mertens(args) -> int:
    field = quad_field(args.delta)
    if args.x is None and args.n_max is None:
        raise DomainError("mertens needs --x or --n-max")
    if args.x is not None:
        tab = build_tables(field, _sieve_bound(args.x))
        if args.right_limit:
            if args.x != int(args.x):
                raise DomainError(f"--right-limit needs integer x, got {args.x}")
            val: float = mertens_right_limit(tab, int(args.x))
            xs = str(int(args.x))
        else:
            val = mertens(tab, args.x)
            xs = repr(args.x)
        _emit(_render(["delta", "x", "value"], [[str(args.delta), xs, repr(val)]],
                      args.format), args.output)
        return 0
    tab = build_tables(field, args.n_max)
    rows = [[str(n), str(int(tab.mu_k[n])), str(int(tab.prefix[n]))]
            for n in range(1, args.n_max + 1)]
    _emit(_render(["n", "mu_k", "mertens_plus"], rows, args.format), args.output)
    return 0


def cmd_tables(args) -> int:
    sign = "imaginary" if args.imaginary else "real"
    pairs = table_scan(sign, args.dmax, x=args.x, k_max=args.kmax,
                       threads=args.threads)
    fmt_val = _round4 if args.paper_parity else repr
    rows = [[str(D), fmt_val(v)] for D, v in pairs]
    _emit(_render(["D", "mstar_1"], rows, args.format), args.output)
    return 0


def cmd_counterexamples(args) -> int:
    sign = "imaginary" if args.imaginary else "real"
    if args.d:
        dlist = args.d
    elif args.dmax:
        dlist = [int(D) for D in fundamental_discriminants(args.dmax, sign)]
    else:
        raise DomainError("counterexamples needs --d or --dmax")
    fmt_ratio = _trunc4 if args.paper_parity else repr
    rows = []
    for D in dlist:
        field = quad_field(-D if args.imaginary else D)
        hit = counterexample_search(field, args.n_max, k_max=args.kmax)
        if hit is not None:
            n, ratio = hit
            rows.append([str(D), str(n), fmt_ratio(ratio)])
    _emit(_render(["D", "n", "ratio"], rows, args.format), args.output)
    return 0 if rows else 1


def cmd_zeros(args) -> int:
    field = quad_field(args.delta)
    zs = find_zeros(field, args.T)
    write_zeros(zs, args.out)
    rep = count_sanity(zs) if zs.records else None
    if rep is not None and not rep.ok:
        sys.stderr.write(
            f"warning: count sanity failed (found {rep.total_found}, "
            f"expected {rep.expected_total:.1f}, max unit window "
            f"{rep.max_unit_window})\n")
    _emit(_render(["delta", "T", "records", "out"],
                  [[str(args.delta), repr(args.T), str(len(zs.records)), args.out]],
                  args.format), args.output)
    return 0


def _load_or_find(args):
    field = quad_field(args.delta)
    if args.zeros:
        zs = read_zeros(args.zeros)
        if zs.delta != args.delta:
            raise DomainError(f"zero file is for delta={zs.delta}, not {args.delta}")
        if zs.T < args.T:
            raise DomainError(f"zero file reaches T={zs.T}, need {args.T}")
        return zs
    return find_zeros(field, args.T)


def cmd_hstar(args) -> int:
    zs = _load_or_find(args)
    if args.t is not None:
        val = h_star(zs, args.T, args.t)
        _emit(_render(["delta", "T", "t", "h_star"],
                      [[str(args.delta), repr(args.T), repr(args.t), repr(val)]],
                      args.format), args.output)
        return 0 if abs(val) > 1.0 else 1
    if args.t_min is None or args.t_max is None:
        raise DomainError("hstar needs --t or both --t-min/--t-max")
    scan = h_star_scan(zs, args.T, (args.t_min, args.t_max), step=args.step)
    if args.output != "-" and args.format == "csv":
        write_scan_csv(scan, args.output)
    else:
        rows = [[repr(float(t)), repr(float(v))]
                for t, v in zip(scan.t_grid, scan.values)]
        _emit(_render(["t", "h_star"], rows, args.format), args.output)
    sys.stderr.write(
        f"min={scan.min_value!r} at t={scan.argmin!r}; "
        f"max={scan.max_value!r} at t={scan.argmax!r}\n")
    return 0 if scan.exceedance else 1


def cmd_dist(args) -> int:
    field = quad_field(args.delta)
    tab = build_tables(field, _sieve_bound(math.exp(args.Y)))
    zs = None
    if args.zeros:
        zs = read_zeros(args.zeros)
        if zs.delta != args.delta:
            raise DomainError(f"zero file is for delta={zs.delta}, not {args.delta}")
    d = dist_mod.sample_phi(tab, args.y0, args.Y, args.step, bins=args.bins,
                            zeroset=zs)
    if args.output == "-":
        raise DomainError("dist writes a CSV file; pass --output PATH")
    if args.kind == "hist":
        dist_mod.write_histogram_csv(d, args.output)
    elif args.kind == "cdf":
        dist_mod.write_cdf_csv(d, args.output)
    else:
        xis = [float(s) for s in args.xi.split(",")] if args.xi else [0.25, 0.5, 1.0, 2.0]
        dist_mod.write_cf_csv(d, xis, args.output, zeroset=zs)
    return 0


def cmd_report(args) -> int:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(args.outdir, exist_ok=True)
    field = quad_field(args.delta)
    join = lambda name: os.path.join(args.outdir, name)

    # zero set + h* scan
    zs = find_zeros(field, args.T)
    write_zeros(zs, join("zeros.csv"))
    scan = h_star_scan(zs, args.T, (args.t_min, args.t_max), step=args.step)
    write_scan_csv(scan, join("hstar_scan.csv"))
    plt.figure(figsize=(9, 3.2))
    plt.plot(scan.t_grid, scan.values, lw=0.7)
    plt.axhline(1.0, color="r", lw=0.6, ls="--")
    plt.axhline(-1.0, color="r", lw=0.6, ls="--")
    plt.xlabel("t")
    plt.ylabel(f"h*_{{{args.delta},{args.T:g}}}(t)")
    plt.tight_layout()
    plt.savefig(join("hstar_scan.png"), dpi=150)
    plt.close()

    # phi trace + histogram + characteristic function
    tab = build_tables(field, _sieve_bound(math.exp(args.Y)))
    d = dist_mod.sample_phi(tab, args.y0, args.Y, args.step_y, bins=args.bins,
                            zeroset=zs)
    ys = d.y0 + d.step * np.arange(d.samples.size)
    with open(join("phi_trace.csv"), "w") as fh:
        fh.write("y,phi\n")
        for y, p in zip(ys, d.samples):
            fh.write(f"{float(y)!r},{float(p)!r}\n")
    plt.figure(figsize=(9, 3.2))
    plt.plot(ys, d.samples, lw=0.5)
    plt.xlabel("y")
    plt.ylabel("phi_K(y)")
    plt.tight_layout()
    plt.savefig(join("phi_trace.png"), dpi=150)
    plt.close()

    dist_mod.write_histogram_csv(d, join("histogram.csv"))
    edges, masses = d.hist
    centers = 0.5 * (edges[:-1] + edges[1:])
    plt.figure(figsize=(6, 3.6))
    plt.bar(centers, masses, width=edges[1] - edges[0])
    plt.xlabel("phi_K")
    plt.ylabel("mass")
    plt.tight_layout()
    plt.savefig(join("histogram.png"), dpi=150)
    plt.close()

    xis = np.linspace(0.0, 3.0, 61)
    dist_mod.write_cf_csv(d, xis, join("cf.csv"), zeroset=zs)
    ecf = np.array([dist_mod.empirical_cf(d, float(x)) for x in xis])
    nuh = np.array([dist_mod.nu_hat_theoretical(zs, float(x)) for x in xis])
    plt.figure(figsize=(6, 3.6))
    plt.plot(xis, ecf.real, label="Re ecf")
    plt.plot(xis, ecf.imag, label="Im ecf", lw=0.8)
    plt.plot(xis, nuh, label="nu_hat (T=%g)" % args.T, ls="--")
    plt.xlabel("xi")
    plt.legend()
    plt.tight_layout()
    plt.savefig(join("cf.png"), dpi=150)
    plt.close()

    names = ["zeros.csv", "hstar_scan.csv", "hstar_scan.png", "phi_trace.csv",
             "phi_trace.png", "histogram.csv", "histogram.png", "cf.csv", "cf.png"]
    _emit("".join(os.path.join(args.outdir, n) + "\n" for n in names), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    default_threads = int(os.environ.get("MERTENSQ_THREADS", "1"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    common.add_argument("--output", default="-", help="output path, '-' = stdout")
    common.add_argument("--threads", type=int, default=default_threads)
    common.add_argument("--paper-parity", action="store_true",
                        help="print table values rounded / ratios truncated to 4 decimals")

    ap = argparse.ArgumentParser(
        prog="mertensq",
        description="Mertens functions, residue series, zeta zeros and "
                    "oscillation sums over quadratic fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mertens", parents=[common], help="M_K point values / prefix table")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--x", type=float)
    p.add_argument("--n-max", type=int)
    p.add_argument("--right-limit", action="store_true")
    p.set_defaults(func=cmd_mertens)

    p = sub.add_parser("tables", parents=[common], help="M_K*(1) value table")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--imaginary", action="store_true")
    grp.add_argument("--real", action="store_true")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--kmax", type=int, default=50)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("counterexamples", parents=[common],
                       help="smallest n with M_K(n+) + M_K*(n) > sqrt(n)")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--imaginary", action="store_true")
    grp.add_argument("--real", action="store_true")
    p.add_argument("--d", type=int, action="append",
                   help="|D| to search (repeatable)")
    p.add_argument("--dmax", type=int)
    p.add_argument("--n-max", type=int, default=2000)
    p.add_argument("--kmax", type=int, default=50)
    p.set_defaults(func=cmd_counterexamples)

    p = sub.add_parser("zeros", parents=[common], help="find zeros up to height T")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--out", required=True, help="zero-list CSV path")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("hstar", parents=[common], help="smoothed oscillation sum")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--t", type=float)
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--zeros", help="reuse a zero-list CSV instead of recomputing")
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("dist", parents=[common], help="empirical phi_K distribution")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--Y", type=float, default=12.0)
    p.add_argument("--y0", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--kind", choices=("hist", "cdf", "cf"), default="hist")
    p.add_argument("--xi", help="comma list of xi values for --kind cf")
    p.add_argument("--zeros", help="zero-list CSV to attach beta / nu_hat")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("report", parents=[common],
                       help="CSV bundle + PNG figures in a directory")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--outdir", required=True)
    p.add_argument("--T", type=float, default=100.0)
    p.add_argument("--t-min", type=float, default=-60.0)
    p.add_argument("--t-max", type=float, default=60.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--Y", type=float, default=10.0)
    p.add_argument("--y0", type=float, default=1.0)
    p.add_argument("--step-y", type=float, default=1e-3)
    p.add_argument("--bins", type=int, default=200)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.threads < 1:
        sys.stderr.write("error: --threads must be >= 1\n")
        return 2
    try:
        return args.func(args)
    except (DomainError, ResourceError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (AccuracyError, PhaseMissingError) as exc:
        # MultiplicityError subclasses AccuracyError
        sys.stderr.write(f"numeric-accuracy error: {exc}\n")
        return 3
    except ZeroFileFormatError as exc:
        sys.stderr.write(f"zero-file error (line {exc.line}): {exc}\n")
        return 4
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
