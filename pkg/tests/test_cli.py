"""Command-line interface: output shapes, exit codes, determinism."""

from __future__ import annotations

import json
import os

import pytest

from mertensq import h_star, read_zeros, write_zeros
from mertensq.cli import main

from reference_tables import IM_TABLE_4DP, RE_TABLE_4DP


def run(capsys, argv):
    rc = main(argv)
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


# ------------------------- mertens -------------------------

def test_mertens_point(capsys):
    rc, out, _ = run(capsys, ["mertens", "--delta", "-3", "--x", "7"])
    assert rc == 0
    assert out == "delta,x,value\n-3,7.0,-2.0\n"


def test_mertens_right_limit(capsys):
    rc, out, _ = run(capsys, ["mertens", "--delta", "-3", "--x", "7", "--right-limit"])
    assert rc == 0
    assert out.splitlines()[1] == "-3,7,-3"
    rc, out, _ = run(capsys, ["mertens", "--delta", "5", "--x", "11", "--right-limit"])
    assert out.splitlines()[1] == "5,11,-4"


def test_mertens_prefix_table(capsys):
    rc, out, _ = run(capsys, ["mertens", "--delta", "-4", "--n-max", "6"])
    assert rc == 0
    assert out.splitlines() == ["n,mu_k,mertens_plus", "1,1,1", "2,-1,0",
                                "3,0,0", "4,0,0", "5,-2,-2", "6,0,-2"]


def test_mertens_bad_delta_exits_2(capsys):
    rc, _, err = run(capsys, ["mertens", "--delta", "7", "--x", "3"])
    assert rc == 2
    assert err != ""


# ------------------------- tables -------------------------

def test_tables_parity_rows(capsys):
    rc, out, _ = run(capsys, ["tables", "--imaginary", "--dmax", "307", "--paper-parity"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "D,mstar_1"
    got = dict(ln.split(",") for ln in lines[1:])
    assert len(got) == 96
    for D, val in IM_TABLE_4DP.items():
        assert got[str(D)] == val, D


def test_tables_real_parity_rows(capsys):
    rc, out, _ = run(capsys, ["tables", "--real", "--dmax", "269", "--paper-parity"])
    lines = out.strip().splitlines()
    got = dict(ln.split(",") for ln in lines[1:])
    assert len(got) == 82
    for D, val in RE_TABLE_4DP.items():
        assert got[str(D)] == val, D


def test_tables_json_format(capsys):
    rc, out, _ = run(capsys, ["tables", "--imaginary", "--dmax", "8", "--format", "json"])
    assert rc == 0
    rows = json.loads(out)
    assert [r["D"] for r in rows] == [3, 4, 7, 8]


def test_tables_text_format(capsys):
    rc, out, _ = run(capsys, ["tables", "--imaginary", "--dmax", "8", "--format", "text"])
    assert rc == 0
    assert len(out.strip().splitlines()) == 5


def test_tables_deterministic_across_threads(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["tables", "--imaginary", "--dmax", "100", "--threads", "1",
                 "--output", str(a)]) == 0
    assert main(["tables", "--imaginary", "--dmax", "100", "--threads", "3",
                 "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_threads_env_override(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["tables", "--real", "--dmax", "60", "--output", str(a)])
    monkeypatch.setenv("MERTENSQ_THREADS", "4")
    main(["tables", "--real", "--dmax", "60", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


# ------------------------- counterexamples -------------------------

def test_counterexamples_known_row(capsys):
    rc, out, _ = run(capsys, ["counterexamples", "--imaginary", "--d", "23",
                              "--paper-parity"])
    assert rc == 0
    assert out == "D,n,ratio\n23,6,1.0261\n"


def test_counterexamples_none_found_exits_1(capsys):
    rc, out, _ = run(capsys, ["counterexamples", "--imaginary", "--d", "3",
                              "--n-max", "50"])
    assert rc == 1
    assert out.strip() == "D,n,ratio"


def test_counterexamples_real_sweep(capsys):
    rc, out, _ = run(capsys, ["counterexamples", "--real", "--dmax", "45",
                              "--n-max", "1000", "--paper-parity"])
    assert rc == 0
    rows = dict((ln.split(",")[0], ln) for ln in out.strip().splitlines()[1:])
    assert rows["37"] == "37,33,1.4651"
    assert rows["44"] == "44,917,1.0343"


# ------------------------- zeros / hstar -------------------------

def test_zeros_roundtrip_via_cli(tmp_path, capsys):
    out_csv = tmp_path / "z.csv"
    rc, _, err = run(capsys, ["zeros", "--delta", "-4", "--T", "20",
                              "--out", str(out_csv)])
    assert rc == 0
    z = read_zeros(out_csv)
    assert len(z.records) == 6


def test_hstar_single_point_exit_codes(tmp_path, capsys, zqi600):
    zfile = tmp_path / "z600.csv"
    write_zeros(zqi600, zfile)
    rc, out, _ = run(capsys, ["hstar", "--delta", "-4", "--T", "600",
                              "--t", "-85.15", "--zeros", str(zfile)])
    assert rc == 0              # |h*| > 1 at the witness point
    assert "-85.15" in out
    rc, _, _ = run(capsys, ["hstar", "--delta", "-4", "--T", "600",
                            "--t", "0.0", "--zeros", str(zfile)])
    expected = 0 if abs(h_star(zqi600, 600.0, 0.0)) > 1 else 1
    assert rc == expected


def test_hstar_range_scan_csv(tmp_path, z4_20):
    zfile = tmp_path / "z20.csv"
    write_zeros(z4_20, zfile)
    out_csv = tmp_path / "scan.csv"
    rc = main(["hstar", "--delta", "-4", "--T", "20", "--t-min", "-2",
               "--t-max", "2", "--step", "0.5", "--zeros", str(zfile),
               "--output", str(out_csv)])
    assert rc in (0, 1)
    body = out_csv.read_text()
    assert body.startswith("t,h_star\n")
    assert len([ln for ln in body.splitlines() if not ln.startswith("#")]) == 10


def test_hstar_wrong_zero_file_delta(tmp_path, capsys, z4_20):
    zfile = tmp_path / "z20.csv"
    write_zeros(z4_20, zfile)
    rc, _, err = run(capsys, ["hstar", "--delta", "12", "--T", "20",
                              "--t", "1.0", "--zeros", str(zfile)])
    assert rc == 2
    assert err != ""


def test_hstar_phase_missing_exits_3(tmp_path, capsys):
    zfile = tmp_path / "flat.csv"
    zfile.write_text("# delta=-4 T=20.0 provenance=computed\n"
                     "component,gamma,zk_deriv_abs,refine_err\n"
                     "chi,6.020948904697558,1.1882177672783254,1e-12\n")
    rc, _, err = run(capsys, ["hstar", "--delta", "-4", "--T", "20",
                              "--t", "1.0", "--zeros", str(zfile)])
    assert rc == 3
    assert err != ""


def test_hstar_malformed_zero_file_exits_4(tmp_path, capsys):
    zfile = tmp_path / "bad.csv"
    zfile.write_text("not a zero list\n")
    rc, _, err = run(capsys, ["hstar", "--delta", "-4", "--T", "20",
                              "--t", "1.0", "--zeros", str(zfile)])
    assert rc == 4
    assert "line 1" in err


# ------------------------- dist / report -------------------------

def test_dist_hist_csv(tmp_path):
    p = tmp_path / "hist.csv"
    rc = main(["dist", "--delta", "-4", "--Y", "8", "--step", "0.01",
               "--output", str(p)])
    assert rc == 0
    rows = [ln for ln in p.read_text().splitlines() if ln and not ln.startswith("#")]
    mass = sum(float(r.split(",")[2]) for r in rows[1:])
    assert abs(mass - 1.0) < 1e-9


def test_dist_requires_output(capsys):
    rc, _, err = run(capsys, ["dist", "--delta", "-4", "--Y", "6"])
    assert rc == 2
    assert "--output" in err


def test_report_renders_files(tmp_path):
    outdir = tmp_path / "rep"
    rc = main(["report", "--delta", "-4", "--outdir", str(outdir),
               "--T", "20", "--t-min", "-3", "--t-max", "3", "--step", "0.1",
               "--Y", "7", "--step-y", "0.01"])
    assert rc == 0
    for name in ("zeros.csv", "hstar_scan.csv", "hstar_scan.png",
                 "phi_trace.csv", "phi_trace.png", "histogram.csv",
                 "histogram.png", "cf.csv", "cf.png"):
        f = outdir / name
        assert f.exists() and f.stat().st_size > 0, name
    # figures are real PNG files
    assert (outdir / "histogram.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
