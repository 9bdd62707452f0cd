import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from frolov.cli import BOUND_HEADER, CSV_HEADER, main
from frolov.lattice import scale_for_n
from frolov.pointset import read_pointset
from frolov.rules import lattice_basis
from frolov.wce import fit_rate

from _support import brute_force_points


def _support_count(n):
    return brute_force_points(scale_for_n(lattice_basis(2), n).A_n).shape[0]


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_generate(tmp_path, capsys):
    out = tmp_path / "f2.pts"
    assert main(["generate", "--d", "2", "--n", "1024", "--family", "improved", "--out", str(out)]) == 0
    assert read_pointset(out).N == 1023
    assert "N=1023" in capsys.readouterr().out


def test_generate_matches_brute_force(tmp_path):
    out = tmp_path / "t.pts"
    assert main(["generate", "--d", "3", "--n", "16", "--out", str(out)]) == 0
    expect = brute_force_points(scale_for_n(lattice_basis(3), 16).A_n)
    assert read_pointset(out).N == len(expect)


def test_generate_deterministic(tmp_path):
    a, b = tmp_path / "a.pts", tmp_path / "b.pts"
    for p in (a, b):
        assert main(["generate", "--d", "4", "--n", "300", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_errors(tmp_path, capsys):
    assert main(["generate", "--d", "11", "--family", "improved", "--out", str(tmp_path / "x")]) == 2
    assert main(["generate", "--d", "2", "--n", "-4", "--out", str(tmp_path / "x")]) == 2
    assert main(["generate", "--d", "2", "--out", str(tmp_path / "missing" / "x.pts")]) == 3
    assert main(["generate"]) == 2
    assert main([]) == 2


def test_wce_pointset_and_empty(tmp_path, capsys):
    f = tmp_path / "f.pts"
    main(["generate", "--d", "2", "--n", "1024", "--out", str(f)])
    capsys.readouterr()
    assert main(["wce", "--points", str(f), "--r", "2,2"]) == 0
    row = _csv(capsys.readouterr().out)[0]
    assert list(row) == CSV_HEADER
    assert float(row["norm_wce"]) < 1e-3
    assert (row["r"], row["N"], row["clamped"]) == ("2,2", "1023", "0")

    e = tmp_path / "e.pts"
    e.write_text("frolovpts 1\nd=2 n=0 N=0 method=none\n")
    assert main(["wce", "--points", str(e), "--r", "1"]) == 0
    assert float(_csv(capsys.readouterr().out)[0]["norm_wce"]) == 1.0


def test_wce_regression_value(capsys):
    assert main(["wce", "--method", "improved", "--d", "2", "--n", "1024", "--r", "2,2"]) == 0
    row = _csv(capsys.readouterr().out)[0]
    assert float(row["norm_wce"]) == pytest.approx(1.1431055732627e-05, rel=1e-6)


def test_wce_appends(tmp_path):
    out = tmp_path / "rows.csv"
    for n in ("256", "512"):
        assert main(["wce", "--method", "improved", "--d", "2", "--n", n, "--r", "1", "--out", str(out)]) == 0
    rows = _csv(out.read_text())
    assert [int(r["N"]) for r in rows] == [_support_count(256), _support_count(512)]
    assert out.read_text().count("method,") == 1


def test_wce_errors(tmp_path, capsys):
    bad = tmp_path / "bad.pts"
    bad.write_text("frolovpts 1\nd=1 n=0 N=2 method=x\n0.5\n1.5\n")
    assert main(["wce", "--points", str(bad), "--r", "1"]) == 3
    assert "line 4" in capsys.readouterr().err
    assert main(["wce", "--points", str(tmp_path / "nope.pts"), "--r", "1"]) == 3
    assert main(["wce", "--method", "improved", "--d", "2", "--n", "64", "--r", "0,1"]) == 2
    assert main(["wce", "--method", "improved", "--d", "2", "--n", "64", "--r", "1,1,1"]) == 2
    assert main(["wce", "--r", "1"]) == 2


def test_compare(capsys):
    assert main(["compare", "--d", "2", "--r", "2,2", "--methods", "improved,fibonacci", "--n-max", "4096"]) == 0
    rows = _csv(capsys.readouterr().out)
    keys = [(r["method"], int(r["N"])) for r in rows]
    assert keys == sorted(keys)
    assert {r["method"] for r in rows} == {"improved", "fibonacci"}
    imp = [(int(r["N"]), float(r["norm_wce"])) for r in rows if r["method"] == "improved"]
    fib = [(int(r["N"]), float(r["norm_wce"])) for r in rows if r["method"] == "fibonacci"]
    for N, v in fib:
        ref = np.exp(np.interp(np.log(N), *np.log(np.array(imp)).T))
        assert 1 / 3 <= v / ref <= 3


def test_compare_errors():
    assert main(["compare", "--d", "2", "--r", "2", "--methods", ""]) == 2
    assert main(["compare", "--d", "2", "--r", "2", "--methods", "bogus"]) == 2
    assert main(["compare", "--d", "3", "--r", "2", "--methods", "fibonacci"]) == 2
    assert main(["compare", "--d", "2", "--r", "2", "--n-min", "100", "--n-max", "10"]) == 2


def test_bound(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bound", "--d", "2", "--r", "1,2", "--n-min", "256", "--n-max", "65536", "--step", "2",
                 "--out", str(out)]) == 0
    rows = _csv(out.read_text())
    assert list(rows[0]) == BOUND_HEADER
    series = [(float(r["n"]), float(r["bound"])) for r in rows]
    assert len(series) == 9
    assert fit_rate(series)[0] == pytest.approx(-1, abs=0.05)


def test_bound_errors():
    assert main(["bound", "--d", "2", "--r", "0,2"]) == 2
    assert main(["bound", "--d", "12", "--r", "1"]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "frolov", "bound", "--d", "2", "--r", "1", "--n-max", "1024"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "n,bound"
