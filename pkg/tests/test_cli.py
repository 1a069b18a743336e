import csv
import io
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelsolve import cli


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_round_trip(tmp_path):
    path = tmp_path / "a.cylf"

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
    def check(nr, nt, nz, seed):
        a = np.random.default_rng(seed).standard_normal((nr, nt, nz))
        cli.write_field(path, a)
        assert np.array_equal(cli.read_field(path), a)

    check()


def test_field_layout(tmp_path):
    a = np.arange(24, dtype=float).reshape(2, 3, 4)
    path = tmp_path / "a.cylf"
    cli.write_field(path, a)
    raw = path.read_bytes()
    assert raw[:4] == b"CYLF"
    assert np.frombuffer(raw[4:16], "<u4").tolist() == [2, 3, 4]
    data = np.frombuffer(raw[16:], "<f8")
    # radial index fastest
    assert data[:4].tolist() == [a[0, 0, 0], a[1, 0, 0], a[0, 1, 0], a[1, 1, 0]]


def test_field_errors(tmp_path):
    bad = tmp_path / "bad.cylf"
    bad.write_bytes(b"XXXX" + bytes(12))
    with pytest.raises(cli.FieldFormatError):
        cli.read_field(bad)
    short = tmp_path / "short.cylf"
    short.write_bytes(b"CYLF" + np.array([2, 1, 1], "<u4").tobytes() + bytes(8))
    with pytest.raises(cli.FieldFormatError):
        cli.read_field(short)
    stub = tmp_path / "stub.cylf"
    stub.write_bytes(b"CY")
    with pytest.raises(cli.FieldFormatError):
        cli.read_field(stub)


def test_usage_errors(capsys):
    assert _run([], capsys)[0] == cli.EXIT_USAGE
    assert _run(["solve", "--kappa", "1"], capsys)[0] == cli.EXIT_USAGE
    assert _run(["nonsense"], capsys)[0] == cli.EXIT_USAGE
    assert _run(["solve", "--order", "0", "--kappa", "-1"], capsys)[0] == cli.EXIT_USAGE
    assert _run(["poisson", "--n-theta", "5", "--n-z", "4", "--length-z", "1"], capsys)[0] == cli.EXIT_USAGE


def test_solve_builtin(capsys):
    code, out, err = _run(["solve", "--order", "0", "--kappa", "16", "--dht-size", "64"], capsys)
    assert code == cli.EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "u", "u_exact"] and len(rows) == 65
    eps = float(err.split()[1])
    assert eps <= 1e-12


def test_solve_on_blocks(tmp_path, capsys):
    path = tmp_path / "u.csv"
    code, _, err = _run(["solve", "--order", "4", "--kappa", "2", "--blocks", "32", "--output", str(path)], capsys)
    assert code == cli.EXIT_OK
    rows = list(csv.reader(open(path)))
    assert len(rows) == 32 * 17 + 1
    assert float(err.split()[1]) <= 1e-10


def test_solve_from_file_and_nan(tmp_path, capsys):
    f = tmp_path / "f.cylf"
    cli.write_field(f, np.ones((16, 1, 1)))
    assert _run(["solve", "--order", "1", "--kappa", "1", "--dht-size", "16", "--input", str(f)], capsys)[0] == 0
    cli.write_field(f, np.full((16, 1, 1), np.nan))
    assert _run(["solve", "--order", "1", "--kappa", "1", "--dht-size", "16", "--input", str(f)], capsys)[0] == cli.EXIT_NUMERIC
    cli.write_field(f, np.ones((15, 1, 1)))
    assert _run(["solve", "--order", "1", "--kappa", "1", "--dht-size", "16", "--input", str(f)], capsys)[0] == cli.EXIT_USAGE
    assert _run(["solve", "--order", "1", "--kappa", "1", "--input", str(tmp_path / "missing")], capsys)[0] == cli.EXIT_USAGE


def test_sweeps(capsys):
    code, out, _ = _run(["sweep-dht", "--orders", "0", "--kappas", "16", "--betas", "0", "--sizes", "32,64"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == cli.harness.CSV_HEADER and len(rows) == 3
    code, out, _ = _run(["sweep-cheb", "--orders", "2", "--kappas", "16", "--betas", "0",
                         "--sizes", "64", "--blocks", "4,8"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert [r[5] for r in rows[1:]] == ["4", "8"]


def test_timing(capsys):
    code, out, err = _run(["timing", "--order", "2", "--kappa", "4", "--beta", "0", "--dht-sizes", "16,32",
                           "--cheb-sizes", "16", "--blocks", "2,4", "--repeats", "1"], capsys)
    assert code == 0
    assert "dht-direct: time ~ M^" in err and "chebyshev M=16" in err


def test_poisson_builtin_and_file(tmp_path, capsys):
    out = tmp_path / "u.cylf"
    args = ["poisson", "--n-theta", "8", "--n-z", "8", "--length-z", "6.283185307179586", "--axial-index", "3"]
    code, _, err = _run(args + ["--output", str(out)], capsys)
    assert code == 0 and float(err.split()[1]) <= 1e-10
    u = cli.read_field(out)
    assert u.shape == (32 * 17, 8, 8)
    # feed a field back in: the solution itself has no kappa = 0 content
    code, _, _ = _run(args + ["--input", str(out), "--output", str(tmp_path / "v.cylf")], capsys)
    assert code == 0
    cli.write_field(out, np.ones((3, 8, 8)))
    assert _run(args + ["--input", str(out)], capsys)[0] == cli.EXIT_USAGE


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hankelsolve.cli", "solve", "--order", "0",
                          "--kappa", "1", "--dht-size", "16"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("r,u,u_exact")
    res = subprocess.run([sys.executable, "-m", "hankelsolve.cli", "--bogus"], capture_output=True)
    assert res.returncode == 2
