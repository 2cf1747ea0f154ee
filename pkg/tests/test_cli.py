import csv
import io
import json

import pytest

from daelsq import cli
from daelsq.cli import COLUMNS, RunSpec, main, parse_basis, parse_sweep, presets, run, tables

SPEC_FLAGS = ["--example", "--problem-file", "--N", "--n", "--M", "--nodes", "--basis",
              "--functional", "--solver", "--omega", "--alpha", "--tol", "--max-iter",
              "--sweep", "--table", "--json", "--out"]


def call(argv, capsys):
    assert main(argv) == 0
    return capsys.readouterr().out


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_all_documented_flags_exist():
    opts = {o for a in cli.build_parser()._actions for o in a.option_strings}
    assert set(SPEC_FLAGS) <= opts


@pytest.mark.parametrize("argv", [["--bogus"], ["--nodes", "gauss"], ["--N"],
                                  ["--example", "index3_l0", "--problem-file", "x.json"],
                                  ["--ex", "index3_l0"], ["--M", "2", "--N", "5"]])
def test_bad_arguments_rejected(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_csv_columns_and_value(capsys):
    out = call(["--example", "campbell_moore", "--interval", "0", "1", "--N", "5", "--n", "5"],
               capsys)
    rows = rows_of(out)
    assert list(rows[0]) == COLUMNS and len(rows) == 1
    # published H1_D error for N=5, n=5 is 1.37e-05
    assert float(rows[0]["h1d"]) == pytest.approx(1.37e-5, rel=0.05)


def test_json_output_and_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    call(["--example", "index4_bvp", "--N", "20", "--n", "5", "--json", "--out", str(path)],
         capsys)
    data = json.loads(path.read_text())
    assert list(data[0]) == COLUMNS
    assert 1e-8 <= data[0]["h1d"] <= 1e-5


def test_sweep_keeps_order(capsys):
    out = call(["--example", "index3_l0", "--sweep", "N=6,3,9"], capsys)
    rows = rows_of(out)
    assert [int(r["N"]) for r in rows] == [6, 3, 9]
    assert [int(r["M"]) for r in rows] == [7, 4, 10]


def test_parse_helpers():
    assert parse_sweep("N=2:4") == ("N", [2, 3, 4])
    assert parse_sweep("omega=0.1,10") == ("omega", [0.1, 10.0])
    assert parse_sweep("basis=legendre,rk:gle") == ("basis", ["legendre", "rk:gle"])
    with pytest.raises(ValueError):
        parse_sweep("interval=0,1")
    assert parse_basis("rk:chebyshev:monomial", 4).representation.value == "monomial"
    with pytest.raises(ValueError):
        parse_basis("rk", 4)


def test_runspec_validation():
    with pytest.raises(ValueError):
        RunSpec(example=None)
    with pytest.raises(ValueError):
        RunSpec(N=4, M=3)
    with pytest.raises(ValueError):
        RunSpec(solver="magic")
    with pytest.raises(ValueError):
        RunSpec(omega=-1.0)


def test_tables(capsys):
    leb = {r["M"]: r for r in tables("lebesgue")}
    assert leb[15]["Lo"] == pytest.approx(2.386, abs=5e-3)
    cond = {r["M"]: r for r in tables("vcond")}
    assert cond[50]["GR"] == pytest.approx(8.86, rel=0.02)
    assert cond[5]["cNC"] == pytest.approx(3.76, rel=0.02)
    assert cond[100]["cNC"] == float("inf")
    out = call(["--table", "lebesgue"], capsys)
    assert out.splitlines()[0] == "M,C,L,Lo,R,U,O"


def test_presets_complete_and_capped():
    ps = presets()
    assert sorted(ps, key=lambda k: int(k[3:])) == [f"exp{i}" for i in range(1, 14)]
    for specs in ps.values():
        assert specs and all(s.n <= 320 and s.N <= 25 for s in specs)


def test_deterministic_rerun():
    spec = RunSpec(example="index4_bvp", N=5, n=4, solver="deferred")
    a, b = run(spec), run(spec)
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_dump_system(tmp_path, capsys):
    prefix = str(tmp_path / "sys")
    call(["--example", "index3_l0", "--N", "3", "--n", "2", "--dump-system", prefix], capsys)
    assert len(list(tmp_path.glob("sys*.mtx"))) == 3


def test_problem_file_run(tmp_path, capsys):
    # x1' + x2 = 0, x1 - x2 = 0, x1(0) = 1  ->  x1 = x2 = exp(-t)
    cfg = {"m": 2, "k": 1, "l": 1, "interval": [0, 1], "A": [[1], [0]],
           "B": [[0, 1], [1, -1]], "q": [[0], [0]], "G_a": [[1, 0]], "d": [1]}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(cfg))
    out = call(["--problem-file", str(path), "--N", "6", "--n", "2"], capsys)
    r = rows_of(out)[0]
    assert r["h1d"] == "" and float(r["residual_constraint"]) < 1e-12


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "daelsq", "--table", "lebesgue", "--json"],
                         capture_output=True, text=True, check=True).stdout
    assert len(json.loads(out)) == 4
