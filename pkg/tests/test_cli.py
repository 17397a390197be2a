import subprocess
import sys

import pytest

from twocounters.cli import UsageError, main, parse_bits, parse_solvers
from twocounters.generator import expected_vertex_count


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tc3(tmp_path, capsys):
    path = tmp_path / "tc3.pg"
    code, out, _ = run(capsys, "gen", "3", "--roles", str(tmp_path / "roles.txt"))
    assert code == 0
    path.write_text(out)
    return path


def test_gen(tc3, tmp_path):
    lines = tc3.read_text().splitlines()
    assert lines[0] == f"parity {expected_vertex_count(3) - 1};"
    roles = (tmp_path / "roles.txt").read_text().splitlines()
    assert len(roles) == expected_vertex_count(3) and roles[0] == "0 Even 0 l"


@pytest.mark.parametrize("solver,stat,value", [
    ("zlk", "calls", 45), ("pp", "promotions", 23), ("PP+", "promotions", 18), ("dp", "promotions", 18),
    ("rr", "promotions", 14), ("rrdp", "promotions", 14), ("tl", "tangles", 14), ("atl", "tangles", 14),
])
def test_solve_final_line(capsys, tc3, solver, stat, value):
    code, out, _ = run(capsys, "solve", str(tc3), "--solver", solver)
    assert code == 0
    assert out.splitlines()[-1] == f"solved with {stat}={value}"


def test_solve_trace(capsys, tc3):
    _, out, _ = run(capsys, "solve", str(tc3), "--solver", "dp", "-t")
    assert sum(1 for line in out.splitlines() if line.startswith("promotion ")) == 18
    _, out, _ = run(capsys, "solve", str(tc3), "--solver", "zlk", "-t", "-t")
    assert "bit=" in out and "won by Even: 21" in out


def test_solve_out_then_verify(capsys, tc3, tmp_path):
    sol = tmp_path / "sol.txt"
    assert run(capsys, "solve", str(tc3), "--solver", "tl", "--out", str(sol))[0] == 0
    code, out, _ = run(capsys, "verify", str(tc3), str(sol))
    assert code == 0 and out.strip() == "ok"
    lines = sol.read_text().splitlines()
    lines[0] = "0 " + ("1" if lines[0].split()[1] == "0" else "0")
    sol.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", str(tc3), str(sol))
    assert code == 1 and out.strip() != "ok"


def test_oracle(capsys, tmp_path):
    path = tmp_path / "g.pg"
    path.write_text("parity 0;\n0 1 1 0;\n")
    code, out, _ = run(capsys, "oracle", str(path))
    assert code == 0 and out == "0 1 0\n"


def test_bench(capsys, tmp_path):
    csv = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--solvers", "rr", "--bits", "1..5", "--csv", str(csv))
    assert code == 0 and "MISMATCH" not in out
    rows = csv.read_text().splitlines()
    assert rows[0].startswith("solver,bits,statistic,value,expected,match")
    assert [r.split(",")[3] for r in rows[1:]] == ["2", "6", "14", "30", "62"]


@pytest.mark.parametrize("argv", [
    ["bench", "--bits", "5..1"],
    ["bench", "--solvers", "nope"],
    ["gen", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.pg"
    path.write_text("parity x;\n")
    code, _, err = run(capsys, "solve", str(path), "--solver", "zlk")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "solve", str(tmp_path / "missing.pg"), "--solver", "zlk")[0] == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "x", "--solver", "bogus"])
    assert exc.value.code == 2


def test_helpers():
    assert parse_bits("1..3,15") == [1, 2, 3, 15]
    assert parse_solvers(["zlk,pp", "TL"]) == ["zlk", "pp", "tl"]
    with pytest.raises(UsageError):
        parse_bits("0")


def test_pipeline_through_stdin():
    gen = subprocess.run([sys.executable, "-m", "twocounters.cli", "gen", "2"], capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "twocounters.cli", "solve", "-", "--solver", "rr"],
                         input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "solved with promotions=6"
