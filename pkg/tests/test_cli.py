import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from anchorpack.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main
from anchorpack.closed_forms import bound_decreasing
from anchorpack.pointfile import save_points
from anchorpack.render import rect_area_from_svg

KEYS = {"command", "inputs", "value", "config", "certificate"}


@pytest.fixture
def half(tmp_path):
    path = tmp_path / "half.txt"
    path.write_text("0.5 0.5\n")
    return str(path)


@pytest.fixture
def dec5(tmp_path):
    path = tmp_path / "dec5.txt"
    save_points(bound_decreasing(5).tight_config, path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    recs = [json.loads(line) for line in out.splitlines() if line.strip()]
    for r in recs:
        assert set(r) == KEYS
    return recs


def test_solve_half(capsys, half):
    code, out, _ = run(capsys, "solve", half)
    assert code == EXIT_OK
    assert "3/4 ≈ 0.750000" in out.splitlines()[0]


def test_solve_float_mode(capsys, half):
    code, out, _ = run(capsys, "solve", half, "--float")
    assert code == EXIT_OK
    assert "≈ 0.750000" in out and "3/4" not in out.splitlines()[0]


def test_bound_decreasing(capsys):
    code, out, _ = run(capsys, "bound", "decreasing", "--n", "4")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "175/256 ≈ 0.683594"


@pytest.mark.parametrize("argv, expect", [
    (["bound", "cliff", "--n", "4", "--m", "1"], "49/76"),
    (["bound", "start1", "--k", "3/4"], "2/3"),
    (["bound", "231", "--k", "0.75"], "2/3"),
    (["bound", "213"], "≈ 0.6717"),
    (["bound", "sparse-limit", "--k", "2/3"], "≈ 0.5179"),
    (["bound", "prelayer-threshold"], "≈ 0.2130"),
    (["bound", "increasing-start", "--m", "3", "--k", "1"], "5/8"),
])
def test_bound_classes(capsys, argv, expect):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith(expect)


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "10")
    assert code == EXIT_OK
    rows = out.splitlines()
    assert len(rows) == 10
    assert [r.split()[1] for r in rows] == ["1.0000", "0.7500", "0.6667", "0.6250", "0.5833",
                                             "0.5615", "0.5374", "0.5211", "0.5080", "0.4934"]


def test_classify(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("1/5 1/5\n2/5 3/5\n3/5 2/5\n")
    code, out, _ = run(capsys, "classify", str(path))
    assert code == EXIT_OK
    assert out.splitlines()[0] == "permutation  (1,3,2)"
    assert "cliff" in out


def test_extremal_round_trips_through_solve(capsys, tmp_path):
    code, out, _ = run(capsys, "extremal", "decreasing", "--n", "3")
    assert code == EXIT_OK
    assert "19/27" in out.splitlines()[0]
    path = tmp_path / "ext.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "solve", str(path))
    assert code == EXIT_OK and "19/27" in out.splitlines()[0]


def test_minimax_small(capsys):
    code, out, _ = run(capsys, "minimax", "2,1", "--restarts", "2")
    assert code == EXIT_OK
    area = float(out.splitlines()[1].split("≈")[-1])
    assert area == pytest.approx(19 / 27, abs=1e-3)


def test_minimax_213_is_no_worse_than_closed_form(capsys):
    code, out, _ = run(capsys, "minimax", "2,1,3", "--restarts", "4")
    assert code == EXIT_OK
    area = float(out.splitlines()[1].split("≈")[-1])
    assert 5 / 8 <= area <= 0.671714 + 1e-6


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ANCHORPACK_SEED", "17")
    code, out, _ = run(capsys, "--json-lines", "minimax", "1", "--restarts", "1", "--seed", "3")
    assert code == EXIT_OK
    (rec,) = records(out)
    assert rec["inputs"]["seed"] == 17


def test_verify_inequality(capsys):
    code, out, _ = run(capsys, "verify-inequality", "--grid", "1/10")
    assert code == EXIT_OK
    assert "violations   0" in out


def test_budget_exhaustion_exits_3(capsys, dec5):
    code, out, _ = run(capsys, "solve", dec5, "--budget", "1")
    assert code == EXIT_BUDGET
    assert "budget exhausted" in out


@pytest.mark.parametrize("argv", [
    ["bound", "hexagonal", "--n", "3"],
    ["bound", "decreasing"],
    ["minimax", "2,2,1"],
    ["minimax", "a,b"],
    ["solve", "/nonexistent/points.txt"],
    ["table", "--n-max", "0"],
    ["verify-inequality", "--grid", "0"],
    ["frobnicate"],
    [],
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err


def test_bad_point_file_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0.5 0.5\n# ok\n0.5 0.25\n")
    code, _, err = run(capsys, "solve", str(path))
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_json_lines_schema_is_stable(capsys, half, tmp_path):
    svg = str(tmp_path / "h.svg")
    cmds = [
        ["solve", half],
        ["classify", half],
        ["bound", "decreasing", "--n", "3"],
        ["bound", "prelayer-threshold"],
        ["extremal", "231"],
        ["minimax", "1", "--restarts", "1"],
        ["table", "--n-max", "3"],
        ["verify-inequality", "--grid", "1/5"],
        ["render", half, "--out", svg],
    ]
    for argv in cmds:
        for where in ("before", "after"):
            full = ["--json-lines", *argv] if where == "before" else [*argv, "--json-lines"]
            code, out, _ = run(capsys, *full)
            assert code == EXIT_OK
            recs = records(out)
            assert recs and all(r["command"] == argv[0] for r in recs)
    code, out, _ = run(capsys, "--json-lines", "solve", half)
    (rec,) = records(out)
    assert rec["value"] == {"exact": "3/4", "float": 0.75}
    assert rec["config"] == [["1/2", "1/2"]]
    assert rec["certificate"]["proof_of_optimality"] is True


def test_solve_render_reparse(capsys, dec5, tmp_path):
    code, out, _ = run(capsys, "--json-lines", "solve", dec5)
    (rec,) = records(out)
    svg = tmp_path / "dec5.svg"
    code, _, _ = run(capsys, "render", dec5, "--out", str(svg), "--staircase", "--hyperbola", "0.3")
    assert code == EXIT_OK
    assert abs(rect_area_from_svg(svg.read_text()) - rec["value"]["float"]) <= 2e-3
    assert F(rec["value"]["exact"]) == bound_decreasing(5).bound


def test_render_to_stdout(capsys, half):
    code, out, _ = run(capsys, "render", half)
    assert code == EXIT_OK
    assert out.startswith("<?xml") and abs(rect_area_from_svg(out) - 0.75) <= 2e-3


def test_module_entry_point(half):
    proc = subprocess.run([sys.executable, "-m", "anchorpack", "solve", half],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "3/4 ≈ 0.750000" in proc.stdout
