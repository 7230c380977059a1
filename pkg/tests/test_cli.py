import io
import json

import pytest

from kampe.cli import canonical_dumps, main


def run_cli(capsys, monkeypatch, job, argv=()):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(job)))
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_canonical_round_trip():
    report = {"b": [1.0, 0.3333333333333333, 2], "a": {"y": 1e-300, "x": "s"},
              "flag": True, "none": None}
    text = canonical_dumps(report)
    again = canonical_dumps(json.loads(text))
    assert text == again


def test_eval_origin(capsys, monkeypatch):
    job = {"command": "eval", "function": "F0211",
           "params": {"b": 0.5, "c": 0.5, "d": 0.5, "e": 1.5, "g": 1.5},
           "points": [[0, 0]]}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    report = json.loads(out)
    assert report["results"][0]["value"] == 1
    assert report["results"][0]["status"] == "converged"


def test_eval_report_round_trips(capsys, monkeypatch):
    job = {"command": "eval", "function": "XI2",
           "params": {"b": 0.7, "c": 1.1, "e": 1.4},
           "points": [[0.3, 0.4], [0.1, -0.2]]}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    assert out == canonical_dumps(json.loads(out)) + "\n"


def test_eval_grid_csv(tmp_path, capsys, monkeypatch):
    csv_path = tmp_path / "grid.csv"
    job = {"command": "eval", "function": "F0211",
           "params": {"b": 0.5, "c": 0.5, "d": 0.5, "e": 1.5, "g": 1.5},
           "grid": {"x_min": 0.0, "x_max": 0.4, "nx": 3,
                    "y_min": 0.0, "y_max": 0.4, "ny": 2}}
    code, _ = run_cli(capsys, monkeypatch, job, ["--csv", str(csv_path)])
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "x,y,value,status"
    assert len(lines) == 1 + 6
    assert all(line.endswith("converged") for line in lines[1:])


def test_raw_shape_eval(capsys, monkeypatch):
    job = {"command": "eval",
           "shape": {"upper_joint": [0.75]},
           "points": [[0.3, 0.4]]}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    value = json.loads(out)["results"][0]["value"]
    assert value == pytest.approx(0.3 ** -0.75, rel=1e-12)


def test_solutions_command(capsys, monkeypatch):
    job = {"command": "solutions", "function": "F1211",
           "params": {"a": 1, "b": 1, "c": 1, "d": 1, "e": 2, "f": 2, "g": 0.3}}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    report = json.loads(out)
    sols = report["solutions"]
    assert [s["tau"] for s in sols] == [0, 0]
    assert sols[0]["nu"] == 0
    assert sols[1]["nu"] == pytest.approx(0.7)
    assert sols[1]["shape"]["lower_y"] == [pytest.approx(1.7)]
    assert sols[1]["shape"]["upper_x"] == [1, 1]


def test_solutions_degenerate(capsys, monkeypatch):
    job = {"command": "solutions", "function": "F0211",
           "params": {"b": 0.5, "c": 0.5, "d": 0.5, "e": 1.5, "g": 2.0}}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    report = json.loads(out)
    assert report["degenerate"] is True
    assert len(report["solutions"]) == 1


def test_residual_command(capsys, monkeypatch):
    job = {"command": "residual", "function": "F0211", "solution": "u2",
           "params": {"b": 0.3, "c": 0.7, "d": 0.7, "e": 1.2, "g": 0.4},
           "grid": {"x_min": 0.1, "x_max": 0.4, "nx": 3,
                    "y_min": 0.1, "y_max": 0.4, "ny": 3}}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    rows = json.loads(out)["results"]
    assert len(rows) == 18  # 9 points x 2 equations
    assert all(row["ratio"] <= 1e-8 for row in rows)


def test_cauchy_command(capsys, monkeypatch):
    job = {"command": "cauchy",
           "problem": {"alpha": -0.1, "beta": -0.1, "lambda": 0.0,
                       "tau": [2.5], "nu": []},
           "points": [[0.3, 0.6]], "nodes": 64}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 0
    assert json.loads(out)["results"][0]["value"] == pytest.approx(2.5, abs=1e-6)


def test_check_subset_deterministic(capsys, monkeypatch):
    job = {"command": "check",
           "checks": ["indicial_roots", "quadrature_moments", "origin_normalization"]}
    code1, out1 = run_cli(capsys, monkeypatch, job, ["--seed", "42"])
    code2, out2 = run_cli(capsys, monkeypatch, job, ["--seed", "42"])
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["all_passed"] is True


def test_schema_errors(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, {"command": "bogus"})
    assert code == 2
    assert json.loads(out)["error"] == "schema"

    job = {"command": "eval", "function": "F0211",
           "params": {"b": 0.5}, "points": [[0, 0]]}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 2
    assert "params.c" in json.loads(out)["message"]

    job = {"command": "eval", "function": "F0211",
           "params": {"b": 0.5, "c": 0.5, "d": 0.5, "e": 1.5, "g": 1.5}}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 2
    assert "points" in json.loads(out)["message"]


def test_grid_limit(capsys, monkeypatch):
    job = {"command": "eval", "function": "XI2",
           "params": {"b": 0.7, "c": 1.1, "e": 1.4},
           "grid": {"x_min": 0, "x_max": 0.1, "nx": 2000,
                    "y_min": 0, "y_max": 0.1, "ny": 2000}}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 2
    assert "grid" in json.loads(out)["message"]


def test_unknown_check_name(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, {"command": "check", "checks": ["nope"]})
    assert code == 2
    assert "nope" in json.loads(out)["message"]


def test_math_error_exit_code(capsys, monkeypatch):
    # beta = 0 is a kernel pole: domain/math error, exit 1
    job = {"command": "cauchy",
           "problem": {"alpha": 0.0, "beta": 0.0, "tau": [1.0], "nu": []},
           "points": [[0.3, 0.6]]}
    code, out = run_cli(capsys, monkeypatch, job)
    assert code == 1
    assert json.loads(out)["error"] == "PoleError"


def test_policy_flag_override(capsys, monkeypatch):
    job = {"command": "eval", "function": "F0211",
           "params": {"b": 0.5, "c": 0.5, "d": 0.5, "e": 1.5, "g": 1.5},
           "points": [[0.45, 0.3]]}
    code, out = run_cli(capsys, monkeypatch, job, ["--tol", "1e-6", "--max-diagonal", "50"])
    assert code == 0
    row = json.loads(out)["results"][0]
    assert row["status"] == "converged"
    code, out2 = run_cli(capsys, monkeypatch, job, ["--tol", "1e-14"])
    row2 = json.loads(out2)["results"][0]
    assert row2["diagonals"] > row["diagonals"]
