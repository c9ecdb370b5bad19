import json
import math
import subprocess
import sys

from quadrics import fixtures
from quadrics.cli import run

PI = math.pi


def _write_problem(tmp_path, pencil, name="problem.json", **extra):
    data = pencil.to_json()
    data["cone"] = {"kind": "zero", "generators": []}
    data.update(extra)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _run(tmp_path, argv):
    out = tmp_path / "out.json"
    code = run(argv + ["--output", str(out)])
    if out.exists():
        return code, json.loads(out.read_text())
    return code, None


def test_betti_x_bouquet(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    code, data = _run(tmp_path, ["betti-x", "--input", inp])
    assert code == 0
    assert data["b"] == [1, 3, 0, 0]
    assert data["chi"] == -2
    assert data["mu"] == 2
    assert data["violations"] == []


def test_betti_x_reads_stdin(tmp_path, monkeypatch, capsys):
    data = fixtures.bouquet().to_json()
    data["cone"] = {"kind": "zero", "generators": []}

    class FakeStdin:
        def read(self):
            return json.dumps(data)

    monkeypatch.setattr(sys, "stdin", FakeStdin())
    code = run(["betti-x"])
    captured = capsys.readouterr()
    assert code == 0
    assert json.loads(captured.out)["b"] == [1, 3, 0, 0]


def test_extremal_pipes_into_betti_x(tmp_path):
    code, problem = _run(tmp_path, ["extremal", "--n", "5"])
    assert code == 0
    path = tmp_path / "prob.json"
    path.write_text(json.dumps(problem))
    code, data = _run(tmp_path, ["betti-x", "--input", str(path)])
    assert code == 0
    assert data["total"] == 10


def test_table_four_lines(tmp_path):
    inp = _write_problem(tmp_path, fixtures.four_lines())
    code, data = _run(tmp_path, ["table", "--input", inp])
    assert code == 0
    assert data["table"] == [[1, 0, 0], [1, 0, 0], [0, 3, 0], [0, 0, 1]]
    assert data["w1"] is False


def test_euler_consistency(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    code, data = _run(tmp_path, ["euler", "--input", inp])
    assert code == 0
    assert data["chi"] == data["chi_alternating"] == -2


def test_betti_y_four_lines(tmp_path):
    inp = _write_problem(tmp_path, fixtures.four_lines())
    code, data = _run(tmp_path, ["betti-y", "--input", inp])
    assert code == 0
    first = data["entries"][0]
    assert first["determined"] and first["absolute"] == 1


def test_calabi_identity(tmp_path):
    inp = _write_problem(tmp_path, fixtures.definite_form(3))
    code, data = _run(tmp_path, ["calabi", "--input", inp])
    assert code == 0
    assert data["kind"] == "positive_combination"
    assert abs(data["margin"] - 1.0) < 1e-9


def test_member(tmp_path):
    import numpy as np
    from quadrics.pencil import QuadraticPencil
    p = QuadraticPencil(np.eye(3), np.diag([1.0, -1.0, 0.0]))
    inp = _write_problem(tmp_path, p)
    code, data = _run(tmp_path, ["member", "--input", inp, "--c", "1", "0"])
    assert code == 0
    assert data["member"] is True
    code, data = _run(tmp_path, ["member", "--input", inp, "--c", "0", "0.5"])
    assert code == 0
    assert data["member"] is False
    assert data["certificate"]["margin"] > 0


def test_level_set(tmp_path):
    inp = _write_problem(tmp_path, fixtures.complex_squaring(),
                         c=[1.0, 0.0], mode="eq")
    code, data = _run(tmp_path, ["level-set", "--input", inp])
    assert code == 0
    assert data["nonempty"] is True
    assert data["b_tilde"][0] == 1


def test_support(tmp_path):
    inp = _write_problem(tmp_path, fixtures.definite_form(3))
    code, data = _run(tmp_path, ["support", "--input", inp,
                                 "--theta", "0.0"])
    assert code == 0
    assert abs(data["support"][0]["value"] - 1.0) < 1e-12


def test_profile_csv(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    csv_path = tmp_path / "profile.csv"
    code, data = _run(tmp_path, ["profile", "--input", inp,
                                 "--csv", str(csv_path)])
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "theta,i_plus,i_minus,is_breakpoint"
    bp_rows = [ln for ln in lines[1:] if ln.endswith("true")]
    assert len(bp_rows) == 2
    for row in bp_rows:
        assert row.split(",")[1] == "1"


def test_profile_csv_extremal(tmp_path):
    code, problem = _run(tmp_path, ["extremal", "--n", "4"])
    path = tmp_path / "prob.json"
    path.write_text(json.dumps(problem))
    csv_path = tmp_path / "profile.csv"
    code, data = _run(tmp_path, ["profile", "--input", str(path),
                                 "--csv", str(csv_path)])
    assert code == 0
    assert data["breakpoints"] == 10


def test_profile_csv_with_grid_rows(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    csv_path = tmp_path / "profile.csv"
    code, _ = _run(tmp_path, ["profile", "--input", inp, "--csv", str(csv_path),
                              "--grid", "90"])
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    # 2 breakpoints + 2 arc midpoints + 90 grid samples
    assert len(lines) == 1 + 4 + 90


def test_profile_csv_point_domain(tmp_path):
    import math
    data = fixtures.bouquet().to_json()
    data["cone"] = {"kind": "halfplane",
                    "generators": [[0.0, 1.0], [0.0, -1.0]]}
    path = tmp_path / "prob.json"
    path.write_text(json.dumps(data))
    csv_path = tmp_path / "profile.csv"
    code, data_out = _run(tmp_path, ["profile", "--input", str(path),
                                     "--csv", str(csv_path)])
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert len(lines) == 2  # header plus the single domain point


def test_fixture_subcommand(tmp_path):
    code, data = _run(tmp_path, ["fixture", "bouquet"])
    assert code == 0
    assert data["n"] == 3


def test_verify_bouquet(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    code, data = _run(tmp_path, ["verify", "--input", inp, "--seed", "1"])
    assert code == 0
    assert data["oracle"]["grid_disagreements"] == 0
    assert data["oracle"]["sampled_b0"] == 1


def test_betti_x_verify_flag(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    code, data = _run(tmp_path, ["betti-x", "--input", inp, "--verify",
                                 "--seed", "1"])
    assert code == 0
    assert data["oracle"]["grid_disagreements"] == 0


def test_invalid_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = _run(tmp_path, ["betti-x", "--input", str(bad)])
    assert code == 2


def test_asymmetric_matrix_exit_code(tmp_path):
    bad = tmp_path / "asym.json"
    bad.write_text(json.dumps({
        "n": 1,
        "Q0": [[0.0, 1.0], [0.0, 0.0]],
        "Q1": [[0.0, 0.0], [0.0, 0.0]],
    }))
    code, _ = _run(tmp_path, ["betti-x", "--input", str(bad)])
    assert code == 2


def test_unknown_fixture_exit_code(tmp_path):
    code, _ = _run(tmp_path, ["fixture", "nonexistent"])
    assert code == 2


def test_deterministic_output(tmp_path):
    inp = _write_problem(tmp_path, fixtures.four_lines())
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert run(["betti-x", "--input", inp, "--seed", "7",
                "--output", str(out1)]) == 0
    assert run(["betti-x", "--input", inp, "--seed", "7",
                "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_problem_roundtrip_bit_exact(tmp_path):
    import numpy as np
    from quadrics.pencil import QuadraticPencil
    rng = np.random.default_rng(1)
    p = fixtures.random_pencil(rng, 5)
    data = json.loads(json.dumps(p.to_json()))
    p2 = QuadraticPencil.from_json(data)
    assert np.array_equal(p.q0, p2.q0)
    assert np.array_equal(p.q1, p2.q1)


def test_console_entry_point(tmp_path):
    inp = _write_problem(tmp_path, fixtures.bouquet())
    proc = subprocess.run(
        [sys.executable, "-m", "quadrics.cli", "betti-x", "--input", inp],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["b"] == [1, 3, 0, 0]
