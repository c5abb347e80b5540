import json

import pytest

from delbisim import save_model
from delbisim.cli import main


@pytest.fixture
def model_file(tmp_path, loop):
    path = tmp_path / "loop.json"
    path.write_text(save_model(loop))
    return str(path)


@pytest.fixture
def cycle_file(tmp_path, cycle2):
    path = tmp_path / "cycle2.json"
    path.write_text(save_model(cycle2))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_identity(capsys, model_file):
    code, out, _ = run(capsys, "check", "--kind", "s", model_file, model_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["answer"] == "yes"
    assert doc["witness"] is None


def test_check_gate_exit_code(capsys, model_file, cycle_file):
    code, out, _ = run(capsys, "check", "--kind", "s", model_file, cycle_file)
    assert code == 1
    doc = json.loads(out)
    assert doc["answer"] == "no"
    assert doc["witness"]["condition"] == "edge-count"


def test_check_oracle_and_stats(capsys, model_file, cycle_file):
    code, out, _ = run(
        capsys, "check", "--kind", "s", "--oracle", "--stats", model_file, cycle_file
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["oracle"] == "no"
    assert doc["match"] is True
    assert "max_depth" in doc and "calls" in doc


def test_check_deterministic_stdout(capsys, model_file, cycle_file):
    _, first, _ = run(capsys, "check", "--kind", "g", model_file, cycle_file)
    _, second, _ = run(capsys, "check", "--kind", "g", model_file, cycle_file)
    assert first == second


def test_eval_true_false(capsys, model_file):
    code, out, _ = run(capsys, "eval", model_file, "dia p")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "eval", model_file, "sab sab true")
    assert code == 1 and out.strip() == "false"


def test_eval_undeclared_atom(capsys, model_file):
    code, _, err = run(capsys, "eval", model_file, "q")
    assert code == 2
    assert "error" in json.loads(err)


def test_eval_bad_formula(capsys, model_file):
    code, _, err = run(capsys, "eval", model_file, "dia (")
    assert code == 2
    assert "error" in json.loads(err)


def test_charform_prints_formula(capsys, model_file):
    code, out, _ = run(capsys, "charform", "--kind", "s", model_file)
    assert code == 0
    assert "@w" in out and "sab" in out


def test_charform_guard_exit(capsys, tmp_path):
    from delbisim import KripkeModel, PointedModel

    dense = PointedModel.make(
        KripkeModel.make(
            ["a", "b"], [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
        ),
        "a",
    )
    path = tmp_path / "dense.json"
    path.write_text(save_model(dense))
    code, _, err = run(capsys, "charform", "--kind", "s", str(path))
    assert code == 3
    assert "guard" in json.loads(err)["error"]


def test_charcheck_agreement(capsys, model_file, cycle_file):
    code, out, _ = run(capsys, "charcheck", "--kind", "s", model_file, model_file)
    assert code == 0
    assert json.loads(out)["match"] is True
    code, out, _ = run(capsys, "charcheck", "--kind", "s", model_file, cycle_file)
    assert code == 1
    assert json.loads(out)["char_check"] is False


def test_translate_directions(capsys, model_file):
    code, out, _ = run(capsys, "translate", "--dir", "f", model_file)
    assert code == 0
    doc = json.loads(out)
    assert "w·w·i" in doc["worlds"]
    code, out, _ = run(capsys, "translate", "--dir", "g", model_file)
    assert code == 0
    assert json.loads(out)["edges"] == [["w", "w"]]
    code, out, _ = run(
        capsys, "translate", "--dir", "g", "--edges-to-sink", "intent", model_file
    )
    assert json.loads(out)["edges"] == [["w", "w"], ["w", "w_j"]]


def test_random_is_deterministic(capsys):
    _, first, _ = run(capsys, "random", "--seed", "9", "--worlds", "3", "--edges", "4")
    _, second, _ = run(capsys, "random", "--seed", "9", "--worlds", "3", "--edges", "4")
    assert first == second
    doc = json.loads(first)
    assert len(doc["worlds"]) <= 3
    assert len(doc["edges"]) <= 4


def test_sweep_summary(capsys):
    code, out, _ = run(
        capsys, "sweep", "--kinds", "s,d", "--seed", "7", "--count", "5"
    )
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    summary = lines[-1]
    assert summary["pairs"] == 5
    assert summary["mismatches"] == 0
    assert len(lines) == 5 * 2 + 1
    assert all(line["match"] for line in lines[:-1])


def test_sweep_rejects_unknown_kind(capsys):
    code, _, err = run(capsys, "sweep", "--kinds", "zz", "--seed", "1", "--count", "1")
    assert code == 2
    assert "error" in json.loads(err)


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "--kind", "s", "/nope/a.json", "/nope/b.json")
    assert code == 2
    assert "error" in json.loads(err)


def test_bad_model_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"worlds":["w"],"edges":[["w","x"]],"propositions":[],"valuation":{},"point":"w"}')
    code, _, err = run(capsys, "check", "--kind", "s", str(path), str(path))
    assert code == 2
    assert "undeclared" in json.loads(err)["error"]


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_translate_report_runs(capsys):
    code, out, _ = run(capsys, "translate-report", "--seed", "5", "--count", "4")
    assert code == 0
    assert "Translation correspondence report" in out
