"""
Tests for the rmk command line
"""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from rmk.core.kripke import dump_model, load_model
from rmk.main import cli, main


@pytest.fixture
def runner():
    return CliRunner(env={"RMK_LOG_LEVEL": "CRITICAL"})


@pytest.fixture
def chain_file(tmp_path, chain):
    path = tmp_path / "chain.json"
    path.write_text(dump_model(chain))
    return str(path)


def run(runner, *args):
    result = runner.invoke(cli, list(args))
    return result, (json.loads(result.stdout) if result.exit_code in (0, 1) else None)


def test_check_and_truthset(runner, chain_file):
    result, document = run(runner, "check", "--model", chain_file, "--formula", "und p0", "--world", "0")
    assert result.exit_code == 0
    assert document == {"formula": "und p0", "holds": True, "world": 0}

    result, document = run(runner, "truthset", "--model", chain_file, "--formula", "det p0")
    assert document["truth_set"] == [1, 2]


def test_output_keys_are_sorted(runner, chain_file):
    result = runner.invoke(cli, ["check", "--model", chain_file, "--formula", "p0", "--world", "1"])
    assert result.stdout.strip() == '{"formula": "p0", "holds": true, "world": 1}'


def test_sim_greatest(runner, chain_file):
    result, document = run(runner, "sim-greatest", "--model", chain_file, "--lambda", "smile")
    assert result.exit_code == 0
    assert document["pairs"] == [[0, 0], [0, 1], [1, 1], [2, 1], [2, 2]]
    assert document["mode"] == "plain"


def test_sim_greatest_dot(runner, chain_file):
    result, document = run(runner, "sim-greatest", "--model", chain_file, "--lambda", "smile", "--dot")
    assert document["dot"].startswith("digraph")


def test_sim_verify_exit_codes(runner, chain_file, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"pairs": [[0, 0], [0, 1], [1, 1], [2, 1], [2, 2]]}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"pairs": [[1, 0]]}))

    result, document = run(runner, "sim-verify", "--model", chain_file, "--lambda", "smile", "--relation", str(good))
    assert result.exit_code == 0

    result, document = run(runner, "sim-verify", "--model", chain_file, "--lambda", "smile", "--relation", str(bad))
    assert result.exit_code == 1
    assert document["violations"]


def test_witness(runner, chain_file):
    result, document = run(runner, "witness", "--model", chain_file, "--lambda", "smile", "--pair", "0", "2")
    assert document == {"formula": "smile F", "pair": [0, 2], "similar": False}
    result, document = run(runner, "witness", "--model", chain_file, "--lambda", "smile", "--pair", "0", "1")
    assert document["similar"] is True
    assert document["formula"] is None


def test_subsume_and_closure(runner, chain_file):
    result, document = run(runner, "subsume", "--model", chain_file, "--lambda", "smile")
    assert document["pairs"] == [[0, 0], [0, 1], [1, 1], [2, 1], [2, 2]]
    result, document = run(runner, "closure", "--model", chain_file)
    assert document["size"] == 3


def test_translate_and_st_check(runner, chain_file):
    result, document = run(runner, "translate", "--formula", "smile p0")
    assert document["fol"] == "exists y0. (R(x,y0) & !P0(y0))"
    result, document = run(runner, "st-check", "--model", chain_file, "--formula", "con smile p0", "--world", "1")
    assert result.exit_code == 0
    assert document["agree"] is True


def test_formula_from_file(runner, chain_file, tmp_path):
    path = tmp_path / "phi.txt"
    path.write_text("frown p0\n")
    result, document = run(runner, "truthset", "--model", chain_file, "--formula-file", str(path))
    assert document["truth_set"] == [2]


def test_gen_emits_a_loadable_model(runner):
    result = runner.invoke(cli, ["gen", "--worlds", "4", "--letters", "2", "--seed", "3"])
    assert result.exit_code == 0
    model = load_model(result.stdout)
    assert model.n_worlds == 4
    again = runner.invoke(cli, ["gen", "--worlds", "4", "--letters", "2", "--seed", "3"])
    assert again.stdout == result.stdout


def test_examples_command(runner):
    result, document = run(runner, "examples")
    assert result.exit_code == 0
    assert document["ok"] is True


def test_suite_command(runner):
    result, document = run(runner, "suite", "hm", "--seed", "1", "--trials", "10", "--max-worlds", "3")
    assert result.exit_code == 0
    assert document["suite"] == "hm"
    assert document["trials"] == 10
    assert document["failures"] == []


def test_principles_command(runner):
    result, document = run(runner, "principles", "--name", "Con1", "--name", "LegCa")
    assert result.exit_code == 0
    assert [r["name"] for r in document["results"]] == ["Con1", "LegCa"]


def test_certificate_search_and_cert_verify(runner, tmp_path):
    result, document = run(runner, "probe", "--target", "smile p0", "--lambda", "inc", "--trials", "0")
    assert result.exit_code == 0
    assert document["certificate"]["source"] == "registry:smile_vsmile"

    path = tmp_path / "cert.json"
    path.write_text(json.dumps(document["certificate"]))
    result, document = run(runner, "cert-verify", str(path))
    assert result.exit_code == 0
    assert document == {"ok": True, "problems": []}


def test_usage_errors_exit_with_two(runner, chain_file):
    assert runner.invoke(cli, ["sim-greatest", "--model", chain_file, "--lambda", "bogus"]).exit_code == 2
    assert runner.invoke(cli, ["sim-greatest", "--model", chain_file, "--mode", "sideways"]).exit_code == 2
    assert runner.invoke(cli, ["suite", "nope"]).exit_code == 2
    assert runner.invoke(cli, ["check", "--model", chain_file, "--world", "0"]).exit_code == 2


def test_library_errors_become_json_documents(runner, chain_file):
    result = runner.invoke(cli, ["check", "--model", chain_file, "--formula", "p0 &", "--world", "0"])
    assert result.exit_code == 2
    assert '"error": "FormulaSyntaxError"' in result.stdout

    result = runner.invoke(cli, ["sim-greatest", "--model", chain_file, "--lambda", "box"])
    assert result.exit_code == 2
    assert '"error": "ValueError"' in result.stdout


def test_bad_model_file(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"worlds": 1, "edges": [[0, 4]]}))
    result = runner.invoke(cli, ["check", "--model", str(path), "--formula", "p0", "--world", "0"])
    assert result.exit_code == 2
    assert "ModelSchemaError" in result.stdout


def test_main_returns_exit_codes(chain_file, capsys):
    assert main(["check", "--model", chain_file, "--formula", "p0", "--world", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["holds"] is True
    assert main(["check", "--model", chain_file, "--formula", "p0 &", "--world", "0"]) == 2
    assert main(["no-such-command"]) == 2


@pytest.mark.parametrize("args", [
    ["gen", "--worlds", "2"],
    ["check", "--model", "MODEL", "--formula", "p0", "--world", "0"],
    ["examples"],
])
def test_stdout_holds_only_the_document_in_a_fresh_process(args, chain_file):
    args = [chain_file if a == "MODEL" else a for a in args]
    env = {**os.environ, "RMK_LOG_LEVEL": "DEBUG"}
    result = subprocess.run(
        [sys.executable, "-m", "rmk", *args],
        cwd=Path(__file__).resolve().parents[1], env=env, capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    json.loads(result.stdout)
    if args[0] == "examples":
        assert "model_loaded" in result.stderr


@pytest.mark.parametrize("pair", [["0", "9"], ["9", "0"]])
def test_witness_pair_outside_the_model(runner, chain_file, pair):
    result = runner.invoke(cli, ["witness", "--model", chain_file, "--lambda", "smile", "--pair", *pair])
    assert result.exit_code == 2
    assert "outside the model" in result.stdout
