import json
import subprocess
import sys

import pytest

from cli_cases import COMMANDS, EVEN, FIX, f, round_trip_text, run
from homschur import formats as fm


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_command_succeeds_and_is_deterministic(name):
    code, out, err = run(COMMANDS[name])
    assert code == 0, err
    assert out.endswith("\n")
    json.loads(out)
    assert run(COMMANDS[name]) == (code, out, err)


def test_identity_times_b_is_b():
    code, out, _ = run(["hg", "mul", *EVEN, f("matrix_id_yx.json"), f("matrix_b.json")])
    assert code == 0
    assert out == (FIX / "matrix_b.json").read_text()


def test_compose_output():
    _, out, _ = run(COMMANDS["compose"])
    doc = json.loads(out)
    assert doc["src"] == "x" and doc["dst"] == "y"
    # (id_y - h) o 2f
    assert doc["terms"] == [{"coeff": "2", "path": ["f"]}, {"coeff": "-2", "path": ["h", "f"]}]


def test_operad_output():
    _, out, _ = run(COMMANDS["operad compose"])
    doc = json.loads(out)
    assert [(t["center"], t["radius"]) for t in doc["intervals"]] == [
        ("-1/2", "1/8"),
        ("3/8", "1/16"),
        ("5/8", "1/16"),
    ]


def test_betti_output():
    _, out, _ = run(COMMANDS["betti"])
    assert json.loads(out)["betti"] == {"0": 1, "1": 1}


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run([*COMMANDS["cob embed"], "-o", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == run(COMMANDS["cob embed"])[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "--complex", f("complex_bad.json")],
        ["validate", "--config", f("config_overlap.json")],
        ["validate", "--category", f("cat_odd.json"), "--even-mode"],
        ["hg", "act", *EVEN, f("matrix_b.json"), f("vector.json")],
        ["cob", "compose", *EVEN, f("cob_b.json"), f("cob_a.json")],
    ],
)
def test_validation_failures_exit_one(argv):
    code, out, _ = run(argv)
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_bad_complex_names_offender():
    _, out, _ = run(["validate", "--complex", f("complex_bad.json")])
    assert "d(d(" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["hg", "mul", *EVEN, f("missing.json")],
        ["betti", f("cat_even.json")],
        ["nonsense"],
        ["sym", "signs", "--a", "1"],
    ],
)
def test_usage_and_schema_errors_exit_two(argv, capsys):
    code, _, _ = run(argv)
    capsys.readouterr()
    assert code == 2


def test_malformed_json_exits_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["betti", str(bad)])[0] == 2


def test_generator_form_representation_loads():
    code, out, err = run(
        ["hg", "act", "--category", f("cat_even.json"), "--representation", f("inputs/representation_generators.json"),
         f("matrix_sq.json"), f("vector.json")]
    )
    assert code == 0, err
    assert out == run(COMMANDS["hg act"])[1]


def test_axioms_report_all_ok():
    code, out, _ = run(COMMANDS["axioms"])
    assert code == 0
    assert all(law["ok"] for law in json.loads(out)["laws"])


def test_console_entry_point_matches_in_process():
    proc = subprocess.run(
        [sys.executable, "-m", "homschur", *COMMANDS["schur include"]], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == run(COMMANDS["schur include"])[1]


def _fixture_files():
    return sorted(p for p in FIX.rglob("*.json") if "inputs" not in p.parts)


@pytest.mark.parametrize("path", _fixture_files(), ids=lambda p: str(p.relative_to(FIX)))
def test_fixture_round_trip(path):
    assert round_trip_text(path) == path.read_text()
