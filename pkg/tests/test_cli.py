# tests/test_cli.py
import json

import pytest

import app

SCHEMA = "nslat/1"


@pytest.fixture
def run_cli(tmp_path, capsys):
    """Run the command line in-process; returns (exit code, parsed stdout, stderr)."""

    def _run(*argv, document=None):
        argv = list(argv)
        if document is not None:
            path = tmp_path / "input.json"
            text = document if isinstance(document, str) else json.dumps({"schema": SCHEMA, **document})
            path.write_text(text, encoding="utf-8")
            argv += ["--input", str(path)]
        code = app.run(argv)
        out, err = capsys.readouterr()
        return code, (json.loads(out) if out.strip() else None), err

    return _run


# ========== Lattice commands ==========

def test_lattice_info(run_cli):
    code, out, _ = run_cli("lattice-info", document={"lattice": [[0, 1], [1, 0]]})
    assert code == 0
    assert out["schema"] == SCHEMA
    assert out["determinant"] == -1
    assert out["signature"] == [1, 1, 0]
    assert out["even"] and out["unimodular"]
    assert out["characteristic"] == [0, 0]
    assert out["trigonal"] == "yes"


def test_lattice_info_non_unimodular(run_cli):
    code, out, _ = run_cli("lattice-info", document={"lattice": [[2]], "omega": [0]})
    assert code == 0
    assert not out["unimodular"]
    assert "trigonal" not in out
    assert out["omega_characteristic"]


def test_normalize_characteristic(run_cli):
    lattice = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    code, out, _ = run_cli("normalize-characteristic", document={"lattice": lattice, "omega": [6, 4, 2, 2]})
    assert code == 0
    assert out["holds"] is False
    assert out["normal_form"] == [4, 2, 0, 0]
    assert "transcript" not in out

    code, out, _ = run_cli("--trace", "normalize-characteristic", document={"lattice": lattice, "omega": [3, 1, 1, 1]})
    assert out["holds"] is True and out["case"] == "ODD"
    assert out["normal_form"] == [3, 1, 1, 1]
    assert "transcript" in out


def test_reduce_trigonal(run_cli):
    code, out, _ = run_cli("reduce-trigonal", document={"trig": [1, 0]})
    assert code == 0
    assert out["canonical"] == "DIAG"
    assert out["omega"] == [-3, 1]
    assert out["determinants"] == [1, 1, -1]

    code, out, _ = run_cli("reduce-trigonal", "--even", document={"trig": [0, 0, 0, 0]})
    assert code == 0 and out["m"] == 2


# ========== Surface commands ==========

def test_criterion_plane(run_cli):
    code, out, _ = run_cli("criterion", document={"surface": {"gram": [[1]], "K": [-3]}})
    assert code == 0
    assert out["admits"] is True and out["case"] == "RANK1"
    assert out["necessary"]["unimodular"]


def test_criterion_obstruction_is_a_decision(run_cli):
    code, out, _ = run_cli("criterion", document={"surface": {"gram": [[2]], "K": [0]}})
    assert code == 0
    assert out["admits"] is False
    assert out["obstruction"]["determinant"] == 2


def test_construct_and_verify_collection(run_cli):
    surface = {"gram": [[0, 1], [1, 0]], "K": [-2, -2]}
    code, out, _ = run_cli("construct-collection", document={"surface": surface})
    assert code == 0
    assert out["trigonal"] == {"trig": [0, -2, 0]}
    classes = out["classes"]

    code, out, _ = run_cli("verify-collection", document={"surface": surface, "classes": classes})
    assert code == 0
    assert out["exceptional"] and out["maximal"]
    assert out["trig"] == [0, -2, 0]

    code, out, _ = run_cli("verify-collection", document={"surface": surface, "classes": classes[::-1]})
    assert code == 0
    assert not out["exceptional"] and out["defects"]


def test_classify_and_dolgachev(run_cli):
    code, out, _ = run_cli("classify", "--model", "Enriques")
    assert code == 0
    assert out["admits"] is False and out["lattice_admits"] is False

    code, out, _ = run_cli("classify", document={"descriptor": {"minimal": True, "kodaira": "ONE", "dolgachev_multiplicities": [2, 4]}})
    assert code == 0 and out["admits"] is True

    code, out, _ = run_cli("dolgachev", "3", "2")
    assert out == {"multiplicities": [2, 3], "lambda": 1, "admits": True, "schema": SCHEMA}


def test_toric_fan(run_cli, tmp_path):
    svg = tmp_path / "p2.svg"
    code, out, _ = run_cli("toric-fan", "--svg", str(svg), document={"toric_system": {"self_intersections": [1, 1, 1]}})
    assert code == 0
    assert out["rays"] == [[1, 0], [0, 1], [-1, -1]]
    assert svg.exists()

    code, out, _ = run_cli("toric-fan", document={"surface": {"gram": [[1]], "K": [-3]}, "divisors": [[1], [1]]})
    assert out["self_intersections"] == [1, 1, 1]


# ========== Exit codes ==========

def test_invalid_json_exits_one(run_cli):
    code, out, err = run_cli("criterion", document='{"schema": "nslat/1", ')
    assert code == 1
    assert out is None
    assert "line 1 column" in err


def test_unknown_field_exits_one(run_cli):
    code, _, err = run_cli("criterion", document={"surface": {"gram": [[1]], "K": [-3]}, "colour": "red"})
    assert code == 1
    assert "unknown field 'colour'" in err


def test_usage_errors_exit_one(run_cli):
    assert run_cli()[0] == 1
    assert run_cli("no-such-command")[0] == 1
    assert run_cli("dolgachev", "1", "3")[0] == 1


def test_missing_input_file_exits_one(run_cli, tmp_path):
    code, _, _ = run_cli("criterion", "--input", str(tmp_path / "absent.json"))
    assert code == 1


def test_exhausted_search_exits_two(run_cli):
    assert run_cli("config", "set", "max_search_vectors", "1")[0] == 0
    code, out, _ = run_cli("construct-collection", document={"surface": {"gram": [[1, 0], [0, -1]], "K": [-3, 1]}})
    assert code == 2
    assert out["result"] == "unknown"


# ========== Settings and history ==========

def test_config_commands(run_cli):
    code, out, _ = run_cli("config", "get", "diagonalization_box")
    assert out["value"] == "6"
    run_cli("config", "set", "diagonalization_box", "8")
    code, out, _ = run_cli("config", "list")
    assert out["settings"]["diagonalization_box"] == "8"
    assert run_cli("config", "get", "colour")[0] == 1
    assert run_cli("config", "set", "diagonalization_box")[0] == 1


def test_history_records_decisions(run_cli):
    run_cli("dolgachev", "2", "3")
    run_cli("--no-history", "dolgachev", "2", "5")
    code, out, _ = run_cli("history", "--limit", "5")
    assert code == 0
    commands = [row["command"] for row in out["decisions"]]
    assert commands == ["dolgachev"]
    assert out["decisions"][0]["result"]["lambda"] == 1


def test_unwritable_database_keeps_decisions(run_cli, tmp_path, monkeypatch):
    blocker = tmp_path / "not-a-directory"
    blocker.write_text("", encoding="utf-8")
    monkeypatch.setenv("NSLAT_DB", str(blocker / "nslat.sqlite"))

    code, out, err = run_cli("dolgachev", "2", "3")
    assert code == 0
    assert out["lambda"] == 1
    assert "not recorded" in err

    code, out, err = run_cli("--no-history", "lattice-info", document={"lattice": [[1, 0], [0, -1]]})
    assert code == 0
    assert out["determinant"] == -1 and "trigonal" in out
    assert "default search limits" in err

    assert run_cli("config", "list")[0] == 1
