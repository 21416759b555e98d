import json

import pytest

from qdouble.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


def run(args, tmp_path):
    return main(list(args) + ["--out", str(tmp_path)])


def test_anyons_tables(tmp_path, capsys):
    assert run(["anyons", "--group", "z2"], tmp_path) == EXIT_OK
    table = json.loads((tmp_path / "anyons-z2.json").read_text())
    assert table["schema_version"] == 1
    assert [row["dim"] for row in table["anyons"]] == [1, 1, 1, 1]
    assert len(table["monodromy"]) == 16
    assert run(["anyons", "--group", "s3"], tmp_path) == EXIT_OK
    table = json.loads((tmp_path / "anyons-s3.json").read_text())
    assert [row["dim"] for row in table["anyons"]] == [1, 1, 2, 3, 3, 2, 2, 2]


def test_bad_group_is_input_error(tmp_path, capsys):
    assert run(["anyons", "--group", "badfile"], tmp_path) == EXIT_INPUT
    assert "NotAGroup" in capsys.readouterr().err


def test_group_file(tmp_path):
    f = tmp_path / "z3.txt"
    f.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    assert run(["anyons", "--group", str(f)], tmp_path) == EXIT_OK


def test_verify_budget_exit(tmp_path, capsys):
    code = run(["verify", "--suite", "prop42", "--group", "s3", "--patch", "40x40",
                "--ribbon-len", "200"], tmp_path)
    assert code == EXIT_BUDGET


def test_verify_input_errors(tmp_path, capsys):
    assert run(["verify", "--suite", "nope", "--group", "z2"], tmp_path) == EXIT_INPUT
    assert run(["verify", "--suite", "ground", "--group", "z2", "--corrupt", "irrep"],
               tmp_path) == EXIT_INPUT
    assert run(["verify", "--suite", "hopf", "--group", "z2", "--tol", "-1"], tmp_path) == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--suite", "hopf", "--group", "z2", "--patch", "8by8"], tmp_path)
    assert exc.value.code == 2


def test_ground_command(tmp_path, capsys):
    assert run(["ground", "--group", "z3", "--patch", "2x2", "--boundary", "torus"], tmp_path) == EXIT_OK
    report = json.loads((tmp_path / "ground-z3.json").read_text())
    assert report["data"]["dimension"]["orbits"] == 9
    assert run(["ground", "--group", "z2", "--patch", "2x2", "--boundary", "open"], tmp_path) == EXIT_INPUT
    assert "torus" in capsys.readouterr().err


def test_verify_failure_exit(tmp_path, capsys):
    assert run(["verify", "--suite", "hopf", "--group", "s3", "--corrupt", "r_matrix"], tmp_path) == EXIT_FAIL


def test_content_is_deterministic_and_metadata_separate(tmp_path, capsys):
    args = ["verify", "--suite", "prop42", "--suite", "hopf", "--group", "z3", "--n-ribbons", "3",
            "--ribbon-len", "4", "--seed", "5"]
    assert run(args, tmp_path / "a") == EXIT_OK
    assert run(args + ["--jobs", "2"], tmp_path / "b") == EXIT_OK
    for name in ("prop42-z3.json", "hopf-z3.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    meta = json.loads((tmp_path / "a" / "prop42-z3.meta.json").read_text())
    assert "wall_time_s" in meta and "created" in meta
    content = json.loads((tmp_path / "a" / "prop42-z3.json").read_text())
    assert content["schema_version"] == 1 and "wall_time" not in content
    assert not list((tmp_path / "a").glob("*.tmp"))
