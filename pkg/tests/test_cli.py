import json

import pytest

from personakit.cli import main
from personakit.report import tree_hash

from conftest import exhaustive_survey_csv


def run(*args):
    return main([str(a) for a in args])


def full_args(paths, out):
    return ["--survey", paths["survey"], "--pps-users", paths["users"], "--pps-designers", paths["designers"],
            "--config", paths["config"], "--out", out]


def test_validate_clean(fixture_tree, capsys):
    p = fixture_tree
    code = run("validate", "--survey", p["survey"], "--pps-users", p["users"], "--pps-designers", p["designers"],
               "--config", p["config"])
    assert code == 0
    assert "0 errors" in capsys.readouterr().out


def test_validate_bad_score(fixture_tree, capsys):
    p = fixture_tree
    lines = p["survey"].read_text().splitlines()
    lines[3] = lines[3][: lines[3].rindex(",")] + ",6"
    p["survey"].write_text("\n".join(lines) + "\n")
    assert run("validate", "--survey", p["survey"], "--config", p["config"]) == 1
    out = capsys.readouterr().out
    assert "row 4" in out and "q_says_2" in out and "1 error" in out


def test_validate_missing_config(fixture_tree, tmp_path):
    assert run("validate", "--survey", fixture_tree["survey"]) == 2
    assert run("validate", "--survey", fixture_tree["survey"], "--config", tmp_path / "nope.json") == 2


def test_validate_checks_user_selections_against_generated_personas(fixture_tree, capsys):
    p = fixture_tree
    p["users"].write_text(p["users"].read_text().replace("Felipe Rabelo", "Someone Else"))
    assert run("validate", "--survey", p["survey"], "--pps-users", p["users"], "--config", p["config"]) == 1
    assert "UnknownPersonaName" in capsys.readouterr().out


def test_personas_summary(fixture_tree, tmp_path, capsys):
    out = tmp_path / "o"
    assert run("personas", "--survey", fixture_tree["survey"], "--out", out) == 0
    text = capsys.readouterr().out
    sizes = [int(line.split()[-2]) for line in text.splitlines()[1:]]
    assert sizes == [21, 14, 11, 10, 5]
    assert len(json.loads((out / "personas.json").read_text())) == 5
    assert len(json.loads((out / "empathy_maps.json").read_text())) == 61


def test_personas_exhaustive(tmp_path):
    survey = tmp_path / "s.csv"
    survey.write_text(exhaustive_survey_csv())
    assert run("personas", "--survey", survey, "--out", tmp_path / "o") == 0
    assert len(json.loads((tmp_path / "o" / "personas.json").read_text())) == 16


def test_scoring_mode_changes_signatures_only(fixture_tree, tmp_path):
    for mode in ("literal", "reverse_coded"):
        assert run("personas", "--survey", fixture_tree["survey"], "--out", tmp_path / mode, "--scoring-mode", mode) == 0
    lit = json.loads((tmp_path / "literal" / "personas.json").read_text())
    rev = json.loads((tmp_path / "reverse_coded" / "personas.json").read_text())
    assert [p["signature"] for p in lit] != [p["signature"] for p in rev]
    assert sum(p["size"] for p in rev) == 61
    assert set(rev[0]) == set(lit[0])


def test_evaluate_both_audiences(fixture_tree, tmp_path):
    out = tmp_path / "o"
    run("personas", "--survey", fixture_tree["survey"], "--out", out)
    code = run("evaluate", "--pps-users", fixture_tree["users"], "--pps-designers", fixture_tree["designers"], "--out", out)
    assert code == 0
    doc = json.loads((out / "stats.json").read_text())
    assert doc["user"]["n"] == 60 and doc["designer"]["n"] == 38


def test_evaluate_unknown_persona(fixture_tree, tmp_path):
    out = tmp_path / "o"
    run("personas", "--survey", fixture_tree["survey"], "--out", out)
    fixture_tree["users"].write_text(fixture_tree["users"].read_text().replace("Renata Silva", "Ghost"))
    assert run("evaluate", "--pps-users", fixture_tree["users"], "--pps-designers", fixture_tree["designers"], "--out", out) == 1


def test_evaluate_empty_designers(fixture_tree, tmp_path, capsys):
    out = tmp_path / "o"
    run("personas", "--survey", fixture_tree["survey"], "--out", out)
    empty = tmp_path / "empty.csv"
    empty.write_text("participant_id,audience,selected_persona,item_id,score\n")
    args = ["evaluate", "--pps-users", fixture_tree["users"], "--pps-designers", empty, "--out", out]
    assert run(*args) == 1
    assert run(*args, "--allow-empty-audience") == 0
    assert "warning" in capsys.readouterr().err
    assert set(json.loads((out / "stats.json").read_text())) == {"user"}


def test_report_missing_artifact(tmp_path):
    assert run("report", "--out", tmp_path / "nothing") == 1


def test_report_json_only(fixture_tree, tmp_path):
    out = tmp_path / "o"
    assert run("run", *full_args(fixture_tree, out), "--format", "json") == 0
    cards = list((out / "personas").iterdir())
    assert cards and all(c.suffix == ".json" for c in cards)


def test_run_full_tree(fixture_tree, tmp_path):
    out = tmp_path / "o"
    assert run("run", *full_args(fixture_tree, out)) == 0
    assert len(list((out / "personas").glob("*.md"))) == 6
    assert len(list((out / "figures").glob("*.svg"))) == 5
    assert len(list((out / "data").glob("*.json"))) == 5
    assert not list(out.rglob("*.tmp"))


def test_run_idempotent(fixture_tree, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("run", *full_args(fixture_tree, a)) == 0
    assert run("run", *full_args(fixture_tree, b)) == 0
    first = tree_hash(a)
    assert first == tree_hash(b)
    assert run("run", *full_args(fixture_tree, a)) == 0
    assert tree_hash(a) == first


def test_run_stops_at_validate(fixture_tree, tmp_path, capsys):
    fixture_tree["survey"].write_text(fixture_tree["survey"].read_text().replace(",4,3,", ",9,3,", 1))
    out = tmp_path / "o"
    assert run("run", *full_args(fixture_tree, out)) == 1
    assert "stage validate" in capsys.readouterr().err
    assert not out.exists()


def test_dry_run_writes_nothing(fixture_tree, tmp_path, capsys):
    out = tmp_path / "o"
    assert run("run", *full_args(fixture_tree, out), "--dry-run") == 0
    assert "report" in capsys.readouterr().out
    assert not out.exists()


@pytest.mark.parametrize("args", [[], ["bogus"], ["personas"], ["run", "--survey", "missing.csv"]])
def test_usage_errors(args):
    assert main(args) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
