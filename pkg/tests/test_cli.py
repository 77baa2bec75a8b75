import json
import re

import pytest

import main
from core import config as cfg


def _run(capsys, *argv):
    code = main.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_all_bases_text(capsys):
    code, out, _ = _run(capsys, "analyze", "--input", "corpus:cp2", "--all")
    assert code == cfg.EXIT_OK
    assert "rank 1, signature (1,0), odd, b1 = 0" in out
    assert "s3s1sum:2" in out


def test_analyze_single_base_json(capsys):
    code, out, _ = _run(capsys, "analyze", "--input", "corpus:e8h", "--base", "sum:1,0", "--embedded", "--json")
    assert code == cfg.EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == cfg.REPORT_SCHEMA
    assert doc["parity"] == "even"
    [report] = doc["reports"]
    assert (report["base"], report["feasible"], report["embedded_degree"]) == ("CP2", True, 6)


def test_analyze_rejects_asymmetric_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"gram": [[1, 2], [0, 1]]}), encoding="utf-8")
    code, _, err = _run(capsys, "analyze", "--input", str(path), "--all")
    assert code == cfg.EXIT_INVALID
    assert "gram[1][0]" in err


def test_analyze_unknown_base(capsys):
    code, _, err = _run(capsys, "analyze", "--input", "corpus:cp2", "--base", "CP3")
    assert code == cfg.EXIT_INVALID
    assert "CP3" in err


def test_analyze_inconclusive_exit(capsys, no_search):
    code, out, _ = _run(capsys, "analyze", "--input", "corpus:s2twisteds2", "--base", "CP2")
    assert code == cfg.EXIT_INCONCLUSIVE
    assert "undetermined" in out


def test_classify_command(capsys):
    code, out, _ = _run(capsys, "lattice", "classify", "--input", "corpus:me8_2h", "--json")
    assert code == cfg.EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == cfg.CLASSIFICATION_SCHEMA
    assert doc["layout"]["a"] == -1 and doc["layout"]["b"] == 2


def test_classify_inconclusive_exit(capsys, no_search):
    code, _, err = _run(capsys, "lattice", "classify", "--input", "corpus:s2xs2")
    assert code == cfg.EXIT_INCONCLUSIVE
    assert err.startswith("inconclusive")


def test_monodromy_build_and_verify(capsys, tmp_path):
    code, out, _ = _run(capsys, "monodromy", "build", "--genus", "2", "--degree", "4", "--json")
    assert code == cfg.EXIT_OK
    doc = json.loads(out)
    assert doc["verification"]["ok"] and len(doc["points"]) == 10
    path = tmp_path / "branch.json"
    path.write_text(json.dumps({"degree": 3, "points": [[1, 2], [1, 2], [2, 3]]}), encoding="utf-8")
    code, out, _ = _run(capsys, "monodromy", "verify", "--input", str(path))
    assert code == cfg.EXIT_INVALID
    assert "violation" in out


def test_plan_commands(capsys):
    code, out, _ = _run(capsys, "plan", "surface", "--self", "5", "--genus", "1")
    assert code == cfg.EXIT_OK
    assert out.startswith("surface: (CP2; CP1), d = 5, branch embedded")
    code, out, _ = _run(capsys, "plan", "pair", "--f11", "5", "--f12", "5", "--f22", "0", "--json")
    assert json.loads(out)["plan"]["target"] == "(S2twistedS2; S2_1, S2_2)"
    code, _, err = _run(capsys, "plan", "pair", "--f11", "5", "--f12", "5", "--f22", "1")
    assert code == cfg.EXIT_INVALID
    assert "F2.F2 = 0" in err
    code, out, _ = _run(
        capsys, "plan", "link", "--self-intersections", "0,0", "--genera", "0,0",
        "--degree", "5", "--restriction-degrees", "1,1", "--single-sphere",
    )
    assert code == cfg.EXIT_OK
    assert "(S4; S2), d = 8" in out


def test_plan_three_manifold_variant(capsys):
    code, out, _ = _run(capsys, "plan", "three-manifold", "--degree", "6", "--non-disconnecting")
    assert code == cfg.EXIT_OK
    assert "(S3xS1; S3)" in out and "variant" in out


def test_selfcheck_is_deterministic(capsys):
    first = _run(capsys, "selfcheck")
    second = _run(capsys, "selfcheck")
    assert first == second
    assert first[0] == cfg.EXIT_OK
    assert first[1].rstrip().endswith("checks passed")


def test_usage_errors_exit_as_invalid_input(capsys):
    code, _, err = _run(capsys)
    assert code == cfg.EXIT_INVALID
    assert "required" in err
    code, _, err = _run(capsys, "analyze", "--all")
    assert code == cfg.EXIT_INVALID
    assert "--input" in err
    code, _, _ = _run(capsys, "monodromy", "build", "-g", "one", "-d", "4")
    assert code == cfg.EXIT_INVALID
    code, _, err = _run(capsys, "--log-level", "chatty", "selfcheck")
    assert code == cfg.EXIT_INVALID
    assert "--log-level" in err


def test_text_and_json_agree(capsys):
    _, text, _ = _run(capsys, "analyze", "--input", "corpus:h2", "--all")
    _, raw, _ = _run(capsys, "analyze", "--input", "corpus:h2", "--all", "--json")
    rows = [re.split(r"\s{2,}", line) for line in text.splitlines()[3:]]
    table = {row[0]: (row[2], row[3]) for row in rows}
    for report in json.loads(raw)["reports"]:
        expected = tuple("-" if report[k] is None else str(report[k]) for k in ("immersed_degree", "embedded_degree"))
        assert table[report["base"]] == expected


def test_monodromy_short_flags_and_positional_file(capsys, tmp_path):
    code, out, _ = _run(capsys, "monodromy", "build", "-g", "1", "-d", "4", "--json")
    assert code == cfg.EXIT_OK
    assert len(json.loads(out)["points"]) == 8
    path = tmp_path / "branch.json"
    path.write_text(json.dumps({"degree": 2, "points": [[1, 2], [1, 2]]}), encoding="utf-8")
    assert _run(capsys, "monodromy", "verify", str(path))[0] == cfg.EXIT_OK
    assert _run(capsys, "monodromy", "verify", "--input", str(path))[0] == cfg.EXIT_OK
    code, _, err = _run(capsys, "monodromy", "verify")
    assert code == cfg.EXIT_INVALID
    assert "either positionally or with --input" in err
    code, _, _ = _run(capsys, "monodromy", "verify", str(path), "--input", str(path))
    assert code == cfg.EXIT_INVALID


def test_bad_environment_exits_as_invalid_input(capsys, monkeypatch):
    monkeypatch.setenv("COVERMAP_ENUM_CEILING", "lots")
    code, _, err = _run(capsys, "selfcheck")
    assert code == cfg.EXIT_INVALID
    assert "COVERMAP_ENUM_CEILING" in err
