"""End-to-end command-line behavior: exit codes, JSON output, determinism."""

import json

import pytest

from fanhodge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def fixture_files(tmp_path, capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    data = json.loads(out)
    paths = {}
    for name in ("hilbert", "hilbert_cubed", "cstar", "p1xp1"):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data[name]))
        paths[name] = str(p)
    return paths


def test_check_snc_fails_then_passes_after_subdivide(
    fixture_files, tmp_path, capsys
):
    code, out, _ = run(capsys, "check-snc", fixture_files["hilbert"])
    assert code == 1
    payload = json.loads(out)
    assert not payload["ok"] and len(payload["violations"]) == 3

    out_path = str(tmp_path / "subdivided.json")
    code, _, _ = run(
        capsys, "subdivide", fixture_files["hilbert"], "-o", out_path
    )
    assert code == 0
    assert "projectivity" in json.loads(open(out_path).read())["note"]
    code, out, _ = run(capsys, "check-snc", out_path)
    assert code == 0 and json.loads(out)["ok"]


def test_homology_command(fixture_files, capsys):
    code, out, _ = run(capsys, "homology", fixture_files["hilbert_cubed"])
    assert code == 0
    payload = json.loads(out)
    assert payload["betti"] == [1, 1]
    assert payload["closed"] and payload["oriented"]
    assert len(payload["fundamental_class"]) == 3


def test_spectral_command(fixture_files, capsys):
    code, out, _ = run(capsys, "spectral", fixture_files["cstar"], "--k", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["graded"] == [{"h": {"1,1": 1}, "weight": 2}]
    code, out, _ = run(capsys, "spectral", fixture_files["p1xp1"], "--k", "2")
    assert json.loads(out)["graded"] == [{"h": {"2,2": 1}, "weight": 4}]


def test_fn_filtration_command(tmp_path, capsys):
    from fanhodge.fans import smooth_subdivide, two_division_subdivide
    from fanhodge.fixtures import hilbert_window
    from fanhodge.weight_ss import (
        CuspStrataAnnotation,
        annotate_from_fans,
        strata_complex_to_dict,
    )

    fs = smooth_subdivide(two_division_subdivide(hilbert_window()))
    sc = annotate_from_fans(fs, CuspStrataAnnotation({"F": 2}))
    p = tmp_path / "strata.json"
    p.write_text(json.dumps(strata_complex_to_dict(sc)))
    code, out, _ = run(capsys, "fn-filtration", str(p))
    assert code == 0
    payload = json.loads(out)
    assert {"m": 2, "dim": 2} in payload["graded"]


def test_stairs_command(capsys):
    code, out, _ = run(capsys, "stairs", "--preset", "sp:2", "--k", "3")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["admissible"]) == 8
    code, svg, _ = run(
        capsys, "stairs", "--preset", "sp:2", "--k", "3", "--format", "svg"
    )
    assert code == 0 and svg.startswith("<svg")


def test_report_command(tmp_path, capsys):
    inv = {"cusps": [{"label": "a", "dim_S_cat": 2, "dim_U": 3}], "dim_M_can": 2}
    p = tmp_path / "inv.json"
    p.write_text(json.dumps(inv))
    code, out, _ = run(capsys, "report", "--preset", "custom:3;3;1",
                       "--inventory", str(p))
    assert code == 0
    assert json.loads(out)["dim_M_can_check"]["consistent"] is True

    bad = dict(inv, dim_GrW_np1_Fn=1, dim_H0K_corank1=2, dim_Hn1=1,
               dim_FnW_np1=1)
    p.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "report", "--preset", "custom:3;3;1",
                       "--inventory", str(p))
    assert code == 1
    assert json.loads(out)["n1_exact_sequence"]["defect"] == 1


def test_determinism(fixture_files, capsys):
    _, a, _ = run(capsys, "spectral", fixture_files["p1xp1"], "--k", "2")
    _, b, _ = run(capsys, "spectral", fixture_files["p1xp1"], "--k", "2")
    assert a == b
    _, a, _ = run(capsys, "fixtures")
    _, b, _ = run(capsys, "fixtures")
    assert a == b


def test_round_trip_on_emitted_json(fixture_files, tmp_path, capsys):
    from fanhodge.fans import fan_system_from_dict, fan_system_to_dict
    from fanhodge.weight_ss import strata_complex_from_dict, strata_complex_to_dict

    fan = json.loads(open(fixture_files["hilbert"]).read())
    assert fan_system_to_dict(fan_system_from_dict(fan)) == fan
    strata = json.loads(open(fixture_files["p1xp1"]).read())
    assert strata_complex_to_dict(strata_complex_from_dict(strata)) == strata


def test_input_and_usage_errors(tmp_path, capsys):
    code, _, err = run(capsys, "spectral", str(tmp_path / "nope.json"), "--k", "1")
    assert code == 2 and "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "check-snc", str(bad))
    assert code == 2
    assert main(["no-such-command"]) == 2
    code, _, err = run(capsys, "stairs", "--preset", "sp:1", "--k", "1")
    assert code == 2


def test_version_flag(capsys):
    assert main(["--version"]) == 0
