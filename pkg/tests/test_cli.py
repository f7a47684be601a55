import json

import pytest

from artifact.cli import main


@pytest.fixture(autouse=True)
def out_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("ARTIFACT_OUT", str(tmp_path / "out"))
    return tmp_path


def test_picard_compute_tmf(capsys):
    assert main(["picard", "compute", "--target", "Tmf13"]) == 0
    assert json.loads(capsys.readouterr().out) == {"rank": 1, "factors": [8]}


def test_picard_full_json(capsys):
    assert main(["picard", "compute", "--target", "a1inv", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["group"] == {"rank": 0, "factors": [8]}
    assert out["generators"] == ["Sigma^1"]
    assert out["assumptions"]


def test_usage_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["sseq", "run", "--spec", str(bad)]) == 2
    assert main(["sseq", "run", "--spec", str(tmp_path / "nope.json")]) == 2
    assert main(["picard", "compute", "--target", "KO"]) == 2
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"scenario": "tmf13", "colour": "red"}))
    assert main(["sseq", "run", "--spec", str(unknown)]) == 2


def test_sseq_run_scenario(tmp_path, capsys):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"scenario": "tmf13", "window": 8, "s_max": 16}))
    assert main(["sseq", "run", "--spec", str(spec)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["stabilization_page"] == 8 and out["status"] == "pass"


def _explicit_spec(tmp_path, diffs):
    from artifact.tmf13 import build_scenario

    sc = build_scenario("tmf13")
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({
        "algebra": sc.algebra.to_json(),
        "differentials": [sc.differentials[i].to_json() for i in diffs],
        "window": {"a": [-8, 8], "b": [-8, 8], "s_max": 16},
    }))
    return spec


def test_sseq_run_unresolved_exits_one(tmp_path, capsys):
    assert main(["sseq", "run", "--spec", str(_explicit_spec(tmp_path, [0]))]) == 1
    assert json.loads(capsys.readouterr().out)["unresolved"]


def test_sseq_run_explicit_algebra(tmp_path, capsys):
    assert main(["sseq", "run", "--spec", str(_explicit_spec(tmp_path, [0, 1])), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["e_infinity"]["0,0,0"] == "Z[1/3]"


def test_sseq_chart(tmp_path):
    out = tmp_path / "e2.svg"
    assert main(["sseq", "chart", "--stems", "-8:16", "--filtrations", "0:12", "--out", str(out), "--json"]) == 0
    assert out.read_text().startswith("<svg")
    data = json.loads(out.with_suffix(".json").read_text())
    eta = next(c for c in data["cells"] if c["stem"] == 1 and c["s"] == 1)
    assert eta["labels"] == ["a1bar*a_sigma"]
    assert main(["sseq", "chart", "--stems", "-30:16", "--window", "10"]) == 2


def test_tmf13_verify(capsys):
    assert main(["tmf13", "verify", "--window", "8", "--s-max", "16"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "pass" and out["mismatches"] == []
    assert main(["tmf13", "verify", "--scenario", "TMF13"]) == 2


def test_slice_chart(tmp_path):
    out = tmp_path / "chart.svg"
    assert main(["slice", "chart", "--stems", "-24:24", "--out", str(out), "--json"]) == 0
    data = json.loads(out.with_suffix(".json").read_text())
    assert any(c["stem"] == -9 and c["free"] for c in data["cells"])
    assert {r["status"] for r in data["differentials"]} <= {
        "forced", "out-of-window", "undetermined", "permanent-candidate"
    }
    first = out.read_bytes()
    assert main(["slice", "chart", "--stems", "-24:24", "--out", str(out)]) == 0
    assert out.read_bytes() == first


def test_anderson_check(capsys):
    assert main(["anderson", "check", "--kmax", "30"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 31 and all(r["perfect"] for r in rows)


def test_default_out_dir(out_dir):
    assert main(["sseq", "chart"]) == 0
    assert (out_dir / "out" / "tmf13-E2.svg").exists()


def test_report_all_surfaces_failures(monkeypatch, tmp_path, capsys):
    import artifact.cli as cli

    monkeypatch.setattr(cli, "_GROUPS", ((6, 7), (3,)))
    out = tmp_path / "r.json"
    assert main(["report", "all", "--jobs", "1", "--out", str(out)]) == 1
    text = capsys.readouterr().out
    assert "criterion  3 [FAIL]" in text and "2/3 criteria pass" in text
    assert [r["number"] for r in json.loads(out.read_text())["results"]] == [3, 6, 7]
    monkeypatch.setattr(cli, "_GROUPS", ((6,), (7,)))
    assert main(["report", "all", "--jobs", "2"]) == 0
