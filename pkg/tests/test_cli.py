import os

import pytest

from torsokit.cli import main
from torsokit.scenario import GOLDEN_PRESENTATION, GOLDEN_RAY

RAY = GOLDEN_RAY


@pytest.fixture()
def pres_file(tmp_path):
    p = tmp_path / "golden.pres"
    p.write_text(GOLDEN_PRESENTATION)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_example4(capsys):
    code, out = run(capsys, "example4")
    assert code == 0
    assert "result=pass" in out
    assert "x_fails_with_witness=pass (X[0] X[1] Z#0.z)" in out


def test_example4_substitute_x(capsys):
    code, out = run(capsys, "example4", "--substitute-x")
    assert code == 1
    assert "fs_separates_in_graph=FAIL" in out


def test_example4_single_depth_identical(capsys):
    _, full = run(capsys, "example4")
    _, shallow = run(capsys, "example4", "--depths", "10")
    assert [l.split("=")[1][:4] for l in full.splitlines()] == \
        [l.split("=")[1][:4] for l in shallow.splitlines()]


def test_validate_truncate(capsys, pres_file):
    code, out = run(capsys, "validate", pres_file)
    assert code == 0 and "ok=true" in out
    code, out = run(capsys, "truncate", pres_file, "--depth", "5",
                    "--reps", "2")
    assert code == 0
    assert "vertices=13" in out and "edges=21" in out


def test_missing_file(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "missing.graph"])
    assert exc.value.code == 2
    assert "file not found" in capsys.readouterr().err


def test_classify(capsys, pres_file):
    code, out = run(capsys, "classify", pres_file)
    assert code == 0
    assert "DoublePrime" in out and "Prime" in out


def test_torso_and_reports(capsys, pres_file, tmp_path):
    report = tmp_path / "t.txt"
    code, out = run(capsys, "torso", pres_file, "--report", str(report))
    assert code == 0
    assert "conservative=yes" in out
    assert report.read_text() == out


def test_project(capsys, pres_file):
    code, out = run(capsys, "project", pres_file, "--ray", RAY)
    assert code == 0
    assert "head=X[2] X[3] V[Y@3] X[4] V[Y@4]" in out
    assert "locally_finite=yes" in out


def test_separate_spec_flags(capsys, pres_file):
    code, out = run(capsys, "separate", pres_file, "--U", "X[0]",
                    "--F", "X[2],X[3]", "--ray", RAY, "--in", "K")
    assert code == 0 and "verdict=Separated" in out
    code, out = run(capsys, "separate", pres_file, "--U", "X[0]",
                    "--F", "X[2],X[3]", "--ray", RAY, "--in", "G")
    assert "verdict=NotSeparated" in out
    assert "witness=X[0] X[1] Z#0.z" in out


def test_lemma_and_remark(capsys, pres_file):
    code, out = run(capsys, "lemma-check", pres_file, "--U", "X[0]",
                    "--F", "X[2],X[3]", "--ray", RAY)
    assert code == 0 and "flag=ok" in out and "F_S=X[1] X[2] X[3]" in out
    code, out = run(capsys, "remark-check", pres_file, "--U", "X[0]",
                    "--F", "X[2],X[3]", "--ray", RAY)
    assert code == 0 and "last_meet=2" in out


def test_dot_output(capsys, pres_file, tmp_path):
    out_path = tmp_path / "g.dot"
    code, _ = run(capsys, "dot", pres_file, "--depth", "5", "-o",
                  str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("graph")
    assert '"X[1]" -- "X[3]"' not in text  # plain G has no chord
    assert '"Z#0.z"' in text


def test_figure_output(capsys, pres_file, tmp_path):
    fig = tmp_path / "g.png"
    code, _ = run(capsys, "truncate", pres_file, "--depth", "5",
                  "--reps", "1", "--figure", str(fig))
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 1000
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_scenario_roundtrip(capsys, tmp_path):
    scn = tmp_path / "g.scn"
    scn.write_text(
        "presentation\n" + GOLDEN_PRESENTATION + "end\n"
        "set U = {X[0]}\n"
        "set F = {X[2], X[3]}\n"
        + RAY + "\n"
        "check lemma F=F U=U ray=S\n"
        "expect 0.lemma.flag ok\n")
    code, out = run(capsys, "scenario", str(scn))
    assert code == 0
    assert "0.lemma.flag=ok" in out and "expects=pass" in out
    scn.write_text(scn.read_text().replace("expect 0.lemma.flag ok",
                                           "expect 0.lemma.flag broken"))
    code, out = run(capsys, "scenario", str(scn))
    assert code == 1 and "expects=FAIL" in out


def test_lemma_check_accepts_scenario_file(capsys, tmp_path):
    scn = tmp_path / "g.scn"
    scn.write_text(
        "presentation\n" + GOLDEN_PRESENTATION + "end\n"
        "set U = {X[0]}\n"
        "set F = {X[2], X[3]}\n" + RAY + "\n")
    code, out = run(capsys, "lemma-check", str(scn))
    assert code == 0 and "flag=ok" in out


def test_search_replay(capsys, tmp_path):
    out_dir = tmp_path / "findings"
    code, out = run(capsys, "search", "--seed", "1", "--trials", "40",
                    "--out-dir", str(out_dir))
    assert code == 0
    assert "findings=" in out
    files = sorted(os.listdir(out_dir))
    assert files, "expected at least one finding in 40 trials at seed 1"
    code, out = run(capsys, "scenario", str(out_dir / files[0]))
    assert code == 0 and "expects=pass" in out


def test_search_deterministic(capsys):
    _, a = run(capsys, "search", "--seed", "9", "--trials", "25")
    _, b = run(capsys, "search", "--seed", "9", "--trials", "25")
    assert a == b
    _, c = run(capsys, "search", "--seed", "10", "--trials", "25")
    assert a != c


def test_search_zero_trials(capsys):
    code, out = run(capsys, "search", "--seed", "1", "--trials", "0")
    assert code == 0 and "findings=0" in out
