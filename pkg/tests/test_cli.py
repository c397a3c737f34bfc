"""Command line pipeline: construct, analyse, verify."""

import json
import subprocess
import sys

from dyadelone import serialize
from dyadelone.balls import transversal
from dyadelone.cli import main
from dyadelone.dyadic import ZERO
from dyadelone.patches import patch_at
from dyadelone.pointset import fps_to_json, point_set


def _construct(tmp_path, name="stages", extra=()):
    out = tmp_path / name
    rc = main(
        [
            "construct",
            "--r", "0", "--s", "0",
            "--stages", "3",
            "--size-cap", "4096",
            "--out", str(out),
            *extra,
        ]
    )
    assert rc == 0
    return out


def test_construct_writes_stage_dir(tmp_path, capsys):
    out = _construct(tmp_path)
    captured = capsys.readouterr()
    assert "built 3 stage(s)" in captured.out
    assert (out / "manifest.json").exists()
    stages = serialize.read_stage_dir(out)
    assert [st.n for st in stages] == [1, 2, 3]


def test_construct_rejects_crossed_targets(tmp_path, capsys):
    rc = main(
        [
            "construct",
            "--r", "0.5", "--s", "1.0",
            "--stages", "2",
            "--out", str(tmp_path / "x"),
        ]
    )
    assert rc == 2
    assert "s <= r" in capsys.readouterr().err


def test_construct_accepts_inf(tmp_path, capsys):
    out = tmp_path / "inf"
    rc = main(
        [
            "construct",
            "--r", "inf", "--s", "0",
            "--stages", "2",
            "--size-cap", "4096",
            "--out", str(out),
        ]
    )
    assert rc == 0
    manifest = serialize.load_json(out / "manifest.json")
    assert manifest["r"] == "inf"


def test_construct_determinism(tmp_path, capsys):
    d1 = _construct(tmp_path, "one")
    d2 = _construct(tmp_path, "two")
    for f1 in sorted(d1.iterdir()):
        assert f1.read_bytes() == (d2 / f1.name).read_bytes()


def test_entropy_csv_to_stdout(tmp_path, capsys):
    out = _construct(tmp_path)
    capsys.readouterr()
    rc = main(["entropy", "--stages", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert text.startswith("n,count,theta,ratio_natural_log\n")
    assert len(text.strip().split("\n")) == 5


def test_patchrep_csv_to_file(tmp_path, capsys):
    out = _construct(tmp_path)
    csv_path = tmp_path / "pat.csv"
    rc = main(["patchrep", "--stages", str(out), "--scale-k", "2", "--out", str(csv_path)])
    assert rc == 0
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "n,k,pat_count,exact_flag,lower_bound,ratio"


def test_freq_ball_mode(tmp_path, capsys):
    out = _construct(tmp_path)
    stages = serialize.read_stage_dir(out)
    P = patch_at(stages[0].omega, ZERO, 1)
    patch_path = tmp_path / "patch.json"
    serialize.dump_json(patch_path, serialize.patch_to_json(P))
    rc = main(["freq", "--stages", str(out), "--patch", str(patch_path), "--n", "1"])
    assert rc == 0
    assert "frequency = 1/2" in capsys.readouterr().out


def test_freq_sorted_mode(tmp_path, capsys):
    out = _construct(tmp_path)
    stages = serialize.read_stage_dir(out)
    P = patch_at(stages[0].omega, ZERO, 1)
    patch_path = tmp_path / "patch.json"
    serialize.dump_json(patch_path, serialize.patch_to_json(P))
    region = transversal(stages[2].a, stages[0].a)[:2]
    region_path = tmp_path / "region.json"
    serialize.dump_json(region_path, [serialize.dyadic_to_json(g) for g in region])
    result_path = tmp_path / "freq.json"
    rc = main(
        [
            "freq",
            "--stages", str(out),
            "--patch", str(patch_path),
            "--n", "1",
            "--region", str(region_path),
            "--m-stage", "3",
            "--out", str(result_path),
        ]
    )
    assert rc == 0
    report = json.loads(result_path.read_text())
    assert report["mode"] == "sorted"
    assert report["frequency"] == ["1", "2"]


def test_freq_sorted_mode_needs_m_stage(tmp_path, capsys):
    out = _construct(tmp_path)
    stages = serialize.read_stage_dir(out)
    P = patch_at(stages[0].omega, ZERO, 1)
    patch_path = tmp_path / "patch.json"
    serialize.dump_json(patch_path, serialize.patch_to_json(P))
    region_path = tmp_path / "region.json"
    serialize.dump_json(region_path, [serialize.dyadic_to_json(ZERO)])
    rc = main(
        [
            "freq",
            "--stages", str(out),
            "--patch", str(patch_path),
            "--n", "1",
            "--region", str(region_path),
        ]
    )
    assert rc == 2
    assert "m-stage" in capsys.readouterr().err


def test_diffract_with_top_and_autocorr(tmp_path, capsys):
    pts_path = tmp_path / "points.json"
    S = point_set(transversal(2), scale=2)
    serialize.dump_json(pts_path, fps_to_json(S))
    csv_path = tmp_path / "spec.csv"
    ac_path = tmp_path / "ac.json"
    rc = main(
        [
            "diffract",
            "--points", str(pts_path),
            "--a", "2",
            "--resolution-m", "1",
            "--top", "1",
            "--autocorr-out", str(ac_path),
            "--out", str(csv_path),
        ]
    )
    assert rc == 0
    assert "pp_mass(top 1) = 0.5" in capsys.readouterr().out
    assert csv_path.read_text().startswith("k,intensity\n")
    back = serialize.autocorr_from_json(json.loads(ac_path.read_text()))
    assert len(back) == 7


def test_verify_stage_dir(tmp_path, capsys):
    out = _construct(tmp_path)
    report_path = tmp_path / "verify.json"
    rc = main(["verify", "--stages", str(out), "--out", str(report_path)])
    assert rc == 0
    report = json.loads(report_path.read_text())
    assert report["passed"]
    assert len(report["checks"]) == 2
    assert all(c["clause_a"] for c in report["checks"])


def test_verify_single_step(tmp_path, capsys):
    rc = main(["verify", "--n", "1", "--a", "3", "--d", "1"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"]
    assert payload["checks"][0]["b_exhaustive"]


def test_verify_single_step_random_f(tmp_path, capsys):
    rc = main(["verify", "--n", "1", "--a", "3", "--d", "1", "--random-f", "--seed", "9"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["passed"]


def test_verify_needs_arguments(capsys):
    rc = main(["verify"])
    assert rc == 2
    assert "verify needs" in capsys.readouterr().err


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "dyadelone.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "construct" in proc.stdout
