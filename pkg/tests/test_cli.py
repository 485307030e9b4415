"""End-to-end command-line runs on miniature configs (in-process)."""

import json
import math
import os

import numpy as np
import pytest

from cavityjt.cli import load_preset, main, preset_names

EXPECTED_PRESETS = [
    "fig1",
    "fig2a",
    "fig2b",
    "fig3",
    "fig5",
    "fig5desk",
    "fig6",
    "fig6desk",
    "oracle",
]


def write_cfg(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def tiny_prop_doc(**overrides):
    doc = {
        "model": {"lam": 0.5},
        "grid": {"n": 64, "half_width": 8.0},
        "initial": {"x0": 1.0},
        "propagation": {
            "dt": 0.01,
            "t_final": 0.2,
            "snapshot_stride": 10,
            "mode": "both",
        },
        "photon": {"times": [0.1]},
        "husimi": {"times": [0.2], "half_width": 6.0, "samples": 13},
    }
    doc.update(overrides)
    return doc


def test_presets_enumerate_and_parse():
    assert preset_names() == EXPECTED_PRESETS
    for name in EXPECTED_PRESETS:
        cfg = load_preset(name)
        assert cfg["model"]["lam"] > 0


def test_unknown_preset_is_config_error(tmp_path, capsys):
    rc = main(["berry", "--preset", "nonesuch", "--out", str(tmp_path)])
    assert rc == 2
    assert "unknown preset" in capsys.readouterr().err


def test_config_xor_preset(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"model": {"lam": 1.0}})
    assert main(["surfaces", "--out", str(tmp_path)]) == 2
    assert (
        main(["surfaces", "--config", cfg, "--preset", "fig1", "--out", str(tmp_path)])
        == 2
    )
    assert "exactly one" in capsys.readouterr().err


def test_bad_config_key_exits_2(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"model": {"lam": 1.0, "lamda": 2.0}})
    assert main(["surfaces", "--config", cfg, "--out", str(tmp_path)]) == 2
    assert "unknown key" in capsys.readouterr().err


def test_surfaces_tiny(tmp_path):
    cfg = write_cfg(
        tmp_path,
        {
            "model": {"lam": 1.0},
            "surfaces": {"omega_values": [0.0, 0.5], "half_width": 2.0, "samples": 21},
        },
    )
    out = tmp_path / "out"
    assert main(["surfaces", "--config", cfg, "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "surfaces"
    assert set(manifest["outputs"]) == {
        "surfaces_omega_0.csv",
        "surfaces_omega_0.5.csv",
    }
    for name in manifest["outputs"]:
        lines = (out / name).read_text().splitlines()
        assert lines[0] == "x,y,v_minus,v_plus"
        assert len(lines) == 1 + 21 * 21
    # gapless sheets touch at the origin, detuned ones stay split
    rows = (out / "surfaces_omega_0.csv").read_text().splitlines()[1:]
    center = [r for r in rows if r.startswith("0,0,")][0]
    _, _, vm, vp = (float(v) for v in center.split(","))
    assert abs(vp - vm) < 1e-12
    rows = (out / "surfaces_omega_0.5.csv").read_text().splitlines()[1:]
    center = [r for r in rows if r.startswith("0,0,")][0]
    _, _, vm, vp = (float(v) for v in center.split(","))
    assert abs((vp - vm) - 0.5) < 1e-12


def test_berry_tiny(tmp_path):
    cfg = write_cfg(
        tmp_path,
        {
            "model": {"lam": 1.0, "omega_q": 0.5},
            "berry": {
                "lambda_min": 2.0,
                "lambda_max": 3.0,
                "lambda_samples": 2,
                "theta_min": 0.0,
                "theta_max": math.pi / 2.0,
                "theta_samples": 3,
            },
        },
    )
    out = tmp_path / "out"
    assert main(["berry", "--config", cfg, "--out", str(out)]) == 0
    lines = (out / "phase_map.csv").read_text().splitlines()
    assert lines[0] == "lambda,theta,gamma"
    assert len(lines) == 1 + 6
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    aligned = rows[rows[:, 1] == 0.0]
    assert np.all(np.abs(aligned[:, 2]) < 1e-8)
    quarter = rows[np.abs(rows[:, 1] - math.pi / 2.0) < 1e-12]
    assert np.all(quarter[:, 2] < -3.0)


def test_propagate_both_modes_writes_manifest_files(tmp_path):
    cfg = write_cfg(tmp_path, tiny_prop_doc())
    out = tmp_path / "out"
    assert main(["propagate", "--config", cfg, "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    names = set(manifest["outputs"])
    assert {"records_full.csv", "records_semi.csv"} <= names
    assert {"photon_full_a_0.csv", "photon_semi_b_0.csv"} <= names
    assert {"husimi_full_a_0.csv", "husimi_semi_b_0.csv"} <= names
    assert {"full_0000.json", "full_0002.json", "semi_0000.json"} <= names
    for name in names:
        assert (out / name).is_file(), name
        if name.endswith(".json"):
            meta = json.loads((out / name).read_text())
            for fname in meta["files"].values():
                assert (out / fname).is_file()
    for tag in ("full", "semi"):
        lines = (out / f"records_{tag}.csv").read_text().splitlines()
        assert len(lines) == 1 + 21
        assert manifest["outputs"][f"records_{tag}.csv"]["rows"] == 21


def test_propagate_mode_flag_filters(tmp_path):
    cfg = write_cfg(tmp_path, tiny_prop_doc())
    out = tmp_path / "out"
    rc = main(["propagate", "--config", cfg, "--out", str(out), "--mode", "semi"])
    assert rc == 0
    assert (out / "records_semi.csv").is_file()
    assert not (out / "records_full.csv").exists()


def test_propagate_deterministic_bytes(tmp_path):
    cfg = write_cfg(tmp_path, tiny_prop_doc())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["propagate", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["propagate", "--config", cfg, "--out", str(out2)]) == 0
    names1 = sorted(p.name for p in out1.iterdir())
    assert names1 == sorted(p.name for p in out2.iterdir())
    for name in names1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_propagate_guard_abort_exits_3(tmp_path, capsys):
    cfg = write_cfg(
        tmp_path,
        {
            "model": {"lam": 2.0},
            "grid": {"n": 128, "half_width": 12.0},
            "initial": {"x0": 4.0},
            "propagation": {"dt": 0.01, "t_final": 3.0, "order": 2, "mode": "full"},
        },
    )
    rc = main(["propagate", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 3
    assert "numerical guard" in capsys.readouterr().err


def test_oracle_check_floor_failure_exits_4(tmp_path, capsys):
    cfg = write_cfg(
        tmp_path,
        {
            "model": {"lam": 0.5},
            "oracle": {"instances": 1, "fidelity_floor": 1.0},
        },
    )
    out = tmp_path / "out"
    rc = main(["oracle-check", "--config", cfg, "--out", str(out)])
    assert rc == 4
    assert "below floor" in capsys.readouterr().err
    report = json.loads((out / "oracle_report.json").read_text())
    assert report["floor"] == 1.0
    assert len(report["instances"]) == 1
    assert report["min_fidelity"] == report["instances"][0]["fidelity"]


def test_oracle_check_tiny_pass(tmp_path):
    cfg = write_cfg(
        tmp_path,
        {
            "model": {"lam": 0.5},
            "oracle": {"instances": 2, "seed": 7},
        },
    )
    out = tmp_path / "out"
    assert main(["oracle-check", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads((out / "oracle_report.json").read_text())
    assert report["min_fidelity"] >= 0.999
    for inst in report["instances"]:
        assert inst["fidelity"] >= 0.999
        assert 0.05 <= inst["lam"] <= 0.7
