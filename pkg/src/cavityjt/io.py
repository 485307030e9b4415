"""File interfaces: deterministic CSV/JSON writers and the run config schema.

All floating-point output goes through one 17-significant-digit formatter so
that identical inputs give byte-identical files on any platform.  Snapshot
arrays are stored raw as little-endian float64 pairs (re, im), row-major with
the x index outermost, next to a JSON metadata document describing them.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .errors import ConfigError
from .model import ModelParams
from .propagator import GridSpec, Mode, PropagationConfig, ScalarField, SpinorField


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_text(path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def write_records_csv(path, trajectory) -> None:
    """Scalar per-step records; semi-adiabatic runs carry sigma_z = nan."""
    lines = ["t,norm,energy,n_a,n_b,sigma_z,autocorr_abs"]
    ac = np.abs(trajectory.autocorr)
    for i in range(trajectory.times.size):
        lines.append(
            ",".join(
                fmt(v)
                for v in (
                    trajectory.times[i],
                    trajectory.norm[i],
                    trajectory.energy[i],
                    trajectory.n_a[i],
                    trajectory.n_b[i],
                    trajectory.sigma_z[i],
                    ac[i],
                )
            )
        )
    _write_text(path, "\n".join(lines) + "\n")


def write_surfaces_csv(path, axis: np.ndarray, v_minus: np.ndarray, v_plus: np.ndarray) -> None:
    """Square-sampled surfaces; rows iterate y fastest, matching meshgrid ij."""
    lines = ["x,y,v_minus,v_plus"]
    n = axis.size
    for i in range(n):
        for j in range(n):
            lines.append(
                f"{fmt(axis[i])},{fmt(axis[j])},{fmt(v_minus[i, j])},{fmt(v_plus[i, j])}"
            )
    _write_text(path, "\n".join(lines) + "\n")


def write_phase_map_csv(path, phase_map) -> None:
    lines = ["lambda,theta,gamma"]
    for lam, theta, gamma in phase_map.rows():
        lines.append(f"{fmt(lam)},{fmt(theta)},{fmt(gamma)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_photon_csv(path, stats) -> None:
    lines = ["n,p_n"]
    for n, pn in enumerate(stats.probabilities):
        lines.append(f"{n},{fmt(pn)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_husimi_csv(path, husimi_map) -> None:
    lines = ["re_alpha,im_alpha,q"]
    for re, im, q in husimi_map.rows():
        lines.append(f"{fmt(re)},{fmt(im)},{fmt(q)}")
    _write_text(path, "\n".join(lines) + "\n")


def _model_dict(p: ModelParams) -> dict:
    return {"lam": p.lam, "omega_q": p.omega_q, "phi": p.phi, "theta": p.theta}


def write_snapshot(out_dir, tag: str, field, p: ModelParams, mode: Mode) -> dict:
    """Store one field as {tag}.json plus one raw array file per component.

    Returns the metadata document (already written to disk).
    """
    if isinstance(field, SpinorField):
        names = ["e", "g"]
    elif isinstance(field, ScalarField):
        names = ["psi"]
    else:
        raise TypeError(f"not a field: {type(field).__name__}")
    files = {}
    for name, comp in zip(names, field.components()):
        fname = f"{tag}_{name}.bin"
        comp.astype("<c16").tofile(os.path.join(out_dir, fname))
        files[name] = fname
    meta = {
        "tag": tag,
        "time": field.t,
        "mode": mode.value,
        "model": _model_dict(p),
        "grid": {"n": field.grid.n, "half_width": field.grid.half_width},
        "components": names,
        "files": files,
        "dtype": "float64-le-re-im-pairs",
        "layout": "row-major, x index outermost",
    }
    _write_text(
        os.path.join(out_dir, f"{tag}.json"),
        json.dumps(meta, indent=2, sort_keys=True) + "\n",
    )
    return meta


def read_snapshot(out_dir, tag: str):
    """Inverse of write_snapshot; returns (field, metadata)."""
    with open(os.path.join(out_dir, f"{tag}.json")) as fh:
        meta = json.load(fh)
    grid = GridSpec(n=meta["grid"]["n"], half_width=meta["grid"]["half_width"])
    arrays = []
    for name in meta["components"]:
        raw = np.fromfile(os.path.join(out_dir, meta["files"][name]), dtype="<c16")
        if raw.size != grid.n * grid.n:
            raise ConfigError(
                f"snapshot array {meta['files'][name]} holds {raw.size} values, "
                f"expected {grid.n * grid.n}"
            )
        arrays.append(raw.reshape(grid.n, grid.n))
    t = float(meta["time"])
    if len(arrays) == 1:
        return ScalarField(grid, arrays[0], t), meta
    return SpinorField(grid, arrays[0], arrays[1], t), meta


def write_manifest(out_dir, document: dict) -> None:
    _write_text(
        os.path.join(out_dir, "manifest.json"),
        json.dumps(document, indent=2, sort_keys=True) + "\n",
    )


# config schema: section -> key -> (python type, default); None means required
_SCHEMA = {
    "model": {
        "lam": (float, None),
        "omega_q": (float, 0.0),
        "phi": (float, 0.0),
        "theta": (float, math.pi / 2.0),
    },
    "grid": {
        "n": (int, 256),
        "half_width": (float, 16.0),
    },
    "initial": {
        "x0": (float, 0.0),
        "y0": (float, 0.0),
    },
    "propagation": {
        "dt": (float, 0.01),
        "t_final": (float, 1.0),
        "snapshot_stride": (int, 0),
        "order": (int, 4),
        "mode": (str, "full"),
    },
    "surfaces": {
        "omega_values": (list, [0.0, 0.5]),
        "half_width": (float, 3.0),
        "samples": (int, 121),
    },
    "berry": {
        "lambda_min": (float, 0.5),
        "lambda_max": (float, 10.0),
        "lambda_samples": (int, 50),
        "theta_min": (float, 0.0),
        "theta_max": (float, math.pi),
        "theta_samples": (int, 50),
    },
    "photon": {
        "times": (list, []),
    },
    "husimi": {
        "times": (list, []),
        "half_width": (float, 8.0),
        "samples": (int, 81),
    },
    "oracle": {
        "instances": (int, 20),
        "seed": (int, 20260814),
        "n_levels": (int, 24),
        "lam_max": (float, 0.7),
        "x0_max": (float, 1.5),
        "t_max": (float, 5.0),
        "grid_n": (int, 128),
        "grid_half_width": (float, 9.0),
        "fidelity_floor": (float, 0.999),
    },
}

_MODES = {"full", "semi", "both"}


def _coerce(section: str, key: str, want, value):
    if want is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
        return float(value)
    if want is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
        return int(value)
    if want is str:
        if not isinstance(value, str):
            raise ConfigError(f"{section}.{key} must be a string, got {value!r}")
        return value
    if want is list:
        if not isinstance(value, list):
            raise ConfigError(f"{section}.{key} must be a list, got {value!r}")
        out = []
        for v in value:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{section}.{key} entries must be numbers, got {v!r}")
            out.append(float(v))
        return out
    raise AssertionError(want)


def parse_config(raw: dict) -> dict:
    """Validate a raw mapping against the schema; fills defaults.

    Unknown sections or keys are rejected outright so that typos never pass
    silently as ignored settings.
    """
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    for section in raw:
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(raw[section], dict):
            raise ConfigError(f"config section {section!r} must be an object")
        for key in raw[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {section}.{key}")
    cfg = {}
    for section, keys in _SCHEMA.items():
        cfg[section] = {}
        for key, (want, default) in keys.items():
            if section in raw and key in raw[section]:
                cfg[section][key] = _coerce(section, key, want, raw[section][key])
            elif default is None:
                raise ConfigError(f"missing required key {section}.{key}")
            else:
                cfg[section][key] = list(default) if want is list else default
    mode = cfg["propagation"]["mode"]
    if mode not in _MODES:
        raise ConfigError(f"propagation.mode must be one of {sorted(_MODES)}, got {mode!r}")
    return cfg


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(raw)


def serialize_config(cfg: dict) -> str:
    return json.dumps(cfg, indent=2, sort_keys=True) + "\n"


def save_config(path, cfg: dict) -> None:
    _write_text(path, serialize_config(cfg))


def model_from_config(cfg: dict) -> ModelParams:
    m = cfg["model"]
    return ModelParams(lam=m["lam"], omega_q=m["omega_q"], phi=m["phi"], theta=m["theta"])


def grid_from_config(cfg: dict) -> GridSpec:
    return GridSpec(n=cfg["grid"]["n"], half_width=cfg["grid"]["half_width"])


def propagation_from_config(cfg: dict, mode: Mode) -> PropagationConfig:
    pr = cfg["propagation"]
    return PropagationConfig(
        dt=pr["dt"],
        t_final=pr["t_final"],
        snapshot_stride=pr["snapshot_stride"],
        mode=mode,
        order=pr["order"],
    )
