"""Command-line front end: surfaces, berry, propagate, oracle-check.

Every command reads one JSON config (--config PATH or --preset NAME for the
checked-in ones), writes its files into --out, and exits 0 on success, 2 on
config errors, 3 on numerical-guard aborts, 4 on validation failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources

import numpy as np

from . import io as cio
from .berry import phase_map
from .errors import (
    ConfigError,
    NumericalGuardError,
    TruncationError,
    ValidationFailure,
)
from .fock import (
    FockBasis,
    evolve,
    fock_fidelity,
    grid_to_fock,
    hamiltonian,
    initial_fock_state,
)
from .model import ModelParams, adiabatic_surfaces
from .observables import husimi_q, photon_statistics, reduce_mode
from .propagator import (
    GridSpec,
    Mode,
    PropagationConfig,
    initial_scalar_state,
    initial_state,
    propagate,
)


def preset_names():
    root = resources.files("cavityjt").joinpath("presets")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset(name: str) -> dict:
    path = resources.files("cavityjt").joinpath("presets", f"{name}.json")
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return cio.parse_config(json.loads(path.read_text()))


def _resolve_config(args) -> dict:
    if bool(args.config) == bool(args.preset):
        raise ConfigError("give exactly one of --config or --preset")
    if args.preset:
        return load_preset(args.preset)
    return cio.load_config(args.config)


def cmd_surfaces(cfg: dict, args) -> int:
    base = cio.model_from_config(cfg)
    sc = cfg["surfaces"]
    axis = np.linspace(-sc["half_width"], sc["half_width"], sc["samples"])
    x, y = np.meshgrid(axis, axis, indexing="ij")
    rho = np.hypot(x, y)
    varphi = np.arctan2(y, x)
    outputs = {}
    for omega in sc["omega_values"]:
        p = ModelParams(lam=base.lam, omega_q=omega, phi=base.phi, theta=base.theta)
        v_minus, v_plus = adiabatic_surfaces(p, rho, varphi)
        name = f"surfaces_omega_{omega:g}.csv"
        cio.write_surfaces_csv(os.path.join(args.out, name), axis, v_minus, v_plus)
        outputs[name] = {"omega_q": omega}
        print(f"wrote {name}")
    cio.write_manifest(args.out, {"command": "surfaces", "config": cfg, "outputs": outputs})
    return 0


def cmd_berry(cfg: dict, args) -> int:
    base = cio.model_from_config(cfg)
    bc = cfg["berry"]
    lam_axis = np.linspace(bc["lambda_min"], bc["lambda_max"], bc["lambda_samples"])
    theta_axis = np.linspace(bc["theta_min"], bc["theta_max"], bc["theta_samples"])
    pm = phase_map(base, lam_axis, theta_axis)
    cio.write_phase_map_csv(os.path.join(args.out, "phase_map.csv"), pm)
    print("wrote phase_map.csv")
    cio.write_manifest(
        args.out,
        {"command": "berry", "config": cfg, "outputs": {"phase_map.csv": {}}},
    )
    return 0


def _modes_to_run(cfg: dict, args) -> list:
    choice = args.mode or cfg["propagation"]["mode"]
    if choice == "both":
        return [Mode.FULL, Mode.SEMI_ADIABATIC]
    return [Mode.FULL if choice == "full" else Mode.SEMI_ADIABATIC]


def _nearest_field(trajectory, t: float):
    candidates = list(trajectory.snapshots)
    if trajectory.final_state is not None:
        candidates.append(trajectory.final_state)
    if not candidates:
        raise ConfigError("no snapshots available; set propagation.snapshot_stride")
    return min(candidates, key=lambda f: abs(f.t - t))


def cmd_propagate(cfg: dict, args) -> int:
    p = cio.model_from_config(cfg)
    grid = cio.grid_from_config(cfg)
    x0 = cfg["initial"]["x0"]
    y0 = cfg["initial"]["y0"]
    outputs = {}
    for mode in _modes_to_run(cfg, args):
        tag = "full" if mode is Mode.FULL else "semi"
        pc = cio.propagation_from_config(cfg, mode)
        if mode is Mode.FULL:
            state = initial_state(p, grid, x0, y0)
        else:
            state = initial_scalar_state(p, grid, x0, y0)
        traj = propagate(state, p, pc, workers=args.threads)
        rec_name = f"records_{tag}.csv"
        cio.write_records_csv(os.path.join(args.out, rec_name), traj)
        outputs[rec_name] = {"rows": int(traj.times.size)}
        print(f"wrote {rec_name}")
        for k, snap in enumerate(traj.snapshots):
            snap_tag = f"{tag}_{k:04d}"
            cio.write_snapshot(args.out, snap_tag, snap, p, mode)
            outputs[f"{snap_tag}.json"] = {"time": snap.t}
        if not traj.snapshots:
            snap_tag = f"{tag}_final"
            cio.write_snapshot(args.out, snap_tag, traj.final_state, p, mode)
            outputs[f"{snap_tag}.json"] = {"time": traj.final_state.t}
        for idx, t_req in enumerate(cfg["photon"]["times"]):
            fld = _nearest_field(traj, t_req)
            for side in ("a", "b"):
                stats = photon_statistics(reduce_mode(fld, side))
                name = f"photon_{tag}_{side}_{idx}.csv"
                cio.write_photon_csv(os.path.join(args.out, name), stats)
                outputs[name] = {"time": fld.t, "requested": t_req, "mode": side}
                print(f"wrote {name}")
        hc = cfg["husimi"]
        alpha_axis = np.linspace(-hc["half_width"], hc["half_width"], hc["samples"])
        for idx, t_req in enumerate(hc["times"]):
            fld = _nearest_field(traj, t_req)
            for side in ("a", "b"):
                hm = husimi_q(reduce_mode(fld, side), alpha_axis, alpha_axis)
                name = f"husimi_{tag}_{side}_{idx}.csv"
                cio.write_husimi_csv(os.path.join(args.out, name), hm)
                outputs[name] = {"time": fld.t, "requested": t_req, "mode": side}
                print(f"wrote {name}")
    cio.write_manifest(args.out, {"command": "propagate", "config": cfg, "outputs": outputs})
    return 0


def cmd_oracle_check(cfg: dict, args) -> int:
    oc = cfg["oracle"]
    rng = np.random.default_rng(oc["seed"])
    basis = FockBasis(oc["n_levels"])
    grid = GridSpec(n=oc["grid_n"], half_width=oc["grid_half_width"])
    results = []
    worst = 1.0
    for k in range(oc["instances"]):
        p = ModelParams(
            lam=float(rng.uniform(0.05, oc["lam_max"])),
            omega_q=float(rng.uniform(0.0, 1.0)),
            phi=float(rng.uniform(0.0, 2.0 * math.pi)),
            theta=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        x0 = float(rng.uniform(0.0, oc["x0_max"]))
        y0 = float(rng.uniform(-oc["x0_max"], oc["x0_max"]))
        t = round(float(rng.uniform(1.0, oc["t_max"])), 2)
        vec_t = evolve(hamiltonian(p, basis), initial_fock_state(p, basis, x0, y0), t)
        traj = propagate(
            initial_state(p, grid, x0, y0),
            p,
            PropagationConfig(dt=0.01, t_final=t, mode=Mode.FULL, order=2),
            workers=args.threads,
        )
        fid = fock_fidelity(grid_to_fock(traj.final_state, basis), vec_t)
        worst = min(worst, fid)
        results.append(
            {
                "lam": p.lam,
                "omega_q": p.omega_q,
                "phi": p.phi,
                "theta": p.theta,
                "x0": x0,
                "y0": y0,
                "t": t,
                "fidelity": fid,
            }
        )
        print(f"instance {k}: fidelity {fid:.6f}")
    report = {
        "command": "oracle-check",
        "config": cfg,
        "instances": results,
        "min_fidelity": worst,
        "floor": oc["fidelity_floor"],
    }
    with open(os.path.join(args.out, "oracle_report.json"), "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"min fidelity {worst:.6f} over {oc['instances']} instances")
    if worst < oc["fidelity_floor"]:
        raise ValidationFailure(
            f"oracle fidelity {worst:.9f} below floor {oc['fidelity_floor']}"
        )
    return 0


_COMMANDS = {
    "surfaces": cmd_surfaces,
    "berry": cmd_berry,
    "propagate": cmd_propagate,
    "oracle-check": cmd_oracle_check,
}


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cavityjt",
        description="Wave-packet simulator for a two-level emitter coupled to two cavity quadrature modes",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("surfaces", "export adiabatic potential surfaces as CSV"),
        ("berry", "export a geometric-phase map over coupling and mode phase"),
        ("propagate", "run wave-packet propagation and export records/snapshots"),
        ("oracle-check", "cross-validate grid propagation against the number-basis oracle"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", help="path to a JSON config file")
        sp.add_argument("--preset", help="name of a packaged preset config")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--mode", choices=["full", "semi", "both"], help="override propagation mode")
        sp.add_argument("--threads", type=int, default=1, help="FFT worker threads (speed only)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        os.makedirs(args.out, exist_ok=True)
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalGuardError, TruncationError) as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 3
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
