"""Command-line interface: ``ptscarf {trajectory,ss-scan,energy-range,verify}``.

Settings come from (lowest to highest priority) built-in defaults, a figure
preset, a JSON file given with ``--config``, and explicit flags. A relative
``--output`` path is resolved against ``$PTSCARF_OUTPUT_DIR`` when set.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 computation error (pole, branch point, divergence), 4 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .closed_form import TrajectorySpec, sample_trajectory
from .errors import ScarfError
from .factorization import energy_windows
from .scarf_model import ScarfParams
from .singularity import (classical_ss_condition, quantum_ss_condition, quantum_ss_energy,
                          scan_classical_ss)
from .verify import run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4

OUTPUT_DIR_ENV = "PTSCARF_OUTPUT_DIR"

PRESETS = {
    "fig2": {"variant": "hermitian", "alpha0": 2.0, "gamma0": 6.0, "delta": 2.0, "energy": 8.0},
    "fig4": {"variant": "pt", "alpha0": 2.0, "gamma0": 6.0, "delta_i": 2.0, "energy": 8.0},
    "fig5": {"variant": "pt", "alpha0": 2.0, "gamma0": 6.0, "delta_i": 2.0, "energy": 8.0},
    "fig6": {"variant": "pt", "alpha0": 2.0, "gamma0": 3.0, "delta_i": 2.0, "energy": 8.0,
             "energy_im": 0.5},
    "fig7": {"variant": "pt", "alpha0": 2.0, "gamma0": 4.0, "delta_i": 12.0, "energy": 15.0},
}

DEFAULTS = {
    "format": "csv",
    "energy_im": 0.0,
    "theta0_re": 0.0,
    "theta0_im": 0.0,
    "t_start": -2.0,
    "t_end": 2.0,
    "samples": 4001,
    "e_min": 0.5,
    "e_max": 30.0,
    "e_step": 0.1,
    "refine": True,
    "check": True,
    "seed": 0,
}

TRAJECTORY_COLUMNS = ("t", "re_x", "im_x", "re_p", "im_p", "branch")


class ConfigError(Exception):
    pass


def _num(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _json_num(v):
    v = float(v)
    return None if math.isinf(v) or math.isnan(v) else v


# ---------------------------------------------------------------- configuration

def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    preset = getattr(args, "preset", None)
    file_cfg = {}
    if getattr(args, "config", None):
        try:
            file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
        preset = preset or file_cfg.get("preset")
    if preset:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        cfg.update(PRESETS[preset])
        cfg["preset"] = preset
    cfg.update(file_cfg)
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config", "func"):
            cfg[key] = value
    return cfg


def params_from_config(cfg: dict) -> ScarfParams:
    variant = cfg.get("variant")
    if variant is None:
        if "delta_i" in cfg:
            variant = "pt"
        elif "delta" in cfg:
            variant = "hermitian"
        else:
            raise ConfigError("potential parameters missing: give --preset or "
                              "--alpha0/--gamma0 with --delta or --delta-i")
    try:
        alpha0, gamma0 = float(cfg["alpha0"]), float(cfg["gamma0"])
        if variant == "pt":
            return ScarfParams.pt_symmetric(alpha0, gamma0, float(cfg["delta_i"]))
        if variant == "hermitian":
            return ScarfParams.hermitian(alpha0, gamma0, float(cfg["delta"]))
    except KeyError as exc:
        raise ConfigError(f"missing parameter {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown variant {variant!r}")


def output_path(cfg: dict) -> Path | None:
    out = cfg.get("output")
    if not out or out == "-":
        return None
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _check_format(cfg):
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")


def write_output(cfg: dict, text: str):
    path = output_path(cfg)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------- renderers

def render_trajectory(traj, meta: dict, fmt: str) -> str:
    if fmt == "json":
        samples = [
            {"t": float(t), "re_x": x.real, "im_x": x.imag, "re_p": p.real, "im_p": p.imag,
             "branch": int(b)}
            for t, x, p, b in zip(traj.t, traj.x, traj.p, traj.branch)
        ]
        return json.dumps({"meta": meta, "samples": samples}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(TRAJECTORY_COLUMNS) + "\n")
    for t, x, p, b in zip(traj.t, traj.x, traj.p, traj.branch):
        buf.write(",".join(_num(v) for v in (t, x.real, x.imag, p.real, p.imag, b)) + "\n")
    return buf.getvalue()


def scan_summary(params: ScarfParams, scan) -> dict:
    holds, n = quantum_ss_condition(params)
    q = quantum_ss_energy(params)
    return {
        "peak_energy": scan.peak_energy,
        "peak_value": _json_num(scan.peak_value),
        "peak_divergent": scan.peak_divergent,
        "has_peak": scan.has_interior_peak,
        "theta0": [scan.theta0.real, scan.theta0.imag],
        "classical_ss_condition": classical_ss_condition(params),
        "quantum_ss_inequality": holds,
        "quantum_ss_n": n,
        "quantum_ss_energy": q.energy,
        "quantum_ss_energy_physical": q.physical,
    }


def render_scan(scan, meta: dict, fmt: str) -> str:
    if fmt == "json":
        samples = [{"energy": float(e), "barrier_re_p": _json_num(v), "divergent": bool(d)}
                   for e, v, d in zip(scan.energies, scan.barrier_momentum, scan.divergent)]
        return json.dumps({"meta": meta, "samples": samples}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write("energy,barrier_re_p\n")
    for e, v in zip(scan.energies, scan.barrier_momentum):
        buf.write(f"{_num(e)},{'inf' if math.isinf(v) else _num(v)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------- commands

def cmd_trajectory(cfg: dict) -> int:
    _check_format(cfg)
    params = params_from_config(cfg)
    if cfg.get("energy") is None:
        raise ConfigError("--energy is required unless a preset supplies it")
    try:
        spec = TrajectorySpec(
            params,
            complex(float(cfg["energy"]), float(cfg["energy_im"])),
            complex(float(cfg["theta0_re"]), float(cfg["theta0_im"])),
            float(cfg["t_start"]), float(cfg["t_end"]), int(cfg["samples"]),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    traj = sample_trajectory(spec, check=bool(cfg["check"]))
    meta = {
        "command": "trajectory",
        "preset": cfg.get("preset"),
        "params": params.as_dict(),
        "energy": [spec.energy.real, spec.energy.imag],
        "theta0": [spec.theta0.real, spec.theta0.imag],
        "t_start": spec.t_start,
        "t_end": spec.t_end,
        "samples": spec.samples,
        "diagnostics": traj.diagnostics,
        "version": __version__,
    }
    write_output(cfg, render_trajectory(traj, meta, cfg["format"]))
    return EXIT_OK


def cmd_ss_scan(cfg: dict) -> int:
    _check_format(cfg)
    params = params_from_config(cfg)
    if not params.is_pt:
        raise ConfigError("ss-scan needs a PT-symmetric potential: spectral singularities "
                          "have no Hermitian analogue")
    try:
        e_min, e_max, e_step = float(cfg["e_min"]), float(cfg["e_max"]), float(cfg["e_step"])
        if not (0 < e_min < e_max and e_step > 0):
            raise ValueError("need 0 < e_min < e_max and e_step > 0")
        count = int(math.floor((e_max - e_min) / e_step + 1e-9)) + 1
        grid = np.round(e_min + e_step * np.arange(count), 12)
        theta0 = complex(float(cfg["theta0_re"]), float(cfg["theta0_im"]))
        window = (float(cfg["t_start"]), float(cfg["t_end"]))
        samples = int(cfg["samples"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    scan = scan_classical_ss(params, grid, theta0, window, samples, refine=bool(cfg["refine"]))
    summary = scan_summary(params, scan)
    meta = {
        "command": "ss-scan",
        "preset": cfg.get("preset"),
        "params": params.as_dict(),
        "grid": [e_min, e_max, e_step],
        "t_window": list(window),
        "samples": samples,
        "summary": summary,
        "version": __version__,
    }
    write_output(cfg, render_scan(scan, meta, cfg["format"]))
    if output_path(cfg) is not None or cfg["format"] == "csv":
        stream = sys.stdout if output_path(cfg) is not None else sys.stderr
        stream.write(json.dumps({"summary": summary}) + "\n")
    return EXIT_OK


def cmd_energy_range(cfg: dict) -> int:
    _check_format(cfg)
    params = params_from_config(cfg)
    win = energy_windows(params)
    if cfg["format"] == "json":
        body = {"params": params.as_dict(), "all_positive": win.all_positive,
                "intervals": [[lo, _json_num(hi)] for lo, hi in win.intervals]}
        write_output(cfg, json.dumps(body, indent=1) + "\n")
    else:
        lines = ["lower,upper"] + [f"{_num(lo)},{'inf' if math.isinf(hi) else _num(hi)}"
                                   for lo, hi in win.intervals]
        write_output(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    results = run_checks(cfg.get("filter"), int(cfg["seed"]))
    if not results:
        raise ConfigError(f"no checks match filter {cfg.get('filter')!r}")
    report = "\n".join(r.line() for r in results)
    passed = sum(r.passed for r in results)
    report += f"\n{passed}/{len(results)} checks passed\n"
    write_output(cfg, report)
    return EXIT_OK if passed == len(results) else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser, formats: bool = True):
    p.add_argument("--config", help="JSON file with settings (flags override it)")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named parameter set")
    p.add_argument("--variant", choices=["hermitian", "pt"])
    p.add_argument("--alpha0", type=float)
    p.add_argument("--gamma0", type=float)
    p.add_argument("--delta", type=float, help="real coupling (Hermitian)")
    p.add_argument("--delta-i", dest="delta_i", type=float, help="imaginary coupling (PT)")
    if formats:
        p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    p.add_argument("--output", help=f"output file (default stdout; relative paths use ${OUTPUT_DIR_ENV})")


def _time_window(p, start, end, samples):
    p.add_argument("--theta0-re", dest="theta0_re", type=float, help="Re theta0 (default 0)")
    p.add_argument("--theta0-im", dest="theta0_im", type=float, help="Im theta0 (default 0)")
    p.add_argument("--t-start", dest="t_start", type=float, help=f"default {start}")
    p.add_argument("--t-end", dest="t_end", type=float, help=f"default {end}")
    p.add_argument("--samples", type=int, help=f"default {samples}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptscarf",
        description="Complex classical scattering trajectories of the Scarf II potential.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectory", help="sample a closed-form trajectory",
                       description="Columns: t,re_x,im_x,re_p,im_p,branch")
    _common(p)
    p.add_argument("--energy", type=float, help="Re E (required without a preset)")
    p.add_argument("--energy-im", dest="energy_im", type=float, help="Im E (default 0)")
    _time_window(p, DEFAULTS["t_start"], DEFAULTS["t_end"], DEFAULTS["samples"])
    p.add_argument("--no-check", dest="check", action="store_false", default=None,
                   help="skip the energy and velocity self-checks")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("ss-scan", help="scan barrier momentum over energy",
                       description="Columns: energy,barrier_re_p; summary printed as JSON")
    _common(p)
    p.add_argument("--e-min", dest="e_min", type=float, help="default 0.5")
    p.add_argument("--e-max", dest="e_max", type=float, help="default 30")
    p.add_argument("--e-step", dest="e_step", type=float, help="default 0.1")
    _time_window(p, DEFAULTS["t_start"], DEFAULTS["t_end"], DEFAULTS["samples"])
    p.add_argument("--no-refine", dest="refine", action="store_false", default=None,
                   help="skip golden-section refinement of the peak")
    p.set_defaults(func=cmd_ss_scan)

    p = sub.add_parser("energy-range", help="admissible real scattering energies")
    _common(p)
    p.set_defaults(func=cmd_energy_range)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--config", help="JSON file with settings")
    p.add_argument("--filter", help="only run checks whose name contains this")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(cfg)
    except ConfigError as exc:
        print(f"ptscarf: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ScarfError as exc:
        print(f"ptscarf: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"ptscarf: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
