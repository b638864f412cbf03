"""Command-line driver.

Subcommands: meanfield, bands, softmode, damping-sweep, temperature-sweep,
spectral, poles, verify.  Parameters come from a key=value config file
(--config), overridden by repeatable --set key=value flags; outputs are CSV
files with a '#'-prefixed JSON header written to --output-dir.

Exit codes: 0 ok, 1 config error, 2 solver non-convergence/criticality,
3 numerics failure (instability, defective spectra, continuation).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .params import (ConfigError, critical_coupling, momentum_grid,
                     parse_config_text, default_params, thermo_from_mapping,
                     _THERMO_KEYS, _MICRO_KEYS)
from .meanfield import (ConvergenceError, CriticalPointError,
                        solve_steady_state)
from .hamiltonian import ModelExpansion
from .bogoliubov import DiagonalizationError, phonon_bands, soft_mode
from .bath import BathConstructionError
from .response import NumericsError, build_response, damping_sweep
from .continuation import continue_green, pole_sweep
from .csvio import write_table, write_json_lines

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_NUMERICS = 0, 1, 2, 3

# run-control settings (everything that is not a physics parameter)
RUN_DEFAULTS = {
    "y_frac": 0.629,       # pump strength for single-point commands
    "y_frac_min": None,    # sweep grid, as fractions of y_crit;
    "y_frac_max": None,    # None picks a per-command default
    "y_points": None,
    "epsilons": "0.01",    # comma-separated list for damping-sweep
    "temperatures": "0.02,0.05,0.1",  # list for temperature-sweep
    "omega_min": 0.5,
    "omega_max": 1.5,
    "omega_points": 1024,
    "n_track": 2,          # pole trajectories to follow
    "dump_grid": 0,        # poles: also dump a continued complex grid
    "nu_max": 0.1,         # depth of the dumped grid
    "dos_mode": "3d",
    "workers": 1,
    "seed": 0,             # reserved for property-test reproducibility
}

_SWEEP_DEFAULTS = {
    "meanfield": (0.1, 1.3, 40),
    "softmode": (0.1, 0.95, 40),
    "damping-sweep": (0.05, 1.55, 200),
    "temperature-sweep": (0.05, 1.55, 100),
    "spectral": (0.3, 0.95, 24),
    "poles": (0.70, 0.84, 15),
}


def _parse_list(value):
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(tok) for tok in str(value).split(",") if tok.strip()]


def load_settings(config_path, overrides):
    """Split config + --set pairs into (ThermoParams, run-settings dict)."""
    mapping = {}
    if config_path:
        text = Path(config_path).read_text()
        mapping.update(parse_config_text(text))
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        parsed = parse_config_text(item)
        mapping.update(parsed)

    run = dict(RUN_DEFAULTS)
    param_keys = {}
    for key, value in mapping.items():
        if key in RUN_DEFAULTS:
            run[key] = value
        elif key in _THERMO_KEYS or key in _MICRO_KEYS:
            param_keys[key] = value
        else:
            raise ConfigError(f"unknown config key: {key!r}")
    if param_keys:
        p = thermo_from_mapping(param_keys)
    else:
        p = default_params()
    return p, run


def _meta(p, run, command):
    return {"command": command, "version": __version__,
            "params": dataclasses.asdict(p),
            "run": {k: run[k] for k in sorted(run)}}


def _y_grid(p, run, command):
    lo, hi, n = _SWEEP_DEFAULTS.get(command, (0.1, 0.95, 40))
    if run["y_frac_min"] is not None:
        lo = float(run["y_frac_min"])
    if run["y_frac_max"] is not None:
        hi = float(run["y_frac_max"])
    if run["y_points"] is not None:
        n = int(run["y_points"])
    y_crit = critical_coupling(p)
    return np.linspace(lo, hi, int(n)) * y_crit, y_crit


# -- subcommand bodies -----------------------------------------------------

def cmd_meanfield(p, run, outdir):
    y_values, y_crit = _y_grid(p, run, "meanfield")
    rows = []
    for y in y_values:
        mf = solve_steady_state(p.with_pump(float(y)))
        rows.append([y / y_crit, mf.alpha, mf.beta, mf.gamma, mf.mu])
    write_table(outdir / "meanfield.csv",
                ["y_frac", "alpha", "beta", "gamma", "mu"], rows,
                _meta(p, run, "meanfield"))


def cmd_bands(p, run, outdir):
    y_crit = critical_coupling(p)
    pp = p.with_pump(float(run["y_frac"]) * y_crit)
    mf = solve_steady_state(pp)
    grid = momentum_grid(pp)
    q_half = grid[grid > 0]
    modes = phonon_bands(pp, mf, q_half)
    rows = [[q, *ms.frequencies] for q, ms in zip(q_half, modes)]
    write_table(outdir / "bands.csv",
                ["q", "omega1", "omega2", "omega3"], rows,
                _meta(pp, run, "bands"))


def cmd_softmode(p, run, outdir):
    y_values, y_crit = _y_grid(p, run, "softmode")
    rows = []
    prev = None
    for y in y_values:
        pp = p.with_pump(float(y))
        mf = solve_steady_state(pp)
        omega_s, idx, ms = soft_mode(pp, mf, prev=prev)
        prev = (ms, idx)
        rows.append([y / y_crit, omega_s])
    write_table(outdir / "softmode.csv", ["y_frac", "omega_s"], rows,
                _meta(p, run, "softmode"))


def _write_damping(p, run, outdir, epsilons, temperatures, command):
    y_values, y_crit = _y_grid(p, run, command)
    workers = int(run["workers"]) or None
    records = damping_sweep(p, y_values, epsilons=epsilons,
                            temperatures=temperatures,
                            dos_mode=str(run["dos_mode"]), workers=workers)
    write_table(outdir / f"{command.replace('-', '_')}_long.csv",
                ["y_frac", "epsilon", "temperature", "omega_s",
                 "delta_l", "gamma_l", "delta_b", "gamma_b"],
                [[r["y_frac"], r["epsilon"], r["temperature"], r["omega_s"],
                  r["delta_l"], r["gamma_l"], r["delta_b"], r["gamma_b"]]
                 for r in records], _meta(p, run, command))
    return records, y_values, y_crit


def cmd_damping_sweep(p, run, outdir):
    epsilons = _parse_list(run["epsilons"])
    records, y_values, y_crit = _write_damping(
        p, run, outdir, epsilons, (p.temperature,), "damping-sweep")
    names = ["y_frac"] + [f"gamma_b_eps{e:g}" for e in epsilons]
    table = {}
    for r in records:
        table.setdefault(r["y_frac"], {})[r["epsilon"]] = r
    rows = [[yf] + [table[yf][e]["gamma_b"] for e in epsilons]
            for yf in sorted(table)]
    write_table(outdir / "damping.csv", names, rows,
                _meta(p, run, "damping-sweep"))
    write_table(outdir / "shifts.csv",
                ["y_frac"] + [f"delta_b_eps{e:g}" for e in epsilons],
                [[yf] + [table[yf][e]["delta_b"] for e in epsilons]
                 for yf in sorted(table)], _meta(p, run, "damping-sweep"))


def cmd_temperature_sweep(p, run, outdir):
    temps = _parse_list(run["temperatures"])
    records, y_values, y_crit = _write_damping(
        p, run, outdir, (p.phonon_damping,), temps, "temperature-sweep")
    names = ["y_frac"]
    for t in temps:
        names += [f"gamma_l_T{t:g}", f"gamma_b_T{t:g}"]
    table = {}
    for r in records:
        table.setdefault(r["y_frac"], {})[r["temperature"]] = r
    rows = []
    for yf in sorted(table):
        row = [yf]
        for t in temps:
            row += [table[yf][t]["gamma_l"], table[yf][t]["gamma_b"]]
        rows.append(row)
    write_table(outdir / "temperature.csv", names, rows,
                _meta(p, run, "temperature-sweep"))


def cmd_spectral(p, run, outdir):
    y_values, y_crit = _y_grid(p, run, "spectral")
    omega = np.linspace(float(run["omega_min"]), float(run["omega_max"]),
                        int(run["omega_points"]))
    rows = []
    for y in y_values:
        resp = build_response(p.with_pump(float(y)),
                              dos_mode=str(run["dos_mode"]))
        rho = resp.spectral(omega)
        yf = float(y) / y_crit
        rows.extend([[w, yf, r] for w, r in zip(omega, rho)])
    write_table(outdir / "spectral.csv", ["omega", "y_frac", "rho"], rows,
                _meta(p, run, "spectral"))


def cmd_poles(p, run, outdir):
    y_values, y_crit = _y_grid(p, run, "poles")
    n_track = int(run["n_track"])
    records = pole_sweep(p, y_values,
                         omega_window=(float(run["omega_min"]),
                                       float(run["omega_max"]) + 1.5),
                         n_track=n_track, dos_mode=str(run["dos_mode"]))
    names = ["y_frac"]
    for i in range(1, n_track + 1):
        names += [f"re_z{i}", f"im_z{i}", f"abs_residue{i}"]
    rows = []
    for rec in records:
        row = [rec["y"] / y_crit]
        for pole, res in zip(rec["poles"], rec["residues"]):
            row += [pole.z.real, pole.z.imag, abs(res)]
        rows.append(row)
    write_table(outdir / "poles.csv", names, rows, _meta(p, run, "poles"))

    if int(run["dump_grid"]):
        y_mid = float(y_values[len(y_values) // 2])
        resp = build_response(p.with_pump(y_mid),
                              dos_mode=str(run["dos_mode"]))
        omega = np.linspace(float(run["omega_min"]),
                            float(run["omega_max"]) + 1.5, 2048)
        grid, _model = continue_green(omega, resp.green(omega),
                                      p.phonon_damping,
                                      nu_max=float(run["nu_max"]))
        zs = grid.z()
        recs = ({"re_z": float(z.real), "im_z": float(z.imag),
                 "re_G": float(v.real), "im_G": float(v.imag)}
                for z, v in zip(zs.ravel(), grid.values.ravel()))
        write_json_lines(outdir / "green_grid.jsonl", recs,
                         _meta(p, run, "poles"))


def cmd_verify(p, run, outdir):
    from .verify import run_verification

    results = run_verification(p, seed=int(run["seed"]))
    width = max(len(name) for name, _, _ in results)
    all_ok = True
    for name, ok, detail in results:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}")
        all_ok = all_ok and ok
    if not all_ok:
        raise NumericsError("verification suite failed")


COMMANDS = {
    "meanfield": cmd_meanfield,
    "bands": cmd_bands,
    "softmode": cmd_softmode,
    "damping-sweep": cmd_damping_sweep,
    "temperature-sweep": cmd_temperature_sweep,
    "spectral": cmd_spectral,
    "poles": cmd_poles,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cavitybec",
        description="Polariton damping in a cavity-coupled condensate: "
                    "steady states, excitation bands, damping rates, "
                    "spectral functions and pole trajectories.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="key=value parameter file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a config key (repeatable)")
    parser.add_argument("--output-dir", default=".",
                        help="directory for CSV outputs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        p, run = load_settings(args.config, args.set)
        outdir = Path(args.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command](p, run, outdir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, CriticalPointError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (NumericsError, DiagonalizationError, BathConstructionError) as exc:
        print(f"numerics error: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
