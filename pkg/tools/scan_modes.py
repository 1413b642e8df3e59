#!/usr/bin/env python3
"""
CLI for the zero-mass field modes: the k_n = n omega periodicity scan,
the two vacuum-energy level schemes, and a leapfrog energy run.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import modes
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import RunConfig
from utils.csv_report import write_csv

COMMAND = "modes"


def add_arguments(parser):
    parser.add_argument("action", nargs="?", default=argparse.SUPPRESS,
                        help="scan, energy or solve (default: scan)")
    param(parser, COMMAND, "omega", type=float)
    param(parser, COMMAND, "kmax", type=float)
    param(parser, COMMAND, "tol", type=float)
    param(parser, COMMAND, "resolution", type=int)
    param(parser, COMMAND, "scheme", choices=["present", "standard"])
    param(parser, COMMAND, "nmax", type=int)
    param(parser, COMMAND, "points", type=int)
    param(parser, COMMAND, "steps", type=int)
    param(parser, COMMAND, "cfl", type=float)
    param(parser, COMMAND, "wavenumber", type=int)


def _scan(p, out):
    rows = modes.scan_modes(p["omega"], p["kmax"], p["tol"], p["resolution"])
    path = write_csv(out / "mode_scan.csv", ["n", "k", "residual", "admissible"],
                     [(r.n, r.k, r.residual, r.admissible) for r in rows])
    admissible = [r.k for r in rows if r.admissible]
    banner("MODE SCAN", [
        ("Omega", p["omega"]),
        ("Candidates", len(rows)),
        ("Admissible k", ", ".join(repr(k) for k in admissible) or "none"),
        ("CSV", path),
    ])
    return path


def _energy(p, out):
    spectrum = modes.energy_spectrum(p["scheme"], p["omega"], p["nmax"])
    path = write_csv(out / "energy_spectrum.csv", ["n", "energy", "scheme", "omega"],
                     [(n, e, spectrum.scheme.value, spectrum.omega) for n, e in spectrum.levels.items()])
    banner("VACUUM ENERGY SCHEME", [
        ("Scheme", spectrum.scheme.value),
        ("Vacuum level", float(spectrum.level(0))),
        ("Spacing", float(spectrum.level(1) - spectrum.level(0))),
        ("CSV", path),
    ])
    return path


def _solve(p, out):
    # 1. Standing wave sin(kx) on [0, 2 pi) at rest
    grid = modes.PeriodicGrid((p["points"],))
    dt = p["cfl"] * modes.cfl_limit(grid)
    x = grid.axis_nodes(0)
    initial = np.sin(p["wavenumber"] * x)
    field = modes.wave_solve(initial, np.zeros_like(initial), grid, dt, p["steps"])

    # 2. Energy per half step
    energy = modes.wave_energy(field)
    drift = float(np.abs(energy - energy[0]).max() / energy[0]) if energy[0] else 0.0
    path = write_csv(out / "wave_energy.csv", ["step", "time", "energy"],
                     [(n, (n + 0.5) * dt, e) for n, e in enumerate(energy)])
    snapshot = out / "field_final.txt"
    modes.write_field_snapshot(field, -1, snapshot)
    omega = modes.standing_wave_frequency(p["wavenumber"], grid.spacing[0], dt)
    banner("LEAPFROG RUN", [
        ("Grid", f"{p['points']} points, dt={dt:.4g}"),
        ("Steps", p["steps"]),
        ("Discrete omega", f"{omega:.12f} (continuum {p['wavenumber']})"),
        ("Relative drift", f"{drift:.3e}"),
        ("Period steps", f"{2 * math.pi / omega / dt:.3f}"),
        ("CSV", path),
    ])
    return path


ACTIONS = {"scan": _scan, "energy": _energy, "solve": _solve}


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    return [ACTIONS[p["action"]](p, config.out_dir)]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Field modes and vacuum energy", add_arguments, run, argv))


if __name__ == "__main__":
    main()
