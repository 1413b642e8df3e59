#!/usr/bin/env python3
"""
CLI for the mass ladders: effective mass^2 per harmonic with the on-shell
residual, plus the realizable multiples and fractions of the base mass.
"""

import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import kgladder
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import RunConfig
from utils.csv_report import write_csv

COMMAND = "ladder"


def add_arguments(parser):
    param(parser, COMMAND, "m", type=float)
    param(parser, COMMAND, "nmax", type=int)
    param(parser, COMMAND, "dmax", type=int)
    param(parser, COMMAND, "convention", choices=["eq5", "eq12"])


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    out = config.out_dir

    # 1. Harmonic ladder
    rows = kgladder.ladder_rows(p["m"], p["nmax"], p["convention"])
    ladder_csv = write_csv(out / "ladder.csv", ["convention", "n", "m", "effective_mass_squared", "residual"],
                           [(r.convention, r.n, r.m, r.effective_mass_squared, r.residual) for r in rows])

    # 2. Realizable masses
    ladder = kgladder.mass_ladder(p["m"], max(p["nmax"], 1), p["dmax"])
    mass_rows = [("multiple", n, n * ladder.base, ladder.multiple_period(n)) for n in ladder.multiples]
    mass_rows += [("fraction", d, ladder.base / d, ladder.fraction_period(d)) for d in ladder.fractions]
    masses_csv = write_csv(out / "masses.csv", ["kind", "index", "mass", "period"], mass_rows)

    banner("MASS LADDER", [
        ("Convention", p["convention"]),
        ("Base mass", p["m"]),
        ("Mass^2", ", ".join(repr(r.effective_mass_squared) for r in rows)),
        ("Realizable", ", ".join(repr(m) for m in ladder.masses)),
        ("CSV", ladder_csv),
    ])
    return [ladder_csv, masses_csv]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Mass ladders", add_arguments, run, argv))


if __name__ == "__main__":
    main()
