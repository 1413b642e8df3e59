#!/usr/bin/env python3
"""
CLI for the oscillator spectra: Schrodinger, Klein-Gordon (kg) and
Kaluza-Klein (kk) levels, the non-relativistic limit report and the
grid refinement study.
"""

import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import spectral
from quantization.propagator import Grid1D
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import ConfigError, RunConfig
from utils.csv_report import write_csv

COMMAND = "spectrum"

SOLVERS = {
    "schrodinger": spectral.schrodinger_spectrum,
    "kg": spectral.kg_oscillator_spectrum,
    "kk": spectral.kk_oscillator_spectrum,
}


def add_arguments(parser):
    param(parser, COMMAND, "eta", type=float)
    param(parser, COMMAND, "scheme", choices=list(SOLVERS))
    param(parser, COMMAND, "count", type=int)
    param(parser, COMMAND, "x_min", type=float)
    param(parser, COMMAND, "x_max", type=float)
    param(parser, COMMAND, "points", type=int)
    param(parser, COMMAND, "branch", choices=["positive", "negative"])
    param(parser, COMMAND, "report", choices=["levels", "nonrel", "refinement"])
    param(parser, COMMAND, "etas", type=float)
    param(parser, COMMAND, "refine", type=int)


def choose_grid(p: dict) -> Grid1D:
    """Explicit bounds win; otherwise [-10, 10] x 2001 for Schrodinger, oscillator_grid for kg/kk."""
    given = [p["x_min"], p["x_max"], p["points"]]
    if all(v is not None for v in given):
        return Grid1D(p["x_min"], p["x_max"], p["points"])
    if any(v is not None for v in given):
        raise ConfigError("Parameters 'x_min', 'x_max' and 'points' must be given together")
    if p["scheme"] == "schrodinger":
        return Grid1D(-10.0, 10.0, 2001)
    return spectral.oscillator_grid(p["eta"])


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    out = config.out_dir

    # 1. Report selection
    if p["report"] == "nonrel":
        rows = spectral.nonrel_limit_report(p["etas"])
        path = write_csv(out / "nonrel_limit.csv", ["eta", "deviation"],
                         [(r.eta, r.deviation) for r in rows])
        banner("NON-RELATIVISTIC LIMIT", [(f"eta {r.eta!r}", f"{r.deviation:.3e}") for r in rows]
               + [("CSV", path)])
        return [path]

    if p["report"] == "refinement":
        rows = spectral.grid_refinement_study(p["eta"], p["refine"])
        path = write_csv(out / "refinement.csv", ["h", "error", "order_estimate"],
                         [(r.spacing, r.error, r.order_estimate) for r in rows])
        banner("GRID REFINEMENT", [(f"h {r.spacing:.4g}", f"{r.error:.3e}") for r in rows]
               + [("CSV", path)])
        return [path]

    # 2. Levels
    grid = choose_grid(p)
    solver = SOLVERS[p["scheme"]]
    if p["scheme"] == "schrodinger":
        if p["branch"] != "positive":
            raise ConfigError("Parameter 'branch' applies to the kg and kk schemes only")
        spectrum = solver(p["eta"], grid, p["count"])
    else:
        spectrum = solver(p["eta"], grid, p["count"], branch=p["branch"])

    path = write_csv(out / "spectrum.csv", ["n", "eigenvalue", "scheme", "eta"], spectrum.rows())
    banner("SPECTRUM", [
        ("Scheme", spectrum.scheme),
        ("Eta", spectrum.eta),
        ("Grid", grid.describe()),
        ("Levels", ", ".join(f"{e:.6f}" for e in spectrum.eigenvalues)),
        ("CSV", path),
    ])
    return [path]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Oscillator spectra", add_arguments, run, argv))


if __name__ == "__main__":
    main()
