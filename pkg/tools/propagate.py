#!/usr/bin/env python3
"""
CLI for the time-sliced propagator: convergence of the Euclidean kernel
evolution against the finite-difference oracle under eps-halving.
"""

import sys
from pathlib import Path

import numpy as np

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import propagator
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import RunConfig
from utils.csv_report import write_csv

COMMAND = "propagate"


def add_arguments(parser):
    param(parser, COMMAND, "model", choices=["oscillator", "free"])
    param(parser, COMMAND, "mass", type=float)
    param(parser, COMMAND, "eta", type=float)
    param(parser, COMMAND, "x_min", type=float)
    param(parser, COMMAND, "x_max", type=float)
    param(parser, COMMAND, "points", type=int)
    param(parser, COMMAND, "time", type=float)
    param(parser, COMMAND, "eps", type=float)
    param(parser, COMMAND, "center", type=float)
    param(parser, COMMAND, "width", type=float)


def build_model(p: dict):
    if p["model"] == "free":
        return propagator.FreeModel(p["mass"])
    return propagator.OscillatorModel(p["mass"], p["eta"])


def run(config: RunConfig) -> list[Path]:
    p = config.parameters

    # 1. Grid and Gaussian start
    grid = propagator.Grid1D(p["x_min"], p["x_max"], p["points"])
    model = build_model(p)
    f = propagator.GridFunction.sample(
        grid, lambda x: np.exp(-((x - p["center"]) ** 2) / (2.0 * p["width"] ** 2))
    )

    # 2. Study
    table = propagator.convergence_study(model, grid, f, p["time"], p["eps"])
    path = write_csv(config.out_dir / "convergence.csv", ["epsilon", "l2_error", "order_estimate"],
                     [(r.epsilon, r.l2_error, r.order_estimate) for r in table.rows])

    lines = [
        ("Model", f"{p['model']} (m={p['mass']}, eta={p['eta']})"),
        ("Grid", grid.describe()),
        ("T", p["time"]),
    ]
    lines += [(f"eps {r.epsilon!r}", f"{r.l2_error:.3e}") for r in table.rows]
    lines.append(("Measured order", f"{table.measured_order:.3f}"))

    # 3. Spreading law for the free particle
    if p["model"] == "free":
        eps = table.rows[-1].epsilon
        variance, expected = propagator.spreading_law(model, f, p["time"], eps)
        lines.append((f"Variance eps {eps!r}", f"{variance:.8f} (law {expected:.8f})"))

    lines.append(("CSV", path))
    banner("PROPAGATOR CONVERGENCE", lines)
    return [path]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Time-sliced propagator convergence", add_arguments, run, argv))


if __name__ == "__main__":
    main()
