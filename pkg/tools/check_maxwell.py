#!/usr/bin/env python3
"""
CLI for the field-tensor identities on a sampled transverse plane wave:
Jacobi (dual divergence), source-free divergence and Lorenz gauge residuals
as the grid is refined.
"""

import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import maxwell
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import RunConfig
from utils.csv_report import write_csv

COMMAND = "maxwell"


def add_arguments(parser):
    param(parser, COMMAND, "identity", choices=["jacobi", "source-free", "lorenz"])
    param(parser, COMMAND, "points", type=int)
    param(parser, COMMAND, "frames", type=int)
    param(parser, COMMAND, "dim", type=int)


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    rows = maxwell.identity_study(p["identity"], sorted(p["points"]), p["frames"], p["dim"])
    path = write_csv(config.out_dir / "maxwell_residuals.csv", ["identity", "N", "h", "residual"],
                     [(r.identity, r.dim, r.spacing, r.residual) for r in rows])
    banner("FIELD TENSOR IDENTITY", [("Identity", p["identity"]), ("N", p["dim"])]
           + [(f"h {r.spacing:.4g}", f"{r.residual:.3e}") for r in rows]
           + [("CSV", path)])
    return [path]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Field tensor identities", add_arguments, run, argv))


if __name__ == "__main__":
    main()
