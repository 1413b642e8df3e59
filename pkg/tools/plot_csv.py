#!/usr/bin/env python3
"""
CLI for rendering any report CSV as a standalone SVG.
"""

import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import ConfigError, RunConfig
from utils.svg_plot import plot_csv

COMMAND = "plot"


def add_arguments(parser):
    parser.add_argument("csv", type=str, help="Report CSV to render")
    param(parser, COMMAND, "kind", choices=["lines", "stems", "heatmap"])


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    if not p["csv"]:
        raise ConfigError("Parameter 'csv' is required")
    source = Path(p["csv"])
    target = config.out_dir / source.with_suffix(".svg").name
    svg = plot_csv(source, p["kind"], target)
    banner("PLOT", [("Source", source), ("Kind", p["kind"]), ("SVG", svg)])
    return [svg]


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Render a report CSV as SVG", add_arguments, run, argv))


if __name__ == "__main__":
    main()
