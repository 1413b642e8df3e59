#!/usr/bin/env python3
"""
Front end for every restricted-path quantization study.

    rpq.py [--out DIR] [--seed N] [--config FILE] [--verbose] <subcommand> ...

Subcommands: spectrum, modes, propagate, paths, maxwell, ladder, plot.
Exit status: 0 success, 2 usage, 3 precondition/config, 4 numerical failure.
"""

import argparse
import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

import build_ladder
import check_maxwell
import compute_spectrum
import filter_paths
import plot_csv
import propagate
import scan_modes
from utils.cli_runner import add_global_flags, execute

SUBCOMMANDS = {
    "spectrum": (compute_spectrum, "Oscillator spectra and limit studies"),
    "modes": (scan_modes, "Field modes, periodicity scan and vacuum energy"),
    "propagate": (propagate, "Time-sliced propagator convergence"),
    "paths": (filter_paths, "Admissible path filter"),
    "maxwell": (check_maxwell, "Field tensor identities"),
    "ladder": (build_ladder, "Mass ladders"),
    "plot": (plot_csv, "Render a report CSV as SVG"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Restricted-path quantization studies")
    add_global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (module, help_text) in SUBCOMMANDS.items():
        sub_parser = sub.add_parser(name, help=help_text)
        add_global_flags(sub_parser, nested=True)
        module.add_arguments(sub_parser)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    module, _ = SUBCOMMANDS[args.command]
    sys.exit(execute(args.command, args, module.run))


if __name__ == "__main__":
    main()
