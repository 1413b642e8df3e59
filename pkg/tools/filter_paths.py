#!/usr/bin/env python3
"""
CLI for the admissible-path filter: samples a seeded ensemble of timelike
polygons and reports which satisfy exp(iS) = 1 within tolerance.
"""

import sys
from pathlib import Path

current_dir = Path(__file__).resolve().parent
if str(current_dir) not in sys.path:
    sys.path.append(str(current_dir))

from quantization import paths
from quantization.geometry import minkowski_metric
from utils.cli_runner import banner, param, standalone_main
from utils.config_loader import RunConfig
from utils.csv_report import write_csv

COMMAND = "paths"


def add_arguments(parser):
    param(parser, COMMAND, "count", type=int)
    param(parser, COMMAND, "segments", type=int)
    param(parser, COMMAND, "mass", type=float)
    param(parser, COMMAND, "tol", type=float)
    param(parser, COMMAND, "envelope", type=float)
    param(parser, COMMAND, "dim", type=int)
    param(parser, COMMAND, "variant", choices=["arc_length", "free_alt", "rel_ho"])
    param(parser, COMMAND, "eta", type=float)


def build_action(p: dict) -> paths.ActionModel:
    variant = paths.ActionVariant(p["variant"])
    if variant is paths.ActionVariant.REL_HO:
        return paths.ActionModel.rel_ho(p["eta"])
    return paths.ActionModel(variant, mass=p["mass"])


def run(config: RunConfig) -> list[Path]:
    p = config.parameters
    out = config.out_dir

    # 1. Ensemble
    g = minkowski_metric(p["dim"])
    model = build_action(p)
    ensemble = paths.sample_paths(config.seed, p["count"], p["segments"], g, p["envelope"])

    # 2. Filter
    reports = [paths.is_admissible(path, model, g, p["tol"]) for path in ensemble]
    table = write_csv(out / "paths.csv", ["index", "action", "nearest_n", "deviation", "admissible"],
                      [(i, r.action, r.nearest_n, r.deviation, r.admissible) for i, r in enumerate(reports)])
    written = [table]
    if ensemble:
        sample = out / "path_0.txt"
        paths.write_path_table(ensemble[0], sample)
        written.append(sample)

    hits = sum(r.admissible for r in reports)
    fraction = paths.admissible_fraction(ensemble, model, g, p["tol"]) if ensemble else 0.0
    banner("ADMISSIBLE PATHS", [
        ("Seed", config.seed),
        ("Paths", f"{len(reports)} x {p['segments']} segments in N={p['dim']}"),
        ("Action", model.variant.value),
        ("Admissible", f"{hits} ({fraction:.4%})"),
        ("CSV", table),
    ])
    return written


def main(argv=None):
    sys.exit(standalone_main(COMMAND, "Admissible path filter", add_arguments, run, argv))


if __name__ == "__main__":
    main()
