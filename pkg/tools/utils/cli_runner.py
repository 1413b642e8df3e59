import argparse
import logging
import sys
from pathlib import Path

from quantization.errors import NumericalError, QuantizationError
from utils.config_loader import DEFAULTS, resolve_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4


def add_global_flags(parser: argparse.ArgumentParser, nested: bool = False) -> None:
    """Global flags; a nested (subcommand) copy only sets values that are given."""
    unset = argparse.SUPPRESS if nested else None
    parser.add_argument("--out", default=unset, help="Output directory (env RPQ_OUT, else out/)")
    parser.add_argument("--seed", type=int, default=unset, help="Seed for sampled ensembles")
    parser.add_argument("--config", type=Path, default=unset, help="JSON run document")
    parser.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS if nested else False,
                        help="Debug logging")


def param(parser: argparse.ArgumentParser, command: str, name: str, **kwargs) -> None:
    """Adds --name for a documented parameter; absent flags leave the config value alone."""
    default = DEFAULTS[command][name]
    kwargs.setdefault("help", f"default: {default}")
    if isinstance(default, list) and "nargs" not in kwargs:
        kwargs["nargs"] = "+"
    parser.add_argument(f"--{name.replace('_', '-')}", dest=name, default=argparse.SUPPRESS, **kwargs)


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        format="[%(module)-12s] %(message)s",
        level=logging.DEBUG if verbose else logging.INFO,
        force=True,
    )


def origin_module(exc: BaseException) -> str:
    """Module in which the exception was raised."""
    tb = exc.__traceback__
    name = "rpq"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", name)
        tb = tb.tb_next
    return name.rsplit(".", 1)[-1]


def banner(title: str, lines: list[tuple[str, object]]) -> None:
    width = max((len(label) for label, _ in lines), default=0) + 2
    print("-" * 40)
    print(title)
    print("-" * 40)
    for label, value in lines:
        print(f"{label + ':':<{width}}{value}")
    print("-" * 40)


def execute(command: str, args: argparse.Namespace, run) -> int:
    """Resolves the config, runs the study and maps library errors to exit codes."""
    setup_logging(getattr(args, "verbose", False))
    overrides = {k: v for k, v in vars(args).items() if k in DEFAULTS[command]}

    try:
        config = resolve_config(command, overrides, args.config, args.out, args.seed)
        run(config)
    except NumericalError as e:
        print(f"CRITICAL ERROR ({origin_module(e)}): {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (QuantizationError, OSError) as e:
        print(f"CRITICAL ERROR ({origin_module(e)}): {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def standalone_main(command: str, description: str, add_arguments, run, argv=None) -> int:
    parser = argparse.ArgumentParser(description=description)
    add_global_flags(parser)
    add_arguments(parser)
    args = parser.parse_args(argv)
    return execute(command, args, run)
