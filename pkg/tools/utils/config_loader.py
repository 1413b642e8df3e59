import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from quantization.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_OUT = "out"

# Documented defaults per subcommand. None means "chosen by the study".
DEFAULTS = {
    "spectrum": {
        "eta": 1.0,
        "scheme": "schrodinger",
        "count": 5,
        "x_min": None,
        "x_max": None,
        "points": None,
        "branch": "positive",
        "report": "levels",
        "etas": [1.0, 0.1, 0.01],
        "refine": [201, 401, 801],
    },
    "modes": {
        "action": "scan",
        "omega": 1.0,
        "kmax": 3.2,
        "tol": 1e-6,
        "resolution": 4,
        "scheme": "present",
        "nmax": 10,
        "points": 64,
        "steps": 1000,
        "cfl": 0.5,
        "wavenumber": 1,
    },
    "propagate": {
        "model": "oscillator",
        "mass": 1.0,
        "eta": 1.0,
        "x_min": -8.0,
        "x_max": 8.0,
        "points": 801,
        "time": 1.0,
        "eps": [0.1, 0.05, 0.025, 0.0125],
        "center": 1.0,
        "width": 1.0,
    },
    "paths": {
        "count": 1000,
        "segments": 20,
        "mass": 1.0,
        "tol": 1e-6,
        "envelope": 1.0,
        "dim": 4,
        "variant": "arc_length",
        "eta": 1.0,
    },
    "maxwell": {
        "identity": "source-free",
        "points": [16, 32, 64],
        "frames": 7,
        "dim": 4,
    },
    "ladder": {
        "m": 1.0,
        "nmax": 3,
        "dmax": 1,
        "convention": "eq5",
    },
    "plot": {
        "csv": None,
        "kind": "stems",
    },
}

CHOICES = {
    ("spectrum", "scheme"): ("schrodinger", "kg", "kk"),
    ("spectrum", "branch"): ("positive", "negative"),
    ("spectrum", "report"): ("levels", "nonrel", "refinement"),
    ("modes", "action"): ("scan", "energy", "solve"),
    ("modes", "scheme"): ("present", "standard"),
    ("propagate", "model"): ("oscillator", "free"),
    ("paths", "variant"): ("arc_length", "free_alt", "rel_ho"),
    ("maxwell", "identity"): ("jacobi", "source-free", "lorenz"),
    ("ladder", "convention"): ("eq5", "eq12"),
    ("plot", "kind"): ("lines", "stems", "heatmap"),
}

DOCUMENT_KEYS = {"command", "parameters", "out", "seed"}

# value types for parameters whose default is None
OPTIONAL_TYPES = {"x_min": 0.0, "x_max": 0.0, "points": 0, "csv": ""}


class ConfigError(DomainError):
    """The run configuration names an unknown key or an invalid value."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    out_dir: Path = Path(DEFAULT_OUT)
    seed: int = 0


def load_config_document(config_path: Path) -> dict:
    """Loads a JSON run document and rejects keys outside the documented shape."""
    # Fallback logic for config path
    if not config_path.exists():
        # Try looking in current directory as fallback
        config_path = Path(config_path.name)

    if not config_path.exists():
        raise ConfigError(f"Config not found at {config_path}")

    try:
        document = json.loads(config_path.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config {config_path} is not valid JSON: {e}")

    if not isinstance(document, dict):
        raise ConfigError("Config document must be a JSON object")
    unknown = sorted(set(document) - DOCUMENT_KEYS)
    if unknown:
        raise ConfigError(f"Unknown config key: {unknown[0]}")
    if not isinstance(document.get("parameters", {}), dict):
        raise ConfigError("Config key 'parameters' must be an object")
    return document


def _coerce(command: str, key: str, value, default):
    choices = CHOICES.get((command, key))
    if choices is not None and value not in choices:
        raise ConfigError(f"Parameter '{key}' must be one of {', '.join(choices)}; got {value!r}")
    if value is None:
        return value
    if default is None:
        default = OPTIONAL_TYPES.get(key)
    try:
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise TypeError
            return value
        if isinstance(default, int):
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise TypeError
            return float(value)
        if isinstance(default, list):
            if not isinstance(value, (list, tuple)) or not value:
                raise TypeError
            return [_coerce(command, key, v, default[0]) for v in value]
        if isinstance(default, str) and not isinstance(value, str):
            raise TypeError
    except (TypeError, ValueError):
        raise ConfigError(f"Parameter '{key}' has invalid value {value!r}")
    return value


def resolve_config(command: str, overrides: dict, config_path: Path | None = None,
                   out: str | None = None, seed: int | None = None) -> RunConfig:
    """
    Effective run configuration: documented defaults, then the config
    document, then command-line flags.
    """
    if command not in DEFAULTS:
        raise ConfigError(f"Unknown command: {command}")
    defaults = DEFAULTS[command]

    document = load_config_document(config_path) if config_path else {}
    if "command" in document and document["command"] != command:
        raise ConfigError(f"Config is for command '{document['command']}', not '{command}'")

    parameters = dict(defaults)
    for source in (document.get("parameters", {}), overrides):
        for key, value in source.items():
            if key not in defaults:
                raise ConfigError(f"Unknown parameter for {command}: {key}")
            parameters[key] = _coerce(command, key, value, defaults[key])

    out_dir = out or document.get("out") or os.getenv("RPQ_OUT") or DEFAULT_OUT
    seed = seed if seed is not None else document.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"Seed must be a non-negative integer, got {seed!r}")

    logger.debug("resolved %s parameters: %s", command, parameters)
    return RunConfig(command=command, parameters=parameters, out_dir=Path(out_dir), seed=seed)
