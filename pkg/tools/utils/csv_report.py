import csv
import math
import numbers
from fractions import Fraction
from pathlib import Path

import numpy as np

from quantization.errors import DomainError


class ReportError(DomainError):
    """A CSV report is missing, malformed, or does not match its header."""


def format_value(value) -> str:
    """
    Stable text for one CSV cell.
    Floats use the shortest round-trip decimal (repr); booleans are true/false.
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, Fraction):
        return repr(float(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> Path:
    """Writes header + rows with Unix line endings; returns the path written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ReportError(f"row {row!r} has {len(row)} cells for {len(header)} columns")
            w.writerow([format_value(v) for v in row])
    return path


def parse_value(text: str):
    """Inverse of format_value for numeric and boolean cells; other text passes through."""
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_csv(path: Path) -> tuple[list[str], list[dict]]:
    """Reads a report back as (header, rows); every row must fill every column."""
    path = Path(path)
    if not path.exists():
        raise ReportError(f"CSV not found at {path}")

    with path.open(newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames
        if not header:
            raise ReportError(f"{path} has no header line")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if None in raw or any(v is None for v in raw.values()):
                raise ReportError(f"{path}:{lineno}: expected {len(header)} cells")
            rows.append({k: parse_value(v) for k, v in raw.items()})
    return list(header), rows
