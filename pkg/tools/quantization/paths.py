"""
Polygonal paths, their actions, and the admissible-path filter.

A path is admissible when exp(iS) = 1 within a tolerance, i.e. its action
sits within `tol` of some 2*pi*n. With arc-length parameterization the
action is m times the elapsed proper time, so shifting every parameter by
2*pi*n/m leaves the admissible set unchanged.
"""

from __future__ import annotations

import logging
import math
import os
import pathlib
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CausalityError, DimensionError, DomainError
from .geometry import Metric

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# relative slack before a segment counts as spacelike
_NULL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Path:
    """Ordered events (rows of N coordinates) with strictly increasing parameters."""

    events: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        events = np.array(self.events, dtype=float)
        params = np.array(self.params, dtype=float)
        if events.ndim != 2:
            raise DimensionError(f"events must be a 2-d array, got shape {events.shape}")
        if params.shape != (events.shape[0],):
            raise DimensionError(f"{params.shape[0]} params for {events.shape[0]} events")
        if events.shape[0] < 2:
            raise DomainError("a path needs at least two vertices")
        if not np.all(np.diff(params) > 0):
            raise DomainError("path parameters must be strictly increasing")
        events.setflags(write=False)
        params.setflags(write=False)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "params", params)

    @property
    def dim(self) -> int:
        return self.events.shape[1]

    @property
    def vertices(self) -> int:
        return self.events.shape[0]

    def split(self, vertex: int) -> tuple["Path", "Path"]:
        """Two sub-paths sharing the interior vertex."""
        if not 0 < vertex < self.vertices - 1:
            raise DomainError(f"split vertex {vertex} is not interior")
        return (
            Path(self.events[: vertex + 1], self.params[: vertex + 1]),
            Path(self.events[vertex:], self.params[vertex:]),
        )


class ActionVariant(str, Enum):
    ARC_LENGTH = "arc_length"
    FREE_ALT = "free_alt"
    REL_HO = "rel_ho"


@dataclass(frozen=True)
class ActionModel:
    variant: ActionVariant
    mass: float = 1.0
    eta: float = 0.0

    def __post_init__(self):
        if self.variant in (ActionVariant.ARC_LENGTH, ActionVariant.FREE_ALT) and not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.eta >= 0:
            raise DomainError(f"eta must be non-negative, got {self.eta}")

    @classmethod
    def arc_length(cls, mass: float) -> "ActionModel":
        return cls(ActionVariant.ARC_LENGTH, mass=mass)

    @classmethod
    def free_alt(cls, mass: float) -> "ActionModel":
        return cls(ActionVariant.FREE_ALT, mass=mass)

    @classmethod
    def rel_ho(cls, eta: float) -> "ActionModel":
        return cls(ActionVariant.REL_HO, mass=1.0, eta=eta)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    nearest_n: int
    deviation: float
    action: float


def _increments(path: Path, g: Metric) -> tuple[np.ndarray, np.ndarray]:
    if path.dim != g.dim:
        raise DimensionError(f"path lives in {path.dim} dimensions, metric in {g.dim}")
    dx = np.diff(path.events, axis=0)
    squared = (dx * dx) @ np.array(g.diag, dtype=float)
    return dx, squared


def _segment_proper_times(path: Path, g: Metric) -> np.ndarray:
    dx, squared = _increments(path, g)
    scale = (dx * dx).sum(axis=1)
    bad = np.nonzero(squared < -_NULL_TOL * scale)[0]
    if bad.size:
        i = int(bad[0])
        raise CausalityError(f"segment {i} is spacelike (interval {squared[i]:.6g})")
    return np.sqrt(np.maximum(squared, 0.0))


def proper_time(path: Path, g: Metric) -> float:
    """Total proper time; every segment must be timelike or null."""
    return math.fsum(_segment_proper_times(path, g))


def monotonic_segments(path: Path) -> list[tuple[int, int]]:
    """
    Maximal vertex ranges (start, stop) along which the time coordinate moves
    in one direction. Zero-length time increments join the current run.
    """
    directions = np.sign(np.diff(path.events[:, 0]))
    runs = []
    start, current = 0, 0.0
    for i, d in enumerate(directions):
        if d != 0 and current != 0 and d != current:
            runs.append((start, i))
            start = i
        if d != 0:
            current = d
    runs.append((start, path.vertices - 1))
    return runs


def _arc_length_action(path: Path, model: ActionModel, g: Metric) -> float:
    taus = _segment_proper_times(path, g)
    direction = np.sign(np.diff(path.events[:, 0]))
    pieces = []
    for start, stop in monotonic_segments(path):
        run = direction[start:stop]
        sign = run[run != 0][0] if np.any(run != 0) else 1.0
        pieces.append(sign * math.fsum(taus[start:stop]))
    return model.mass * math.fsum(pieces)


def _free_alt_action(path: Path, model: ActionModel, g: Metric) -> float:
    _, squared = _increments(path, g)
    dtau = np.diff(path.params)
    # L' = m (xdot.xdot + 1) / 2 with forward-difference velocities
    return math.fsum(model.mass * (squared / dtau + dtau) / 2.0)


def _rel_ho_action(path: Path, model: ActionModel, g: Metric) -> float:
    if path.dim < 2:
        raise DimensionError("the oscillator action needs a time axis and one position axis")
    _increments(path, g)
    dtau = np.diff(path.params)
    t_dot = np.diff(path.events[:, 0]) / dtau
    q_dot = np.diff(path.events[:, 1]) / dtau
    q_mid = 0.5 * (path.events[1:, 1] + path.events[:-1, 1])
    lagrangian = 0.5 * (t_dot ** 2 - q_dot ** 2 + 1.0 + model.eta * q_mid ** 2 * t_dot)
    return math.fsum(lagrangian * dtau)


_ACTIONS = {
    ActionVariant.ARC_LENGTH: _arc_length_action,
    ActionVariant.FREE_ALT: _free_alt_action,
    ActionVariant.REL_HO: _rel_ho_action,
}


def action(path: Path, model: ActionModel, g: Metric) -> float:
    """
    Discrete action along the polygon.

    ArcLength sums m * proper time over monotonic segments, each signed by its
    time direction, so it depends on the events only. FreeAlt and RelHO use
    forward-difference velocities in the path parameter.
    """
    return float(_ACTIONS[model.variant](path, model, g))


def admissibility_of(s: float, tol: float) -> AdmissibilityReport:
    if not 0 < tol <= math.pi:
        raise DomainError(f"tolerance must lie in (0, pi], got {tol}")
    turns = s / TWO_PI
    n = int(np.rint(turns))
    # |turns - n| <= 1/2 exactly, so deviation never exceeds pi
    deviation = TWO_PI * abs(turns - n)
    return AdmissibilityReport(admissible=deviation <= tol, nearest_n=n, deviation=deviation, action=s)


def is_admissible(path: Path, model: ActionModel, g: Metric, tol: float) -> AdmissibilityReport:
    return admissibility_of(action(path, model, g), tol)


def translate_parameter(path: Path, dtau: float) -> Path:
    return Path(path.events, path.params + dtau)


def reverse_path(path: Path) -> Path:
    """Traverse the events backwards, re-indexed so parameters still increase."""
    params = (path.params[0] + path.params[-1]) - path.params[::-1]
    return Path(path.events[::-1], params)


def sample_paths(seed: int, count: int, segments: int, g: Metric, envelope: float = 1.0) -> list[Path]:
    """
    Deterministic ensemble of future-directed timelike polygons from the origin.

    Each path draws from its own generator seeded with (seed, index), so any
    partition of the indices reproduces the same ensemble. Spatial steps are
    uniform in [-envelope, envelope]; each segment's proper time is uniform in
    [0.1, 1] and the parameters are the accumulated proper times.
    """
    if count < 0 or segments < 1:
        raise DomainError(f"need count >= 0 and segments >= 1, got {count}, {segments}")
    if not envelope > 0:
        raise DomainError(f"envelope must be positive, got {envelope}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    if g.diag[0] != 1 or any(s != -1 for s in g.diag[1:]):
        raise DimensionError(f"path sampling needs a Minkowski metric, got {g.diag}")

    ensemble = []
    for index in range(count):
        rng = np.random.default_rng([seed, index])
        spatial = rng.uniform(-envelope, envelope, size=(segments, g.dim - 1))
        dtau = rng.uniform(0.1, 1.0, size=segments)
        dt = np.sqrt(dtau ** 2 + (spatial ** 2).sum(axis=1))
        steps = np.column_stack([dt, spatial])
        events = np.vstack([np.zeros(g.dim), np.cumsum(steps, axis=0)])
        params = np.concatenate([[0.0], np.cumsum(dtau)])
        ensemble.append(Path(events, params))
    logger.debug("sampled %d paths of %d segments (seed %d)", count, segments, seed)
    return ensemble


def admissible_fraction(ensemble: list[Path], model: ActionModel, g: Metric, tol: float) -> float:
    if not ensemble:
        raise DomainError("admissible fraction of an empty ensemble")
    hits = sum(1 for p in ensemble if is_admissible(p, model, g, tol).admissible)
    return hits / len(ensemble)


def write_path_table(path: Path, target: str | os.PathLike) -> None:
    """One vertex per line: `tau x0 x1 ... x{N-1}` in shortest round-trip decimals."""
    lines = []
    for tau, event in zip(path.params, path.events):
        lines.append(" ".join(repr(float(v)) for v in (tau, *event)))
    pathlib.Path(target).write_text("\n".join(lines) + "\n")


def read_path_table(source: str | os.PathLike) -> Path:
    rows = []
    for lineno, line in enumerate(pathlib.Path(source).read_text().splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rows.append([float(v) for v in line.split()])
        except ValueError:
            raise DomainError(f"line {lineno}: not a row of decimals: {line!r}")
    if not rows:
        raise DomainError("path table is empty")
    if len({len(r) for r in rows}) != 1:
        raise DimensionError("path table rows have differing lengths")
    table = np.array(rows)
    return Path(table[:, 1:], table[:, 0])
