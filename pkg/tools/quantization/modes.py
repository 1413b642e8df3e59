"""
Zero-mass field sector: leapfrog wave solver on a periodic grid, spatial
Fourier modes, transversality, and the periodic-time quantization k_n = n w.

Frames are stored as arrays of shape (frames, N, *grid.shape); component 0
is the time component of the N-vector potential.
"""

from __future__ import annotations

import logging
import math
import os
import pathlib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DimensionError, DomainError, StabilityError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# a final time this close to a frame counts as landing on it
_FRAME_SNAP = 1e-9


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform periodic box [0, length)^d with `shape[a]` points on axis a (d = 1 or 3 in practice)."""

    shape: tuple[int, ...]
    length: float = TWO_PI

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(n) for n in self.shape))
        if not self.shape:
            raise DimensionError("a grid needs at least one spatial axis")
        # a single point marks an axis the field does not vary along
        if any(n < 1 for n in self.shape):
            raise DomainError(f"every axis needs at least 1 point, got {self.shape}")
        if not self.length > 0:
            raise DomainError(f"box length must be positive, got {self.length}")

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(self.length / n for n in self.shape)

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    def axis_nodes(self, axis: int) -> np.ndarray:
        return np.arange(self.shape[axis]) * self.spacing[axis]

    def coordinates(self) -> tuple[np.ndarray, ...]:
        return np.meshgrid(*(self.axis_nodes(a) for a in range(self.dim)), indexing="ij")

    def wavevectors(self) -> np.ndarray:
        """Reciprocal-lattice points in FFT order, shape (prod(shape), d)."""
        axes = [TWO_PI * np.fft.fftfreq(n, d=h) for n, h in zip(self.shape, self.spacing)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


@dataclass(frozen=True, eq=False)
class FieldConfig:
    grid: PeriodicGrid
    dt: float
    frames: np.ndarray

    def __post_init__(self):
        frames = np.array(self.frames, dtype=float)
        if frames.ndim != self.grid.dim + 2 or frames.shape[2:] != self.grid.shape:
            raise DimensionError(
                f"frames of shape {frames.shape} do not match (frames, N, *{self.grid.shape})"
            )
        if not self.dt > 0:
            raise DomainError(f"time step must be positive, got {self.dt}")
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)

    @property
    def components(self) -> int:
        return self.frames.shape[1]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.frames.shape[0]) * self.dt


@dataclass(frozen=True, eq=False)
class ModeSet:
    """
    Coefficient trajectories a_k(t), shape (frames, K, N), for K wavevectors.

    `grid` is set when the modes come from `decompose` and is required to
    reconstruct a field; analytic trajectories may leave it unset.
    """

    wavevectors: np.ndarray
    coefficients: np.ndarray
    dt: float
    grid: PeriodicGrid | None = None
    omega: float | None = None
    real: bool = False

    def __post_init__(self):
        k = np.atleast_2d(np.array(self.wavevectors, dtype=float))
        a = np.array(self.coefficients, dtype=complex)
        if a.ndim != 3 or a.shape[1] != k.shape[0]:
            raise DimensionError(f"coefficients {a.shape} do not match {k.shape[0]} wavevectors")
        k.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "wavevectors", k)
        object.__setattr__(self, "coefficients", a)

    @property
    def frames(self) -> int:
        return self.coefficients.shape[0]

    def key(self, index: int) -> tuple[float, ...]:
        return tuple(float(c) for c in self.wavevectors[index])


class VacuumScheme(str, Enum):
    PRESENT = "present"
    STANDARD = "standard"


@dataclass(frozen=True)
class EnergySpectrum:
    scheme: VacuumScheme
    omega: float
    levels: dict = field(default_factory=dict)

    def level(self, n: int) -> Fraction:
        """Exact rational level; a float omega enters as its exact binary value."""
        omega = Fraction(self.omega)
        if self.scheme is VacuumScheme.PRESENT:
            return n * omega
        if n < 0:
            raise DomainError(f"standard scheme levels start at n = 0, got {n}")
        return n * omega + omega / 2


def _laplacian(u: np.ndarray, grid: PeriodicGrid) -> np.ndarray:
    # spatial axes start after the component axis
    out = np.zeros_like(u)
    for a, h in enumerate(grid.spacing):
        axis = u.ndim - grid.dim + a
        out += (np.roll(u, 1, axis=axis) + np.roll(u, -1, axis=axis) - 2.0 * u) / h ** 2
    return out


def _forward_gradients(u: np.ndarray, grid: PeriodicGrid) -> list[np.ndarray]:
    grads = []
    for a, h in enumerate(grid.spacing):
        axis = u.ndim - grid.dim + a
        grads.append((np.roll(u, -1, axis=axis) - u) / h)
    return grads


def cfl_limit(grid: PeriodicGrid) -> float:
    return min(grid.spacing) / math.sqrt(grid.dim)


def wave_solve(initial, velocity, grid: PeriodicGrid, dt: float, steps: int) -> FieldConfig:
    """
    Leapfrog for d^2 u/dt^2 = Laplacian u, each component independently.

    The first step uses the Taylor start u1 = u0 + dt v + dt^2/2 Lap u0, which
    is exact for standing waves on the discrete dispersion relation.
    """
    u0 = np.asarray(initial, dtype=float)
    v0 = np.asarray(velocity, dtype=float)
    if u0.shape == grid.shape:
        u0, v0 = u0[None], v0[None]
    if u0.shape[1:] != grid.shape or v0.shape != u0.shape:
        raise DimensionError(f"initial data {u0.shape} / {v0.shape} do not fit grid {grid.shape}")
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    limit = cfl_limit(grid)
    if not 0 < dt <= limit * (1.0 + 1e-12):
        raise StabilityError(f"time step {dt!r} violates the CFL bound {limit!r}")

    frames = np.empty((steps + 1,) + u0.shape)
    frames[0] = u0
    if steps >= 1:
        frames[1] = u0 + dt * v0 + 0.5 * dt ** 2 * _laplacian(u0, grid)
    for n in range(1, steps):
        frames[n + 1] = 2.0 * frames[n] - frames[n - 1] + dt ** 2 * _laplacian(frames[n], grid)
    logger.debug("leapfrog: %d steps, dt=%g, CFL number %.3f", steps, dt, dt / limit)
    return FieldConfig(grid, dt, frames)


def standing_wave_frequency(k: float, h: float, dt: float) -> float:
    """Discrete leapfrog dispersion (2/dt) asin((dt/h) sin(kh/2))."""
    return 2.0 / dt * math.asin(dt / h * math.sin(0.5 * k * h))


def wave_energy(field: FieldConfig) -> np.ndarray:
    """
    Staggered energy at each half step n + 1/2:

        E = h^d / 2 * sum[((u^{n+1} - u^n) / dt)^2 + D+u^{n+1} . D+u^n]

    which the leapfrog scheme conserves exactly.
    """
    u = field.frames
    if u.shape[0] < 2:
        raise DomainError("energy needs at least two frames")
    kinetic = ((u[1:] - u[:-1]) / field.dt) ** 2
    grad_next = _forward_gradients(u[1:], field.grid)
    grad_prev = _forward_gradients(u[:-1], field.grid)
    potential = sum(a * b for a, b in zip(grad_next, grad_prev))
    density = kinetic + potential
    axes = tuple(range(1, density.ndim))
    return 0.5 * field.grid.cell_volume * density.sum(axis=axes)


def decompose(field: FieldConfig) -> ModeSet:
    """Per-frame, per-component spatial DFT normalized so a_k of exp(ikx) is 1."""
    grid = field.grid
    spatial = tuple(range(2, 2 + grid.dim))
    coeffs = np.fft.fftn(field.frames, axes=spatial, norm="forward")
    # (frames, N, *shape) -> (frames, K, N)
    coeffs = coeffs.reshape(coeffs.shape[0], coeffs.shape[1], -1).transpose(0, 2, 1)
    return ModeSet(grid.wavevectors(), coeffs, field.dt, grid=grid, real=True)


def reconstruct(modes: ModeSet) -> FieldConfig:
    if modes.grid is None:
        raise DomainError("modes without a grid cannot be reconstructed")
    if not modes.real:
        raise DomainError("field configurations are real; these modes have no reality symmetry")
    grid = modes.grid
    coeffs = modes.coefficients.transpose(0, 2, 1).reshape(
        (modes.frames, modes.coefficients.shape[2]) + grid.shape
    )
    values = np.fft.ifftn(coeffs, axes=tuple(range(2, 2 + grid.dim)), norm="forward")
    return FieldConfig(grid, modes.dt, values.real)


def sample_pure_mode(k: float, omega: float, frames_per_period: int = 64, periods: float = 1.0) -> ModeSet:
    """Analytic trajectory a_k(t) = exp(-i|k|t) over `periods` of 2 pi / omega."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if frames_per_period < 2:
        raise DomainError(f"need at least 2 frames per period, got {frames_per_period}")
    dt = TWO_PI / omega / frames_per_period
    count = int(math.ceil(frames_per_period * periods)) + 1
    t = np.arange(count) * dt
    a = np.exp(-1j * abs(k) * t)
    return ModeSet([[k]], a.reshape(count, 1, 1), dt, omega=omega)


def mode_residual(modes: ModeSet) -> dict[tuple[float, ...], float]:
    """
    Second-difference residual of a'' + |k|^2 a = 0 per wavevector,
    normalized by |k|^2 ||a|| (by ||a|| for k = 0).
    """
    a = modes.coefficients
    if a.shape[0] < 3:
        raise DomainError(f"mode residual needs at least 3 frames, got {a.shape[0]}")
    k2 = (modes.wavevectors ** 2).sum(axis=1)
    inner = a[1:-1]
    second = (a[2:] - 2.0 * inner + a[:-2]) / modes.dt ** 2
    applied = second + k2[None, :, None] * inner
    num = np.sqrt((np.abs(applied) ** 2).sum(axis=(0, 2)))
    den = np.sqrt((np.abs(inner) ** 2).sum(axis=(0, 2))) * np.where(k2 > 0, k2, 1.0)
    residual = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return {modes.key(i): float(r) for i, r in enumerate(residual)}


def transverse_projection(modes: ModeSet) -> ModeSet:
    """Apply P = I - k k^T / |k|^2 to the spatial components and set a^0 = 0."""
    k = modes.wavevectors
    a = np.array(modes.coefficients)
    if a.shape[2] != k.shape[1] + 1:
        raise DimensionError(f"{a.shape[2]} components for {k.shape[1]} spatial axes")
    spatial = a[:, :, 1:]
    k2 = (k ** 2).sum(axis=1)
    along = np.einsum("fkc,kc->fk", spatial, k)
    scale = np.divide(along, k2[None, :], out=np.zeros_like(along), where=k2[None, :] > 0)
    a[:, :, 1:] = spatial - scale[:, :, None] * k[None, :, :]
    a[:, :, 0] = 0.0
    return ModeSet(k, a, modes.dt, grid=modes.grid, omega=modes.omega, real=modes.real)


def transversality_residual(modes: ModeSet) -> dict[tuple[float, ...], float]:
    """max over frames of |k . a| / (|k||a|) and |a^0| / |a|."""
    k = modes.wavevectors
    a = modes.coefficients
    if a.shape[2] != k.shape[1] + 1:
        raise DimensionError(f"{a.shape[2]} components for {k.shape[1]} spatial axes")
    spatial = a[:, :, 1:]
    k_norm = np.sqrt((k ** 2).sum(axis=1))
    a_norm = np.sqrt((np.abs(a) ** 2).sum(axis=2))
    s_norm = np.sqrt((np.abs(spatial) ** 2).sum(axis=2))
    along = np.abs(np.einsum("fkc,kc->fk", spatial, k))
    den = k_norm[None, :] * s_norm
    longitudinal = np.divide(along, den, out=np.zeros_like(along), where=den > 0)
    temporal = np.divide(np.abs(a[:, :, 0]), a_norm, out=np.zeros_like(a_norm), where=a_norm > 0)
    worst = np.maximum(longitudinal, temporal).max(axis=0)
    return {modes.key(i): float(r) for i, r in enumerate(worst)}


def periodicity_residual(source: FieldConfig | ModeSet, omega: float) -> float:
    """
    ||xi(2 pi / omega) - xi(0)|| / ||xi(0)||, linearly interpolating the final
    frame when the period is not a whole number of steps.
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if isinstance(source, FieldConfig):
        data = source.frames.reshape(source.frames.shape[0], -1)
    else:
        data = source.coefficients.reshape(source.frames, -1)
    position = TWO_PI / omega / source.dt
    nearest = round(position)
    if abs(position - nearest) <= _FRAME_SNAP * max(1.0, position):
        position = float(nearest)
    last = data.shape[0] - 1
    if position > last:
        raise DomainError(f"trajectory covers {last} steps, the period needs {position:.6g}")
    i = int(math.floor(position))
    frac = position - i
    final = data[i] if frac == 0 else (1.0 - frac) * data[i] + frac * data[i + 1]
    start = np.linalg.norm(data[0])
    drift = np.linalg.norm(final - data[0])
    if start == 0:
        return float(drift)
    return float(drift / start)


@dataclass(frozen=True)
class ScanRow:
    n: float
    k: float
    residual: float
    admissible: bool


def scan_modes(omega: float, k_max: float, tol: float, resolution: int = 4,
               frames_per_period: int = 64) -> list[ScanRow]:
    """
    Test candidate wavenumbers j * omega / resolution in [0, k_max] as pure
    modes over one period 2 pi / omega.
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if resolution < 1:
        raise DomainError(f"resolution must be at least 1, got {resolution}")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if k_max < 0:
        return []
    rows = []
    top = int(math.floor(k_max * resolution / omega + 1e-9))
    for j in range(top + 1):
        n, rest = divmod(j, resolution)
        k = n * omega if rest == 0 else j * omega / resolution
        if k > k_max:
            break
        residual = periodicity_residual(sample_pure_mode(k, omega, frames_per_period), omega)
        rows.append(ScanRow(j / resolution, k, residual, residual <= tol))
    logger.debug("scanned %d candidates up to k=%g", len(rows), k_max)
    return rows


def quantized_mode_scan(omega: float, k_max: float, tol: float, resolution: int = 4) -> list[float]:
    return [row.k for row in scan_modes(omega, k_max, tol, resolution) if row.admissible]


def energy_spectrum(scheme: VacuumScheme | str, omega: float, n_max: int) -> EnergySpectrum:
    scheme = VacuumScheme(scheme)
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    template = EnergySpectrum(scheme, omega)
    return EnergySpectrum(scheme, omega, {n: template.level(n) for n in range(n_max + 1)})


def write_field_snapshot(field: FieldConfig, frame: int, target: str | os.PathLike) -> None:
    """One grid point per line: coordinates then the N components."""
    if not -field.frames.shape[0] <= frame < field.frames.shape[0]:
        raise DomainError(f"frame {frame} out of range for {field.frames.shape[0]} frames")
    coords = [c.ravel() for c in field.grid.coordinates()]
    values = field.frames[frame].reshape(field.components, -1)
    lines = [f"# t={float(field.times[frame])!r} grid={'x'.join(map(str, field.grid.shape))}"]
    for p in range(values.shape[1]):
        row = [c[p] for c in coords] + list(values[:, p])
        lines.append(" ".join(repr(float(v)) for v in row))
    pathlib.Path(target).write_text("\n".join(lines) + "\n")
