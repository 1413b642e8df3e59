"""
Field tensor, Levi-Civita dual and the source-free identities in N
space-time dimensions, from potentials sampled on a `modes.FieldConfig`.

Every derivative is the same central difference: periodic in space, and in
time it consumes one frame at each end. Discrete mixed partials then commute
exactly, so the Jacobi identity holds to rounding for any potential.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, GaugeViolationError
from .geometry import Metric, levi_civita_sign, minkowski_metric
from .modes import FieldConfig, PeriodicGrid

logger = logging.getLogger(__name__)

# dual components grow as N^(N-2); above this only streaming residuals are formed
MAX_MATERIALIZED_DIM = 6

DEFAULT_GAUGE_THRESHOLD = 1e-6


def _crop_time(arr: np.ndarray, axis: int, start: int, stop: int | None) -> np.ndarray:
    index = [slice(None)] * arr.ndim
    index[axis] = slice(start, stop)
    return arr[tuple(index)]


def central_difference(arr: np.ndarray, mu: int, dt: float, grid: PeriodicGrid) -> np.ndarray:
    """
    d/dx^mu of an array whose trailing axes are (time, *grid.shape).
    The result has two fewer frames.
    """
    t_axis = arr.ndim - grid.dim - 1
    if arr.shape[t_axis] < 3:
        raise DomainError(f"central time differences need at least 3 frames, got {arr.shape[t_axis]}")
    if mu == 0:
        return (_crop_time(arr, t_axis, 2, None) - _crop_time(arr, t_axis, 0, -2)) / (2.0 * dt)
    inner = _crop_time(arr, t_axis, 1, -1)
    axis = t_axis + mu
    return (np.roll(inner, -1, axis=axis) - np.roll(inner, 1, axis=axis)) / (2.0 * grid.spacing[mu - 1])


def _check_potential(potential: FieldConfig, g: Metric):
    if potential.components != g.dim or potential.grid.dim != g.dim - 1:
        raise DimensionError(
            f"potential with {potential.components} components on a {potential.grid.dim}-d grid "
            f"does not fit a metric of dimension {g.dim}"
        )


@dataclass(frozen=True, eq=False)
class FieldTensor:
    """Upper-index components f^{mu nu}, shape (N, N, frames, *grid.shape)."""

    grid: PeriodicGrid
    dt: float
    components: np.ndarray
    metric: Metric

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def lowered(self) -> np.ndarray:
        s = np.array([self.metric.raise_index(mu) for mu in range(self.dim)], dtype=float)
        scale = np.outer(s, s).reshape((self.dim, self.dim) + (1,) * (self.components.ndim - 2))
        return scale * self.components

    def max_asymmetry(self) -> float:
        return float(np.abs(self.components + np.swapaxes(self.components, 0, 1)).max())


@dataclass(frozen=True, eq=False)
class DualTensor:
    """Rank N-2 components, shape (N,) * (N-2) + (frames, *grid.shape)."""

    grid: PeriodicGrid
    dt: float
    components: np.ndarray
    dim: int

    @property
    def rank(self) -> int:
        return self.dim - 2


@dataclass(frozen=True, eq=False)
class EMFields:
    electric: np.ndarray
    magnetic: np.ndarray


def potential_gradients(potential: FieldConfig) -> np.ndarray:
    """D[mu, nu] = d xi^nu / dx^mu, shape (N, N, frames - 2, *grid.shape)."""
    # frames are stored (frames, N, *grid); the stencil wants (N, frames, *grid)
    by_component = np.moveaxis(potential.frames, 1, 0)
    return np.stack(
        [central_difference(by_component, mu, potential.dt, potential.grid)
         for mu in range(potential.components)]
    )


def field_tensor(potential: FieldConfig, g: Metric) -> FieldTensor:
    """f^{mu nu} = g^{mu mu} D_mu xi^nu - g^{nu nu} D_nu xi^mu."""
    _check_potential(potential, g)
    grads = potential_gradients(potential)
    s = np.array([g.raise_index(mu) for mu in range(g.dim)], dtype=float)
    s = s.reshape((g.dim, 1) + (1,) * (grads.ndim - 2))
    raised = s * grads
    components = raised - np.swapaxes(raised, 0, 1)
    return FieldTensor(potential.grid, potential.dt, components, g)


def dual_tensor(f: FieldTensor, g: Metric) -> DualTensor:
    """
    fhat^{i_1 ... i_{N-2}} = sum_{a<b} eps(i_1 ... i_{N-2}, a, b) f_{ab}.

    At N = 4 applying this twice gives -f.
    """
    n = g.dim
    if f.dim != n:
        raise DimensionError(f"tensor of dimension {f.dim} with metric of dimension {n}")
    if n > MAX_MATERIALIZED_DIM:
        raise DimensionError(
            f"dual not materialized above N = {MAX_MATERIALIZED_DIM}; use bianchi_residual"
        )
    lowered = f.lowered()
    field_shape = lowered.shape[2:]
    components = np.zeros((n,) * (n - 2) + field_shape)
    for idx in itertools.product(range(n), repeat=n - 2):
        if len(set(idx)) < n - 2:
            continue
        a, b = sorted(set(range(n)) - set(idx))
        components[idx] = levi_civita_sign(idx + (a, b)) * lowered[a, b]
    logger.debug("dual of rank %d: %d components", n - 2, n ** (n - 2))
    return DualTensor(f.grid, f.dt, components, n)


def _normalized(peak: float, scale: float) -> float:
    if scale == 0:
        return float(peak)
    return float(peak / scale)


def jacobi_residual(fhat: DualTensor) -> float:
    """
    max over points, slots and free indices of the divergence of fhat on one
    slot, over the RMS of fhat.
    """
    n = fhat.dim
    rank = fhat.rank
    comps = fhat.components
    if rank == 0:
        # N = 2: the dual is a scalar, no slot to contract
        return 0.0
    worst = 0.0
    for slot in range(rank):
        moved = np.moveaxis(comps, slot, 0)
        divergence = sum(central_difference(moved[mu], mu, fhat.dt, fhat.grid) for mu in range(n))
        worst = max(worst, float(np.abs(divergence).max()))
    rms = math.sqrt(float(np.mean(comps ** 2)))
    return _normalized(worst, rms)


def bianchi_residual(f: FieldTensor) -> float:
    """
    Cyclic sums D_l f_{mn} + D_m f_{nl} + D_n f_{lm} over l < m < n on the
    lowered tensor; any N, nothing beyond f is stored.
    """
    lowered = f.lowered()
    n = f.dim
    worst = 0.0
    for lam, mu, nu in itertools.combinations(range(n), 3):
        cyclic = (
            central_difference(lowered[mu, nu], lam, f.dt, f.grid)
            + central_difference(lowered[nu, lam], mu, f.dt, f.grid)
            + central_difference(lowered[lam, mu], nu, f.dt, f.grid)
        )
        worst = max(worst, float(np.abs(cyclic).max()))
    rms = math.sqrt(float(np.mean(lowered ** 2)))
    return _normalized(worst, rms)


def lorenz_gauge_residual(potential: FieldConfig, g: Metric) -> float:
    """max |D_mu xi^mu| over max |D_mu xi^nu|."""
    _check_potential(potential, g)
    grads = potential_gradients(potential)
    divergence = sum(grads[mu, mu] for mu in range(g.dim))
    return _normalized(float(np.abs(divergence).max()), float(np.abs(grads).max()))


def source_free_residual(f: FieldTensor, potential: FieldConfig,
                         threshold: float = DEFAULT_GAUGE_THRESHOLD) -> float:
    """
    max over mu of |D_nu f^{mu nu}| over max |f|, after confirming the
    potential is Lorenz-gauged.
    """
    gauge = lorenz_gauge_residual(potential, f.metric)
    if gauge > threshold:
        raise GaugeViolationError(gauge, threshold)
    n = f.dim
    worst = 0.0
    for mu in range(n):
        divergence = sum(central_difference(f.components[mu, nu], nu, f.dt, f.grid) for nu in range(n))
        worst = max(worst, float(np.abs(divergence).max()))
    return _normalized(worst, float(np.abs(f.components).max()))


def gauge_transform(potential: FieldConfig, lam, g: Metric) -> FieldConfig:
    """xi^mu + g^{mu mu} D_mu Lambda, one frame shorter at each end."""
    _check_potential(potential, g)
    lam = np.asarray(lam, dtype=float)
    expected = (potential.frames.shape[0],) + potential.grid.shape
    if lam.shape != expected:
        raise DimensionError(f"gauge function of shape {lam.shape}, expected {expected}")
    shift = np.stack(
        [g.raise_index(mu) * central_difference(lam, mu, potential.dt, potential.grid) for mu in range(g.dim)],
        axis=1,
    )
    return FieldConfig(potential.grid, potential.dt, potential.frames[1:-1] + shift)


def electric_magnetic(f: FieldTensor) -> EMFields:
    """E_i = f^{0i} and B_i = fhat^{0i}, both of shape (3, frames, *grid)."""
    if f.dim != 4:
        raise DimensionError(f"electric/magnetic split needs N = 4, got {f.dim}")
    lowered = f.lowered()
    electric = np.stack([f.components[0, i] for i in (1, 2, 3)])
    magnetic = []
    for i in (1, 2, 3):
        a, b = sorted({1, 2, 3} - {i})
        magnetic.append(levi_civita_sign((0, i, a, b)) * lowered[a, b])
    return EMFields(electric, np.stack(magnetic))


def plane_wave_potential(points: int, frames: int, dim: int = 4, amplitude: float = 1.0,
                         k: int = 1, courant: float = 0.5) -> FieldConfig:
    """
    Transverse wave xi^2 = A sin(k (t - x^1)), all other components zero, on a
    grid resolved along x^1 only (single points on the transverse axes).
    dt = courant * h; courant = 1 makes the discrete dispersion exact.
    """
    if dim < 3:
        raise DimensionError(f"a transverse polarization needs N >= 3, got {dim}")
    if frames < 1 or points < 2:
        raise DomainError(f"need points >= 2 and frames >= 1, got {points}, {frames}")
    grid = PeriodicGrid((points,) + (1,) * (dim - 2))
    dt = courant * grid.spacing[0]
    t = np.arange(frames) * dt
    x = grid.axis_nodes(0)
    phase = k * (t[:, None] - x[None, :])
    values = np.zeros((frames, dim) + grid.shape)
    values[:, 2] = (amplitude * np.sin(phase)).reshape((frames,) + grid.shape)
    return FieldConfig(grid, dt, values)


@dataclass(frozen=True)
class ResidualRow:
    identity: str
    dim: int
    spacing: float
    residual: float


def identity_study(identity: str, points_list, frames: int = 7, dim: int = 4) -> list[ResidualRow]:
    """One residual per grid for `jacobi`, `source-free` or `lorenz` on the plane wave."""
    if identity not in ("jacobi", "source-free", "lorenz"):
        raise DomainError(f"unknown identity {identity!r}")
    g = minkowski_metric(dim)
    rows = []
    for points in points_list:
        potential = plane_wave_potential(points, frames, dim)
        h = potential.grid.spacing[0]
        if identity == "lorenz":
            residual = lorenz_gauge_residual(potential, g)
        else:
            f = field_tensor(potential, g)
            if identity == "source-free":
                residual = source_free_residual(f, potential)
            elif dim <= MAX_MATERIALIZED_DIM:
                residual = jacobi_residual(dual_tensor(f, g))
            else:
                residual = bianchi_residual(f)
        rows.append(ResidualRow(identity, dim, h, residual))
    return rows
