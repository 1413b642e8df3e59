"""
Time-sliced kernel evolution on a 1-d grid, Euclidean (imaginary-time) form.

The short-time kernel is exp[-S_E(x, y, eps)] with the classical Euclidean
action of the free particle, m (x - y)^2 / (2 eps), plus eps V((x + y) / 2)
for the oscillator. The constant prefactor D(x) (and the path-count constant
behind it) is never formed explicitly: the kinetic factor of every row is
normalized to unit trapezoid integral instead.

The oracle evolves with exp(-T H) for the finite-difference Hamiltonian
shared with `spectral`, via a full eigen-decomposition.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

# kernel support in Gaussian widths before truncation is flagged
_SUPPORT_WIDTHS = 6.0


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if self.points < 3:
            raise DomainError(f"grid needs at least 3 points, got {self.points}")
        if not self.x_min < self.x_max:
            raise DomainError(f"grid bounds out of order: [{self.x_min}, {self.x_max}]")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid weights (without the factor h)."""
        w = np.ones(self.points)
        w[0] = w[-1] = 0.5
        return w

    def describe(self) -> str:
        return f"[{self.x_min!r},{self.x_max!r}]x{self.points}"


@dataclass(frozen=True)
class FreeModel:
    mass: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    def potential(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class OscillatorModel:
    mass: float = 1.0
    eta: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.eta >= 0:
            raise DomainError(f"eta must be non-negative, got {self.eta}")

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.eta * x ** 2


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape != (self.grid.points,):
            raise DimensionError(f"{values.shape} values on a grid of {self.grid.points} points")
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, grid: Grid1D, func) -> "GridFunction":
        return cls(grid, np.asarray(func(grid.nodes)))


@dataclass(frozen=True, eq=False)
class GridKernel:
    grid: Grid1D
    step: float
    matrix: np.ndarray
    boundary_warning: bool = False

    @property
    def row_integrals(self) -> np.ndarray:
        return self.grid.spacing * (self.matrix @ self.grid.weights)


def short_time_kernel(model, grid: Grid1D, eps: float) -> GridKernel:
    if not eps > 0:
        raise DomainError(f"time step must be positive, got {eps}")
    x = grid.nodes
    h = grid.spacing
    separation = x[:, None] - x[None, :]
    kinetic = np.exp(-model.mass * separation ** 2 / (2.0 * eps))
    kinetic /= (h * (kinetic @ grid.weights))[:, None]
    midpoint = 0.5 * (x[:, None] + x[None, :])
    matrix = kinetic * np.exp(-eps * model.potential(midpoint))

    width = math.sqrt(eps / model.mass)
    truncated = _SUPPORT_WIDTHS * width > 0.5 * (grid.x_max - grid.x_min)
    if truncated:
        logger.warning(
            "kernel width %.3g exceeds the grid half-range %.3g / %g; rows are truncated",
            width, 0.5 * (grid.x_max - grid.x_min), _SUPPORT_WIDTHS,
        )
    return GridKernel(grid=grid, step=eps, matrix=matrix, boundary_warning=truncated)


def evolve(kernel: GridKernel, f: GridFunction, steps: int) -> GridFunction:
    """Apply the kernel `steps` times with trapezoid quadrature in y."""
    if f.grid != kernel.grid:
        raise DimensionError(f"function grid {f.grid.describe()} != kernel grid {kernel.grid.describe()}")
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    if steps == 0:
        return f
    weighted = kernel.matrix * (kernel.grid.spacing * kernel.grid.weights)[None, :]
    values = f.values
    for _ in range(steps):
        values = weighted @ values
    return GridFunction(f.grid, values)


def oracle_evolution(model, grid: Grid1D, f: GridFunction, T: float) -> GridFunction:
    """exp(-T H_FD) f through the eigenpairs of the finite-difference Hamiltonian."""
    from .spectral import fd_hamiltonian

    if f.grid != grid:
        raise DimensionError(f"function grid {f.grid.describe()} != {grid.describe()}")
    if T < 0:
        raise DomainError(f"evolution time must be non-negative, got {T}")
    if T == 0:
        return f
    hamiltonian = fd_hamiltonian(grid, model.potential(grid.nodes), mass=model.mass)
    energies, states = hamiltonian.eigensystem()
    coefficients = states.T @ f.values
    return GridFunction(grid, states @ (np.exp(-T * energies) * coefficients))


def trapezoid_integral(f: GridFunction):
    return f.grid.spacing * np.dot(f.grid.weights, f.values)


def l2_distance(f: GridFunction, g: GridFunction) -> float:
    if f.grid != g.grid:
        raise DimensionError("L2 distance between functions on different grids")
    diff = np.abs(f.values - g.values) ** 2
    return math.sqrt(f.grid.spacing * np.dot(f.grid.weights, diff))


def distribution_moments(f: GridFunction) -> tuple[float, float, float]:
    """(total mass, mean, variance) of a non-negative grid function."""
    x = f.grid.nodes
    total = float(trapezoid_integral(f))
    mean = float(trapezoid_integral(GridFunction(f.grid, x * f.values))) / total
    second = float(trapezoid_integral(GridFunction(f.grid, (x - mean) ** 2 * f.values))) / total
    return total, mean, second


def _step_count(T: float, eps: float) -> int:
    steps = int(round(T / eps))
    if steps < 1 or abs(steps * eps - T) > 1e-9 * max(T, 1.0):
        raise DomainError(f"time step {eps} does not divide T = {T}")
    return steps


def spreading_law(model: FreeModel, f: GridFunction, T: float, eps: float) -> tuple[float, float]:
    """
    Variance of the sliced free evolution after T, and the diffusive law
    sigma0^2 + T / m it should follow.
    """
    if not isinstance(model, FreeModel):
        raise DomainError("the spreading law holds for the free model only")
    kernel = short_time_kernel(model, f.grid, eps)
    _, _, variance = distribution_moments(evolve(kernel, f, _step_count(T, eps)))
    _, _, initial = distribution_moments(f)
    return variance, initial + T / model.mass


@dataclass(frozen=True)
class ConvergenceRow:
    epsilon: float
    l2_error: float
    order_estimate: float


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[ConvergenceRow, ...] = field(default_factory=tuple)

    @property
    def measured_order(self) -> float:
        """Least-squares slope of log(error) against log(epsilon)."""
        usable = [r for r in self.rows if r.l2_error > 0]
        if len(usable) < 2:
            return float("nan")
        slope, _ = np.polyfit(
            np.log([r.epsilon for r in usable]), np.log([r.l2_error for r in usable]), 1
        )
        return float(slope)


def convergence_study(model, grid: Grid1D, f: GridFunction, T: float, eps_list) -> ConvergenceTable:
    eps_values = sorted((float(e) for e in eps_list), reverse=True)
    if not eps_values:
        raise DomainError("convergence study needs at least one time step")
    reference = oracle_evolution(model, grid, f, T)

    rows = []
    for eps in eps_values:
        steps = _step_count(T, eps)
        approx = evolve(short_time_kernel(model, grid, eps), f, steps)
        error = l2_distance(approx, reference)
        if rows and rows[-1].l2_error > 0 and error > 0:
            order = math.log(rows[-1].l2_error / error) / math.log(rows[-1].epsilon / eps)
        else:
            order = float("nan")
        logger.debug("eps=%g steps=%d error=%.3e", eps, steps, error)
        rows.append(ConvergenceRow(eps, error, order))
    return ConvergenceTable(tuple(rows))
