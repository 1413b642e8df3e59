"""
Finite-difference eigenproblems for the one-dimensional oscillators.

Three schemes share one 3-point stencil with Dirichlet walls just outside
the grid:

    schrodinger  1/2 (-d^2/dq^2 + eta q^2) psi = E psi
    kg           [(E - W)^2 + d^2/dq^2] psi = psi,          W = eta q^2 / 2
    kk           [(E - W)^2 + d^2/dq^2] psi = (1 - R/3) psi, R = (eta q^2)^2 / 2

The relativistic schemes are quadratic in E. They are solved by companion
linearization on (psi, E psi) with a general eigensolver; complex pairs are
dropped and every kept eigenpair is checked against the quadratic residual.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig, eigh_tridiagonal

from .errors import DomainError, NumericalError
from .propagator import Grid1D

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8

# vector potential bound for oscillator_grid; at W >= 1 the Dirichlet box
# picks up states from the pair-creation region
_POTENTIAL_CEILING = 0.9


@dataclass(frozen=True, eq=False)
class Hamiltonian1D:
    """Symmetric tridiagonal -1/(2m) D2 + V."""

    grid: Grid1D
    potential: np.ndarray
    mass: float = 1.0

    @property
    def kinetic_coefficient(self) -> float:
        return 1.0 / (2.0 * self.mass * self.grid.spacing ** 2)

    @property
    def diagonal(self) -> np.ndarray:
        return 2.0 * self.kinetic_coefficient + np.asarray(self.potential, dtype=float)

    @property
    def off_diagonal(self) -> np.ndarray:
        return np.full(self.grid.points - 1, -self.kinetic_coefficient)

    def to_dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )

    def eigensystem(self, count: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        if count is None:
            return eigh_tridiagonal(self.diagonal, self.off_diagonal)
        return eigh_tridiagonal(
            self.diagonal, self.off_diagonal, select="i", select_range=(0, count - 1)
        )


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: tuple[float, ...]
    scheme: str
    eta: float
    grid: Grid1D
    states: np.ndarray | None = None
    residuals: tuple[float, ...] = ()
    branch: str = "positive"

    def __len__(self):
        return len(self.eigenvalues)

    def rows(self) -> list[tuple]:
        return [(n, e, self.scheme, self.eta) for n, e in enumerate(self.eigenvalues)]


def fd_hamiltonian(grid: Grid1D, potential, mass: float = 1.0) -> Hamiltonian1D:
    potential = np.asarray(potential, dtype=float)
    if potential.shape != (grid.points,):
        raise DomainError(f"potential has shape {potential.shape}, grid has {grid.points} points")
    return Hamiltonian1D(grid=grid, potential=potential, mass=mass)


def second_difference(grid: Grid1D) -> np.ndarray:
    n, h2 = grid.points, grid.spacing ** 2
    return (np.diag(np.full(n, -2.0)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)) / h2


def oscillator_potential(eta: float, q) -> np.ndarray:
    return 0.5 * eta * np.asarray(q, dtype=float) ** 2


def kaluza_klein_curvature(eta: float, q) -> np.ndarray:
    """R(q) = (eta q^2)^2 / 2, taken as given."""
    return 0.5 * (eta * np.asarray(q, dtype=float) ** 2) ** 2


def oscillator_grid(eta: float, points: int = 301) -> Grid1D:
    """
    Symmetric grid holding the low oscillator levels: ten oscillator lengths
    wide, but cut where the vector potential reaches the ceiling.
    """
    if eta < 0:
        raise DomainError(f"eta must be non-negative, got {eta}")
    if eta == 0:
        half = 30.0
    else:
        half = min(10.0 * eta ** -0.25, math.sqrt(2.0 * _POTENTIAL_CEILING / eta))
    return Grid1D(-half, half, points)


def _check_count(count: int, grid: Grid1D):
    if count < 1 or count > grid.points:
        raise DomainError(f"count must lie in [1, {grid.points}], got {count}")


def schrodinger_spectrum(eta: float, grid: Grid1D, count: int) -> Spectrum:
    if not eta > 0:
        raise DomainError(f"eta must be positive, got {eta}")
    _check_count(count, grid)
    hamiltonian = fd_hamiltonian(grid, oscillator_potential(eta, grid.nodes))
    energies, states = hamiltonian.eigensystem(count)
    logger.debug("schrodinger eta=%g grid=%s: %d levels", eta, grid.describe(), count)
    return Spectrum(tuple(float(e) for e in energies), "schrodinger", eta, grid, states=states)


def _quadratic_spectrum(eta, grid, count, curvature, scheme, branch) -> Spectrum:
    if eta < 0:
        raise DomainError(f"eta must be non-negative, got {eta}")
    if branch not in ("positive", "negative"):
        raise DomainError(f"branch must be 'positive' or 'negative', got {branch!r}")
    _check_count(count, grid)

    q = grid.nodes
    w = oscillator_potential(eta, q)
    if w.max() >= 1.0:
        logger.warning(
            "grid %s reaches W = %.3g >= 1; the box may hold pair-creation states",
            grid.describe(), w.max(),
        )
    n = grid.points
    # (E^2 + E C + K) psi = 0
    c = np.diag(-2.0 * w)
    k = second_difference(grid) + np.diag(w ** 2 + curvature - 1.0)
    companion = np.block([[np.zeros((n, n)), np.eye(n)], [-k, -c]])
    values, vectors = eig(companion)

    real = np.abs(values.imag) <= 1e-9 * np.maximum(1.0, np.abs(values.real))
    if branch == "positive":
        keep = np.nonzero(real & (values.real > 0))[0]
        keep = keep[np.argsort(values.real[keep])][:count]
    else:
        keep = np.nonzero(real & (values.real < 0))[0]
        keep = keep[np.argsort(-values.real[keep])][:count]
    keep = keep[np.argsort(values.real[keep])]

    energies, states, residuals = [], [], []
    for i in keep:
        energy = float(values.real[i])
        psi = vectors[:n, i]
        psi = psi / (psi[np.argmax(np.abs(psi))] / np.abs(psi).max())
        psi = psi.real / np.linalg.norm(psi.real)
        residual = np.linalg.norm(energy ** 2 * psi + energy * (c @ psi) + k @ psi)
        energies.append(energy)
        states.append(psi)
        residuals.append(float(residual))

    diagnostics = {
        "scheme": scheme,
        "requested": count,
        "found": len(energies),
        "complex_dropped": int(np.count_nonzero(~real)),
        "max_residual": f"{max(residuals, default=0.0):.3e}",
    }
    if len(energies) < count or any(r > RESIDUAL_TOL for r in residuals):
        raise NumericalError("quadratic eigenproblem did not yield enough valid eigenpairs", diagnostics)
    if diagnostics["complex_dropped"]:
        logger.debug("dropped %d complex eigenvalues", diagnostics["complex_dropped"])

    return Spectrum(
        tuple(energies), scheme, eta, grid,
        states=np.column_stack(states), residuals=tuple(residuals), branch=branch,
    )


def kg_oscillator_spectrum(eta: float, grid: Grid1D, count: int, branch: str = "positive") -> Spectrum:
    """Stationary states of [(i d/dt - W)^2 + d^2/dq^2] u = u at unit mass."""
    return _quadratic_spectrum(eta, grid, count, 0.0, "kg", branch)


def kk_oscillator_spectrum(eta: float, grid: Grid1D, count: int, branch: str = "positive") -> Spectrum:
    """As kg_oscillator_spectrum with the right-hand side 1 - R(q)/3."""
    curvature = kaluza_klein_curvature(eta, grid.nodes) / 3.0
    return _quadratic_spectrum(eta, grid, count, curvature, "kk", branch)


def quadratic_residual(energy: float, psi: np.ndarray, eta: float, grid: Grid1D, scheme: str = "kg") -> float:
    """||[(E - W)^2 + D2 - (1 - R/3)] psi|| / ||psi||, R present only for kk."""
    w = oscillator_potential(eta, grid.nodes)
    rhs = np.ones(grid.points)
    if scheme == "kk":
        rhs = rhs - kaluza_klein_curvature(eta, grid.nodes) / 3.0
    applied = (energy - w) ** 2 * psi + second_difference(grid) @ psi - rhs * psi
    return float(np.linalg.norm(applied) / np.linalg.norm(psi))


def relativistic_oracle(eta: float, n: int) -> float:
    """
    Analytic estimate of E_n - 1 for the kg oscillator at small eta.

    (n + 1/2) w minus the quantum p^4/8 correction, plus the next term of
    the semiclassical quantization of p = sqrt((1 + e - W)^2 - 1).
    """
    omega = math.sqrt(eta)
    e0 = (n + 0.5) * omega
    return e0 - 3.0 / 32.0 * eta * (2 * n * n + 2 * n + 1) + 23.0 / 256.0 * e0 ** 3


@dataclass(frozen=True)
class LimitRow:
    eta: float
    deviation: float


def nonrel_limit_report(eta_list, points: int = 301, levels: int = 4) -> list[LimitRow]:
    """
    Relative distance between kg levels (minus rest energy) and Schrodinger
    levels on a shared grid, maximized over the lowest `levels` states.
    """
    etas = [float(e) for e in eta_list]
    if not etas:
        raise DomainError("limit report needs at least one eta")
    if any(e <= 0 for e in etas):
        raise DomainError(f"eta values must be positive, got {etas}")
    if any(a <= b for a, b in zip(etas, etas[1:])):
        raise DomainError(f"eta values must be strictly descending, got {etas}")

    rows = []
    for eta in etas:
        grid = oscillator_grid(eta, points)
        relativistic = kg_oscillator_spectrum(eta, grid, levels)
        classical = schrodinger_spectrum(eta, grid, levels)
        deviation = max(
            abs(e_kg - 1.0 - e_s) / e_s
            for e_kg, e_s in zip(relativistic.eigenvalues, classical.eigenvalues)
        )
        rows.append(LimitRow(eta, deviation))
    return rows


@dataclass(frozen=True)
class RefinementRow:
    spacing: float
    error: float
    order_estimate: float


def grid_refinement_study(eta: float, points_list, half_width: float = 10.0) -> list[RefinementRow]:
    """Ground-state error against (1/2) sqrt(eta) as the grid is refined."""
    if not points_list:
        raise DomainError("refinement study needs at least one grid")
    exact = 0.5 * math.sqrt(eta)
    rows = []
    for points in sorted(points_list):
        grid = Grid1D(-half_width, half_width, points)
        error = abs(schrodinger_spectrum(eta, grid, 1).eigenvalues[0] - exact)
        if rows and error > 0 and rows[-1].error > 0:
            order = math.log(rows[-1].error / error) / math.log(rows[-1].spacing / grid.spacing)
        else:
            order = float("nan")
        rows.append(RefinementRow(grid.spacing, error, order))
    return rows
