import math

import numpy as np
import pytest

from quantization import spectral
from quantization.errors import DomainError, NumericalError
from quantization.propagator import Grid1D
from quantization.spectral import (
    fd_hamiltonian,
    grid_refinement_study,
    kaluza_klein_curvature,
    kg_oscillator_spectrum,
    kk_oscillator_spectrum,
    nonrel_limit_report,
    oscillator_grid,
    quadratic_residual,
    relativistic_oracle,
    schrodinger_spectrum,
)

WIDE = Grid1D(-10.0, 10.0, 2001)


def test_schrodinger_levels_at_unit_coupling():
    spectrum = schrodinger_spectrum(1.0, WIDE, 5)
    np.testing.assert_allclose(spectrum.eigenvalues, [0.5, 1.5, 2.5, 3.5, 4.5], atol=1e-3)
    assert list(spectrum.eigenvalues) == sorted(spectrum.eigenvalues)
    assert spectrum.rows()[2] == (2, spectrum.eigenvalues[2], "schrodinger", 1.0)


def test_schrodinger_spacing_scales_with_sqrt_eta():
    levels = schrodinger_spectrum(4.0, WIDE, 4).eigenvalues
    np.testing.assert_allclose(np.diff(levels), 2.0, atol=1e-3)


def test_schrodinger_states_alternate_parity():
    spectrum = schrodinger_spectrum(1.0, Grid1D(-8.0, 8.0, 401), 3)
    for n in range(3):
        psi = spectrum.states[:, n]
        np.testing.assert_allclose(psi[::-1], (-1) ** n * psi, atol=1e-8)


def test_schrodinger_preconditions():
    with pytest.raises(DomainError):
        schrodinger_spectrum(0.0, WIDE, 3)
    with pytest.raises(DomainError):
        schrodinger_spectrum(1.0, Grid1D(-1.0, 1.0, 11), 12)
    with pytest.raises(DomainError):
        schrodinger_spectrum(1.0, Grid1D(-1.0, 1.0, 11), 0)


def test_hamiltonian_structure():
    grid = Grid1D(-1.0, 1.0, 11)
    hamiltonian = fd_hamiltonian(grid, np.zeros(11), mass=2.0)
    assert hamiltonian.kinetic_coefficient == pytest.approx(1.0 / (4.0 * 0.2 ** 2))
    dense = hamiltonian.to_dense()
    np.testing.assert_array_equal(dense, dense.T)
    with pytest.raises(DomainError):
        fd_hamiltonian(grid, np.zeros(10))


def test_refinement_is_second_order():
    rows = grid_refinement_study(1.0, [201, 401, 801])
    assert [r.error for r in rows] == sorted((r.error for r in rows), reverse=True)
    for row in rows[1:]:
        assert 1.9 <= row.order_estimate <= 2.1


def test_oscillator_grid_respects_potential_ceiling():
    grid = oscillator_grid(1.0)
    assert grid.x_max == pytest.approx(math.sqrt(1.8))
    assert spectral.oscillator_potential(1.0, grid.nodes).max() <= 0.9 + 1e-12
    assert oscillator_grid(0.0).x_max == 30.0
    assert oscillator_grid(1e-4).x_max == pytest.approx(100.0)
    with pytest.raises(DomainError):
        oscillator_grid(-1.0)


def test_free_kg_rest_energy_and_mirrored_branch():
    grid = Grid1D(-30.0, 30.0, 301)
    positive = kg_oscillator_spectrum(0.0, grid, 3)
    negative = kg_oscillator_spectrum(0.0, grid, 3, branch="negative")
    assert positive.eigenvalues[0] == pytest.approx(1.0, abs=1e-2)
    np.testing.assert_allclose(sorted(-e for e in negative.eigenvalues), positive.eigenvalues, atol=1e-8)
    assert negative.branch == "negative"


def test_kg_eigenpairs_satisfy_quadratic_problem():
    eta = 0.1
    grid = oscillator_grid(eta, 201)
    spectrum = kg_oscillator_spectrum(eta, grid, 4)
    assert all(r <= spectral.RESIDUAL_TOL for r in spectrum.residuals)
    for n, energy in enumerate(spectrum.eigenvalues):
        psi = spectrum.states[:, n]
        assert np.linalg.norm(psi) == pytest.approx(1.0)
        assert quadratic_residual(energy, psi, eta, grid) <= 1e-8


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_kg_matches_relativistic_estimate_at_small_eta(n):
    eta = 0.01
    grid = oscillator_grid(eta, 401)
    energy = kg_oscillator_spectrum(eta, grid, 4).eigenvalues[n]
    assert energy - 1.0 == pytest.approx(relativistic_oracle(eta, n), rel=0.02)


def test_relativistic_estimate_reduces_to_oscillator_levels():
    eta = 1e-6
    for n in range(4):
        assert relativistic_oracle(eta, n) == pytest.approx((n + 0.5) * math.sqrt(eta), rel=1e-3)


def test_nonrelativistic_deviation_shrinks():
    rows = nonrel_limit_report([1.0, 0.1, 0.01])
    deviations = [row.deviation for row in rows]
    assert deviations == sorted(deviations, reverse=True)
    assert deviations[-1] < 0.1


@pytest.mark.parametrize("etas", [[], [0.1, 0.0], [0.01, 0.1], [0.1, 0.1]])
def test_nonrel_report_preconditions(etas):
    with pytest.raises(DomainError):
        nonrel_limit_report(etas)


def test_curvature_vanishes_at_origin():
    assert kaluza_klein_curvature(0.3, 0.0) == 0.0
    assert kaluza_klein_curvature(1.0, 2.0) == 8.0


def test_kaluza_klein_shift_shrinks_with_eta():
    shifts = []
    for eta in (0.1, 0.05, 0.025):
        grid = oscillator_grid(eta, 301)
        kg = kg_oscillator_spectrum(eta, grid, 1).eigenvalues[0]
        kk = kk_oscillator_spectrum(eta, grid, 1).eigenvalues[0]
        shifts.append(abs(kk - kg))
    assert shifts[0] > shifts[1] > shifts[2]


def test_quadratic_solver_failure_reports_diagnostics(monkeypatch):
    def complex_only(matrix):
        n = matrix.shape[0]
        return np.full(n, 1.0 + 1.0j), np.eye(n, dtype=complex)

    monkeypatch.setattr(spectral, "eig", complex_only)
    with pytest.raises(NumericalError) as excinfo:
        kg_oscillator_spectrum(0.1, Grid1D(-3.0, 3.0, 21), 2)
    assert excinfo.value.diagnostics["found"] == 0
    assert excinfo.value.diagnostics["complex_dropped"] == 42


def test_quadratic_branch_is_validated():
    with pytest.raises(DomainError):
        kg_oscillator_spectrum(0.1, Grid1D(-3.0, 3.0, 21), 2, branch="both")
