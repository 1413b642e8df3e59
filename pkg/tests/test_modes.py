import math
from fractions import Fraction

import numpy as np
import pytest

from quantization.errors import DimensionError, DomainError, StabilityError
from quantization.modes import (
    FieldConfig,
    ModeSet,
    PeriodicGrid,
    VacuumScheme,
    cfl_limit,
    decompose,
    energy_spectrum,
    mode_residual,
    periodicity_residual,
    quantized_mode_scan,
    reconstruct,
    sample_pure_mode,
    scan_modes,
    standing_wave_frequency,
    transverse_projection,
    transversality_residual,
    wave_energy,
    wave_solve,
    write_field_snapshot,
)


def test_grid_geometry():
    grid = PeriodicGrid((16,))
    assert grid.spacing == (2 * math.pi / 16,)
    np.testing.assert_allclose(grid.wavevectors()[:3, 0], [0.0, 1.0, 2.0])
    assert grid.wavevectors()[-1, 0] == pytest.approx(-1.0)
    with pytest.raises(DomainError):
        PeriodicGrid((4, 0))
    with pytest.raises(DimensionError):
        PeriodicGrid(())


def test_constant_field_stays_constant():
    grid = PeriodicGrid((8, 8, 8))
    field = wave_solve(np.full(grid.shape, 2.5), np.zeros(grid.shape), grid, 0.5 * cfl_limit(grid), 20)
    assert np.all(field.frames == 2.5)


def test_standing_wave_follows_discrete_dispersion():
    grid = PeriodicGrid((64,))
    x = grid.axis_nodes(0)
    k = 3
    dt = 0.5 * cfl_limit(grid)
    field = wave_solve(np.sin(k * x), np.zeros(64), grid, dt, 200)
    omega = standing_wave_frequency(k, grid.spacing[0], dt)
    for n in (1, 50, 200):
        np.testing.assert_allclose(field.frames[n, 0], np.cos(omega * n * dt) * np.sin(k * x), atol=1e-10)


def test_cfl_violation_is_refused():
    grid = PeriodicGrid((32,))
    with pytest.raises(StabilityError):
        wave_solve(np.zeros(32), np.zeros(32), grid, 1.01 * cfl_limit(grid), 10)


def test_initial_data_must_fit_grid():
    grid = PeriodicGrid((32,))
    with pytest.raises(DimensionError):
        wave_solve(np.zeros(31), np.zeros(31), grid, 0.1, 1)


def test_energy_is_conserved():
    grid = PeriodicGrid((64,))
    x = grid.axis_nodes(0)
    field = wave_solve(np.sin(x) + 0.5 * np.cos(3 * x), np.cos(2 * x), grid, 0.5 * cfl_limit(grid), 1000)
    energy = wave_energy(field)
    assert np.max(np.abs(energy - energy[0])) / energy[0] < 1e-10


def test_energy_is_conserved_in_three_dimensions():
    grid = PeriodicGrid((8, 8, 8))
    x, y, z = grid.coordinates()
    field = wave_solve(np.sin(x) * np.cos(2 * y), np.sin(z), grid, 0.5 * cfl_limit(grid), 50)
    energy = wave_energy(field)
    np.testing.assert_allclose(energy, energy[0], rtol=1e-10)


def test_decompose_single_mode():
    grid = PeriodicGrid((16,))
    x = grid.axis_nodes(0)
    field = FieldConfig(grid, 0.1, np.sin(x)[None, None, :])
    modes = decompose(field)
    magnitudes = np.abs(modes.coefficients[0, :, 0])
    assert magnitudes[1] == pytest.approx(0.5)
    assert magnitudes[15] == pytest.approx(0.5)
    others = np.delete(magnitudes, [1, 15])
    assert np.all(others < 1e-12)


def test_decomposition_of_zero_field():
    grid = PeriodicGrid((4, 4, 4))
    modes = decompose(FieldConfig(grid, 0.1, np.zeros((2, 4, 4, 4, 4))))
    assert not np.any(modes.coefficients)


def test_real_field_has_conjugate_symmetric_modes():
    grid = PeriodicGrid((16,))
    rng = np.random.default_rng(0)
    modes = decompose(FieldConfig(grid, 0.1, rng.normal(size=(1, 1, 16))))
    a = modes.coefficients[0, :, 0]
    for j in range(1, 16):
        assert a[(16 - j) % 16] == pytest.approx(np.conj(a[j]))


def test_reconstruct_recovers_field():
    grid = PeriodicGrid((6, 5, 4))
    rng = np.random.default_rng(1)
    field = FieldConfig(grid, 0.2, rng.normal(size=(3, 4, 6, 5, 4)))
    restored = reconstruct(decompose(field))
    np.testing.assert_allclose(restored.frames, field.frames, atol=1e-12)


def test_reconstruct_needs_grid():
    with pytest.raises(DomainError):
        reconstruct(sample_pure_mode(1.0, 1.0))


def test_pure_mode_residual_is_second_order():
    coarse = mode_residual(sample_pure_mode(2.0, 1.0, frames_per_period=100))[(2.0,)]
    fine = mode_residual(sample_pure_mode(2.0, 1.0, frames_per_period=200))[(2.0,)]
    assert fine < 1e-3
    assert 3.9 < coarse / fine < 4.1


def test_frozen_mode_fails_wave_equation():
    modes = ModeSet([[2.0]], np.ones((5, 1, 1)), 0.1)
    assert mode_residual(modes)[(2.0,)] == pytest.approx(1.0)
    still = ModeSet([[0.0]], np.ones((5, 1, 1)), 0.1)
    assert mode_residual(still)[(0.0,)] == 0.0


def test_mode_residual_needs_three_frames():
    with pytest.raises(DomainError):
        mode_residual(ModeSet([[1.0]], np.ones((2, 1, 1)), 0.1))


def test_transversality():
    k = [[1.0, 0.0, 0.0]]
    transverse = ModeSet(k, np.array([0, 0, 1, 0], dtype=complex).reshape(1, 1, 4), 0.1)
    longitudinal = ModeSet(k, np.array([0, 1, 0, 0], dtype=complex).reshape(1, 1, 4), 0.1)
    temporal = ModeSet(k, np.array([1, 0, 1, 0], dtype=complex).reshape(1, 1, 4), 0.1)
    assert transversality_residual(transverse)[(1.0, 0.0, 0.0)] == 0.0
    assert transversality_residual(longitudinal)[(1.0, 0.0, 0.0)] == pytest.approx(1.0)
    assert transversality_residual(temporal)[(1.0, 0.0, 0.0)] == pytest.approx(1 / math.sqrt(2))


def test_transverse_projection_removes_longitudinal_part():
    rng = np.random.default_rng(2)
    k = rng.normal(size=(5, 3))
    a = rng.normal(size=(3, 5, 4)) + 1j * rng.normal(size=(3, 5, 4))
    projected = transverse_projection(ModeSet(k, a, 0.1))
    assert max(transversality_residual(projected).values()) < 1e-12


def test_periodicity_of_pure_modes():
    assert periodicity_residual(sample_pure_mode(2.0, 1.0), 1.0) <= 1e-8
    assert periodicity_residual(sample_pure_mode(1.5, 1.0), 1.0) == pytest.approx(2.0)
    assert periodicity_residual(sample_pure_mode(0.0, 1.0), 1.0) == 0.0
    with pytest.raises(DomainError):
        periodicity_residual(sample_pure_mode(1.0, 1.0, periods=0.5), 1.0)


def test_periodicity_of_solver_output():
    grid = PeriodicGrid((64,))
    x = grid.axis_nodes(0)
    dt = 0.5 * cfl_limit(grid)
    omega = standing_wave_frequency(1, grid.spacing[0], dt)
    steps = int(math.ceil(2 * math.pi / omega / dt)) + 1
    field = wave_solve(np.sin(x), np.zeros(64), grid, dt, steps)
    assert periodicity_residual(field, omega) < 1e-2


@pytest.mark.parametrize("omega, k_max, expected", [
    (1.0, 3.2, [0, 1, 2, 3]),
    (2.0, 3.0, [0, 2]),
    (1.0, 5.5, [0, 1, 2, 3, 4, 5]),
    (1.0, -1.0, []),
])
def test_quantized_mode_scan(omega, k_max, expected):
    assert quantized_mode_scan(omega, k_max, 1e-6) == expected


def test_scan_rejects_fractional_wavenumbers():
    rows = scan_modes(1.0, 1.0, 1e-6, resolution=4)
    assert [row.n for row in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert [row.admissible for row in rows] == [True, False, False, False, True]
    assert min(row.residual for row in rows if not row.admissible) >= 2 * math.sin(math.pi / 4) - 1e-12


def test_energy_spectrum_schemes():
    present = energy_spectrum("present", 2.0, 10)
    standard = energy_spectrum(VacuumScheme.STANDARD, 2.0, 10)
    assert present.levels[0] == 0.0
    assert standard.levels[0] == 1.0
    assert present.levels[3] == 6.0
    assert standard.levels[3] == 7.0
    for n in range(10):
        assert present.levels[n + 1] - present.levels[n] == 2.0
        assert standard.levels[n] - present.levels[n] == 1.0
    assert present.level(-3) == -present.level(3)
    with pytest.raises(DomainError):
        standard.level(-1)
    with pytest.raises(DomainError):
        energy_spectrum("present", 1.0, -1)


@pytest.mark.parametrize("omega", [0.1, 0.3, 0.7, Fraction(1, 10)])
def test_level_spacing_and_vacuum_offset_are_exact(omega):
    present = energy_spectrum("present", omega, 10)
    standard = energy_spectrum("standard", omega, 10)
    assert standard.levels[0] == Fraction(omega) / 2
    for n in range(10):
        assert present.levels[n + 1] - present.levels[n] == omega
        assert standard.levels[n + 1] - standard.levels[n] == omega
        assert standard.levels[n] - present.levels[n] == Fraction(omega) / 2
    assert all(isinstance(e, Fraction) for e in standard.levels.values())


def test_field_snapshot(tmp_path):
    grid = PeriodicGrid((4, 2, 1))
    field = FieldConfig(grid, 0.1, np.zeros((2, 4, 4, 2, 1)))
    target = tmp_path / "field.txt"
    write_field_snapshot(field, -1, target)
    lines = target.read_text().splitlines()
    assert lines[0] == "# t=0.1 grid=4x2x1"
    assert len(lines) == 1 + 8
    assert len(lines[1].split()) == 3 + 4
