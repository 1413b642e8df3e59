"""
Harmonic reduction of the proper-time evolution to Klein-Gordon ladders.

Two conventions are carried side by side and never mixed:

    eq5   harmonics exp(-i m (n + 1/2) tau), effective mass^2 (2n + 1) m^2
    eq12  harmonics exp(+i n m tau),         effective mass^2 (n m)^2

All residuals are plane-wave substitutions, so they are exact algebra.
Integer and `fractions.Fraction` inputs stay exact throughout.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DimensionError, DomainError
from .geometry import Metric, interval, minkowski_metric

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class Convention(str, Enum):
    EQ5 = "eq5"
    EQ12 = "eq12"


@dataclass(frozen=True)
class HarmonicMode:
    n: int
    m: float | Fraction
    convention: Convention = Convention.EQ5

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"base mass must be positive, got {self.m}")
        object.__setattr__(self, "convention", Convention(self.convention))

    @property
    def label(self) -> str:
        if self.convention is Convention.EQ5 and self.n < 0:
            return "eq5-extrapolated"
        return self.convention.value


@dataclass(frozen=True)
class PlaneWave:
    p: tuple
    amplitude: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))


@dataclass(frozen=True)
class MassLadder:
    base: float | Fraction
    multiples: tuple[int, ...]
    fractions: tuple[int, ...]

    @property
    def masses(self) -> list:
        found = {n * self.base for n in self.multiples}
        found.update(self.base / d for d in self.fractions)
        return sorted(found)

    def multiple_period(self, n: int) -> float:
        return TWO_PI / (n * self.base)

    def fraction_period(self, d: int) -> float:
        return d * TWO_PI / self.base


def effective_mass_squared(mode: HarmonicMode):
    if mode.convention is Convention.EQ5:
        return (2 * mode.n + 1) * mode.m * mode.m
    return (mode.n * mode.m) ** 2


def ladder_discrepancy(m, n: int):
    """(2n + 1) m^2 - (n m)^2; nonzero for every n >= 2."""
    return effective_mass_squared(HarmonicMode(n, m, Convention.EQ5)) - effective_mass_squared(
        HarmonicMode(n, m, Convention.EQ12)
    )


def _require_flat(g: Metric, wave: PlaneWave):
    if len(wave.p) != g.dim:
        raise DimensionError(f"momentum with {len(wave.p)} components for metric of dim {g.dim}")


def kg_residual(wave: PlaneWave, mass, g: Metric, curvature=0):
    """|-p.p + mass^2 + R/3| for exp(i p.x) in [d.d + mass^2 + R/3] psi = 0."""
    _require_flat(g, wave)
    return abs(-interval(g, wave.p) + mass * mass + curvature / 3)


def stuckelberg_residual(mode: HarmonicMode, wave: PlaneWave, g: Metric, curvature=0):
    """
    Residual of exp(i p.x) times the mode's tau harmonic.

    eq5: [d.d + R/3] chi = -2im d chi/dtau with d/dtau -> -i m (n + 1/2),
    so the right side contributes -(2n + 1) m^2.
    eq12: [d.d - d^2/dtau^2 + R/3] psi = 0 with d^2/dtau^2 -> -(n m)^2.
    """
    _require_flat(g, wave)
    box = -interval(g, wave.p) + curvature / 3
    if mode.convention is Convention.EQ5:
        # -2im * (-i m (n + 1/2)) = -(2n + 1) m^2
        rhs = -(2 * mode.n + 1) * mode.m * mode.m
        return abs(box - rhs)
    tau_second = -((mode.n * mode.m) ** 2)
    return abs(box - tau_second)


def _light_cone_momentum(mass_squared, scale, dim: int) -> tuple:
    """((M^2/s + s)/2, (M^2/s - s)/2, 0, ...): p.p = M^2 exactly for rational inputs."""
    return ((mass_squared / scale + scale) / 2, (mass_squared / scale - scale) / 2) + (0,) * (dim - 2)


def on_shell_wave(mode: HarmonicMode, dim: int = 4) -> PlaneWave:
    """
    eq5: p = ((n + 1) m, n m, 0, ...) so p.p = (2n + 1) m^2.
    eq12: rest frame (|n| m, 0, ...), or the null (m, m, 0, ...) for n = 0.
    """
    if dim < 2:
        raise DimensionError(f"plane waves need N >= 2, got {dim}")
    zeros = (0,) * (dim - 2)
    m, n = mode.m, mode.n
    if mode.convention is Convention.EQ5:
        return PlaneWave(((n + 1) * m, n * m) + zeros)
    if n == 0:
        return PlaneWave((m, m) + zeros)
    return PlaneWave((abs(n) * m, 0 * m) + zeros)


def boost_1p1(p: tuple, gamma, gamma_beta) -> tuple:
    """Boost along x^1 with (gamma, gamma*beta); exact for rational pairs like (5/4, 3/4)."""
    check = gamma * gamma - gamma_beta * gamma_beta
    if isinstance(check, (int, Fraction)):
        valid = check == 1
    else:
        valid = math.isclose(check, 1.0, rel_tol=1e-12)
    if not valid or gamma < 1:
        raise DomainError(f"gamma^2 - (gamma beta)^2 must equal 1 with gamma >= 1, got {check}")
    if len(p) < 2:
        raise DimensionError("boost needs a time and an x^1 component")
    p0, p1 = p[0], p[1]
    return (gamma * p0 - gamma_beta * p1, -gamma_beta * p0 + gamma * p1) + tuple(p[2:])


def mass_ladder(m, n_max: int, d_max: int) -> MassLadder:
    if not m > 0:
        raise DomainError(f"base mass must be positive, got {m}")
    if n_max < 1 or d_max < 1:
        raise DomainError(f"n_max and d_max must be at least 1, got {n_max}, {d_max}")
    return MassLadder(m, tuple(range(1, n_max + 1)), tuple(range(1, d_max + 1)))


def tau_independence_residual(harmonics: dict, m) -> float:
    """
    RMS of d chi/dtau over one period for chi = sum_n a_n exp(i n m tau):
    sqrt(sum (n m)^2 |a_n|^2). Zero only when just the n = 0 harmonic is present.
    """
    return math.sqrt(math.fsum(float((n * m) ** 2) * abs(a) ** 2 for n, a in harmonics.items()))


@dataclass(frozen=True)
class EquivalenceReport:
    m: float
    algebraic: dict = field(default_factory=dict)
    periodicity: float = 0.0
    recovered: dict = field(default_factory=dict)
    coefficient_error: float = 0.0

    @property
    def algebraic_passed(self) -> bool:
        return all(r == 0 for r in self.algebraic.values())

    @property
    def periodic_passed(self) -> bool:
        return self.periodicity <= 1e-12

    @property
    def recovered_passed(self) -> bool:
        return all(r == 0 for r in self.recovered.values()) and self.coefficient_error <= 1e-12

    @property
    def passed(self) -> bool:
        return self.algebraic_passed and self.periodic_passed and self.recovered_passed


def _default_coefficient(n: int) -> complex:
    return complex(1.0 / (1 + abs(n)), 0.25 * n)


def equivalence_check(m, n_range: int | Iterable[int], g: Metric | None = None,
                      off_shell: dict | None = None) -> EquivalenceReport:
    """
    psi(x, tau) = sum_n c_n exp(i p_n.x) exp(i n m tau) with p_n on shell for
    mass |n| m; `off_shell` maps n to a mass^2 offset in units of m^2.

    Checks (a) each term against the eq12 operator, (b) whole phase turns over
    tau = 2 pi / m, and (c) that an FFT in tau at x = 0 recovers every c_n
    whose momentum satisfies the Klein-Gordon equation with mass n m.
    """
    if not m > 0:
        raise DomainError(f"base mass must be positive, got {m}")
    g = g or minkowski_metric(4)
    if g.diag[0] != 1 or any(s != -1 for s in g.diag[1:]):
        raise DimensionError(f"equivalence check needs a flat Minkowski metric, got {g.diag}")
    values = range(-n_range, n_range + 1) if isinstance(n_range, int) else sorted(set(n_range))
    if not values:
        raise DomainError("empty harmonic range")
    off_shell = off_shell or {}

    waves = {}
    for n in values:
        mode = HarmonicMode(n, m, Convention.EQ12)
        if n in off_shell:
            target = (n * n + off_shell[n]) * m * m
            waves[n] = PlaneWave(_light_cone_momentum(target, m, g.dim), _default_coefficient(n))
        else:
            p = on_shell_wave(mode, g.dim).p
            waves[n] = PlaneWave(p, _default_coefficient(n))

    algebraic = {n: stuckelberg_residual(HarmonicMode(n, m, Convention.EQ12), w, g) for n, w in waves.items()}

    period = TWO_PI / m
    turns = [n * m * period / TWO_PI for n in values]
    periodicity = max(abs(t - round(t)) for t in turns)

    samples = 2 * max(abs(n) for n in values) + 2
    tau = np.arange(samples) * (period / samples)
    psi = np.zeros(samples, dtype=complex)
    for n, w in waves.items():
        psi += w.amplitude * np.exp(1j * n * float(m) * tau)
    spectrum = np.fft.fft(psi) / samples
    coefficient_error = max(abs(spectrum[n % samples] - w.amplitude) for n, w in waves.items())
    recovered = {n: kg_residual(w, abs(n) * m, g) for n, w in waves.items()}

    logger.debug("equivalence check m=%s over n=%s", m, list(values))
    return EquivalenceReport(float(m), algebraic, float(periodicity), recovered, float(coefficient_error))


@dataclass(frozen=True)
class LadderRow:
    convention: str
    n: int
    m: float
    effective_mass_squared: float
    residual: float


def ladder_rows(m, n_max: int, convention: Convention | str, n_min: int = 0) -> list[LadderRow]:
    if n_max < n_min:
        raise DomainError(f"n_max {n_max} is below n_min {n_min}")
    g = minkowski_metric(4)
    rows = []
    for n in range(n_min, n_max + 1):
        mode = HarmonicMode(n, m, convention)
        residual = stuckelberg_residual(mode, on_shell_wave(mode), g)
        rows.append(LadderRow(mode.label, n, m, effective_mass_squared(mode), residual))
    return rows
