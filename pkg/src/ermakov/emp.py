"""Ermakov-Milne-Pinney amplitudes.

An EMP amplitude solves ``rho'' + (E - V) rho = rho**-3`` (the constant on
the right is fixed to 1 throughout).  Amplitudes are built from a pair of
linear solutions, integrated directly, or produced by the transforms in
:mod:`ermakov.darboux`; any of them generates linear solutions in
amplitude-phase form ``psi = alpha rho sin(int rho**-2 + beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BlowUp, ConstraintViolation, NonPositiveRho
from .grid import Grid, cumulative_from, derivative
from .potentials import Potential
from .schrodinger import SolutionPair, Wavefunction, _integrate_outward

CONSTRAINT_RTOL = 1e-10


@dataclass(frozen=True)
class EmpCoefficients:
    """Coefficients of ``rho**2 = A psi1**2 + B psi2**2 + 2 C psi1 psi2``."""

    A: float
    B: float
    C: float

    @property
    def determinant(self) -> float:
        return self.A * self.B - self.C**2

    @classmethod
    def normalized(cls, A: float, B: float, C: float, wronskian: float) -> "EmpCoefficients":
        """Rescale a positive-definite ``(A, B, C)`` so that
        ``AB - C**2 == 1 / wronskian**2``."""
        det = A * B - C**2
        if det <= 0 or A <= 0:
            raise ConstraintViolation("(A, B, C) must be positive definite")
        s = 1.0 / (abs(wronskian) * np.sqrt(det))
        return cls(A * s, B * s, C * s)

    def check(self, wronskian: float, rtol: float = CONSTRAINT_RTOL) -> None:
        target = 1.0 / wronskian**2
        if self.A <= 0 or abs(self.determinant - target) > rtol * target:
            raise ConstraintViolation(
                f"AB - C^2 = {self.determinant:.17g}, need 1/Lambda^2 = {target:.17g}"
            )


@dataclass(frozen=True)
class EmpSolution:
    """Sampled EMP amplitude.

    ``rho_double_prime`` holds an analytic second derivative when the
    construction provides one; otherwise residuals difference ``rho_prime``.
    """

    grid: Grid
    rho: np.ndarray
    rho_prime: np.ndarray
    energy: float
    potential_label: str = ""
    coefficients: Optional[EmpCoefficients] = None
    rho_double_prime: Optional[np.ndarray] = None

    # the constant on the right of the EMP equation
    a = 1.0

    def __post_init__(self):
        if not np.all(self.rho > 0):
            raise NonPositiveRho("rho must be positive on every grid node")

    def second_derivative(self) -> np.ndarray:
        if self.rho_double_prime is not None:
            return self.rho_double_prime
        return derivative(self.rho_prime, self.grid.spacing)

    def with_label(self, label: str) -> "EmpSolution":
        return EmpSolution(self.grid, self.rho, self.rho_prime, self.energy, label,
                           self.coefficients, self.rho_double_prime)


@dataclass(frozen=True)
class AmplitudePhaseParams:
    alpha: float = 1.0
    beta: float = 0.0
    x0: Optional[float] = None  # defaults to the grid centre


def emp_from_pair(pair: SolutionPair, coeff: EmpCoefficients, *, rtol: float = CONSTRAINT_RTOL) -> EmpSolution:
    """General EMP amplitude ``rho = sqrt(A psi1**2 + B psi2**2 + 2C psi1 psi2)``.

    The coefficients must satisfy ``AB - C**2 = 1/Lambda**2`` with
    ``Lambda`` the pair's Wronskian.  ``rho''`` is evaluated analytically
    using the pair's own potential.
    """
    coeff.check(pair.wronskian, rtol)
    A, B, C = coeff.A, coeff.B, coeff.C
    p1, d1, p2, d2 = pair.psi1, pair.psi1_prime, pair.psi2, pair.psi2_prime
    rho2 = A * p1**2 + B * p2**2 + 2 * C * p1 * p2
    if not np.all(rho2 > 0):
        raise NonPositiveRho("rho**2 <= 0 despite a valid constraint; the pair is not independent")
    rho = np.sqrt(rho2)
    half_drho2 = A * p1 * d1 + B * p2 * d2 + C * (d1 * p2 + p1 * d2)
    drho = half_drho2 / rho
    vme = pair.grid.sample(pair.potential) - pair.energy
    half_d2rho2 = A * d1**2 + B * d2**2 + 2 * C * d1 * d2 + vme * rho2
    d2rho = (half_d2rho2 - drho**2) / rho
    return EmpSolution(pair.grid, rho, drho, pair.energy, pair.potential_label, coeff, d2rho)


def emp_residual_profile(rho: EmpSolution, v: Potential, *, relative: bool = True) -> np.ndarray:
    """Pointwise ``rho'' + (E - V) rho - rho**-3``.

    With ``relative`` each point is divided by the largest of ``1`` and the
    magnitudes of the three terms, which keeps the measure meaningful where
    a singular potential makes the terms individually huge.
    """
    emv = rho.energy - rho.grid.sample(v)
    d2 = rho.second_derivative()
    t1, t2, t3 = d2, emv * rho.rho, rho.rho**-3.0
    res = t1 + t2 - t3
    if relative:
        res = res / np.maximum.reduce([np.ones_like(res), np.abs(t1), np.abs(t2), np.abs(t3)])
    return res


def emp_residual(rho: EmpSolution, v: Potential, *, relative: bool = True) -> float:
    """Largest EMP residual over the grid (finite-difference based
    amplitudes skip the two outermost nodes at each end)."""
    res = np.abs(emp_residual_profile(rho, v, relative=relative))
    if rho.rho_double_prime is None:
        res = res[2:-2]
    return float(np.max(res))


def integrate_emp(v: Potential, energy: float, grid: Grid, rho0: float, rho0_prime: float = 0.0,
                  *, rtol: float = 1e-10, atol: float = 1e-10, rho_floor: float = 1e-8) -> EmpSolution:
    """Integrate ``rho'' = (V - E) rho + rho**-3`` outward from the centre.

    Raises BlowUp if ``rho`` falls to ``rho_floor``.
    """
    if rho0 <= 0:
        raise ValueError("rho0 must be positive")

    def rhs(x, y):
        return [y[1], (v(x) - energy) * y[0] + y[0] ** -3]

    def collapse(x, y):
        return y[0] - rho_floor

    collapse.terminal = True
    collapse.direction = -1
    ys = _integrate_outward(rhs, grid, [rho0, rho0_prime], rtol, atol,
                            events=collapse, event_error=BlowUp)
    return EmpSolution(grid, ys[0], ys[1], float(energy), v.label)


def amplitude_phase_wavefunction(rho: EmpSolution, params: AmplitudePhaseParams = AmplitudePhaseParams()) -> Wavefunction:
    """``psi = alpha rho sin(phase + beta)``, ``phase' = rho**-2``, ``phase(x0) = 0``."""
    grid = rho.grid
    x0 = grid.midpoint if params.x0 is None else params.x0
    if not grid.interval.contains(x0):
        raise ValueError(f"x0 = {x0} is outside the grid")
    phase = cumulative_from(rho.rho**-2.0, grid.x, x0) + params.beta
    s, c = np.sin(phase), np.cos(phase)
    psi = params.alpha * rho.rho * s
    dpsi = params.alpha * (rho.rho_prime * s + c / rho.rho)
    # the cos terms cancel: psi'' = alpha (rho'' - rho**-3) sin(phase)
    d2psi = params.alpha * (rho.second_derivative() - rho.rho**-3.0) * s
    return Wavefunction(grid, psi, dpsi, rho.energy, d2psi, rho.potential_label)


def phase(rho: EmpSolution, x0: Optional[float] = None) -> np.ndarray:
    x0 = rho.grid.midpoint if x0 is None else x0
    return cumulative_from(rho.rho**-2.0, rho.grid.x, x0)
