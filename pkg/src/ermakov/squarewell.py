"""Closed forms for the infinite square well ``V = -1`` on ``|x| < pi/2``.

The well is generated by ``W = tan x``; its partner is
``V~ = -1 + 2 sec**2 x``.  With ``k**2 = E + 1`` (integer ``k`` puts ``E``
on the spectrum ``n (n + 2)``, ``n = k - 1``):

* ``rho**2 = 1/k`` solves the well's EMP equation,
* ``rho~**2 = gamma (k**2 + tan**2 x)`` with ``gamma = 1/(k E)`` solves the
  partner's,
* the Ermakov-Lewis invariant of any ``psi`` with ``rho**2 = 1/k`` is
  ``I = (k psi(0)**2 + psi'(0)**2 / k) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .emp import EmpCoefficients, EmpSolution
from .errors import InvalidK
from .grid import Grid, Interval
from .potentials import Potential, Superpotential, constant_potential

HALF_PI = 0.5 * np.pi
DEFAULT_MARGIN = 1e-4


def well_interval(margin: float = DEFAULT_MARGIN) -> Interval:
    return Interval(-HALF_PI, HALF_PI, margin)


def default_grid(n_points: int = 4001, margin: float = DEFAULT_MARGIN) -> Grid:
    return Grid(well_interval(margin), n_points)


def superpotential(margin: float = DEFAULT_MARGIN) -> Superpotential:
    return Superpotential(np.tan, lambda x: 1.0 / np.cos(x) ** 2, well_interval(margin), "tan x")


def potential(margin: float = 0.0) -> Potential:
    """The well itself; its walls are the interval ends, so no margin is needed."""
    return constant_potential(-1.0, well_interval(margin), "V")


def partner_potential(margin: float = DEFAULT_MARGIN) -> Potential:
    return Potential(lambda x: -1.0 + 2.0 / np.cos(x) ** 2, well_interval(margin), "V~")


def level(n: int) -> float:
    return float(n * (n + 2))


@dataclass(frozen=True)
class SquareWellCase:
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidK(f"k must be an integer >= 1, got {self.k!r}")

    @property
    def E(self) -> float:
        return float(self.k**2 - 1)

    @property
    def gamma(self) -> float:
        if self.k < 2:
            raise InvalidK("gamma = 1/(kE) is undefined at k = 1 (E = 0)")
        return 1.0 / (self.k * self.E)


def oracle_rho(k: int, grid: Grid | None = None) -> EmpSolution:
    case = SquareWellCase(k)
    grid = grid or default_grid()
    rho = np.full(grid.n_points, case.k**-0.5)
    zero = np.zeros(grid.n_points)
    coeff = EmpCoefficients(1.0 / case.k, 1.0 / case.k, 0.0)
    return EmpSolution(grid, rho, zero, case.E, "V", coeff, zero.copy())


def oracle_rho_tilde(k: int, grid: Grid | None = None) -> EmpSolution:
    case = SquareWellCase(k)
    gamma = case.gamma
    grid = grid or default_grid()
    x = grid.x
    t = np.tan(x)
    sec2 = 1.0 + t**2
    rho2 = gamma * (case.k**2 + t**2)
    rho = np.sqrt(rho2)
    drho = gamma * t * sec2 / rho
    d2rho2 = 2.0 * gamma * (sec2**2 + 2.0 * t**2 * sec2)
    d2rho = (0.5 * d2rho2 - drho**2) / rho
    return EmpSolution(grid, rho, drho, case.E, "V~", None, d2rho)


def oracle_invariant(k: int, psi0: float, psi0_prime: float) -> float:
    """Ermakov-Lewis invariant ``I`` (not ``2I``) for ``rho**2 = 1/k``."""
    case = SquareWellCase(k)
    return 0.5 * (case.k * psi0**2 + psi0_prime**2 / case.k)


def oracle_psi(k: int, grid: Grid, psi0: float, psi0_prime: float):
    """Well solution ``psi0 cos kx + (psi0_prime/k) sin kx`` and its derivative."""
    x = grid.x
    c, s = np.cos(k * x), np.sin(k * x)
    return psi0 * c + psi0_prime / k * s, -k * psi0 * s + psi0_prime * c
