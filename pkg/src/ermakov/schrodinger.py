"""Linear Schrodinger problem ``-psi'' + V psi = E psi`` (units with
``hbar = 1``, ``m = 1/2``, so ``k**2 = E - V``).

Solutions are integrated outward from the interval centre with an adaptive
Runge-Kutta scheme; intertwining maps act on sampled solutions with every
``psi''`` replaced by ``(V - E) psi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from . import intertwining
from .errors import DegeneratePair, IntegratorFailure, NormalizationFailure, ZeroModeEnergy
from .grid import Grid, derivative
from .potentials import GeneratingFunction, Potential, Superpotential, partner_pair_first_order

DEGENERACY_FLOOR = 1e-12
ZERO_ENERGY_TOL = 1e-10


@dataclass(frozen=True)
class Wavefunction:
    """A sampled solution with its derivative.

    ``psi_double_prime`` is filled in when an analytic second derivative
    is available; otherwise residual checks difference ``psi_prime``.
    """

    grid: Grid
    psi: np.ndarray
    psi_prime: np.ndarray
    energy: float
    psi_double_prime: Optional[np.ndarray] = None
    potential_label: str = ""

    def second_derivative(self) -> np.ndarray:
        if self.psi_double_prime is not None:
            return self.psi_double_prime
        return derivative(self.psi_prime, self.grid.spacing)


@dataclass(frozen=True)
class SolutionPair:
    grid: Grid
    psi1: np.ndarray
    psi1_prime: np.ndarray
    psi2: np.ndarray
    psi2_prime: np.ndarray
    energy: float
    wronskian: float
    potential: Potential
    potential_label: str = ""

    @classmethod
    def from_arrays(cls, grid, psi1, psi1_prime, psi2, psi2_prime, energy, potential, label=""):
        """Build a pair from samples, computing its Wronskian at the grid
        node nearest the centre."""
        i = grid.mid_index
        lam = psi1_prime[i] * psi2[i] - psi1[i] * psi2_prime[i]
        return cls(grid, psi1, psi1_prime, psi2, psi2_prime, float(energy), float(lam),
                   potential, label or potential.label)

    def member(self, which: int) -> Wavefunction:
        psi, dpsi = (self.psi1, self.psi1_prime) if which == 1 else (self.psi2, self.psi2_prime)
        return Wavefunction(self.grid, psi, dpsi, self.energy, None, self.potential_label)

    def combination(self, c1: float, c2: float) -> Wavefunction:
        return Wavefunction(
            self.grid,
            c1 * self.psi1 + c2 * self.psi2,
            c1 * self.psi1_prime + c2 * self.psi2_prime,
            self.energy,
            None,
            self.potential_label,
        )


def _integrate_outward(rhs, grid: Grid, y0, rtol, atol, method="DOP853", events=None,
                       event_error=IntegratorFailure):
    """Integrate ``rhs`` from the interval centre to both ends and return the
    state sampled on every grid node, shape ``(len(y0), n_points)``.

    A terminal event raises ``event_error``.
    """
    x = grid.x
    mid = grid.midpoint
    right = x >= mid
    left = ~right
    out = np.empty((len(y0), x.size))
    for mask, end in ((right, x[-1]), (left, x[0])):
        if not np.any(mask):
            continue
        pts = x[mask] if end > mid else x[mask][::-1]
        sol = solve_ivp(rhs, (mid, end), y0, method=method, t_eval=pts,
                        rtol=rtol, atol=atol, events=events)
        if sol.status == 1:
            hit = [t[0] for t in sol.t_events if len(t)]
            raise event_error(f"terminal event at x = {hit[0]:.17g}")
        if sol.status != 0:
            raise IntegratorFailure(sol.message)
        out[:, mask] = sol.y if end > mid else sol.y[:, ::-1]
    return out


def integrate_pair(v: Potential, energy: float, grid: Grid, *, rtol=1e-12, atol=1e-12) -> SolutionPair:
    """Two independent solutions at ``energy``.

    ``psi1`` starts as ``(0, 1)`` and ``psi2`` as ``(1, 0)`` at the centre of
    the interval, so for ``V = 0, E = 1`` they are ``sin x`` and ``cos x``.
    """

    def rhs(x, y):
        q = v(x) - energy
        return [y[1], q * y[0], y[3], q * y[2]]

    ys = _integrate_outward(rhs, grid, [0.0, 1.0, 1.0, 0.0], rtol, atol)
    pair = SolutionPair.from_arrays(grid, ys[0], ys[1], ys[2], ys[3], energy, v, v.label)
    wronskian(pair)
    return pair


def integrate_wavefunction(v: Potential, energy: float, grid: Grid, psi0: float, psi0_prime: float,
                           *, rtol=1e-10, atol=1e-10) -> Wavefunction:
    """Single solution with ``(psi, psi') = (psi0, psi0_prime)`` at the centre."""

    def rhs(x, y):
        return [y[1], (v(x) - energy) * y[0]]

    ys = _integrate_outward(rhs, grid, [psi0, psi0_prime], rtol, atol)
    return Wavefunction(grid, ys[0], ys[1], float(energy), None, v.label)


def wronskian_profile(pair: SolutionPair) -> np.ndarray:
    return pair.psi1_prime * pair.psi2 - pair.psi1 * pair.psi2_prime


def wronskian(pair: SolutionPair) -> float:
    """``psi1' psi2 - psi1 psi2'`` at the centre node; raises DegeneratePair
    for (numerically) proportional solutions."""
    lam = float(wronskian_profile(pair)[pair.grid.mid_index])
    if abs(lam) < DEGENERACY_FLOOR:
        raise DegeneratePair(f"|wronskian| = {abs(lam):.3g} < {DEGENERACY_FLOOR:g}")
    return lam


def schrodinger_residual(psi: Wavefunction, v: Potential) -> float:
    """``max |psi'' - (V - E) psi|`` scaled by ``max|psi| * max|V - E|``."""
    vme = psi.grid.sample(v) - psi.energy
    res = psi.second_derivative() - vme * psi.psi
    if psi.psi_double_prime is None:
        res = res[2:-2]
    scale = max(float(np.max(np.abs(psi.psi))) * float(np.max(np.abs(vme))), np.finfo(float).tiny)
    return float(np.max(np.abs(res))) / scale


def _apply(op: intertwining.Intertwiner, psi: Wavefunction, label: str) -> Wavefunction:
    out, dout, d2out = op.apply(psi.psi, psi.psi_prime)
    return Wavefunction(psi.grid, out, dout, psi.energy, d2out, label)


def map_wavefunction_first(psi: Wavefunction, w: Superpotential, *, shift: float = 0.0,
                           zero_tol: float = ZERO_ENERGY_TOL) -> Wavefunction:
    """``psi~ = (psi' + W psi) / sqrt(E - shift)``.

    ``psi`` must solve the equation with ``V = W**2 - W' + shift``; the
    result solves it with ``W**2 + W' + shift``.
    """
    e = psi.energy - shift
    if e <= zero_tol:
        raise ZeroModeEnergy(f"first-order map needs E - shift > {zero_tol:g}, got {e:.17g}")
    op = intertwining.first_order(w, psi.grid.x, e)
    return _apply(op, psi, "V~")


def map_wavefunction_second(psi: Wavefunction, g: GeneratingFunction, *, shift: float = 0.0) -> Wavefunction:
    """Second-order map ``q- psi / sqrt(E**2 + d)`` with
    ``q- = d2 + 2f d + 2f' + b``."""
    e = psi.energy - shift
    if e**2 + g.d <= 0:
        raise NormalizationFailure(f"E**2 + d = {e**2 + g.d:.17g} <= 0")
    op = intertwining.second_order(g, psi.grid.x, e)
    return _apply(op, psi, "V~")


def map_pair_first(pair: SolutionPair, w: Superpotential, *, shift: float = 0.0) -> SolutionPair:
    """Map both members of a pair; the Wronskian is recomputed, not copied."""
    p1 = map_wavefunction_first(pair.member(1), w, shift=shift)
    p2 = map_wavefunction_first(pair.member(2), w, shift=shift)
    _, vt = partner_pair_first_order(w, shift)
    return SolutionPair.from_arrays(pair.grid, p1.psi, p1.psi_prime, p2.psi, p2.psi_prime,
                                    pair.energy, vt, "V~")
