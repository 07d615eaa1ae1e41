"""Bound states from the Milne condition ``N(E_n) = n + 1``.

``N(E)`` is evaluated on an EMP amplitude integrated directly at each
energy, seeded at the interval centre with the local WKB amplitude
``(E - V(mid))**-1/4`` (gap clipped at 1, so the seed is 1 near and below
the bottom of the well).  Levels are
bracketed on a scan of ``N`` and refined with Brent's method.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .diagnostics import QuantumNumberSample, quantum_number
from .emp import integrate_emp
from .errors import ErmakovError, NonMonotoneScan, RootNotBracketed
from .grid import Grid
from .potentials import Potential

ROOT_TOL = 1e-8
ENERGY_XTOL = 1e-12
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class Level:
    n: int
    energy: float
    N: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class SpectrumReport:
    levels: list[Level]
    scan: list[QuantumNumberSample] = field(default_factory=list)

    @property
    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels])


def default_initial_amplitude(v: Potential, energy: float, grid: Grid, gap_floor: float = 1.0) -> float:
    """WKB amplitude ``(E - V(mid))**-1/4`` with the gap clipped from below
    at ``gap_floor`` so the seed is continuous in ``E``."""
    gap = energy - float(v(grid.midpoint))
    return max(gap, gap_floor) ** -0.25


def quantum_number_at(v: Potential, energy: float, grid: Grid, *, rho0_prime: float = 0.0,
                      rtol: float = 1e-10, atol: float = 1e-10) -> QuantumNumberSample:
    rho0 = default_initial_amplitude(v, energy, grid)
    rho = integrate_emp(v, energy, grid, rho0, rho0_prime, rtol=rtol, atol=atol)
    return quantum_number(rho)


def scan_quantum_number(v: Potential, e_lo: float, e_hi: float, steps: int, grid: Grid, *,
                        rho0_prime: float = 0.0, threads: int = 1,
                        rtol: float = 1e-10, atol: float = 1e-10) -> list[QuantumNumberSample]:
    """Sample ``N(E)`` at ``steps`` evenly spaced energies.

    An integration failure at one energy is recorded on that sample
    (``failed=True``) instead of aborting the scan.
    """
    if not e_lo < e_hi:
        raise ValueError(f"empty energy range [{e_lo}, {e_hi}]")
    if steps < 2:
        raise ValueError("a scan needs at least two energies")

    def one(e):
        try:
            return quantum_number_at(v, float(e), grid, rho0_prime=rho0_prime, rtol=rtol, atol=atol)
        except ErmakovError as exc:
            return QuantumNumberSample(float(e), float("nan"), None, True, f"{exc.code}: {exc}")

    energies = np.linspace(e_lo, e_hi, steps)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, energies))
    return [one(e) for e in energies]


def find_bound_states(v: Potential, n_max: int, bracket: tuple[float, float], grid: Grid, *,
                      scan_steps: int = 40, rho0_prime: float = 0.0, tol: float = ROOT_TOL,
                      xtol: float = ENERGY_XTOL, max_iter: int = MAX_ITERATIONS, threads: int = 1,
                      rtol: float = 1e-10, atol: float = 1e-10) -> SpectrumReport:
    """Energies ``E_0 < ... < E_n_max`` with ``N(E_n) = n + 1``.

    Raises
    ------
    NonMonotoneScan
        If the scanned ``N(E)`` decreases anywhere (bracketing would be unsafe).
    RootNotBracketed
        If some ``n + 1`` lies outside the scanned range of ``N``.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    scan = scan_quantum_number(v, bracket[0], bracket[1], scan_steps, grid,
                               rho0_prime=rho0_prime, threads=threads, rtol=rtol, atol=atol)
    good = [s for s in scan if not s.failed]
    es = np.array([s.energy for s in good])
    ns = np.array([s.N for s in good])
    if len(good) < 2:
        raise RootNotBracketed("fewer than two usable scan samples")
    if np.any(np.diff(ns) < 0):
        i = int(np.argmax(np.diff(ns) < 0))
        raise NonMonotoneScan(f"N decreases between E = {es[i]:.6g} and E = {es[i + 1]:.6g}")

    @lru_cache(maxsize=None)
    def n_of(e):
        return quantum_number_at(v, e, grid, rho0_prime=rho0_prime, rtol=rtol, atol=atol).N

    levels = []
    for n in range(n_max + 1):
        target = n + 1.0
        hits = np.nonzero((ns[:-1] <= target) & (ns[1:] >= target))[0]
        if hits.size == 0:
            raise RootNotBracketed(
                f"level n={n}: N = {target} not inside scanned range "
                f"[{ns.min():.6g}, {ns.max():.6g}] on [{bracket[0]}, {bracket[1]}]"
            )
        j = int(hits[0])
        if abs(ns[j] - target) < tol:
            e_n, it = es[j], 0
        elif abs(ns[j + 1] - target) < tol:
            e_n, it = es[j + 1], 0
        else:
            e_n, info = brentq(lambda e: n_of(e) - target, es[j], es[j + 1], xtol=xtol,
                               maxiter=max_iter, full_output=True)
            it = info.iterations
        n_mid = n_of(e_n)
        levels.append(Level(n, float(e_n), float(n_mid), float(n_mid - target), it))
    return SpectrumReport(levels, scan)
