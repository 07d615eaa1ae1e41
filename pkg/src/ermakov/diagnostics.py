"""Ermakov-Lewis invariant and the Milne quantum-number function."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .emp import EmpSolution
from .errors import MismatchedInputs, NonIntegerShift
from .grid import simpson
from .schrodinger import Wavefunction

log = logging.getLogger(__name__)

SHIFT_TOL = 0.05


@dataclass(frozen=True)
class InvariantReport:
    """Ermakov-Lewis invariant of a (psi, rho) pair.

    ``value`` is taken at the grid centre.  ``max_deviation`` is the raw
    ``max |I(x) - value|``.  ``relative_deviation`` divides each deviation by
    the larger of ``|value|`` and the sensitivity of ``I(x)`` to rounding in
    its products, ``(psi/rho)**2/2 + |t1 - t2| (|t1| + |t2|)`` with
    ``t1 = rho psi'`` and ``t2 = rho' psi``.  Away from singular walls the
    second term is of order ``I`` and the measure is a plain relative one.
    """

    value: float
    max_deviation: float
    relative_deviation: float
    profile: np.ndarray


@dataclass(frozen=True)
class QuantumNumberSample:
    energy: float
    N: float
    integrand_samples: Optional[np.ndarray] = None
    failed: bool = False
    message: str = ""


def lewis_invariant(psi: Wavefunction, rho: EmpSolution, *, energy_tol: float = 1e-12) -> InvariantReport:
    """``I = ((psi/rho)**2 + (rho psi' - rho' psi)**2) / 2`` on every node."""
    if psi.grid != rho.grid:
        raise MismatchedInputs("psi and rho live on different grids")
    if abs(psi.energy - rho.energy) > energy_tol * max(1.0, abs(rho.energy)):
        raise MismatchedInputs(f"energies differ: {psi.energy!r} vs {rho.energy!r}")
    if psi.potential_label and rho.potential_label and psi.potential_label != rho.potential_label:
        raise MismatchedInputs(
            f"potentials differ: {psi.potential_label!r} vs {rho.potential_label!r}"
        )
    ratio = psi.psi / rho.rho
    t1 = rho.rho * psi.psi_prime
    t2 = rho.rho_prime * psi.psi
    profile = 0.5 * (ratio**2 + (t1 - t2) ** 2)
    i_mid = float(profile[rho.grid.mid_index])
    dev = np.abs(profile - i_mid)
    scale = np.maximum(abs(i_mid), 0.5 * ratio**2 + np.abs(t1 - t2) * (np.abs(t1) + np.abs(t2)))
    if i_mid == 0.0 and not np.any(scale):
        rel = 0.0
    else:
        rel = float(np.max(dev / np.where(scale > 0, scale, 1.0)))
    return InvariantReport(i_mid, float(np.max(dev)), rel, profile)


def quantum_number(rho: EmpSolution) -> QuantumNumberSample:
    """``N(E) = (1/pi) * integral of rho**-2`` over the grid (composite Simpson).

    The margin bands of the interval are left out; where ``rho`` grows
    without bound at a wall the integrand vanishes there.
    """
    integrand = rho.rho**-2.0
    n = simpson(integrand, rho.grid.spacing) / np.pi
    return QuantumNumberSample(rho.energy, n, integrand)


def quantum_number_shift(before: QuantumNumberSample, after: QuantumNumberSample,
                         order: Optional[int] = None, *, tol: float = SHIFT_TOL,
                         energy_tol: float = 1e-12) -> int:
    """``round(N_before - N_after)``.

    Raises NonIntegerShift if the difference is further than ``tol`` from
    an integer.  A shift outside ``{-order, ..., order}`` (or outside
    ``{-2, ..., 2}`` with no order given) is logged as unexpected.
    """
    if abs(before.energy - after.energy) > energy_tol * max(1.0, abs(before.energy)):
        raise MismatchedInputs("quantum-number samples must share the same energy")
    raw = before.N - after.N
    shift = int(round(raw))
    if abs(raw - shift) > tol:
        raise NonIntegerShift(f"N difference {raw:.6f} is not within {tol} of an integer")
    if not shift_expected(shift, order):
        log.warning("quantum-number shift %d is outside the expected range for order %s", shift, order)
    return shift


def shift_expected(shift: int, order: Optional[int] = None) -> bool:
    bound = 2 if order is None else order
    return abs(shift) <= bound
