"""Darboux (SUSY) transforms acting directly on EMP amplitudes.

First order, ``V = W**2 - W'  ->  V~ = W**2 + W'``:

    E rho~**2 = ((d + W) rho)**2 + rho**-2

and back, ``E rho**2 = ((d - W) rho~)**2 + rho~**-2``.  Two reducible steps
``W`` then ``W~`` (with ``W**2 + W' = W~**2 - W~' + c``) compose to

    E (E - c) rho~~**2 = (s rho' + (W s - E) rho)**2 + s**2 rho**-2,  s = W + W~

and an irreducible second-order step with generating function ``f`` gives

    (E**2 + d) rho~**2 = (2f rho' + (2f**2 - f' - E) rho)**2 + 4 f**2 rho**-2.

Every transform takes an optional ``shift``: the input potential is the
standard one plus ``shift`` and the step acts at energy ``E - shift``.
This is how the second link of a chain sees ``V~ = W~**2 - W~' + c``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import intertwining
from .emp import EmpSolution, emp_residual
from .errors import (
    InputNotSolution,
    InputNotSolutionWarning,
    NormalizationFailure,
    ZeroModeEnergy,
)
from .potentials import (
    GeneratingFunction,
    Potential,
    Superpotential,
    partner_pair_first_order,
    partner_pair_second_order,
    reducible_superpotentials,
)

ZERO_ENERGY_TOL = 1e-10
INPUT_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class TransformSpec:
    """One link of a transformation chain."""

    order: int
    w: Optional[Superpotential] = None
    g: Optional[GeneratingFunction] = None
    shift: float = 0.0

    def __post_init__(self):
        if self.order == 1 and (self.w is None or self.g is not None):
            raise ValueError("an order-1 step needs a superpotential and no generating function")
        if self.order == 2 and (self.g is None or self.w is not None):
            raise ValueError("an order-2 step needs a generating function and no superpotential")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")

    def potentials(self) -> tuple[Potential, Potential]:
        """``(input, output)`` potentials of this step."""
        if self.order == 1:
            return partner_pair_first_order(self.w, self.shift)
        v, vt, _ = partner_pair_second_order(self.g, self.shift)
        return v, vt


def _guard(rho: EmpSolution, v: Potential, strict: bool, tol: float, what: str) -> None:
    r = emp_residual(rho, v)
    if r <= tol:
        return
    msg = f"{what}: input amplitude has EMP residual {r:.3g} > {tol:g} against {v.label}"
    if strict:
        raise InputNotSolution(msg)
    warnings.warn(msg, InputNotSolutionWarning, stacklevel=3)


def _emit(rho: EmpSolution, op: intertwining.Intertwiner, label: str) -> EmpSolution:
    r, dr, d2r = op.apply_emp(rho.rho, rho.rho_prime)
    return EmpSolution(rho.grid, r, dr, rho.energy, label, None, d2r)


def transform_first_order(rho: EmpSolution, w: Superpotential, energy: Optional[float] = None, *,
                          shift: float = 0.0, strict: bool = False, check_input: bool = True,
                          zero_tol: float = ZERO_ENERGY_TOL,
                          input_tol: float = INPUT_RESIDUAL_TOL) -> EmpSolution:
    """Map an amplitude for ``W**2 - W' + shift`` to one for ``W**2 + W' + shift``.

    Parameters
    ----------
    rho : EmpSolution
        Amplitude solving the EMP equation of the input potential.
    w : Superpotential
    energy : float, optional
        Defaults to ``rho.energy``.
    shift : float
        Constant added to both potentials; the step acts at ``energy - shift``.
    strict : bool
        Raise InputNotSolution instead of warning when ``rho`` fails its own
        residual check.

    Raises
    ------
    ZeroModeEnergy
        If ``energy - shift <= zero_tol``.
    """
    energy = rho.energy if energy is None else energy
    e = energy - shift
    if e <= zero_tol:
        raise ZeroModeEnergy(f"first-order transform needs E > {zero_tol:g}, got {e:.17g}")
    if check_input:
        v, _ = partner_pair_first_order(w, shift)
        _guard(rho, v, strict, input_tol, "transform_first_order")
    return _emit(rho, intertwining.first_order(w, rho.grid.x, e), "V~")


def transform_inverse(rho_tilde: EmpSolution, w: Superpotential, energy: Optional[float] = None, *,
                      shift: float = 0.0, strict: bool = False, check_input: bool = True,
                      zero_tol: float = ZERO_ENERGY_TOL,
                      input_tol: float = INPUT_RESIDUAL_TOL) -> EmpSolution:
    """Undo :func:`transform_first_order`: ``E rho**2 = ((d - W) rho~)**2 + rho~**-2``."""
    energy = rho_tilde.energy if energy is None else energy
    e = energy - shift
    if e <= zero_tol:
        raise ZeroModeEnergy(f"inverse transform needs E > {zero_tol:g}, got {e:.17g}")
    if check_input:
        _, vt = partner_pair_first_order(w, shift)
        _guard(rho_tilde, vt, strict, input_tol, "transform_inverse")
    # W**2 + W' is the "V" of the superpotential -W
    return _emit(rho_tilde, intertwining.first_order(w.negated(), rho_tilde.grid.x, e), "V")


def auxiliary_equality_profile(rho: EmpSolution, rho_tilde: EmpSolution, w: Superpotential,
                               *, relative: bool = True) -> np.ndarray:
    """Pointwise ``rho~ rho~' - W rho~**2 + rho rho' + W rho**2``.

    Zero when ``rho_tilde`` is the first-order transform of ``rho``.  With
    ``relative`` each point is divided by the largest of ``1`` and the four
    term magnitudes.
    """
    wv = w(rho.grid.x)
    terms = (
        rho_tilde.rho * rho_tilde.rho_prime,
        -wv * rho_tilde.rho**2,
        rho.rho * rho.rho_prime,
        wv * rho.rho**2,
    )
    res = sum(terms)
    if relative:
        res = res / np.maximum.reduce([np.ones_like(res)] + [np.abs(t) for t in terms])
    return res


def transform_chain_two(rho: EmpSolution, g: GeneratingFunction, energy: Optional[float] = None, *,
                        strict: bool = False, check_input: bool = True,
                        zero_tol: float = ZERO_ENERGY_TOL,
                        input_tol: float = INPUT_RESIDUAL_TOL) -> EmpSolution:
    """Two reducible first-order steps in one closed form.

    ``g`` must carry ``c`` (so ``d = -c**2/4``); ``(W, W~)`` come from
    :func:`~ermakov.potentials.reducible_superpotentials`.  The input solves
    the EMP equation for ``W**2 - W'``; the output solves it for
    ``W~**2 + W~' + c`` at the same ``E``.  Equal to applying
    :func:`transform_first_order` with ``W`` at ``E`` and then with ``W~``
    and ``shift=c``.
    """
    if not g.is_reducible:
        raise ValueError("transform_chain_two needs a reducible generating function (c set)")
    energy = rho.energy if energy is None else energy
    c = float(g.c)
    for e, name in ((energy, "E"), (energy - c, "E - c")):
        if abs(e) <= zero_tol:
            raise ZeroModeEnergy(f"two-step chain: {name} = {e:.17g} is a zero mode")
    if energy * (energy - c) <= 0:
        raise NormalizationFailure(f"E (E - c) = {energy * (energy - c):.17g} <= 0")
    if check_input:
        w, _ = reducible_superpotentials(g)
        v, _ = partner_pair_first_order(w)
        _guard(rho, v, strict, input_tol, "transform_chain_two")
    return _emit(rho, intertwining.chain_two(g, rho.grid.x, energy), "V~~")


def transform_second_order(rho: EmpSolution, g: GeneratingFunction, energy: Optional[float] = None, *,
                           shift: float = 0.0, strict: bool = False, check_input: bool = True,
                           input_tol: float = INPUT_RESIDUAL_TOL) -> EmpSolution:
    """Second-order transform built on generating function ``g``.

    The input solves the EMP equation for the second-order ``V`` (plus
    ``shift``), the output for ``V~ = V + 4f'``.  For a reducible ``g`` the
    second-order ``V`` sits ``c/2`` below ``W**2 - W'``, so matching a
    two-step chain at energy ``E`` needs ``shift = c/2``.
    """
    energy = rho.energy if energy is None else energy
    e = energy - shift
    if e**2 + g.d <= 0:
        raise NormalizationFailure(f"E**2 + d = {e**2 + g.d:.17g} <= 0")
    if check_input:
        v, _, _ = partner_pair_second_order(g, shift)
        _guard(rho, v, strict, input_tol, "transform_second_order")
    return _emit(rho, intertwining.second_order(g, rho.grid.x, e), "V~")


def apply_transforms(rho: EmpSolution, specs, *, strict: bool = False) -> list[EmpSolution]:
    """Run a sequence of :class:`TransformSpec` steps; returns every stage,
    starting with ``rho`` itself."""
    stages = [rho]
    for spec in specs:
        cur = stages[-1]
        if spec.order == 1:
            nxt = transform_first_order(cur, spec.w, shift=spec.shift, strict=strict)
        else:
            nxt = transform_second_order(cur, spec.g, shift=spec.shift, strict=strict)
        stages.append(nxt)
    return stages
