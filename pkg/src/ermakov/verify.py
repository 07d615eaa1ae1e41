"""Square-well reproduction checks behind ``ermakov --task verify-squarewell``.

Each check returns a :class:`Check` holding the measured value and the
tolerance it must stay under.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import squarewell as sw
from .darboux import (
    auxiliary_equality_profile,
    transform_chain_two,
    transform_first_order,
    transform_inverse,
    transform_second_order,
)
from .diagnostics import lewis_invariant, quantum_number, quantum_number_shift
from .emp import EmpCoefficients, emp_from_pair, emp_residual, integrate_emp
from .grid import Grid, Interval
from .potentials import (
    GeneratingFunction,
    partner_pair_second_order,
    polynomial_generating_function,
    reducible_superpotentials,
)
from .quantization import find_bound_states
from .schrodinger import Wavefunction, integrate_pair, map_pair_first, map_wavefunction_first

KS = (2, 3, 4, 5, 6)
CHAIN_ENERGY = 8.0
# tan x then 2 tan x: W^2 + W' = W~^2 - W~' + 3, generating function 1.5 tan x
CHAIN_C = 3.0
# f(0) = 0 for the chain generator, so its grid must avoid x = 0
CHAIN_POINTS = 4000


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value < self.tolerance)


def chain_generator(margin: float = sw.DEFAULT_MARGIN) -> GeneratingFunction:
    s = 0.5 * CHAIN_C
    return GeneratingFunction(
        lambda x: s * np.tan(x),
        lambda x: s / np.cos(x) ** 2,
        lambda x: 2 * s * np.tan(x) / np.cos(x) ** 2,
        sw.well_interval(margin), c=CHAIN_C, label="1.5 tan x",
    )


def random_cases(count: int = 20, seed: int = 20240611, grid: Grid | None = None):
    """``count`` EMP amplitudes built from random valid ``(A, B, C)`` on the
    well, cycling ``k`` over 2..6."""
    grid = grid or sw.default_grid()
    v = sw.potential(grid.interval.margin)
    rng = np.random.default_rng(seed)
    pairs = {k: integrate_pair(v, sw.SquareWellCase(k).E, grid) for k in KS}
    out = []
    for i in range(count):
        k = KS[i % len(KS)]
        a, b = rng.uniform(0.2, 3.0, 2)
        c = rng.uniform(-0.9, 0.9) * np.sqrt(a * b)
        coeff = EmpCoefficients.normalized(a, b, c, pairs[k].wronskian)
        out.append((k, emp_from_pair(pairs[k], coeff)))
    return out


def check_spectrum(threads: int = 1) -> Check:
    grid = Grid(sw.well_interval(0.0), 4001)
    rep = find_bound_states(sw.potential(0.0), 4, (-0.5, 26.0), grid, threads=threads)
    err = np.max(np.abs(rep.energies - [sw.level(n) for n in range(5)]))
    return Check("1 well spectrum E_n = n(n+2)", float(err), 1e-6)


def check_partner_spectrum(threads: int = 1) -> Check:
    rep = find_bound_states(sw.partner_potential(), 3, (0.5, 26.0), sw.default_grid(), threads=threads)
    err = np.max(np.abs(rep.energies - [sw.level(n + 1) for n in range(4)]))
    return Check("2 partner spectrum E~_n = E_n+1", float(err), 1e-6)


def check_closed_form() -> Check:
    grid, w = sw.default_grid(), sw.superpotential()
    err = max(
        np.max(np.abs(transform_first_order(sw.oracle_rho(k, grid), w).rho - sw.oracle_rho_tilde(k, grid).rho))
        for k in KS
    )
    return Check("3 transformed rho vs closed form", float(err), 1e-10)


def check_covariance(cases) -> Check:
    w, vt = sw.superpotential(), sw.partner_potential()
    err = max(emp_residual(transform_first_order(r, w), vt) for _, r in cases)
    return Check("4 partner EMP residual (20 cases)", float(err), 1e-7)


def check_round_trip(cases) -> list[Check]:
    w = sw.superpotential()
    trip, aux = 0.0, 0.0
    for _, r in cases:
        rt = transform_first_order(r, w)
        trip = max(trip, float(np.max(np.abs(transform_inverse(rt, w).rho - r.rho))))
        aux = max(aux, float(np.max(np.abs(auxiliary_equality_profile(r, rt, w)))))
    return [Check("5 round trip", trip, 1e-8), Check("5 auxiliary equality", aux, 1e-8)]


def chain_inputs():
    grid = Grid(sw.well_interval(sw.DEFAULT_MARGIN), CHAIN_POINTS)
    g = chain_generator()
    k = int(round(np.sqrt(CHAIN_ENERGY + 1)))
    return grid, g, sw.oracle_rho(k, grid)


def check_chain() -> list[Check]:
    grid, g, rho = chain_inputs()
    w, wt = reducible_superpotentials(g)
    direct = transform_chain_two(rho, g)
    composed = transform_first_order(transform_first_order(rho, w), wt, shift=CHAIN_C)
    second = transform_second_order(rho, g, shift=0.5 * CHAIN_C)
    scale = np.maximum(1.0, direct.rho)
    return [
        Check("6 two-step chain direct vs composed", float(np.max(np.abs(direct.rho - composed.rho) / scale)), 1e-7),
        Check("7 second order at d=-c^2/4 vs chain", float(np.max(np.abs(second.rho - direct.rho) / scale)), 1e-7),
    ]


def irreducible_case():
    g = polynomial_generating_function([1.0, 0.0, 1.0], Interval(-1.0, 1.0), d=1.0)
    v, vt, _ = partner_pair_second_order(g)
    grid = Grid(g.domain, 4001)
    rho = integrate_emp(v, 2.0, grid, 1.0, 0.0)
    return g, v, vt, rho


def check_irreducible() -> Check:
    g, _, vt, rho = irreducible_case()
    out = transform_second_order(rho, g)
    return Check("7 irreducible d=1 partner residual", emp_residual(out, vt), 1e-6)


def check_wronskian() -> Check:
    grid, w = sw.default_grid(), sw.superpotential()
    v = sw.potential(grid.interval.margin)
    err = 0.0
    for k in KS:
        pair = integrate_pair(v, sw.SquareWellCase(k).E, grid)
        mapped = map_pair_first(pair, w)
        err = max(err, abs(mapped.wronskian - pair.wronskian) / abs(pair.wronskian))
    return Check("8 Wronskian coincidence", float(err), 1e-9)


def check_invariant(psi0: float = 0.7, psi0_prime: float = -1.3) -> list[Check]:
    grid, w = sw.default_grid(), sw.superpotential()
    const, change = 0.0, 0.0
    for k in KS:
        rho = sw.oracle_rho(k, grid)
        p, dp = sw.oracle_psi(k, grid, psi0, psi0_prime)
        psi = Wavefunction(grid, p, dp, rho.energy, None, "V")
        inv = lewis_invariant(psi, rho)
        inv_t = lewis_invariant(map_wavefunction_first(psi, w), transform_first_order(rho, w))
        ref = sw.oracle_invariant(k, psi0, psi0_prime)
        const = max(const, inv.relative_deviation, inv_t.relative_deviation, abs(inv.value - ref) / ref)
        change = max(change, abs(inv_t.value - inv.value) / abs(inv.value))
    return [Check("9 invariant constancy", const, 1e-7), Check("9 invariant preserved", change, 1e-7)]


def check_shift() -> list[Check]:
    grid, w = sw.default_grid(), sw.superpotential()
    err1 = 0.0
    for k in KS:
        rho = sw.oracle_rho(k, grid)
        before, after = quantum_number(rho), quantum_number(transform_first_order(rho, w))
        err1 = max(err1, abs((before.N - after.N) - 1.0) + 10.0 * (quantum_number_shift(before, after, 1) != 1))
    cgrid, g, rho = chain_inputs()
    before, after = quantum_number(rho), quantum_number(transform_chain_two(rho, g))
    err2 = abs((before.N - after.N) - 2.0) + 10.0 * (quantum_number_shift(before, after, 2) != 2)
    return [Check("10 quantum-number shift, first order", err1, 0.01),
            Check("10 quantum-number shift, two-step chain", err2, 0.01)]


def check_pair_vs_integrated(cases) -> Check:
    err = 0.0
    for k, r in cases[:5]:
        g = r.grid
        v = sw.potential(g.interval.margin)
        ri = integrate_emp(v, r.energy, g, r.rho[g.mid_index], r.rho_prime[g.mid_index])
        err = max(err, float(np.max(np.abs(ri.rho - r.rho) / r.rho)))
    return Check("11 emp_from_pair vs integrate_emp", err, 1e-8)


def run_checks(threads: int = 1) -> list[Check]:
    cases = random_cases()
    checks = [check_spectrum(threads), check_partner_spectrum(threads), check_closed_form(),
              check_covariance(cases)]
    checks += check_round_trip(cases)
    checks += check_chain()
    checks.append(check_irreducible())
    checks.append(check_wronskian())
    checks += check_invariant()
    checks += check_shift()
    checks.append(check_pair_vs_integrated(cases))
    return checks


def format_table(checks) -> str:
    width = max(len(c.name) for c in checks)
    lines = [f"{'check'.ljust(width)}  {'value':>10}  {'tol':>8}  result"]
    for c in checks:
        lines.append(f"{c.name.ljust(width)}  {c.value:10.3e}  {c.tolerance:8.0e}  {'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines)
