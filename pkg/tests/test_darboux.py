import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ermakov import squarewell as sw
from ermakov.darboux import (
    TransformSpec,
    apply_transforms,
    auxiliary_equality_profile,
    transform_chain_two,
    transform_first_order,
    transform_inverse,
    transform_second_order,
)
from ermakov.emp import EmpCoefficients, EmpSolution, emp_from_pair, emp_residual, integrate_emp
from ermakov.errors import InputNotSolution, InputNotSolutionWarning, NormalizationFailure, ZeroModeEnergy
from ermakov.potentials import (
    partner_pair_first_order,
    partner_pair_second_order,
    polynomial_generating_function,
    reducible_superpotentials,
)
from ermakov.verify import chain_generator, chain_inputs, irreducible_case

coeffs = st.tuples(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(-0.9, 0.9))


def pair_rho(pair, abc):
    a, b, c = abc
    return emp_from_pair(pair, EmpCoefficients.normalized(a, b, c * np.sqrt(a * b), pair.wronskian))


@pytest.mark.parametrize("k", range(2, 7))
def test_closed_form(grid, w, k):
    out = transform_first_order(sw.oracle_rho(k, grid), w)
    expected = sw.oracle_rho_tilde(k, grid)
    assert np.max(np.abs(out.rho - expected.rho)) < 1e-10
    assert np.allclose(out.rho**2, (np.tan(grid.x) ** 2 / k + k) / (k * k - 1), rtol=1e-13)
    assert out.potential_label == "V~"


def test_zero_energy(grid, w):
    with pytest.raises(ZeroModeEnergy):
        transform_first_order(sw.oracle_rho(1, grid), w)


def test_oscillatory_input(grid, well, w, partner):
    rho = integrate_emp(well, 3.0, grid, 1.0, 5.0)
    out = transform_first_order(rho, w)
    assert emp_residual(out, partner) < 1e-7


@pytest.mark.parametrize("k", range(2, 7))
def test_inverse_of_closed_form(grid, w, k):
    back = transform_inverse(sw.oracle_rho_tilde(k, grid), w)
    assert np.max(np.abs(back.rho**2 - 1.0 / k)) < 1e-8
    assert back.potential_label == "V"


@settings(max_examples=25, deadline=None)
@given(coeffs)
def test_round_trip_and_auxiliary_equality_at_e8(pairs, w, abc):
    rho = pair_rho(pairs[3], abc)
    rt = transform_first_order(rho, w)
    assert np.max(np.abs(transform_inverse(rt, w).rho - rho.rho)) < 1e-8
    assert np.max(np.abs(auxiliary_equality_profile(rho, rt, w))) < 1e-8


@settings(max_examples=25, deadline=None)
@given(coeffs, st.sampled_from([2, 3, 4, 5, 6]))
def test_covariance(pairs, well, partner, w, abc, k):
    rho = pair_rho(pairs[k], abc)
    out = transform_first_order(rho, w)
    assert emp_residual(out, partner) < 10 * emp_residual(rho, well) + 1e-7


def test_non_solution_warns_or_raises(grid, w):
    rho = sw.oracle_rho(2, grid)
    bad = EmpSolution(grid, rho.rho * (1 + 0.01 * np.cos(grid.x)), -0.01 * rho.rho * np.sin(grid.x), rho.energy)
    with pytest.warns(InputNotSolutionWarning):
        transform_first_order(bad, w)
    with pytest.raises(InputNotSolution):
        transform_first_order(bad, w, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        transform_first_order(bad, w, check_input=False)


def test_chain_matches_composition():
    grid, g, rho = chain_inputs()
    w, wt = reducible_superpotentials(g)
    direct = transform_chain_two(rho, g)
    composed = transform_first_order(transform_first_order(rho, w), wt, shift=g.c)
    assert np.max(np.abs(direct.rho - composed.rho) / np.maximum(1.0, direct.rho)) < 1e-7
    _, vtt = partner_pair_first_order(wt, g.c)
    assert emp_residual(direct, vtt) < 1e-7
    assert direct.potential_label == "V~~"


def test_chain_energy_guards():
    grid, g, rho = chain_inputs()
    with pytest.raises(ZeroModeEnergy):
        transform_chain_two(rho, g, energy=g.c, check_input=False)
    with pytest.raises(NormalizationFailure):
        transform_chain_two(rho, g, energy=1.0, check_input=False)
    with pytest.raises(ValueError):
        transform_chain_two(rho, polynomial_generating_function([1.0], grid.interval, d=1.0))


def test_constant_superpotential_chain(free):
    # f = 1, c = 0: W = W~ = 1 and V = V~ = V~~ = 1
    v0, grid = free
    g = polynomial_generating_function([1.0], grid.interval, c=0.0)
    w, wt = reducible_superpotentials(g)
    assert np.allclose(w(grid.x), 1.0) and np.allclose(wt(grid.x), 1.0)
    v, _ = partner_pair_first_order(w)
    rho = integrate_emp(v, 3.0, grid, 1.0, 0.3)
    direct = transform_chain_two(rho, g)
    composed = transform_first_order(transform_first_order(rho, w), wt)
    assert np.max(np.abs(direct.rho - composed.rho)) < 1e-12
    assert emp_residual(direct, v) < 1e-6


def test_second_order_reducible_limit():
    grid, g, rho = chain_inputs()
    second = transform_second_order(rho, g, shift=g.c / 2)
    direct = transform_chain_two(rho, g)
    assert np.max(np.abs(second.rho - direct.rho)) < 1e-7


def test_second_order_irreducible():
    g, v, vt, rho = irreducible_case()
    out = transform_second_order(rho, g)
    assert emp_residual(out, vt) < 1e-6


def test_second_order_constant_f(free):
    v0, grid = free
    f0, d = 1.3, 0.8
    g = polynomial_generating_function([f0], grid.interval, d=d)
    v, vt, _ = partner_pair_second_order(g)
    rho = integrate_emp(v, 2.0, grid, 0.9, 0.4)
    out = transform_second_order(rho, g)
    i = grid.mid_index
    direct = integrate_emp(vt, 2.0, grid, out.rho[i], out.rho_prime[i])
    assert np.max(np.abs(out.rho - direct.rho)) < 1e-8


def test_second_order_normalization(free):
    _, grid = free
    g = polynomial_generating_function([1.0], grid.interval, d=-9.0)
    v, _, _ = partner_pair_second_order(g)
    rho = integrate_emp(v, 2.0, grid, 1.0)
    with pytest.raises(NormalizationFailure):
        transform_second_order(rho, g)


def test_apply_transforms_runs_a_chain():
    grid, g, rho = chain_inputs()
    w, wt = reducible_superpotentials(g)
    stages = apply_transforms(rho, [TransformSpec(1, w=w), TransformSpec(1, w=wt, shift=g.c)], strict=True)
    assert len(stages) == 3
    assert np.allclose(stages[-1].rho, transform_chain_two(rho, g).rho, rtol=1e-10)


def test_transform_spec_validation(w):
    g = chain_generator()
    with pytest.raises(ValueError):
        TransformSpec(1, g=g)
    with pytest.raises(ValueError):
        TransformSpec(2, w=w)
    with pytest.raises(ValueError):
        TransformSpec(3, w=w)
    v, vt = TransformSpec(2, g=g, shift=1.0).potentials()
    x = np.array([0.3, 0.7])
    assert np.allclose(vt(x) - v(x), 4 * g.f_prime(x))
