import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ermakov import squarewell as sw
from ermakov.errors import SingularGenerator
from ermakov.grid import Interval
from ermakov.potentials import (
    GeneratingFunction,
    Superpotential,
    partner_pair_first_order,
    partner_pair_second_order,
    polynomial_generating_function,
    reducible_superpotentials,
)

X_WELL = np.linspace(-1.5, 1.5, 1000)
UNIT = Interval(-1.0, 1.0)
X_UNIT = np.linspace(-0.99, 0.99, 1000)


def test_tan_superpotential_gives_square_well():
    v, vt = partner_pair_first_order(sw.superpotential())
    assert np.allclose(v(X_WELL), -1.0, atol=1e-9)
    assert np.allclose(vt(X_WELL), -1.0 + 2.0 / np.cos(X_WELL) ** 2, rtol=1e-13)


def test_zero_superpotential():
    w = Superpotential(lambda x: 0.0 * x, lambda x: 0.0 * x, UNIT)
    v, vt = partner_pair_first_order(w)
    assert np.all(v(X_UNIT) == 0) and np.all(vt(X_UNIT) == 0)


def test_linear_superpotential():
    w = Superpotential(lambda x: x, lambda x: np.ones_like(x), UNIT)
    v, vt = partner_pair_first_order(w)
    assert np.allclose(v(X_UNIT), X_UNIT**2 - 1)
    assert np.allclose(vt(X_UNIT), X_UNIT**2 + 1)


def test_shift_is_added_to_both():
    v, vt = partner_pair_first_order(sw.superpotential(), shift=2.5)
    assert np.allclose(v(X_WELL), 1.5, atol=1e-9)


def test_finite_difference_fallback_matches_analytic():
    w = Superpotential(np.sin, None, UNIT)
    assert np.allclose(w.derivative(X_UNIT), np.cos(X_UNIT), atol=1e-11)
    assert sw.superpotential().derivative_mismatch(X_UNIT) < 1e-9


def test_negated():
    w = sw.superpotential().negated()
    assert np.allclose(w(X_UNIT), -np.tan(X_UNIT))
    assert np.allclose(w.derivative(X_UNIT), -1 / np.cos(X_UNIT) ** 2)


@pytest.mark.parametrize("f0, d", [(1.0, 0.5), (2.0, -1.0), (-0.7, 3.0)])
def test_constant_generating_function(f0, d):
    g = polynomial_generating_function([f0], UNIT, d=d)
    v, vt, b = partner_pair_second_order(g)
    assert np.allclose(v(X_UNIT), f0**2 - d / (4 * f0**2))
    assert np.allclose(vt(X_UNIT), f0**2 - d / (4 * f0**2))
    assert np.allclose(b(X_UNIT), f0**2 + d / (4 * f0**2))


def test_irreducible_partner_difference():
    g = polynomial_generating_function([1.0, 0.0, 1.0], UNIT, d=1.0)
    v, vt, _ = partner_pair_second_order(g)
    assert np.max(np.abs(vt(X_UNIT) - v(X_UNIT) - 8 * X_UNIT)) < 1e-12


def test_reducible_second_order_potential_is_offset_from_first_order():
    # the second-order V sits c/2 below W**2 - W'
    c = 2.0
    g = polynomial_generating_function([1.0, 0.0, 1.0], UNIT, c=c)
    w, wt = reducible_superpotentials(g)
    v1, _ = partner_pair_first_order(w)
    v2, vt2, _ = partner_pair_second_order(g)
    assert np.max(np.abs(v2(X_UNIT) + c / 2 - v1(X_UNIT))) < 1e-9
    _, vtt = partner_pair_first_order(wt, shift=c)
    assert np.max(np.abs(vt2(X_UNIT) + c / 2 - vtt(X_UNIT))) < 1e-9


def test_reducible_constant_f():
    f0, c = 1.5, 2.0
    w, wt = reducible_superpotentials(polynomial_generating_function([f0], UNIT, c=c))
    assert np.allclose(w(X_UNIT), f0 + c / (4 * f0))
    assert np.allclose(wt(X_UNIT), f0 - c / (4 * f0))


def test_chain_relation():
    c = 2.0
    w, wt = reducible_superpotentials(polynomial_generating_function([1.0, 0.0, 1.0], UNIT, c=c))
    lhs = w(X_UNIT) ** 2 + w.derivative(X_UNIT)
    rhs = wt(X_UNIT) ** 2 - wt.derivative(X_UNIT) + c
    assert np.max(np.abs(lhs - rhs)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=4), st.floats(0.5, 3.0))
def test_reducible_sum_identity(coeffs, c):
    g = polynomial_generating_function([3.0] + coeffs, Interval(-0.3, 0.3), c=c)
    x = np.linspace(-0.3, 0.3, 101)
    w, wt = reducible_superpotentials(g)
    assert np.allclose(w(x) + wt(x), 2 * g.f(x), rtol=1e-13, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=4), st.floats(-5, 5))
def test_second_order_partner_difference_is_4f_prime(coeffs, d):
    g = polynomial_generating_function([2.5] + coeffs, Interval(-0.5, 0.5), d=d)
    x = np.linspace(-0.5, 0.5, 101)
    v, vt, _ = partner_pair_second_order(g)
    assert np.allclose(vt(x) - v(x), 4 * g.f_prime(x), rtol=1e-12, atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_first_order_partner_difference_is_2w_prime(a, b):
    w = Superpotential(lambda x: a * x**3 + b * np.sin(x), lambda x: 3 * a * x**2 + b * np.cos(x), UNIT)
    v, vt = partner_pair_first_order(w)
    assert np.allclose(vt(X_UNIT) - v(X_UNIT), 2 * w.derivative(X_UNIT), atol=1e-12)


def test_generator_floor():
    g = polynomial_generating_function([0.0, 1.0], UNIT, d=1.0)
    with pytest.raises(SingularGenerator):
        g.values(np.array([-0.5, 0.0, 0.5]))


def test_generator_requires_d_or_c():
    with pytest.raises(ValueError):
        GeneratingFunction(np.cos, None, None, UNIT)
    with pytest.raises(ValueError):
        GeneratingFunction(np.cos, None, None, UNIT, d=1.0, c=2.0)


def test_generator_fd_fallback():
    g = GeneratingFunction(np.exp, None, None, UNIT, d=1.0)
    f, fp, fpp = g.values(X_UNIT)
    assert np.allclose(fp, f, rtol=1e-10) and np.allclose(fpp, f, rtol=1e-7)
