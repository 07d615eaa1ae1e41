"""Superpotentials, generating functions and the partner potentials they
produce.

First order: a superpotential ``W`` factorizes ``V = W**2 - W'`` and
``V~ = W**2 + W'``.  Second order: a generating function ``f`` together with
a constant ``d`` fixes both potentials and the coefficient ``b`` of the
second-order intertwiner ``q- = d2 + 2 f d + 2 f' + b``.  When
``d == -c**2 / 4`` the second-order step factorizes into two first-order
steps with superpotentials ``W = f - (2f' - c)/(4f)`` and
``W~ = f + (2f' - c)/(4f)``.

Only ``d > 0`` (irreducible) and ``d == -c**2/4`` (reducible) correspond to
known intertwining algebras; other real ``d`` are accepted and the formulas
are evaluated as written.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import SingularGenerator
from .grid import Interval, central_derivative

SINGULARITY_FLOOR = 1e-8


def _as_float_array(values, x):
    if np.ndim(x) == 0:
        return float(values)
    return np.broadcast_to(np.asarray(values, dtype=float), np.shape(x)) + 0.0


@dataclass(frozen=True)
class Potential:
    v: Callable
    domain: Interval
    label: str = "V"

    def __call__(self, x):
        if isinstance(x, float):
            return float(self.v(x))
        return _as_float_array(self.v(np.asarray(x, dtype=float)), x)

    def shifted(self, constant: float, label: Optional[str] = None) -> "Potential":
        v = self.v
        return Potential(lambda x: v(x) + constant, self.domain, label or self.label)


@dataclass(frozen=True)
class Superpotential:
    """Real superpotential ``W`` on ``domain``.

    If ``w_prime`` is omitted a fourth-order central difference with step
    ``fd_step`` stands in for it.
    """

    w: Callable
    w_prime: Optional[Callable]
    domain: Interval
    label: str = "W"
    fd_step: float = 1e-3

    def __post_init__(self):
        if self.w_prime is None:
            w, step = self.w, self.fd_step
            object.__setattr__(
                self, "w_prime", lambda x: central_derivative(w, x, step)
            )

    def __call__(self, x):
        return _as_float_array(self.w(np.asarray(x, dtype=float)), x)

    def derivative(self, x):
        return _as_float_array(self.w_prime(np.asarray(x, dtype=float)), x)

    def negated(self) -> "Superpotential":
        w, wp = self.w, self.w_prime
        return Superpotential(
            lambda x: -w(x), lambda x: -wp(x), self.domain, f"-{self.label}"
        )

    def derivative_mismatch(self, x, step: float = 1e-3) -> float:
        """Largest ``|w'(x) - FD(w)(x)|`` relative to ``max(1, |w'|)``."""
        x = np.asarray(x, dtype=float)
        fd = central_derivative(self.w, x, step)
        wp = self.derivative(x)
        return float(np.max(np.abs(wp - fd) / np.maximum(1.0, np.abs(wp))))


@dataclass(frozen=True)
class GeneratingFunction:
    """Generating function ``f`` of a second-order transformation.

    Give ``d`` for a general step, or ``c`` alone for the reducible case
    (then ``d = -c**2/4``).  Missing derivatives fall back to finite
    differences.  Every evaluation checks ``|f| >= floor``.
    """

    f: Callable
    f_prime: Optional[Callable]
    f_double_prime: Optional[Callable]
    domain: Interval
    d: Optional[float] = None
    c: Optional[float] = None
    floor: float = SINGULARITY_FLOOR
    fd_step: float = 1e-3
    label: str = "f"

    def __post_init__(self):
        f, step = self.f, self.fd_step
        if self.f_prime is None:
            object.__setattr__(self, "f_prime", lambda x: central_derivative(f, x, step))
        if self.f_double_prime is None:
            fp = self.f_prime
            object.__setattr__(
                self, "f_double_prime", lambda x: central_derivative(fp, x, step)
            )
        if self.d is None:
            if self.c is None:
                raise ValueError("either d or c must be given")
            object.__setattr__(self, "d", -0.25 * float(self.c) ** 2)
        elif self.c is not None and not np.isclose(self.d, -0.25 * self.c**2, rtol=1e-12, atol=1e-14):
            raise ValueError(f"d={self.d} is inconsistent with c={self.c} (need d = -c^2/4)")

    @property
    def is_reducible(self) -> bool:
        return self.c is not None

    def values(self, x):
        """Return ``(f, f', f'')`` at ``x``; raises SingularGenerator if
        ``|f|`` drops below the floor anywhere."""
        x = np.asarray(x, dtype=float)
        f = _as_float_array(self.f(x), x)
        small = np.abs(f) < self.floor
        if np.any(small):
            where = np.atleast_1d(x)[np.atleast_1d(small)][0] if np.ndim(x) else float(x)
            raise SingularGenerator(
                f"|{self.label}| < {self.floor:g} at x = {float(where):.17g}"
            )
        return f, _as_float_array(self.f_prime(x), x), _as_float_array(self.f_double_prime(x), x)


def partner_pair_first_order(w: Superpotential, shift: float = 0.0):
    """``(V, V~) = (W**2 - W' + shift, W**2 + W' + shift)``."""

    def v(x):
        return w(x) ** 2 - w.derivative(x) + shift

    def vt(x):
        return w(x) ** 2 + w.derivative(x) + shift

    return Potential(v, w.domain, "V"), Potential(vt, w.domain, "V~")


def _second_order_common(g: GeneratingFunction, x):
    f, fp, fpp = g.values(x)
    return f, fp, f**2 + fpp / (2 * f) - (fp / (2 * f)) ** 2 - g.d / (4 * f**2)


def partner_pair_second_order(g: GeneratingFunction, shift: float = 0.0):
    """Potentials intertwined by a second-order supercharge built on ``g``.

    Returns ``(V, V~, b)`` where ``V~ - V == 4 f'`` and ``b`` is the
    zeroth-order coefficient of ``q+ = d2 - 2 f d + b``.
    """

    def v(x):
        _, fp, common = _second_order_common(g, x)
        return common - 2 * fp + shift

    def vt(x):
        _, fp, common = _second_order_common(g, x)
        return common + 2 * fp + shift

    def b(x):
        f, fp, fpp = g.values(x)
        return f**2 - fp - fpp / (2 * f) + (fp / (2 * f)) ** 2 + g.d / (4 * f**2)

    return Potential(v, g.domain, "V"), Potential(vt, g.domain, "V~"), b


def reducible_superpotentials(g: GeneratingFunction):
    """Split a reducible generating function into ``(W, W~)``.

    ``W + W~ == 2f`` and ``W**2 + W' == W~**2 - W~' + c``.
    """
    if not g.is_reducible:
        raise ValueError("reducible_superpotentials needs a generating function with c set")
    c = float(g.c)

    def ratio(x):
        f, fp, _ = g.values(x)
        return (2 * fp - c) / (4 * f)

    def ratio_prime(x):
        f, fp, fpp = g.values(x)
        return (2 * fpp * f - (2 * fp - c) * fp) / (4 * f**2)

    w = Superpotential(
        lambda x: g.f(x) - ratio(x),
        lambda x: g.f_prime(x) - ratio_prime(x),
        g.domain,
        "W",
    )
    wt = Superpotential(
        lambda x: g.f(x) + ratio(x),
        lambda x: g.f_prime(x) + ratio_prime(x),
        g.domain,
        "W~",
    )
    return w, wt


# Convenience constructors used by the catalog and the tests.

def constant_potential(value: float, domain: Interval, label: str = "V") -> Potential:
    return Potential(lambda x: np.full(np.shape(x), float(value)), domain, label)


def polynomial_generating_function(coefficients, domain: Interval, *, d=None, c=None) -> GeneratingFunction:
    """``f(x) = sum(coefficients[i] * x**i)`` with exact derivatives."""
    p = np.polynomial.Polynomial(coefficients)
    dp, ddp = p.deriv(1), p.deriv(2)
    return GeneratingFunction(p, dp, ddp, domain, d=d, c=c, label="f")
