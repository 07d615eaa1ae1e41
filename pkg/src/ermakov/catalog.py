"""Named potentials, superpotentials and generating functions for configs.

Potential entries accept ``"side": "V" | "partner"`` when they are built
from a superpotential, plus an optional constant ``"shift"``.

=================  ===========================================================
name               meaning
=================  ===========================================================
square_well        ``V = -1`` on ``|x| < pi/2`` (``W = tan x``); partner side
                   is ``-1 + 2 sec**2 x``
tan                ``W = scale * tan x`` on ``|x| < pi/2``
linear             ``W = slope * x + offset`` on ``[lo, hi]``
constant           ``V = value`` on ``[lo, hi]`` (potentials only)
polynomial         ``f = sum(coefficients[i] x**i)`` (generating functions)
custom-tabulated   two-column CSV ``x, value`` with cubic interpolation;
                   ``kind`` says whether the column is a potential or a
                   superpotential
=================  ===========================================================
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError
from .grid import Interval
from .potentials import (
    GeneratingFunction,
    Potential,
    Superpotential,
    constant_potential,
    partner_pair_first_order,
    polynomial_generating_function,
)
from .squarewell import DEFAULT_MARGIN, HALF_PI

SUPERPOTENTIALS = ("square_well", "tan", "linear", "custom-tabulated")
POTENTIALS = ("square_well", "tan", "linear", "constant", "custom-tabulated")
GENERATORS = ("polynomial", "constant", "tan")


def _require(spec: dict, key: str):
    if key not in spec:
        raise ConfigError(f"{spec.get('name', '?')}: missing required field {key!r}")
    return spec[key]


def _number(spec: dict, key: str, default=None) -> float:
    value = spec.get(key, default)
    if value is None:
        raise ConfigError(f"{spec.get('name', '?')}: missing required field {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    return float(value)


def _interval(spec: dict, lo: float, hi: float, margin: float) -> Interval:
    try:
        return Interval(_number(spec, "lo", lo), _number(spec, "hi", hi), _number(spec, "margin", margin))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_table(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column ``x, value`` CSV; one header line is tolerated."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"tabulated file not found: {path}")
    for skip in (0, 1):
        try:
            data = np.loadtxt(path, delimiter=",", comments="#", skiprows=skip, ndmin=2)
            break
        except ValueError:
            continue
    else:
        raise ConfigError(f"{path}: not a numeric two-column CSV")
    if data.shape[1] != 2 or data.shape[0] < 4:
        raise ConfigError(f"{path}: need at least 4 rows of exactly two columns")
    order = np.argsort(data[:, 0])
    x, y = data[order, 0], data[order, 1]
    if np.any(np.diff(x) <= 0):
        raise ConfigError(f"{path}: x values must be distinct")
    return x, y


def _tabulated_spline(spec: dict):
    x, y = load_table(_require(spec, "path"))
    spline = CubicSpline(x, y)
    return spline, _interval(spec, float(x[0]), float(x[-1]), 0.0)


def build_superpotential(spec: dict) -> Superpotential:
    name = _require(spec, "name")
    if name in ("square_well", "tan"):
        scale = 1.0 if name == "square_well" else _number(spec, "scale", 1.0)
        dom = _interval(spec, -HALF_PI, HALF_PI, DEFAULT_MARGIN)
        return Superpotential(lambda x: scale * np.tan(x), lambda x: scale / np.cos(x) ** 2, dom,
                              f"{scale:g} tan x")
    if name == "linear":
        a, b = _number(spec, "slope", 1.0), _number(spec, "offset", 0.0)
        dom = _interval(spec, -8.0, 8.0, 0.0)
        return Superpotential(lambda x: a * x + b, lambda x: np.full(np.shape(x), a), dom, "linear")
    if name == "custom-tabulated":
        spline, dom = _tabulated_spline(spec)
        deriv = spline.derivative()
        return Superpotential(spline, deriv, dom, "tabulated W")
    raise ConfigError(f"unknown superpotential {name!r}; choose from {SUPERPOTENTIALS}")


def build_potential(spec: dict) -> tuple[Potential, Superpotential | None]:
    """Return the potential and, when it comes from one, its superpotential.

    The superpotential is only returned for ``side == "V"``, i.e. when the
    potential is ``W**2 - W' (+ shift)`` and first-order transforms apply.
    """
    name = _require(spec, "name")
    side = spec.get("side", "V")
    if side not in ("V", "partner"):
        raise ConfigError(f"side must be 'V' or 'partner', got {side!r}")
    shift = _number(spec, "shift", 0.0)
    if name == "constant":
        dom = _interval(spec, -HALF_PI, HALF_PI, 0.0)
        return constant_potential(_number(spec, "value"), dom).shifted(shift), None
    if name == "custom-tabulated" and spec.get("kind", "potential") == "potential":
        spline, dom = _tabulated_spline(spec)
        return Potential(spline, dom, "tabulated V").shifted(shift), None
    if name not in POTENTIALS:
        raise ConfigError(f"unknown potential {name!r}; choose from {POTENTIALS}")
    w = build_superpotential(spec)
    v, vt = partner_pair_first_order(w, shift)
    if name == "square_well" and side == "V":
        # the well bottom is flat; only the walls are singular for W
        margin = _number(spec, "margin", 0.0)
        dom = _interval(spec, -HALF_PI, HALF_PI, margin)
        return constant_potential(-1.0 + shift, dom, "V"), w
    if side == "partner":
        return vt, None
    return v, w


def build_generating_function(spec: dict) -> GeneratingFunction:
    name = _require(spec, "name")
    d = spec.get("d")
    c = spec.get("c")
    if d is None and c is None:
        raise ConfigError("a generating function needs 'd' or 'c'")
    d = None if d is None else _number(spec, "d")
    c = None if c is None else _number(spec, "c")
    try:
        if name == "polynomial":
            coeffs = _require(spec, "coefficients")
            if not isinstance(coeffs, list) or not coeffs:
                raise ConfigError("'coefficients' must be a non-empty list")
            dom = _interval(spec, -1.0, 1.0, 0.0)
            return polynomial_generating_function([float(v) for v in coeffs], dom, d=d, c=c)
        if name == "constant":
            dom = _interval(spec, -1.0, 1.0, 0.0)
            return polynomial_generating_function([_number(spec, "value")], dom, d=d, c=c)
        if name == "tan":
            s = _number(spec, "scale", 1.0)
            dom = _interval(spec, -HALF_PI, HALF_PI, DEFAULT_MARGIN)
            return GeneratingFunction(
                lambda x: s * np.tan(x),
                lambda x: s / np.cos(x) ** 2,
                lambda x: 2 * s * np.tan(x) / np.cos(x) ** 2,
                dom, d=d, c=c, label=f"{s:g} tan x",
            )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown generating function {name!r}; choose from {GENERATORS}")
