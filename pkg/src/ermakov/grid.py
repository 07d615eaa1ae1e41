"""Integration domains, uniform grids and the small set of grid numerics
(finite differences, Simpson quadrature) shared by the other modules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy import integrate, interpolate


@dataclass(frozen=True)
class Interval:
    """A closed interval ``[lo, hi]`` with a clearance ``margin`` kept from
    both endpoints.

    The margin is how infinite walls and singular endpoints are handled:
    nothing is ever sampled in ``[lo, lo + margin)`` or ``(hi - margin, hi]``.
    """

    lo: float
    hi: float
    margin: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.margin < 0:
            raise ValueError("margin must be non-negative")
        if not self.lo + self.margin < self.hi - self.margin:
            raise ValueError(
                f"empty interval: lo={self.lo}, hi={self.hi}, margin={self.margin}"
            )

    @property
    def inner_lo(self) -> float:
        return self.lo + self.margin

    @property
    def inner_hi(self) -> float:
        return self.hi - self.margin

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.inner_lo) & (x <= self.inner_hi)))

    def with_margin(self, margin: float) -> "Interval":
        return Interval(self.lo, self.hi, margin)


@dataclass(frozen=True)
class Grid:
    """Uniform sampling of ``interval`` between its inner endpoints."""

    interval: Interval
    n_points: int = 4001

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise ValueError("a grid needs an integer n_points >= 16")

    @cached_property
    def x(self) -> np.ndarray:
        x = np.linspace(self.interval.inner_lo, self.interval.inner_hi, self.n_points)
        x.flags.writeable = False
        return x

    @property
    def spacing(self) -> float:
        iv = self.interval
        return (iv.hi - iv.lo - 2.0 * iv.margin) / (self.n_points - 1)

    @property
    def midpoint(self) -> float:
        """Centre of the interval (a grid node only for odd ``n_points``)."""
        return self.interval.midpoint

    @property
    def mid_index(self) -> int:
        """Index of the node closest to :attr:`midpoint`."""
        return int(np.argmin(np.abs(self.x - self.midpoint)))

    def sample(self, func: Callable) -> np.ndarray:
        """Evaluate ``func`` on the grid, broadcasting constants."""
        return np.broadcast_to(np.asarray(func(self.x), dtype=float), self.x.shape).copy()


def derivative(values: np.ndarray, spacing: float) -> np.ndarray:
    """Fourth-order finite-difference derivative of uniformly sampled data.

    Five-point central stencil inside, five-point one-sided stencils on the
    two outermost nodes at each end.
    """
    f = np.asarray(values, dtype=float)
    if f.size < 5:
        raise ValueError("need at least 5 samples")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / 12.0
    out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / 12.0
    out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / 12.0
    out[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / 12.0
    out[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / 12.0
    return out / spacing


def central_derivative(func: Callable, x, step: float = 1e-3):
    """Fourth-order central difference of a callable, used as the fallback
    whenever an analytic derivative is not supplied."""
    x = np.asarray(x, dtype=float)
    h = step
    return (func(x - 2 * h) - 8 * func(x - h) + 8 * func(x + h) - func(x + 2 * h)) / (12 * h)


def simpson(values: np.ndarray, spacing: float) -> float:
    return float(integrate.simpson(np.asarray(values, dtype=float), dx=spacing))


def cumulative_from(values: np.ndarray, x: np.ndarray, x0: float) -> np.ndarray:
    """Running integral of ``values`` over ``x`` measured from ``x0``.

    Composite Simpson accumulation from the left edge; the offset at ``x0``
    is taken from a cubic spline of the running integral so ``x0`` need not
    be a node.
    """
    running = integrate.cumulative_simpson(np.asarray(values, dtype=float), x=x, initial=0.0)
    offset = float(interpolate.CubicSpline(x, running)(x0))
    return running - offset
