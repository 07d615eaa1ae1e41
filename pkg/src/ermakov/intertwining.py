"""Coefficient form of the intertwining operators.

After replacing every ``psi''`` by ``(V - E) psi`` each supported
supercharge acts on solutions as a first-order differential expression

    psi~  = (a psi + b psi') / sqrt(norm)
    psi~' = (u psi + v psi') / sqrt(norm)

with ``u = a' + b (V - E)`` and ``v = a + b'``.  The same coefficients map
an EMP amplitude ``rho`` (solving ``rho'' = (V - E) rho + rho**-3``) to the
partner amplitude through

    norm * rho~**2 = (a rho + b rho')**2 + b**2 / rho**2,

which is the common shape of the first-order, two-step and second-order
EMP transforms.  Derivatives of ``rho~`` come from differentiating this
expression with ``rho''`` eliminated, never from finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potentials import GeneratingFunction, Superpotential, reducible_superpotentials


@dataclass(frozen=True)
class Intertwiner:
    a: np.ndarray
    b: np.ndarray
    db: np.ndarray
    d2b: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    norm: float
    # V - E of the source equation, sampled on the same points
    source_vme: np.ndarray

    def apply(self, psi, dpsi):
        """Map a Schrodinger solution; returns ``(psi~, psi~', psi~'')``."""
        s = 1.0 / np.sqrt(self.norm)
        d2psi = self.source_vme * psi
        out = (self.a * psi + self.b * dpsi) * s
        dout = (self.u * psi + self.v * dpsi) * s
        d2out = (self.du * psi + (self.u + self.dv) * dpsi + self.v * d2psi) * s
        return out, dout, d2out

    def apply_emp(self, rho, drho):
        """Map an EMP amplitude; returns ``(rho~, rho~', rho~'')``."""
        a, b, db, d2b = self.a, self.b, self.db, self.d2b
        inv = 1.0 / rho
        inv2, inv3 = inv**2, inv**3
        d2rho = self.source_vme * rho + inv3
        p = a * rho + b * drho
        dp = self.u * rho + self.v * drho + b * inv3
        d2p = (
            self.du * rho
            + (self.u + self.dv) * drho
            + self.v * d2rho
            + db * inv3
            - 3.0 * b * inv2 * inv2 * drho
        )
        s = (p**2 + (b * inv) ** 2) / self.norm
        ds = (2 * p * dp + 2 * b * db * inv2 - 2 * b**2 * drho * inv3) / self.norm
        d2s = (
            2 * dp**2
            + 2 * p * d2p
            + 2 * (db**2 + b * d2b) * inv2
            - 8 * b * db * drho * inv3
            - 2 * b**2 * d2rho * inv3
            + 6 * b**2 * drho**2 * inv2 * inv2
        ) / self.norm
        rho_t = np.sqrt(s)
        drho_t = ds / (2 * rho_t)
        d2rho_t = (d2s - 2 * drho_t**2) / (2 * rho_t)
        return rho_t, drho_t, d2rho_t


def first_order(w: Superpotential, x, energy: float) -> Intertwiner:
    """``q- = d + W`` acting at ``energy`` measured from ``V = W**2 - W'``."""
    x = np.asarray(x, dtype=float)
    wv, wp = w(x), w.derivative(x)
    zero = np.zeros_like(x)
    return Intertwiner(
        a=wv,
        b=np.ones_like(x),
        db=zero,
        d2b=zero,
        u=wv**2 - energy,
        v=wv,
        du=2 * wv * wp,
        dv=wp,
        norm=float(energy),
        source_vme=wv**2 - wp - energy,
    )


def _second_order_derivatives(f, fp, fpp, d, energy):
    du = (
        6 * f**2 * fp
        - fp * fpp / f
        + fp**3 / (2 * f**2)
        + d * fp / (2 * f**2)
        - 2 * fp * energy
    )
    dv = 4 * f * fp + fpp
    return du, dv


def second_order(g: GeneratingFunction, x, energy: float) -> Intertwiner:
    """``q- = d2 + 2f d + 2f' + b`` normalized by ``sqrt(E**2 + d)``."""
    x = np.asarray(x, dtype=float)
    f, fp, fpp = g.values(x)
    d = float(g.d)
    v30 = -2 * fp + f**2 + fpp / (2 * f) - (fp / (2 * f)) ** 2 - d / (4 * f**2)
    du, dv = _second_order_derivatives(f, fp, fpp, d, energy)
    return Intertwiner(
        a=2 * f**2 - fp - energy,
        b=2 * f,
        db=2 * fp,
        d2b=2 * fpp,
        u=2 * f**3 - fp**2 / (2 * f) - d / (2 * f) - 2 * f * energy,
        v=2 * f**2 + fp - energy,
        du=du,
        dv=dv,
        norm=energy**2 + d,
        source_vme=v30 - energy,
    )


def chain_two(g: GeneratingFunction, x, energy: float) -> Intertwiner:
    """Two reducible first-order steps ``W`` then ``W~`` as one operator.

    ``a`` and ``b`` follow the direct two-step formula in terms of ``W`` and
    ``W~``; the derivative coefficients that would need ``W''`` are taken
    from the equivalent second-order form at ``E - c/2``.
    """
    x = np.asarray(x, dtype=float)
    c = float(g.c)
    w, wt = reducible_superpotentials(g)
    wv, wp = w(x), w.derivative(x)
    wtv, wtp = wt(x), wt.derivative(x)
    f, fp, fpp = g.values(x)
    s = wv + wtv
    a = wv * s - energy
    da = wp * s + wv * (wp + wtp)
    vme = wv**2 - wp - energy
    du, dv = _second_order_derivatives(f, fp, fpp, float(g.d), energy - 0.5 * c)
    return Intertwiner(
        a=a,
        b=s,
        db=wp + wtp,
        d2b=2 * fpp,
        u=da + s * vme,
        v=a + wp + wtp,
        du=du,
        dv=dv,
        norm=energy * (energy - c),
        source_vme=vme,
    )
