"""Compactly supported radial test profiles with closed-form derivatives.

Each profile vanishes outside ``[a, b]`` with ``0 < a < b`` and is at least
twice continuously differentiable, so integration by parts in r produces no
boundary terms.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import BSpline


class RadialProfile:
    a: float
    b: float

    @property
    def breakpoints(self):
        return (self.a, self.b)

    def derivatives(self, r):
        """Return ``(u, u', u'')`` at ``r``."""
        raise NotImplementedError


class PolynomialBump(RadialProfile):
    """u(r) = scale * ((r-a)(b-r))^power on [a, b], zero elsewhere."""

    def __init__(self, a, b, power=4, scale=1.0):
        if not 0 < a < b:
            raise ValueError(f"need 0 < a < b, got a={a}, b={b}")
        if power < 3:
            raise ValueError("power >= 3 keeps the profile C^2 across the support ends")
        self.a, self.b = float(a), float(b)
        self.power, self.scale = int(power), float(scale)

    def derivatives(self, r):
        # factored form; the expanded polynomial loses ~1e-12 to cancellation
        r = np.asarray(r, dtype=float)
        p, s = self.power, self.scale
        inside = (r > self.a) & (r < self.b)
        q = np.where(inside, (r - self.a) * (self.b - r), 0.0)
        dq = self.a + self.b - 2 * r
        u = s * q**p
        du = s * p * q ** (p - 1) * dq
        d2u = s * p * ((p - 1) * q ** (p - 2) * dq**2 - 2 * q ** (p - 1))
        return u, np.where(inside, du, 0.0), np.where(inside, d2u, 0.0)


class SplineBump(RadialProfile):
    """Quintic B-spline on [a, b] whose first and last three coefficients vanish."""

    degree = 5

    def __init__(self, a, b, interior_coefficients):
        if not 0 < a < b:
            raise ValueError(f"need 0 < a < b, got a={a}, b={b}")
        c = np.asarray(interior_coefficients, dtype=float)
        k = self.degree
        coeffs = np.concatenate([np.zeros(3), c, np.zeros(3)])
        n_interior = len(coeffs) - k - 1
        if n_interior < 0:
            raise ValueError("too few coefficients for a quintic spline")
        inner = np.linspace(a, b, n_interior + 2)[1:-1]
        knots = np.concatenate([np.full(k + 1, a), inner, np.full(k + 1, b)])
        self.a, self.b = float(a), float(b)
        self._knots = inner
        self.spline = BSpline(knots, coeffs, k, extrapolate=False)
        self._d1 = self.spline.derivative(1)
        self._d2 = self.spline.derivative(2)

    @property
    def breakpoints(self):
        return (self.a, *self._knots, self.b)

    def derivatives(self, r):
        r = np.asarray(r, dtype=float)
        out = []
        for s in (self.spline, self._d1, self._d2):
            v = s(r)
            out.append(np.nan_to_num(v, nan=0.0))
        return tuple(out)


class ZeroProfile(RadialProfile):
    def __init__(self, a=1.0, b=2.0):
        self.a, self.b = float(a), float(b)

    def derivatives(self, r):
        z = np.zeros_like(np.asarray(r, dtype=float))
        return z, z.copy(), z.copy()


def random_spline_bump(rng, a=None, b=None, n_coefficients=None):
    """Draw a random C^2 bump; support and shape come from ``rng`` unless given."""
    if a is None:
        a = float(rng.uniform(0.2, 1.5))
    if b is None:
        b = a * float(rng.uniform(1.5, 6.0))
    if n_coefficients is None:
        n_coefficients = int(rng.integers(2, 8))
    return SplineBump(a, b, rng.normal(size=n_coefficients))
