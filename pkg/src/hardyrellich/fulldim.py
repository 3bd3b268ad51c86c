"""Full-dimensional check of the spherical-harmonic reduction for N = 2, 3.

A test function u = U(r) phi_l(sigma) with a zonal harmonic phi_l is
integrated directly over R^N (radial x angular tensor quadrature).  Its
Laplacian is assembled pointwise from the polar/spherical form of Delta, with
the angular part differentiated numerically from samples rather than taken
from the eigenvalue c_l, and compared with the per-mode radial expressions.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import legendre as npleg

from .constants import eigenvalue_ck, validate_parameters
from .profiles import RadialProfile
from .quadrature import integrate
from .trial import DEFAULT_TOL, mode_coefficients


def _check_dim(N):
    if N not in (2, 3):
        raise ValueError(f"zonal harmonics implemented for N in {{2, 3}}, got N={N}")


def legendre_p(l, x):
    """P_l(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p_prev, p = np.ones_like(x), x.copy()
    if l == 0:
        return p_prev
    for n in range(1, l):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
    return p


def zonal_eval(N, l, theta):
    """Unit-norm zonal harmonic of degree ``l`` on S^(N-1) at polar angle ``theta``."""
    _check_dim(N)
    theta = np.asarray(theta, dtype=float)
    if N == 2:
        if l == 0:
            return np.full_like(theta, 1 / math.sqrt(2 * math.pi))
        return np.cos(l * theta) / math.sqrt(math.pi)
    return math.sqrt((2 * l + 1) / (4 * math.pi)) * legendre_p(l, np.cos(theta))


def angular_rule(N, n):
    """Nodes (polar angles) and weights integrating over S^(N-1)."""
    _check_dim(N)
    if N == 2:
        theta = 2 * math.pi * np.arange(n) / n
        return theta, np.full(n, 2 * math.pi / n)
    x, w = npleg.leggauss(n)
    return np.arccos(x), 2 * math.pi * w


def angular_laplacian(N, values):
    """Laplace-Beltrami operator applied to zonal samples at ``angular_rule`` nodes.

    N = 2: spectral differentiation of the periodic samples.  N = 3: the
    samples are projected onto Legendre polynomials in cos(theta) with the
    Gauss rule, and (1 - x^2) f'' - 2 x f' is evaluated from that series.
    """
    _check_dim(N)
    values = np.asarray(values, dtype=float)
    n = len(values)
    if N == 2:
        freq = np.fft.fftfreq(n, d=1.0 / n)
        return np.real(np.fft.ifft(-(freq**2) * np.fft.fft(values)))
    x, w = npleg.leggauss(n)
    degrees = np.arange(n)
    basis = npleg.legvander(x, n - 1)
    coeffs = (basis * w[:, None]).T @ values * (2 * degrees + 1) / 2
    d1 = npleg.legval(x, npleg.legder(coeffs, 1))
    d2 = npleg.legval(x, npleg.legder(coeffs, 2))
    return (1 - x**2) * d2 - 2 * x * d1


def _n_angular(l):
    return max(4 * l + 8, 16)


def gram_matrix(N, lmax, n=None):
    """Angular inner products of zonal harmonics of degree 0..lmax."""
    n = n or _n_angular(lmax)
    theta, w = angular_rule(N, n)
    Y = np.array([zonal_eval(N, l, theta) for l in range(lmax + 1)])
    return (Y * w) @ Y.T


def eigenrelation_residual(N, l, n=None) -> float:
    """max |Delta_S phi + c_l phi| relative to max |phi| (times c_l when nonzero)."""
    n = n or _n_angular(l)
    theta, _ = angular_rule(N, n)
    phi = zonal_eval(N, l, theta)
    lap = angular_laplacian(N, phi)
    c = eigenvalue_ck(N, l)
    scale = np.max(np.abs(phi)) * max(c, 1.0)
    return float(np.max(np.abs(lap + c * phi)) / scale)


def fulldim_compare(N, m, l, profile: RadialProfile, tol=DEFAULT_TOL) -> dict:
    _check_dim(N)
    p = validate_parameters(N, m)
    c = eigenvalue_ck(N, l)
    theta, w_ang = angular_rule(N, _n_angular(l))
    phi = zonal_eval(N, l, theta)
    lap_phi = angular_laplacian(N, phi)
    first, zeroth = mode_coefficients(N, p.m, c)

    def integrand(r):
        U, dU, d2U = profile.derivatives(r)
        rr = r[:, None]
        lap_u = (d2U[:, None] + (N - 1) / rr * dU[:, None]) * phi + U[:, None] * lap_phi / rr**2
        radial_grad = dU[:, None] * phi
        return np.stack([
            (lap_u**2 @ w_ang) * r ** (m + N - 1),
            (radial_grad**2 @ w_ang) * r ** (m + N - 3),
            U**2 * r ** (N + m - 5),
            dU**2 * r ** (N + m - 3),
            d2U**2 * r ** (N + m - 1),
        ])

    vals, _ = integrate(integrand, profile.a, profile.b, tol, breakpoints=profile.breakpoints)
    lhs_full, rhs_full, J0, J1, J2 = vals
    lhs_dec = J2 + first * J1 + zeroth * J0
    rhs_dec = J1

    def gap(a, b):
        s = max(abs(a), abs(b))
        return 0.0 if s == 0 else abs(a - b) / s

    return {
        "lhs_full": float(lhs_full),
        "lhs_decomposed": float(lhs_dec),
        "rhs_full": float(rhs_full),
        "rhs_decomposed": float(rhs_dec),
        "lhs_gap": gap(lhs_full, lhs_dec),
        "rhs_gap": gap(rhs_full, rhs_dec),
    }
