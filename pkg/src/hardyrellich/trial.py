"""Quadrature of the approximating sequences and of the one-dimensional identities.

The trial functions are u_eps = r^(beta+eps) g(r) phi_l with beta = -(N+m-4)/2,
g a cutoff equal to 1 on [0, 1] and 0 beyond 2.  On (0, 1) every radial
integral is a pure power and is done in closed form; only [1, 2] goes through
Gauss-Legendre quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import Parameters, eigenvalue_ck, validate_parameters
from .profiles import RadialProfile
from .quadrature import integrate

DEFAULT_TOL = 1e-13


class ExtrapolationError(RuntimeError):
    """Raised when the quotients do not vary monotonically with eps."""


def cutoff_eval(r):
    """Quintic smoothstep cutoff: returns ``(g, g', g'')``, C^2 at r = 1 and r = 2."""
    r = np.asarray(r, dtype=float)
    t = np.clip(r - 1.0, 0.0, 1.0)
    mid = (r > 1.0) & (r < 2.0)
    g = 1.0 - (6 * t**5 - 15 * t**4 + 10 * t**3)
    dg = np.where(mid, -(30 * t**4 - 60 * t**3 + 30 * t**2), 0.0)
    d2g = np.where(mid, -(120 * t**3 - 180 * t**2 + 60 * t), 0.0)
    return g, dg, d2g


@dataclass(frozen=True)
class TrialSpec:
    params: Parameters
    l: int
    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.l < 0:
            raise ValueError(f"degree must be >= 0, got {self.l}")
        if self.params.N == 1 and self.l != 0:
            raise ValueError("N = 1 has no angular modes; degree must be 0")

    @classmethod
    def make(cls, N, m, l, eps):
        return cls(validate_parameters(N, m), int(l), float(eps))

    @property
    def exponent(self) -> float:
        return self.params.beta + self.eps

    @property
    def c_l(self) -> float:
        return 0.0 if self.params.N == 1 else eigenvalue_ck(self.params.N, self.l)


def trial_eval(spec: TrialSpec, r):
    """``(U, U', U'')`` of the radial trial profile at ``r > 0``."""
    r = np.asarray(r, dtype=float)
    a = spec.exponent
    g, dg, d2g = cutoff_eval(r)
    p0 = r**a
    p1 = a * r ** (a - 1)
    p2 = a * (a - 1) * r ** (a - 2)
    return p0 * g, p1 * g + p0 * dg, p2 * g + 2 * p1 * dg + p0 * d2g


@dataclass(frozen=True)
class RadialIntegrals:
    """J0 = int U^2 r^(N+m-5), J1 = int U'^2 r^(N+m-3), J2 = int U''^2 r^(N+m-1)."""

    J0: float
    J1: float
    J2: float
    err0: float
    err1: float
    err2: float
    inner: tuple  # closed-form (0, 1) parts, same order


def _weighted_squares(N, m, derivs, r):
    u, du, d2u = derivs
    return np.stack([
        u**2 * r ** (N + m - 5),
        du**2 * r ** (N + m - 3),
        d2u**2 * r ** (N + m - 1),
    ])


def radial_integrals(spec: TrialSpec, tol: float = DEFAULT_TOL) -> RadialIntegrals:
    N, m = spec.params.N, spec.params.m
    a, eps = spec.exponent, spec.eps
    # on (0, 1) each weighted integrand is a constant times r^(2 eps - 1)
    inner = (1 / (2 * eps), a * a / (2 * eps), (a * (a - 1)) ** 2 / (2 * eps))
    outer, err = integrate(
        lambda r: _weighted_squares(N, m, trial_eval(spec, r), r), 1.0, 2.0, tol
    )
    J = np.add(inner, outer)
    # closed forms carry only rounding error
    err = err + np.finfo(float).eps * np.abs(J)
    return RadialIntegrals(*J, *err, inner=inner)


def asymptotic_leading(spec: TrialSpec) -> dict:
    a, eps = spec.exponent, spec.eps
    return {
        "J0_lead": 1 / (2 * eps),
        "J1_lead": a * a / (2 * eps),
        "J2_lead": (a * (a - 1)) ** 2 / (2 * eps),
    }


def mode_coefficients(N, m, c):
    """Coefficients of J1 and J0 in the mode-c part of int |Delta u|^2 |x|^m."""
    return 2 * c + (N - 1) * (1 - m), c * c - c * (m - 2) * (N + m - 4)


@dataclass(frozen=True)
class QuadratureResult:
    numerator: float
    denominator: float
    quotient: float
    error: float


def _quotient(N, m, c, J0, J1, J2, e0=0.0, e1=0.0, e2=0.0) -> QuadratureResult:
    first, zeroth = mode_coefficients(N, m, c)
    num = J2 + first * J1 + zeroth * J0
    q = num / J1
    err_num = e2 + abs(first) * e1 + abs(zeroth) * e0
    return QuadratureResult(num, J1, q, (err_num + abs(q) * e1) / J1)


def rayleigh_quotient(spec: TrialSpec, tol: float = DEFAULT_TOL) -> QuadratureResult:
    J = radial_integrals(spec, tol)
    p = spec.params
    return _quotient(p.N, p.m, spec.c_l, J.J0, J.J1, J.J2, J.err0, J.err1, J.err2)


def richardson(eps, values):
    """Polynomial extrapolation of values(eps) to eps = 0 (Neville's scheme).

    Returns ``(estimate, error_estimate)``; the error estimate is the change
    contributed by the last point.
    """
    x = np.asarray(eps, dtype=float)
    p = np.asarray(values, dtype=float).copy()
    n = len(x)
    if n < 2:
        raise ValueError("need at least two points to extrapolate")
    prev_top = p[-1]
    for j in range(1, n):
        prev_top = p[-1]
        # p[i] now interpolates points i-j .. i
        for i in range(n - 1, j - 1, -1):
            p[i] = (x[i - j] * p[i] - x[i] * p[i - 1]) / (x[i - j] - x[i])
    return float(p[-1]), float(abs(p[-1] - prev_top))


def limit_extrapolate(N, m, l, eps_list, tol=DEFAULT_TOL) -> float:
    """Limit of the trial Rayleigh quotients as eps -> 0."""
    return limit_extrapolate_detail(N, m, l, eps_list, tol)["limit"]


def limit_extrapolate_detail(N, m, l, eps_list, tol=DEFAULT_TOL) -> dict:
    """Extrapolate the trial quotients R(eps) = num(eps) / den(eps) to eps = 0.

    Both integrals blow up like 1/(2 eps) with an O(1) remainder, and the
    remainder makes R(eps) itself a poor polynomial in eps (the O(eps)
    coefficient is of size remainder / leading term).  The scaled integrals
    2 eps num and 2 eps den are smooth in eps, so each is Richardson-
    extrapolated on its own and the limits are divided.
    """
    eps = [float(e) for e in eps_list]
    if len(eps) < 2 or any(e <= 0 for e in eps):
        raise ValueError("need at least two positive eps values")
    if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise ValueError("eps values must be strictly decreasing")
    results = [rayleigh_quotient(TrialSpec.make(N, m, l, e), tol) for e in eps]
    q = np.array([r.quotient for r in results])
    noise = 1e3 * max(tol, max(r.error for r in results)) * max(1.0, np.max(np.abs(q)))
    signs = {np.sign(s) for s in np.diff(q) if abs(s) > noise}
    if len(signs) > 1:
        raise ExtrapolationError(
            f"trial quotients {q.tolist()} are not monotone in eps; tighten tol"
        )
    num, num_err = richardson(eps, [2 * e * r.numerator for e, r in zip(eps, results)])
    den, den_err = richardson(eps, [2 * e * r.denominator for e, r in zip(eps, results)])
    limit = num / den
    err = (num_err + abs(limit) * den_err) / abs(den)
    return {"limit": limit, "error": err, "eps": eps, "quotients": q.tolist()}


# --- identities for compactly supported profiles -------------------------------


def profile_moments(N, m, profile: RadialProfile, tol=DEFAULT_TOL, extra=False):
    """J0, J1, J2 of a compactly supported profile; with ``extra`` also
    int (Delta_r u)^2 r^(N+m-1) and int (Delta_r u) u r^(N+m-3)."""

    def integrand(r):
        u, du, d2u = profile.derivatives(r)
        rows = [
            u**2 * r ** (N + m - 5),
            du**2 * r ** (N + m - 3),
            d2u**2 * r ** (N + m - 1),
        ]
        if extra:
            lap = d2u + (N - 1) / r * du
            rows += [lap**2 * r ** (N + m - 1), lap * u * r ** (N + m - 3)]
        return np.stack(rows)

    vals, _ = integrate(integrand, profile.a, profile.b, tol, breakpoints=profile.breakpoints)
    return vals


def _relative(residual, *terms):
    scale = max(abs(t) for t in terms)
    return 0.0 if scale == 0 else abs(residual) / scale


def ibp_identity_check(N, m, profile: RadialProfile, tol=DEFAULT_TOL) -> dict:
    """Residuals of the two integration-by-parts identities behind the mode decomposition.

    first:  int (Delta_r u)^2 r^(N+m-1) = (N-1)(1-m) J1 + J2
    second: int (Delta_r u) u r^(N+m-3) = -J1 + (N+m-4)(m-2)/2 J0
    """
    J0, J1, J2, lap2, lapu = profile_moments(N, m, profile, tol, extra=True)
    t1 = (N - 1) * (1 - m) * J1
    t2 = (N + m - 4) * (m - 2) / 2 * J0
    return {
        "residual_1": _relative(lap2 - t1 - J2, lap2, t1, J2),
        "residual_2": _relative(lapu + J1 - t2, lapu, J1, t2),
    }


def onedim_hardy_check(N, m, profile, tol=DEFAULT_TOL) -> dict:
    """Ratios J2/J1 and J1/J0 against the weighted 1-D Hardy constants.

    ``profile`` is a compactly supported :class:`RadialProfile` or a
    :class:`TrialSpec` (trial profile reaching down to the origin).
    """
    if isinstance(profile, TrialSpec):
        J = radial_integrals(profile, tol)
        J0, J1, J2 = J.J0, J.J1, J.J2
    else:
        J0, J1, J2 = profile_moments(N, m, profile, tol)
    if J0 == 0 or J1 == 0:
        raise ValueError("profile is identically zero; ratios undefined")
    return {
        "ratio_1": J2 / J1,
        "bound_1": ((N + m - 2) / 2) ** 2,
        "ratio_2": J1 / J0,
        "bound_2": ((N + m - 4) / 2) ** 2,
    }
