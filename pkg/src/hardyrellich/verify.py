"""Built-in verification batteries run by ``hardyrellich verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import constants as cc
from .fulldim import eigenrelation_residual, fulldim_compare, gram_matrix
from .profiles import PolynomialBump, random_spline_bump
from .spectral import (
    REFERENCE_GRID,
    GridSpec,
    hardy_pencil,
    min_generalized_eig,
    oracle_constant,
)
from .trial import (
    DEFAULT_TOL,
    TrialSpec,
    ibp_identity_check,
    limit_extrapolate_detail,
    onedim_hardy_check,
    rayleigh_quotient,
)

# (N, m, degree): one case per regime branch plus the degenerate zero at m = N + 2
PANEL = [(5, 0.0, 0), (3, 0.0, 0), (5, -2.5, 1), (5, 8.0, 1), (2, 4.0, 1), (1, 2.0, 0)]

TRIAL_EPS = (0.004, 0.002, 0.001)
TRIAL_RTOL = 1e-4
TRIAL_ATOL_ZERO = 1e-6
INEQUALITY_SLACK = 1e-9

ORACLE_RTOL = 0.05
ORACLE_RTOL_REFINED = 0.02
# a discrete minimum may sit below the continuous one by the O(h^2) consistency error
ORACLE_UNDERSHOOT = 1e-6

IBP_RTOL = 1e-8
FULLDIM_RTOL = 1e-6
SEED = 20240901

# three weight exponents per regime for N = 2 and N = 3
FULLDIM_GRID = {
    2: {"LowBad": (0.1, 0.3, 0.5), "Middle": (1.0, 2.0, 3.0), "HighBad": (4.0, 5.0, 7.0)},
    3: {"LowBad": (-0.8, -0.5, -0.3), "Middle": (0.0, 1.0, 3.0), "HighBad": (5.0, 6.0, 8.0)},
}


@dataclass
class CaseResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        text = f"[{flag}] {self.name}: measured {self.measured:.3e} (tol {self.tolerance:.1e})"
        return f"{text} {self.detail}".rstrip()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": float(self.measured),
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
            "detail": self.detail,
        }


def closed_form(N, m, l):
    """Limit of the degree-l trial quotients."""
    if N == 1:
        return ((N - m) / 2) ** 2
    return cc.branch_constant(N, m, l)


def limit_error(value, exact):
    """Relative error, or absolute error when the exact value vanishes."""
    if exact == 0:
        return abs(value), TRIAL_ATOL_ZERO
    return abs(value - exact) / abs(exact), TRIAL_RTOL


def oracle_relative_gap(value, N, m):
    """Gap above the closed form, relative to the constant (or to ((N-m)/2)^2 if it is 0)."""
    exact = cc.sharp_constant(N, m).value
    scale = exact if exact > 0 else ((N - m) / 2) ** 2
    return (value - exact) / scale


def run_trial(eps=TRIAL_EPS, tol=DEFAULT_TOL, panel=PANEL):
    out = []
    for N, m, l in panel:
        exact = closed_form(N, m, l)
        det = limit_extrapolate_detail(N, m, l, eps, tol)
        err, bound = limit_error(det["limit"], exact)
        out.append(CaseResult(
            f"trial limit N={N} m={m:g} l={l}", err, bound, err <= bound,
            f"limit={det['limit']:.10g} closed={exact:.10g}",
        ))
        tilde = cc.sharp_constant(N, m).value
        worst = min(q - tilde for q in det["quotients"])
        out.append(CaseResult(
            f"trial inequality N={N} m={m:g} l={l}", worst, -INEQUALITY_SLACK,
            worst >= -INEQUALITY_SLACK, "min(quotient - C)",
        ))
    return out


def run_oracle(grid: GridSpec = REFERENCE_GRID, panel=PANEL, refine=True):
    out = []
    for N, m, _ in panel:
        report = cc.sharp_constant(N, m)
        res = oracle_constant(N, m, grid=grid)
        gap = oracle_relative_gap(res.overall_min, N, m)
        ok = -ORACLE_UNDERSHOOT <= gap <= ORACLE_RTOL
        out.append(CaseResult(
            f"oracle N={N} m={m:g} T={grid.t_max:g}", gap, ORACLE_RTOL, ok,
            f"oracle={res.overall_min:.8g} closed={report.value:.8g}",
        ))
        out.append(CaseResult(
            f"oracle mode N={N} m={m:g}", abs(res.argmin_mode - report.l_min), 0,
            res.argmin_mode == report.l_min, f"argmin={res.argmin_mode} l_min={report.l_min}",
        ))
        if refine:
            fine = grid.refined()
            res2 = oracle_constant(N, m, grid=fine)
            gap2 = oracle_relative_gap(res2.overall_min, N, m)
            ok2 = -ORACLE_UNDERSHOOT <= gap2 <= ORACLE_RTOL_REFINED
            out.append(CaseResult(
                f"oracle N={N} m={m:g} T={fine.t_max:g}", gap2, ORACLE_RTOL_REFINED, ok2,
                f"oracle={res2.overall_min:.8g}",
            ))
    return out


def identity_cases(count=20, seed=SEED):
    """Randomized (N, m, profile) triples spread over all regimes."""
    rng = np.random.default_rng(seed)
    cases = []
    for i in range(count):
        N = int(rng.integers(1, 7))
        lo = 2 - N
        # sample m from the admissible half-line, biased towards the interesting window
        m = float(lo + rng.uniform(0.05, N + 6))
        cases.append((N, m, random_spline_bump(rng)))
    return cases


def run_identities(count=20, seed=SEED, tol=DEFAULT_TOL):
    out = []
    for N, m, prof in identity_cases(count, seed):
        res = ibp_identity_check(N, m, prof, tol)
        worst = max(res.values())
        out.append(CaseResult(
            f"ibp N={N} m={m:.4f} support=[{prof.a:.3f},{prof.b:.3f}]", worst, IBP_RTOL,
            worst <= IBP_RTOL,
        ))
        h = onedim_hardy_check(N, m, prof, tol)
        margin = min(h["ratio_1"] - h["bound_1"], h["ratio_2"] - h["bound_2"])
        out.append(CaseResult(
            f"1-D Hardy N={N} m={m:.4f}", margin, 0.0, margin >= 0,
            "min(ratio - bound)",
        ))
    for N, m in [(5, 0.0), (3, 1.5), (2, 4.0)]:
        for which, bound in ((1, ((N + m - 2) / 2) ** 2), (2, ((N + m - 4) / 2) ** 2)):
            vals = []
            for T in (5.0, 10.0, 20.0):
                grid = GridSpec.symmetric(T, int(round(2 * T / 0.01)) + 1)
                vals.append(min_generalized_eig(*hardy_pencil(N, m, grid, which)))
            gaps = [v - bound for v in vals]
            ok = all(g > -1e-8 for g in gaps) and gaps[0] > gaps[1] > gaps[2]
            out.append(CaseResult(
                f"Hardy pencil {which} N={N} m={m:g}", gaps[-1], 0.0, ok,
                "gaps at T=5,10,20: " + ", ".join(f"{g:.3e}" for g in gaps),
            ))
    return out


def run_fulldim(tol=DEFAULT_TOL, lmax=4):
    out = []
    profiles = [PolynomialBump(0.7, 2.5), PolynomialBump(1.0, 3.0, power=5, scale=0.3)]
    for N, regimes in FULLDIM_GRID.items():
        G = gram_matrix(N, 6)
        err = float(np.max(np.abs(G - np.eye(7))))
        out.append(CaseResult(f"orthonormality N={N}", err, 1e-10, err <= 1e-10))
        res = max(eigenrelation_residual(N, l) for l in range(7))
        out.append(CaseResult(f"eigenrelation N={N}", res, 1e-6, res <= 1e-6))
        for regime, ms in regimes.items():
            for m in ms:
                assert cc.classify_regime(N, m).branch.value == regime
                for l in range(lmax + 1):
                    worst = 0.0
                    for prof in profiles:
                        r = fulldim_compare(N, m, l, prof, tol)
                        worst = max(worst, r["lhs_gap"], r["rhs_gap"])
                    out.append(CaseResult(
                        f"fulldim N={N} m={m:g} ({regime}) l={l}", worst, FULLDIM_RTOL,
                        worst <= FULLDIM_RTOL,
                    ))
    return out


SUITES = {
    "trial": run_trial,
    "oracle": run_oracle,
    "identities": run_identities,
    "fulldim": run_fulldim,
}
