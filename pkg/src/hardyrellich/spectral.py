"""Finite-difference eigenvalue oracle for the per-mode Rayleigh quotients.

For a spherical-harmonic mode of degree k the inequality reduces to comparing

    Q_k[v] = int v''^2 r^(N+m-1) + (2c_k + (N-1)(1-m)) int v'^2 r^(N+m-3)
             + (c_k^2 - c_k (m-2)(N+m-4)) int v^2 r^(N+m-5)
    D[v]   = int v'^2 r^(N+m-3)

and the best constant is the smallest generalized eigenvalue over all modes.
Writing r = e^t and v = r^beta w(t) with beta = -(N+m-4)/2 removes every
power weight:

    D[v]   = int (w' + beta w)^2 dt
    Q_k[v] = int (w'' + (2 beta - 1) w' + beta (beta - 1) w)^2 dt + ...

so the forms are discretized with constant-coefficient centred differences
on a uniform t grid.  The two outermost nodes at each end are pinned to zero
(v = v' = 0), which keeps the discrete minimum an upper approximation of the
continuous one up to O(h^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .constants import (
    Branch,
    Parameters,
    classify_regime,
    eigenvalue_ck,
    sharp_constant,
    threshold_k,
    validate_parameters,
)
from .trial import mode_coefficients

MIN_POINTS = 50
EIG_RTOL = 1e-8
REFERENCE_T = 15.0
REFERENCE_POINTS = 4000


class EigenError(RuntimeError):
    """Raised when the pencil cannot be factorized or the minimum cannot be certified."""


@dataclass(frozen=True)
class GridSpec:
    t_min: float
    t_max: float
    points: int

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError(f"need t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if self.points < MIN_POINTS:
            raise ValueError(f"need at least {MIN_POINTS} points, got {self.points}")

    @classmethod
    def symmetric(cls, T=REFERENCE_T, points=REFERENCE_POINTS):
        return cls(-float(T), float(T), int(points))

    @property
    def h(self) -> float:
        return (self.t_max - self.t_min) / (self.points - 1)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.points)

    @property
    def unknowns(self) -> np.ndarray:
        """t values of the free nodes (two pinned nodes removed at each end)."""
        return self.t[2:-2]

    def refined(self) -> "GridSpec":
        """Window doubled about its centre at the same spacing."""
        c = (self.t_min + self.t_max) / 2
        half = self.t_max - c
        return GridSpec(c - 2 * half, c + 2 * half, 2 * (self.points - 1) + 1)

    def to_dict(self) -> dict:
        return {"t_min": self.t_min, "t_max": self.t_max, "points": self.points}


REFERENCE_GRID = GridSpec.symmetric()


@dataclass(frozen=True)
class ModeProblem:
    params: Parameters
    k: int
    grid: GridSpec

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"mode must be >= 0, got {self.k}")
        if self.params.N == 1 and self.k != 0:
            raise ValueError("N = 1 has a single (radial) mode k = 0")

    @classmethod
    def make(cls, N, m, k, grid):
        return cls(validate_parameters(N, m), int(k), grid)

    @property
    def c_k(self) -> float:
        return 0.0 if self.params.N == 1 else eigenvalue_ck(self.params.N, self.k)


def _operators(grid: GridSpec, beta: float):
    """Difference operators from the free unknowns to the nodes 1..P-2.

    Returns (L, M, I) where L w ~ w'' + (2b-1) w' + b(b-1) w, M w ~ w' + b w,
    and I samples w itself.
    """
    P, h = grid.points, grid.h
    n = P - 4
    if n < 3:
        raise ValueError("grid too coarse for second differences")
    rows = P - 2
    # columns of the padded vector that hold unknowns
    embed = sp.eye(P, n, k=-2, format="csr")
    d1 = sp.diags([-1.0, 0.0, 1.0], [0, 1, 2], shape=(rows, P)) / (2 * h)
    d2 = sp.diags([1.0, -2.0, 1.0], [0, 1, 2], shape=(rows, P)) / h**2
    ident = sp.diags([1.0], [1], shape=(rows, P))
    L = (d2 + (2 * beta - 1) * d1 + beta * (beta - 1) * ident) @ embed
    M = (d1 + beta * ident) @ embed
    I = ident @ embed
    return L.tocsr(), M.tocsr(), I.tocsr()


def assemble_forms(problem: ModeProblem):
    """Symmetric pentadiagonal matrices (A, B) with w.A.w ~ Q_k and w.B.w ~ D."""
    p = problem.params
    h = problem.grid.h
    L, M, I = _operators(problem.grid, p.beta)
    first, zeroth = mode_coefficients(p.N, p.m, problem.c_k)
    A = h * (L.T @ L + first * (M.T @ M) + zeroth * (I.T @ I))
    B = h * (M.T @ M)
    return A.tocsc(), B.tocsc()


def hardy_pencil(N, m, grid: GridSpec, which: int):
    """Discretized pencils of the weighted 1-D Hardy inequalities.

    ``which=1``: int v''^2 r^(N+m-1) against int v'^2 r^(N+m-3);
    ``which=2``: int v'^2 r^(N+m-3) against int v^2 r^(N+m-5).
    """
    p = validate_parameters(N, m)
    L, M, I = _operators(grid, p.beta)
    h = grid.h
    if which == 1:
        return (h * (L.T @ L)).tocsc(), (h * (M.T @ M)).tocsc()
    if which == 2:
        return (h * (M.T @ M)).tocsc(), (h * (I.T @ I)).tocsc()
    raise ValueError("which must be 1 or 2")


def sample_profile(problem: ModeProblem, derivs_fn) -> np.ndarray:
    """Map a radial profile v(r) to the discrete unknowns w = r^(-beta) v."""
    t = problem.grid.unknowns
    r = np.exp(t)
    v = derivs_fn(r)[0]
    return v * np.exp(-problem.params.beta * t)


def _upper_banded(S):
    S = sp.coo_matrix(S)
    bandwidth = int(np.max(np.abs(S.col - S.row), initial=0))
    S = S.tocsr()
    ab = np.zeros((bandwidth + 1, S.shape[0]))
    for d in range(bandwidth + 1):
        ab[bandwidth - d, d:] = S.diagonal(d)
    return ab


def _is_positive_definite(S) -> bool:
    try:
        scipy.linalg.cholesky_banded(_upper_banded(S), lower=False)
    except np.linalg.LinAlgError:
        return False
    return True


def min_generalized_eig(A, B) -> float:
    """Smallest lambda with A x = lambda B x for symmetric A and positive-definite B.

    Small pencils are solved densely.  Large banded ones use shift-invert
    Lanczos below the spectrum; the result is certified as the minimum by a
    banded Cholesky of A - mu B just below it (Sylvester's law of inertia).
    """
    n = A.shape[0]
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square and of equal size")
    if n <= 200:
        Ad = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
        Bd = B.toarray() if sp.issparse(B) else np.asarray(B, dtype=float)
        try:
            return float(scipy.linalg.eigh(Ad, Bd, eigvals_only=True, subset_by_index=[0, 0])[0])
        except np.linalg.LinAlgError as exc:
            raise EigenError(f"dense factorization failed: {exc}") from exc

    A = sp.csc_matrix(A)
    B = sp.csc_matrix(B)
    if not _is_positive_definite(B):
        raise EigenError("B is not positive definite")
    sigma = -1e-3
    for _ in range(6):
        try:
            lam = spla.eigsh(
                A, k=1, M=B, sigma=sigma, which="LM", tol=EIG_RTOL * 1e-2,
                return_eigenvectors=False,
            )[0]
        except (RuntimeError, spla.ArpackError) as exc:
            raise EigenError(f"shift-invert Lanczos failed: {exc}") from exc
        mu = lam - 1e-6 * max(abs(lam), 1.0)
        if _is_positive_definite(A - mu * B):
            return float(lam)
        # an eigenvalue lies below the one found; shift further down
        sigma = min(sigma, lam) - 2 * max(abs(lam), 1.0)
    raise EigenError("could not certify the smallest eigenvalue")


def mode_infimum(N, m, k) -> float:
    """Exact infimum of Q_k / D over the whole half-line.

    In the log variable the pencil has constant coefficients, so the infimum
    is the minimum of its Fourier symbol: with s = xi^2 + beta^2,
    ((N-m)/2)^2 - beta^2 + 2 c_k + s + B/s over s >= beta^2, where B is the
    zero-order coefficient.
    """
    p = validate_parameters(N, m)
    c = 0.0 if p.N == 1 else eigenvalue_ck(p.N, k)
    _, zeroth = mode_coefficients(p.N, p.m, c)
    b2 = p.beta**2
    base = p.upper_bound - b2 + 2 * c
    if zeroth <= 0:
        if b2 == 0:
            if zeroth < 0:
                return -math.inf
            return base
        return base + b2 + zeroth / b2
    s = max(b2, math.sqrt(zeroth))
    return base + s + zeroth / s


@dataclass(frozen=True)
class SpectralResult:
    per_mode: list
    overall_min: float
    argmin_mode: int
    grid: GridSpec = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "per_mode": [{"k": k, "value": v} for k, v in self.per_mode],
            "overall_min": self.overall_min,
            "argmin_mode": self.argmin_mode,
            "grid": self.grid.to_dict(),
        }


def default_kmax(N, m) -> int:
    if N == 1:
        return 0
    if classify_regime(N, m).branch is Branch.HIGH_BAD:
        return threshold_k(N, m) + 3
    return 5


def oracle_constant(N, m, K_max=None, grid: GridSpec = REFERENCE_GRID) -> SpectralResult:
    p = validate_parameters(N, m)
    if K_max is None:
        K_max = default_kmax(p.N, p.m)
    if p.N >= 2:
        need = 3
        if classify_regime(p.N, p.m).branch is Branch.HIGH_BAD:
            need = threshold_k(p.N, p.m) + 2
        if K_max < need:
            raise ValueError(f"K_max={K_max} too small for (N={N}, m={m}); need >= {need}")
        modes = range(K_max + 1)
    else:
        modes = [0]
    per_mode = []
    for k in modes:
        A, B = assemble_forms(ModeProblem(p, k, grid))
        per_mode.append((k, min_generalized_eig(A, B)))
    k_best, v_best = min(per_mode, key=lambda kv: (kv[1], kv[0]))
    return SpectralResult(per_mode, v_best, k_best, grid)


def convergence_study(N, m, grids, K_max=None) -> list:
    """Oracle minimum and gap to the closed form for each grid.

    Each row after the first also carries an estimate extrapolated from the
    previous row under the assumption gap ~ 1/T^2 (T the window half-width).
    """
    if len(grids) < 2:
        raise ValueError("need at least two grids")
    exact = sharp_constant(N, m).value
    rows = []
    for grid in grids:
        res = oracle_constant(N, m, K_max, grid)
        row = {
            "grid": grid.to_dict(),
            "overall_min": res.overall_min,
            "argmin_mode": res.argmin_mode,
            "gap": res.overall_min - exact,
            "extrapolated": None,
        }
        if rows:
            T1 = (rows[-1]["grid"]["t_max"] - rows[-1]["grid"]["t_min"]) / 2
            T2 = (grid.t_max - grid.t_min) / 2
            if T2 != T1:
                l1, l2 = rows[-1]["overall_min"], res.overall_min
                row["extrapolated"] = (T2**2 * l2 - T1**2 * l1) / (T2**2 - T1**2)
        rows.append(row)
    return rows
