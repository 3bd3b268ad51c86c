"""Closed-form constants for the weighted Hardy-Rellich inequality with radial derivative.

Everything here is a pure function of the dimension ``N`` and the weight
exponent ``m``.  The sharp constant is

    int |Delta u|^2 |x|^m  >=  C(N, m) int |x . grad u|^2 |x|^(m-4),

and its value depends on which of four regimes (N, m) falls in.  Prior-work
constants for the full-gradient inequality are kept alongside for comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

# relative tolerance for deciding membership on the Middle-regime boundaries
BOUNDARY_RTOL = 1e-12


class ParameterError(ValueError):
    """Raised for (N, m) pairs outside the admissible set."""


class Branch(str, enum.Enum):
    ONE_DIM = "OneDim"
    MIDDLE = "Middle"
    LOW_BAD = "LowBad"
    HIGH_BAD = "HighBad"


class ProofCase(str, enum.Enum):
    A = "A"
    B1_GOOD = "B1_good"
    B1_BAD = "B1_bad"
    B2_GOOD = "B2_good"
    B2_BAD = "B2_bad"
    N1 = "N1"


@dataclass(frozen=True)
class Parameters:
    N: int
    m: float

    @property
    def beta(self) -> float:
        """Exponent -(N+m-4)/2 of the extremal power profile."""
        return -(self.N + self.m - 4) / 2

    @property
    def upper_bound(self) -> float:
        return ((self.N - self.m) / 2) ** 2


@dataclass(frozen=True)
class Regime:
    branch: Branch
    proof_case: ProofCase


@dataclass(frozen=True)
class ConstantReport:
    params: Parameters
    value: float
    regime: Regime
    l_min: Optional[int]
    k_m: Optional[int] = None
    branch_values: list = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        """True when the constant vanishes and the inequality carries no information."""
        return self.value == 0.0

    def to_dict(self) -> dict:
        return {
            "N": self.params.N,
            "m": self.params.m,
            "value": self.value,
            "upper_bound": self.params.upper_bound,
            "regime": self.regime.branch.value,
            "proof_case": self.regime.proof_case.value,
            "l_min": self.l_min,
            "k_m": self.k_m,
            "branch_values": [{"l": l, "value": v} for l, v in self.branch_values],
            "degenerate": self.degenerate,
        }


def validate_parameters(N: int, m: float) -> Parameters:
    if isinstance(N, bool) or int(N) != N:
        raise ParameterError(f"N must be an integer, got {N!r}")
    N = int(N)
    m = float(m)
    if N < 1:
        raise ParameterError(f"dimension must satisfy N >= 1, got N={N}")
    if not math.isfinite(m):
        raise ParameterError(f"m must be finite, got {m}")
    if not m > 2 - N:
        raise ParameterError(
            f"weight exponent must satisfy m > 2 - N = {2 - N} "
            f"(|x|^(m-2) is not locally integrable), got m={m}"
        )
    return Parameters(N, m)


def eigenvalue_ck(N: int, k: int) -> float:
    """Eigenvalue k(k+N-2) of -Laplace-Beltrami on S^(N-1) for degree k."""
    if N < 2 or k < 0:
        raise ValueError(f"need N >= 2 and k >= 0, got N={N}, k={k}")
    return float(k * (k + N - 2))


def index_term_Ik(N: int, m: float, k: int) -> float:
    s = N + m - 4
    return 2 * (s / 2) ** 2 + eigenvalue_ck(N, k) - (m - 2) * s


def _bad_radius(N: int) -> float:
    return math.sqrt((N - 1) ** 2 + 1)


def _on_boundary(m: float, edge: float) -> bool:
    return abs(m - edge) <= BOUNDARY_RTOL * max(1.0, abs(edge))


def classify_regime(N: int, m: float) -> Regime:
    p = validate_parameters(N, m)
    N, m = p.N, p.m
    if N == 1:
        return Regime(Branch.ONE_DIM, ProofCase.N1)

    lo = 2 - _bad_radius(N)
    hi = 2 + _bad_radius(N)
    if lo <= m <= hi or _on_boundary(m, lo) or _on_boundary(m, hi):
        branch = Branch.MIDDLE
    elif m < lo:
        branch = Branch.LOW_BAD
    else:
        branch = Branch.HIGH_BAD

    bad = branch is not Branch.MIDDLE
    if 4 - N <= m <= 2:
        case = ProofCase.A
    elif m < 4 - N:
        case = ProofCase.B1_BAD if bad else ProofCase.B1_GOOD
    else:
        case = ProofCase.B2_BAD if bad else ProofCase.B2_GOOD
    return Regime(branch, case)


def threshold_k(N: int, m: float) -> int:
    """Smallest degree k with I_k(m, N) >= 0; defined only in the HighBad regime."""
    regime = classify_regime(N, m)
    if regime.branch is not Branch.HIGH_BAD:
        raise ParameterError(
            f"threshold index is defined only for HighBad parameters, "
            f"(N={N}, m={m}) is {regime.branch.value}"
        )
    s = N + m - 4
    q = (m - 2) * s - s * s / 2
    k = max(1, math.ceil((-(N - 2) + math.sqrt((N - 2) ** 2 + 4 * q)) / 2))
    # closed form may be off by one near exact roots
    while index_term_Ik(N, m, k) < 0:
        k += 1
    while k > 1 and index_term_Ik(N, m, k - 1) >= 0:
        k -= 1
    return k


def branch_constant(N: int, m: float, l: int) -> float:
    s = m + N - 4
    if s == 0:
        raise ZeroDivisionError("branch constant undefined at m = 4 - N")
    return (-N + m - 2 * l) ** 2 * (2 * l + m + N - 4) ** 2 / (4 * s * s)


def epsilon_k(N: int, m: float, k: int) -> float:
    s = N + m - 4
    if s == 0:
        raise ZeroDivisionError("epsilon_k undefined at m = 4 - N")
    return -4 * eigenvalue_ck(N, k) * index_term_Ik(N, m, k) / (s * s)


def epsilon_1_explicit(N: int, m: float) -> float:
    """Closed form of epsilon_k at k = 1, written out in N and m."""
    s = m + N - 4
    if s == 0:
        raise ZeroDivisionError("epsilon_1 undefined at m = 4 - N")
    return 2 * (N - 1) * (m * m - N * N - 4 * m + 2 * N + 2) / (s * s)


def low_bad_constant(N: int, m: float) -> float:
    return ((m - 2) ** 2 - N * N) ** 2 / (4 * (N + m - 4) ** 2)


def sharp_constant(N: int, m: float) -> ConstantReport:
    p = validate_parameters(N, m)
    regime = classify_regime(p.N, p.m)
    if regime.branch in (Branch.ONE_DIM, Branch.MIDDLE):
        return ConstantReport(p, p.upper_bound, regime, l_min=0)
    if regime.branch is Branch.LOW_BAD:
        return ConstantReport(p, low_bad_constant(p.N, p.m), regime, l_min=1)

    k_m = threshold_k(p.N, p.m)
    values = [(l, branch_constant(p.N, p.m, l)) for l in range(k_m + 1)]
    l_min, value = min(values, key=lambda lv: (lv[1], lv[0]))
    return ConstantReport(p, value, regime, l_min=l_min, k_m=k_m, branch_values=values)


def regime_boundaries(N: int) -> dict:
    if N < 1:
        raise ParameterError(f"dimension must satisfy N >= 1, got N={N}")
    r = _bad_radius(N)
    return {
        "integrability": 2.0 - N,
        "m_eq_4_minus_N": 4.0 - N,
        "lowbad_middle": 2.0 - r,
        "middle_highbad": 2.0 + r,
        "tz_threshold": tz_threshold(N),
    }


# --- prior work: full-gradient inequality ---------------------------------------


def tz_threshold(N: int) -> float:
    """Weight exponent above which the full-gradient constant equals ((N-m)/2)^2."""
    return (N + 4 - 2 * math.sqrt(N * N - N + 1)) / 3


def _tz_term(N: int, m: float, k: int) -> float:
    c = k * (N + k - 2)
    s = N - 4 + m
    return (s * (N - m) / 4 + c) ** 2 / ((s / 2) ** 2 + c)


def prior_constant_tz_detail(N: int, m: float) -> tuple:
    """Return (value, minimizing k) for the full-gradient constant, N >= 5, 4-N < m <= 0."""
    if N < 5 or not (4 - N < m <= 0):
        raise ParameterError(
            f"formula valid only for N >= 5 and 4-N < m <= 0, got N={N}, m={m}"
        )
    best, best_k = _tz_term(N, m, 0), 0
    rising = 0
    k = 1
    while True:
        term = _tz_term(N, m, k)
        if term < best:
            best, best_k, rising = term, k, 0
        else:
            rising += 1
        if rising >= 3 and k >= 3:
            return best, best_k
        k += 1


def prior_constant_tz(N: int, m: float) -> float:
    return prior_constant_tz_detail(N, m)[0]


def hardy_constant(N: int) -> float:
    return (N - 2) ** 2 / 4


def rellich_constant(N: int) -> float:
    return (N * (N - 4) / 4) ** 2


def hardy_rellich_constant(N: int) -> float:
    """Unweighted full-gradient Hardy-Rellich constant, N >= 3."""
    if N >= 5:
        return N * N / 4
    if N == 4:
        return 3.0
    if N == 3:
        return 25 / 36
    raise ParameterError(f"Hardy-Rellich constant tabulated only for N >= 3, got {N}")


PRIOR_SLACK = 1e-12


def prior_constant_catalog(N: int, m: float) -> Optional[float]:
    """Full-gradient constant where its explicit value is known, else None."""
    p = validate_parameters(N, m)
    N, m = p.N, p.m
    if N == 1:
        if 1 < m <= 7 / 3 or m >= 3:
            return ((1 - m) / 2) ** 2
        return None
    if m == 4 - N:
        return float(min((N - 2) ** 2, N - 1))
    thr = tz_threshold(N)
    if m >= thr:
        return ((N - m) / 2) ** 2
    if (N <= 3 and m < thr) or (N >= 4 and m <= 4 - N):
        s = N - 4 + m
        return (s * (N + m) / 4 + N - 1) ** 2 / ((s / 2) ** 2 + N - 1)
    return None


@dataclass(frozen=True)
class Improvement:
    tilde: float
    prior: Optional[float]
    strict_improvement: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "tilde": self.tilde,
            "prior": self.prior,
            "strict_improvement": self.strict_improvement,
        }


def prior_constant(N: int, m: float) -> Optional[float]:
    """Full-gradient constant usable for comparison, or None.

    Since |d_r u| <= |grad u|, the full-gradient constant can never exceed the
    radial-derivative one.  Catalog entries that would (the large-m bullet in
    the HighBad range, the low-m formula close to m = 2 - N) are discarded as
    inapplicable there.
    """
    prior = prior_constant_catalog(N, m)
    if prior is not None and prior > sharp_constant(N, m).value * (1 + PRIOR_SLACK) + PRIOR_SLACK:
        prior = None
    if prior is None and N >= 5 and 4 - N < m <= 0:
        prior = prior_constant_tz(N, m)
    return prior


def improvement_report(N: int, m: float) -> Improvement:
    tilde = sharp_constant(N, m).value
    prior = prior_constant(N, m)
    strict = None if prior is None else bool(tilde > prior)
    return Improvement(tilde, prior, strict)
