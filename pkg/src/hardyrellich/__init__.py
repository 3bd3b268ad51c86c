"""Sharp constants for the weighted Hardy-Rellich inequality with the radial derivative."""

from .constants import (
    Branch,
    ConstantReport,
    Improvement,
    Parameters,
    ParameterError,
    ProofCase,
    Regime,
    branch_constant,
    classify_regime,
    eigenvalue_ck,
    epsilon_k,
    improvement_report,
    index_term_Ik,
    low_bad_constant,
    prior_constant,
    prior_constant_tz,
    regime_boundaries,
    sharp_constant,
    threshold_k,
    validate_parameters,
)
from .spectral import GridSpec, convergence_study, mode_infimum, oracle_constant
from .trial import TrialSpec, limit_extrapolate, radial_integrals, rayleigh_quotient

__version__ = "0.1.0"
