import math

import numpy as np
import pytest

from hardyrellich import constants as cc
from hardyrellich.fulldim import (
    angular_laplacian,
    angular_rule,
    eigenrelation_residual,
    fulldim_compare,
    gram_matrix,
    legendre_p,
    zonal_eval,
)
from hardyrellich.profiles import PolynomialBump, SplineBump

PROFILES = [PolynomialBump(0.7, 2.5), SplineBump(0.4, 3.0, [0.3, 1.0, -0.7, 0.2])]
M_VALUES = {
    2: (0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 7.0),
    3: (-0.8, -0.5, -0.3, 0.0, 1.0, 3.0, 5.0, 6.0, 8.0),
}


def test_legendre_matches_numpy():
    x = np.linspace(-1, 1, 21)
    for l in range(8):
        ref = np.polynomial.legendre.legval(x, [0] * l + [1])
        assert np.allclose(legendre_p(l, x), ref, atol=1e-14)


@pytest.mark.parametrize("N", [2, 3])
def test_orthonormality(N):
    G = gram_matrix(N, 6)
    assert np.max(np.abs(G - np.eye(7))) <= 1e-10


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("l", range(7))
def test_eigenrelation(N, l):
    assert eigenrelation_residual(N, l) <= 1e-6


def test_angular_laplacian_general_zonal_n3():
    # f = exp(cos theta): Delta_S f = (1 - x^2) e^x - 2 x e^x with x = cos theta
    theta, _ = angular_rule(3, 40)
    x = np.cos(theta)
    lap = angular_laplacian(3, np.exp(x))
    assert np.allclose(lap, ((1 - x**2) - 2 * x) * np.exp(x), atol=1e-10)


def test_unsupported_dimension():
    with pytest.raises(ValueError):
        zonal_eval(4, 1, np.array([0.1]))
    with pytest.raises(ValueError):
        fulldim_compare(4, 0, 1, PROFILES[0])


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("l", range(5))
def test_decomposition_identity(N, l):
    regimes = set()
    for m in M_VALUES[N]:
        regimes.add(cc.classify_regime(N, m).branch)
        for prof in PROFILES:
            r = fulldim_compare(N, m, l, prof)
            assert r["lhs_gap"] <= 1e-6 and r["rhs_gap"] <= 1e-6
    assert regimes == {cc.Branch.LOW_BAD, cc.Branch.MIDDLE, cc.Branch.HIGH_BAD}


def test_compare_sign_of_lhs():
    r = fulldim_compare(3, 1.0, 2, PROFILES[0])
    assert r["lhs_full"] > 0 and r["rhs_full"] > 0
    assert math.isfinite(r["lhs_gap"])
