import math
import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from huacheck import hypergeom


def test_lgamma_matches_math_library():
    for x in (0.1, 0.5, 1.0, 2.5, 7.0, 20.0, 150.5):
        assert_allclose(hypergeom.lgamma(x), math.lgamma(x), rtol=1e-12, atol=1e-13)
    with pytest.raises(ValueError):
        hypergeom.lgamma(0.0)


def test_gamma_reflection_for_negative_arguments():
    assert_allclose(hypergeom.gamma(-0.5), -2.0 * math.sqrt(math.pi), rtol=1e-12)
    assert_allclose(hypergeom.gamma(-1.5), 4.0 * math.sqrt(math.pi) / 3.0, rtol=1e-12)
    with pytest.raises(ValueError):
        hypergeom.gamma(-2.0)


def test_pochhammer():
    assert hypergeom.pochhammer(3.0, 0) == 1.0
    assert hypergeom.pochhammer(3.0, 4) == 3.0 * 4.0 * 5.0 * 6.0


def test_gauss_2f1_closed_forms():
    # F(1,1,2;t) = -log(1-t)/t and F(a,b,b;t) = (1-t)^-a
    for t in (0.1, 0.4, 0.8):
        assert_allclose(
            hypergeom.gauss_2f1(1.0, 1.0, 2.0, t), -math.log(1.0 - t) / t, rtol=1e-13
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert_allclose(
            hypergeom.gauss_2f1(0.5, 3.0, 3.0, 0.6), (1.0 - 0.6) ** -0.5, rtol=1e-13
        )
    assert hypergeom.gauss_2f1(0.0, 2.0, 3.0, 0.5) == 1.0


def test_gauss_2f1_input_validation():
    with pytest.raises(ValueError):
        hypergeom.gauss_2f1(1.0, 1.0, 3.0, 1.0)
    with pytest.raises(ValueError):
        hypergeom.gauss_2f1(1.0, 1.0, -2.0, 0.5)


def test_gauss_summation_at_one():
    # F(1,1,3;1) = Gamma(3)Gamma(1)/Gamma(2)^2 = 2
    assert_allclose(hypergeom.gauss_2f1_at_1(1.0, 1.0, 3.0), 2.0, rtol=1e-13)
    with pytest.raises(ValueError):
        hypergeom.gauss_2f1_at_1(1.0, 1.0, 2.0)


def test_derivative_ladder_against_termwise_series():
    for a, b, c, t in ((0.5, 1.5, 3.0, 0.3), (2.0, 1.0, 4.5, 0.7)):
        lhs = hypergeom.gauss_2f1_derivative(a, b, c, t)
        rhs = hypergeom.gauss_2f1_derivative_series(a, b, c, t)
        assert_allclose(lhs, rhs, rtol=1e-12)


def test_derivative_ladder_against_central_difference():
    a, b, c, t = 1.2, 0.8, 4.0, 0.4
    h = 1e-6
    fd = (hypergeom.gauss_2f1(a, b, c, t + h) - hypergeom.gauss_2f1(a, b, c, t - h)) / (
        2.0 * h
    )
    assert_allclose(hypergeom.gauss_2f1_derivative(a, b, c, t), fd, rtol=1e-8)


def test_euler_identity_residual_small():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for t in np.linspace(0.0, 0.99, 12):
            assert hypergeom.euler_identity_residual(1.5, 1.5, 1.0, t) < 1e-10


def test_power_limit_law():
    a, b, s = 1.0, 1.0, 0.5
    t = 1.0 - 2.0**-14
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        approx = (1.0 - t) ** s * hypergeom.gauss_2f1(a, b, a + b - s, t)
    target = hypergeom.power_limit_value(a, b, s)
    assert abs(approx - target) < 0.05 * target


def test_log_limit_two_point_estimate():
    for a, b in ((1.0, 1.0), (1.5, 1.5)):
        plain, twopoint = hypergeom.log_limit_estimate(a, b)
        target = hypergeom.log_limit_value(a, b)
        assert abs(twopoint - target) / target < 0.01
    # for generic parameters the constant bias of the plain ratio dominates
    # and the geometric two-point difference removes it
    plain, twopoint = hypergeom.log_limit_estimate(1.5, 1.5)
    target = hypergeom.log_limit_value(1.5, 1.5)
    assert abs(twopoint - target) < abs(plain - target)


def test_radial_profile_normalization_and_ode():
    profile = hypergeom.RadialProfile(2, 1, 3)
    # normalized so the boundary value is 1
    vals = [profile.value(t) for t in (0.0, 0.5, 0.9)]
    assert vals[0] < vals[1] < vals[2] < 1.0
    for t in (0.1, 0.5, 0.9):
        assert abs(profile.ode_residual(t)) < 1e-8


def test_radial_profile_degenerate_bidegrees_are_constant():
    profile = hypergeom.RadialProfile(0, 3, 4)
    assert profile.value(0.3) == 1.0
    assert profile.derivative(0.3) == 0.0


@pytest.mark.parametrize(
    "p,q,n,kind,exponent",
    [
        (1, 1, 3, "log-type", 2.0),
        (2, 2, 5, "log-type", 3.0),
        (1, 1, 2, "half-power", 1.5),
        (1, 1, 4, "half-power", 2.5),
        (0, 2, 3, "smooth", 0.0),
    ],
)
def test_classify_singularity(p, q, n, kind, exponent):
    sc = hypergeom.classify_singularity(p, q, n)
    assert sc.kind == kind
    assert sc.exponent == exponent
    if kind != "smooth":
        assert sc.coefficient_oracle != 0.0
        assert abs(sc.coefficient - sc.coefficient_oracle) < 0.05 * abs(
            sc.coefficient_oracle
        )
        assert sc.fit_residual < 0.05


def test_classify_singularity_needs_large_enough_dimension():
    with pytest.raises(ValueError):
        hypergeom.classify_singularity(1, 1, 1)
