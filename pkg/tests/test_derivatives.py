import numpy as np
import pytest
from scipy.linalg import expm

from fockcalc.chaos import random_chaos
from fockcalc.derivatives import (
    NotDifferentiableError,
    complex_step_derivative,
    contour_derivative,
    derivative,
    regularity_check,
    richardson_derivative,
)
from fockcalc.fockop import FockOperator, Gamma, conv_op, dGamma, exp_conv, gross_laplacian, number_op
from fockcalc.transforms import fourier_mehler_adjoint, generator, group_P, scaling

from .helpers import cmat


def test_complex_step_on_real_family(rng):
    B = rng.standard_normal((2, 2))
    fam = lambda t: Gamma(expm(t * B), 7)  # noqa: E731
    assert complex_step_derivative(fam).fock_rel_diff(dGamma(B, 7)) < 1e-14


def test_complex_step_refuses_complex_family():
    with pytest.raises(ValueError):
        complex_step_derivative(lambda t: fourier_mehler_adjoint(t, 2, 6))


def test_contour_matches_closed_form(rng):
    B = cmat(rng, 2, 0.5)
    fam = lambda t: Gamma(expm(t * B), 7)  # noqa: E731
    assert contour_derivative(fam).fock_rel_diff(dGamma(B, 7)) < 1e-12
    assert contour_derivative(fam, t0=0.3).fock_rel_diff(dGamma(B, 7) @ fam(0.3)) < 1e-12


def test_richardson_secondary_check():
    a, b = 0.3 + 0.2j, -0.6 + 0.4j
    fam = lambda t: group_P(a, b, t, 2, 8)  # noqa: E731
    assert richardson_derivative(fam).fock_rel_diff(generator(a, b, 2, 8)) < 1e-8


def test_derivative_picks_rule():
    # scaling(e^t) is real for real t; the Fourier-Mehler family is not
    fam = lambda t: scaling(np.exp(t), 2, 6)  # noqa: E731
    ref = number_op(2, 6) + gross_laplacian(2, 6)
    assert derivative(fam).fock_rel_diff(ref) < 1e-14
    fm = lambda t: fourier_mehler_adjoint(t, 2, 6)  # noqa: E731
    assert derivative(fm).fock_rel_diff(1j * (number_op(2, 6) + 0.5 * gross_laplacian(2, 6))) < 1e-12


def test_derivative_away_from_zero():
    a, b, t0 = 0.5, -1.0, 0.4
    fam = lambda t: group_P(a, b, t, 2, 8)  # noqa: E731
    ref = generator(a, b, 2, 8) @ fam(t0)
    assert derivative(fam, t0).fock_rel_diff(ref) < 1e-12


# -- regularity ------------------------------------------------------------------------


def test_regularity_second_quantization(rng):
    B = rng.standard_normal((2, 2))
    rep = regularity_check(lambda t: Gamma(expm(t * B), 8), dGamma(B, 8))
    assert rep.passed and not rep.exact
    assert all(abs(r - 0.5) < 0.1 for r in rep.ratios)
    assert rep.max_deviation <= 0.2


def test_regularity_exponential_convolution(rng):
    phi = random_chaos(rng, 2, 10, degree=3)
    rep = regularity_check(lambda t: exp_conv(phi * t), conv_op(phi))
    assert rep.passed and rep.max_deviation <= 0.2


@pytest.mark.parametrize("a,b", [(0.5, -1.0), (0.3 + 0.2j, -0.6 + 0.4j), (0.7, 0.0)])
def test_regularity_mehler_family(a, b):
    rep = regularity_check(lambda t: group_P(a, b, t, 2, 8), generator(a, b, 2, 8))
    assert rep.passed and rep.max_deviation <= 0.2


def test_regularity_generator_estimated_when_omitted():
    rep = regularity_check(lambda t: group_P(0.5, -1.0, t, 2, 8))
    assert rep.passed


def test_regularity_exact_for_affine_family():
    D = gross_laplacian(2, 3)
    I = FockOperator.identity(2, 3)
    rep = regularity_check(lambda t: I + t * D, D)
    assert rep.exact and rep.passed and rep.max_deviation == 0.0


def test_regularity_detects_non_differentiable_family(rng):
    D = number_op(2, 6)
    I = FockOperator.identity(2, 6)
    fam = lambda t: I + np.sqrt(abs(t)) * D  # noqa: E731
    with pytest.raises(NotDifferentiableError):
        regularity_check(fam, FockOperator.zeros(2, 6))


def test_regularity_flags_wrong_generator():
    # with a wrong generator the residual tends to a constant: ratio ~ 1
    fam = lambda t: group_P(0.5, -1.0, t, 2, 8)  # noqa: E731
    with pytest.raises(NotDifferentiableError):
        regularity_check(fam, number_op(2, 8))
