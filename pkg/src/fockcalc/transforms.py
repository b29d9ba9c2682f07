"""Named transforms and one-parameter groups on the truncated Fock space.

All constructors return :class:`~fockcalc.fockop.FockOperator` objects
compressed to degrees ``0..nmax``.  Every exponential that appears is the
exponential of a strictly lowering operator, so each is a finite sum and the
degree-preserving operators built here are exact at any truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expm1

from .fockop import (
    FockOperator,
    Gamma,
    KernelSpec,
    exp_lowering,
    gross_laplacian,
    number_op,
    xi_lm,
)
from .symtensor import SymTensor, pullback_pow, trace_tensor

__all__ = [
    "GroupParams",
    "theta_op",
    "theta_inv",
    "fourier_gauss",
    "scaling",
    "fourier_op",
    "renorm_op",
    "gamma_kappa",
    "fourier_mehler_adjoint",
    "n_kappa",
    "group_P",
    "generator",
]


def theta_op(d: int, nmax: int) -> FockOperator:
    """Renormalization operator ``Theta = exp(-1/2 Delta_G)``."""
    return exp_lowering(gross_laplacian(d, nmax), -0.5)


def theta_inv(d: int, nmax: int) -> FockOperator:
    return exp_lowering(gross_laplacian(d, nmax), 0.5)


def _scalar_gamma(b, d: int, nmax: int) -> FockOperator:
    b = complex(b)
    return FockOperator.diagonal(d, nmax, lambda n: b**n)


def fourier_gauss(a2, b, d: int, nmax: int) -> FockOperator:
    """``G_{a,b} = Gamma(b Id) exp(1/2 (a^2 + b^2 - 1) Delta_G)``, parameterized by ``a2 = a^2``."""
    a2, b = complex(a2), complex(b)
    return _scalar_gamma(b, d, nmax) @ exp_lowering(gross_laplacian(d, nmax), 0.5 * (a2 + b * b - 1.0))


def scaling(lam, d: int, nmax: int) -> FockOperator:
    """``S_lam = Gamma(lam Id) exp((lam^2 - 1)/2 Delta_G)``, i.e. ``G_{0,lam}``."""
    return fourier_gauss(0.0, lam, d, nmax)


def fourier_op(d: int, nmax: int) -> FockOperator:
    """Fourier transform ``exp(-1/2 Delta_G)^* Gamma(-i Id)``.

    The adjoint factor raises degree, so this is only a compression; use it
    on inputs of degree well below ``nmax``.
    """
    return theta_op(d, nmax).adjoint() @ _scalar_gamma(-1j, d, nmax)


def _check_kernel(kappa: SymTensor, d: int):
    if kappa.dim != d:
        raise ValueError("kernel dimension mismatch")
    if kappa.order < 1:
        raise ValueError("kernel order must be at least 1")


def renorm_op(T_hat: FockOperator, kappa: SymTensor) -> FockOperator:
    """Renormalization ``T_kappa = exp(L/2) T exp(-L/2)`` with ``L = Delta_G - Xi_{0,r}(kappa)``."""
    d, nmax = T_hat.dim, T_hat.nmax
    _check_kernel(kappa, d)
    L = gross_laplacian(d, nmax) - xi_lm(KernelSpec(0, kappa.order, kappa), d, nmax)
    return exp_lowering(L, 0.5) @ T_hat @ exp_lowering(L, -0.5)


def gamma_kappa(T, kappa: SymTensor, nmax: int) -> FockOperator:
    """Renormalized second quantization in closed form.

    ``Gamma(T) exp(1/2 Xi_{0,2}((T^2 - Id)^* tau)) exp(-1/2 Xi_{0,r}((T^r - Id)^* kappa))``.
    """
    T = np.asarray(T, dtype=complex)
    d = T.shape[0]
    _check_kernel(kappa, d)
    r = kappa.order
    tau = trace_tensor(d)
    k2 = pullback_pow(T, tau) - tau
    kr = pullback_pow(T, kappa) - kappa
    return (
        Gamma(T, nmax)
        @ exp_lowering(xi_lm(KernelSpec(0, 2, k2), d, nmax), 0.5)
        @ exp_lowering(xi_lm(KernelSpec(0, r, kr), d, nmax), -0.5)
    )


def fourier_mehler_adjoint(theta, d: int, nmax: int) -> FockOperator:
    """``Gamma_{tau/2}(e^{i theta} Id)``, the adjoint of the Fourier-Mehler transform.

    ``theta`` may be complex (used by derivative checks).
    """
    return gamma_kappa(np.exp(1j * theta) * np.eye(d), 0.5 * trace_tensor(d), nmax)


def n_kappa(kappa: SymTensor, nmax: int) -> FockOperator:
    """``N_kappa = N + Delta_G - (r/2) Xi_{0,r}(kappa)``."""
    d, r = kappa.dim, kappa.order
    _check_kernel(kappa, d)
    return number_op(d, nmax) + gross_laplacian(d, nmax) - (r / 2.0) * xi_lm(KernelSpec(0, r, kappa), d, nmax)


@dataclass(frozen=True)
class GroupParams:
    """Parameters of ``P_{a,b,t}``, the group generated by ``a Delta_G + b N``.

    The group is a Fourier-Gauss transform whose Gaussian scale enters only
    through its square, so no square root is ever taken.
    """

    a: complex
    b: complex
    t: complex

    def scale_sq(self) -> complex:
        a, b, t = complex(self.a), complex(self.b), complex(self.t)
        if b == 0:
            return 2.0 * a * t
        # (1 - a/b)(1 - e^{2bt}) without cancellation for small b t
        return -(1.0 - a / b) * complex(expm1(2.0 * b * t))

    def multiplier(self) -> complex:
        return complex(np.exp(complex(self.b) * complex(self.t)))


def group_P(a, b, t, d: int, nmax: int) -> FockOperator:
    """``P_{a,b,t} = G_{s, e^{bt}}`` with ``s^2 = (1 - a/b)(1 - e^{2bt})`` (``2at`` when b = 0).

    Complex ``t`` is accepted so the family can be differentiated with a
    complex step.
    """
    p = GroupParams(a, b, t)
    return fourier_gauss(p.scale_sq(), p.multiplier(), d, nmax)


def generator(a, b, d: int, nmax: int) -> FockOperator:
    """``a Delta_G + b N``."""
    return complex(a) * gross_laplacian(d, nmax) + complex(b) * number_op(d, nmax)
