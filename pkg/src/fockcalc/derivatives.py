"""Derivatives of holomorphic operator families and the regularity proxy.

A *family* is any callable ``t -> FockOperator`` that accepts complex ``t``.
Every family built in this package has entries that are entire in ``t``, which
is what makes the complex-step and contour rules exact to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chaos import SeminormConfig, seminorm_weights
from .fockop import FockOperator

__all__ = [
    "NotDifferentiableError",
    "complex_step_derivative",
    "contour_derivative",
    "richardson_derivative",
    "derivative",
    "RegularityReport",
    "regularity_check",
]


class NotDifferentiableError(ValueError):
    """The difference quotient of a family does not converge."""


def _is_real_family(family, t0: float) -> bool:
    for t in (t0, t0 + 0.1):
        op = family(t)
        if any(np.any(np.abs(B.imag) > 0) for B in op.blocks.values()):
            return False
    return True


def complex_step_derivative(family, t0: float = 0.0, h: float = 1e-100) -> FockOperator:
    """``Im F(t0 + ih) / h``; valid only for families that are real on the real axis."""
    if not _is_real_family(family, t0):
        raise ValueError("complex step needs a family that is real for real t; use contour_derivative")
    return family(t0 + 1j * h).imag / h


def contour_derivative(family, t0: float = 0.0, radius: float = 0.05, points: int = 32) -> FockOperator:
    """Cauchy-integral derivative by the trapezoid rule on a circle.

    For entire families the error decays like ``radius**points``; roundoff
    is about ``eps * max|F| / radius``.
    """
    w = np.exp(2j * np.pi * np.arange(points) / points)
    acc = None
    for wk in w:
        term = family(t0 + radius * wk) * (1.0 / (radius * wk))
        acc = term if acc is None else acc + term
    return acc * (1.0 / points)


def richardson_derivative(family, t0: float = 0.0, h: float = 1e-2, levels: int = 4) -> FockOperator:
    """Central differences extrapolated over ``h, h/2, ...``; a secondary check."""
    table = []
    for k in range(levels):
        hk = h / 2**k
        table.append((family(t0 + hk) - family(t0 - hk)) * (1.0 / (2 * hk)))
    for j in range(1, levels):
        f = 4.0**j
        table = [(table[i + 1] * f - table[i]) * (1.0 / (f - 1.0)) for i in range(len(table) - 1)]
    return table[0]


def derivative(family, t0: float = 0.0) -> FockOperator:
    """Complex step when the family is real on the real axis, contour rule otherwise."""
    if _is_real_family(family, t0):
        return complex_step_derivative(family, t0)
    return contour_derivative(family, t0)


@dataclass
class RegularityReport:
    t_values: tuple
    residuals: list
    ratios: list
    tolerance: float
    passed: bool = field(default=False)
    exact: bool = field(default=False)

    @property
    def max_deviation(self) -> float:
        """Worst relative distance of a halving ratio from 1/2 (0 for exact quotients)."""
        if self.exact:
            return 0.0
        return max(abs(r - 0.5) / 0.5 for r in self.ratios)


def _weighted_norm(M: np.ndarray, w_out: np.ndarray, w_in: np.ndarray) -> float:
    scaled = np.sqrt(w_out)[:, None] * M / np.sqrt(w_in)[None, :]
    return float(np.linalg.norm(scaled, 2))


def regularity_check(family, generator: FockOperator | None = None, t0: float = 0.0,
                     t_values=(1e-2, 5e-3, 2.5e-3), p: float = 0.0, beta: float = 0.0,
                     cfg: SeminormConfig | None = None, tolerance: float = 0.2) -> RegularityReport:
    """Measure how the difference quotient approaches the generator on the unit ball.

    The residual at step ``t`` is the operator norm of
    ``(F(t0+t) - F(t0))/t - F'(t0)`` from the ``|.|_{p+1,beta}`` unit ball into
    ``|.|_{p,beta}``.  A regular family shows linear decay, so halving ``t``
    should halve the residual; the check passes when every such ratio lies
    within ``tolerance`` of 1/2.  A ratio above 0.9 means the quotient is not
    converging and raises :class:`NotDifferentiableError`.  A quotient that
    already equals the generator to roundoff is reported as ``exact``.
    """
    base = family(t0)
    d, nmax = base.dim, base.nmax
    if cfg is None:
        cfg = SeminormConfig.default(d)
    if generator is None:
        generator = derivative(family, t0)
    w_out = seminorm_weights(d, nmax, p, beta, cfg)
    w_in = seminorm_weights(d, nmax, p + 1, beta, cfg)
    G = generator.to_dense()
    F0 = base.to_dense()
    residuals = []
    for t in t_values:
        Q = (family(t0 + t).to_dense() - F0) / t - G
        residuals.append(_weighted_norm(Q, w_out, w_in))
    # an affine family (e.g. nilpotent generator on a short truncation) has a
    # quotient equal to the generator up to roundoff; there is nothing to decay
    if max(residuals) <= 1e-12 * max(1.0, _weighted_norm(G, w_out, w_in)):
        return RegularityReport(tuple(t_values), residuals, [], tolerance, True, exact=True)
    ratios = []
    for r0, r1 in zip(residuals, residuals[1:]):
        ratios.append(r1 / r0 if r0 > 0 else 0.0)
    if any(r > 0.9 for r in ratios):
        raise NotDifferentiableError(f"difference quotient does not converge (ratios {ratios})")
    passed = all(abs(r - 0.5) <= 0.5 * tolerance for r in ratios)
    return RegularityReport(tuple(t_values), residuals, ratios, tolerance, passed)
