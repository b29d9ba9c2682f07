"""Gauss-Hermite quadrature for the standard Gaussian measure on R^d.

This is the independent oracle: it integrates polynomials against the
Gaussian directly and never touches the operator algebra.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .chaos import ChaosVector, eval_at
from .transforms import GroupParams

__all__ = ["QuadGrid", "InsufficientOrderError", "gh_rule", "gh_grid", "integrate", "fg_oracle", "mehler_oracle"]


class InsufficientOrderError(ValueError):
    """The grid is not exact for the requested polynomial degree."""


@dataclass(frozen=True)
class QuadGrid:
    """Tensor grid of ``q**d`` nodes; weights are positive and sum to one."""

    q: int
    d: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def exact_degree(self) -> int:
        """Largest per-axis polynomial degree integrated exactly."""
        return 2 * self.q - 1


def gh_rule(q: int) -> tuple[np.ndarray, np.ndarray]:
    """One-dimensional rule for ``exp(-x^2/2) / sqrt(2 pi)``.

    Eigen-decomposition of the Jacobi matrix of the probabilists' Hermite
    polynomials (zero diagonal, off-diagonal ``sqrt(k)``); each weight is the
    squared first component of its eigenvector.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if q == 1:
        return np.zeros(1), np.ones(1)
    off = np.sqrt(np.arange(1, q, dtype=float))
    x, v = eigh_tridiagonal(np.zeros(q), off)
    w = v[0, :] ** 2
    # symmetrize to kill the last bits of asymmetry in the eigensolver
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w / w.sum()


def gh_grid(q: int, d: int) -> QuadGrid:
    if d < 1:
        raise ValueError("d must be at least 1")
    x, w = gh_rule(q)
    mesh = np.meshgrid(*([x] * d), indexing="ij")
    nodes = np.stack([m.ravel() for m in mesh], axis=1)
    wmesh = np.meshgrid(*([w] * d), indexing="ij")
    weights = np.prod(np.stack([m.ravel() for m in wmesh], axis=1), axis=1)
    return QuadGrid(q, d, nodes, weights)


def integrate(fn, grid: QuadGrid) -> complex:
    """``sum_k w_k fn(nodes)``; ``fn`` maps a (P, d) batch to P values."""
    return complex(np.dot(grid.weights, fn(grid.nodes)))


def _check_order(phi: ChaosVector, grid: QuadGrid):
    if phi.dim != grid.d:
        raise ValueError("grid dimension does not match")
    if phi.degree() > grid.exact_degree:
        raise InsufficientOrderError(
            f"degree {phi.degree()} needs q >= {(phi.degree() + 2) // 2}, grid has q = {grid.q}")


def fg_oracle(phi: ChaosVector, a, b, y, grid: QuadGrid) -> complex:
    """``int phi(a x + b y) dmu(x)`` by quadrature; ``a`` and ``b`` may be complex."""
    _check_order(phi, grid)
    y = np.asarray(y, dtype=complex)
    pts = complex(a) * grid.nodes + complex(b) * y[None, :]
    return complex(np.dot(grid.weights, eval_at(phi, pts)))


def mehler_oracle(phi: ChaosVector, a, b, t, y, grid: QuadGrid) -> complex:
    """Quadrature value of the Mehler-type group at ``y``.

    Uses the principal square root of the Gaussian scale; the integral is
    even in the scale, so the branch does not matter.
    """
    p = GroupParams(a, b, t)
    return fg_oracle(phi, cmath.sqrt(p.scale_sq()), p.multiplier(), y, grid)
