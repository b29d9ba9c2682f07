"""Truncated chaos expansions and their coefficient representations.

A :class:`ChaosVector` holds coefficients ``f_0, ..., f_N`` (symmetric tensors
of order 0..N over C^d) together with a tag saying which tensor powers they
are paired against:

``"wick"``
    ``phi(x) = sum_n <:x^n:, f_n>`` (Hermite / chaos coordinates).
``"monomial"``
    ``phi(x) = sum_n <x^n, f_n>``.
``"kappa"``
    ``phi(x) = sum_n <:x^n:_kappa, f_n>`` with the generalized Wick powers
    built from a symmetric kernel ``kappa`` (see :func:`genwick_expand`).

Conversions between tags are explicit; binary operations refuse mixed tags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial

import numpy as np

from .symtensor import (
    SymTensor,
    _monomials,
    multi_indices,
    multinomial_weights,
    pair,
    power,
    right_contract,
    right_contract_matrix,
    sym_dim,
    sym_power,
    trace_tensor,
)

__all__ = [
    "ChaosVector",
    "SeminormConfig",
    "exp_vector",
    "dual_pair",
    "s_transform",
    "monomial_to_wick",
    "wick_to_monomial",
    "genwick_expand",
    "from_kappa_rep",
    "to_kappa_rep",
    "eval_at",
    "seminorm",
    "basis_vector",
    "random_chaos",
    "lowering_exp",
]

REPS = ("wick", "monomial", "kappa")


class ChaosVector:
    """Truncated coefficient sequence ``(f_0, ..., f_nmax)`` with a representation tag.

    ``coeffs[n]`` is a complex array in the ordering of
    :func:`fockcalc.symtensor.multi_indices` for order ``n``.
    """

    __slots__ = ("dim", "nmax", "coeffs", "rep", "kappa")

    def __init__(self, dim: int, nmax: int, coeffs=None, rep: str = "wick", kappa: SymTensor | None = None):
        if rep not in REPS:
            raise ValueError(f"unknown representation {rep!r}")
        if rep == "kappa":
            if kappa is None:
                raise ValueError("kappa representation needs a kernel")
            if kappa.dim != dim or kappa.order < 1:
                raise ValueError("kappa kernel must have the same dimension and order >= 1")
        elif kappa is not None:
            raise ValueError(f"a kernel is only meaningful for rep='kappa', not {rep!r}")
        if nmax < 0:
            raise ValueError("nmax must be nonnegative")
        blocks = []
        for n in range(nmax + 1):
            size = sym_dim(dim, n)
            if coeffs is None or n >= len(coeffs):
                arr = np.zeros(size, dtype=complex)
            else:
                c = coeffs[n]
                if isinstance(c, SymTensor):
                    if c.order != n or c.dim != dim:
                        raise ValueError(f"component {n} has wrong order/dimension")
                    c = c.coeffs
                arr = np.array(c, dtype=complex).reshape(-1)
                if arr.shape != (size,):
                    raise ValueError(f"component {n}: expected {size} entries, got {arr.shape[0]}")
            arr.setflags(write=False)
            blocks.append(arr)
        if coeffs is not None and len(coeffs) > nmax + 1:
            if any(np.any(np.asarray(c.coeffs if isinstance(c, SymTensor) else c) != 0) for c in coeffs[nmax + 1:]):
                raise ValueError("coefficients beyond nmax are nonzero")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "nmax", int(nmax))
        object.__setattr__(self, "coeffs", tuple(blocks))
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "kappa", kappa)

    def __setattr__(self, name, value):
        raise AttributeError("ChaosVector is immutable")

    @classmethod
    def zeros(cls, dim, nmax, rep="wick", kappa=None):
        return cls(dim, nmax, None, rep, kappa)

    @classmethod
    def constant(cls, dim, nmax, c, rep="wick", kappa=None):
        return cls(dim, nmax, [[c]], rep, kappa)

    @classmethod
    def from_components(cls, components: dict, dim: int, nmax: int, rep="wick", kappa=None):
        """Build from ``{degree: SymTensor}``."""
        coeffs = [None] * (nmax + 1)
        for n, t in components.items():
            coeffs[n] = t
        coeffs = [c if c is not None else np.zeros(sym_dim(dim, n)) for n, c in enumerate(coeffs)]
        return cls(dim, nmax, coeffs, rep, kappa)

    def component(self, n: int) -> SymTensor:
        return SymTensor(self.dim, n, self.coeffs[n])

    def degree(self) -> int:
        """Highest degree with a nonzero coefficient (-1 for the zero vector)."""
        for n in range(self.nmax, -1, -1):
            if np.any(self.coeffs[n] != 0):
                return n
        return -1

    def relabel(self, rep: str, kappa: SymTensor | None = None) -> ChaosVector:
        """Same coefficients, different tag.  Changes the function represented."""
        return ChaosVector(self.dim, self.nmax, self.coeffs, rep, kappa)

    def truncate(self, nmax: int) -> ChaosVector:
        """Projection onto degrees <= nmax (or zero padding when nmax grows)."""
        coeffs = list(self.coeffs[: nmax + 1])
        return ChaosVector(self.dim, nmax, coeffs, self.rep, self.kappa)

    def same_rep(self, other: ChaosVector) -> bool:
        if self.rep != other.rep:
            return False
        if self.rep == "kappa":
            return self.kappa.order == other.kappa.order and np.array_equal(
                self.kappa.coeffs, other.kappa.coeffs
            )
        return True

    def _binary(self, other, op):
        if not isinstance(other, ChaosVector):
            return NotImplemented
        if other.dim != self.dim or other.nmax != self.nmax:
            raise ValueError("dimension or truncation mismatch")
        if not self.same_rep(other):
            raise ValueError(f"representation mismatch: {self.rep} vs {other.rep}")
        return ChaosVector(
            self.dim, self.nmax, [op(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.rep, self.kappa
        )

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        if isinstance(c, ChaosVector):
            return NotImplemented
        return ChaosVector(self.dim, self.nmax, [a * complex(c) for a in self.coeffs], self.rep, self.kappa)

    __rmul__ = __mul__

    def flat(self) -> np.ndarray:
        return np.concatenate(self.coeffs)

    def weights(self) -> np.ndarray:
        """Diagonal of the duality pairing: ``n! * n!/alpha!`` in flat layout."""
        return np.concatenate(
            [factorial(n) * multinomial_weights(self.dim, n) for n in range(self.nmax + 1)]
        )

    def norm(self) -> float:
        """Fock (L^2(mu)) norm in the current coordinates."""
        return float(np.sqrt(np.sum(self.weights() * np.abs(self.flat()) ** 2)))

    def allclose(self, other: ChaosVector, rtol=1e-12, atol=0.0) -> bool:
        diff = (self - other).norm()
        return diff <= atol + rtol * max(self.norm(), other.norm())

    def __repr__(self):
        return f"ChaosVector(dim={self.dim}, nmax={self.nmax}, rep={self.rep!r}, degree={self.degree()})"

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        def entries(d, n, arr):
            return [
                {"alpha": [int(a) for a in alpha], "re": float(v.real), "im": float(v.imag)}
                for alpha, v in zip(multi_indices(d, n), arr)
            ]

        out = {
            "dim": self.dim,
            "nmax": self.nmax,
            "rep": self.rep,
            "coeffs": [
                {"degree": n, "entries": entries(self.dim, n, arr)} for n, arr in enumerate(self.coeffs)
            ],
        }
        if self.rep == "kappa":
            out["kappa"] = {"order": self.kappa.order, "entries": entries(self.dim, self.kappa.order, self.kappa.coeffs)}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> ChaosVector:
        dim, nmax = int(data["dim"]), int(data["nmax"])

        def tensor(order, entries):
            return SymTensor.from_dict(
                dim, order, {tuple(e["alpha"]): complex(e["re"], e.get("im", 0.0)) for e in entries}
            )

        comps = {int(c["degree"]): tensor(int(c["degree"]), c["entries"]) for c in data["coeffs"]}
        kappa = None
        if data["rep"] == "kappa":
            kappa = tensor(int(data["kappa"]["order"]), data["kappa"]["entries"])
        return cls.from_components(comps, dim, nmax, data["rep"], kappa)

    @classmethod
    def from_json(cls, text: str) -> ChaosVector:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SeminormConfig:
    """Diagonal model of the operator A: eigenvalues ``lam_i > 1``."""

    A_diag: tuple

    def __post_init__(self):
        lam = tuple(float(v) for v in self.A_diag)
        if not lam or min(lam) <= 1.0:
            raise ValueError("every eigenvalue of A must exceed 1")
        object.__setattr__(self, "A_diag", lam)

    @classmethod
    def default(cls, d: int) -> SeminormConfig:
        return cls(tuple(float(i + 2) for i in range(d)))

    @property
    def rho(self) -> float:
        """Operator norm of A^-1."""
        return 1.0 / min(self.A_diag)

    @property
    def delta(self) -> float:
        """Hilbert-Schmidt norm of A^-1."""
        return float(np.sqrt(np.sum(1.0 / np.square(self.A_diag))))


def basis_vector(dim: int, nmax: int, alpha, c=1.0, rep="wick", kappa=None) -> ChaosVector:
    """The vector with a single coefficient ``c`` at multi-index ``alpha``."""
    alpha = tuple(int(a) for a in alpha)
    t = SymTensor.from_dict(dim, sum(alpha), {alpha: c})
    return ChaosVector.from_components({sum(alpha): t}, dim, nmax, rep, kappa)


def random_chaos(rng: np.random.Generator, dim: int, nmax: int, degree: int | None = None,
                 scale: float = 1.0, rep: str = "wick", kappa=None, decay: bool = True) -> ChaosVector:
    """Random complex coefficients up to ``degree``.

    With ``decay`` the degree-n block is divided by ``sqrt(n!)`` so that
    factorially weighted norms stay O(1).
    """
    degree = nmax if degree is None else min(degree, nmax)
    coeffs = []
    for n in range(degree + 1):
        size = sym_dim(dim, n)
        block = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        if decay:
            block = block / np.sqrt(factorial(n))
        coeffs.append(scale * block)
    return ChaosVector(dim, nmax, coeffs, rep, kappa)


def exp_vector(xi, nmax: int) -> ChaosVector:
    """Truncated exponential vector: ``f_n = xi^{(x)n} / n!``."""
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    return ChaosVector(len(xi), nmax, [power(xi, n).coeffs / factorial(n) for n in range(nmax + 1)])


def dual_pair(Phi: ChaosVector, phi: ChaosVector) -> complex:
    """``<<Phi, phi>> = sum_n n! <F_n, f_n>`` (bilinear); shorter input is zero padded."""
    if Phi.dim != phi.dim:
        raise ValueError("dimension mismatch")
    if Phi.rep != "wick" or phi.rep != "wick":
        raise ValueError("dual pairing is defined on Wick coefficients")
    total = 0j
    for n in range(min(Phi.nmax, phi.nmax) + 1):
        w = multinomial_weights(Phi.dim, n)
        total += factorial(n) * np.sum(w * Phi.coeffs[n] * phi.coeffs[n])
    return complex(total)


def s_transform(Phi: ChaosVector, xi) -> complex:
    """``S(Phi)(xi) = sum_n <F_n, xi^{(x)n}>``."""
    if Phi.rep != "wick":
        raise ValueError("S-transform expects Wick coefficients")
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    if len(xi) != Phi.dim:
        raise ValueError("dimension mismatch")
    return complex(sum(pair(Phi.component(n), power(xi, n)) for n in range(Phi.nmax + 1)))


def lowering_exp(coeffs, kappa: SymTensor, c: complex) -> list[np.ndarray]:
    """Apply ``exp(c * Xi_{0,r}(kappa))`` to a coefficient list.

    ``Xi_{0,r}(kappa)`` sends ``f_{n+r}`` to ``((n+r)!/n!) kappa (x)_r f_{n+r}`` in
    degree n; it is nilpotent at finite truncation, so the series is finite.
    """
    r = kappa.order
    if r < 1:
        raise ValueError("kernel order must be at least 1")
    nmax = len(coeffs) - 1
    mats = {n: right_contract_matrix(kappa, n) * (factorial(n + r) / factorial(n)) for n in range(nmax - r + 1)}
    result = [np.array(a, dtype=complex) for a in coeffs]
    term = [np.array(a, dtype=complex) for a in coeffs]
    j = 0
    while True:
        j += 1
        term = [mats[n] @ term[n + r] if n + r <= nmax else np.zeros_like(term[n]) for n in range(nmax + 1)]
        if not any(np.any(t != 0) for t in term):
            break
        term = [t * (c / j) for t in term]
        result = [a + t for a, t in zip(result, term)]
    return result


def _require(phi: ChaosVector, rep: str):
    if phi.rep != rep:
        raise ValueError(f"expected {rep!r} representation, got {phi.rep!r}")


def monomial_to_wick(phi: ChaosVector) -> ChaosVector:
    """Wick coefficients of ``sum_n <x^n, f_n>``.

    On coefficient sequences this is ``exp(+1/2 Delta_G)``: it is the
    image under ``Theta^{-1}`` of the vector carrying ``f`` as Wick data.
    """
    _require(phi, "monomial")
    tau = trace_tensor(phi.dim)
    return ChaosVector(phi.dim, phi.nmax, lowering_exp(phi.coeffs, tau, 0.5), "wick")


def wick_to_monomial(phi: ChaosVector) -> ChaosVector:
    """Inverse of :func:`monomial_to_wick` (``exp(-1/2 Delta_G)`` on coefficients)."""
    _require(phi, "wick")
    tau = trace_tensor(phi.dim)
    return ChaosVector(phi.dim, phi.nmax, lowering_exp(phi.coeffs, tau, -0.5), "monomial")


def genwick_expand(kappa: SymTensor, n: int, sign: float = -0.5):
    """Terms of the generalized Wick power ``:x^n:_kappa``.

    Returns ``[(degree, weight, kappa^{(x)^k}), ...]`` for ``k = 0..n//m`` with
    ``degree = n - m k`` and ``weight = n!/((n-mk)! k!) * sign^k``, so that
    ``:x^n:_kappa = sum weight * x^{(x)degree} (x)^ kappa^{(x)^k}``.
    The default ``sign = -1/2`` gives the generalized Wick power; ``+1/2``
    with ``kappa = tau`` gives the inverse relation (ordinary powers in terms
    of Wick powers).
    """
    m = kappa.order
    if m == 0:
        raise ValueError("kernels of order 0 are not permitted")
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms = []
    for k in range(n // m + 1):
        weight = factorial(n) / (factorial(n - m * k) * factorial(k)) * sign**k
        terms.append((n - m * k, weight, sym_power(kappa, k)))
    return terms


def _expand_into_lower(coeffs, kappa: SymTensor, sign: float, dim: int, nmax: int):
    """``sum_n <P_n(x), f_n>`` rewritten with plain powers of x, P_n from genwick_expand."""
    out = [np.zeros(sym_dim(dim, n), dtype=complex) for n in range(nmax + 1)]
    for n in range(nmax + 1):
        f = SymTensor(dim, n, coeffs[n])
        if not np.any(f.coeffs):
            continue
        for deg, weight, kpow in genwick_expand(kappa, n, sign):
            out[deg] += weight * right_contract(kpow, f).coeffs
    return out


def monomial_to_wick_ksum(phi: ChaosVector) -> ChaosVector:
    """Combinatorial route: ``x^n = sum_k n!/((n-2k)! k!) (1/2)^k :x^(n-2k): (x)^ tau^k``."""
    _require(phi, "monomial")
    tau = trace_tensor(phi.dim)
    return ChaosVector(phi.dim, phi.nmax, _expand_into_lower(phi.coeffs, tau, 0.5, phi.dim, phi.nmax), "wick")


def wick_to_monomial_ksum(phi: ChaosVector) -> ChaosVector:
    """Combinatorial route: ``:x^n: = sum_k n!/((n-2k)! k!) (-1/2)^k x^(n-2k) (x)^ tau^k``."""
    _require(phi, "wick")
    tau = trace_tensor(phi.dim)
    return ChaosVector(
        phi.dim, phi.nmax, _expand_into_lower(phi.coeffs, tau, -0.5, phi.dim, phi.nmax), "monomial"
    )


def from_kappa_rep(psi: ChaosVector, route: str = "operator") -> ChaosVector:
    """Wick coefficients of ``sum_n <:x^n:_kappa, psi_n>``.

    ``route="operator"`` applies ``exp(-1/2 Xi_{0,r}(kappa)) exp(1/2 Delta_G)``
    to the coefficient sequence.  ``route="direct"`` expands every
    generalized Wick power with :func:`genwick_expand` into ordinary powers
    and then rewrites those in Wick powers with the Hermite k-sum.  The two
    routes share no code beyond the tensor primitives.
    """
    _require(psi, "kappa")
    kappa = psi.kappa
    if route == "operator":
        tau = trace_tensor(psi.dim)
        step = lowering_exp(psi.coeffs, tau, 0.5)
        return ChaosVector(psi.dim, psi.nmax, lowering_exp(step, kappa, -0.5), "wick")
    if route == "direct":
        mono = _expand_into_lower(psi.coeffs, kappa, -0.5, psi.dim, psi.nmax)
        return monomial_to_wick_ksum(ChaosVector(psi.dim, psi.nmax, mono, "monomial"))
    raise ValueError(f"unknown route {route!r}")


def to_kappa_rep(phi: ChaosVector, kappa: SymTensor) -> ChaosVector:
    """The unique kappa-representation of a Wick-coefficient vector."""
    _require(phi, "wick")
    if kappa.dim != phi.dim:
        raise ValueError("dimension mismatch")
    tau = trace_tensor(phi.dim)
    step = lowering_exp(phi.coeffs, kappa, 0.5)
    return ChaosVector(phi.dim, phi.nmax, lowering_exp(step, tau, -0.5), "kappa", kappa)


def _monomial_coeffs(phi: ChaosVector):
    if phi.rep == "monomial":
        return phi.coeffs
    if phi.rep == "wick":
        return wick_to_monomial(phi).coeffs
    return wick_to_monomial(from_kappa_rep(phi)).coeffs


def eval_at(phi: ChaosVector, x) -> complex | np.ndarray:
    """Evaluate the polynomial represented by ``phi`` at ``x``.

    ``x`` may be a single point of shape (d,) or a batch of shape (P, d);
    complex points are allowed.
    """
    x = np.asarray(x, dtype=complex)
    single = x.ndim == 1
    pts = x.reshape(-1, phi.dim)
    mono = _monomial_coeffs(phi)
    vals = np.zeros(len(pts), dtype=complex)
    for n, f in enumerate(mono):
        if not np.any(f):
            continue
        vals += _monomials(pts, phi.dim, n) @ (multinomial_weights(phi.dim, n) * f)
    return complex(vals[0]) if single else vals


def seminorm(phi: ChaosVector, p: float, beta: float, cfg: SeminormConfig) -> float:
    """``|phi|_{p,beta} = (sum_n (n!)^{1+beta} |A^p f_n|_0^2)^{1/2}``."""
    _require(phi, "wick")
    if not 0.0 <= beta < 1.0:
        raise ValueError("beta must lie in [0, 1)")
    return float(np.sqrt(np.sum(seminorm_weights(phi.dim, phi.nmax, p, beta, cfg) * np.abs(phi.flat()) ** 2)))


def seminorm_weights(dim: int, nmax: int, p: float, beta: float, cfg: SeminormConfig) -> np.ndarray:
    """Squared seminorm as a diagonal quadratic form in the flat layout."""
    lam = np.asarray(cfg.A_diag, dtype=float)
    if lam.shape != (dim,):
        raise ValueError("SeminormConfig dimension does not match")
    out = []
    for n in range(nmax + 1):
        alphas = multi_indices(dim, n)
        scale = np.prod(lam[None, :] ** (2.0 * p * alphas), axis=1)
        out.append(float(factorial(n)) ** (1.0 + beta) * multinomial_weights(dim, n) * scale)
    return np.concatenate(out)
