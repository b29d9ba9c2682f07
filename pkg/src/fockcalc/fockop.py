"""Degree-graded operators on truncated chaos coefficients.

Every operator is stored as the compression ``P_N A P_N`` onto degrees
``0..nmax``: a dict of dense blocks keyed by ``(out_degree, in_degree)``.
Identities involving raising operators hold exactly only on inputs whose
images stay below the truncation; :meth:`FockOperator.safe_input_degree`
reports the admissible input degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .chaos import ChaosVector, exp_vector
from .symtensor import (
    SymTensor,
    gamma_n_matrix,
    index_of,
    map_pow_matrix,
    multi_indices,
    multinomial_weights,
    right_contract_matrix,
    sym_dim,
    sym_product_matrix,
    trace_tensor,
)

__all__ = [
    "FockOperator",
    "KernelSpec",
    "SymbolTailError",
    "xi_lm",
    "gross_laplacian",
    "number_op",
    "Gamma",
    "dGamma",
    "translation_op",
    "exp_lowering",
    "adjoint",
    "wick_product",
    "wick_power",
    "wick_exp",
    "conv_op",
    "wick_mult_op",
    "exp_conv",
    "operator_symbol",
    "SymbolValue",
]


class FockOperator:
    """Linear map on truncated chaos coefficients, stored blockwise."""

    __slots__ = ("dim", "nmax", "blocks")

    def __init__(self, dim: int, nmax: int, blocks: dict | None = None):
        self.dim = int(dim)
        self.nmax = int(nmax)
        self.blocks = {}
        for (o, i), B in (blocks or {}).items():
            if not (0 <= o <= nmax and 0 <= i <= nmax):
                continue
            B = np.asarray(B, dtype=complex)
            shape = (sym_dim(dim, o), sym_dim(dim, i))
            if B.shape != shape:
                raise ValueError(f"block ({o},{i}) has shape {B.shape}, expected {shape}")
            if np.any(B != 0):
                self.blocks[(o, i)] = B

    @classmethod
    def identity(cls, dim, nmax) -> FockOperator:
        return cls(dim, nmax, {(n, n): np.eye(sym_dim(dim, n)) for n in range(nmax + 1)})

    @classmethod
    def zeros(cls, dim, nmax) -> FockOperator:
        return cls(dim, nmax)

    @classmethod
    def diagonal(cls, dim, nmax, fn) -> FockOperator:
        """Degree-n block ``fn(n) * Id``."""
        return cls(dim, nmax, {(n, n): fn(n) * np.eye(sym_dim(dim, n)) for n in range(nmax + 1)})

    # -- metadata --------------------------------------------------------------

    @property
    def shifts(self) -> tuple[int, int] | None:
        """(min, max) of ``out_degree - in_degree`` over nonzero blocks."""
        if not self.blocks:
            return None
        s = [o - i for o, i in self.blocks]
        return min(s), max(s)

    def is_lowering(self) -> bool:
        s = self.shifts
        return s is None or s[1] < 0

    def safe_input_degree(self) -> int:
        """Largest input degree whose image is not cut off by the truncation."""
        s = self.shifts
        if s is None or s[1] <= 0:
            return self.nmax
        return self.nmax - s[1]

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: FockOperator):
        if self.dim != other.dim or self.nmax != other.nmax:
            raise ValueError("operators act on different truncated spaces")

    def __add__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        self._check(other)
        blocks = dict(self.blocks)
        for k, B in other.blocks.items():
            blocks[k] = blocks[k] + B if k in blocks else B
        return FockOperator(self.dim, self.nmax, blocks)

    def __sub__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, c):
        if isinstance(c, FockOperator):
            return NotImplemented
        c = complex(c)
        return FockOperator(self.dim, self.nmax, {k: c * B for k, B in self.blocks.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / complex(c))

    def __matmul__(self, other):
        if isinstance(other, ChaosVector):
            return self.apply(other)
        if not isinstance(other, FockOperator):
            return NotImplemented
        self._check(other)
        by_out = {}
        for (k, i), B in other.blocks.items():
            by_out.setdefault(k, []).append((i, B))
        blocks = {}
        for (o, k), A in self.blocks.items():
            for i, B in by_out.get(k, ()):
                prod = A @ B
                blocks[(o, i)] = blocks[(o, i)] + prod if (o, i) in blocks else prod
        return FockOperator(self.dim, self.nmax, blocks)

    def map_blocks(self, fn) -> FockOperator:
        return FockOperator(self.dim, self.nmax, {k: fn(B) for k, B in self.blocks.items()})

    @property
    def real(self) -> FockOperator:
        return self.map_blocks(lambda B: B.real)

    @property
    def imag(self) -> FockOperator:
        return self.map_blocks(lambda B: B.imag)

    def block(self, out_degree: int, in_degree: int) -> np.ndarray:
        B = self.blocks.get((out_degree, in_degree))
        if B is None:
            return np.zeros((sym_dim(self.dim, out_degree), sym_dim(self.dim, in_degree)), dtype=complex)
        return B

    def apply(self, phi: ChaosVector) -> ChaosVector:
        """Apply to Wick coefficients (outputs above nmax are dropped)."""
        if phi.rep != "wick":
            raise ValueError("operators act on Wick coefficients")
        if phi.dim != self.dim:
            raise ValueError("dimension mismatch")
        if phi.nmax != self.nmax:
            phi = phi.truncate(self.nmax)
        out = [np.zeros(sym_dim(self.dim, n), dtype=complex) for n in range(self.nmax + 1)]
        for (o, i), B in self.blocks.items():
            out[o] = out[o] + B @ phi.coeffs[i]
        return ChaosVector(self.dim, self.nmax, out)

    __call__ = apply

    def adjoint(self) -> FockOperator:
        return adjoint(self)

    def to_dense(self) -> np.ndarray:
        sizes = [sym_dim(self.dim, n) for n in range(self.nmax + 1)]
        offs = np.concatenate([[0], np.cumsum(sizes)])
        M = np.zeros((offs[-1], offs[-1]), dtype=complex)
        for (o, i), B in self.blocks.items():
            M[offs[o]:offs[o + 1], offs[i]:offs[i + 1]] = B
        return M

    def norm(self) -> float:
        """Frobenius norm over all blocks."""
        return float(np.sqrt(sum(np.sum(np.abs(B) ** 2) for B in self.blocks.values())))

    def rel_diff(self, other: FockOperator, floor: float = 1e-3) -> float:
        """Max over blocks of ``|A_k - B_k|_F / max(|A_k|_F, |B_k|_F, floor * S)``.

        ``S`` is the largest block norm of either operator.  The floor keeps
        blocks that vanish exactly on one side but carry roundoff on the other
        from reading as 100% errors.
        """
        self._check(other)
        keys = set(self.blocks) | set(other.blocks)
        if not keys:
            return 0.0
        norms = {k: (np.linalg.norm(self.block(*k)), np.linalg.norm(other.block(*k))) for k in keys}
        S = max(max(v) for v in norms.values())
        worst = 0.0
        for k in keys:
            scale = max(norms[k][0], norms[k][1], floor * S)
            if scale > 0:
                worst = max(worst, float(np.linalg.norm(self.block(*k) - other.block(*k)) / scale))
        return worst

    def fock_rel_diff(self, other: FockOperator) -> float:
        """``|A - B| / |B|`` in the operator norm induced by the Fock inner product.

        Suited to numerically differentiated operators, whose roundoff is
        uniform in this norm but not blockwise.
        """
        self._check(other)
        s = np.sqrt(np.concatenate([factorial(n) * multinomial_weights(self.dim, n)
                                    for n in range(self.nmax + 1)]))
        A = s[:, None] * self.to_dense() / s[None, :]
        B = s[:, None] * other.to_dense() / s[None, :]
        ref = np.linalg.norm(B, 2)
        diff = np.linalg.norm(A - B, 2)
        return float(diff / ref) if ref > 0 else float(diff)

    def allclose(self, other: FockOperator, rtol: float = 1e-11) -> bool:
        return self.rel_diff(other) <= rtol

    def __repr__(self):
        return f"FockOperator(dim={self.dim}, nmax={self.nmax}, blocks={len(self.blocks)}, shifts={self.shifts})"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel ``kappa`` of order ``l + m`` for ``Xi_{l,m}``."""

    l: int
    m: int
    kappa: SymTensor

    def __post_init__(self):
        if self.l < 0 or self.m < 0:
            raise ValueError("l and m must be nonnegative")
        if self.kappa.order != self.l + self.m:
            raise ValueError(f"kernel order {self.kappa.order} != l + m = {self.l + self.m}")


def _slice(kappa: SymTensor, l: int, beta: np.ndarray) -> SymTensor:
    """Order-l tensor ``alpha -> kappa[alpha + beta]``."""
    alphas = multi_indices(kappa.dim, l)
    return SymTensor(kappa.dim, l, [kappa.coeffs[index_of(a + beta)] for a in alphas])


def _selection(d: int, n: int, beta: np.ndarray) -> np.ndarray:
    """Matrix picking ``f[gamma + beta]`` (order n+|beta|) for every gamma of order n."""
    m = int(beta.sum())
    S = np.zeros((sym_dim(d, n), sym_dim(d, n + m)))
    for row, g in enumerate(multi_indices(d, n)):
        S[row, index_of(g + beta)] = 1.0
    return S


def xi_lm(spec: KernelSpec, dim: int | None = None, nmax: int = 10) -> FockOperator:
    """Integral kernel operator ``Xi_{l,m}(kappa)`` compressed to degrees <= nmax.

    Block ``(l+n <- n+m)`` is ``((n+m)!/n!) * Sym(kappa (x)_m f)`` where the
    contraction runs over the last m slots of ``kappa``.
    """
    l, m, kappa = spec.l, spec.m, spec.kappa
    d = kappa.dim if dim is None else dim
    if kappa.dim != d:
        raise ValueError("kernel dimension mismatch")
    blocks = {}
    betas = multi_indices(d, m)
    wm = multinomial_weights(d, m)
    slices = [_slice(kappa, l, b) for b in betas]
    for n in range(nmax + 1):
        if n + m > nmax or l + n > nmax:
            break
        factor = factorial(n + m) / factorial(n)
        if l == 0:
            B = right_contract_matrix(kappa, n)
        elif m == 0:
            B = sym_product_matrix(kappa, n)
        else:
            B = np.zeros((sym_dim(d, l + n), sym_dim(d, n + m)), dtype=complex)
            for b, w, ks in zip(betas, wm, slices):
                if np.any(ks.coeffs):
                    B += w * sym_product_matrix(ks, n) @ _selection(d, n, b)
        blocks[(l + n, n + m)] = factor * B
    return FockOperator(d, nmax, blocks)


def gross_laplacian(d: int, nmax: int) -> FockOperator:
    """``Delta_G = Xi_{0,2}(tau)``."""
    return xi_lm(KernelSpec(0, 2, trace_tensor(d)), d, nmax)


def number_op(d: int, nmax: int) -> FockOperator:
    """``N = Xi_{1,1}(tau)``: multiplies the degree-n block by n."""
    return xi_lm(KernelSpec(1, 1, trace_tensor(d)), d, nmax)


def Gamma(T, nmax: int) -> FockOperator:
    """Second quantization: degree-n block ``T^{(x)n}``."""
    T = np.asarray(T, dtype=complex)
    mats = map_pow_matrix(T, nmax)
    return FockOperator(T.shape[0], nmax, {(n, n): M for n, M in enumerate(mats)})


def dGamma(T, nmax: int) -> FockOperator:
    """Differential second quantization: degree-n block ``gamma_n(T)``."""
    T = np.asarray(T, dtype=complex)
    return FockOperator(T.shape[0], nmax, {(n, n): gamma_n_matrix(T, n) for n in range(nmax + 1)})


def exp_lowering(op: FockOperator, c: complex = 1.0) -> FockOperator:
    """``exp(c * op)`` for a strictly degree-lowering (hence nilpotent) operator.

    The series terminates after ``nmax // |max shift|`` terms.
    """
    if not op.is_lowering():
        raise ValueError(f"operator does not strictly lower degree (shifts {op.shifts})")
    result = FockOperator.identity(op.dim, op.nmax)
    if op.shifts is None:
        return result
    kmax = op.nmax // (-op.shifts[1])
    term = result
    scaled = complex(c) * op
    for k in range(1, kmax + 1):
        term = (scaled @ term) / k
        if not term.blocks:
            break
        result = result + term
    return result


def translation_op(y, nmax: int) -> FockOperator:
    """``T_y = exp(D_y)`` with ``D_y = Xi_{0,1}(y)``."""
    y = np.asarray(y, dtype=complex).reshape(-1)
    D = xi_lm(KernelSpec(0, 1, SymTensor(len(y), 1, y)), len(y), nmax)
    return exp_lowering(D, 1.0)


def adjoint(op: FockOperator) -> FockOperator:
    """Transpose with respect to the factorial-weighted bilinear pairing.

    Block ``(m <- n)`` of the adjoint is ``W_m^{-1} B_{(n <- m)}^T W_n`` with
    ``W_k = diag(k! * k!/alpha!)``.
    """
    d = op.dim
    W = {n: factorial(n) * multinomial_weights(d, n) for n in range(op.nmax + 1)}
    blocks = {(i, o): (B.T * W[o][None, :]) / W[i][:, None] for (o, i), B in op.blocks.items()}
    return FockOperator(d, op.nmax, blocks)


# -- Wick algebra -------------------------------------------------------------


def _wick_check(phi: ChaosVector, psi: ChaosVector):
    if phi.rep != "wick" or psi.rep != "wick":
        raise ValueError("Wick product needs Wick coefficients")
    if phi.dim != psi.dim:
        raise ValueError("dimension mismatch")


def wick_product(phi: ChaosVector, psi: ChaosVector) -> ChaosVector:
    """``(phi <> psi)_n = sum_{k+j=n} f_k (x)^ g_j``, exact at every degree <= nmax."""
    _wick_check(phi, psi)
    nmax = min(phi.nmax, psi.nmax)
    d = phi.dim
    out = [np.zeros(sym_dim(d, n), dtype=complex) for n in range(nmax + 1)]
    for k in range(nmax + 1):
        f = phi.component(k)
        if not np.any(f.coeffs):
            continue
        for j in range(nmax - k + 1):
            g = psi.coeffs[j]
            if np.any(g):
                out[k + j] += sym_product_matrix(f, j) @ g
    return ChaosVector(d, nmax, out)


def wick_power(phi: ChaosVector, k: int) -> ChaosVector:
    out = ChaosVector.constant(phi.dim, phi.nmax, 1.0)
    for _ in range(k):
        out = wick_product(out, phi)
    return out


def wick_exp(phi: ChaosVector) -> ChaosVector:
    """``exp<>(phi) = e^{phi_0} * sum_k (phi - phi_0)^{<>k} / k!`` truncated at nmax.

    The non-scalar part raises degree, so terms with ``k > nmax`` vanish.
    """
    if phi.rep != "wick":
        raise ValueError("Wick exponential needs Wick coefficients")
    c0 = complex(phi.coeffs[0][0])
    rest = phi - ChaosVector.constant(phi.dim, phi.nmax, c0)
    total = ChaosVector.constant(phi.dim, phi.nmax, 1.0)
    term = total
    for k in range(1, phi.nmax + 1):
        term = wick_product(term, rest) * (1.0 / k)
        total = total + term
    return total * np.exp(c0)


def conv_op(phi: ChaosVector, nmax: int | None = None) -> FockOperator:
    """Convolution operator ``C_phi = sum_n Xi_{0,n}(phi_n)`` (pure lowering plus phi_0 Id)."""
    if phi.rep != "wick":
        raise ValueError("convolution operator needs Wick coefficients")
    nmax = phi.nmax if nmax is None else nmax
    op = FockOperator.identity(phi.dim, nmax) * complex(phi.coeffs[0][0])
    for n in range(1, min(phi.nmax, nmax) + 1):
        if np.any(phi.coeffs[n]):
            op = op + xi_lm(KernelSpec(0, n, phi.component(n)), phi.dim, nmax)
    return op


def wick_mult_op(phi: ChaosVector, nmax: int | None = None) -> FockOperator:
    """Wick multiplication ``M_phi = sum_n Xi_{n,0}(phi_n)`` (raising)."""
    if phi.rep != "wick":
        raise ValueError("Wick multiplication needs Wick coefficients")
    nmax = phi.nmax if nmax is None else nmax
    op = FockOperator.identity(phi.dim, nmax) * complex(phi.coeffs[0][0])
    for n in range(1, min(phi.nmax, nmax) + 1):
        if np.any(phi.coeffs[n]):
            op = op + xi_lm(KernelSpec(n, 0, phi.component(n)), phi.dim, nmax)
    return op


def exp_conv(phi: ChaosVector, nmax: int | None = None) -> FockOperator:
    """``exp(C_phi)`` split as ``e^{phi_0} exp(C_{phi - phi_0})``."""
    nmax = phi.nmax if nmax is None else nmax
    c0 = complex(phi.coeffs[0][0])
    rest = phi - ChaosVector.constant(phi.dim, phi.nmax, c0)
    return np.exp(c0) * exp_lowering(conv_op(rest, nmax), 1.0)


# -- operator symbols ---------------------------------------------------------


class SymbolTailError(ValueError):
    """The truncation tail estimate exceeds the requested tolerance."""


@dataclass(frozen=True)
class SymbolValue:
    value: complex
    tail: float
    terms: tuple

    def __complex__(self):
        return self.value


def operator_symbol(op: FockOperator, xi, eta, tol: float = 1e-9, check: bool = True) -> SymbolValue:
    """``<<op(Phi_xi), Phi_eta>>`` at truncation nmax with a tail estimate.

    Contributions are grouped by ``n = max(out, in)`` degree.  The tail past
    nmax is estimated from the decay of the last groups (pairs of groups, so
    parity-sparse operators are handled): with ``a_n = |c_n| + |c_{n-1}|`` and
    ``q = a_N / a_{N-2}`` the estimate is ``a_N q / (1 - q)``.  Raises :class:`SymbolTailError` when
    ``q >= 1`` or the estimate exceeds ``tol`` (unless ``check`` is False).
    """
    N = op.nmax
    ex = exp_vector(xi, N)
    ey = exp_vector(eta, N)
    d = op.dim
    terms = np.zeros(N + 1, dtype=complex)
    for (o, i), B in op.blocks.items():
        w = factorial(o) * multinomial_weights(d, o)
        terms[max(o, i)] += np.sum(w * ey.coeffs[o] * (B @ ex.coeffs[i]))
    value = complex(terms.sum())
    a = np.abs(terms)
    if N >= 3:
        last = a[N] + a[N - 1]
        prev = a[N - 2] + a[N - 3]
        if last == 0.0:
            tail = 0.0
        elif prev == 0.0:
            tail = np.inf
        else:
            q = last / prev
            tail = np.inf if q >= 1.0 else last * q / (1.0 - q)
        tail = float(tail)
    else:
        tail = float(a.sum())
    scale = max(1.0, abs(value))
    if check and tail > tol * scale:
        raise SymbolTailError(
            f"truncation tail estimate {tail:.3e} exceeds tolerance {tol:.1e} (nmax={N}); "
            "use smaller xi, eta or a larger nmax"
        )
    return SymbolValue(value, tail, tuple(terms))
