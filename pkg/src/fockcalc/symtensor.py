"""Symmetric tensors over C^d stored in occupation (multi-index) coordinates.

A symmetric tensor ``f`` of order ``n`` is determined by its value ``f[alpha]``
on any index tuple whose occupation vector is ``alpha``.  Full tensor sums
therefore carry the multiplicity ``n!/alpha!``::

    pair(f, g) = sum_alpha (n!/alpha!) f[alpha] g[alpha]

It is often convenient to think of ``f`` as the homogeneous polynomial
``p_f(xi) = pair(f, xi^{(x)n})`` whose monomial coefficients are
``(n!/alpha!) f[alpha]``.  In that picture the symmetric product is the
polynomial product and contractions are polynomial derivatives, which is how
the coordinate formulas below were obtained.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

import numpy as np

__all__ = [
    "MultiIndex",
    "SymTensor",
    "multi_indices",
    "index_of",
    "sym_dim",
    "multinomial_weights",
    "pair",
    "power",
    "trace_tensor",
    "sym_product",
    "sym_power",
    "right_contract",
    "map_pow",
    "map_pow_matrix",
    "gamma_n",
    "gamma_n_matrix",
    "pullback_pow",
    "sym_product_matrix",
    "right_contract_matrix",
]

MultiIndex = tuple[int, ...]


def _compositions(n: int, d: int):
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def multi_indices(d: int, n: int) -> np.ndarray:
    """All occupation vectors of order ``n`` in dimension ``d``, shape (D, d).

    Ordering is reverse lexicographic: ``(n, 0, ..), (n-1, 1, ..), ...``.
    """
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    arr = np.array(list(_compositions(n, d)), dtype=np.int64).reshape(-1, d)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _index_table(d: int, n: int) -> dict:
    return {tuple(int(a) for a in row): i for i, row in enumerate(multi_indices(d, n))}


def index_of(alpha) -> int:
    alpha = tuple(int(a) for a in alpha)
    return _index_table(len(alpha), sum(alpha))[alpha]


def sym_dim(d: int, n: int) -> int:
    """Dimension C(n+d-1, d-1) of the order-n symmetric space over C^d."""
    return comb(n + d - 1, d - 1)


@lru_cache(maxsize=None)
def multinomial_weights(d: int, n: int) -> np.ndarray:
    """``n!/alpha!`` for every multi-index of order ``n``."""
    alphas = multi_indices(d, n)
    w = np.array(
        [factorial(n) / np.prod([factorial(int(a)) for a in row]) for row in alphas],
        dtype=float,
    )
    w.setflags(write=False)
    return w


@lru_cache(maxsize=None)
def _sum_table(d: int, n: int, m: int):
    """Index triples (ia, ib, ig) with alpha_ia + beta_ib = gamma_ig.

    alpha has order n, beta order m, gamma order n+m.
    """
    A = multi_indices(d, n)
    B = multi_indices(d, m)
    table = _index_table(d, n + m)
    ia, ib = np.meshgrid(np.arange(len(A)), np.arange(len(B)), indexing="ij")
    ia = ia.ravel()
    ib = ib.ravel()
    sums = A[ia] + B[ib]
    ig = np.array([table[tuple(int(s) for s in row)] for row in sums], dtype=np.int64)
    for arr in (ia, ib, ig):
        arr.setflags(write=False)
    return ia, ib, ig


@lru_cache(maxsize=None)
def _raise_maps(d: int, n: int) -> np.ndarray:
    """``out[j, k]`` is the index (order n+1) of ``alpha_k + e_j`` (alpha_k of order n)."""
    A = multi_indices(d, n)
    table = _index_table(d, n + 1)
    out = np.empty((d, len(A)), dtype=np.int64)
    for j in range(d):
        shifted = A.copy()
        shifted[:, j] += 1
        out[j] = [table[tuple(int(s) for s in row)] for row in shifted]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _lower_maps(d: int, n: int):
    """For each axis i: rows with alpha_i > 0 and the index of alpha - e_i (order n-1)."""
    A = multi_indices(d, n)
    table = _index_table(d, n - 1)
    maps = []
    for i in range(d):
        rows = np.nonzero(A[:, i] > 0)[0]
        lowered = A[rows].copy()
        lowered[:, i] -= 1
        prev = np.array([table[tuple(int(s) for s in row)] for row in lowered], dtype=np.int64)
        maps.append((rows, prev))
    return maps


class SymTensor:
    """Order-``n`` symmetric tensor over C^d (immutable).

    Parameters
    ----------
    dim : int
        Ambient dimension ``d``.
    order : int
        Tensor order ``n``.
    coeffs : array_like, optional
        Coefficients in the ordering of :func:`multi_indices`; zeros if omitted.
    """

    __slots__ = ("dim", "order", "coeffs")

    def __init__(self, dim: int, order: int, coeffs=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if order < 0:
            raise ValueError("order must be nonnegative")
        size = sym_dim(dim, order)
        if coeffs is None:
            arr = np.zeros(size, dtype=complex)
        else:
            arr = np.array(coeffs, dtype=complex).reshape(-1)
            if arr.shape != (size,):
                raise ValueError(
                    f"expected {size} coefficients for d={dim}, n={order}, got {arr.shape[0]}"
                )
        arr.setflags(write=False)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def from_dict(cls, dim: int, order: int, entries: dict) -> SymTensor:
        """Build from ``{alpha: value}``; missing multi-indices are zero."""
        arr = np.zeros(sym_dim(dim, order), dtype=complex)
        for alpha, value in entries.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dim or sum(alpha) != order:
                raise ValueError(f"multi-index {alpha} does not have dim {dim}, order {order}")
            arr[index_of(alpha)] = value
        return cls(dim, order, arr)

    @classmethod
    def scalar(cls, dim: int, value=1.0) -> SymTensor:
        return cls(dim, 0, [value])

    @classmethod
    def zeros(cls, dim: int, order: int) -> SymTensor:
        return cls(dim, order)

    @property
    def alphas(self) -> np.ndarray:
        return multi_indices(self.dim, self.order)

    def __getitem__(self, alpha) -> complex:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.dim or sum(alpha) != self.order:
            raise KeyError(alpha)
        return complex(self.coeffs[index_of(alpha)])

    def items(self):
        for row, value in zip(self.alphas, self.coeffs):
            yield tuple(int(a) for a in row), complex(value)

    def _check_like(self, other: SymTensor):
        if not isinstance(other, SymTensor):
            return NotImplemented
        if other.dim != self.dim or other.order != self.order:
            raise ValueError(
                f"shape mismatch: (d={self.dim}, n={self.order}) vs (d={other.dim}, n={other.order})"
            )
        return None

    def __add__(self, other):
        if self._check_like(other) is NotImplemented:
            return NotImplemented
        return SymTensor(self.dim, self.order, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if self._check_like(other) is NotImplemented:
            return NotImplemented
        return SymTensor(self.dim, self.order, self.coeffs - other.coeffs)

    def __neg__(self):
        return SymTensor(self.dim, self.order, -self.coeffs)

    def __mul__(self, c):
        if isinstance(c, SymTensor):
            return NotImplemented
        return SymTensor(self.dim, self.order, self.coeffs * complex(c))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return SymTensor(self.dim, self.order, self.coeffs / complex(c))

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.order == other.order
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def norm(self) -> float:
        """Hilbert-Schmidt norm, ``sqrt(sum (n!/alpha!) |f_alpha|^2)``."""
        w = multinomial_weights(self.dim, self.order)
        return float(np.sqrt(np.sum(w * np.abs(self.coeffs) ** 2)))

    def allclose(self, other: SymTensor, rtol=1e-12, atol=0.0) -> bool:
        self._check_like(other)
        scale = max(self.norm(), other.norm())
        return (self - other).norm() <= atol + rtol * scale

    def __repr__(self):
        return f"SymTensor(dim={self.dim}, order={self.order}, coeffs={self.coeffs!r})"


def _check_dims(*tensors: SymTensor):
    dims = {t.dim for t in tensors}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


def pair(f: SymTensor, g: SymTensor) -> complex:
    """Canonical bilinear pairing (no complex conjugation)."""
    _check_dims(f, g)
    if f.order != g.order:
        raise ValueError(f"order mismatch: {f.order} vs {g.order}")
    w = multinomial_weights(f.dim, f.order)
    return complex(np.sum(w * f.coeffs * g.coeffs))


def _monomials(x: np.ndarray, d: int, n: int) -> np.ndarray:
    """``x^alpha`` for all alpha of order n; ``x`` has shape (..., d)."""
    alphas = multi_indices(d, n)
    return np.prod(x[..., None, :] ** alphas, axis=-1)


def power(xi, n: int) -> SymTensor:
    """The tensor power ``xi^{(x)n}``: coefficient ``prod_i xi_i^{alpha_i}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    return SymTensor(len(xi), n, _monomials(xi, len(xi), n))


def trace_tensor(d: int) -> SymTensor:
    """The order-2 kernel tau with ``pair(tau, xi (x) eta) = <xi, eta>``."""
    if d < 1:
        raise ValueError("d must be positive")
    entries = {}
    for i in range(d):
        alpha = [0] * d
        alpha[i] = 2
        entries[tuple(alpha)] = 1.0
    return SymTensor.from_dict(d, 2, entries)


def sym_product(f: SymTensor, g: SymTensor) -> SymTensor:
    """Symmetrized tensor product ``f (x)^ g``.

    In polynomial coordinates (``(n!/alpha!) f_alpha``) this is ordinary
    polynomial multiplication.
    """
    _check_dims(f, g)
    d, n, m = f.dim, f.order, g.order
    ia, ib, ig = _sum_table(d, n, m)
    pf = multinomial_weights(d, n) * f.coeffs
    pg = multinomial_weights(d, m) * g.coeffs
    out = np.zeros(sym_dim(d, n + m), dtype=complex)
    np.add.at(out, ig, pf[ia] * pg[ib])
    return SymTensor(d, n + m, out / multinomial_weights(d, n + m))


def sym_power(f: SymTensor, k: int) -> SymTensor:
    """``f^{(x)^ k}``; the order-0 unit for ``k = 0``."""
    out = SymTensor.scalar(f.dim, 1.0)
    for _ in range(k):
        out = sym_product(out, f)
    return out


def right_contract(kappa: SymTensor, f: SymTensor) -> SymTensor:
    """Contract all slots of ``kappa`` (order m) against m slots of ``f`` (order n+m).

    ``result[alpha] = sum_beta (m!/beta!) kappa[beta] f[alpha + beta]``.
    """
    _check_dims(kappa, f)
    m = kappa.order
    n = f.order - m
    if n < 0:
        raise ValueError(f"cannot contract order {m} kernel against order {f.order} tensor")
    return SymTensor(f.dim, n, right_contract_matrix(kappa, n) @ f.coeffs)


def right_contract_matrix(kappa: SymTensor, n: int) -> np.ndarray:
    """Matrix of ``f -> right_contract(kappa, f)`` from order n+m to order n."""
    d, m = kappa.dim, kappa.order
    ia, ib, ig = _sum_table(d, n, m)
    R = np.zeros((sym_dim(d, n), sym_dim(d, n + m)), dtype=complex)
    wk = multinomial_weights(d, m) * kappa.coeffs
    np.add.at(R, (ia, ig), wk[ib])
    return R


def sym_product_matrix(g: SymTensor, n: int) -> np.ndarray:
    """Matrix of ``f -> g (x)^ f`` from order n to order n + order(g)."""
    d, l = g.dim, g.order
    ia, ib, ig = _sum_table(d, l, n)
    L = np.zeros((sym_dim(d, l + n), sym_dim(d, n)), dtype=complex)
    pg = multinomial_weights(d, l) * g.coeffs
    wn = multinomial_weights(d, n)
    np.add.at(L, (ig, ib), pg[ia] * wn[ib])
    return L / multinomial_weights(d, l + n)[:, None]


def _as_matrix(T, d: int | None = None) -> np.ndarray:
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("expected a square matrix")
    if d is not None and T.shape[0] != d:
        raise ValueError(f"matrix size {T.shape[0]} does not match dimension {d}")
    return T


def map_pow_matrix(T, nmax: int) -> list[np.ndarray]:
    """Matrices of ``T^{(x)n}`` on the order-n symmetric spaces, n = 0..nmax.

    Entry ``[alpha, beta]`` is the coefficient of ``xi^beta`` in ``(T xi)^alpha``.
    """
    T = _as_matrix(T)
    d = T.shape[0]
    mats = [np.ones((1, 1), dtype=complex)]
    for n in range(1, nmax + 1):
        A = multi_indices(d, n)
        first = np.argmax(A > 0, axis=1)
        lowered = A.copy()
        lowered[np.arange(len(A)), first] -= 1
        table = _index_table(d, n - 1)
        prev_rows = mats[-1][[table[tuple(int(s) for s in row)] for row in lowered]]
        raise_j = _raise_maps(d, n - 1)
        M = np.zeros((len(A), sym_dim(d, n)), dtype=complex)
        for j in range(d):
            M[:, raise_j[j]] += T[first, j][:, None] * prev_rows
        mats.append(M)
    return mats


def map_pow(T, f: SymTensor) -> SymTensor:
    """``T^{(x)n} f``, characterized by ``map_pow(T, xi^n) = (T xi)^n``."""
    T = _as_matrix(T, f.dim)
    M = map_pow_matrix(T, f.order)[f.order]
    return SymTensor(f.dim, f.order, M @ f.coeffs)


def pullback_pow(T, kappa: SymTensor) -> SymTensor:
    """``(T^{(x)r})^* kappa``, i.e. ``map_pow`` with the transpose of T."""
    T = _as_matrix(T, kappa.dim)
    return map_pow(T.T, kappa)


def gamma_n_matrix(T, n: int) -> np.ndarray:
    """Matrix of ``gamma_n(T) = sum_k Id^{(x)k} (x) T (x) Id^{(x)(n-1-k)}`` on order n."""
    T = _as_matrix(T)
    d = T.shape[0]
    D = sym_dim(d, n)
    G = np.zeros((D, D), dtype=complex)
    if n == 0:
        return G
    A = multi_indices(d, n)
    raise_j = _raise_maps(d, n - 1)
    for i, (rows, prev) in enumerate(_lower_maps(d, n)):
        occ = A[rows, i]
        for j in range(d):
            if T[i, j] != 0:
                G[rows, raise_j[j][prev]] += occ * T[i, j]
    return G


def gamma_n(T, f: SymTensor) -> SymTensor:
    """Apply ``gamma_n(T)`` to ``f``; zero when ``n = 0``."""
    T = _as_matrix(T, f.dim)
    return SymTensor(f.dim, f.order, gamma_n_matrix(T, f.order) @ f.coeffs)
