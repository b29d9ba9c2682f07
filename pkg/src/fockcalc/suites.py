"""Property suites: every identity of the calculus as a measured residual.

Each suite draws its random cases from ``default_rng([seed, suite_index])``
so a suite's residuals do not depend on which other suites run.  Each
invariant becomes one :class:`Entry` holding the worst residual over its
cases; an invariant with zero cases (empty parameter grid) produces no entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .chaos import (
    ChaosVector,
    basis_vector,
    dual_pair,
    eval_at,
    exp_vector,
    from_kappa_rep,
    monomial_to_wick,
    monomial_to_wick_ksum,
    random_chaos,
    s_transform,
    to_kappa_rep,
    wick_to_monomial,
    wick_to_monomial_ksum,
)
from .derivatives import derivative, regularity_check, NotDifferentiableError
from .fockop import (
    FockOperator,
    Gamma,
    KernelSpec,
    adjoint,
    conv_op,
    dGamma,
    exp_conv,
    exp_lowering,
    gross_laplacian,
    number_op,
    operator_symbol,
    translation_op,
    wick_exp,
    wick_mult_op,
    wick_product,
    xi_lm,
    SymbolTailError,
)
from .quadrature import InsufficientOrderError, fg_oracle, gh_grid, mehler_oracle
from .symtensor import (
    SymTensor,
    gamma_n,
    map_pow,
    multi_indices,
    multinomial_weights,
    pair,
    power,
    pullback_pow,
    right_contract,
    sym_dim,
    sym_product,
    trace_tensor,
)
from .transforms import (
    fourier_gauss,
    fourier_mehler_adjoint,
    fourier_op,
    gamma_kappa,
    generator,
    group_P,
    n_kappa,
    renorm_op,
    scaling,
    theta_inv,
    theta_op,
)

__all__ = ["SUITES", "RunConfig", "Entry", "run_suite", "run_suites", "SUITE_FUNCS"]

SUITES = ("tensor", "chaos", "algebra", "transforms", "mehler", "regularity")

# checks whose accuracy is limited by the truncation tail need this many degrees
TAIL_MIN_NMAX = 10

DEFAULT_A = (0.0, 0.5, 0.3 + 0.2j, 0.7, -0.4 + 0.1j, 0.25)
DEFAULT_B = (-1.0, 0.5, -0.6 + 0.4j, 0.0, 0.3 - 0.5j, -0.2)
DEFAULT_T = (0.3, -0.5, 1.0)
DEFAULT_THETA = (0.4, 1.3, -2.0)


@dataclass
class RunConfig:
    dim: int = 2
    nmax: int = 10
    quad_order: int = 16
    tol_exact: float = 1e-11
    tol_oracle: float = 1e-9
    seed: int = 0
    a: tuple = DEFAULT_A
    b: tuple = DEFAULT_B
    t: tuple = DEFAULT_T
    theta: tuple = DEFAULT_THETA

    def validate(self):
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.nmax < 2:
            raise ValueError("nmax must be at least 2")
        if self.quad_order < 1:
            raise ValueError("quad-order must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if not (self.tol_exact > 0 and self.tol_oracle > 0):
            raise ValueError("tolerances must be positive")
        if len(self.a) != len(self.b) and 1 not in (len(self.a), len(self.b)):
            raise ValueError("--a and --b must have equal length (or one of them length 1)")
        return self

    def pairs(self) -> list[tuple[complex, complex]]:
        a, b = list(self.a), list(self.b)
        if not a or not b:
            return []
        if len(a) == 1:
            a = a * len(b)
        if len(b) == 1:
            b = b * len(a)
        return [(complex(x), complex(y)) for x, y in zip(a, b)]

    def to_dict(self) -> dict:
        c = lambda z: [complex(z).real, complex(z).imag]
        return {
            "dim": self.dim,
            "nmax": self.nmax,
            "quad_order": self.quad_order,
            "tol_exact": self.tol_exact,
            "tol_oracle": self.tol_oracle,
            "seed": self.seed,
            "a": [c(z) for z in self.a],
            "b": [c(z) for z in self.b],
            "t": [float(x) for x in self.t],
            "theta": [float(x) for x in self.theta],
        }


@dataclass
class Entry:
    suite: str
    invariant: str
    paper_ref: str
    max_residual: float
    tolerance: float
    passed: bool
    cases: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        r = self.max_residual
        return {
            "suite": self.suite,
            "invariant": self.invariant,
            "paper_ref": self.paper_ref,
            "max_residual": r if math.isfinite(r) else None,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.entries: list[Entry] = []

    def record(self, invariant: str, ref: str, residuals, tol: float):
        residuals = [float(r) for r in residuals]
        if not residuals:
            return
        worst = math.inf if any(not math.isfinite(r) for r in residuals) else max(residuals)
        self.entries.append(Entry(self.suite, invariant, ref, worst, float(tol), worst <= tol, len(residuals)))


# -- residual helpers ------------------------------------------------------------


def _rel(x, y) -> float:
    """``|x - y| / |y|`` for scalars or arrays (absolute when ``y`` vanishes)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    den = float(np.linalg.norm(y))
    num = float(np.linalg.norm(x - y))
    return num / den if den > 0 else num


def _trel(f: SymTensor, g: SymTensor) -> float:
    return _rel(f.coeffs, g.coeffs)


def _vrel(u: ChaosVector, v: ChaosVector, upto: int | None = None) -> float:
    """Relative Fock-norm distance, optionally restricted to degrees <= ``upto``."""
    if upto is not None:
        u, v = u.truncate(upto), v.truncate(upto)
    den = v.norm()
    num = (u - v).norm()
    return num / den if den > 0 else num


def _cvec(rng, d, scale=1.0):
    return scale * (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2 * d)


def _probe(rng, d, radius):
    """Random complex vector of fixed Euclidean norm (keeps truncation tails predictable)."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return radius * v / np.linalg.norm(v)


def _rtensor(rng, d, n, scale=1.0):
    size = sym_dim(d, n)
    return SymTensor(d, n, scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size)))


def _cmat(rng, d, scale=1.0):
    return scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2 * d)


def _symbol_ratio(op: FockOperator, xi, eta, ref: complex) -> float:
    """``|symbol - ref|`` measured in units of the computed tail estimate.

    A value <= 1 means the truncated symbol sits within its tail bound
    (plus a roundoff allowance of 1e-12 relative).
    """
    try:
        sv = operator_symbol(op, xi, eta, tol=1e-9)
    except SymbolTailError:
        return math.inf
    return abs(sv.value - ref) / (sv.tail + 1e-12 * max(abs(ref), 1.0))


def _hermite(n: int, x: np.ndarray) -> np.ndarray:
    """Probabilists' Hermite polynomial by the three-term recursion."""
    h0, h1 = np.ones_like(x), x
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, x * h1 - k * h0
    return h1


def _poly_derivs(phi: ChaosVector, x: np.ndarray):
    """Gradient and Laplacian of the polynomial ``phi`` at a single point ``x``."""
    mono = wick_to_monomial(phi) if phi.rep == "wick" else phi
    d = phi.dim
    x = np.asarray(x, dtype=complex)
    grad = np.zeros(d, dtype=complex)
    lap = 0.0 + 0.0j
    for n, f in enumerate(mono.coeffs):
        if n == 0 or not np.any(f):
            continue
        al = multi_indices(d, n)
        c = multinomial_weights(d, n) * f
        for i in range(d):
            e = al.copy()
            mask = e[:, i] >= 1
            e[mask, i] -= 1
            grad[i] += np.sum(c[mask] * al[mask, i] * np.prod(x[None, :] ** e[mask], axis=1))
            mask2 = al[:, i] >= 2
            e2 = al.copy()
            e2[mask2, i] -= 2
            lap += np.sum(c[mask2] * al[mask2, i] * (al[mask2, i] - 1) * np.prod(x[None, :] ** e2[mask2], axis=1))
    return grad, lap


# -- suites ------------------------------------------------------------------------


def suite_tensor(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("tensor")
    d, N, tol = cfg.dim, cfg.nmax, cfg.tol_exact

    res = []
    for _ in range(50):
        xi, eta = _cvec(rng, d), _cvec(rng, d)
        for n in range(N + 1):
            # scale by the absolute-value sum so near-orthogonal draws are not ill-conditioned
            scale = float(np.abs(xi) @ np.abs(eta)) ** n
            res.append(abs(pair(power(xi, n), power(eta, n)) - complex(xi @ eta) ** n) / scale)
    R.record("pairing power law", "pairing of tensor powers equals a power of the bilinear form", res, tol)

    tau = trace_tensor(d)
    res = [_rel(pair(tau, tau), d)]
    for _ in range(20):
        xi = _cvec(rng, d)
        res.append(_rel(pair(tau, power(xi, 2)), xi @ xi))
    R.record("trace kernel", "trace operator as a symmetric 2-tensor", res, tol)

    res_c, res_comm, res_assoc = [], [], []
    for _ in range(20):
        n, m = rng.integers(0, N // 2 + 1, size=2)
        f, g = _rtensor(rng, d, n), _rtensor(rng, d, m)
        h = _rtensor(rng, d, int(rng.integers(0, 3)))
        xi = _cvec(rng, d)
        fg = sym_product(f, g)
        res_c.append(_rel(pair(fg, power(xi, n + m)), pair(f, power(xi, n)) * pair(g, power(xi, m))))
        res_comm.append(_trel(sym_product(g, f), fg))
        res_assoc.append(_trel(sym_product(fg, h), sym_product(f, sym_product(g, h))))
    R.record("symmetric product pairing contract", "symmetric tensor product", res_c, tol)
    R.record("symmetric product commutative", "symmetric tensor product", res_comm, tol)
    R.record("symmetric product associative", "symmetric tensor product", res_assoc, tol)

    res_ch, res_adj = [], []
    for _ in range(20):
        m = int(rng.integers(0, N // 2 + 1))
        n = int(rng.integers(0, N - m + 1))
        kappa = _rtensor(rng, d, m)
        xi = _cvec(rng, d)
        res_ch.append(_trel(right_contract(kappa, power(xi, n + m)), pair(kappa, power(xi, m)) * power(xi, n)))
        f, g = _rtensor(rng, d, n + m), _rtensor(rng, d, n)
        res_adj.append(_rel(pair(right_contract(kappa, f), g), pair(f, sym_product(g, kappa))))
    R.record("right contraction characterization", "right contraction", res_ch, tol)
    R.record("right contraction adjointness", "right contraction", res_adj, tol)

    res_ch, res_mul, res_g, res_add, res_pb = [], [], [], [], []
    for _ in range(10):
        S, T = _cmat(rng, d), _cmat(rng, d)
        xi = _cvec(rng, d)
        for n in range(min(N, 6) + 1):
            res_ch.append(_trel(map_pow(T, power(xi, n)), power(T @ xi, n)))
            f = _rtensor(rng, d, n)
            res_mul.append(_trel(map_pow(S @ T, f), map_pow(S, map_pow(T, f))))
            res_add.append(_trel(gamma_n(S + T, f), gamma_n(S, f) + gamma_n(T, f)))
            if n >= 1:
                ref = n * sym_product(power(T @ xi, 1), power(xi, n - 1))
                res_g.append(_trel(gamma_n(T, power(xi, n)), ref))
            res_pb.append(_rel(pair(pullback_pow(T, f), power(xi, n)), pair(f, power(T @ xi, n))))
    R.record("tensor power of a map", "second quantization on one chaos", res_ch, tol)
    R.record("tensor power multiplicativity", "second quantization on one chaos", res_mul, tol)
    R.record("derivation map characterization", "derivation map on one chaos", res_g, tol)
    R.record("derivation map additivity", "derivation map on one chaos", res_add, tol)
    R.record("pullback characterization", "pulled-back kernels", res_pb, tol)
    return R.entries


def suite_chaos(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("chaos")
    d, N = cfg.dim, cfg.nmax
    tol_strict = min(cfg.tol_exact, 1e-12)
    tails = N >= TAIL_MIN_NMAX

    x = rng.uniform(-3, 3, size=20)
    res = []
    for n in range(min(N, 8) + 1):
        vals = eval_at(basis_vector(1, N, (n,)), x[:, None])
        res.append(_rel(vals, _hermite(n, x)))
    R.record("Hermite consistency", "one-dimensional Wick powers are Hermite polynomials", res, cfg.tol_oracle)

    res_mw, res_wm = [], []
    for _ in range(10):
        deg = min(N, 8)
        mono = random_chaos(rng, d, N, degree=deg, rep="monomial")
        wick = random_chaos(rng, d, N, degree=deg, rep="wick")
        res_mw.append(_vrel(monomial_to_wick(mono), monomial_to_wick_ksum(mono)))
        res_wm.append(_vrel(wick_to_monomial(wick), wick_to_monomial_ksum(wick)))
    R.record("monomial to Wick vs k-sum", "renormalization operator", res_mw, tol_strict)
    R.record("Wick to monomial vs k-sum", "renormalization operator", res_wm, tol_strict)

    res_routes, res_rt1, res_rt2 = [], [], []
    for r in (1, 2, 3):
        for _ in range(20):
            kappa = _rtensor(rng, d, r, scale=0.3)
            psi = random_chaos(rng, d, N, rep="kappa", kappa=kappa)
            res_routes.append(_vrel(from_kappa_rep(psi, "direct"), from_kappa_rep(psi, "operator")))
            back = to_kappa_rep(from_kappa_rep(psi), kappa)
            res_rt1.append(_vrel(back.relabel("wick"), psi.relabel("wick")))
        phi = random_chaos(rng, d, N)
        res_rt2.append(_vrel(from_kappa_rep(to_kappa_rep(phi, kappa)), phi))
    R.record("generalized normal ordering routes", "generalized Wick tensors", res_routes, tol_strict)
    R.record("kappa representation round trip", "unique kappa decomposition", res_rt1 + res_rt2, tol_strict)

    res_s, res_p, res_e = [], [], []
    for _ in range(20 if tails else 0):
        xi, eta = _probe(rng, d, 0.5), _probe(rng, d, 0.5)
        E = exp_vector(eta, N)
        res_s.append(_rel(s_transform(E, xi), np.exp(xi @ eta)))
        res_p.append(_rel(dual_pair(exp_vector(xi, N), E), np.exp(xi @ eta)))
        y = rng.standard_normal(d)
        xr = _probe(rng, d, 0.15).real
        res_e.append(_rel(eval_at(exp_vector(xr, N), y), np.exp(xr @ y - 0.5 * xr @ xr)))
    R.record("S-transform of exponential vectors", "S-transform", res_s, cfg.tol_oracle)
    R.record("pairing of exponential vectors", "duality pairing", res_p, cfg.tol_oracle)
    R.record("exponential vector as a function", "Wick exponential", res_e, cfg.tol_oracle)

    res = []
    for rep in ("wick", "monomial", "kappa"):
        kappa = _rtensor(rng, d, 2) if rep == "kappa" else None
        phi = random_chaos(rng, d, N, rep=rep, kappa=kappa)
        back = ChaosVector.from_json(phi.to_json())
        res.append(0.0 if (back.rep == phi.rep and np.array_equal(back.flat(), phi.flat())) else math.inf)
    R.record("JSON round trip", "serialization", res, 0.0)
    return R.entries


def suite_algebra(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("algebra")
    d, N, tol = cfg.dim, cfg.nmax, cfg.tol_exact
    Delta, Num = gross_laplacian(d, N), number_op(d, N)
    tau = trace_tensor(d)
    tails = N >= TAIL_MIN_NMAX
    deg = min(3, N // 2)

    res_lap, res_num = [], []
    for _ in range(10):
        phi = random_chaos(rng, d, N)
        y = rng.standard_normal(d)
        grad, lap = _poly_derivs(phi, y)
        res_lap.append(_rel(eval_at(Delta @ phi, y), lap))
        res_num.append(_rel(eval_at(Num @ phi, y), -lap + y @ grad))
    R.record("Gross Laplacian is the trace of the Hessian", "Gross Laplacian", res_lap, cfg.tol_oracle)
    R.record("number operator is the Ornstein-Uhlenbeck operator", "number operator", res_num, cfg.tol_oracle)

    res = [Num.fock_rel_diff(xi_lm(KernelSpec(1, 1, tau), d, N)), Num.fock_rel_diff(dGamma(np.eye(d), N)),
           Delta.fock_rel_diff(xi_lm(KernelSpec(0, 2, tau), d, N))]
    R.record("number operator and Laplacian as kernel operators", "integral kernel operators", res, tol)

    res_g, res_dg = [], []
    for _ in range(5):
        S, T = _cmat(rng, d), _cmat(rng, d)
        res_g.append((Gamma(S, N) @ Gamma(T, N)).fock_rel_diff(Gamma(S @ T, N)))
        B = rng.standard_normal((d, d))
        res_dg.append(derivative(lambda s: Gamma(expm(s * B), N)).fock_rel_diff(dGamma(B, N)))
    res_g.append(Gamma(np.eye(d), N).fock_rel_diff(FockOperator.identity(d, N)))
    R.record("second quantization is multiplicative", "second quantization", res_g, tol)
    R.record("differential second quantization is the generator", "second quantization", res_dg, tol)

    res_tr = []
    for _ in range(10):
        phi = random_chaos(rng, d, N, degree=6)
        y = rng.standard_normal(d)
        xs = rng.standard_normal((5, d))
        res_tr.append(_rel(eval_at(translation_op(y, N) @ phi, xs), eval_at(phi, xs + y)))
    R.record("translation operator shifts the argument", "translation", res_tr, tol)

    res = []
    for _ in range(5):
        z1, z2 = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        res.append((exp_lowering(Delta, z1) @ exp_lowering(Delta, z2)).fock_rel_diff(exp_lowering(Delta, z1 + z2)))
    R.record("heat group law", "exponential of the Gross Laplacian", res, tol)

    res_inv, res_dual, res_mc = [], [], []
    for _ in range(5):
        A = (Gamma(_cmat(rng, d), N) + xi_lm(KernelSpec(1, 2, _rtensor(rng, d, 3)), d, N)
             + xi_lm(KernelSpec(2, 1, _rtensor(rng, d, 3)), d, N))
        res_inv.append(adjoint(adjoint(A)).fock_rel_diff(A))
        Phi, phi = random_chaos(rng, d, N), random_chaos(rng, d, N)
        res_dual.append(_rel(dual_pair(adjoint(A) @ Phi, phi), dual_pair(Phi, A @ phi)))
        f = random_chaos(rng, d, N, degree=deg)
        res_mc.append(adjoint(wick_mult_op(f)).fock_rel_diff(conv_op(f)))
    R.record("adjoint is an involution", "adjoint operator", res_inv, tol)
    R.record("adjoint transposes the duality pairing", "adjoint operator", res_dual, tol)
    R.record("Wick multiplication is adjoint to convolution", "convolution operator", res_mc, tol)

    res_exp, res_s, res_hom, res_ec, res_eig = [], [], [], [], []
    for _ in range(5):
        f = random_chaos(rng, d, N, degree=deg)
        g = random_chaos(rng, d, N, degree=deg)
        res_exp.append(_vrel(wick_exp(f + g), wick_product(wick_exp(f), wick_exp(g))))
        xi = _cvec(rng, d)
        res_s.append(_rel(s_transform(wick_product(f, g), xi), s_transform(f, xi) * s_transform(g, xi)))
        res_hom.append(conv_op(wick_product(f, g)).fock_rel_diff(conv_op(f) @ conv_op(g)))
        res_ec.append(exp_conv(f).fock_rel_diff(conv_op(wick_exp(f))))
        E = exp_vector(xi, N)
        res_eig.append(_vrel(conv_op(f) @ E, s_transform(f, xi) * E, upto=N - f.degree()))
    R.record("Wick exponential turns sums into Wick products", "Wick exponential", res_exp, tol)
    R.record("S-transform is multiplicative", "S-transform", res_s, tol)
    R.record("convolution homomorphism", "convolution operators form a vector algebra", res_hom, tol)
    R.record("exponential of convolution", "convolution operators", res_ec, tol)
    R.record("exponential vectors are eigenvectors of convolution", "convolution operators", res_eig, tol)

    res = []
    for _ in range(5 if tails else 0):
        xi, eta = _probe(rng, d, 0.2), _probe(rng, d, 0.2)
        res.append(_symbol_ratio(FockOperator.identity(d, N), xi, eta, np.exp(xi @ eta)))
    R.record("identity symbol within tail bound", "operator symbol", res, 1.0)
    return R.entries


def suite_transforms(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("transforms")
    d, N, tol = cfg.dim, cfg.nmax, cfg.tol_exact
    tol_d = min(cfg.tol_exact, 1e-12)
    Id = FockOperator.identity(d, N)
    Delta, Num = gross_laplacian(d, N), number_op(d, N)
    tau = trace_tensor(d)
    grid = gh_grid(cfg.quad_order, d)
    Th = theta_op(d, N)
    tails = N >= TAIL_MIN_NMAX

    res_inv, res_th = [(Th @ theta_inv(d, N)).fock_rel_diff(Id)], []
    for _ in range(5):
        c = random_chaos(rng, d, N, rep="monomial")
        res_th.append(_vrel(Th @ monomial_to_wick(c), c.relabel("wick")))
    R.record("renormalization operator inverse", "renormalization operator", res_inv, tol)
    R.record("renormalization operator orders monomials", "renormalization operator", res_th, tol)
    res = []
    for _ in range(5 if tails else 0):
        xi = _probe(rng, d, 0.2)
        plain_exp = exp_vector(xi, N) * np.exp(0.5 * xi @ xi)
        # the top degrees miss inputs cut off by the truncation
        res.append(_vrel(Th @ plain_exp, exp_vector(xi, N), upto=max(N - 4, 0)))
    R.record("renormalization of the plain exponential", "renormalization operator", res, cfg.tol_oracle)

    deg = min(6, N, grid.exact_degree)
    res_fq, res_fk, res_kq, res_sym, res_even = [], [], [], [], []
    for _ in range(20):
        a, b = complex(*rng.standard_normal(2)) * 0.6, complex(*rng.standard_normal(2)) * 0.6
        phi = random_chaos(rng, d, N, degree=deg)
        y = rng.standard_normal(d)
        FG = fourier_gauss(a * a, b, d, N)
        q = fg_oracle(phi, a, b, y, grid)
        res_fq.append(_rel(eval_at(FG @ phi, y), q))
        res_even.append(_rel(fg_oracle(phi, -a, b, y, grid), q))
        if abs(1 - b * b) > 1e-3:
            GK = gamma_kappa(b * np.eye(d), (a * a / (1 - b * b)) * tau, N)
            res_fk.append(FG.fock_rel_diff(GK))
            res_kq.append(_rel(eval_at(GK @ phi, y), q))
        rad = 0.2 / max(1.0, abs(a), abs(b))
        xi, eta = _probe(rng, d, rad), _probe(rng, d, rad)
        ref = np.exp(0.5 * (a * a + b * b - 1) * (xi @ xi) + b * (xi @ eta))
        if tails:
            res_sym.append(_symbol_ratio(FG, xi, eta, ref))
    R.record("Fourier-Gauss factorization vs quadrature", "Fourier-Gauss transform", res_fq, cfg.tol_oracle)
    R.record("Fourier-Gauss factorization vs renormalized second quantization",
             "Fourier-Gauss transform as renormalized second quantization", res_fk, cfg.tol_oracle)
    R.record("renormalized second quantization vs quadrature",
             "Fourier-Gauss transform as renormalized second quantization", res_kq, cfg.tol_oracle)
    R.record("Fourier-Gauss symbol within tail bound", "Fourier-Gauss operator symbol", res_sym, 1.0)
    R.record("Fourier-Gauss depends on the square of the scale", "Fourier-Gauss transform", res_even, cfg.tol_oracle)

    res_mono, res_pt, res_k0 = [], [], []
    for _ in range(5):
        lam = complex(*rng.standard_normal(2))
        S = scaling(lam, d, N)
        phi = random_chaos(rng, d, N, degree=6)
        mono = wick_to_monomial(phi)
        scaled = ChaosVector(d, N, [lam**n * c for n, c in enumerate(mono.coeffs)], "monomial")
        res_mono.append(_vrel(wick_to_monomial(S @ phi), scaled))
        y = rng.standard_normal(d)
        res_pt.append(_rel(eval_at(S @ phi, y), eval_at(phi, lam * y)))
        res_k0.append(S.fock_rel_diff(gamma_kappa(lam * np.eye(d), 0 * tau, N)))
    R.record("scaling multiplies monomial degree n by lambda^n", "scaling operator", res_mono, tol)
    R.record("scaling rescales the argument", "scaling operator", res_pt, tol)
    R.record("scaling as renormalized second quantization", "scaling operator", res_k0, tol)

    F = fourier_op(d, N)
    res_sym, res_fm = [], []
    for _ in range(5 if tails else 0):
        xi, eta = _probe(rng, d, 0.2), _probe(rng, d, 0.2)
        res_sym.append(_symbol_ratio(F, xi, eta, np.exp(-1j * (xi @ eta) - 0.5 * (eta @ eta))))
    res_fm.append(adjoint(fourier_mehler_adjoint(-np.pi / 2, d, N)).fock_rel_diff(F))
    R.record("Fourier symbol within tail bound", "Fourier transform operator symbol", res_sym, 1.0)
    R.record("Fourier transform is a Fourier-Mehler member", "Fourier-Mehler transform", res_fm, tol)

    res_rk, res_rep, res_tau = [], [], []
    for r in (2, 3):
        for _ in range(3):
            T = _cmat(rng, d) + np.eye(d)
            kappa = _rtensor(rng, d, r, scale=0.3)
            res_rk.append(gamma_kappa(T, kappa, N).fock_rel_diff(renorm_op(Gamma(T, N), kappa)))
            That = (Gamma(T, N) + xi_lm(KernelSpec(1, 2, _rtensor(rng, d, 3)), d, N)
                    + xi_lm(KernelSpec(0, 1, _rtensor(rng, d, 1)), d, N))
            psi = random_chaos(rng, d, N, rep="kappa", kappa=kappa)
            lhs = renorm_op(That, kappa) @ from_kappa_rep(psi)
            moved = (That @ psi.relabel("wick")).relabel("kappa", kappa)
            res_rep.append(_vrel(lhs, from_kappa_rep(moved)))
            res_tau.append(renorm_op(That, tau).fock_rel_diff(That))
    R.record("renormalized second quantization closed form", "renormalized second quantization", res_rk, tol)
    R.record("renormalized operator acts on kappa coefficients", "renormalized operators", res_rep, tol)
    R.record("renormalization by the trace kernel is trivial", "renormalized operators", res_tau, tol)

    res_cf, res_grp, res_sym = [], [], []
    for th in cfg.theta:
        G = fourier_mehler_adjoint(th, d, N)
        closed = Gamma(np.exp(1j * th) * np.eye(d), N) @ exp_lowering(Delta, 0.5j * np.exp(1j * th) * np.sin(th))
        res_cf.append(G.fock_rel_diff(closed))
        for th2 in cfg.theta:
            res_grp.append((G @ fourier_mehler_adjoint(th2, d, N)).fock_rel_diff(fourier_mehler_adjoint(th + th2, d, N)))
        xi, eta = _probe(rng, d, 0.2), _probe(rng, d, 0.2)
        e = np.exp(1j * th)
        if tails:
            res_sym.append(_symbol_ratio(adjoint(G), xi, eta, np.exp(e * (xi @ eta) + 0.5j * e * np.sin(th) * (eta @ eta))))
    R.record("Fourier-Mehler adjoint closed form", "Fourier-Mehler transform", res_cf, tol)
    R.record("Fourier-Mehler group law", "Fourier-Mehler transform", res_grp, 1e-10)
    R.record("Fourier-Mehler symbol within tail bound", "Fourier-Mehler transform", res_sym, 1.0)
    gen = derivative(lambda th: fourier_mehler_adjoint(th, d, N))
    R.record("Fourier-Mehler generator", "Fourier-Mehler transform",
             [gen.fock_rel_diff(1j * (Num + 0.5 * Delta))], tol_d)

    res_nk, res_dk = [], []
    for r in (1, 2, 3):
        kappa = SymTensor(d, r, rng.standard_normal(sym_dim(d, r)))
        res_nk.append(derivative(lambda s: gamma_kappa(np.exp(s) * np.eye(d), kappa, N)).fock_rel_diff(n_kappa(kappa, N)))
        B = rng.standard_normal((d, d))
        D = derivative(lambda s: gamma_kappa(expm(s * B), kappa, N))
        closed = (dGamma(B, N) + 0.5 * xi_lm(KernelSpec(0, 2, gamma_n(B.T, tau)), d, N)
                  - 0.5 * xi_lm(KernelSpec(0, r, gamma_n(B.T, kappa)), d, N))
        res_dk.append(D.fock_rel_diff(closed))
    R.record("renormalized number operator is the generator", "renormalized number operator", res_nk, tol_d)
    R.record("derivative of renormalized second quantization", "regular one-parameter subgroup", res_dk, tol_d)

    res = [n_kappa(tau, N).fock_rel_diff(Num), n_kappa(0 * tau, N).fock_rel_diff(Num + Delta)]
    c = 0.7
    res.append(derivative(lambda s: scaling(np.exp(c * s), d, N)).fock_rel_diff(c * (Num + Delta)))
    R.record("renormalized number operator special kernels", "renormalized number operator", res, tol_d)
    res = [(b * n_kappa((1 - a / b) * tau, N)).fock_rel_diff(generator(a, b, d, N)) for a, b in cfg.pairs() if b != 0]
    R.record("Mehler generator as a renormalized number operator", "renormalized number operator", res, tol)
    return R.entries


def suite_mehler(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("mehler")
    d, N, tol = cfg.dim, cfg.nmax, cfg.tol_exact
    tol_d = min(cfg.tol_exact, 1e-12)
    grid = gh_grid(cfg.quad_order, d)
    Id = FockOperator.identity(d, N)
    pairs = cfg.pairs()
    st = np.linspace(-1.0, 1.0, 5)

    res_law, res_id, res_gen = [], [], []
    for a, b in pairs:
        Ps = {s: group_P(a, b, s, d, N) for s in st}
        for s in st:
            for t in st:
                res_law.append((Ps[s] @ Ps[t]).fock_rel_diff(group_P(a, b, s + t, d, N)))
        res_id.append(group_P(a, b, 0.0, d, N).fock_rel_diff(Id))
        res_gen.append(derivative(lambda t: group_P(a, b, t, d, N)).fock_rel_diff(generator(a, b, d, N)))
    R.record("group law", "Mehler-type transformation group", res_law, 1e-10)
    R.record("identity at zero", "Mehler-type transformation group", res_id, tol)
    R.record("infinitesimal generator", "Mehler-type transformation group", res_gen, tol_d)

    x2 = monomial_to_wick(ChaosVector.from_components({2: power(np.array([1.0]), 2)}, 1, N, rep="monomial"))
    res = []
    for t in cfg.t:
        P = group_P(0.0, -1.0, t, 1, N)
        for y in rng.standard_normal(5):
            ref = np.exp(-2 * t) * y * y + (1 - np.exp(-2 * t))
            res.append(_rel(eval_at(P @ x2, np.array([y])), ref))
    R.record("Ornstein-Uhlenbeck closed form", "Mehler formula", res, tol)

    res = []
    deg = min(6, N, grid.exact_degree)
    for a, b in pairs:
        for t in cfg.t:
            phi = random_chaos(rng, d, N, degree=deg)
            y = rng.standard_normal(d)
            try:
                q = mehler_oracle(phi, a, b, t, y, grid)
            except InsufficientOrderError:
                res.append(math.inf)
                continue
            res.append(_rel(eval_at(group_P(a, b, t, d, N) @ phi, y), q))
    R.record("group vs quadrature oracle", "Mehler-type transformation group", res, cfg.tol_oracle)

    res = []
    for _ in range(5):
        a = complex(*rng.standard_normal(2)) * 0.5
        t = float(rng.uniform(0.2, 1.0))
        phi = random_chaos(rng, d, N, degree=6)
        P0 = group_P(a, 0.0, t, d, N) @ phi
        r3 = (group_P(a, 1e-3, t, d, N) @ phi - P0).norm()
        r4 = (group_P(a, 1e-4, t, d, N) @ phi - P0).norm()
        res.append(abs(r3 / r4 - 10.0))
    R.record("limit b to 0 is first order", "l'Hopital limit of the Mehler group", res, 2.0)
    return R.entries


def suite_regularity(cfg: RunConfig, rng) -> list[Entry]:
    R = _Recorder("regularity")
    d, N = cfg.dim, cfg.nmax

    def dev(family, gen):
        try:
            rep = regularity_check(family, gen)
        except NotDifferentiableError:
            return math.inf
        return rep.max_deviation

    B = rng.standard_normal((d, d))
    R.record("second quantization family", "regular one-parameter groups",
             [dev(lambda t: Gamma(expm(t * B), N), dGamma(B, N))], 0.2)
    phi = random_chaos(rng, d, N, degree=3)
    R.record("exponential convolution family", "regular one-parameter groups",
             [dev(lambda t: exp_conv(phi * t), conv_op(phi))], 0.2)
    R.record("Mehler-type family", "regular one-parameter groups",
             [dev(lambda t, a=a, b=b: group_P(a, b, t, d, N), generator(a, b, d, N)) for a, b in cfg.pairs()], 0.2)
    return R.entries


SUITE_FUNCS = {
    "tensor": suite_tensor,
    "chaos": suite_chaos,
    "algebra": suite_algebra,
    "transforms": suite_transforms,
    "mehler": suite_mehler,
    "regularity": suite_regularity,
}


def run_suite(name: str, cfg: RunConfig) -> list[Entry]:
    if name not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    rng = np.random.default_rng([cfg.seed, SUITES.index(name)])
    return SUITE_FUNCS[name](cfg, rng)


def run_suites(name: str, cfg: RunConfig) -> list[Entry]:
    cfg.validate()
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        out.extend(run_suite(n, cfg))
    return out
