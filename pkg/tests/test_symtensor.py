import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockcalc.symtensor import (
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

from .helpers import cmat, complex_vectors, cvec, rel, rtensor


# -- layout ------------------------------------------------------------------


def test_multi_indices_count_and_order():
    al = multi_indices(3, 4)
    assert al.shape == (sym_dim(3, 4), 3) == (15, 3)
    assert np.all(al.sum(axis=1) == 4)
    assert len({tuple(a) for a in al}) == 15


def test_multinomial_weights_sum_to_d_power_n():
    # sum over alpha of n!/alpha! is d^n
    for d in (1, 2, 3):
        for n in range(6):
            assert multinomial_weights(d, n).sum() == pytest.approx(d**n)


def test_from_dict_and_getitem():
    f = SymTensor.from_dict(2, 2, {(2, 0): 1.5, (1, 1): -2j})
    assert f[(2, 0)] == 1.5
    assert f[(1, 1)] == -2j
    assert f[(0, 2)] == 0
    with pytest.raises(ValueError):
        SymTensor.from_dict(2, 2, {(1, 0): 1.0})


def test_symtensor_is_immutable():
    f = power(np.array([1.0, 2.0]), 2)
    with pytest.raises(AttributeError):
        f.order = 3
    with pytest.raises(ValueError):
        f.coeffs[0] = 5


# -- pair ----------------------------------------------------------------------


def test_pair_d1_unit():
    e = np.array([1.0])
    assert pair(power(e, 2), power(e, 2)) == pytest.approx(1.0)


def test_pair_hand_expansion():
    xi, eta = np.array([1.0, 2.0]), np.array([3.0, 1.0])
    assert pair(power(xi, 2), power(eta, 2)) == pytest.approx(25.0)


def test_pair_with_zero():
    f = power(np.array([0.3, -1.2]), 3)
    assert pair(f, SymTensor.zeros(2, 3)) == 0


def test_pair_mismatch_errors():
    with pytest.raises(ValueError):
        pair(SymTensor.zeros(2, 2), SymTensor.zeros(2, 3))
    with pytest.raises(ValueError):
        pair(SymTensor.zeros(2, 2), SymTensor.zeros(3, 2))


@given(complex_vectors(3), complex_vectors(3), st.integers(0, 8))
def test_pair_power_law(xi, eta, n):
    scale = (np.abs(xi) @ np.abs(eta)) ** n
    assert abs(pair(power(xi, n), power(eta, n)) - (xi @ eta) ** n) <= 1e-12 * max(scale, 1e-300)


def test_pair_symmetric(rng):
    f, g = rtensor(rng, 3, 4), rtensor(rng, 3, 4)
    assert pair(f, g) == pytest.approx(pair(g, f), rel=1e-14)


# -- power / trace -------------------------------------------------------------


def test_power_small_cases():
    assert power(np.array([2.0, 5.0]), 0).coeffs.tolist() == [1.0]
    assert power(np.array([2.0]), 3)[(3,)] == 8.0
    with pytest.raises(ValueError):
        power(np.array([1.0]), -1)


def test_power_pair_50_random(rng):
    for _ in range(50):
        xi, eta = cvec(rng, 2), cvec(rng, 2)
        assert rel(pair(power(xi, 2), power(eta, 2)), (xi @ eta) ** 2) < 1e-12


def test_trace_tensor():
    assert trace_tensor(1)[(2,)] == 1.0
    t3 = trace_tensor(3)
    assert t3[(2, 0, 0)] == t3[(0, 0, 2)] == 1.0
    assert t3[(1, 1, 0)] == 0.0
    assert pair(trace_tensor(2), trace_tensor(2)) == pytest.approx(2.0)
    assert pair(t3, t3) == pytest.approx(3.0)


def test_trace_pairs_to_dot(rng):
    xi = cvec(rng, 3)
    assert rel(pair(trace_tensor(3), power(xi, 2)), xi @ xi) < 1e-14


# -- sym_product -----------------------------------------------------------------


def test_sym_product_unit(rng):
    f = rtensor(rng, 2, 3)
    assert sym_product(f, SymTensor.scalar(2)).allclose(f)
    assert sym_product(SymTensor.scalar(2), f).allclose(f)


def test_sym_product_of_powers(rng):
    xi = cvec(rng, 3)
    assert sym_product(power(xi, 2), power(xi, 3)).allclose(power(xi, 5), rtol=1e-13)


def test_sym_product_basis_vectors_contract(rng):
    e1, e2 = power(np.array([1.0, 0.0]), 1), power(np.array([0.0, 1.0]), 1)
    f = sym_product(e1, e2)
    # e1 (x)^ e2 has coefficient 1/2 on the mixed index
    assert f[(1, 1)] == pytest.approx(0.5)
    for _ in range(20):
        xi = cvec(rng, 2)
        assert rel(pair(f, power(xi, 2)), xi[0] * xi[1]) < 1e-12


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**31 - 1))
def test_sym_product_commutative_associative(n, m, seed):
    rng = np.random.default_rng(seed)
    f, g, h = rtensor(rng, 3, n), rtensor(rng, 3, m), rtensor(rng, 3, 2)
    assert sym_product(f, g).allclose(sym_product(g, f), rtol=1e-12)
    assert sym_product(sym_product(f, g), h).allclose(sym_product(f, sym_product(g, h)), rtol=1e-12)


def test_sym_product_dim_mismatch():
    with pytest.raises(ValueError):
        sym_product(SymTensor.zeros(2, 1), SymTensor.zeros(3, 1))


# -- right_contract --------------------------------------------------------------


def test_right_contract_trace_example(rng):
    xi = cvec(rng, 3)
    lhs = right_contract(trace_tensor(3), power(xi, 4))
    assert lhs.allclose((xi @ xi) * power(xi, 2), rtol=1e-13)


def test_right_contract_full_is_pair(rng):
    k, f = rtensor(rng, 2, 3), rtensor(rng, 2, 3)
    out = right_contract(k, f)
    assert out.order == 0
    assert out.coeffs[0] == pytest.approx(pair(k, f), rel=1e-14)


def test_right_contract_scalar_kernel(rng):
    f = rtensor(rng, 2, 4)
    assert right_contract(SymTensor.scalar(2), f).allclose(f)


def test_right_contract_order_error():
    with pytest.raises(ValueError):
        right_contract(SymTensor.zeros(2, 3), SymTensor.zeros(2, 2))


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**31 - 1))
def test_right_contract_adjointness(m, n, seed):
    rng = np.random.default_rng(seed)
    k, f, g = rtensor(rng, 2, m), rtensor(rng, 2, n + m), rtensor(rng, 2, n)
    assert rel(pair(right_contract(k, f), g), pair(f, sym_product(g, k))) < 1e-12


# -- map_pow / gamma_n / pullback -------------------------------------------------


def test_map_pow_identity_and_scalar(rng):
    f = rtensor(rng, 2, 4)
    assert map_pow(np.eye(2), f).allclose(f)
    assert map_pow(1.5j * np.eye(2), f).allclose((1.5j) ** 4 * f, rtol=1e-14)


def test_map_pow_characterization(rng):
    T, xi = cmat(rng, 2), cvec(rng, 2)
    for n in range(7):
        assert map_pow(T, power(xi, n)).allclose(power(T @ xi, n), rtol=1e-12)


def test_map_pow_multiplicative(rng):
    S, T, f = cmat(rng, 3), cmat(rng, 3), rtensor(rng, 3, 4)
    assert map_pow(S @ T, f).allclose(map_pow(S, map_pow(T, f)), rtol=1e-12)


def test_gamma_n_identity_and_zero(rng):
    for n in range(5):
        f = rtensor(rng, 2, n)
        assert gamma_n(np.eye(2), f).allclose(n * f, rtol=1e-14)
    g0 = gamma_n(cmat(rng, 2), SymTensor.scalar(2, 3.0))
    assert np.all(g0.coeffs == 0)


def test_gamma_n_characterization(rng):
    T, xi = cmat(rng, 2), cvec(rng, 2)
    for n in range(1, 7):
        ref = n * sym_product(power(T @ xi, 1), power(xi, n - 1))
        assert gamma_n(T, power(xi, n)).allclose(ref, rtol=1e-12)


def test_gamma_n_additive(rng):
    S, T, f = cmat(rng, 3), cmat(rng, 3), rtensor(rng, 3, 3)
    assert gamma_n(S + T, f).allclose(gamma_n(S, f) + gamma_n(T, f), rtol=1e-13)


def test_pullback_pow(rng):
    T = cmat(rng, 2)
    k = rtensor(rng, 2, 3)
    assert pullback_pow(np.eye(2), k).allclose(k)
    assert pullback_pow(2.0 * np.eye(2), k).allclose(8.0 * k)
    for _ in range(10):
        xi = cvec(rng, 2)
        assert rel(pair(pullback_pow(T, k), power(xi, 3)), pair(k, power(T @ xi, 3))) < 1e-12
    assert pullback_pow(T, k).allclose(map_pow(T.T, k))
