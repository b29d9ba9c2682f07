"""Shared strategies and random builders for the test modules."""

import numpy as np
from hypothesis import strategies as st

from fockcalc.symtensor import SymTensor, sym_dim

finite = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def complex_vectors(d):
    return st.lists(complexes, min_size=d, max_size=d).map(lambda v: np.array(v, dtype=complex))


def rtensor(rng, d, n, scale=1.0):
    size = sym_dim(d, n)
    return SymTensor(d, n, scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size)))


def cmat(rng, d, scale=1.0):
    return scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))


def cvec(rng, d, scale=1.0):
    return scale * (rng.standard_normal(d) + 1j * rng.standard_normal(d))


def rel(x, y):
    x, y = np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
    den = np.linalg.norm(y)
    return float(np.linalg.norm(x - y) / den) if den > 0 else float(np.linalg.norm(x - y))
