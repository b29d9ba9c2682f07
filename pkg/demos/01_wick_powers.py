"""
Wick powers and Hermite polynomials
===================================

Chaos vectors store symmetric tensor coefficients.  In one dimension the
Wick basis vectors are the probabilists' Hermite polynomials.
"""

# coding: utf-8

import numpy as np

from fockcalc import ChaosVector, basis_vector, eval_at, monomial_to_wick, wick_to_monomial

# Start with x**4 written in monomials and move it to Wick coefficients.

x4 = ChaosVector(1, 4, [[0], [0], [0], [0], [1]], rep="monomial")
w = monomial_to_wick(x4)
print("x^4 in Wick coefficients:", np.real([c[0] for c in w.coeffs]))   # 3, 0, 6, 0, 1

# And the other way: :x^4: as an ordinary polynomial.

he4 = wick_to_monomial(basis_vector(1, 4, (4,)))
print(":x^4: in monomials:     ", np.real([c[0] for c in he4.coeffs]))  # 3, 0, -6, 0, 1

# Evaluate the Wick basis vectors on a grid and compare with the recursion
# He_{n+1} = x He_n - n He_{n-1}.

x = np.linspace(-3, 3, 7)
prev, cur = np.ones_like(x), x.copy()
for n in range(1, 7):
    vals = eval_at(basis_vector(1, 6, (n,)), x[:, None]).real
    print(n, np.max(np.abs(vals - cur)))
    prev, cur = cur, x * cur - n * prev

# Two dimensions: the basis vector at alpha carries the weight n!/alpha!,
# so the product He_1(x1) He_2(x2) needs the coefficient 1/3.

v = basis_vector(2, 3, (1, 2), 1 / 3)
pt = np.array([0.7, -1.2])
print(eval_at(v, pt).real, pt[0] * (pt[1] ** 2 - 1))
