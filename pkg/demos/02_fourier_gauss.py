"""
Fourier-Gauss transforms three ways
===================================

The transform phi -> int phi(a x + b y) dmu(x) built from the operator
algebra, from a renormalized second quantization, and by Gauss-Hermite
quadrature.
"""

import numpy as np

from fockcalc import eval_at, fg_oracle, fourier_gauss, gamma_kappa, gh_grid, operator_symbol, random_chaos, trace_tensor

rng = np.random.default_rng(0)
d, nmax = 2, 6

phi = random_chaos(rng, d, nmax)
a, b = 0.4 + 0.3j, -0.6 + 0.2j
y = np.array([0.3, -0.8])

# operator route: Gamma(b) exp(1/2 (a^2 + b^2 - 1) Delta)
v1 = eval_at(fourier_gauss(a * a, b, d, nmax)(phi), y)

# renormalized second quantization with sigma^2 = a^2 / (1 - b^2)
sigma2 = a * a / (1 - b * b)
v2 = eval_at(gamma_kappa(b * np.eye(d), sigma2 * trace_tensor(d), nmax)(phi), y)

# quadrature, 4 nodes per axis is exact for degree 6
v3 = fg_oracle(phi, a, b, y, gh_grid(4, d))

print(v1)
print(v2)
print(v3)
print("spread:", max(abs(v1 - v2), abs(v1 - v3), abs(v2 - v3)))

# The quadrature only sees a^2: flipping the sign of a changes nothing.
print(abs(fg_oracle(phi, -a, b, y, gh_grid(4, d)) - v3))

# Operator symbol against its closed form, with the truncation tail estimate.
xi, eta = np.array([0.1, 0.2]), np.array([-0.15, 0.05])
s = operator_symbol(fourier_gauss(a * a, b, d, 14), xi, eta)
closed = np.exp(0.5 * (a * a + b * b - 1) * (xi @ xi) + b * (xi @ eta))
print(s.value, closed, "tail", s.tail)
