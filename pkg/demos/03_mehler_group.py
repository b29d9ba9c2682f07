"""
The Mehler-type group P_{a,b,t}
===============================

A one-parameter group of Fourier-Gauss transforms with generator
a Delta + b N.  For a = 0, b = -1 it is the Ornstein-Uhlenbeck semigroup.
"""

import numpy as np

from fockcalc import (
    ChaosVector,
    eval_at,
    generator,
    group_P,
    mehler_oracle,
    gh_grid,
    monomial_to_wick,
    random_chaos,
    regularity_check,
)
from fockcalc.derivatives import derivative

d, nmax = 2, 8

# Ornstein-Uhlenbeck on x^2:  e^{-2t} y^2 + 1 - e^{-2t}

x2 = monomial_to_wick(ChaosVector(1, 2, [[0], [0], [1]], rep="monomial"))
for t in (0.1, 0.5, 2.0):
    y = 1.3
    print(t, eval_at(group_P(0, -1, t, 1, 2)(x2), [y]).real, np.exp(-2 * t) * y**2 + 1 - np.exp(-2 * t))

# group law over a small grid, complex parameters included

a, b = 0.3 + 0.2j, -0.6 + 0.4j
ts = np.linspace(-1, 1, 5)
worst = max(
    (group_P(a, b, s, d, nmax) @ group_P(a, b, t, d, nmax)).fock_rel_diff(group_P(a, b, s + t, d, nmax))
    for s in ts for t in ts
)
print("group law:", worst)

# derivative at t = 0 is the generator

G = derivative(lambda t: group_P(a, b, t, d, nmax))
print("generator:", G.fock_rel_diff(generator(a, b, d, nmax)))

# b -> 0 is a first-order limit: shrinking b tenfold shrinks the gap tenfold

rng = np.random.default_rng(1)
phi = random_chaos(rng, d, nmax)
base = group_P(0.5, 0, 0.7, d, nmax)(phi)
gaps = [(group_P(0.5, bb, 0.7, d, nmax)(phi) - base).norm() for bb in (1e-3, 1e-4)]
print("ratio:", gaps[0] / gaps[1])

# compare with quadrature at a point

phi6 = random_chaos(rng, d, nmax, degree=6)
y = np.array([0.4, -0.2])
print(eval_at(group_P(a, b, 0.8, d, nmax)(phi6), y), mehler_oracle(phi6, a, b, 0.8, y, gh_grid(4, d)))

# regularity: halving t halves the difference-quotient residual

rep = regularity_check(lambda t: group_P(a, b, t, d, nmax), generator(a, b, d, nmax))
print("residuals", np.round(rep.residuals, 8), "ratios", np.round(rep.ratios, 3))
