"""Exact Wick calculus on a degree-truncated Fock space over C^d.

Symmetric tensors (:mod:`.symtensor`), chaos coefficient vectors
(:mod:`.chaos`), graded operators (:mod:`.fockop`), named transforms and
groups (:mod:`.transforms`), numerical derivatives and the regularity proxy
(:mod:`.derivatives`), and a Gauss-Hermite oracle (:mod:`.quadrature`).
"""

from .chaos import (
    ChaosVector,
    SeminormConfig,
    basis_vector,
    dual_pair,
    eval_at,
    exp_vector,
    from_kappa_rep,
    genwick_expand,
    monomial_to_wick,
    random_chaos,
    s_transform,
    seminorm,
    to_kappa_rep,
    wick_to_monomial,
)
from .derivatives import (
    NotDifferentiableError,
    complex_step_derivative,
    contour_derivative,
    derivative,
    regularity_check,
    richardson_derivative,
)
from .fockop import (
    FockOperator,
    Gamma,
    KernelSpec,
    SymbolTailError,
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
)
from .quadrature import QuadGrid, fg_oracle, gh_grid, mehler_oracle
from .symtensor import (
    SymTensor,
    gamma_n,
    map_pow,
    pair,
    power,
    pullback_pow,
    right_contract,
    sym_product,
    trace_tensor,
)
from .transforms import (
    GroupParams,
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

__version__ = "0.1.0"
