"""Exact power-product matrices V(n, d) and V̂(n, d).

Construction, block lower-triangular structure, determinants, sparsity,
and conversion of homogeneous forms between the monomial basis and the
basis of d-th powers of linear forms <α, x>^d.
"""
from .compositions import (
    ExponentSet,
    count_weak_compositions,
    enumerate_B,
    enumerate_k_compositions,
    multinomial,
)
from .matrixcore import ExactMatrix, build_A, build_V, build_Vhat, power_product
from .structure import (
    BlockDecomposition,
    block_decompose,
    canonical_block_order,
    inverse_pattern_check,
    lrlex_compare,
    nnz_count,
    nnz_formula,
    sparsity,
    sparsity_table,
)
from .exact import det_bareiss, solve_exact
from .determinant import (
    FactoredInteger,
    conjecture_explore,
    det_A_closed,
    det_V,
    det_V2_closed,
    factorize,
)
from .basis import (
    PolyCoeffs,
    from_linear_power,
    monomial_expansion_of_power,
    product_monomial_coeffs,
    to_linear_power,
)

__version__ = "0.1.0"
