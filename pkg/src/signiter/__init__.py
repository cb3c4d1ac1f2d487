"""Padé and reciprocal Padé iterations for the sign function.

Exact construction and certification of the minimal-degree rational
iterations converging to +-1, plus a floating-point engine that applies them
to scalars and dense matrices.
"""

from .engine import (
    ConvergenceReport,
    build_test_matrix,
    estimate_order,
    matrix_poly_eval,
    matrix_sign_iterate,
    scalar_iterate,
    scalar_sign,
    sign_residuals,
)
from .exact import Poly, poly_gcd
from .minimal import (
    construct_by_nullspace,
    construct_by_recursion,
    equal_up_to_scalar,
    exact_nullspace,
    exact_order_at_fixed_points,
    optimality_scan,
    order_condition_matrix,
    verify_order_conditions,
)
from .pade import (
    IterationSpec,
    build_phi,
    family_table,
    pade_approximant,
    reciprocal_pair,
    series_coefficients,
    substitute_one_minus_z_squared,
)

__version__ = "0.1.0"
