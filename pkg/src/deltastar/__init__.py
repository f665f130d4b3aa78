"""Exact piecewise-polynomial distributions with a one-sided product,
point-interaction boundary conditions for 1D Schrodinger operators, and
floating-point cross-checks of both."""

from .dist_core import (
    AlgebraError,
    DegreeCapError,
    DeltaTerm,
    DisjointnessError,
    DivergentIntegralError,
    PiecewiseDist,
    Poly,
    RegularityError,
    Scalar,
    add,
    canonicalize,
    constant,
    degree_cap,
    delta_dist,
    delta_times_smooth,
    derivative,
    from_poly,
    heaviside,
    hormander_product,
    indicator,
    n_sing_supp,
    order_of,
    pair_polynomial_test,
    parse_scalar,
    restrict,
    scale,
    set_degree_cap,
    star,
    zero,
)
from .limit_oracle import star_limit_oracle

__version__ = "0.1.0"
