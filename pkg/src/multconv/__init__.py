"""Multiplicative convolution of point-supported distributions.

Exact algebra of ``sum t * delta_a^(mu)`` under ``(T * S) f = T_x S_y f(xy)``,
the Hadamard and Euler operators it induces, their Cauchy transforms and
multiplier tables, dilation-set geometry, and a 1-D Euler equation solver.
"""
from .dist import (
    JetFunction,
    PointDistribution,
    Polynomial,
    apply_to_jet,
    apply_to_polynomial,
    delta,
    equals,
    make_distribution,
    moment,
    zero,
)
from .errors import (
    DimensionError,
    DomainError,
    JetOrderError,
    MultconvError,
    NumericalError,
    OrderCapError,
)
from .euler import (
    EulerOperator,
    from_distribution,
    from_xd_form,
    symbol,
    to_distribution,
    to_xd_form,
    transpose_apply,
)
from .geometry import Box, Interval, PointSet, mconv_hull, supports_in, u_set, v_set
from .sdcheck import SDConfig, SDReport, slowly_decreasing_check
from .solver import GridFunction, residual, solve
from .star import hadamard_apply, hadamard_apply_pointwise, star, support, unit
from .transfer import (
    AdditivePointDistribution,
    classical_convolution,
    exp_pushforward,
    log_pushforward,
)
from .transforms import (
    RationalTransform,
    SeriesTable,
    cauchy_transform,
    char_function,
    hadamard_product,
    laurent_coefficients_at_infinity,
    moment_table,
    taylor_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "AdditivePointDistribution",
    "Box",
    "DimensionError",
    "DomainError",
    "EulerOperator",
    "GridFunction",
    "Interval",
    "JetFunction",
    "JetOrderError",
    "MultconvError",
    "NumericalError",
    "OrderCapError",
    "PointDistribution",
    "PointSet",
    "Polynomial",
    "RationalTransform",
    "SDConfig",
    "SDReport",
    "SeriesTable",
    "apply_to_jet",
    "apply_to_polynomial",
    "cauchy_transform",
    "char_function",
    "classical_convolution",
    "delta",
    "equals",
    "exp_pushforward",
    "from_distribution",
    "from_xd_form",
    "hadamard_apply",
    "hadamard_apply_pointwise",
    "hadamard_product",
    "laurent_coefficients_at_infinity",
    "log_pushforward",
    "make_distribution",
    "mconv_hull",
    "moment",
    "moment_table",
    "residual",
    "slowly_decreasing_check",
    "solve",
    "star",
    "support",
    "supports_in",
    "symbol",
    "taylor_coefficients",
    "to_distribution",
    "to_xd_form",
    "transpose_apply",
    "u_set",
    "unit",
    "v_set",
    "zero",
]
