"""Finite values for divergent alternating series of factorial type.

Three independent routes are provided: difference transforms with Newton
extrapolation, continued fractions with a closed-off tail, and quadrature of
an integral representation.
"""

from .borel_quadrature import (
    IntegrandSpec,
    QuadratureResult,
    adaptive_unit_interval,
    borel_general,
    borel_oracle,
    evaluate_integrand,
    general_integral,
    trapezoid_unit_interval,
)
from .cf_engine import (
    BreakdownError,
    Convergent,
    GeneralizedCF,
    MobiusMap,
    SimpleCF,
    TailClosure,
    bracket_and_average,
    collapse_segment,
    convergents,
    factorial_cf,
    real_to_simple_cf,
    series_to_cf,
    sum_by_cf,
    tail_closure_paired,
    tail_closure_single,
)
from .difference_engine import (
    Convention,
    DecimalProtocol,
    DifferenceTable,
    build_table,
    euler_transform,
    iterated_transform,
    log_extrapolate_A,
    newton_extrapolate_zero,
    reproduce_A_by_iterated_transform,
)
from .series_core import (
    ODD_FACTORIAL,
    WALLIS,
    FactorialFamily,
    Species,
    classify_series,
    generate_b_sequence,
    generate_terms,
    partial_sums,
)

__version__ = "0.1.0"
