"""Finite-support Hahn series over finite fields as an independent oracle."""

from .coefficients import CoefficientError, GaloisField, PolynomialRing, PrimeField
from .extension import (
    Approximation,
    BaseField,
    ExtElement,
    OracleScopeError,
    artin_schreier_root,
    best_approx,
    ext_valuation,
    greedy_approx,
    kummer_root,
    primitive_root_of_unity,
)
from .oracle import (
    STANDARD_GROUPS,
    ClassifierView,
    Comparison,
    OracleResult,
    Relation,
    chain_check,
    classifier_view,
    compare,
    describe_relation,
    generator_root,
    series_derivative_value,
    oracle_classify,
    random_instance,
    sample_unibranched,
    value_grid,
)
from .series import HahnSeries, Polynomial, PrecisionError, ZeroValuationError
