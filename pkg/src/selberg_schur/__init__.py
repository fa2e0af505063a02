"""Selberg-Schur integrals: closed forms, complex-plane versions and a
brute-force quadrature oracle that checks them."""

from .complexified import (
    ComplexPairShape,
    complex_aomoto,
    complex_aomoto_binomial_form,
    complex_selberg_schur,
    corollary12_ratio,
    dotsenko_J00,
    reflected_params,
    region_recursion_factor,
    sine_factor,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DegenerateParameterError,
    FormulaError,
    NonTerminatingError,
    OracleError,
    PoleError,
    SelbergError,
    UnsupportedPartitionError,
    ZeroDenominatorError,
)
from .partitions import Partition, TwoColumnShape, make_partition, n_conjugate
from .selberg import (
    ConditionReport,
    LogValue,
    SelbergParams,
    aomoto,
    kadell_rho1,
    monomial_two_column_integral,
    psi,
    selberg_J0,
    selberg_schur,
    selberg_schur_integral,
    validate_conditions,
)
from .symfunc import schur

__version__ = "0.1.0"

__all__ = [
    "ComplexPairShape",
    "complex_aomoto",
    "complex_aomoto_binomial_form",
    "complex_selberg_schur",
    "corollary12_ratio",
    "dotsenko_J00",
    "reflected_params",
    "region_recursion_factor",
    "sine_factor",
    "BudgetExceededError",
    "ConvergenceError",
    "DegenerateParameterError",
    "FormulaError",
    "NonTerminatingError",
    "OracleError",
    "PoleError",
    "SelbergError",
    "UnsupportedPartitionError",
    "ZeroDenominatorError",
    "Partition",
    "TwoColumnShape",
    "make_partition",
    "n_conjugate",
    "ConditionReport",
    "LogValue",
    "SelbergParams",
    "aomoto",
    "kadell_rho1",
    "monomial_two_column_integral",
    "psi",
    "selberg_J0",
    "selberg_schur",
    "selberg_schur_integral",
    "validate_conditions",
    "schur",
]
