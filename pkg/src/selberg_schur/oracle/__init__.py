"""Independent numerical integrators and the checks built on them."""

from .accumulate import ExactSum, exact_sum
from .checks import (
    TIERS,
    VerificationReport,
    check_complex_N1,
    check_integral,
    check_integrals,
    check_lemma,
    check_monomial,
    check_psi_boundary,
    check_psi_recurrence,
    check_psi_recurrence_all,
    extrapolation_order,
    check_region_ratio,
    choose_tier,
    lemma_sides,
    make_report,
    psi_oracle,
    tier_tolerance,
)
from .planar import integrate_complex_N1
from .quadrature import (
    BUDGET_ENV,
    DEFAULT_BUDGET,
    Monomial,
    QuadratureSpec,
    gauss_jacobi_rule,
    integrate_region,
    integrate_selberg,
    integrate_selberg_many,
    integrate_selberg_mc,
)

__all__ = [
    "ExactSum",
    "exact_sum",
    "TIERS",
    "VerificationReport",
    "check_complex_N1",
    "check_integral",
    "check_integrals",
    "check_lemma",
    "check_monomial",
    "check_psi_boundary",
    "check_psi_recurrence",
    "check_psi_recurrence_all",
    "extrapolation_order",
    "check_region_ratio",
    "choose_tier",
    "lemma_sides",
    "make_report",
    "psi_oracle",
    "tier_tolerance",
    "integrate_complex_N1",
    "BUDGET_ENV",
    "DEFAULT_BUDGET",
    "Monomial",
    "QuadratureSpec",
    "gauss_jacobi_rule",
    "integrate_region",
    "integrate_selberg",
    "integrate_selberg_many",
    "integrate_selberg_mc",
]
