"""Oracle-vs-closed-form comparisons and brute-force checks of the
integration-by-parts identities behind the two-column formulas.

Every check returns a :class:`VerificationReport`.  Whether a report passes
depends on its tolerance tier, picked from how well the quadrature can
possibly do: ``exact`` when the integrand is a polynomial the rule
integrates exactly, ``smooth`` for ``N <= 2``, ``rough`` beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from math import factorial
from typing import Any, Callable, Sequence, Union

import numpy as np

from ..complexified import ComplexPairShape, complex_selberg_schur, region_recursion_factor
from ..errors import ConvergenceError
from ..jsonio import complex_from_json, complex_to_json
from ..partitions import Partition, make_partition
from ..selberg import (
    ConditionReport,
    SelbergParams,
    monomial_two_column_integral,
    selberg_schur_integral,
    validate_conditions,
)
from .planar import integrate_complex_N1
from .quadrature import Monomial, QuadratureSpec, gauss_jacobi_rule, integrate_region, integrate_selberg_many

__all__ = [
    "REL_ERROR_FLOOR",
    "TIERS",
    "tier_tolerance",
    "choose_tier",
    "VerificationReport",
    "make_report",
    "check_integral",
    "check_integrals",
    "check_monomial",
    "check_lemma",
    "lemma_sides",
    "psi_oracle",
    "extrapolation_order",
    "check_psi_recurrence",
    "check_psi_recurrence_all",
    "check_psi_boundary",
    "check_complex_N1",
    "check_region_ratio",
]

REL_ERROR_FLOOR = 1e-300
TIERS = {"exact": 1e-12, "smooth": 1e-6, "rough": 1e-3}
# The smooth tier is looser once a third dimension is integrated.
_SMOOTH_N3 = 1e-4


def tier_tolerance(tier: str, N: int) -> float:
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}; expected one of {sorted(TIERS)}")
    if tier == "smooth" and N >= 3:
        return _SMOOTH_N3
    return TIERS[tier]


def choose_tier(p: SelbergParams, nodes_per_dim: int, max_exponent: int) -> str:
    """``exact`` if the integrand is a polynomial of low enough degree per axis."""
    rho = p.rho.real
    if rho >= 0 and rho == round(rho):
        degree = 2 * rho * (p.N - 1) + max_exponent
        if 2 * nodes_per_dim - 1 >= degree:
            return "exact"
    return "smooth" if p.N <= 2 else "rough"


Number = Union[float, complex]


@dataclass(frozen=True)
class VerificationReport:
    """One closed-form (or right-hand side) value against its oracle counterpart."""

    formula: str
    params: SelbergParams
    shape: Any
    closed_form: complex
    oracle_value: Number
    abs_error: float
    rel_error: float
    node_count: int
    conditions: ConditionReport
    spec: QuadratureSpec
    tier: str
    passed: bool
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        value = self.oracle_value
        return {
            "formula": self.formula,
            "params": self.params.to_json(),
            "shape": self.shape,
            "closed_form": complex_to_json(self.closed_form),
            "oracle": {
                "value": complex_to_json(value) if isinstance(value, complex) else value,
                "nodes": self.node_count,
                "region": self.spec.region,
                "spec": self.spec.to_json(),
            },
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "conditions": self.conditions.to_json(),
            "pass": self.passed,
            "tier": self.tier,
        }

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        oracle = data["oracle"]
        value = oracle["value"]
        return cls(
            formula=data["formula"],
            params=SelbergParams.from_json(data["params"]),
            shape=data["shape"],
            closed_form=complex_from_json(data["closed_form"]),
            oracle_value=complex_from_json(value) if isinstance(value, dict) else float(value),
            abs_error=float(data["abs_error"]),
            rel_error=float(data["rel_error"]),
            node_count=int(oracle["nodes"]),
            conditions=ConditionReport.from_json(data["conditions"]),
            spec=QuadratureSpec.from_json(oracle["spec"]),
            tier=data["tier"],
            passed=bool(data["pass"]),
        )


def make_report(
    formula: str,
    p: SelbergParams,
    shape: Any,
    closed_form: complex,
    oracle_value: Number,
    spec: QuadratureSpec,
    tier: str,
    node_count: int | None = None,
    tolerance: float | None = None,
) -> VerificationReport:
    closed_form = complex(closed_form)
    abs_error = abs(closed_form - oracle_value)
    rel_error = abs_error / max(abs(closed_form), REL_ERROR_FLOOR)
    tol = tier_tolerance(tier, p.N) if tolerance is None else tolerance
    return VerificationReport(
        formula=formula,
        params=p,
        shape=shape,
        closed_form=closed_form,
        oracle_value=oracle_value,
        abs_error=float(abs_error),
        rel_error=float(rel_error),
        node_count=spec.nodes_per_dim**p.N if node_count is None else node_count,
        conditions=validate_conditions(p),
        spec=spec,
        tier=tier,
        passed=bool(rel_error <= tol),
        details={"tolerance": tol},
    )


def check_integral(p: SelbergParams, lam: Partition, spec: QuadratureSpec, formula: str = "theorem7") -> VerificationReport:
    """``J(lam)`` in closed form against the tensor oracle."""
    closed = selberg_schur_integral(p, lam)
    value = integrate_selberg_many(p, [lam], spec)[0]
    tier = choose_tier(p, spec.nodes_per_dim, lam.part(1))
    return make_report(formula, p, lam.to_json(), closed, value, spec, tier)


def check_integrals(
    p: SelbergParams, lams: Sequence[Partition], spec: QuadratureSpec, formula: str = "theorem7"
) -> list[VerificationReport]:
    """:func:`check_integral` for several partitions sharing one quadrature grid."""
    closed = [selberg_schur_integral(p, lam) for lam in lams]
    values = integrate_selberg_many(p, list(lams), spec)
    return [
        make_report(formula, p, lam.to_json(), c, v, spec, choose_tier(p, spec.nodes_per_dim, lam.part(1)))
        for lam, c, v in zip(lams, closed, values)
    ]


def check_monomial(p: SelbergParams, n: int, m: int, spec: QuadratureSpec) -> VerificationReport:
    """Integral of ``y_1^2..y_n^2 y_(n+1)..y_m`` in closed form against the oracle."""
    closed = monomial_two_column_integral(p, n, m)
    value = integrate_selberg_many(p, [Monomial.two_column(n, m)], spec)[0]
    tier = choose_tier(p, spec.nodes_per_dim, 2 if n else 1)
    return make_report("theorem5", p, {"n": n, "m": m}, closed, value, spec, tier)


# Integration-by-parts identities ------------------------------------------


def _two_column_exponents(n: int, m: int, N: int) -> list[int]:
    return [2] * n + [1] * (m - n) + [0] * (N - m)


def _power_product(y: np.ndarray, exps: Sequence[int], skip: Sequence[int] = ()) -> np.ndarray:
    out = np.ones(y.shape[0])
    for i, e in enumerate(exps):
        if e and i not in skip:
            out = out * y[:, i] ** e
    return out


def _symmetrized_quotient(exps: Sequence[int], k: int) -> Callable[[np.ndarray], np.ndarray]:
    """``g(y)/(y_1 - y_k)`` averaged with its image under ``y_1 <-> y_k``.

    ``g`` is the monomial with exponents ``exps``.  The average is the
    polynomial ``(g(y) - g(swap y)) / (2 (y_1 - y_k))``, so the pole cancels
    before any evaluation.
    """
    i, j = 0, k - 1
    p, q = exps[i], exps[j]

    def f(y: np.ndarray) -> np.ndarray:
        if p == q:
            return np.zeros(y.shape[0])
        hi_first = p > q
        lo, d = min(p, q), abs(p - q)
        y1, yk = y[:, i], y[:, j]
        quotient = sum(y1**t * yk ** (d - 1 - t) for t in range(d))
        out = 0.5 * (y1 * yk) ** lo * quotient * _power_product(y, exps, skip=(i, j))
        return out if hi_first else -out

    return f


def _validate_lemma_indices(lemma: int, N: int, n: int, m: int, k: int | None) -> None:
    if lemma not in (1, 2, 3, 4):
        raise ValueError(f"lemma id must be 1, 2, 3 or 4, got {lemma}")
    if not 0 <= n < m <= N:
        raise ValueError(f"need 0 <= n < m <= N={N}, got n={n}, m={m}")
    if lemma in (1, 3):
        if k is None or not 2 <= k <= N:
            raise ValueError(f"lemma {lemma} needs 2 <= k <= N={N}, got k={k}")
    elif k is not None:
        raise ValueError(f"lemma {lemma} takes no index k")


def _delta_at_one() -> tuple[np.ndarray, np.ndarray]:
    return np.array([1.0]), np.array([1.0])


def lemma_sides(lemma: int, p: SelbergParams, n: int, m: int, k: int | None, spec: QuadratureSpec) -> tuple[float, float, int]:
    """Left side, right side and maximum per-axis exponent of one identity.

    ``lemma=2`` carries ``(b-1)/(1-y_1)``: for ``b > 1`` the first axis uses the
    Gauss-Jacobi rule of ``(1-y_1)^(b-2)``; at ``b = 1`` that product
    collapses to a unit point mass at ``y_1 = 1``.  ``b < 1`` diverges.
    """
    N = p.N
    _validate_lemma_indices(lemma, N, n, m, k)
    a, b, rho = p.a.real, p.b.real, p.rho.real
    mono = lambda nn, mm: Monomial(tuple(_two_column_exponents(nn, mm, N)))  # noqa: E731

    if lemma == 1:
        exps = _two_column_exponents(n + 1, m, N)
        lhs, base = integrate_selberg_many(p, [_symmetrized_quotient(exps, k), mono(n, m)], spec)
        if k <= n + 1:
            rhs = 0.0
        elif k <= m:
            rhs = 0.5 * base
        else:
            rhs = base
        return lhs, rhs, 2

    if lemma == 3:
        exps = [1] + [2] * n + [1] * (m - n - 1) + [0] * (N - m)
        integrands: list = [_symmetrized_quotient(exps, k)]
        if k <= n + 1:
            integrands.append(mono(n - 1, m))
        elif k > m:
            integrands.append(mono(n, m - 1))
        vals = integrate_selberg_many(p, integrands, spec)
        if k <= n + 1:
            rhs = -0.5 * vals[1]
        elif k <= m:
            rhs = 0.0
        else:
            rhs = 0.5 * vals[1]
        return vals[0], rhs, 2

    if lemma == 4:
        ints = [mono(n, m), mono(n, m - 1)] + ([mono(n - 1, m)] if n else [])
        vals = integrate_selberg_many(p, ints, spec)
        lhs = (a + b + (2 * N - n - m - 1) * rho) * vals[0]
        rhs = (a + (N - m) * rho) * vals[1] - (n * rho * vals[2] if n else 0.0)
        return lhs, rhs, 2

    # lemma=2
    if b < 1:
        raise ConvergenceError(f"(b-1)/(1-y_1) is not integrable against the density for b={b} < 1")
    g = Monomial(tuple([0] + [2] * n + [1] * (m - n - 1) + [0] * (N - m)))
    if b == 1:
        rule = _delta_at_one()
        scale = 1.0
    else:
        rule = gauss_jacobi_rule(a, b - 1, spec.nodes_per_dim)
        scale = b - 1
    lhs = scale * integrate_selberg_many(p, [g], spec, axis_rules={0: rule})[0]
    base, lower = integrate_selberg_many(p, [mono(n, m), mono(n, m - 1)], spec)
    rhs = (b - 1) * lower + (a + b + (2 * N - n - m - 1) * rho) * base
    return lhs, rhs, 2


def check_lemma(
    lemma: int,
    p: SelbergParams,
    n: int,
    m: int,
    k: int | None = None,
    spec: QuadratureSpec | None = None,
    tier: str | None = None,
    extrapolate: bool = False,
) -> VerificationReport:
    """Both sides of one integration-by-parts identity, each by quadrature.

    ``closed_form`` holds the right-hand side and ``oracle_value`` the left.
    When the right side vanishes identically the left is an exact zero as
    well, and the report compares absolute values.  ``extrapolate`` combines
    each side with its half-resolution value as in :func:`psi_oracle`.
    """
    spec = spec or QuadratureSpec()
    lhs, rhs, max_exp = lemma_sides(lemma, p, n, m, k, spec)
    node_count = spec.nodes_per_dim**p.N
    if extrapolate and choose_tier(p, spec.nodes_per_dim, max_exp) != "exact":
        coarse = replace(spec, nodes_per_dim=spec.nodes_per_dim // 2)
        lhs_c, rhs_c, _ = lemma_sides(lemma, p, n, m, k, coarse)
        gain = (spec.nodes_per_dim / coarse.nodes_per_dim) ** extrapolation_order(p)
        lhs = (gain * lhs - lhs_c) / (gain - 1)
        rhs = (gain * rhs - rhs_c) / (gain - 1)
        node_count += coarse.nodes_per_dim**p.N
    if tier is None:
        # both sides share the same quadrature error, which mostly cancels
        tier = choose_tier(p, spec.nodes_per_dim, max_exp)
        tier = "smooth" if tier == "rough" else tier
    shape = {"lemma": lemma, "n": n, "m": m, "k": k}
    return make_report(f"lemma{lemma}", p, shape, rhs, float(lhs), spec, tier, node_count=node_count)


# Psi ----------------------------------------------------------------------


def _psi_scale(p: SelbergParams, m: int, n: int, J0: float) -> float:
    a, b, rho, N = p.a.real, p.b.real, p.rho.real, p.N
    num = math.prod(a + b + (2 * N - i - 1) * rho for i in range(1, m + n + 1))
    den = rho**n * factorial(n) * J0 * math.prod(a + (N - i) * rho for i in range(1, m + 1))
    if den == 0:
        raise ConvergenceError("Psi normalization vanishes at these parameters")
    return num / den


def extrapolation_order(p: SelbergParams) -> float:
    """Algebraic rate ``n^-(2 rho + 1)`` set by the diagonal kink ``|y_i - y_j|^(2 rho)``."""
    return 2 * p.rho.real + 1


def psi_oracle(
    p: SelbergParams,
    pairs: Sequence[tuple[int, int]],
    spec: QuadratureSpec,
    extrapolate: bool = False,
) -> list[float]:
    """``Psi(m, n)`` for each ``(m, n)`` with every integral, ``J(0)`` included, by quadrature.

    With ``extrapolate=True`` the grid of ``spec`` is paired with one of half
    the resolution and the two are combined by Richardson extrapolation at
    rate :func:`extrapolation_order`; polynomial cases skip this.
    """
    N = p.N
    for m, n in pairs:
        if not 0 <= n <= m <= N:
            raise ValueError(f"need 0 <= n <= m <= N={N}, got m={m}, n={n}")
    monos = [Monomial(())] + [Monomial.two_column(n, m) for m, n in pairs]

    def assemble(s: QuadratureSpec) -> list[float]:
        vals = integrate_selberg_many(p, monos, s)
        return [_psi_scale(p, m, n, vals[0]) * v for (m, n), v in zip(pairs, vals[1:])]

    fine = assemble(spec)
    if not extrapolate or choose_tier(p, spec.nodes_per_dim, 2) == "exact":
        return fine
    coarse = assemble(replace(spec, nodes_per_dim=spec.nodes_per_dim // 2))
    gain = (spec.nodes_per_dim / (spec.nodes_per_dim // 2)) ** extrapolation_order(p)
    return [(gain * f - c) / (gain - 1) for f, c in zip(fine, coarse)]


def check_psi_recurrence(p: SelbergParams, m: int, n: int, spec: QuadratureSpec | None = None) -> VerificationReport:
    """``Psi(m, n)`` against ``Psi(m-1, n) - Psi(m, n-1)``, all from quadrature.

    ``oracle_value`` is ``Psi(m, n)``; ``closed_form`` is what the recursion
    predicts from the two neighbours.
    """
    spec = spec or QuadratureSpec()
    if not 1 <= n < m <= p.N:
        raise ValueError(f"need 1 <= n < m <= N={p.N}, got m={m}, n={n}")
    here, left, down = psi_oracle(p, [(m, n), (m - 1, n), (m, n - 1)], spec)
    tier = choose_tier(p, spec.nodes_per_dim, 2)
    return make_report("psi_recurrence", p, {"m": m, "n": n}, left - down, here, spec, tier)


def check_psi_recurrence_all(
    p: SelbergParams, spec: QuadratureSpec | None = None, extrapolate: bool = False
) -> list[VerificationReport]:
    """:func:`check_psi_recurrence` for every ``1 <= n < m <= N`` from one quadrature pass.

    ``extrapolate`` is meant for ``N >= 4``, where a direct tensor grid
    within budget is too coarse for the rough tier.
    """
    spec = spec or QuadratureSpec()
    N = p.N
    cases = [(m, n) for m in range(2, N + 1) for n in range(1, m)]
    pairs = sorted({pair for m, n in cases for pair in ((m, n), (m - 1, n), (m, n - 1))})
    values = dict(zip(pairs, psi_oracle(p, pairs, spec, extrapolate)))
    tier = choose_tier(p, spec.nodes_per_dim, 2)
    nodes = spec.nodes_per_dim**N
    if extrapolate and tier != "exact":
        nodes += (spec.nodes_per_dim // 2) ** N
    return [
        make_report(
            "psi_recurrence", p, {"m": m, "n": n},
            values[(m - 1, n)] - values[(m, n - 1)], values[(m, n)], spec, tier, node_count=nodes,
        )
        for m, n in cases
    ]


def check_psi_boundary(p: SelbergParams, m: int, spec: QuadratureSpec | None = None) -> VerificationReport:
    """``Psi(m, 0) = 1`` from quadrature."""
    spec = spec or QuadratureSpec()
    (value,) = psi_oracle(p, [(m, 0)], spec)
    tier = choose_tier(p, spec.nodes_per_dim, 1)
    return make_report("psi_boundary", p, {"m": m, "n": 0}, 1.0, value, spec, tier)


# Complex and region integrals ---------------------------------------------


def check_complex_N1(p: SelbergParams, k: int, kbar: int, spec: QuadratureSpec) -> VerificationReport:
    """Plane integral at ``N = 1`` against the complex closed form for ``((k), (kbar))``."""
    shapes = ComplexPairShape(make_partition([k]), make_partition([kbar]))
    closed = complex_selberg_schur(p, shapes)
    value = integrate_complex_N1(p, k, kbar, spec)
    plane = QuadratureSpec(
        nodes_per_dim=spec.nodes_per_dim, region="plane-N1", seed=spec.seed, budget=spec.budget
    )
    # one radial and one angular rule per patch, three patches
    nodes = 3 * 2 * spec.nodes_per_dim**2
    return make_report("theorem14", p, [[k] if k else [], [kbar] if kbar else []], closed, value, plane, "rough", node_count=nodes)


def check_region_ratio(p: SelbergParams, lam: Partition, q: int, spec: QuadratureSpec) -> VerificationReport:
    """``J_q / J_(q-1)`` from quadrature against the sine-ratio recursion factor."""
    closed = region_recursion_factor(p, q)
    upper = integrate_region(p, lam, q, spec)
    lower = integrate_region(p, lam, q - 1, spec)
    mixed = QuadratureSpec(
        nodes_per_dim=spec.nodes_per_dim, region="mixed", q=q, seed=spec.seed, budget=spec.budget
    )
    tier = choose_tier(p, spec.nodes_per_dim, lam.part(1))
    return make_report("prop9_factor", p, {"lambda": lam.to_json(), "q": q}, closed, upper / lower, mixed, tier)
