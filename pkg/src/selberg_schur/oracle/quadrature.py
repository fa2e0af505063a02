"""Brute-force tensor Gauss-Jacobi integration of Selberg-type integrands.

The oracle never uses a closed form: nodes and weights come from the
Golub-Welsch eigenproblem, the weight total is the only gamma-function
input (the zeroth moment), and every integrand is evaluated pointwise.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import BudgetExceededError, ConvergenceError
from ..partitions import Partition
from ..selberg import SelbergParams, validate_conditions
from ..special import log_beta
from ..symfunc import elementary_grid, schur_grid
from .accumulate import ExactSum

__all__ = [
    "BUDGET_ENV",
    "DEFAULT_BUDGET",
    "REGIONS",
    "QuadratureSpec",
    "Monomial",
    "Integrand",
    "gauss_jacobi_rule",
    "integrate_selberg",
    "integrate_selberg_many",
    "integrate_region",
    "integrate_selberg_mc",
]

BUDGET_ENV = "SELBERG_SCHUR_BUDGET"
DEFAULT_BUDGET = 10**7
REGIONS = ("unit-cube", "mixed", "plane-N1")
_CHUNK_POINTS = 1 << 18


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(float(raw)) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid resolution and bookkeeping for one oracle evaluation.

    ``q`` is only meaningful for the ``mixed`` region; ``mc_samples``
    switches :func:`integrate_selberg_mc` on for sanity checks.
    """

    nodes_per_dim: int = 64
    region: str = "unit-cube"
    q: int | None = None
    mc_samples: int | None = None
    seed: int = 0
    budget: int = field(default_factory=_default_budget)
    workers: int = 1

    def __post_init__(self):
        if self.nodes_per_dim < 2:
            raise ValueError(f"nodes_per_dim must be at least 2, got {self.nodes_per_dim}")
        if self.region not in REGIONS:
            raise ValueError(f"region must be one of {REGIONS}, got {self.region!r}")
        if self.mc_samples is not None and self.mc_samples < 1:
            raise ValueError("mc_samples must be positive")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def check_budget(self, N: int) -> int:
        total = self.nodes_per_dim**N
        if total > self.budget:
            raise BudgetExceededError(
                f"{self.nodes_per_dim}^{N} = {total} nodes exceeds the budget of {self.budget}"
            )
        return total

    def to_json(self) -> dict:
        return {
            "nodes_per_dim": self.nodes_per_dim,
            "region": self.region,
            "q": self.q,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
            "budget": self.budget,
        }

    @classmethod
    def from_json(cls, data: dict) -> QuadratureSpec:
        return cls(**{k: data[k] for k in ("nodes_per_dim", "region", "q", "mc_samples", "seed", "budget")})


@dataclass(frozen=True)
class Monomial:
    """The (non-symmetric) monomial ``prod_i y_i^(exponents[i])``."""

    exponents: tuple[int, ...]

    @classmethod
    def two_column(cls, n: int, m: int) -> Monomial:
        """``y_1^2 ... y_n^2 y_(n+1) ... y_m``."""
        return cls((2,) * n + (1,) * (m - n))

    def __call__(self, y: np.ndarray) -> np.ndarray:
        out = np.ones(y.shape[0], dtype=y.dtype)
        for i, e in enumerate(self.exponents):
            if e:
                out = out * y[:, i] ** e
        return out


Integrand = Union[Partition, Monomial, Callable[[np.ndarray], np.ndarray]]
Rule = tuple[np.ndarray, np.ndarray]


def _jacobi_recurrence(alpha: float, beta: float, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Monic recurrence coefficients for weight (1-x)^alpha (1+x)^beta on [-1, 1]."""
    n = np.arange(count, dtype=float)
    s = alpha + beta
    diag = np.empty(count)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (beta**2 - alpha**2) / ((2 * n + s) * (2 * n + s + 2))
    diag[0] = (beta - alpha) / (s + 2)
    k = np.arange(1, count, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = (4 * k * (k + alpha) * (k + beta) * (k + s)
                / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1)))
    if count > 1:
        off2[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
    return diag, np.sqrt(off2)


@lru_cache(maxsize=256)
def _rule_cached(a_exp: float, b_exp: float, count: int) -> Rule:
    # y in (0, 1) with weight y^(a-1) (1-y)^(b-1) is x = 2y - 1 with
    # (1-x)^(b-1) (1+x)^(a-1).
    diag, off = _jacobi_recurrence(b_exp - 1, a_exp - 1, count)
    x, vec = eigh_tridiagonal(diag, off)
    total = math.exp(log_beta(a_exp, b_exp).real)
    w = total * vec[0, :] ** 2
    y = (1 + x) / 2
    order = np.argsort(y)
    y, w = y[order], w[order]
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w


def gauss_jacobi_rule(a_exp: float, b_exp: float, count: int) -> Rule:
    """Gauss rule on (0, 1) for the weight ``y^(a_exp-1) (1-y)^(b_exp-1)``.

    Exact for polynomials of degree ``2*count - 1``; the weights sum to
    ``B(a_exp, b_exp)``.  Returned arrays are read-only.
    """
    a_exp, b_exp = float(a_exp), float(b_exp)
    if not (a_exp > 0 and b_exp > 0):
        raise ValueError(f"Gauss-Jacobi exponents must be positive, got a={a_exp}, b={b_exp}")
    if count < 1:
        raise ValueError(f"rule needs at least one node, got {count}")
    return _rule_cached(a_exp, b_exp, int(count))


def _require_real(p: SelbergParams) -> tuple[float, float, float]:
    if not p.is_real():
        raise ValueError("the quadrature oracle only handles real a, b, rho")
    return p.a.real, p.b.real, p.rho.real


def _pair_power(diff: np.ndarray, two_rho: float) -> np.ndarray:
    if two_rho == 2.0:
        return diff * diff
    return np.abs(diff) ** two_rho


def _as_callable(integrand: Integrand, N: int) -> Callable[[np.ndarray, dict], np.ndarray]:
    if isinstance(integrand, Partition):
        if integrand.length() > N:
            raise ValueError(f"partition {integrand} has more than N={N} parts")

        def schur_values(y: np.ndarray, cache: dict) -> np.ndarray:
            if "e" not in cache:
                cache["e"] = elementary_grid(y)
            return schur_grid(integrand, y, e=cache["e"])

        return schur_values
    if isinstance(integrand, Monomial) and len(integrand.exponents) > N:
        raise ValueError(f"monomial {integrand.exponents} uses more than N={N} variables")
    return lambda y, cache: np.asarray(integrand(y))


def _tensor_sum(
    rules: Sequence[Rule],
    density: Callable[[np.ndarray], np.ndarray] | None,
    integrands: Sequence[Callable[[np.ndarray, dict], np.ndarray]],
    workers: int = 1,
) -> list[float]:
    """Sum ``w(y) density(y) f(y)`` over the tensor grid of ``rules`` for each ``f``.

    Chunks run over blocks of the first axis; partial sums are exact, so the
    result does not depend on chunking, worker count or axis ordering.
    """
    sizes = [len(r[0]) for r in rules]
    inner = int(np.prod(sizes[1:])) if len(sizes) > 1 else 1
    block = max(1, _CHUNK_POINTS // inner)
    starts = list(range(0, sizes[0], block))

    def run(start: int) -> list[ExactSum]:
        stop = min(start + block, sizes[0])
        idx = np.meshgrid(np.arange(start, stop), *[np.arange(s) for s in sizes[1:]], indexing="ij")
        y = np.stack([rules[d][0][ix.ravel()] for d, ix in enumerate(idx)], axis=1)
        w = np.ones(y.shape[0])
        for d, ix in enumerate(idx):
            w = w * rules[d][1][ix.ravel()]
        if density is not None:
            w = w * density(y)
        cache: dict = {}
        sums = []
        for f in integrands:
            acc = ExactSum()
            acc.add(w * f(y, cache))
            sums.append(acc)
        return sums

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, starts))
    else:
        partials = [run(s) for s in starts]
    totals = [ExactSum() for _ in integrands]
    for part in partials:
        for tot, acc in zip(totals, part):
            tot.merge(acc)
    return [t.value() for t in totals]


def _vandermonde_density(two_rho: float) -> Callable[[np.ndarray], np.ndarray]:
    def density(y: np.ndarray) -> np.ndarray:
        out = np.ones(y.shape[0])
        N = y.shape[1]
        for i in range(N):
            for j in range(i + 1, N):
                out = out * _pair_power(y[:, i] - y[:, j], two_rho)
        return out

    return density


def _check_unit_cube(p: SelbergParams, spec: QuadratureSpec) -> tuple[float, float, float]:
    a, b, rho = _require_real(p)
    if not rho > 0:
        raise ValueError(f"the tensor oracle needs rho > 0, got rho={rho}")
    report = validate_conditions(p)
    if not report.real_ok:
        names = ", ".join(v.name for v in report.violated)
        raise ConvergenceError(f"Selberg integral diverges: violated {names}")
    spec.check_budget(p.N)
    return a, b, rho


def integrate_selberg_many(
    p: SelbergParams,
    integrands: Sequence[Integrand],
    spec: QuadratureSpec,
    axis_rules: dict[int, Rule] | None = None,
) -> list[float]:
    """Integrate several integrands against the Selberg density on one shared grid.

    ``axis_rules`` replaces the default ``(a, b)`` Gauss-Jacobi rule on
    selected axes, which is how weights such as ``(1-y_1)^(b-2)`` enter.
    """
    a, b, rho = _check_unit_cube(p, spec)
    N = p.N
    base = gauss_jacobi_rule(a, b, spec.nodes_per_dim)
    rules = [base] * N
    for axis, rule in (axis_rules or {}).items():
        rules[axis] = rule
    funcs = [_as_callable(f, N) for f in integrands]
    density = _vandermonde_density(2 * rho) if N > 1 else None
    return _tensor_sum(rules, density, funcs, spec.workers)


def integrate_selberg(p: SelbergParams, integrand: Integrand, spec: QuadratureSpec) -> float:
    """Tensor Gauss-Jacobi value of ``int f(y) Phi(y) dy`` over (0, 1)^N.

    ``integrand`` is a :class:`Partition` (Schur polynomial), a
    :class:`Monomial`, or a vectorized callable mapping an ``(M, N)`` array of
    points to ``M`` values.
    """
    return integrate_selberg_many(p, [integrand], spec)[0]


def integrate_region(p: SelbergParams, lam: Partition, q: int, spec: QuadratureSpec) -> float:
    """``J_q(lam)``: ``q`` variables on (0, 1) and ``N - q`` on (1, inf).

    The half-line variables are mapped by ``t = 1/y``; with the Jacobian
    and the pair factors, each carries the weight
    ``t^(-a-b-2(N-1)rho-lam_1) (1-t)^(b-1)`` and the integrand is
    ``s_lam(y) prod t^lam_1``, a polynomial in each ``t``.
    """
    a, b, rho = _require_real(p)
    N = p.N
    if not 0 <= q <= N:
        raise ValueError(f"need 0 <= q <= N={N}, got q={q}")
    if lam.length() > N:
        raise ValueError(f"partition {lam} has more than N={N} parts")
    if not (a > 0 and b > 0 and rho >= 0):
        raise ConvergenceError(f"region integral needs a > 0, b > 0, rho >= 0 (a={a}, b={b}, rho={rho})")
    outer_exp = 1 - a - b - 2 * (N - 1) * rho - lam.part(1)
    if N > q and not outer_exp > 0:
        raise ConvergenceError(
            f"region integral diverges at infinity: 1 - a - b - 2(N-1)rho - lam_1 = {outer_exp:g} <= 0"
        )
    spec.check_budget(N)
    inner_rule = gauss_jacobi_rule(a, b, spec.nodes_per_dim)
    rules = [inner_rule] * q
    if N > q:
        rules += [gauss_jacobi_rule(outer_exp, b, spec.nodes_per_dim)] * (N - q)
    two_rho = 2 * rho
    lam1 = lam.part(1)

    def density(z: np.ndarray) -> np.ndarray:
        out = np.ones(z.shape[0])
        for i in range(N):
            for j in range(i + 1, N):
                if j < q:
                    diff = z[:, i] - z[:, j]
                elif i < q:
                    diff = 1 - z[:, i] * z[:, j]
                else:
                    diff = z[:, i] - z[:, j]
                out = out * _pair_power(diff, two_rho)
        return out

    def integrand(z: np.ndarray, cache: dict) -> np.ndarray:
        if lam.length() == 0:
            return np.ones(z.shape[0])
        y = z.copy()
        y[:, q:] = 1 / z[:, q:]
        vals = schur_grid(lam, y)
        for j in range(q, N):
            vals = vals * z[:, j] ** lam1
        return vals

    return _tensor_sum(rules, density if N > 1 else None, [integrand], spec.workers)[0]


def integrate_selberg_mc(
    p: SelbergParams, integrand: Integrand, spec: QuadratureSpec
) -> tuple[float, float]:
    """Monte Carlo estimate and standard error with Beta(a, b) importance sampling.

    Advisory only (used for N = 4 sanity checks); deterministic for a fixed seed.
    """
    a, b, rho = _require_real(p)
    if spec.mc_samples is None:
        raise ValueError("QuadratureSpec.mc_samples must be set for Monte Carlo")
    if not validate_conditions(p).real_ok:
        raise ConvergenceError("Selberg integral diverges for these parameters")
    N = p.N
    rng = np.random.default_rng(spec.seed)
    y = rng.beta(a, b, size=(spec.mc_samples, N))
    f = _as_callable(integrand, N)
    vals = f(y, {}) * (_vandermonde_density(2 * rho)(y) if N > 1 else 1.0)
    scale = math.exp(N * log_beta(a, b).real)
    mean = float(np.mean(vals))
    err = float(np.std(vals, ddof=1) / math.sqrt(spec.mc_samples))
    return scale * mean, scale * err
