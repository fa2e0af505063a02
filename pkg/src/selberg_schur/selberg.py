"""Closed forms for Selberg-type integrals over the unit cube.

All gamma products are accumulated as sums of log-gammas and exponentiated
once.  Every public evaluator accepts ``as_log=True`` and then returns a
:class:`LogValue` (log-magnitude and phase) instead of a complex number, so
large ``N`` does not overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from math import comb
from typing import Any, Union

from .errors import DegenerateParameterError, UnsupportedPartitionError, ZeroDenominatorError
from .partitions import (
    Partition,
    TwoColumnShape,
    dominated_two_column,
    kostka_two_column,
    monomial_spec_ones,
    schur_spec_ones,
)
from .special import HypSpec, hyp_terminating, log_gamma

__all__ = [
    "SelbergParams",
    "Violation",
    "ConditionReport",
    "LogValue",
    "validate_conditions",
    "selberg_J0",
    "aomoto",
    "kadell_rho1",
    "monomial_two_column_integral",
    "psi",
    "psi_boundary",
    "selberg_schur",
    "selberg_schur_kostka",
    "selberg_schur_integral",
    "pfaff_saalschutz_rhs",
]


def _as_complex(x: Any) -> complex:
    if isinstance(x, dict):
        return complex(x["re"], x.get("im", 0.0))
    return complex(x)


@dataclass(frozen=True)
class SelbergParams:
    """Exponents ``a``, ``b``, pair exponent ``rho`` and dimension ``N``."""

    a: complex
    b: complex
    rho: complex
    N: int

    def __post_init__(self):
        for name in ("a", "b", "rho"):
            object.__setattr__(self, name, _as_complex(getattr(self, name)))
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))

    def _need_rho(self) -> complex:
        if self.rho == 0:
            raise DegenerateParameterError("rho must be nonzero")
        return self.rho

    @property
    def alpha(self) -> complex:
        return self.a / self._need_rho()

    @property
    def beta(self) -> complex:
        return self.b / self._need_rho()

    @property
    def gamma(self) -> complex:
        return 1 / self._need_rho()

    def is_real(self) -> bool:
        return self.a.imag == 0 and self.b.imag == 0 and self.rho.imag == 0

    def replace(self, **changes: Any) -> SelbergParams:
        data = {"a": self.a, "b": self.b, "rho": self.rho, "N": self.N}
        data.update(changes)
        return SelbergParams(**data)

    def to_json(self) -> dict:
        def c(z: complex) -> dict:
            return {"re": z.real, "im": z.imag}

        return {"a": c(self.a), "b": c(self.b), "rho": c(self.rho), "N": self.N}

    @classmethod
    def from_json(cls, data: dict) -> SelbergParams:
        return cls(a=data["a"], b=data["b"], rho=data["rho"], N=data["N"])


@dataclass(frozen=True)
class Violation:
    """A failed inequality; ``slack`` is negative by how much it fails."""

    name: str
    slack: float


@dataclass(frozen=True)
class ConditionReport:
    real_ok: bool
    complex_ok: bool
    violated: tuple[Violation, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "real_ok": self.real_ok,
            "complex_ok": self.complex_ok,
            "violated": [{"name": v.name, "slack": v.slack} for v in self.violated],
        }

    @classmethod
    def from_json(cls, data: dict) -> ConditionReport:
        return cls(
            real_ok=data["real_ok"],
            complex_ok=data["complex_ok"],
            violated=tuple(Violation(v["name"], v["slack"]) for v in data["violated"]),
        )


@dataclass(frozen=True)
class LogValue:
    """``exp(logabs + i arg)``; ``logabs = -inf`` encodes an exact zero."""

    logabs: float
    arg: float

    @property
    def value(self) -> complex:
        if self.logabs == -math.inf:
            return 0j
        return cmath.exp(complex(self.logabs, self.arg))

    def to_json(self) -> dict:
        return {"logabs": self.logabs, "arg": self.arg}


class _Product:
    """Running product kept as a complex logarithm plus an exact-zero flag."""

    def __init__(self) -> None:
        self.log = 0j
        self.zero = False

    def mul(self, x: Union[int, complex], *, log: bool = False) -> _Product:
        if log:
            self.log += x
        elif isinstance(x, int):
            if x == 0:
                self.zero = True
            else:
                self.log += math.log(abs(x)) + (1j * math.pi if x < 0 else 0)
        else:
            x = complex(x)
            if x == 0:
                self.zero = True
            else:
                self.log += cmath.log(x)
        return self

    def div(self, x: Union[int, complex], what: str, index: int | None = None) -> _Product:
        if x == 0:
            raise ZeroDenominatorError(f"{what} vanishes", index=index)
        if isinstance(x, int):
            self.log -= math.log(abs(x)) + (1j * math.pi if x < 0 else 0)
        else:
            self.log -= cmath.log(complex(x))
        return self

    def mul_gen_pochhammer(self, x: complex, lam: Partition, rho: complex) -> _Product:
        for i, part in enumerate(lam):
            base = x - i * rho
            for j in range(part):
                self.mul(base + j)
        return self

    def div_gen_pochhammer(self, x: complex, lam: Partition, rho: complex, what: str) -> _Product:
        for i, part in enumerate(lam):
            base = x - i * rho
            for j in range(part):
                self.div(base + j, what, index=i + 1)
        return self

    def result(self, as_log: bool) -> Union[complex, LogValue]:
        if as_log:
            if self.zero:
                return LogValue(-math.inf, 0.0)
            arg = math.remainder(self.log.imag, 2 * math.pi)
            if arg == -math.pi:
                arg = math.pi
            return LogValue(self.log.real, arg)
        return 0j if self.zero else cmath.exp(self.log)


def validate_conditions(p: SelbergParams) -> ConditionReport:
    """Check the absolute-convergence inequalities for the real and complex integrals."""
    N = p.N
    a, b, rho = p.a.real, p.b.real, p.rho.real
    checks: list[tuple[str, float, bool]] = [
        ("Re(a) > 0", a, True),
        ("Re(b) > 0", b, True),
    ]
    if N == 1:
        checks.append(("Re(rho) > -1", rho + 1, True))
    else:
        bound = min(1 / N, a / (N - 1), b / (N - 1))
        checks.append(("Re(rho) > -min(1/N, Re(a)/(N-1), Re(b)/(N-1))", rho + bound, True))
    checks.append(("Re(a+b+(N-1)rho) < 1", 1 - (a + b + (N - 1) * rho), False))
    checks.append(("Re(a+b+(2N-2)rho) < 1", 1 - (a + b + (2 * N - 2) * rho), False))
    violated = tuple(Violation(name, slack) for name, slack, _ in checks if not slack > 0)
    real_ok = all(slack > 0 for _, slack, real in checks if real)
    complex_ok = real_ok and all(slack > 0 for _, slack, _ in checks)
    return ConditionReport(real_ok=real_ok, complex_ok=complex_ok, violated=violated)


def _log_J0(p: SelbergParams) -> complex:
    a, b, rho, N = p.a, p.b, p.rho, p.N
    total = 0j
    for i in range(1, N + 1):
        total += log_gamma(a + (N - i) * rho)
        total += log_gamma(b + (N - i) * rho)
        total += log_gamma(i * rho + 1)
        total -= log_gamma(a + b + (2 * N - i - 1) * rho)
        total -= log_gamma(rho + 1)
    return total


def selberg_J0(p: SelbergParams, *, as_log: bool = False):
    """Selberg's product of gamma functions for the weight-only integral."""
    return _Product().mul(_log_J0(p), log=True).result(as_log)


def _aomoto_product(p: SelbergParams, m: int) -> _Product:
    if not 0 <= m <= p.N:
        raise ValueError(f"Aomoto integral needs 0 <= m <= N={p.N}, got m={m}")
    a, b, rho, N = p.a, p.b, p.rho, p.N
    prod = _Product().mul(comb(N, m)).mul(_log_J0(p), log=True)
    for i in range(1, m + 1):
        prod.mul(a + (N - i) * rho)
        prod.div(a + b + (2 * N - i - 1) * rho, "Aomoto denominator a+b+(2N-i-1)rho", index=i)
    return prod


def aomoto(p: SelbergParams, m: int, *, as_log: bool = False):
    """Integral of ``e_m(y)`` against the Selberg density."""
    return _aomoto_product(p, m).result(as_log)


def kadell_rho1(p: SelbergParams, lam: Partition, *, as_log: bool = False):
    """Integral of ``s_lam(y)`` at ``rho = 1`` for an arbitrary partition."""
    if p.rho != 1:
        raise DegenerateParameterError(f"kadell_rho1 needs rho = 1, got rho={p.rho}")
    if lam.length() > p.N:
        raise ValueError(f"partition {lam} has more than N={p.N} parts")
    a, b, N = p.a, p.b, p.N
    prod = _Product().mul(schur_spec_ones(lam, N)).mul(_log_J0(p), log=True)
    prod.mul_gen_pochhammer(a + N - 1, lam, 1)
    prod.div_gen_pochhammer(a + b + 2 * N - 2, lam, 1, "[a+b+2N-2]_lambda")
    return prod.result(as_log)


def _two_column_prefactor(p: SelbergParams, n: int, m: int) -> _Product:
    """``J(0) [a+(N-1)rho]_lam/[a+b+2(N-1)rho]_lam [a+b+(N-2)rho]_n/[a+b+(2N-m-2)rho]_n``."""
    TwoColumnShape(n, m, p.N)
    a, b, rho, N = p.a, p.b, p.rho, p.N
    lam = Partition((2,) * n + (1,) * (m - n))
    prod = _Product().mul(_log_J0(p), log=True)
    prod.mul_gen_pochhammer(a + (N - 1) * rho, lam, rho)
    prod.div_gen_pochhammer(a + b + 2 * (N - 1) * rho, lam, rho, "[a+b+2(N-1)rho]_lambda")
    # [a+b+(N-2)rho]_n / [a+b+(2N-m-2)rho]_n is t_1..t_n over t_(1-d)..t_(n-d)
    # with t_j = a+b+(N-j-1)rho and d = N-m; shared factors cancel first
    d = N - m
    for j in range(max(1, n - d + 1), n + 1):
        prod.mul(a + b + (N - j - 1) * rho)
    for j in range(1 - d, min(n - d, 0) + 1):
        prod.div(a + b + (N - j - 1) * rho, "[a+b+(2N-m-2)rho]_n", index=j + d)
    return prod


def _hyp3f2(p: SelbergParams, n: int, m: int) -> complex:
    al, be, ga, N = p.alpha, p.beta, p.gamma, p.N
    return hyp_terminating(HypSpec(
        (-n, -N + m, al + be + ga + 2 * N - n - 1),
        (al + be + N - n - 1, al + ga + N - n),
    ))


def _hyp4f3(p: SelbergParams, n: int, m: int) -> complex:
    al, be, ga, N = p.alpha, p.beta, p.gamma, p.N
    return hyp_terminating(HypSpec(
        (-n, -N + m, al + be + ga + 2 * N - n - 1, al + N - n + 1),
        (al + be + N - n - 1, al + ga + N - n, m - n + 2),
    ))


def monomial_two_column_integral(p: SelbergParams, n: int, m: int, *, as_log: bool = False):
    """Integral of ``y_1^2 ... y_n^2 y_(n+1) ... y_m`` against the Selberg density."""
    p._need_rho()
    prod = _two_column_prefactor(p, n, m)
    prod.mul(_hyp3f2(p, n, m))
    return prod.result(as_log)


def psi_boundary(p: SelbergParams, n: int) -> complex:
    """``Psi(N, n)``: product form fixed by the shifted Aomoto integral."""
    a, b, rho, N = p.a, p.b, p._need_rho(), p.N
    out = 1 + 0j
    for i in range(1, n + 1):
        den = i * rho * (a + b + 1 + (2 * N - i - 1) * rho)
        if den == 0:
            raise ZeroDenominatorError("Psi(N, n) denominator vanishes", index=i)
        out *= (a + b + (N - i - 1) * rho) * (a + 1 + (N - i) * rho) / den
    return out


def psi(p: SelbergParams, m: int, n: int) -> complex:
    """Closed-form solution ``Psi(m, n) = sum_k C(N-m, k) Psi(N, n-k)`` of the double recursion."""
    TwoColumnShape(n, m, p.N)
    boundary = [psi_boundary(p, j) for j in range(n + 1)]
    terms = [comb(p.N - m, k) * boundary[n - k] for k in range(n + 1)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def selberg_schur(p: SelbergParams, shape: TwoColumnShape, *, as_log: bool = False):
    """Integral of ``s_lam(y)``, ``lam = (2^n 1^(m-n))``, against the Selberg density."""
    if shape.N != p.N:
        raise ValueError(f"shape is for N={shape.N} but parameters have N={p.N}")
    p._need_rho()
    n, m = shape.n, shape.m
    prod = _two_column_prefactor(p, n, m)
    prod.mul(monomial_spec_ones(shape.to_partition(), p.N))
    prod.mul(_hyp4f3(p, n, m))
    return prod.result(as_log)


def selberg_schur_kostka(p: SelbergParams, shape: TwoColumnShape) -> complex:
    """Same integral assembled from the monomial expansion ``s = sum K m_mu``.

    Each monomial term uses :func:`monomial_two_column_integral`; terms whose
    monomial has more than ``N`` parts vanish.
    """
    total = 0j
    for mu, r in dominated_two_column(shape):
        weight = kostka_two_column(shape.m - shape.n, r) * monomial_spec_ones(mu, p.N)
        if weight:
            total += weight * monomial_two_column_integral(p, shape.n - r, shape.m + r)
    return total


def selberg_schur_integral(p: SelbergParams, lam: Partition, *, as_log: bool = False):
    """``J(lam)`` for any partition with a closed form here.

    Two-column partitions use :func:`selberg_schur`; others fall back to
    :func:`kadell_rho1` when ``rho = 1``.
    """
    if lam.length() > p.N:
        raise ValueError(f"partition {lam} has more than N={p.N} parts")
    if lam.is_two_column():
        return selberg_schur(p, TwoColumnShape.from_partition(lam, p.N), as_log=as_log)
    if p.rho == 1:
        return kadell_rho1(p, lam, as_log=as_log)
    raise UnsupportedPartitionError(
        f"no closed form for {lam} at rho={p.rho}: parts above 2 need rho = 1"
    )


def pfaff_saalschutz_rhs(p: SelbergParams, n: int, m: int) -> complex:
    """Right-hand side of the balanced 3F2 evaluation that appears at ``rho = 1``.

    ``(N-n+2)_n/(m-n+2)_n * G(s+N-n-1) G(s+2N-m-1) / (G(s+N-1) G(s+2N-m-n-1))``
    with ``s = a + b``.
    """
    N = p.N
    s = p.a + p.b
    ratio = 1 + 0j
    for i in range(n):
        ratio *= (N - n + 2 + i) / (m - n + 2 + i)
    lg = (log_gamma(s + N - n - 1) + log_gamma(s + 2 * N - m - 1)
          - log_gamma(s + N - 1) - log_gamma(s + 2 * N - m - n - 1))
    return ratio * cmath.exp(lg)
