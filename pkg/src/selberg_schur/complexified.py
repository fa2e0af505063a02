"""Closed forms for the complex-plane integrals and the half-line region
recursion that relates them to the real ones."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .errors import ZeroDenominatorError
from .partitions import Partition, TwoColumnShape, monomial_spec_ones
from .selberg import (
    SelbergParams,
    _aomoto_product,
    _hyp4f3,
    _log_J0,
    _Product,
    _two_column_prefactor,
    selberg_schur_integral,
)
from .special import sinpi

__all__ = [
    "ComplexPairShape",
    "sine_factor",
    "dotsenko_J00",
    "complex_aomoto",
    "complex_aomoto_binomial_form",
    "complex_selberg_schur",
    "corollary15_expanded",
    "reflected_params",
    "corollary12_ratio",
    "region_recursion_factor",
]


@dataclass(frozen=True)
class ComplexPairShape:
    """Holomorphic partition ``left`` and antiholomorphic partition ``right``."""

    left: Partition = Partition()
    right: Partition = Partition()

    def check(self, N: int) -> None:
        for lam in (self.left, self.right):
            if lam.length() > N:
                raise ValueError(f"partition {lam} has more than N={N} parts")


def _sine_product(p: SelbergParams) -> _Product:
    a, b, rho, N = p.a, p.b, p.rho, p.N
    prod = _Product()
    for i in range(1, N + 1):
        prod.mul(sinpi(a + (N - i) * rho))
        prod.mul(sinpi(b + (N - i) * rho))
        prod.div(sinpi(a + b + (2 * N - i - 1) * rho), f"s(a+b+(2N-i-1)rho) at i={i}", index=i)
        if i > 1:
            # i = 1 gives s(rho)/s(rho), which cancels identically
            prod.mul(sinpi(i * rho))
            prod.div(sinpi(rho), f"s(rho) at i={i}", index=i)
    return prod


def sine_factor(p: SelbergParams) -> complex:
    """``prod_i s(a+(N-i)rho) s(b+(N-i)rho) s(i rho) / (s(a+b+(2N-i-1)rho) s(rho))``."""
    return _sine_product(p).result(False)


def _finish(prod: _Product, p: SelbergParams, as_log: bool):
    sines = _sine_product(p)
    prod.log += sines.log
    prod.zero = prod.zero or sines.zero
    prod.div(math.factorial(p.N), "N!")
    return prod.result(as_log)


def dotsenko_J00(p: SelbergParams, *, as_log: bool = False):
    """Complex Selberg integral ``(1/N!) J(0)^2 * sine_factor``."""
    prod = _Product().mul(2 * _log_J0(p), log=True)
    return _finish(prod, p, as_log)


def complex_aomoto(p: SelbergParams, m: int, mbar: int, *, as_log: bool = False):
    """``(1/N!) J(1^m) J(1^mbar) * sine_factor``."""
    left = _aomoto_product(p, m)
    right = _aomoto_product(p, mbar)
    prod = _Product()
    prod.log = left.log + right.log
    prod.zero = left.zero or right.zero
    return _finish(prod, p, as_log)


def complex_aomoto_binomial_form(p: SelbergParams, m: int, mbar: int) -> complex:
    """Second display: ``C(N,m) C(N,mbar) J(0,0)`` times the two Aomoto ratio products."""
    if not (0 <= m <= p.N and 0 <= mbar <= p.N):
        raise ValueError(f"need 0 <= m, mbar <= N={p.N}")
    a, b, rho, N = p.a, p.b, p.rho, p.N
    out = comb(N, m) * comb(N, mbar) * dotsenko_J00(p)
    for top in (m, mbar):
        for i in range(1, top + 1):
            den = a + b + (2 * N - i - 1) * rho
            if den == 0:
                raise ZeroDenominatorError("Aomoto denominator vanishes", index=i)
            out *= (a + (N - i) * rho) / den
    return out


def complex_selberg_schur(p: SelbergParams, shapes: ComplexPairShape, *, as_log: bool = False):
    """``(1/N!) J(lam) J(lambar) * sine_factor`` with each ``J`` from the real closed forms."""
    shapes.check(p.N)
    left = selberg_schur_integral(p, shapes.left, as_log=True)
    right = selberg_schur_integral(p, shapes.right, as_log=True)
    prod = _Product()
    if left.logabs == -math.inf or right.logabs == -math.inf:
        prod.zero = True
    else:
        prod.log = complex(left.logabs + right.logabs, left.arg + right.arg)
    return _finish(prod, p, as_log)


def corollary15_expanded(p: SelbergParams, shape: TwoColumnShape, shape_bar: TwoColumnShape) -> complex:
    """The two-column complex integral written out factor by factor.

    ``(1/N!) m_lam(1^N) m_lambar(1^N) J(0)^2`` times the Pochhammer ratios,
    the sine product and one 4F3 per partition.
    """
    if shape.N != p.N or shape_bar.N != p.N:
        raise ValueError("shapes and parameters disagree on N")
    p._need_rho()
    prod = _Product()
    for sh in (shape, shape_bar):
        part = _two_column_prefactor(p, sh.n, sh.m)
        prod.log += part.log
        prod.zero = prod.zero or part.zero
        prod.mul(monomial_spec_ones(sh.to_partition(), p.N))
        prod.mul(_hyp4f3(p, sh.n, sh.m))
    return _finish(prod, p, False)


def reflected_params(p: SelbergParams, lam: Partition) -> SelbergParams:
    """Parameters with ``a`` replaced by ``1 - a - b - 2(N-1)rho - lam_1 - lam_N``."""
    if lam.length() > p.N:
        raise ValueError(f"partition {lam} has more than N={p.N} parts")
    shift = lam.part(1) + lam.part(p.N)
    return p.replace(a=1 - p.a - p.b - 2 * (p.N - 1) * p.rho - shift)


def corollary12_ratio(p: SelbergParams) -> complex:
    """``prod_i s(a+(N-i)rho) / s(a+b+(2N-i-1)rho)``."""
    a, b, rho, N = p.a, p.b, p.rho, p.N
    out = 1 + 0j
    for i in range(1, N + 1):
        den = sinpi(a + b + (2 * N - i - 1) * rho)
        if den == 0:
            raise ZeroDenominatorError(f"s(a+b+(2N-i-1)rho) vanishes at i={i}", index=i)
        out *= sinpi(a + (N - i) * rho) / den
    return out


def region_recursion_factor(p: SelbergParams, q: int) -> complex:
    """Ratio ``J_q / J_(q-1)`` of half-line region integrals.

    ``q/(N-q+1) * s(a+b+(N+q-2)rho) s((N-q+1)rho) / (s(a+(q-1)rho) s(q rho))``
    """
    a, b, rho, N = p.a, p.b, p.rho, p.N
    if not 1 <= q <= N:
        raise ValueError(f"need 1 <= q <= N={N}, got q={q}")
    num = q * sinpi(a + b + (N + q - 2) * rho)
    den = (N - q + 1) * sinpi(a + (q - 1) * rho)
    if den == 0:
        raise ZeroDenominatorError(f"s(a+(q-1)rho) vanishes at q={q}", index=q)
    if N - q + 1 == q:
        return num / den
    top, bottom = sinpi((N - q + 1) * rho), sinpi(q * rho)
    if bottom == 0:
        raise ZeroDenominatorError(f"s(q rho) vanishes at q={q}", index=q)
    return num * top / (den * bottom)
