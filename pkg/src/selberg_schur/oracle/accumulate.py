"""Exact, order-independent summation of float64 arrays.

Each term ``x = m * 2**(e - 53)`` is split by binary exponent ``e`` and its
53-bit integer mantissa ``m`` into two 26/27-bit halves.  Per-exponent sums
of the halves stay below 2**53 for up to 2**26 terms per bucket, so they are
accumulated exactly in float64 with ``np.bincount``.  The final value is the
correctly rounded sum of all terms, independent of the order in which
chunks arrive, which makes tensor sums reproducible across axis orderings
and worker counts.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_EMIN = -1075
_NBUCKETS = 1024 - _EMIN + 2
_SPLIT = 2.0**26
# Each bucket half-sum stays exact while fewer than this many terms are added.
_MAX_TERMS = 2**26


class ExactSum:
    """Accumulator whose :meth:`value` is the exactly rounded sum of all terms."""

    def __init__(self) -> None:
        self._hi = np.zeros(_NBUCKETS)
        self._lo = np.zeros(_NBUCKETS)
        self._count = 0
        self._spill: list[Fraction] = []

    def add(self, values: np.ndarray) -> None:
        x = np.asarray(values, dtype=np.float64).ravel()
        if x.size == 0:
            return
        if not np.all(np.isfinite(x)):
            raise FloatingPointError("non-finite term in exact sum")
        if self._count + x.size > _MAX_TERMS:
            self._flush()
        frac, exp = np.frexp(x)
        mant = frac * 2.0**53
        hi = np.trunc(mant / _SPLIT)
        lo = mant - hi * _SPLIT
        idx = exp.astype(np.int64) - _EMIN
        self._hi += np.bincount(idx, weights=hi, minlength=_NBUCKETS)
        self._lo += np.bincount(idx, weights=lo, minlength=_NBUCKETS)
        self._count += x.size

    def merge(self, other: ExactSum) -> None:
        if self._count + other._count > _MAX_TERMS:
            self._flush()
        self._hi += other._hi
        self._lo += other._lo
        self._count += other._count
        self._spill.extend(other._spill)

    def _exact(self) -> Fraction:
        total = sum(self._spill, Fraction(0))
        nz = np.nonzero((self._hi != 0) | (self._lo != 0))[0]
        for i in nz:
            e = int(i) + _EMIN - 53
            m = int(self._hi[i]) * int(_SPLIT) + int(self._lo[i])
            total += Fraction(m) * (Fraction(2) ** e)
        return total

    def _flush(self) -> None:
        self._spill = [self._exact()]
        self._hi[:] = 0
        self._lo[:] = 0
        self._count = 0

    def value(self) -> float:
        return float(self._exact())


def exact_sum(values: np.ndarray) -> float:
    acc = ExactSum()
    acc.add(values)
    return acc.value()
