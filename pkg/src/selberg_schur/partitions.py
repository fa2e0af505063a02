"""Integer partitions and the two-column combinatorics used by the closed forms.

Everything here is exact: Python integers and :class:`fractions.Fraction`,
no floating point.  Partitions are stored without trailing zeros; the number
of variables ``N`` is always passed explicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "TwoColumnShape",
    "make_partition",
    "dominance_leq",
    "dominated_two_column",
    "kostka_two_column",
    "n_conjugate",
    "monomial_spec_ones",
    "schur_spec_ones",
    "partitions_of",
    "two_column_shapes",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Use :func:`make_partition` to build one from arbitrary input; the
    constructor assumes canonical form and only validates it.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {parts}")

    def length(self) -> int:
        return len(self.parts)

    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """1-based row length; zero beyond the length."""
        if i < 1:
            raise IndexError("partition rows are 1-based")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def padded(self, N: int) -> tuple[int, ...]:
        """Parts padded with zeros to length ``N``."""
        if self.length() > N:
            raise ValueError(f"partition {self.parts} has more than {N} parts")
        return self.parts + (0,) * (N - self.length())

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def is_two_column(self) -> bool:
        return all(p <= 2 for p in self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Partition:
        return make_partition(data)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "0"


@dataclass(frozen=True)
class TwoColumnShape:
    """The partition ``(2^n 1^(m-n))`` living in ``N`` variables."""

    n: int
    m: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        if not 0 <= self.n <= self.m <= self.N:
            raise ValueError(
                f"two-column shape needs 0 <= n <= m <= N, got n={self.n}, m={self.m}, N={self.N}"
            )

    def to_partition(self) -> Partition:
        return Partition((2,) * self.n + (1,) * (self.m - self.n))

    @classmethod
    def from_partition(cls, lam: Partition, N: int) -> TwoColumnShape:
        if not lam.is_two_column():
            raise ValueError(f"{lam} has a part larger than 2")
        return cls(n=lam.parts.count(2), m=lam.length(), N=N)


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and strip trailing zeros.

    >>> make_partition([2, 1, 0, 0])
    Partition(parts=(2, 1))
    """
    raw = [int(p) for p in parts]
    if any(p < 0 for p in raw):
        raise ValueError(f"negative entry in {raw}")
    if any(raw[i] < raw[i + 1] for i in range(len(raw) - 1)):
        raise ValueError(f"{raw} is not weakly decreasing")
    while raw and raw[-1] == 0:
        raw.pop()
    return Partition(tuple(raw))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff ``mu`` is dominated by ``lam`` (equal weights, prefix sums below)."""
    if mu.weight() != lam.weight():
        return False
    smu = slam = 0
    for i in range(max(mu.length(), lam.length())):
        smu += mu.part(i + 1)
        slam += lam.part(i + 1)
        if smu > slam:
            return False
    return True


def dominated_two_column(shape: TwoColumnShape) -> list[tuple[Partition, int]]:
    """All ``mu_r = (2^(n-r) 1^(m-n+2r))`` for ``r = 0..n`` with their index.

    Entries whose length exceeds ``N`` are kept; their monomial
    specialization is zero, which kills the corresponding summand.
    """
    n, m = shape.n, shape.m
    return [(Partition((2,) * (n - r) + (1,) * (m - n + 2 * r)), r) for r in range(n + 1)]


def kostka_two_column(d: int, r: int) -> int:
    """Number of standard Young tableaux of shape ``(2^r 1^d)``.

    This is the Kostka number ``K_{lambda mu}`` between ``(2^n 1^d)`` and
    ``(2^(n-r) 1^(d+2r))``.
    """
    if d < 0 or r < 0:
        raise ValueError(f"d and r must be nonnegative, got d={d}, r={r}")
    top = d + 2 * r + 1
    num = (d + 1) * comb(top, r)
    q, rem = divmod(num, top)
    if rem:
        raise ArithmeticError(f"non-integral Kostka number for d={d}, r={r}")
    return q


def n_conjugate(lam: Partition, N: int) -> Partition:
    """The partition with rows ``lam_1 + lam_N - lam_(N-i+1)``, i = 1..N."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if lam.length() > N:
        raise ValueError(f"partition {lam} has more than N={N} parts")
    top = lam.part(1) + lam.part(N)
    return make_partition([top - lam.part(N - i + 1) for i in range(1, N + 1)])


def monomial_spec_ones(mu: Partition, N: int) -> int:
    """``m_mu(1^N)``: the number of distinct monomials in ``m_mu`` on N variables."""
    if mu.length() > N:
        return 0
    mult = Counter(mu.parts)
    mult[0] = N - mu.length()
    out = factorial(N)
    for k in mult.values():
        out //= factorial(k)
    return out


def _content_hook_pairs(lam: Partition) -> Iterator[tuple[int, int]]:
    conj = lam.conjugate()
    for i, row in enumerate(lam.parts):
        for j in range(row):
            yield j - i, (row - j - 1) + (conj.parts[j] - i - 1) + 1


def schur_spec_ones(lam: Partition, N: int) -> int:
    """``s_lam(1^N)`` from the hook-content product."""
    if lam.length() > N:
        return 0
    val = Fraction(1)
    for content, hook in _content_hook_pairs(lam):
        val *= Fraction(N + content, hook)
    if val.denominator != 1:
        raise ArithmeticError(f"hook-content product for {lam} is not an integer: {val}")
    return val.numerator


def partitions_of(k: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``k`` in reverse lexicographic order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield Partition()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            yield Partition((first,) + rest.parts)


def two_column_shapes(N: int) -> list[TwoColumnShape]:
    """Every ``(n, m)`` with ``0 <= n <= m <= N``."""
    return [TwoColumnShape(n, m, N) for m in range(N + 1) for n in range(m + 1)]
