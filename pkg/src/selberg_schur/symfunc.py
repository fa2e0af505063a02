"""Evaluation of elementary, complete, monomial and Schur polynomials.

Scalar routines take a :class:`PointVector` (or any sequence of numbers)
and return a Python complex.  :func:`schur_grid` and :func:`elementary_grid`
evaluate many points at once for the quadrature oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .partitions import Partition, n_conjugate

__all__ = [
    "PointVector",
    "elementary",
    "complete",
    "monomial",
    "schur",
    "schur_bialternant",
    "schur_jacobi_trudi",
    "schur_inversion_residual",
    "elementary_grid",
    "schur_grid",
    "SEPARATION_THRESHOLD",
]

# Bialternant is used only when min |y_i - y_j| exceeds this times max |y_i|.
SEPARATION_THRESHOLD = 1e-6


@dataclass(frozen=True)
class PointVector:
    """A finite point ``(y_1, ..., y_N)`` in C^N."""

    coords: tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        if not all(cmath.isfinite(c) for c in coords):
            raise ValueError(f"non-finite coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def N(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)


Point = Union[PointVector, Sequence[complex]]


def _coords(y: Point) -> tuple[complex, ...]:
    return y.coords if isinstance(y, PointVector) else PointVector(tuple(y)).coords


def _check_length(lam: Partition, N: int) -> None:
    if lam.length() > N:
        raise ValueError(f"partition {lam} has more than N={N} parts")


def _elementary_all(y: Sequence[complex]) -> list[complex]:
    # Coefficients of prod_i (1 + t y_i), expanded one factor at a time.
    e = [1 + 0j] + [0j] * len(y)
    for j, yj in enumerate(y, start=1):
        for k in range(j, 0, -1):
            e[k] += yj * e[k - 1]
    return e


def elementary(m: int, y: Point) -> complex:
    """``e_m(y)``; ``e_0 = 1``."""
    ys = _coords(y)
    if not 0 <= m <= len(ys):
        raise ValueError(f"e_m needs 0 <= m <= N={len(ys)}, got m={m}")
    return _elementary_all(ys)[m]


def _complete_all(y: Sequence[complex], kmax: int) -> list[complex]:
    # Coefficients of prod_i 1/(1 - t y_i): h^(j)_k = h^(j-1)_k + y_j h^(j)_(k-1).
    h = [1 + 0j] + [0j] * kmax
    for yj in y:
        for k in range(1, kmax + 1):
            h[k] += yj * h[k - 1]
    return h


def complete(k: int, y: Point) -> complex:
    """Complete homogeneous symmetric polynomial ``h_k(y)``."""
    if k < 0:
        return 0j
    return _complete_all(_coords(y), k)[k]


def _distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    pool = sorted(items)
    n = len(pool)

    def rec(prefix: list[int], remaining: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        last = None
        for i, v in enumerate(remaining):
            if v == last:
                continue
            last = v
            yield from rec(prefix + [v], remaining[:i] + remaining[i + 1:])

    yield from rec([], pool)


def monomial(mu: Partition, y: Point) -> complex:
    """Monomial symmetric polynomial: sum over distinct rearrangements of ``y^mu``."""
    ys = _coords(y)
    _check_length(mu, len(ys))
    total = 0j
    for exps in _distinct_permutations(mu.padded(len(ys))):
        term = 1 + 0j
        for yi, e in zip(ys, exps):
            if e:
                term *= yi**e
        total += term
    return total


def schur_bialternant(lam: Partition, y: Point) -> complex:
    """Ratio ``det(y_i^(lam_j + N - j)) / det(y_i^(N - j))``; needs distinct coordinates."""
    ys = np.asarray(_coords(y), dtype=complex)
    N = ys.size
    _check_length(lam, N)
    lam_pad = np.array(lam.padded(N))
    steps = np.arange(N - 1, -1, -1)
    num = ys[:, None] ** (lam_pad + steps)[None, :]
    den = ys[:, None] ** steps[None, :]
    return complex(np.linalg.det(num) / np.linalg.det(den))


def schur_jacobi_trudi(lam: Partition, y: Point) -> complex:
    """``det(h_(lam_i - i + j))``, valid at coincident coordinates."""
    ys = _coords(y)
    _check_length(lam, len(ys))
    ell = lam.length()
    if ell == 0:
        return 1 + 0j
    h = _complete_all(ys, lam.part(1) + ell)
    mat = np.zeros((ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            k = lam.parts[i] - i + j
            mat[i, j] = h[k] if k >= 0 else 0
    return complex(np.linalg.det(mat))


def _well_separated(ys: Sequence[complex]) -> bool:
    scale = max(abs(v) for v in ys)
    if scale == 0:
        return False
    gap = min(
        (abs(ys[i] - ys[j]) for i in range(len(ys)) for j in range(i + 1, len(ys))),
        default=math.inf,
    )
    return gap > SEPARATION_THRESHOLD * scale


def schur(lam: Partition, y: Point) -> complex:
    """Schur polynomial ``s_lam(y)``.

    Uses the bialternant when the coordinates are well separated and the
    Jacobi-Trudi determinant otherwise.
    """
    ys = _coords(y)
    _check_length(lam, len(ys))
    if lam.length() == 0:
        return 1 + 0j
    if _well_separated(ys):
        return schur_bialternant(lam, ys)
    return schur_jacobi_trudi(lam, ys)


def schur_inversion_residual(lam: Partition, y: Point) -> float:
    """Relative mismatch of ``s_lam(1/y) = s_(lam^N)(y) prod y_i^(-lam_1-lam_N)``."""
    ys = _coords(y)
    N = len(ys)
    if any(v == 0 for v in ys):
        raise ValueError("inversion identity needs nonzero coordinates")
    lhs = schur(lam, [1 / v for v in ys])
    shift = lam.part(1) + lam.part(N)
    scale = 1 + 0j
    for v in ys:
        scale *= v ** (-shift)
    rhs = schur(n_conjugate(lam, N), ys) * scale
    return abs(lhs - rhs) / (1 + abs(lhs))


def elementary_grid(y: np.ndarray) -> np.ndarray:
    """All ``e_0..e_N`` at each row of ``y`` (shape ``(M, N)`` -> ``(M, N+1)``)."""
    y = np.asarray(y)
    M, N = y.shape
    e = np.zeros((M, N + 1), dtype=y.dtype)
    e[:, 0] = 1
    for j in range(N):
        col = y[:, j]
        for k in range(j + 1, 0, -1):
            e[:, k] += col * e[:, k - 1]
    return e


def schur_grid(lam: Partition, y: np.ndarray, e: np.ndarray | None = None) -> np.ndarray:
    """``s_lam`` at each row of ``y`` via the dual Jacobi-Trudi identity
    ``s_lam = det(e_(lam'_i - i + j))``.

    This is a polynomial expression in the coordinates, so it is exact at
    coincident points.  Pass a precomputed :func:`elementary_grid` as ``e``
    to share work across partitions.
    """
    y = np.asarray(y)
    M, N = y.shape
    _check_length(lam, N)
    if e is None:
        e = elementary_grid(y)
    conj = lam.conjugate().parts
    ell = len(conj)
    if ell == 0:
        return np.ones(M, dtype=e.dtype)

    def col(k: int) -> np.ndarray:
        if k < 0 or k > N:
            return np.zeros(M, dtype=e.dtype)
        return e[:, k]

    if ell == 1:
        return col(conj[0]).copy()
    if ell == 2:
        return col(conj[0]) * col(conj[1]) - col(conj[0] + 1) * col(conj[1] - 1)
    mat = np.empty((M, ell, ell), dtype=e.dtype)
    for i in range(ell):
        for j in range(ell):
            mat[:, i, j] = col(conj[i] - i + j)
    return np.linalg.det(mat)
