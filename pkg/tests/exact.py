"""Exact-arithmetic reference computations shared by the tests."""

from fractions import Fraction
from itertools import product

# Exact polynomial integration over (0,1)^N, used as an independent oracle
# whenever a, b are positive integers and rho = 1.
Poly = dict  # exponent tuple -> Fraction


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def poly_var(i: int, N: int, power: int = 1) -> Poly:
    e = [0] * N
    e[i] = power
    return {tuple(e): Fraction(1)}


def poly_const(c, N: int) -> Poly:
    return {(0,) * N: Fraction(c)}


def poly_add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def poly_pow(p: Poly, k: int, N: int) -> Poly:
    out = poly_const(1, N)
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def selberg_density_poly(a: int, b: int, N: int) -> Poly:
    """prod y^(a-1)(1-y)^(b-1) prod (y_i-y_j)^2 as an exact polynomial."""
    out = poly_const(1, N)
    for i in range(N):
        yi = poly_var(i, N)
        one_minus = poly_add(poly_const(1, N), yi, -1)
        out = poly_mul(out, poly_pow(yi, a - 1, N))
        out = poly_mul(out, poly_pow(one_minus, b - 1, N))
    for i in range(N):
        for j in range(i + 1, N):
            d = poly_add(poly_var(i, N), poly_var(j, N), -1)
            out = poly_mul(out, poly_mul(d, d))
    return out


def integrate_poly(p: Poly) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for k in e:
            term /= k + 1
        total += term
    return total


def monomial_poly(exps, N: int) -> Poly:
    e = list(exps) + [0] * (N - len(exps))
    return {tuple(e): Fraction(1)}


def symmetric_monomial_poly(mu, N: int) -> Poly:
    parts = list(mu) + [0] * (N - len(mu))
    return {perm: Fraction(1) for perm in set(_perms(parts))}


def _perms(seq):
    if len(seq) <= 1:
        yield tuple(seq)
        return
    for i in range(len(seq)):
        for rest in _perms(seq[:i] + seq[i + 1:]):
            yield (seq[i],) + rest


# Independent tableau counters.

def count_syt(shape) -> int:
    """Standard Young tableaux by adding cells 1..n one at a time."""
    shape = list(shape)
    total = sum(shape)

    def rec(filled, placed):
        if placed == total:
            return 1
        count = 0
        for i in range(len(shape)):
            if filled[i] < shape[i] and (i == 0 or filled[i - 1] > filled[i]):
                filled[i] += 1
                count += rec(filled, placed + 1)
                filled[i] -= 1
        return count

    return rec([0] * len(shape), 0)


def count_ssyt(shape, N: int) -> int:
    """Semistandard tableaux with entries 1..N, brute force over fillings."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    count = 0
    for vals in product(range(1, N + 1), repeat=len(cells)):
        t = dict(zip(cells, vals))
        ok = all(
            (j == 0 or t[(i, j - 1)] <= v) and (i == 0 or t[(i - 1, j)] < v)
            for (i, j), v in t.items()
        )
        count += ok
    return count

