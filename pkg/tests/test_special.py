import cmath
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from selberg_schur.errors import NonTerminatingError, PoleError, ZeroDenominatorError
from selberg_schur.partitions import make_partition
from selberg_schur.special import (
    HypSpec,
    beta,
    gamma,
    gen_pochhammer,
    hyp_terminating,
    log_gamma,
    nonpositive_integer,
    pochhammer,
    sinpi,
)

reals = st.floats(-30, 30, allow_nan=False).filter(lambda x: abs(x - round(x)) > 1e-6)
complexes = st.builds(complex, st.floats(-20, 20), st.floats(-20, 20)).filter(
    lambda z: abs(z.imag) > 1e-3 or abs(z.real - round(z.real)) > 1e-3
)


def term_scale(num, den, n):
    """Sum of absolute term sizes; bounds the rounding error of a cancelling series."""
    total, term = 1.0, 1.0
    for k in range(n):
        term *= math.prod(abs(a + k) for a in num) / (math.prod(abs(b + k) for b in den) * (k + 1))
        total += term
    return total


def rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


class TestLogGamma:
    @pytest.mark.parametrize("z,expected", [(1, 0.0), (2, 0.0), (5, math.log(24)), (0.5, 0.5 * math.log(math.pi))])
    def test_examples(self, z, expected):
        assert abs(log_gamma(z) - expected) < 1e-14

    def test_negative_half(self):
        # Gamma(-1/2) = -2 sqrt(pi); principal log picks up i*pi
        val = log_gamma(-0.5)
        assert abs(val.real - math.log(2 * math.sqrt(math.pi))) < 1e-14
        assert abs(abs(val.imag) - math.pi) < 1e-12

    @pytest.mark.parametrize("z", [0, -1, -7])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            log_gamma(z)
        with pytest.raises(PoleError):
            gamma(z)

    @given(complexes)
    def test_matches_mpmath(self, z):
        ref = complex(mpmath.loggamma(mpmath.mpc(z)))
        assert abs(log_gamma(z) - ref) <= 1e-12 * max(1.0, abs(ref))

    @given(reals)
    def test_real_gamma(self, x):
        ref = float(mpmath.gamma(x))
        assert rel(gamma(x), ref) < 1e-12

    @given(complexes)
    def test_recurrence(self, z):
        # Gamma(z+1) = z Gamma(z), modulo the 2 pi i ambiguity of logs
        diff = log_gamma(z + 1) - log_gamma(z) - cmath.log(z)
        assert abs(diff.real) < 1e-10 * max(1.0, abs(log_gamma(z)))
        turns = diff.imag / (2 * math.pi)
        assert abs(turns - round(turns)) < 1e-9

    @given(reals)
    def test_reflection(self, x):
        lhs = gamma(x) * gamma(1 - x)
        assert rel(lhs, float(mpmath.pi / mpmath.sinpi(x))) < 1e-11

    def test_beta(self):
        assert rel(beta(2, 3), 1 / 12) < 1e-14
        assert rel(beta(0.3, 0.4), float(mpmath.beta(0.3, 0.4))) < 1e-13


class TestSinpi:
    @pytest.mark.parametrize("n", [-5, -1, 0, 1, 2, 10, 1001])
    def test_exact_zeros(self, n):
        assert sinpi(n) == 0

    def test_values(self):
        assert sinpi(0.5) == 1
        assert sinpi(1.5) == -1
        assert abs(sinpi(1 / 6) - 0.5) < 1e-15

    @given(complexes)
    def test_matches_cmath(self, z):
        ref = complex(mpmath.sinpi(mpmath.mpc(z)))
        assert abs(sinpi(z) - ref) <= 1e-12 * max(1.0, abs(ref))


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(3, 0) == 1
        assert pochhammer(3, 2) == 12
        assert pochhammer(-2, 3) == 0
        assert pochhammer(0.5, 2) == 0.75

    def test_negative_length(self):
        with pytest.raises(ValueError):
            pochhammer(1, -1)

    @given(st.floats(0.1, 10), st.integers(0, 12))
    def test_gamma_ratio(self, a, k):
        assert rel(pochhammer(a, k), gamma(a + k) / gamma(a)) < 1e-11

    def test_generalized(self):
        lam = make_partition([2, 1])
        # (a)_2 (a - rho)_1
        assert gen_pochhammer(3, lam, 0.5) == 3 * 4 * 2.5
        assert gen_pochhammer(3, make_partition([]), 0.5) == 1

    @given(st.floats(0.1, 5), st.floats(0.1, 2), st.integers(0, 6))
    def test_generalized_column(self, a, rho, n):
        # (1^n): prod_{i<n} (a - i rho)
        expected = math.prod(a - i * rho for i in range(n))
        got = gen_pochhammer(a, make_partition([1] * n), rho)
        assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


class TestHypTerminating:
    def test_examples(self):
        assert hyp_terminating(HypSpec((-2, 1), (3,))) == 0.5
        assert hyp_terminating(HypSpec((0, 2, 3, 4), (5, 6, 7))) == 1
        assert hyp_terminating(HypSpec((-1, -1, 5, 3), (2, 3, 2))) == 2.25

    def test_nonpositive_integer(self):
        assert nonpositive_integer(-3) == 3
        assert nonpositive_integer(0) == 0
        assert nonpositive_integer(1) is None
        assert nonpositive_integer(-2.5) is None
        assert nonpositive_integer(-2 + 1j) is None

    @given(st.integers(0, 15), st.floats(0.2, 10), st.floats(0.2, 10))
    def test_chu_vandermonde(self, n, b, c):
        # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
        got = hyp_terminating(HypSpec((-n, b), (c,)))
        expected = pochhammer(c - b, n) / pochhammer(c, n)
        assert abs(got - expected) <= 1e-13 * term_scale((-n, b), (c,), n)

    @given(st.integers(0, 8), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 4), st.floats(0.5, 4))
    def test_matches_mpmath(self, n, b, c, d, e):
        ref = complex(mpmath.hyper([-n, b, c], [d, e], 1))
        got = hyp_terminating(HypSpec((-n, b, c), (d, e)))
        assert abs(got - ref) <= 1e-13 * term_scale((-n, b, c), (d, e), n)

    def test_non_terminating(self):
        with pytest.raises(NonTerminatingError):
            hyp_terminating(HypSpec((0.5, 1), (2,)))

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominatorError):
            hyp_terminating(HypSpec((-3, 1), (-1,)))

    def test_denominator_zero_after_termination_is_fine(self):
        # (-1)_k stops at k=1 before (-2)_k reaches zero
        assert hyp_terminating(HypSpec((-1, 1), (-2,))) == 1.5
