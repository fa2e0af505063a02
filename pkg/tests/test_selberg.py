import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exact import integrate_poly, monomial_poly, poly_add, poly_mul, selberg_density_poly, symmetric_monomial_poly
from selberg_schur.errors import DegenerateParameterError, UnsupportedPartitionError, ZeroDenominatorError
from selberg_schur.partitions import TwoColumnShape, make_partition, two_column_shapes
from selberg_schur.selberg import (
    ConditionReport,
    LogValue,
    SelbergParams,
    aomoto,
    kadell_rho1,
    monomial_two_column_integral,
    pfaff_saalschutz_rhs,
    psi,
    psi_boundary,
    selberg_J0,
    selberg_schur,
    selberg_schur_integral,
    selberg_schur_kostka,
    validate_conditions,
)
from selberg_schur.selberg import _hyp3f2, _hyp4f3
from selberg_schur.special import HypSpec, gen_pochhammer, hyp_terminating, pochhammer

P = make_partition
GRID = (0.4, 1.0, 1.7)


def close(x, y, tol):
    return abs(x - y) <= tol * max(abs(x), abs(y), 1e-300)


def grid_params(N):
    return [SelbergParams(a, b, r, N) for a in GRID for b in GRID for r in GRID]


class TestParams:
    def test_derived(self):
        p = SelbergParams(1, 2, 0.5, 3)
        assert p.alpha == 2 and p.beta == 4 and p.gamma == 2
        assert p.is_real()
        assert p.replace(N=2).N == 2

    def test_rejects_bad_N(self):
        for N in (0, -1, 1.5):
            with pytest.raises(ValueError):
                SelbergParams(1, 1, 1, N)

    def test_rho_zero(self):
        p = SelbergParams(1, 1, 0, 2)
        with pytest.raises(DegenerateParameterError):
            p.alpha
        with pytest.raises(DegenerateParameterError):
            selberg_schur(p, TwoColumnShape(1, 1, 2))

    def test_json_round_trip(self):
        p = SelbergParams(0.5 + 1j, 2, 0.25, 3)
        assert SelbergParams.from_json(p.to_json()) == p


class TestConditions:
    def test_real_and_complex(self):
        r = validate_conditions(SelbergParams(0.2, 0.3, 0.1, 2))
        assert r.real_ok and r.complex_ok and r.violated == ()

    def test_real_only(self):
        r = validate_conditions(SelbergParams(1, 1, 1, 2))
        assert r.real_ok and not r.complex_ok
        assert {v.name for v in r.violated} == {"Re(a+b+(N-1)rho) < 1", "Re(a+b+(2N-2)rho) < 1"}
        assert all(v.slack <= 0 for v in r.violated)

    def test_negative_rho_bound(self):
        # bound is min(1/3, 0.6/2, 3/2) = 0.3
        assert validate_conditions(SelbergParams(0.6, 3, -0.29, 3)).real_ok
        assert not validate_conditions(SelbergParams(0.6, 3, -0.31, 3)).real_ok

    def test_nonpositive_a(self):
        r = validate_conditions(SelbergParams(0, 1, 1, 1))
        assert not r.real_ok and not r.complex_ok

    def test_json_round_trip(self):
        r = validate_conditions(SelbergParams(1, -1, 1, 3))
        assert ConditionReport.from_json(r.to_json()) == r


class TestExamples:
    def test_selberg_J0_N1_is_beta(self):
        assert close(selberg_J0(SelbergParams(2, 3, 0.5, 1)), 1 / 12, 1e-14)

    def test_two_column_example(self):
        p = SelbergParams(1, 1, 1, 2)
        assert close(selberg_schur(p, TwoColumnShape(1, 1, 2)), 3 / 20, 1e-13)
        assert close(selberg_schur(p, TwoColumnShape(0, 2, 2)), 1 / 36, 1e-13)
        assert close(selberg_schur(p, TwoColumnShape(1, 2, 2)), 1 / 30, 1e-13)
        assert close(selberg_schur(p, TwoColumnShape(2, 2, 2)), 1 / 120, 1e-13)

    def test_empty_shape_is_J0(self):
        for p in grid_params(3):
            assert close(selberg_schur(p, TwoColumnShape(0, 0, 3)), selberg_J0(p), 1e-13)

    def test_dispatch(self):
        p = SelbergParams(1.5, 0.7, 1, 3)
        assert selberg_schur_integral(p, P([3])) == kadell_rho1(p, P([3]))
        assert selberg_schur_integral(p, P([2, 1])) == selberg_schur(p, TwoColumnShape(1, 2, 3))
        with pytest.raises(UnsupportedPartitionError):
            selberg_schur_integral(p.replace(rho=0.5), P([3]))
        with pytest.raises(ValueError):
            selberg_schur_integral(p, P([1, 1, 1, 1]))

    def test_cancelling_prefactor(self):
        # a + b = rho makes a numerator and a denominator factor vanish together at N = 1
        p = SelbergParams(0.2, 0.3, 0.5, 1)
        assert close(selberg_schur(p, TwoColumnShape(1, 1, 1)), float(mpmath.beta(2.2, 0.3)), 1e-13)
        assert close(monomial_two_column_integral(p, 1, 1), float(mpmath.beta(2.2, 0.3)), 1e-13)
        near = SelbergParams(0.2, 0.3 + 1e-9, 0.5, 1)
        assert close(selberg_schur(near, TwoColumnShape(1, 1, 1)), float(mpmath.beta(2.2, 0.3 + 1e-9)), 1e-12)

    def test_shape_N_mismatch(self):
        with pytest.raises(ValueError):
            selberg_schur(SelbergParams(1, 1, 1, 3), TwoColumnShape(1, 1, 2))

    def test_kadell_needs_rho_one(self):
        with pytest.raises(DegenerateParameterError):
            kadell_rho1(SelbergParams(1, 1, 0.5, 2), P([1]))

    def test_aomoto_range(self):
        with pytest.raises(ValueError):
            aomoto(SelbergParams(1, 1, 1, 2), 3)


class TestMpmathReference:
    # Two-dimensional integrals computed to 30 digits with tanh-sinh quadrature.
    @pytest.mark.parametrize(
        "a,b,rho,lam,expected",
        [
            (1.5, 0.7, 0.6, (2, 1), 0.12428333923076321555),
            (0.7, 2.3, 1.7, (2,), 0.010903069661607375149),
        ],
    )
    def test_frozen_values(self, a, b, rho, lam, expected):
        got = selberg_schur_integral(SelbergParams(a, b, rho, 2), P(lam))
        assert close(got, expected, 1e-13)


def exact_schur_poly(shape, N):
    # dual Jacobi-Trudi for conjugate (m, n): e_m e_n - e_(m+1) e_(n-1)
    def e(k):
        if k < 0 or k > N:
            return {}
        return symmetric_monomial_poly((1,) * k, N)

    m, n = shape.m, shape.n
    return poly_add(poly_mul(e(m), e(n)), poly_mul(e(m + 1), e(n - 1)), sign=-1)


class TestExactPolynomial:
    @pytest.mark.parametrize("N", [1, 2, 3])
    @pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (1, 3)])
    def test_two_column(self, a, b, N):
        dens = selberg_density_poly(a, b, N)
        p = SelbergParams(a, b, 1, N)
        for shape in two_column_shapes(N):
            exact = integrate_poly(poly_mul(dens, exact_schur_poly(shape, N)))
            assert close(selberg_schur(p, shape), float(exact), 1e-12), shape
            mono = integrate_poly(poly_mul(dens, monomial_poly((2,) * shape.n + (1,) * (shape.m - shape.n), N)))
            assert close(monomial_two_column_integral(p, shape.n, shape.m), float(mono), 1e-12)

    def test_small_values(self):
        dens = selberg_density_poly(1, 1, 2)
        assert integrate_poly(dens) == Fraction(1, 6)
        assert integrate_poly(poly_mul(dens, exact_schur_poly(TwoColumnShape(1, 1, 2), 2))) == Fraction(3, 20)

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_kadell(self, N):
        dens = selberg_density_poly(2, 1, N)
        p = SelbergParams(2, 1, 1, N)
        # s_(3) = h_3 = m_3 + m_21 + m_111
        h3 = {}
        for mu in ((3,), (2, 1), (1, 1, 1)):
            if len(mu) <= N:
                h3 = poly_add(h3, symmetric_monomial_poly(mu, N))
        assert close(kadell_rho1(p, P([3])), float(integrate_poly(poly_mul(dens, h3))), 1e-12)


class TestPsi:
    def test_boundary_values(self):
        p = SelbergParams(1, 1, 1, 2)
        assert psi_boundary(p, 0) == 1
        # (a+b+N-2)(a+1+N-1) / (a+b+1+2N-2) = 2*3/5
        assert close(psi_boundary(p, 1), 6 / 5, 1e-15)
        assert close(psi(p, 2, 1), 6 / 5, 1e-15)

    def test_recurrence(self):
        for N in range(2, 7):
            for p in grid_params(N):
                for m in range(2, N + 1):
                    for n in range(1, m):
                        lhs = psi(p, m, n)
                        rhs = psi(p, m - 1, n) - psi(p, m, n - 1)
                        assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs)), (p, m, n)

    def test_column_is_one(self):
        for p in grid_params(4):
            for m in range(5):
                assert psi(p, m, 0) == 1

    def test_boundary_zero_denominator(self):
        # a + b + 1 + (2N - 2) rho = 0 at i = 1
        with pytest.raises(ZeroDenominatorError):
            psi_boundary(SelbergParams(-1, -1, 0.5, 2), 1)


class TestConsistency:
    def test_kostka_route(self):
        for N in range(1, 6):
            for p in grid_params(N):
                for shape in two_column_shapes(N):
                    assert close(selberg_schur(p, shape), selberg_schur_kostka(p, shape), 1e-10)

    def test_rho_one_matches_kadell(self):
        for N in range(1, 7):
            for a in GRID:
                for b in GRID:
                    p = SelbergParams(a, b, 1, N)
                    for shape in two_column_shapes(N):
                        lam = shape.to_partition()
                        assert close(selberg_schur(p, shape), kadell_rho1(p, lam), 1e-11)

    def test_column_shapes_are_aomoto(self):
        for N in range(1, 6):
            for p in grid_params(N):
                for m in range(N + 1):
                    assert close(selberg_schur(p, TwoColumnShape(0, m, N)), aomoto(p, m), 1e-11)

    def test_pfaff_saalschutz(self):
        for N in range(1, 6):
            for a in GRID:
                for b in GRID:
                    p = SelbergParams(a, b, 1, N)
                    for shape in two_column_shapes(N):
                        n, m = shape.n, shape.m
                        assert close(_hyp4f3(p, n, m), pfaff_saalschutz_rhs(p, n, m), 1e-11)

    def test_monomial_hypergeometric_form(self):
        # prefactor product = 2F1(-n, -N+m; al+be+N-n-1) by Chu-Vandermonde, so the
        # monomial integral is J(0) [..]_lam / [..]_lam * 3F2 / 2F1
        for N in range(1, 6):
            for p in grid_params(N):
                al, be = p.alpha, p.beta
                a, b, rho = p.a, p.b, p.rho
                for shape in two_column_shapes(N):
                    n, m = shape.n, shape.m
                    prod = math.prod(
                        (a + b + (2 * N - m - i - 1) * rho) / (a + b + (N - i - 1) * rho) for i in range(1, n + 1)
                    )
                    f21 = hyp_terminating(HypSpec((-n, -N + m), (al + be + N - n - 1,)))
                    ratio = pochhammer(al + be + 2 * N - n - m - 1, n) / pochhammer(al + be + N - n - 1, n)
                    assert close(prod, f21, 1e-11) and close(ratio, f21, 1e-11)
                    lam = shape.to_partition()
                    form = (
                        selberg_J0(p)
                        * gen_pochhammer(a + (N - 1) * rho, lam, rho)
                        / gen_pochhammer(a + b + 2 * (N - 1) * rho, lam, rho)
                        * _hyp3f2(p, n, m)
                        / f21
                    )
                    assert close(monomial_two_column_integral(p, n, m), form, 1e-11)

    @given(st.floats(0.2, 3), st.floats(0.2, 3), st.floats(0.2, 2), st.integers(1, 5))
    def test_reflection_a_b(self, a, b, rho, N):
        # y -> 1 - y swaps a and b; s_(1^N) = e_N and J(0) are symmetric
        p, q = SelbergParams(a, b, rho, N), SelbergParams(b, a, rho, N)
        assert close(selberg_J0(p), selberg_J0(q), 1e-12)
        # e_1(1 - y) = N - e_1(y)
        assert close(aomoto(q, 1), N * selberg_J0(p) - aomoto(p, 1), 1e-10)


class TestLogScale:
    def test_as_log_matches_value(self):
        for p in grid_params(3):
            for shape in two_column_shapes(3):
                lv = selberg_schur(p, shape, as_log=True)
                assert isinstance(lv, LogValue)
                assert close(lv.value, selberg_schur(p, shape), 1e-12)

    def test_large_N_no_overflow(self):
        p = SelbergParams(1.5, 2.5, 1.3, 50)
        lv = selberg_J0(p, as_log=True)
        ref = mpmath.fsum(
            mpmath.loggamma(1.5 + (50 - i) * 1.3) + mpmath.loggamma(2.5 + (50 - i) * 1.3)
            + mpmath.loggamma(i * 1.3 + 1) - mpmath.loggamma(4 + (100 - i - 1) * 1.3) - mpmath.loggamma(2.3)
            for i in range(1, 51)
        )
        assert math.isfinite(lv.logabs)
        assert abs(lv.logabs - float(ref)) < 1e-9 * abs(float(ref))
        top = selberg_schur(p, TwoColumnShape(25, 50, 50), as_log=True)
        assert math.isfinite(top.logabs)

    def test_zero_value_log(self):
        assert LogValue(-math.inf, 0.0).value == 0
