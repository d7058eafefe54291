import cmath
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import distributions, rand_distribution
from multconv import (
    DomainError,
    cauchy_transform,
    char_function,
    delta,
    hadamard_product,
    laurent_coefficients_at_infinity,
    make_distribution,
    moment,
    moment_table,
    star,
    taylor_coefficients,
    unit,
    zero,
)
from multconv.transforms import (
    RationalTransform,
    SeriesTable,
    cauchy_kernel_value,
    evaluate,
    evaluate_at_infinity_chart,
)

z = sympy.Symbol("z")


def series_oracle(expr, n):
    """Taylor coefficients of a sympy expression at 0."""
    s = sympy.series(expr, z, 0, n + 1).removeO()
    return [sympy.Rational(s.coeff(z, k)) for k in range(n + 1)]


class TestCauchyTransform:
    def test_point_mass(self):
        a = Fraction(3, 2)
        F = cauchy_transform(delta(a))
        assert F.terms == ((1, ((a, 0, 1),)),)
        assert evaluate(F, 0.2) == pytest.approx(1 / (1 - 1.5 * 0.2))

    def test_unit(self):
        F = cauchy_transform(unit(1))
        assert all(v == 1 for v in taylor_coefficients(F, 10).coeffs.values())

    def test_derivative(self):
        F = cauchy_transform(delta(1, 1))
        assert evaluate(F, 0.3) == pytest.approx(-0.3 / 0.7**2)
        assert [taylor_coefficients(F, 8)[n] for n in range(9)] == [-n for n in range(9)]

    @settings(max_examples=40, deadline=None)
    @given(distributions(max_points=2, max_order=2), st.data())
    def test_matches_direct_action(self, T, data):
        # apply T to xi -> prod 1/(1 - xi_j z_j) symbolically, evaluate at a random z
        zs = [complex(data.draw(st.floats(-0.2, 0.2)), data.draw(st.floats(0.05, 0.3)))
              for _ in range(T.dim)]
        xi = sympy.symbols(f"xi1:{T.dim + 1}")
        zsym = sympy.symbols(f"z1:{T.dim + 1}")
        kernel = sympy.Mul(*[1 / (1 - a * b) for a, b in zip(xi, zsym)])
        total = 0
        for (p, mu), c in T.terms.items():
            d = kernel
            for s, m in zip(xi, mu):
                d = sympy.diff(d, s, m)
            d = d.subs({s: sympy.Rational(v.numerator, v.denominator) for s, v in zip(xi, p)})
            total += complex(sympy.N(d.subs(dict(zip(zsym, zs))), 30)) * float(c) * (-1) ** sum(mu)
        assert evaluate(cauchy_transform(T), zs) == pytest.approx(total, rel=1e-10, abs=1e-12)

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            evaluate(cauchy_transform(delta(2)), 0.5)


class TestTaylor:
    def test_geometric(self):
        F = RationalTransform(1, ((1, ((Fraction(2), 0, 1),)),))
        oracle = series_oracle(1 / (1 - 2 * z), 10)
        assert oracle == [2**n for n in range(11)]
        assert [taylor_coefficients(F, 10)[n] for n in range(11)] == oracle

    def test_derivative_series(self):
        F = RationalTransform(1, ((-1, ((Fraction(1), 1, 2),)),))
        oracle = series_oracle(-z / (1 - z) ** 2, 10)
        assert [taylor_coefficients(F, 10)[n] for n in range(11)] == oracle

    def test_higher_pole_order(self):
        a = Fraction(-2, 3)
        F = RationalTransform(1, ((Fraction(5, 2), ((a, 2, 4),)),))
        oracle = series_oracle(sympy.Rational(5, 2) * z**2 / (1 + sympy.Rational(2, 3) * z) ** 4, 9)
        assert [taylor_coefficients(F, 9)[n] for n in range(10)] == oracle

    def test_singular_at_origin(self):
        F = RationalTransform(1, ((1, ((Fraction(1), -1, 1),)),))
        with pytest.raises(DomainError):
            taylor_coefficients(F, 3)

    @given(distributions(), st.integers(0, 10))
    def test_coefficients_are_moments(self, T, n):
        assert taylor_coefficients(cauchy_transform(T), n) == moment_table(T, n)


class TestLaurent:
    def test_unit(self):
        # K_T(w) = 1/(w - 1) = sum w^-(n+1)
        w = sympy.Symbol("w")
        s = sympy.series(1 / (w - 1), w, sympy.oo, 8).removeO()
        oracle = [s.coeff(w, -(n + 1)) for n in range(7)]
        assert oracle == [1] * 7
        table = laurent_coefficients_at_infinity(cauchy_transform(unit(1)), 6)
        assert [table[n] for n in range(7)] == oracle

    def test_point_mass(self):
        a = Fraction(-5, 3)
        table = laurent_coefficients_at_infinity(cauchy_transform(delta(a)), 8)
        assert [table[n] for n in range(9)] == [a**n for n in range(9)]

    def test_empty(self):
        table = laurent_coefficients_at_infinity(cauchy_transform(zero(2)), 4)
        assert all(v == 0 for v in table.coeffs.values())

    @given(distributions(), st.integers(0, 8))
    def test_equals_taylor_table(self, T, n):
        F = cauchy_transform(T)
        assert laurent_coefficients_at_infinity(F, n) == taylor_coefficients(F, n)

    def test_chart_relation_random_points(self):
        rng = random.Random(7)
        for _ in range(20):
            T = rand_distribution(rng)
            F = cauchy_transform(T)
            w = [complex(rng.uniform(-3, 3), rng.uniform(0.5, 3)) for _ in range(T.dim)]
            direct = cauchy_kernel_value(T, w)
            via = evaluate_at_infinity_chart(F, w)
            assert abs(direct - via) <= 1e-10 * max(1.0, abs(direct))

    def test_laurent_series_converges_to_kernel(self):
        T = make_distribution([(Fraction(1, 2), 1, 3), (Fraction(-1, 3), 0, 2)])
        table = laurent_coefficients_at_infinity(cauchy_transform(T), 60)
        w = 2.5 + 1j
        series = sum(complex(table[n]) / w ** (n + 1) for n in range(61))
        assert series == pytest.approx(cauchy_kernel_value(T, [w]), rel=1e-12)


class TestHadamardProduct:
    def test_star_tables(self):
        T = delta(2, 1) + delta(Fraction(1, 3))
        S = 3 * delta(5, 2)
        assert hadamard_product(moment_table(T, 6), moment_table(S, 6)) == moment_table(star(T, S), 6)

    def test_unit_table(self):
        A = moment_table(delta((2, 3), (1, 0)), 4)
        assert hadamard_product(A, moment_table(unit(2), 4)) == A

    def test_powers(self):
        A = SeriesTable(1, (7,), {(n,): 2**n for n in range(8)})
        B = SeriesTable(1, (7,), {(n,): 3**n for n in range(8)})
        assert hadamard_product(A, B) == moment_table(delta(6), 7)

    def test_degree_is_minimum(self):
        A = moment_table(delta((2, 2)), (3, 5))
        B = moment_table(delta((2, 2)), (4, 2))
        assert hadamard_product(A, B).max_degree == (3, 2)

    @given(distributions(), distributions())
    def test_isomorphism(self, T, S):
        if T.dim != S.dim:
            return
        n = 5
        lhs = taylor_coefficients(cauchy_transform(star(T, S)), n)
        rhs = hadamard_product(taylor_coefficients(cauchy_transform(T), n),
                               taylor_coefficients(cauchy_transform(S), n))
        assert lhs == rhs


class TestCharFunction:
    def test_point_mass(self):
        a = Fraction(7, 3)
        zv = 0.8 - 0.3j
        assert char_function(delta(a), zv) == pytest.approx(cmath.exp(-1j * zv * math.log(7 / 3)))

    def test_unit(self):
        assert char_function(unit(2), (1.5 + 2j, -3)) == pytest.approx(1)

    @pytest.mark.parametrize("n", range(9))
    def test_derivative_at_one(self, n):
        assert char_function(delta(1, 1), 1j * n) == pytest.approx(-n, abs=1e-12)

    def test_against_symbolic_derivative(self):
        T = make_distribution([(Fraction(3, 2), 2, Fraction(1, 3)), (2, 1, -2)])
        zv = 0.7 + 0.2j
        xs = sympy.Symbol("x", positive=True)
        expr = xs ** (-sympy.I * sympy.nsimplify(zv))
        total = 0
        for (p, mu), c in T.terms.items():
            d = sympy.diff(expr, xs, mu[0]).subs(xs, sympy.Rational(p[0].numerator, p[0].denominator))
            total += complex(sympy.N(d, 30)) * float(c) * (-1) ** mu[0]
        assert char_function(T, zv) == pytest.approx(total, rel=1e-12)

    def test_rejects_non_positive_support(self):
        with pytest.raises(DomainError):
            char_function(delta(-1), 0.5)
        with pytest.raises(DomainError):
            char_function(delta((1, 0)), (0.5, 0.5))

    @given(distributions(positive=True), st.data())
    def test_eigenvalue_identity(self, T, data):
        alpha = data.draw(st.tuples(*[st.integers(0, 8)] * T.dim))
        m = moment(T, alpha)
        value = char_function(T, tuple(1j * a for a in alpha))
        assert abs(value - float(m)) <= 1e-10 * (1 + abs(float(m)))
