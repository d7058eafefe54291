import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import distributions, polynomials, sympy_apply, to_sympy_poly
from multconv import (
    DimensionError,
    JetFunction,
    JetOrderError,
    OrderCapError,
    Polynomial,
    apply_to_jet,
    apply_to_polynomial,
    delta,
    equals,
    make_distribution,
    moment,
    star,
    zero,
)
from multconv.dist import exp_jet, log_jet

x = sympy.Symbol("x")


class TestMakeDistribution:
    def test_cancellation(self):
        T = make_distribution([(2, 0, 1), (2, 0, -1)])
        assert T.is_zero
        assert T == zero(1)

    def test_unit(self):
        T = make_distribution([(1, 0, 1)])
        assert T.terms == {((Fraction(1),), (0,)): Fraction(1)}

    def test_merge(self):
        T = make_distribution([(3, 1, Fraction(1, 2)), (3, 1, Fraction(1, 2))])
        assert T.terms == {((Fraction(3),), (1,)): Fraction(1)}

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            make_distribution([((1, 2), (0, 0), 1), (1, 0, 1)])
        with pytest.raises(DimensionError):
            make_distribution([((1, 2), (0,), 1)])

    def test_order_cap(self):
        with pytest.raises(OrderCapError):
            make_distribution([(1, 33, 1)])
        make_distribution([(1, 32, 1)])

    def test_accepts_strings_and_floats(self):
        T = make_distribution([("3/4", 0, "1/2"), (0.5, 1, 2)])
        assert set(T.support()) == {(Fraction(3, 4),), (Fraction(1, 2),)}

    @given(distributions())
    def test_canonicalization_idempotent(self, T):
        again = make_distribution([(p, mu, c) for (p, mu), c in T.terms.items()], dim=T.dim)
        assert again == T
        assert all(c != 0 for c in T.terms.values())


class TestApplyToPolynomial:
    def test_point_evaluation(self):
        a = Fraction(3, 2)
        assert apply_to_polynomial(delta(a), Polynomial.monomial((4,))) == a**4
        assert apply_to_polynomial(delta((2, 3)), Polynomial.monomial((2, 1))) == 12

    @pytest.mark.parametrize("n", range(7))
    def test_derivative_at_one(self, n):
        # oracle: -(x^n)'|_{x=1} by sympy
        expected = -sympy.diff(x**n, x).subs(x, 1)
        assert expected == -n
        assert apply_to_polynomial(delta(1, 1), Polynomial.monomial((n,))) == expected

    def test_empty(self):
        assert apply_to_polynomial(zero(2), Polynomial.monomial((3, 1), 7)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply_to_polynomial(delta(1), Polynomial.monomial((1, 1)))

    @settings(max_examples=60)
    @given(distributions(dim=1), polynomials(1))
    def test_matches_symbolic_oracle(self, T, p):
        assert apply_to_polynomial(T, p) == sympy_apply(T, to_sympy_poly(p, [x]), [x])

    @given(distributions(dim=2), distributions(dim=2), polynomials(2), polynomials(2),
           st.fractions(max_denominator=5), st.fractions(max_denominator=5))
    def test_linearity(self, T, S, p, q, a, b):
        lhs = apply_to_polynomial(a * T + b * S, p)
        assert lhs == a * apply_to_polynomial(T, p) + b * apply_to_polynomial(S, p)
        assert apply_to_polynomial(T, a * p + b * q) == (
            a * apply_to_polynomial(T, p) + b * apply_to_polynomial(T, q))


class TestApplyToJet:
    def test_log_at_e(self):
        assert apply_to_jet(delta(Fraction(math.e)), log_jet()) == pytest.approx(1.0, rel=1e-15)

    def test_derivative_of_exp(self):
        value = apply_to_jet(delta(1, 1), exp_jet())
        h = 1e-5
        fd = -(math.exp(1 + h) - math.exp(1 - h)) / (2 * h)
        assert value == pytest.approx(-math.e, rel=1e-15)
        assert value == pytest.approx(fd, rel=1e-8)

    def test_point_value(self):
        f = JetFunction.from_sympy(sympy.sin(x) + x**2, [x])
        assert apply_to_jet(delta(1), f) == pytest.approx(math.sin(1) + 1)

    def test_insufficient_order(self):
        f = JetFunction.from_derivatives([math.exp, math.exp])
        with pytest.raises(JetOrderError):
            apply_to_jet(delta(1, 2), f)

    @given(distributions(), st.data())
    def test_consistent_with_polynomial(self, T, data):
        p = data.draw(polynomials(T.dim))
        exact = apply_to_polynomial(T, p)
        approx = apply_to_jet(T, JetFunction.from_polynomial(p))
        assert abs(approx - float(exact)) <= 1e-10 * (1 + abs(float(exact)))


class TestMoment:
    def test_delta(self):
        assert moment(delta((2, 3)), (3, 2)) == 72

    @pytest.mark.parametrize("n", range(8))
    def test_derivative(self, n):
        assert moment(delta(1, 1), n) == -n

    def test_unit_moments(self):
        assert all(moment(delta((1, 1)), (i, j)) == 1 for i in range(5) for j in range(5))

    def test_zero_coordinate_support(self):
        # x^0 at 0 is 1
        assert moment(delta(0), 0) == 1
        assert moment(delta(0), 3) == 0
        assert moment(delta(0, 2), 2) == 2

    @given(distributions(), st.data())
    def test_equals_monomial_action(self, T, data):
        alpha = data.draw(st.tuples(*[st.integers(0, 6)] * T.dim))
        assert moment(T, alpha) == apply_to_polynomial(T, Polynomial.monomial(alpha))


class TestEquals:
    def test_basic(self):
        assert equals(delta(1), delta(1))
        assert not equals(delta(1), delta(2))

    def test_square_of_theta_distribution(self):
        lhs = star(delta(1, 1), delta(1, 1))
        rhs = -delta(1, 1) + delta(1, 2)
        # moment oracle: both sides have m_n = n^2
        assert all(moment(lhs, n) == n * n == moment(rhs, n) for n in range(12))
        assert equals(lhs, rhs)

    @given(distributions(positive=True), distributions(positive=True))
    def test_moment_equality_matches_canonical_equality(self, T, S):
        if T.dim != S.dim:
            return
        # T - S has at most 6 points and orders <= 3 per coordinate, so its moment
        # sequence in each coordinate is an exponential polynomial of total
        # multiplicity <= 24: vanishing on 0..23 forces it to vanish identically
        import itertools

        same = all(moment(T, a) == moment(S, a)
                   for a in itertools.product(range(24), repeat=T.dim))
        assert same == equals(T, S)
