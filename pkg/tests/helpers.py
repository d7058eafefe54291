"""Random generators and independent oracles shared by the tests."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from multconv import EulerOperator, PointDistribution, Polynomial, make_distribution

# ---------------------------------------------------------------------------
# seeded generators (acceptance corpus)


def rand_rational(rng: random.Random, lo=-5, hi=5, den=4, nonzero=False) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))
        if v or not nonzero:
            return v


def rand_point(rng, dim, positive=False):
    if positive:
        return tuple(Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(dim))
    return tuple(rand_rational(rng, -3, 3, 3) for _ in range(dim))


def rand_distribution(rng, dim=None, max_points=3, max_order=3, positive=False) -> PointDistribution:
    dim = dim or rng.randint(1, 2)
    terms = []
    for _ in range(rng.randint(1, max_points)):
        p = rand_point(rng, dim, positive)
        for _ in range(rng.randint(1, 2)):
            mu = [0] * dim
            for _ in range(rng.randint(0, max_order)):
                mu[rng.randrange(dim)] += 1
            terms.append((p, tuple(mu), rand_rational(rng, nonzero=True)))
    return make_distribution(terms, dim=dim)


def rand_polynomial(rng, dim, degree) -> Polynomial:
    coeffs = {}
    for alpha in itertools.product(range(degree + 1), repeat=dim):
        if sum(alpha) <= degree and rng.random() < 0.6:
            coeffs[alpha] = rand_rational(rng)
    return Polynomial(dim, coeffs)


def rand_euler(rng, dim, degree) -> EulerOperator:
    coeffs = {}
    for alpha in itertools.product(range(degree + 1), repeat=dim):
        if sum(alpha) <= degree and rng.random() < 0.7:
            coeffs[alpha] = rand_rational(rng)
    return EulerOperator(dim, coeffs)


# ---------------------------------------------------------------------------
# hypothesis strategies

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
nonzero_rationals = rationals.filter(lambda q: q != 0)
positive_rationals = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=5).filter(
    lambda q: q > 0)


@st.composite
def distributions(draw, dim=None, positive=False, max_points=3, max_order=3):
    dim = dim or draw(st.integers(1, 2))
    coord = positive_rationals if positive else rationals
    points = draw(st.lists(st.tuples(*[coord] * dim), min_size=1, max_size=max_points))
    terms = []
    for p in points:
        mu = draw(st.tuples(*[st.integers(0, max_order)] * dim).filter(lambda m: sum(m) <= max_order))
        terms.append((p, mu, draw(nonzero_rationals)))
    return make_distribution(terms, dim=dim)


@st.composite
def polynomials(draw, dim, max_degree=5):
    alphas = draw(st.lists(st.tuples(*[st.integers(0, max_degree)] * dim), max_size=5))
    return Polynomial(dim, {a: draw(rationals) for a in alphas})


@st.composite
def euler_operators(draw, dim=1, max_degree=6):
    alphas = draw(st.lists(st.tuples(*[st.integers(0, max_degree)] * dim).filter(
        lambda a: sum(a) <= max_degree), max_size=6))
    return EulerOperator(dim, {a: draw(rationals) for a in alphas})


# ---------------------------------------------------------------------------
# symbolic oracles (sympy), independent of the package's closed forms

def sympy_apply(T: PointDistribution, expr, symbols):
    """``T(expr)`` by symbolic differentiation and substitution."""
    total = sympy.Integer(0)
    for (point, mu), c in T.terms.items():
        d = expr
        for s, m in zip(symbols, mu):
            if m:
                d = sympy.diff(d, s, m)
        d = d.subs({s: sympy.Rational(p.numerator, p.denominator) for s, p in zip(symbols, point)})
        total += sympy.Rational(c.numerator, c.denominator) * (-1) ** sum(mu) * d
    return sympy.simplify(total)


def sympy_star_apply(T: PointDistribution, S: PointDistribution, expr, xs, ys, zs):
    """``T_x(S_y f(xy))`` straight from the definition."""
    composed = expr.subs({z: x * y for z, x, y in zip(zs, xs, ys)}, simultaneous=True)
    inner_total = sympy.Integer(0)
    for (point, mu), c in S.terms.items():
        d = composed
        for y, m in zip(ys, mu):
            if m:
                d = sympy.diff(d, y, m)
        d = d.subs({y: sympy.Rational(p.numerator, p.denominator) for y, p in zip(ys, point)})
        inner_total += sympy.Rational(c.numerator, c.denominator) * (-1) ** sum(mu) * d
    return sympy_apply(T, inner_total, xs)


def to_sympy_poly(p: Polynomial, symbols):
    return sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.Mul(*[s**a for s, a in zip(symbols, alpha)])
                for alpha, c in p.coeffs.items()), sympy.Integer(0))


# ---------------------------------------------------------------------------
# brute-force dilation-set oracle: V(I, J) = intersection over x in I of (1/x) J

def sample_interval(I, n=10_000):
    """Float samples of an open interval, dense near both ends and far out on unbounded sides."""
    import math

    import numpy as np

    k = n // 4
    tails = 10.0 ** -np.linspace(0, 13, k)
    lo, hi = I.lo, I.hi
    if math.isinf(lo) and math.isinf(hi):
        mags = 10.0 ** np.linspace(-13, 13, n // 2)
        out = np.concatenate([mags, -mags, [0.0]])
    elif math.isinf(lo):
        out = float(hi) - np.concatenate([tails, 10.0 ** np.linspace(0, 13, n - k)])
    elif math.isinf(hi):
        out = float(lo) + np.concatenate([tails, 10.0 ** np.linspace(0, 13, n - k)])
    else:
        w = float(hi - lo)
        u = np.concatenate([tails, 1 - tails, np.linspace(0, 1, n - 2 * k)[1:-1]])
        out = float(lo) + w * u
    if lo < 0 < hi:
        out = np.append(out, 0.0)
    return out[(out > float(lo)) & (out < float(hi))]


def v_interval_oracle(I, J, n=10_000):
    """(lo, hi) of the sampled intersection; lo > hi means empty."""
    import numpy as np

    x = sample_interval(I, n)
    jl, jh = float(J.lo), float(J.hi)
    if np.any(x == 0.0) and not (0 in J):
        return np.inf, -np.inf
    x = x[x != 0.0]
    with np.errstate(invalid="ignore"):
        a, b = jl / x, jh / x
    lo = np.max(np.where(x > 0, a, b))
    hi = np.min(np.where(x > 0, b, a))
    return lo, hi


def rand_open_interval(rng):
    import math

    from multconv import Interval

    def end():
        return None if rng.random() < 0.2 else Fraction(rng.randint(-16, 16), 4)

    a, b = end(), end()
    lo = -math.inf if a is None else a
    hi = math.inf if b is None else b
    if lo != -math.inf and hi != math.inf:
        lo, hi = min(lo, hi), max(lo, hi)
        if lo == hi:
            hi = lo + 1
    return Interval.open(lo, hi)


def rand_interval(rng):
    import math

    from multconv import Interval

    I = rand_open_interval(rng)
    return Interval(I.lo, I.hi, rng.random() < 0.5 and not math.isinf(I.lo),
                    rng.random() < 0.5 and not math.isinf(I.hi))


def agrees_with_oracle(exact, lo, hi, tol=1e-9):
    import math

    if exact.is_empty:
        # samples cannot reach x = 0, so an empty answer shows up as a remnant pushed to |eta| ~ 1/x
        return hi - lo <= tol or min(abs(lo), abs(hi)) >= 1 / tol
    if lo > hi + tol:
        return False

    def close(e, o):
        if math.isinf(e):
            return o == e
        return abs(float(e) - o) <= tol * max(1.0, abs(float(e)))

    return close(exact.lo, lo) and close(exact.hi, hi)


def same_points(a, b, rtol=1e-12, atol=0.0):
    """Equal as finite sets up to tolerance (order free)."""
    import numpy as np

    a, b = np.atleast_2d(a), np.atleast_2d(b)
    if len(a) != len(b):
        return False
    return all(np.any(np.all(np.isclose(p, b, rtol=rtol, atol=atol), axis=1)) for p in a) and all(
        np.any(np.all(np.isclose(q, a, rtol=rtol, atol=atol), axis=1)) for q in b)
