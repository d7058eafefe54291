"""Multiplicative convolution and the Hadamard operators it induces.

``(T * S) f = T_x(S_y f(xy))``.  Because ``f(xy)`` separates coordinatewise,
each pair of terms is expanded with a one-variable chain/Leibniz table and the
tables are tensored.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .dist import (
    MAX_ORDER,
    JetFunction,
    PointDistribution,
    Polynomial,
    falling,
    moment,
)
from .errors import DimensionError, JetOrderError, OrderCapError


@lru_cache(maxsize=None)
def _pair_table(m: int, n: int) -> tuple:
    """Expansion of ``d_x^m d_y^n [g(xy)]`` in 1-D.

    Returns ``(i, weight, pow_a, pow_b, k)`` rows meaning
    ``weight * x^pow_a * y^pow_b * g^(k)(xy)``.
    """
    rows = []
    for i in range(min(m, n) + 1):
        rows.append((i, math.comb(m, i) * falling(n, i), n - i, m - i, n + m - i))
    return tuple(rows)


def _star_1d(a: Fraction, m: int, b: Fraction, n: int) -> list[tuple[int, Fraction]]:
    """``delta_a^(m) * delta_b^(n)`` as a list of ``(k, coef)`` at point ``ab``."""
    out = []
    for _, w, pa, pb, k in _pair_table(m, n):
        # sign: (-1)^(m+n) from the factors, (-1)^k absorbed into delta^(k)
        sign = -1 if (m + n - k) % 2 else 1
        out.append((k, sign * w * a**pa * b**pb))
    return out


def star(T: PointDistribution, S: PointDistribution,
         max_order: int = MAX_ORDER) -> PointDistribution:
    """Multiplicative convolution ``T * S``, exact."""
    if T.dim != S.dim:
        raise DimensionError(f"dimension mismatch: {T.dim} vs {S.dim}")
    if T.order + S.order > max_order and not (T.is_zero or S.is_zero):
        raise OrderCapError(f"order {T.order + S.order} exceeds cap {max_order}")
    acc: dict = {}
    for (a, mu), s in T.terms.items():
        for (b, nu), t in S.terms.items():
            point = tuple(x * y for x, y in zip(a, b))
            factors = [_star_1d(aj, mj, bj, nj) for aj, mj, bj, nj in zip(a, mu, b, nu)]
            for combo in itertools.product(*factors):
                key = (point, tuple(k for k, _ in combo))
                acc[key] = acc.get(key, 0) + s * t * math.prod(c for _, c in combo)
    return PointDistribution(T.dim, acc)


def unit(dim: int) -> PointDistribution:
    """The unit element ``delta_(1,...,1)``."""
    return PointDistribution(dim, {((Fraction(1),) * dim, (0,) * dim): Fraction(1)})


def support(T: PointDistribution) -> list:
    """Sorted list of support points (exact rationals)."""
    return T.support()


def hadamard_apply(T: PointDistribution, p: Polynomial) -> Polynomial:
    """``M_T p``: every monomial is an eigenvector with eigenvalue ``m_alpha``."""
    if T.dim != p.dim:
        raise DimensionError(f"dimension mismatch: {T.dim} vs {p.dim}")
    return Polynomial(p.dim, {a: c * moment(T, a) for a, c in p.coeffs.items()})


def hadamard_apply_pointwise(T: PointDistribution, f: JetFunction, x) -> float:
    """``(M_T f)(x) = T_y f(xy)``, using ``d_y^mu f(xy) = x^mu (d^mu f)(xy)``."""
    x = tuple(float(c) for c in (x if isinstance(x, (tuple, list)) else (x,)))
    if T.dim != f.dim or len(x) != T.dim:
        raise DimensionError("dimension mismatch")
    if T.order > f.max_order:
        raise JetOrderError(f"distribution order {T.order} exceeds jet order {f.max_order}")
    vals = []
    for (a, mu), c in T.terms.items():
        arg = tuple(xi * float(ai) for xi, ai in zip(x, a))
        scale = math.prod(xi**m for xi, m in zip(x, mu))
        vals.append(float(c) * (-1) ** sum(mu) * scale * f(arg, mu))
    return math.fsum(vals)
