"""Cauchy transforms, coefficient tables and the characteristic function.

For a point distribution ``T`` the Cauchy transform

    C_T(z) = T_xi( prod_j 1 / (1 - xi_j z_j) )

is a finite sum of terms ``coef * prod_j z_j^m_j / (1 - a_j z_j)^n_j``; its
Taylor coefficients at the origin are the multipliers ``m_alpha`` of ``T``.
The companion transform at infinity,

    K_T(w) = T_xi( prod_j 1 / (w_j - xi_j) ),

satisfies ``C_T(z) = K_T(1/z) / (z_1 ... z_d)``.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .dist import PointDistribution, falling, moment
from .errors import DimensionError, DomainError


def _degrees(max_degree, dim: int) -> tuple:
    if isinstance(max_degree, int):
        return (max_degree,) * dim
    max_degree = tuple(int(n) for n in max_degree)
    if len(max_degree) != dim:
        raise DimensionError("max_degree has wrong length")
    return max_degree


@dataclass(frozen=True)
class SeriesTable:
    """Dense table of coefficients for all ``alpha <= max_degree`` componentwise."""

    dim: int
    max_degree: tuple
    coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        max_degree = _degrees(self.max_degree, self.dim)
        object.__setattr__(self, "max_degree", max_degree)
        full = {}
        for alpha in itertools.product(*(range(n + 1) for n in max_degree)):
            full[alpha] = Fraction(self.coeffs.get(alpha, 0))
        object.__setattr__(self, "coeffs", full)

    def __getitem__(self, alpha):
        if isinstance(alpha, int):
            alpha = (alpha,)
        return self.coeffs[tuple(alpha)]

    def indices(self):
        return list(self.coeffs)

    def truncate(self, max_degree) -> "SeriesTable":
        max_degree = _degrees(max_degree, self.dim)
        return SeriesTable(self.dim, max_degree,
                           {a: c for a, c in self.coeffs.items()
                            if all(x <= n for x, n in zip(a, max_degree))})


def moment_table(T: PointDistribution, max_degree) -> SeriesTable:
    """Multiplier sequence ``m_alpha`` of ``T`` up to ``max_degree``."""
    degs = _degrees(max_degree, T.dim)
    return SeriesTable(T.dim, degs,
                       {a: moment(T, a)
                        for a in itertools.product(*(range(n + 1) for n in degs))})


def hadamard_product(A: SeriesTable, B: SeriesTable) -> SeriesTable:
    """Coefficientwise product, truncated to the smaller degree bound."""
    if A.dim != B.dim:
        raise DimensionError("dimension mismatch")
    degs = tuple(min(x, y) for x, y in zip(A.max_degree, B.max_degree))
    return SeriesTable(A.dim, degs,
                       {a: A.coeffs[a] * B.coeffs[a]
                        for a in itertools.product(*(range(n + 1) for n in degs))})


# ---------------------------------------------------------------------------
# rational transforms

Factor = tuple  # (pole a: Fraction, num_power m: int, den_power n: int)


@dataclass(frozen=True)
class RationalTransform:
    """Sum of ``coef * prod_j z_j^m_j / (1 - a_j z_j)^n_j``."""

    dim: int
    terms: tuple = ()

    def __post_init__(self):
        terms = []
        for coef, factors in self.terms:
            factors = tuple((Fraction(a), int(m), int(n)) for a, m, n in factors)
            if len(factors) != self.dim:
                raise DimensionError("factor count does not match dimension")
            if any(n < 0 for _, _, n in factors):
                raise ValueError("denominator powers must be non-negative")
            if coef != 0:
                terms.append((Fraction(coef), factors))
        object.__setattr__(self, "terms", tuple(terms))

    def __call__(self, z) -> complex:
        return evaluate(self, z)


def cauchy_transform(T: PointDistribution) -> RationalTransform:
    """Closed form of ``C_T`` using ``d_xi^m (1 - xi z)^-1 = m! z^m (1 - xi z)^-(m+1)``."""
    terms = []
    for (a, mu), c in T.terms.items():
        coef = c * (-1) ** sum(mu) * math.prod(math.factorial(m) for m in mu)
        terms.append((coef, tuple((aj, m, m + 1) for aj, m in zip(a, mu))))
    return RationalTransform(T.dim, tuple(terms))


def _as_complex_vector(z, dim: int) -> tuple:
    if isinstance(z, (int, float, complex, Fraction)):
        z = (z,)
    z = tuple(complex(v) for v in z)
    if len(z) != dim:
        raise DimensionError("evaluation point has wrong dimension")
    return z


def evaluate(F: RationalTransform, z) -> complex:
    """Evaluate ``F`` at a complex point off the poles ``a_j z_j = 1``."""
    z = _as_complex_vector(z, F.dim)
    total = 0j
    for coef, factors in F.terms:
        term = complex(coef)
        for (a, m, n), zj in zip(factors, z):
            den = 1 - float(a) * zj
            if den == 0:
                raise DomainError(f"z={z} lies on a pole of the transform")
            term *= zj**m / den**n
        total += term
    return total


def evaluate_at_infinity_chart(F: RationalTransform, w) -> complex:
    """``K(w) = F(1/w) / (w_1 ... w_d)``, the transform in the chart at infinity."""
    w = _as_complex_vector(w, F.dim)
    if any(v == 0 for v in w):
        raise DomainError("coordinates must be nonzero")
    return evaluate(F, tuple(1 / v for v in w)) / math.prod(w)


def cauchy_kernel_value(T: PointDistribution, w) -> complex:
    """``T_xi(prod_j 1/(w_j - xi_j))`` computed directly from ``T``.

    Uses ``d_xi^m (w - xi)^-1 = m! (w - xi)^-(m+1)``.
    """
    w = _as_complex_vector(w, T.dim)
    total = 0j
    for (a, mu), c in T.terms.items():
        term = complex(c) * (-1) ** sum(mu)
        for aj, m, wj in zip(a, mu, w):
            diff = wj - float(aj)
            if diff == 0:
                raise DomainError("evaluation point meets the support")
            term *= math.factorial(m) / diff ** (m + 1)
        total += term
    return total


def _geometric_coeff(a: Fraction, m: int, n: int, k: int) -> Fraction:
    """Coefficient of z^k in z^m / (1 - a z)^n."""
    if k < m:
        return Fraction(0)
    j = k - m
    if n == 0:
        return Fraction(1) if j == 0 else Fraction(0)
    return math.comb(j + n - 1, n - 1) * a**j


def taylor_coefficients(F: RationalTransform, max_degree) -> SeriesTable:
    """Exact Taylor coefficients of ``F`` at ``z = 0``."""
    degs = _degrees(max_degree, F.dim)
    for _, factors in F.terms:
        if any(m < 0 for _, m, _ in factors):
            raise DomainError("transform is singular at the origin")
    out = {}
    for alpha in itertools.product(*(range(n + 1) for n in degs)):
        total = Fraction(0)
        for coef, factors in F.terms:
            term = coef
            for (a, m, n), k in zip(factors, alpha):
                term *= _geometric_coeff(a, m, n, k)
                if not term:
                    break
            total += term
        out[alpha] = total
    return SeriesTable(F.dim, degs, out)


def _laurent_factor(a: Fraction, m: int, n: int, k: int) -> Fraction:
    """Coefficient of ``w^-(k+1)`` in ``w^-1 * (z^m/(1 - a z)^n)|_{z=1/w}``.

    After substitution the factor reads ``w^(n-m-1) / (w - a)^n`` and
    ``(w - a)^-n = sum_i C(n+i-1, i) a^i w^-(n+i)`` near infinity.
    """
    if n == 0:
        # w^(-m-1): a single power
        return Fraction(1) if k == m else Fraction(0)
    i = k + 1 + (n - m - 1) - n
    if i < 0:
        return Fraction(0)
    return math.comb(n + i - 1, i) * a**i


def laurent_coefficients_at_infinity(F: RationalTransform, max_degree) -> SeriesTable:
    """Coefficients of ``1/w^(alpha+1)`` of ``K(w) = F(1/w)/(w_1...w_d)`` at infinity."""
    degs = _degrees(max_degree, F.dim)
    for _, factors in F.terms:
        if any(m < 0 for _, m, _ in factors):
            raise DomainError("transform is singular at the origin")
    out = {}
    for alpha in itertools.product(*(range(n + 1) for n in degs)):
        total = Fraction(0)
        for coef, factors in F.terms:
            term = coef
            for (a, m, n), k in zip(factors, alpha):
                term *= _laurent_factor(a, m, n, k)
                if not term:
                    break
            total += term
        out[alpha] = total
    return SeriesTable(F.dim, degs, out)


# ---------------------------------------------------------------------------
# characteristic function

def _check_positive_support(T: PointDistribution):
    for point in T.support():
        if any(c <= 0 for c in point):
            raise DomainError(f"support point {point} is not in the open positive orthant")


def char_function(T: PointDistribution, z) -> complex:
    """``T_x(x^(-i z))`` using ``d^m x^s = s(s-1)...(s-m+1) x^(s-m)``."""
    _check_positive_support(T)
    z = _as_complex_vector(z, T.dim)
    s = tuple(-1j * v for v in z)
    total = 0j
    for (a, mu), c in T.terms.items():
        term = complex(c) * (-1) ** sum(mu)
        for aj, m, sj in zip(a, mu, s):
            term *= falling(sj, m) * cmath.exp((sj - m) * math.log(aj))
        total += term
    return total


def char_values(T: PointDistribution, y: np.ndarray) -> np.ndarray:
    """Vectorized ``char_function`` at the rows of ``y`` (shape ``(..., d)``)."""
    _check_positive_support(T)
    y = np.asarray(y, dtype=complex)
    if y.shape[-1] != T.dim:
        raise DimensionError("sample points have wrong dimension")
    s = -1j * y
    total = np.zeros(y.shape[:-1], dtype=complex)
    for (a, mu), c in T.terms.items():
        term = np.full(y.shape[:-1], complex(c) * (-1) ** sum(mu))
        for j, (aj, m) in enumerate(zip(a, mu)):
            sj = s[..., j]
            ff = np.ones_like(sj)
            for i in range(m):
                ff = ff * (sj - i)
            term = term * ff * np.exp((sj - m) * math.log(aj))
        total += term
    return total
