"""Euler operators ``P(theta)`` with ``theta_j = x_j d_j``.

Three equivalent descriptions are kept in sync exactly:

* theta form      ``sum c_alpha theta^alpha``
* x-d form        ``sum b_beta x^beta d^beta``
* distribution    ``sum t_beta delta_1^(beta)`` supported at ``(1,...,1)``

Conversions go through Stirling numbers: ``theta^n = sum_k S(n,k) x^k d^k``
and ``x^k d^k = theta (theta-1) ... (theta-k+1) = sum_j s(k,j) theta^j``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .dist import (
    MAX_ORDER,
    PointDistribution,
    Polynomial,
    as_fraction,
    as_multi_index,
)
from .errors import DimensionError, DomainError, OrderCapError


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, ``S(n,k)``."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind, ``s(n,k)``."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


def _tensor_convert(coeffs: Mapping, table) -> dict:
    """Apply a per-coordinate triangular change of basis ``table(n, k)``."""
    out: dict = {}
    for alpha, c in coeffs.items():
        ranges = [range(a + 1) for a in alpha]
        for beta in itertools.product(*ranges):
            w = math.prod(table(a, b) for a, b in zip(alpha, beta))
            if w:
                out[beta] = out.get(beta, 0) + c * w
    return {k: v for k, v in sorted(out.items()) if v != 0}


@dataclass(frozen=True)
class EulerOperator:
    """Polynomial in ``theta`` with exact rational coefficients."""

    dim: int
    theta_coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("dimension must be positive")
        clean: dict = {}
        for alpha, c in self.theta_coeffs.items():
            alpha = as_multi_index(alpha, self.dim)
            clean[alpha] = clean.get(alpha, 0) + as_fraction(c)
        object.__setattr__(self, "theta_coeffs",
                           {a: c for a, c in sorted(clean.items()) if c != 0})

    @classmethod
    def from_coefficients(cls, coeffs) -> "EulerOperator":
        """1-D shortcut: ``coeffs[k]`` multiplies ``theta^k``."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.theta_coeffs), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.theta_coeffs

    def __add__(self, other):
        if not isinstance(other, EulerOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        acc = dict(self.theta_coeffs)
        for a, c in other.theta_coeffs.items():
            acc[a] = acc.get(a, 0) + c
        return EulerOperator(self.dim, acc)

    def __mul__(self, other):
        if isinstance(other, EulerOperator):
            if other.dim != self.dim:
                raise DimensionError("dimension mismatch")
            acc: dict = {}
            for a, c in self.theta_coeffs.items():
                for b, d in other.theta_coeffs.items():
                    k = tuple(x + y for x, y in zip(a, b))
                    acc[k] = acc.get(k, 0) + c * d
            return EulerOperator(self.dim, acc)
        s = as_fraction(other)
        return EulerOperator(self.dim, {a: s * c for a, c in self.theta_coeffs.items()})

    __rmul__ = __mul__

    # conversions --------------------------------------------------------
    def to_xd_form(self) -> dict:
        return to_xd_form(self)

    def to_distribution(self) -> PointDistribution:
        return to_distribution(self)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)


def to_xd_form(P: EulerOperator) -> dict:
    """Coefficients ``b_beta`` with ``P(theta) = sum b_beta x^beta d^beta``."""
    return _tensor_convert(P.theta_coeffs, stirling2)


def from_xd_form(b: Mapping, dim: int | None = None) -> EulerOperator:
    """Inverse of :func:`to_xd_form`."""
    b = {as_multi_index(k): as_fraction(v) for k, v in b.items()}
    if dim is None:
        if not b:
            raise DimensionError("cannot infer dimension of an empty operator")
        dim = len(next(iter(b)))
    return EulerOperator(dim, _tensor_convert(b, stirling1))


def to_distribution(P: EulerOperator) -> PointDistribution:
    """The distribution ``T`` at ``(1,...,1)`` with ``M_T = P(theta)``.

    Uses ``M_{delta_1^(beta)} = (-1)^|beta| x^beta d^beta``.
    """
    one = (Fraction(1),) * P.dim
    return PointDistribution(
        P.dim, {(one, beta): (-1) ** sum(beta) * c for beta, c in to_xd_form(P).items()})


def from_distribution(T: PointDistribution) -> EulerOperator:
    """Inverse of :func:`to_distribution`; ``T`` must live at ``(1,...,1)``."""
    one = (Fraction(1),) * T.dim
    if any(point != one for point, _ in T.terms):
        raise DomainError("Euler operators come from distributions supported at (1,...,1)")
    b = {mu: (-1) ** sum(mu) * c for (_, mu), c in T.terms.items()}
    return EulerOperator(T.dim, _tensor_convert(b, stirling1))


def symbol(P: EulerOperator, z) -> complex:
    """Evaluate ``P(z) = sum c_alpha z^alpha`` at a complex (or real) vector."""
    if isinstance(z, (int, float, complex, Fraction)):
        z = (z,)
    if len(z) != P.dim:
        raise DimensionError("symbol argument has wrong dimension")
    exact = all(isinstance(v, (int, Fraction)) for v in z)
    total = Fraction(0) if exact else 0j
    for alpha, c in P.theta_coeffs.items():
        term = c if exact else complex(c)
        for zj, aj in zip(z, alpha):
            term = term * zj**aj
        total += term
    return total


def apply(P: EulerOperator, p: Polynomial) -> Polynomial:
    """``P(theta) x^alpha = P(alpha) x^alpha``, extended linearly."""
    if P.dim != p.dim:
        raise DimensionError("dimension mismatch")
    return Polynomial(p.dim, {a: c * symbol(P, a) for a, c in p.coeffs.items()})


def _theta_star(T: PointDistribution, j: int, max_order: int) -> PointDistribution:
    # theta_j^* delta_a^(m) = -a_j delta_a^(m + e_j) + m_j delta_a^(m)
    acc: dict = {}
    for (a, mu), c in T.terms.items():
        up = mu[:j] + (mu[j] + 1,) + mu[j + 1:]
        if sum(up) > max_order:
            raise OrderCapError(f"order {sum(up)} exceeds cap {max_order}")
        acc[(a, up)] = acc.get((a, up), 0) - a[j] * c
        acc[(a, mu)] = acc.get((a, mu), 0) + mu[j] * c
    return PointDistribution(T.dim, acc)


def transpose_apply(P: EulerOperator, T: PointDistribution,
                    max_order: int = MAX_ORDER) -> PointDistribution:
    """``P(theta^*) T`` where ``theta_j^* T = -d_j(x_j T)``.

    Characterized by ``(P(theta^*) T)(f) = T(P(theta) f)``.
    """
    if P.dim != T.dim:
        raise DimensionError("dimension mismatch")
    total = PointDistribution(T.dim, {})
    for alpha, c in P.theta_coeffs.items():
        S = T
        for j, a in enumerate(alpha):
            for _ in range(a):
                S = _theta_star(S, j, max_order)
        total = total + c * S
    return total
