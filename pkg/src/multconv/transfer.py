"""Log/Exp transfer between multiplicative and classical convolution.

``log_pushforward`` maps ``T`` on the positive orthant to ``A = (Log)_* T``
defined by ``A(g) = T(g o Log)``; ``exp_pushforward`` is its inverse.  The
jet rules are

    d_x^m [g(log x)](a) = a^-m sum_k s(m,k) g^(k)(log a)
    d_t^k [f(exp t)](s) = sum_j S(k,j) e^(js) f^(j)(e^s)

with signed Stirling numbers ``s`` and second-kind ``S``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .dist import MAX_ORDER, JetFunction, PointDistribution, as_multi_index, moment
from .errors import DimensionError, DomainError, OrderCapError
from .euler import stirling1, stirling2
from .star import star


@dataclass(frozen=True)
class AdditivePointDistribution:
    """Point distribution on R^d with float support points and coefficients.

    Support keys are compared exactly; no fuzzy merging.
    """

    dim: int
    terms: Mapping[tuple, float] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict = {}
        for (point, mu), c in self.terms.items():
            point = tuple(float(x) for x in point)
            mu = as_multi_index(mu, self.dim)
            if len(point) != self.dim:
                raise DimensionError("support point has wrong dimension")
            clean[(point, mu)] = clean.get((point, mu), 0.0) + float(c)
        object.__setattr__(self, "terms",
                           {k: v for k, v in sorted(clean.items()) if v != 0.0})

    @property
    def order(self) -> int:
        return max((sum(mu) for _, mu in self.terms), default=0)

    def support(self) -> list:
        return sorted({p for p, _ in self.terms})

    def __call__(self, g: JetFunction) -> float:
        if g.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return math.fsum(c * (-1) ** sum(mu) * g(p, mu) for (p, mu), c in self.terms.items())

    def exp_moment(self, alpha) -> float:
        """``A(t -> exp(alpha . t))``; equals the multiplier of the Exp image."""
        alpha = as_multi_index(alpha, self.dim)
        vals = []
        for (p, mu), c in self.terms.items():
            v = c * (-1) ** sum(mu)
            for s, a, m in zip(p, alpha, mu):
                v *= a**m * math.exp(a * s)
            vals.append(v)
        return math.fsum(vals)


def log_pushforward(T: PointDistribution) -> AdditivePointDistribution:
    acc: dict = {}
    for (a, mu), c in T.terms.items():
        if any(x <= 0 for x in a):
            raise DomainError(f"support point {a} is not in the open positive orthant")
        point = tuple(math.log(x) for x in a)
        per_coord = []
        for aj, m in zip(a, mu):
            # (-1)^m d^m [g o log](a) rewritten in delta^(k) at log a
            per_coord.append([(k, (-1) ** (m + k) * stirling1(m, k) / aj**m)
                              for k in range(m + 1) if stirling1(m, k)])
        for combo in itertools.product(*per_coord):
            key = (point, tuple(k for k, _ in combo))
            w = c * math.prod(v for _, v in combo)
            acc[key] = acc.get(key, 0) + w
    return AdditivePointDistribution(T.dim, {k: float(v) for k, v in acc.items()})


def exp_pushforward(A: AdditivePointDistribution) -> PointDistribution:
    acc: dict = {}
    for (s, mu), c in A.terms.items():
        x = tuple(Fraction(math.exp(v)) for v in s)
        per_coord = []
        for xj, k in zip(x, mu):
            per_coord.append([(j, (-1) ** (k + j) * stirling2(k, j) * xj**j)
                              for j in range(k + 1) if stirling2(k, j)])
        for combo in itertools.product(*per_coord):
            key = (x, tuple(j for j, _ in combo))
            w = Fraction(c) * math.prod(v for _, v in combo)
            acc[key] = acc.get(key, 0) + w
    return PointDistribution(A.dim, acc)


def classical_convolution(A: AdditivePointDistribution, B: AdditivePointDistribution,
                          max_order: int = MAX_ORDER) -> AdditivePointDistribution:
    """``(A * B) f = A_x B_y f(x + y)``: supports add and derivative orders add."""
    if A.dim != B.dim:
        raise DimensionError("dimension mismatch")
    if A.terms and B.terms and A.order + B.order > max_order:
        raise OrderCapError(f"order {A.order + B.order} exceeds cap {max_order}")
    acc: dict = {}
    for (s, mu), c in A.terms.items():
        for (t, nu), d in B.terms.items():
            key = (tuple(x + y for x, y in zip(s, t)), tuple(x + y for x, y in zip(mu, nu)))
            acc[key] = acc.get(key, 0.0) + c * d
    return AdditivePointDistribution(A.dim, acc)


def transfer_discrepancy(T: PointDistribution, S: PointDistribution, max_degree: int = 6) -> float:
    """Largest relative gap on monomials ``|alpha| <= max_degree`` between
    ``T * S`` and ``Exp_*(Log_* T  conv  Log_* S)``."""
    direct = star(T, S)
    via = exp_pushforward(classical_convolution(log_pushforward(T), log_pushforward(S)))
    worst = 0.0
    for alpha in itertools.product(range(max_degree + 1), repeat=T.dim):
        if sum(alpha) > max_degree:
            continue
        m1 = moment(direct, alpha)
        m2 = moment(via, alpha)
        worst = max(worst, float(abs(m1 - m2)) / (1.0 + float(abs(m1))))
    return worst
