"""Exact point-supported distributions and their action on test functions.

A distribution here is a finite sum ``sum t * delta_a^(mu)`` with rational
coefficients ``t`` and rational support points ``a``.  The action on a smooth
function follows the transpose convention

    delta_a^(mu)(f) = (-1)^|mu| (d^mu f)(a).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DimensionError, JetOrderError, OrderCapError

MAX_ORDER = 32

Point = tuple  # tuple[Fraction, ...]
MultiIndex = tuple  # tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Convert ints, floats (exactly), strings like ``"3/4"`` or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    return Fraction(value)


def as_point(point) -> Point:
    if isinstance(point, (int, float, str, Fraction)):
        point = (point,)
    return tuple(as_fraction(c) for c in point)


def as_multi_index(mu, dim: int | None = None) -> MultiIndex:
    if isinstance(mu, int):
        mu = (mu,)
    mu = tuple(int(m) for m in mu)
    if any(m < 0 for m in mu):
        raise ValueError(f"multi-index entries must be non-negative: {mu}")
    if dim is not None and len(mu) != dim:
        raise DimensionError(f"multi-index {mu} has length {len(mu)}, expected {dim}")
    return mu


def falling(n, k: int):
    """Falling factorial n (n-1) ... (n-k+1); works for any ring element n."""
    out = 1
    for i in range(k):
        out = out * (n - i)
    return out


def _pow(base: Fraction, exp: int) -> Fraction:
    # 0**0 == 1 is the convention we want for monomials at zero coordinates.
    return base**exp


@dataclass(frozen=True)
class PointDistribution:
    """Immutable canonical sum of weighted derivatives of point masses.

    ``terms`` maps ``(point, mu)`` to a nonzero rational coefficient.  Use
    :func:`make_distribution` to build one from raw triples.
    """

    dim: int
    terms: Mapping[tuple[Point, MultiIndex], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("dimension must be positive")
        clean = {}
        for (point, mu), coef in self.terms.items():
            if len(point) != self.dim or len(mu) != self.dim:
                raise DimensionError(
                    f"term at {point} with index {mu} does not match dim {self.dim}")
            if coef != 0:
                clean[(point, mu)] = coef
        # sorted for deterministic iteration and serialization
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    # -- structure ---------------------------------------------------------
    @property
    def order(self) -> int:
        """Largest total derivative order |mu| among the terms (0 if empty)."""
        return max((sum(mu) for _, mu in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Point]:
        return sorted({p for p, _ in self.terms})

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    # -- vector space ------------------------------------------------------
    def _check(self, other: "PointDistribution"):
        if not isinstance(other, PointDistribution):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0) + c
        return PointDistribution(self.dim, acc)

    def __neg__(self):
        return PointDistribution(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, PointDistribution):
            return NotImplemented
        s = as_fraction(scalar)
        return PointDistribution(self.dim, {k: s * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        from .star import star

        return star(self, other)

    def __eq__(self, other):
        if not isinstance(other, PointDistribution):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"PointDistribution(dim={self.dim}, 0)"
        parts = []
        for (p, mu), c in self.terms.items():
            pt = ",".join(str(x) for x in p)
            parts.append(f"{c}*d[{pt}]^{mu}" if any(mu) else f"{c}*d[{pt}]")
        return f"PointDistribution(dim={self.dim}, {' + '.join(parts)})"

    def __call__(self, f):
        if isinstance(f, Polynomial):
            return apply_to_polynomial(self, f)
        return apply_to_jet(self, f)


def make_distribution(terms: Iterable, dim: int | None = None,
                      max_order: int = MAX_ORDER) -> PointDistribution:
    """Build a canonical distribution from ``(point, mu, coef)`` triples.

    Like terms are merged and zero coefficients dropped.  ``dim`` may be
    omitted when at least one term is given.
    """
    acc: dict = {}
    for point, mu, coef in terms:
        point = as_point(point)
        if dim is None:
            dim = len(point)
        if len(point) != dim:
            raise DimensionError(f"point {point} has dimension {len(point)}, expected {dim}")
        mu = as_multi_index(mu, dim)
        if sum(mu) > max_order:
            raise OrderCapError(f"order {sum(mu)} exceeds cap {max_order}")
        key = (point, mu)
        acc[key] = acc.get(key, 0) + as_fraction(coef)
    if dim is None:
        raise DimensionError("cannot infer dimension of an empty term list")
    return PointDistribution(dim, acc)


def delta(point, mu=None, coef=1) -> PointDistribution:
    """Single term ``coef * delta_point^(mu)``."""
    point = as_point(point)
    if mu is None:
        mu = (0,) * len(point)
    return make_distribution([(point, mu, coef)])


def zero(dim: int) -> PointDistribution:
    return PointDistribution(dim, {})


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial with rational coefficients, keyed by multi-index."""

    dim: int
    coeffs: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = as_multi_index(alpha, self.dim)
            c = as_fraction(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        object.__setattr__(self, "coeffs",
                           {a: c for a, c in sorted(clean.items()) if c != 0})

    @classmethod
    def monomial(cls, alpha, coef=1) -> "Polynomial":
        alpha = as_multi_index(alpha)
        return cls(len(alpha), {alpha: as_fraction(coef)})

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def derivative(self, beta: MultiIndex) -> "Polynomial":
        out = {}
        for alpha, c in self.coeffs.items():
            if all(a >= b for a, b in zip(alpha, beta)):
                factor = math.prod(falling(a, b) for a, b in zip(alpha, beta))
                out[tuple(a - b for a, b in zip(alpha, beta))] = c * factor
        return Polynomial(self.dim, out)

    def __call__(self, point):
        """Evaluate exactly at a rational point, or in floats/complex otherwise."""
        if len(point) != self.dim:
            raise DimensionError("evaluation point has wrong dimension")
        total = 0
        for alpha, c in self.coeffs.items():
            term = c
            for x, a in zip(point, alpha):
                term = term * x**a
            total = total + term
        return total

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        acc = dict(self.coeffs)
        for a, c in other.coeffs.items():
            acc[a] = acc.get(a, 0) + c
        return Polynomial(self.dim, acc)

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return Polynomial(self.dim, {a: s * c for a, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1) * other


# ---------------------------------------------------------------------------
# jet functions

@dataclass(frozen=True)
class JetFunction:
    """Smooth function known through its partial derivatives.

    ``deriv(x, beta)`` returns ``(d^beta f)(x)`` as a float (or complex) for
    every multi-index with ``|beta| <= max_order``.
    """

    dim: int
    deriv: Callable[[Sequence[float], MultiIndex], float]
    max_order: int = MAX_ORDER

    def __call__(self, x, beta=None):
        x = tuple(float(c) for c in (x if isinstance(x, (tuple, list)) else (x,)))
        if beta is None:
            beta = (0,) * self.dim
        if sum(beta) > self.max_order:
            raise JetOrderError(
                f"derivative order {sum(beta)} exceeds jet order {self.max_order}")
        return self.deriv(x, tuple(beta))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "JetFunction":
        cache: dict = {}

        def deriv(x, beta):
            if beta not in cache:
                d = p.derivative(beta)
                cache[beta] = [(a, float(c)) for a, c in d.coeffs.items()]
            return math.fsum(c * math.prod(xi**ai for xi, ai in zip(x, a))
                             for a, c in cache[beta])

        return cls(p.dim, deriv, MAX_ORDER)

    @classmethod
    def from_sympy(cls, expr, symbols, max_order: int = 8) -> "JetFunction":
        """Wrap a sympy expression; derivatives are taken symbolically on demand."""
        import sympy

        symbols = tuple(symbols)
        cache: dict = {}

        def deriv(x, beta):
            if beta not in cache:
                d = expr
                for s, b in zip(symbols, beta):
                    if b:
                        d = sympy.diff(d, s, b)
                cache[beta] = sympy.lambdify(symbols, d, "math")
            return cache[beta](*x)

        return cls(len(symbols), deriv, max_order)

    @classmethod
    def from_derivatives(cls, derivatives: Sequence[Callable[[float], float]]) -> "JetFunction":
        """One-variable jet from the list ``[f, f', f'', ...]``."""
        derivatives = list(derivatives)

        def deriv(x, beta):
            return derivatives[beta[0]](x[0])

        return cls(1, deriv, len(derivatives) - 1)


def exp_jet() -> JetFunction:
    return JetFunction(1, lambda x, beta: math.exp(x[0]))


def log_jet() -> JetFunction:
    def deriv(x, beta):
        k = beta[0]
        if k == 0:
            return math.log(x[0])
        return (-1) ** (k - 1) * math.factorial(k - 1) / x[0] ** k

    return JetFunction(1, deriv)


# ---------------------------------------------------------------------------
# actions

def _check_dim(T: PointDistribution, dim: int):
    if T.dim != dim:
        raise DimensionError(f"dimension mismatch: distribution {T.dim}, argument {dim}")


def moment(T: PointDistribution, alpha) -> Fraction:
    """Multiplier ``m_alpha = T(x^alpha)``, exact."""
    alpha = as_multi_index(alpha, T.dim)
    total = Fraction(0)
    for (point, mu), c in T.terms.items():
        if any(m > a for m, a in zip(mu, alpha)):
            continue
        term = c * (-1) ** sum(mu)
        for a_j, al, m in zip(point, alpha, mu):
            term *= falling(al, m) * _pow(a_j, al - m)
        total += term
    return total


def apply_to_polynomial(T: PointDistribution, p: Polynomial) -> Fraction:
    """Exact value of ``T(p)``."""
    _check_dim(T, p.dim)
    return sum((c * moment(T, alpha) for alpha, c in p.coeffs.items()), Fraction(0))


def apply_to_jet(T: PointDistribution, f: JetFunction) -> float:
    """Float value of ``sum t (-1)^|mu| (d^mu f)(a)``."""
    _check_dim(T, f.dim)
    if T.order > f.max_order:
        raise JetOrderError(f"distribution order {T.order} exceeds jet order {f.max_order}")
    vals = []
    for (point, mu), c in T.terms.items():
        vals.append(float(c) * (-1) ** sum(mu) * f(tuple(float(a) for a in point), mu))
    if any(isinstance(v, complex) for v in vals):
        return sum(vals)
    return math.fsum(vals)


def equals(T: PointDistribution, S: PointDistribution) -> bool:
    _check_dim(T, S.dim)
    return T == S
