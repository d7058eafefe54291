"""Solve ``P(theta) u = f`` on an interval ``(r, R)`` of the positive half-line.

With ``t = log x`` the Euler operator becomes the constant-coefficient operator
``P(d/dt)`` on a uniform grid.  The symbol is factored and the first-order
factors ``(D - lam) w = h`` are integrated by variation of constants,

    w(t) = int_{t0}^t exp(lam (t - s)) h(s) ds,

stepwise so that no large exponentials appear.  A conjugate pair
``alpha +- i beta`` is solved as one real second-order factor with kernel
``exp(alpha tau) sin(beta tau) / beta``.  Every stage starts from zero at the
left endpoint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.signal import lfilter

from .dist import JetFunction
from .errors import DimensionError, DomainError, NumericalError
from .euler import EulerOperator

MIN_NODES = 8
_QUAD_POINTS = 6


@dataclass(frozen=True)
class GridFunction:
    """Samples at geometric nodes ``x_k = r (R/r)^(k/(n-1))``."""

    r: float
    R: float
    values: np.ndarray

    def __post_init__(self):
        if not 0 < self.r < self.R:
            raise DomainError(f"need 0 < r < R, got ({self.r}, {self.R})")
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or len(values) < MIN_NODES:
            raise ValueError(f"need at least {MIN_NODES} samples")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def nodes(self) -> np.ndarray:
        return geometric_nodes(self.r, self.R, self.n)

    @property
    def log_nodes(self) -> np.ndarray:
        return np.linspace(math.log(self.r), math.log(self.R), self.n)


def geometric_nodes(r: float, R: float, n: int) -> np.ndarray:
    return np.exp(np.linspace(math.log(r), math.log(R), n))


def _check_interval(r, R):
    if not (r > 0 and R > r):
        raise DomainError(
            f"interval ({r}, {R}) must lie in the positive half-line; "
            "Euler operators degenerate at x = 0")


def _sample(f, r: float, R: float, n: int) -> np.ndarray:
    x = geometric_nodes(r, R, n)
    if isinstance(f, GridFunction):
        if f.n != n or not (np.isclose(f.r, r) and np.isclose(f.R, R)):
            raise DimensionError("grid function does not match the solve grid")
        return f.values
    if isinstance(f, (int, float)):
        return np.full(n, float(f))
    if isinstance(f, JetFunction):
        return np.array([f((xi,)) for xi in x], dtype=float)
    if callable(f):
        vals = np.asarray(f(x), dtype=float)
        if vals.shape == ():
            vals = np.full(n, float(vals))
        return vals
    vals = np.asarray(f, dtype=float)
    if vals.shape != (n,):
        raise DimensionError(f"expected {n} samples, got shape {vals.shape}")
    return vals


@lru_cache(maxsize=None)
def _interval_weights(offsets: tuple) -> np.ndarray:
    """Weights for the integral over [0, 1] of the interpolant through ``offsets``."""
    nodes = np.asarray(offsets, dtype=float)
    k = len(nodes)
    vander = np.vander(nodes, k, increasing=True).T
    moments = 1.0 / np.arange(1, k + 1)
    return np.linalg.solve(vander, moments)


@lru_cache(maxsize=None)
def _stencils(n: int):
    """Node indices and weights per sub-interval; centered except near the ends."""
    half = _QUAD_POINTS // 2
    idx = np.empty((n - 1, _QUAD_POINTS), dtype=int)
    w = np.empty((n - 1, _QUAD_POINTS))
    for j in range(n - 1):
        lo = min(max(j - half + 1, 0), n - _QUAD_POINTS)
        idx[j] = np.arange(lo, lo + _QUAD_POINTS)
        w[j] = _interval_weights(tuple(idx[j] - j))
    return idx, w


def _first_order_stage(lam: complex, h: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Zero-start solution of ``(D - lam) w = h`` on the uniform grid ``t``."""
    n = len(t)
    dt = t[1] - t[0]
    idx, w = _stencils(n)
    # int_{t_j}^{t_{j+1}} exp(lam (t_{j+1} - s)) h(s) ds
    kernel = np.exp(lam * (t[1:, None] - t[idx])) * h[idx]
    seg = dt * np.sum(w * kernel, axis=1)
    out = np.zeros(n, dtype=complex if np.iscomplexobj(seg) or isinstance(lam, complex) else float)
    out[1:] = lfilter([1.0], [1.0, -np.exp(lam * dt)], seg)
    return out


def _group_roots(roots: np.ndarray, tol: float = 1e-9) -> list:
    """Split roots into real ones and conjugate pairs (represented by the upper root)."""
    reals, upper = [], []
    for z in roots:
        scale = max(1.0, abs(z))
        if abs(z.imag) <= tol * scale:
            reals.append(float(z.real))
        elif z.imag > 0:
            upper.append(complex(z))
    n_lower = sum(1 for z in roots if z.imag < -tol * max(1.0, abs(z)))
    if n_lower != len(upper):
        raise NumericalError("complex roots did not come in conjugate pairs")
    return [("real", r) for r in reals] + [("pair", z) for z in upper]


def symbol_roots(P: EulerOperator) -> tuple[float, np.ndarray]:
    """Leading coefficient and roots of the 1-D symbol ``P(lambda)``."""
    if P.dim != 1:
        raise DimensionError("the solver handles one-dimensional operators only")
    if P.is_zero:
        raise DomainError("the zero operator has no solutions in general")
    p = P.degree
    coeffs = [float(P.theta_coeffs.get((k,), 0)) for k in range(p, -1, -1)]
    roots = np.roots(coeffs) if p > 0 else np.array([])
    if not np.all(np.isfinite(roots)):
        raise NumericalError("root finding failed")
    return coeffs[0], roots


def solve(P: EulerOperator, f, interval: tuple[float, float], n: int = 1024) -> GridFunction:
    """Particular solution of ``P(theta) u = f`` on ``interval`` with ``n`` nodes.

    ``f`` may be a constant, a callable on arrays, a :class:`JetFunction`, a
    :class:`GridFunction` on the same grid, or an array of node values.
    """
    r, R = (float(v) for v in interval)
    _check_interval(r, R)
    if n < MIN_NODES:
        raise ValueError(f"need n >= {MIN_NODES}")
    lead, roots = symbol_roots(P)
    t = np.linspace(math.log(r), math.log(R), n)
    w = _sample(f, r, R, n) / lead
    for kind, lam in _group_roots(roots):
        if kind == "real":
            w = _first_order_stage(lam, w, t).real
        else:
            # (D - z)(D - conj z) w = h  <=>  w = Im( int e^{z(t-s)} h ) / Im z
            w = _first_order_stage(lam, w, t).imag / lam.imag
    if not np.all(np.isfinite(w)):
        raise NumericalError("solution overflowed; the interval is too long for these roots")
    return GridFunction(r, R, w)


# ---------------------------------------------------------------------------
# residual check

def fd_weights(m: int, offsets) -> np.ndarray:
    """Fornberg's finite-difference weights for the m-th derivative at 0."""
    x = np.asarray(offsets, dtype=float)
    n = len(x)
    c = np.zeros((n, m + 1))
    c1, c4 = 1.0, x[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def _half_width(k: int, order: int) -> int:
    return (k + 1) // 2 - 1 + order // 2 if k else 0


_EPS = float(np.finfo(float).eps)


def _stride(k: int, order: int, dt: float, n: int, hw: int) -> int:
    """Node stride for a k-th difference balancing truncation ``H^order``
    against round-off ``eps / H^k``; capped so half the grid stays interior."""
    if k == 0:
        return 1
    ideal = int(_EPS ** (1.0 / (k + order)) / dt)
    return max(1, min(ideal, (n // 4) // hw))


def apply_operator(P: EulerOperator, u: GridFunction, order: int = 8,
                   balance: bool = True) -> tuple[np.ndarray, slice]:
    """``P(theta) u`` at interior nodes by central differences in ``t = log x``.

    With ``balance`` each derivative uses a strided stencil whose spacing
    balances truncation and round-off; otherwise every stencil has unit stride.
    """
    if P.dim != 1:
        raise DimensionError("one-dimensional operators only")
    if order < 4 or order % 2:
        raise ValueError("order must be an even integer >= 4")
    p = P.degree
    n = u.n
    dt = u.log_nodes[1] - u.log_nodes[0]
    plan = {}
    for (k,) in P.theta_coeffs:
        hw = _half_width(k, order)
        step = _stride(k, order, dt, n, hw) if balance else 1
        plan[k] = (hw, step, fd_weights(k, np.arange(-hw, hw + 1)) / (step * dt) ** k)
    half = max([hw * step for hw, step, _ in plan.values()], default=0)
    if n < 2 * half + 1 or n < MIN_NODES:
        raise ValueError(f"n = {n} is too small for a degree-{p} stencil")
    out = np.zeros(n - 2 * half)
    for (k,), c in P.theta_coeffs.items():
        hw, step, wts = plan[k]
        d = np.zeros_like(out)
        for j, wj in zip(range(-hw, hw + 1), wts):
            d += wj * u.values[half + j * step:n - half + j * step]
        out += float(c) * d
    return out, slice(half, n - half)


def residual(P: EulerOperator, u: GridFunction, f, order: int = 8, balance: bool = True) -> float:
    """Max-norm of ``P(theta) u - f`` over interior nodes."""
    lhs, interior = apply_operator(P, u, order, balance)
    rhs = _sample(f, u.r, u.R, u.n)
    return float(np.max(np.abs(lhs - rhs[interior]), initial=0.0))


# right-hand sides usable by name from the command line
BUILTIN_RHS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "zero": lambda x: np.zeros_like(x),
    "one": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "x2": lambda x: x**2,
    "log": np.log,
    "log2": lambda x: np.log(x) ** 2,
    "sqrt": np.sqrt,
    "exp": np.exp,
}
