"""Dilation sets of boxes and multiplicatively convex hulls.

Finite interval endpoints are kept as exact rationals, infinite ones as
``math.inf``.  For axis-aligned boxes the dilation set

    V(X, Y) = {eta : eta X subset Y}

factorizes coordinatewise, and each factor is an interval because ``Y`` is
convex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .dist import PointDistribution
from .errors import DimensionError, DomainError

INF = math.inf


def _endpoint(v):
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "-inf", "infinity", "-infinity"):
        return -INF if v.strip().startswith("-") else INF
    if isinstance(v, float) and math.isinf(v):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class Interval:
    lo: object = -INF
    hi: object = INF
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo, hi = _endpoint(self.lo), _endpoint(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        # infinite endpoints are always open
        if math.isinf(lo):
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(hi):
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def open(cls, lo, hi):
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi):
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, v):
        return cls(v, v, True, True)

    @classmethod
    def empty(cls):
        return cls(1, 0, False, False)

    @classmethod
    def real_line(cls):
        return cls(-INF, INF)

    @property
    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def is_bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    @property
    def is_open(self) -> bool:
        return not self.lo_closed and not self.hi_closed

    def canonical(self) -> "Interval":
        return Interval.empty() if self.is_empty else self

    def __contains__(self, x) -> bool:
        if self.is_empty:
            return False
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def closure(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(self.lo, self.hi, True, True)

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lc = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lc = other.lo, other.lo_closed
        else:
            lo, lc = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hc = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hc = other.hi, other.hi_closed
        else:
            hi, hc = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lc, hc).canonical()

    def issubset(self, other: "Interval") -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        lo_ok = self.lo > other.lo or (self.lo == other.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = self.hi < other.hi or (self.hi == other.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    def __str__(self):
        if self.is_empty:
            return "{}"
        return (("[" if self.lo_closed else "(") + f"{self.lo}, {self.hi}"
                + ("]" if self.hi_closed else ")"))


def _hull(pieces: Iterable[Interval]) -> Interval:
    pieces = [p for p in pieces if not p.is_empty]
    if not pieces:
        return Interval.empty()
    lo = min(p.lo for p in pieces)
    hi = max(p.hi for p in pieces)
    lc = any(p.lo_closed for p in pieces if p.lo == lo)
    hc = any(p.hi_closed for p in pieces if p.hi == hi)
    return Interval(lo, hi, lc, hc)


_POS = Interval.open(0, INF)
_NEG = Interval.open(-INF, 0)


def _halfline(c, K, ge: bool, strict: bool, domain: Interval) -> Interval:
    """Solutions ``eta`` in ``domain`` (one open half-line) of ``eta*c >= K``
    (``ge``) or ``eta*c <= K``, strict when ``strict``."""
    if (ge and K == -INF) or (not ge and K == INF):
        return domain
    if ge and K == INF or (not ge and K == -INF):
        return Interval.empty()
    sign_eta = 1 if domain is _POS else -1
    if math.isinf(c):
        prod_sign = sign_eta * (1 if c > 0 else -1)
        ok = prod_sign > 0 if ge else prod_sign < 0
        return domain if ok else Interval.empty()
    if c == 0:
        ok = (0 > K if strict else 0 >= K) if ge else (0 < K if strict else 0 <= K)
        return domain if ok else Interval.empty()
    q = K / c
    # dividing by a negative c flips the inequality
    lower = ge == (c > 0)
    half = Interval(q, INF, not strict, False) if lower else Interval(-INF, q, False, not strict)
    return half.intersect(domain)


def v_interval(I: Interval, J: Interval) -> Interval:
    """``{eta : eta * I subset J}`` for one coordinate."""
    if I.is_empty:
        return Interval.real_line()
    if J.is_empty:
        return Interval.empty()
    pieces = []
    # eta > 0: eta*I = <eta lo, eta hi> with the same closedness
    pos = _POS
    pos = pos.intersect(_halfline(I.lo, J.lo, True, I.lo_closed and not J.lo_closed, _POS))
    pos = pos.intersect(_halfline(I.hi, J.hi, False, I.hi_closed and not J.hi_closed, _POS))
    pieces.append(pos)
    # eta = 0: eta*I = {0}
    if 0 in J:
        pieces.append(Interval.point(0))
    # eta < 0: eta*I = <eta hi, eta lo>, endpoints swap roles
    neg = _NEG
    neg = neg.intersect(_halfline(I.hi, J.lo, True, I.hi_closed and not J.lo_closed, _NEG))
    neg = neg.intersect(_halfline(I.lo, J.hi, False, I.lo_closed and not J.hi_closed, _NEG))
    pieces.append(neg)
    return _hull(pieces)


@dataclass(frozen=True)
class Box:
    intervals: tuple

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if not self.intervals:
            raise DimensionError("a box needs at least one coordinate")

    @classmethod
    def open(cls, *bounds):
        return cls(tuple(Interval.open(lo, hi) for lo, hi in bounds))

    @classmethod
    def closed(cls, *bounds):
        return cls(tuple(Interval.closed(lo, hi) for lo, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return any(i.is_empty for i in self.intervals)

    def __getitem__(self, j) -> Interval:
        return self.intervals[j]

    def __contains__(self, x) -> bool:
        if len(x) != self.dim:
            raise DimensionError("point has wrong dimension")
        return all(xi in I for xi, I in zip(x, self.intervals))

    def closure(self) -> "Box":
        return Box(tuple(i.closure() for i in self.intervals))

    def issubset(self, other: "Box") -> bool:
        _same_dim(self, other)
        if self.is_empty:
            return True
        return all(a.issubset(b) for a, b in zip(self.intervals, other.intervals))

    def __str__(self):
        return " x ".join(str(i) for i in self.intervals)


def _same_dim(X: Box, Y: Box):
    if X.dim != Y.dim:
        raise DimensionError(f"dimension mismatch: {X.dim} vs {Y.dim}")


def v_set(X: Box, Y: Box | None = None) -> Box:
    """Dilation set ``V(X, Y)``; ``V(X) = V(X, X)`` when ``Y`` is omitted."""
    if Y is None:
        Y = X
    _same_dim(X, Y)
    if X.is_empty:
        return Box(tuple(Interval.real_line() for _ in range(X.dim)))
    return Box(tuple(v_interval(I, J) for I, J in zip(X.intervals, Y.intervals)))


def u_set(inner: Box, outer: Box) -> Box:
    """``U = V(closure(inner), outer)``, the dilations mapping ``inner`` compactly into ``outer``."""
    _same_dim(inner, outer)
    closed = inner.closure()
    for j, (I, J) in enumerate(zip(closed.intervals, outer.intervals)):
        if not I.is_bounded or not I.issubset(J):
            raise DomainError(
                f"coordinate {j}: closure {I} is not a compact subset of {J}")
    return v_set(closed, outer)


# ---------------------------------------------------------------------------
# point sets and multiplicative hulls

@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple = ()

    def __post_init__(self):
        seen = []
        for p in self.points:
            p = tuple(float(c) for c in p)
            if len(p) != self.dim:
                raise DimensionError("point has wrong dimension")
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "points", tuple(seen))

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        arr = np.atleast_2d(np.asarray(arr, dtype=float))
        return cls(arr.shape[1], tuple(map(tuple, arr)))

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, self.dim)

    def __len__(self):
        return len(self.points)

    def __mul__(self, other: "PointSet") -> "PointSet":
        """Coordinatewise products of all pairs."""
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return PointSet(self.dim, tuple(tuple(a * b for a, b in zip(p, q))
                                        for p in self.points for q in other.points))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts: np.ndarray, rtol: float) -> list[int]:
    """Monotone chain; returns indices of strict vertices in counterclockwise order."""
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    scale = max(1.0, float(np.max(np.abs(pts))))
    tol = rtol * scale * scale

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and _cross(pts[out[-2]], pts[out[-1]], pts[i]) <= tol:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    return lower[:-1] + upper[:-1]


def convex_hull_vertices(pts: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Vertices of the convex hull of a finite point cloud (any dimension <= 3 natively)."""
    pts = np.unique(np.asarray(pts, dtype=float), axis=0)
    if len(pts) <= 1:
        return pts
    center = pts.mean(axis=0)
    centered = pts - center
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(np.max(np.abs(pts))))
    rank = int(np.sum(sv > rtol * scale * max(1, len(pts))))
    if rank == 0:
        return pts[:1]
    coords = centered @ vt[:rank].T
    if rank == 1:
        idx = [int(np.argmin(coords[:, 0])), int(np.argmax(coords[:, 0]))]
    elif rank == 2:
        idx = _hull_2d(coords, rtol)
    else:
        from scipy.spatial import ConvexHull

        idx = list(ConvexHull(coords).vertices)
    verts = pts[idx]
    if pts.shape[1] == 2 and rank == 2:
        # counterclockwise in the original orientation, starting at the lexicographic minimum
        if np.linalg.det(vt[:2]) < 0:
            verts = verts[::-1]
        start = min(range(len(verts)), key=lambda i: tuple(verts[i]))
        return np.roll(verts, -start, axis=0)
    return verts[np.lexsort(verts.T[::-1])]


def mconv_hull(X: PointSet, rtol: float = 1e-12) -> PointSet:
    """Vertices of the multiplicatively convex hull ``Exp(conv(Log X))``."""
    arr = X.as_array()
    if arr.size and np.any(arr <= 0):
        raise DomainError("mconv hull needs strictly positive coordinates")
    if not len(arr):
        return X
    logs = convex_hull_vertices(np.log(arr), rtol)
    # map back to the exact input points to keep the hull idempotent
    out = []
    for v in logs:
        i = int(np.argmin(np.linalg.norm(np.log(arr) - v, axis=1)))
        out.append(tuple(arr[i]))
    return PointSet(X.dim, tuple(out))


def support_points(T: PointDistribution) -> PointSet:
    return PointSet(T.dim, tuple(tuple(float(c) for c in p) for p in T.support()))


def supports_in(T: PointDistribution, B: Box) -> bool:
    """True iff every support point of ``T`` lies in ``B``."""
    if T.dim != B.dim:
        raise DimensionError("dimension mismatch")
    return all(tuple(p) in B for p in T.support())
