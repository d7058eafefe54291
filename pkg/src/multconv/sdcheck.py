"""Sampling semi-decision for the slowly-decreasing growth condition.

An entire function ``J`` is slowly decreasing when for some ``a, b, c > 0``
every real ``x`` has a real ``y`` with

    |x - y| <= a log(2 + |x|)   and   |J(y)| >= b / (1 + |y|^c).

The checker sweeps a grid of ``x`` in ``[-x_max, x_max]^d`` and searches each
ball with a fixed Halton sequence plus a local pattern search.  A "pass" is a
witness table for the sampled grid only; "fail" means no witness was found
within the budget.  Neither is a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.stats import qmc

from .dist import PointDistribution
from .transforms import char_values

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

_DEFAULT_GRID = {1: 201, 2: 41, 3: 13}


@dataclass
class SDConfig:
    a: float = 2.0
    b: float | None = None  # None: the checker reports the best b it can certify
    c: float | None = None  # None: 2 * (order + 1)
    x_max: float = 50.0
    n_grid: int | None = None  # grid points per axis
    n_samples: int = 1000  # Halton samples per ball
    refine_steps: int = 24
    b_floor: float = 1e-8  # tuned b below this is reported inconclusive

    def validate(self):
        if not self.a > 0:
            raise ValueError("a must be positive")
        if self.b is not None and not self.b > 0:
            raise ValueError("b must be positive")
        if self.c is not None and self.c < 0:
            raise ValueError("c must be non-negative")
        if not self.x_max >= 0:
            raise ValueError("x_max must be non-negative")
        if self.n_samples < 1:
            raise ValueError("n_samples must be positive")


@dataclass
class SDReport:
    verdict: str
    a: float
    b: float
    c: float
    x: np.ndarray  # (N, d) grid points
    y: np.ndarray  # (N, d) chosen witnesses
    abs_j: np.ndarray  # |J(y)| at the witnesses
    worst_index: int
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": {"a": self.a, "b": self.b, "c": self.c},
            "worst": {
                "x": self.x[self.worst_index].tolist(),
                "y": self.y[self.worst_index].tolist(),
                "abs_j": float(self.abs_j[self.worst_index]),
            },
            "samples": [
                {"x": xi.tolist(), "y": yi.tolist(), "abs_j": float(v)}
                for xi, yi, v in zip(self.x, self.y, self.abs_j)
            ],
            "config": self.config,
        }


def _ball_offsets(d: int, n: int) -> np.ndarray:
    """Deterministic low-discrepancy points in the closed unit ball, origin first."""
    if d == 1:
        u = qmc.Halton(1, scramble=False).random(n)
        pts = 2.0 * u - 1.0
    else:
        # oversample the cube and keep the points inside the ball
        m = int(np.ceil(n * 2.0**d * 1.3)) + 16
        u = 2.0 * qmc.Halton(d, scramble=False).random(m) - 1.0
        pts = u[np.linalg.norm(u, axis=1) <= 1.0][:n]
    # include the ball's boundary extremes along each axis
    axes = np.vstack([np.eye(d), -np.eye(d)])
    return np.vstack([np.zeros((1, d)), axes, pts])


def _score(T, y, c):
    vals = np.abs(char_values(T, y))
    norm = np.linalg.norm(y, axis=-1)
    return vals, vals * (1.0 + norm**c)


def slowly_decreasing_check(T: PointDistribution, config: SDConfig | None = None,
                            **overrides) -> SDReport:
    """Search for a slowly-decreasing witness for the characteristic function of ``T``."""
    config = SDConfig(**{**asdict(config or SDConfig()), **overrides})
    config.validate()
    d = T.dim
    c = float(config.c) if config.c is not None else 2.0 * (T.order + 1)
    n_grid = config.n_grid or _DEFAULT_GRID.get(d, 7)
    axis = np.linspace(-config.x_max, config.x_max, n_grid)
    x = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    radius = config.a * np.log(2.0 + np.linalg.norm(x, axis=1))

    offsets = _ball_offsets(d, config.n_samples)
    y = x[:, None, :] + radius[:, None, None] * offsets[None, :, :]
    vals, score = _score(T, y, c)
    best = np.argmax(score, axis=1)
    rows = np.arange(len(x))
    y_best = y[rows, best]
    s_best = score[rows, best]

    # local pattern search around each best sample, kept inside the ball
    step = radius / max(2.0, config.n_samples ** (1.0 / d))
    dirs = np.vstack([np.eye(d), -np.eye(d)])
    for _ in range(config.refine_steps):
        cand = y_best[:, None, :] + step[:, None, None] * dirs[None, :, :]
        dist = np.linalg.norm(cand - x[:, None, :], axis=-1)
        _, cs = _score(T, cand, c)
        cs = np.where(dist <= radius[:, None] * (1 + 1e-12), cs, -np.inf)
        k = np.argmax(cs, axis=1)
        improve = cs[rows, k] > s_best
        y_best = np.where(improve[:, None], cand[rows, k], y_best)
        s_best = np.where(improve, cs[rows, k], s_best)
        step = np.where(improve, step, step / 2.0)

    abs_j, _ = _score(T, y_best, c)
    worst = int(np.argmin(s_best))
    floor_score = float(s_best[worst])
    if config.b is not None:
        b = float(config.b)
        verdict = PASS if np.all(s_best >= b) else FAIL
    else:
        b = floor_score
        if b >= config.b_floor:
            verdict = PASS
        elif b > 0.0 and np.isfinite(b):
            verdict = INCONCLUSIVE
        else:
            verdict = FAIL
    return SDReport(verdict=verdict, a=float(config.a), b=b, c=c, x=x, y=y_best,
                    abs_j=abs_j, worst_index=worst,
                    config={**asdict(config), "c": c, "n_grid": n_grid})
