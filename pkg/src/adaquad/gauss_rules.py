"""Gauss-Legendre rules on [-1, 1] and tensor-product rules on [0, 1]^dim."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError

MAX_POINTS = 64
MAX_DIM = 8
NEWTON_TOL = 1e-15


@dataclass(frozen=True)
class Rule1D:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def count(self):
        return self.nodes.shape[0]


@dataclass(frozen=True)
class RuleND:
    """Points ``(count, dim)`` with matching positive weights ``(count,)``."""

    dim: int
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.points.ndim != 2 or self.points.shape[1] != self.dim:
            raise InvalidArgumentError(
                f"points must have shape (count, {self.dim}), got {self.points.shape}")
        if self.weights.shape != (self.points.shape[0],):
            raise InvalidArgumentError("points and weights differ in length")

    @property
    def count(self):
        return self.points.shape[0]

    def __len__(self):
        return self.count


def _legendre(m, x):
    """P_m(x) and P_m'(x) by the three-term recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    if m == 0:
        return p0, np.zeros_like(x)
    for k in range(2, m + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def _gauss_legendre_cached(m):
    k = np.arange(m)
    # Chebyshev-type initial guesses, descending
    x = np.cos(np.pi * (k + 0.75) / (m + 0.5))
    for _ in range(100):
        p, dp = _legendre(m, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            break
    x = x[::-1].copy()
    x = 0.5 * (x - x[::-1])
    if m % 2 == 1:
        x[m // 2] = 0.0
    _, dp = _legendre(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre_1d(m):
    """Gauss-Legendre rule with ``m`` points on [-1, 1].

    Nodes are found by Newton iteration on P_m and then symmetrized so that
    ``nodes[i] == -nodes[m-1-i]`` holds exactly.
    """
    if not isinstance(m, (int, np.integer)) or m < 1 or m > MAX_POINTS:
        raise InvalidArgumentError(f"point count must be in [1, {MAX_POINTS}], got {m!r}")
    if m == 1:
        return Rule1D(np.array([0.0]), np.array([2.0]))
    x, w = _gauss_legendre_cached(int(m))
    return Rule1D(x, w)


@lru_cache(maxsize=None)
def _reference_cached(m, dim):
    rule = gauss_legendre_1d(m)
    xg = (1.0 + rule.nodes) / 2.0
    wg = rule.weights / 2.0
    idx = np.indices((m,) * dim).reshape(dim, -1)[::-1]
    # idx[j] is the index along axis j, first axis fastest
    points = np.ascontiguousarray(xg[idx].T)
    weights = wg[idx[0]].copy()
    for j in range(1, dim):
        weights = weights * wg[idx[j]]
    points.flags.writeable = False
    weights.flags.writeable = False
    return RuleND(dim, points, weights)


def reference_rule(m, dim):
    """Tensor-product Gauss rule on the unit cell [0, 1]^dim.

    ``m**dim`` points ordered with the first coordinate varying fastest.
    """
    if not isinstance(dim, (int, np.integer)) or dim < 1 or dim > MAX_DIM:
        raise InvalidArgumentError(f"dimension must be in [1, {MAX_DIM}], got {dim!r}")
    gauss_legendre_1d(m)
    return _reference_cached(int(m), int(dim))
