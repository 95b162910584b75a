"""Adaptive quadrature construction by recursive 2^dim subdivision.

A cell is accepted when, for every integrand still active on it, the
difference between a low-order and a high-order tensor Gauss rule is below
the absolute tolerance. Otherwise the cell is split into 2^dim congruent
children and only the failing integrands are carried into them.

Cells are processed one level at a time so each integrand is evaluated on a
whole batch of cells at once; leaves are then placed in depth-first,
odometer-child order by sorting on their child-index paths.
"""

import operator
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DepthExceededError, InvalidArgumentError, NonFiniteIntegrandError
from .gauss_rules import RuleND, reference_rule
from .geometry import Parallelepiped, child_bases, volume

# Subdivide when the error estimate is >= tol ("ge") or strictly > tol ("gt").
SUBDIVIDE_COMPARATOR = "ge"
_COMPARATORS = {"ge": operator.ge, "gt": operator.gt}

# cap on points evaluated per integrand call
_BATCH_POINTS = 1 << 17


@dataclass(frozen=True)
class AdaptiveConfig:
    nsp_low: int = 5
    nsp_high: int = 8
    tol: float = 1e-6
    max_depth: int = 30
    comparator: str = SUBDIVIDE_COMPARATOR

    def __post_init__(self):
        if self.nsp_low < 1:
            raise InvalidArgumentError("nsp_low must be >= 1")
        if not self.nsp_high > self.nsp_low:
            raise InvalidArgumentError("nsp_high must exceed nsp_low")
        if not self.tol > 0:
            raise InvalidArgumentError(f"tol must be positive, got {self.tol}")
        if self.max_depth < 1:
            raise InvalidArgumentError("max_depth must be >= 1")
        if self.comparator not in _COMPARATORS:
            raise InvalidArgumentError(f"comparator must be one of {sorted(_COMPARATORS)}")

    def exceeds(self, err):
        """True when ``err`` triggers subdivision."""
        return _COMPARATORS[self.comparator](err, self.tol)


@dataclass(frozen=True)
class Leaf:
    path: tuple
    depth: int
    base: np.ndarray
    edges: np.ndarray
    active: tuple

    @property
    def cell(self):
        return Parallelepiped(self.base, self.edges)


@dataclass(frozen=True)
class CellCheck:
    """One error check: which integrands were tested at a cell and which failed."""

    path: tuple
    depth: int
    active: tuple
    failing: tuple


@dataclass
class AdaptiveResult:
    rule: RuleND
    leaf_count: int
    max_depth_reached: int
    per_integrand_active_leaves: list
    leaves: list = field(repr=False)
    checks: list = field(repr=False)
    config: AdaptiveConfig = None


def _check_finite(f, points, values):
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonFiniteIntegrandError(f.label, points[i], values[i])


def _check_sums(f, cells, sums):
    bad = ~np.isfinite(sums)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonFiniteIntegrandError(
            f.label, cells[i], sums[i],
            f"integral of {f.label!r} overflowed to {sums[i]} on the cell based at {cells[i].tolist()}")


def integrate_with_rule(rule, f):
    """``sum_i w_i f(p_i)``."""
    if rule.count == 0:
        raise InvalidArgumentError("rule is empty")
    values = f(rule.points)
    _check_finite(f, rule.points, values)
    total = kernels.weighted_sums(values[None, :], rule.weights)
    _check_sums(f, rule.points[:1], total)
    return float(total[0])


def local_error(f, cell, low_rule, high_rule):
    """|I_high - I_low| for rules already mapped onto ``cell``."""
    return abs(integrate_with_rule(high_rule, f) - integrate_with_rule(low_rule, f))


def _cell_integrals(f, ref, bases, edges, weights):
    """Integral of ``f`` on each cell of a same-size batch."""
    npts, dim = ref.points.shape
    out = np.empty(bases.shape[0])
    step = max(1, _BATCH_POINTS // npts)
    for s in range(0, bases.shape[0], step):
        chunk = bases[s:s + step]
        cell_edges = np.broadcast_to(edges, (chunk.shape[0], dim, dim)).copy()
        pts = kernels.map_points(ref.points, chunk, cell_edges)
        flat = pts.reshape(-1, dim)
        values = f(flat)
        _check_finite(f, flat, values)
        out[s:s + step] = kernels.weighted_sums(values.reshape(chunk.shape[0], npts), weights)
    _check_sums(f, bases, out)
    return out


def build_adaptive_rule(cell, integrands, config=None):
    """Construct a quadrature rule on ``cell`` adapted to every integrand.

    Returns an :class:`AdaptiveResult` whose rule concatenates the mapped
    ``nsp_low`` tensor rule of each leaf in depth-first order. Raises
    :class:`DepthExceededError` if any cell would be split beyond
    ``config.max_depth``.
    """
    config = config or AdaptiveConfig()
    integrands = list(integrands)
    if not integrands:
        raise InvalidArgumentError("at least one integrand is required")
    dim = cell.dim
    for f in integrands:
        if f.dim != dim:
            raise InvalidArgumentError(f"{f.label} has dimension {f.dim}, cell has {dim}")
    low = reference_rule(config.nsp_low, dim)
    high = reference_rule(config.nsp_high, dim)

    nfun = len(integrands)
    leaves = []
    checks = []
    paths = [()]
    bases = cell.base[None, :].copy()
    actives = [tuple(range(nfun))]
    depth = 0
    edges = cell.edges
    while paths:
        vol = volume(Parallelepiped(cell.base, edges))
        w_low = low.weights * vol
        w_high = high.weights * vol
        failing = [[] for _ in paths]
        for i, f in enumerate(integrands):
            rows = [c for c, act in enumerate(actives) if i in act]
            if not rows:
                continue
            sub = bases[rows]
            err = np.abs(_cell_integrals(f, high, sub, edges, w_high)
                         - _cell_integrals(f, low, sub, edges, w_low))
            for c, e in zip(rows, err):
                if config.exceeds(e):
                    failing[c].append(i)

        next_paths, next_bases, next_actives = [], [], []
        for c, path in enumerate(paths):
            fail = tuple(failing[c])
            checks.append(CellCheck(path, depth, actives[c], fail))
            if not fail:
                leaves.append(Leaf(path, depth, bases[c], edges, actives[c]))
                continue
            if depth >= config.max_depth:
                raise DepthExceededError(Parallelepiped(bases[c], edges), fail, config.max_depth)
            kids = child_bases(bases[c], edges)
            for k in range(kids.shape[0]):
                next_paths.append(path + (k,))
                next_bases.append(kids[k])
                next_actives.append(fail)
        paths = next_paths
        actives = next_actives
        bases = np.array(next_bases).reshape(-1, dim)
        edges = edges / 2.0
        depth += 1

    leaves.sort(key=lambda leaf: leaf.path)
    rule = _assemble(leaves, low, dim)
    active_counts = [0] * nfun
    for leaf in leaves:
        for i in leaf.active:
            active_counts[i] += 1
    return AdaptiveResult(
        rule=rule,
        leaf_count=len(leaves),
        max_depth_reached=max(leaf.depth for leaf in leaves),
        per_integrand_active_leaves=active_counts,
        leaves=leaves,
        checks=checks,
        config=config,
    )


def _assemble(leaves, low, dim):
    npts = low.count
    points = np.empty((len(leaves) * npts, dim))
    weights = np.empty(len(leaves) * npts)
    depths = np.array([leaf.depth for leaf in leaves])
    for d in np.unique(depths):
        idx = np.flatnonzero(depths == d)
        first = leaves[idx[0]]
        bases = np.array([leaves[n].base for n in idx])
        cell_edges = np.broadcast_to(first.edges, (idx.shape[0], dim, dim)).copy()
        pts = kernels.map_points(low.points, bases, cell_edges)
        w = low.weights * volume(first.cell)
        for row, n in enumerate(idx):
            points[n * npts:(n + 1) * npts] = pts[row]
            weights[n * npts:(n + 1) * npts] = w
    return RuleND(dim, points, weights)


def integrate(cell, integrands, config=None):
    """Build an adaptive rule and return ``(values, result)``."""
    result = build_adaptive_rule(cell, integrands, config)
    values = [integrate_with_rule(result.rule, f) for f in integrands]
    return values, result
