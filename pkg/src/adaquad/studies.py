"""Convergence-rate and strategy-comparison studies."""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import erf

from .adaptive import AdaptiveConfig, build_adaptive_rule, integrate_with_rule
from .errors import InsufficientDataError, InvalidArgumentError
from .gauss_rules import reference_rule
from .geometry import map_rule, volume

REFERENCE_TOL = 1e-12
FLOOR_FACTOR = 100.0


class Reference(NamedTuple):
    value: float
    source: str


@dataclass(frozen=True)
class ConvergenceRecord:
    points_per_direction: int
    total_points: int
    min_dist_to_cusp: float
    abs_error: float
    integral: float
    reference: float


@dataclass(frozen=True)
class ComparisonRecord:
    strategy: str
    total_points: int
    max_rel_error: float
    parameter: float
    integrals: tuple
    references: tuple


# ---------------------------------------------------------------- closed forms

def _gaussian_box(params, lower, upper):
    a = params["alpha"]
    s = math.sqrt(a)
    total = params["amplitude"]
    for lo, hi, c in zip(lower, upper, params["center"]):
        total *= 0.5 * math.sqrt(math.pi / a) * (erf(s * (hi - c)) - erf(s * (lo - c)))
    return float(total)


def _abs_moment_1d(lo, hi, c):
    """Integral of |x - c| over [lo, hi]."""
    def prim(x):
        return 0.5 * (x - c) * abs(x - c)
    return prim(hi) - prim(lo)


def _exp_abs_1d(alpha, lo, hi, c):
    """Integral of exp(-alpha |x - c|) over [lo, hi]."""
    def prim(x):
        u = x - c
        return math.copysign(-math.expm1(-alpha * abs(u)) / alpha, u)
    return prim(hi) - prim(lo)


# integral of |x| over [-1, 1]^2
_ABS_SQUARE = (4.0 / 3.0) * (math.sqrt(2.0) + math.log(1.0 + math.sqrt(2.0)))


def _closed_form(f, cell):
    bounds = cell.axis_aligned_bounds()
    if f.kind == "constant":
        return f.params["value"] * volume(cell), "closed-form:constant"
    if bounds is None:
        return None
    lower, upper = bounds
    dim = cell.dim
    if f.kind == "gaussian":
        return _gaussian_box(f.params, lower, upper), "closed-form:erf"
    if f.kind == "linear_cusp" and dim == 1:
        c = f.params["center"][0]
        return (upper[0] - lower[0]) - _abs_moment_1d(lower[0], upper[0], c), "closed-form:linear_cusp_1d"
    if f.kind == "linear_cusp" and dim == 2:
        c = f.params["center"]
        half = 0.5 * (upper - lower)
        mid = 0.5 * (upper + lower)
        if half[0] == half[1] and np.all(mid == c):
            s = half[0]
            return 4.0 * s * s - s ** 3 * _ABS_SQUARE, "closed-form:linear_cusp_2d"
        return None
    if f.kind == "exp_cusp" and dim == 1:
        return (_exp_abs_1d(f.params["alpha"], lower[0], upper[0], f.params["center"][0]),
                "closed-form:exp_cusp_1d")
    return None


def reference_integral(f, cell, tol=REFERENCE_TOL):
    """Best available value of the integral of ``f`` over ``cell``.

    Closed forms are used where known (constants; Gaussians on axis-aligned
    boxes; linear cusps in 1-D and on squares centred at the cusp; the
    exponential cusp in 1-D); anything else falls back to an adaptive rule
    built at ``tol``.
    """
    known = _closed_form(f, cell)
    if known is not None:
        return Reference(float(known[0]), known[1])
    result = build_adaptive_rule(cell, [f], AdaptiveConfig(tol=tol))
    return Reference(integrate_with_rule(result.rule, f), f"adaptive:tol={tol:g}")


# ---------------------------------------------------------------- studies

def tensor_convergence_study(f, cell, m_range, cusp, reference=None):
    """Integrate ``f`` with the mapped m-point tensor rule for each m in ``m_range``."""
    m_range = list(m_range)
    if not m_range:
        raise InvalidArgumentError("m_range is empty")
    if any(b <= a for a, b in zip(m_range, m_range[1:])):
        raise InvalidArgumentError("m_range must be strictly increasing")
    cusp = np.asarray(cusp, dtype=float).reshape(-1)
    if reference is None:
        reference = reference_integral(f, cell).value
    records = []
    for m in m_range:
        rule = map_rule(reference_rule(m, cell.dim), cell)
        value = integrate_with_rule(rule, f)
        dmin = float(np.min(np.linalg.norm(rule.points - cusp, axis=1)))
        records.append(ConvergenceRecord(m, rule.count, dmin, abs(value - reference),
                                         value, reference))
    return records


def fit_rate(records, x_field="min_dist"):
    """Least-squares slope of log(abs_error) against log(x).

    ``x_field`` is ``"min_dist"`` or ``"points_per_direction"``. Records whose
    error sits within 100 machine epsilons of the reference are dropped first.
    """
    if x_field == "min_dist":
        get = lambda r: r.min_dist_to_cusp  # noqa: E731
    elif x_field == "points_per_direction":
        get = lambda r: float(r.points_per_direction)  # noqa: E731
    else:
        raise InvalidArgumentError(f"unknown x_field {x_field!r}")
    eps = np.finfo(float).eps
    usable = [r for r in records
              if r.abs_error > FLOOR_FACTOR * eps * max(abs(r.reference), 1e-300) and get(r) > 0]
    xs = np.array([get(r) for r in usable])
    if len(usable) < 3 or np.unique(xs).size < 3:
        raise InsufficientDataError(
            f"need at least 3 records with nonzero error and distinct x, have {len(usable)}")
    ys = np.array([r.abs_error for r in usable])
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def _max_rel_error(values, refs):
    return max(abs(v - r) / abs(r) for v, r in zip(values, refs))


def compare_strategies(family, cell, tol_sweep, m_sweep, references=None, config=None):
    """Tensor-product versus adaptive accuracy per point count.

    One ``tensor`` record per m, then one ``adaptive`` record per tolerance;
    the adaptive rule is shared across the whole family.
    """
    family = list(family)
    if not family or not list(tol_sweep) or not list(m_sweep):
        raise InvalidArgumentError("family and both sweeps must be nonempty")
    if references is None:
        references = [reference_integral(f, cell).value for f in family]
    references = tuple(float(r) for r in references)
    base = config or AdaptiveConfig()
    records = []
    for m in m_sweep:
        rule = map_rule(reference_rule(m, cell.dim), cell)
        values = tuple(integrate_with_rule(rule, f) for f in family)
        records.append(ComparisonRecord("tensor", rule.count,
                                        _max_rel_error(values, references), m, values, references))
    for tol in tol_sweep:
        cfg = AdaptiveConfig(base.nsp_low, base.nsp_high, tol, base.max_depth, base.comparator)
        result = build_adaptive_rule(cell, family, cfg)
        values = tuple(integrate_with_rule(result.rule, f) for f in family)
        records.append(ComparisonRecord("adaptive", result.rule.count,
                                        _max_rel_error(values, references), tol, values, references))
    return records


def points_to_reach(records, strategy, level):
    """Fewest points among ``strategy`` records with max_rel_error <= level, or None."""
    hits = [r.total_points for r in records if r.strategy == strategy and r.max_rel_error <= level]
    return min(hits) if hits else None


def efficiency_table(records, levels):
    """``(level, tensor_points, adaptive_points)`` for each accuracy level."""
    return [(lvl, points_to_reach(records, "tensor", lvl), points_to_reach(records, "adaptive", lvl))
            for lvl in levels]
