"""Integrand families: Gaussian bumps, radial cusps, regularized Heaviside."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .errors import InvalidArgumentError

# epsilon / h ratios of the five-member Heaviside family, sharpest last
HEAVISIDE_RATIOS = (2.5, 0.85, 0.265, 0.085, 0.0225)


@dataclass(frozen=True, eq=False)
class Integrand:
    """Scalar field on R^dim evaluated in batches.

    ``evaluator`` maps a ``(npts, dim)`` array to ``(npts,)`` values and must
    be deterministic and free of side effects. ``kind`` and ``params`` let
    oracles recognise families with closed-form integrals.
    """

    dim: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    label: str
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, points):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(1, -1)
        if points.shape[1] != self.dim:
            raise InvalidArgumentError(
                f"{self.label}: expected points of dimension {self.dim}, got {points.shape[1]}")
        return np.asarray(self.evaluator(np.ascontiguousarray(points)), dtype=float)

    def __repr__(self):
        return f"Integrand({self.label!r}, dim={self.dim})"


def constant(value, dim):
    value = float(value)

    def evaluate(x):
        return np.full(x.shape[0], value)

    return Integrand(dim, evaluate, f"constant({value:g})", "constant", {"value": value})


def gaussian_bump(amplitude, alpha, center):
    """``amplitude * exp(-alpha * |x - center|^2)``."""
    if not alpha > 0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    center = np.array(center, dtype=float).reshape(-1)
    amplitude = float(amplitude)
    alpha = float(alpha)

    def evaluate(x):
        return kernels.gaussian(x, amplitude, alpha, center)

    label = f"gaussian({amplitude:g},{alpha:g},{','.join(f'{c:g}' for c in center)})"
    return Integrand(center.shape[0], evaluate, label, "gaussian",
                     {"amplitude": amplitude, "alpha": alpha, "center": center})


def _origin(dim, center):
    if center is None:
        return np.zeros(dim)
    center = np.array(center, dtype=float).reshape(-1)
    if center.shape[0] != dim:
        raise InvalidArgumentError(f"center must have {dim} coordinates")
    return center


def linear_cusp(dim, center=None):
    """``1 - |x - center|``; C0 with a derivative jump at ``center``."""
    c = _origin(dim, center)

    def evaluate(x):
        return 1.0 - kernels.radial_distance(x, c)

    return Integrand(dim, evaluate, f"linear_cusp(dim={dim})", "linear_cusp", {"center": c})


def exp_cusp(alpha, dim, center=None):
    """``exp(-alpha * |x - center|)``; cusp at ``center``."""
    if not alpha > 0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    alpha = float(alpha)
    c = _origin(dim, center)

    def evaluate(x):
        return np.exp(-alpha * kernels.radial_distance(x, c))

    return Integrand(dim, evaluate, f"exp_cusp({alpha:g},dim={dim})", "exp_cusp",
                     {"alpha": alpha, "center": c})


def regularized_heaviside(phi, eps):
    """C4 ramp from 0 (``phi < -eps``) to 1 (``phi > eps``).

    Scalars in, scalar out; arrays are evaluated elementwise.
    """
    if not eps > 0:
        raise InvalidArgumentError(f"eps must be positive, got {eps}")
    arr = np.asarray(phi, dtype=float)
    out = kernels.heaviside(np.ascontiguousarray(arr.reshape(-1)), float(eps))
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


@dataclass(frozen=True, eq=False)
class Interface2D:
    """Zero level set in the plane.

    kind ``straight``: ``point`` and unit ``normal``.
    kind ``kinked``: polyline ``vertices``; positive to the right of travel.
    kind ``quadratic``: curve ``y = c0 + c2 (x - x0)^2``; positive above.
    """

    kind: str
    params: dict

    def __post_init__(self):
        if self.kind not in ("straight", "kinked", "quadratic"):
            raise InvalidArgumentError(f"unknown interface kind {self.kind!r}")

    @classmethod
    def straight(cls, point, normal):
        normal = np.asarray(normal, dtype=float)
        n = np.linalg.norm(normal)
        if not n > 0:
            raise InvalidArgumentError("normal must be nonzero")
        return cls("straight", {"point": np.asarray(point, dtype=float), "normal": normal / n})

    @classmethod
    def through(cls, p0, p1):
        """Straight line through two points, positive to the right of p0 -> p1."""
        p0 = np.asarray(p0, dtype=float)
        d = np.asarray(p1, dtype=float) - p0
        return cls.straight(p0, (d[1], -d[0]))

    @classmethod
    def kinked(cls, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 2:
            raise InvalidArgumentError("kinked interface needs at least two 2-D vertices")
        return cls("kinked", {"vertices": v})

    @classmethod
    def quadratic(cls, c0, c2, x0):
        return cls("quadratic", {"c0": float(c0), "c2": float(c2), "x0": float(x0)})

    def distance(self, points):
        x = np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=float)))
        p = self.params
        if self.kind == "straight":
            return kernels.line_distance(x, p["point"], p["normal"])
        if self.kind == "kinked":
            return kernels.polyline_distance(x, p["vertices"])
        return kernels.parabola_distance(x, p["x0"], p["c0"], p["c2"])


def default_interface(kind):
    """Interfaces crossing the unit square used by the Heaviside studies."""
    if kind == "straight":
        return Interface2D.through((0.55, 0.0), (0.35, 1.0))
    if kind == "kinked":
        return Interface2D.kinked([(0.55, 0.0), (0.45, 0.5), (0.62, 1.0)])
    if kind == "quadratic":
        return Interface2D.quadratic(0.5, 0.3, 0.5)
    raise InvalidArgumentError(f"unknown interface kind {kind!r}")


def signed_distance(interface, point):
    """Signed distance of one 2-D point to ``interface``."""
    return float(interface.distance(np.asarray(point, dtype=float).reshape(1, 2))[0])


def heaviside_integrand(interface, eps):
    eps = float(eps)
    if not eps > 0:
        raise InvalidArgumentError(f"eps must be positive, got {eps}")

    def evaluate(x):
        return kernels.heaviside(interface.distance(x), eps)

    return Integrand(2, evaluate, f"heaviside({interface.kind},eps={eps:g})", "heaviside",
                     {"interface": interface, "eps": eps})


def heaviside_family(interface, h=1.0):
    """The five regularized-Heaviside integrands with eps = h * ratio."""
    if not h > 0:
        raise InvalidArgumentError(f"element size must be positive, got {h}")
    return [heaviside_integrand(interface, h * r) for r in HEAVISIDE_RATIOS]
