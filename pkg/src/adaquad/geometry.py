"""Parallelepiped cells, affine mapping of rules, and 2^dim subdivision."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateCellError, InvalidArgumentError
from .gauss_rules import RuleND

DEGENERACY_RTOL = 1e-14


def _det(a):
    """Determinant, exact for diagonal matrices and under power-of-two scaling."""
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
                     - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
                     + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    m = a.astype(float).copy()
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0.0:
            return 0.0
        if p != k:
            m[[k, p]] = m[[p, k]]
            det = -det
        det *= m[k, k]
        if k + 1 < n:
            m[k + 1:, k:] -= np.outer(m[k + 1:, k] / m[k, k], m[k, k:])
    return float(det)


@dataclass(frozen=True, eq=False)
class Parallelepiped:
    """Cell ``{base + sum_j t_j edges[j] : t in [0, 1]^dim}``."""

    base: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        base = np.array(self.base, dtype=float).reshape(-1)
        edges = np.array(self.edges, dtype=float)
        dim = base.shape[0]
        if dim < 1 or edges.shape != (dim, dim):
            raise InvalidArgumentError(
                f"edges must be a {dim}x{dim} matrix, got shape {edges.shape}")
        if not (np.all(np.isfinite(base)) and np.all(np.isfinite(edges))):
            raise InvalidArgumentError("cell coordinates must be finite")
        base.flags.writeable = False
        edges.flags.writeable = False
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "edges", edges)
        scale = float(np.prod(np.linalg.norm(edges, axis=1)))
        if not abs(self.det) > DEGENERACY_RTOL * scale:
            raise DegenerateCellError(f"cell edges are linearly dependent (det={self.det:g})")

    @property
    def dim(self):
        return self.base.shape[0]

    @property
    def det(self):
        return _det(self.edges)

    @classmethod
    def from_vertices(cls, rows):
        """Build from ``dim + 1`` rows: the base point, then the ``dim`` vertices adjacent to it."""
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1] + 1:
            raise InvalidArgumentError(
                f"expected (dim+1) x dim vertex rows, got shape {rows.shape}")
        return cls(rows[0], rows[1:] - rows[0])

    @classmethod
    def box(cls, lower, upper):
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        return cls(lower, np.diag(upper - lower))

    @classmethod
    def unit_cube(cls, dim):
        return cls(np.zeros(dim), np.eye(dim))

    @classmethod
    def symmetric_cube(cls, dim, half_width=1.0):
        return cls.box(-half_width * np.ones(dim), half_width * np.ones(dim))

    def vertices(self):
        """Base followed by the adjacent vertices, the inverse of :meth:`from_vertices`."""
        return np.vstack([self.base, self.base + self.edges])

    def axis_aligned_bounds(self):
        """``(lower, upper)`` if the cell is an axis-aligned box, else ``None``."""
        off = self.edges - np.diag(np.diag(self.edges))
        if np.any(off != 0.0):
            return None
        far = self.base + np.diag(self.edges)
        return np.minimum(self.base, far), np.maximum(self.base, far)

    def contains(self, points, atol=0.0):
        """Boolean mask of points inside the closed cell (local coordinates in [0, 1])."""
        local = np.linalg.solve(self.edges.T, (np.atleast_2d(points) - self.base).T).T
        return np.all((local >= -atol) & (local <= 1.0 + atol), axis=1)

    def __repr__(self):
        return f"Parallelepiped(base={self.base.tolist()}, edges={self.edges.tolist()})"


def volume(cell):
    """|det(edges)| of the cell."""
    v = abs(cell.det)
    if not v > 0.0:
        raise DegenerateCellError("cell has zero volume")
    return v


def map_rule(ref, cell):
    """Map a rule on [0, 1]^dim onto ``cell``; weights scale by the cell volume."""
    if ref.dim != cell.dim:
        raise InvalidArgumentError(
            f"rule dimension {ref.dim} does not match cell dimension {cell.dim}")
    points = kernels.map_points(ref.points, cell.base[None, :], cell.edges[None, :, :])[0]
    return RuleND(ref.dim, points, ref.weights * volume(cell))


def child_bases(base, edges):
    """Base points of the 2^dim children in odometer order (bit 0 fastest)."""
    dim = base.shape[0]
    half = edges / 2.0
    out = np.empty((1 << dim, dim))
    for k in range(1 << dim):
        b = base.copy()
        for j in range(dim):
            if (k >> j) & 1:
                b = b + half[j]
        out[k] = b
    return out


def subdivide(cell):
    """Split ``cell`` into 2^dim congruent children with halved edges."""
    half = cell.edges / 2.0
    return [Parallelepiped(b, half) for b in child_bases(cell.base, cell.edges)]
