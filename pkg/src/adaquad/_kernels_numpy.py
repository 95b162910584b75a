"""Vectorized numpy kernels. Reference path and fallback when numba is off."""

import numpy as np


def map_points(ref, bases, edges):
    """Affine images of reference points for a batch of cells.

    Parameters
    ----------
    ref : (npts, dim) ndarray
    bases : (ncells, dim) ndarray
    edges : (ncells, dim, dim) ndarray, row j is the j-th edge of a cell

    Returns
    -------
    (ncells, npts, dim) ndarray
    """
    dim = ref.shape[1]
    out = np.broadcast_to(bases[:, None, :], (bases.shape[0], ref.shape[0], dim)).copy()
    # accumulate edge by edge so single-cell and batched calls round identically
    for j in range(dim):
        out += ref[None, :, j, None] * edges[:, None, j, :]
    return out


def weighted_sums(values, weights):
    """Row-wise ``values @ weights`` for a (ncells, npts) block."""
    # overflow is reported by the caller's finiteness check
    with np.errstate(over="ignore", invalid="ignore"):
        return (values * weights).sum(axis=1)


def radial_distance(x, center):
    d = x - center
    return np.sqrt((d * d).sum(axis=1))


def gaussian(x, amplitude, alpha, center):
    d = x - center
    return amplitude * np.exp(-alpha * (d * d).sum(axis=1))


def heaviside(phi, eps):
    t = phi / eps
    t2 = t * t
    # Horner form in t of (128 + 315t - 420t^3 + 378t^5 - 180t^7 + 35t^9)/256
    poly = 128.0 + t * (315.0 + t2 * (-420.0 + t2 * (378.0 + t2 * (-180.0 + t2 * 35.0))))
    # clamp: cancellation near t = -1 can leave a -1e-17 residue
    out = np.clip(poly / 256.0, 0.0, 1.0)
    out = np.where(t < -1.0, 0.0, out)
    out = np.where(t > 1.0, 1.0, out)
    return out


def line_distance(x, point, normal):
    return (x[:, 0] - point[0]) * normal[0] + (x[:, 1] - point[1]) * normal[1]


def polyline_distance(x, vertices):
    """Signed distance from 2-D points to an open polyline.

    The sign is positive on the right-hand side when walking from the first
    vertex to the last. Nearest points at an interior vertex take the sign of
    the summed unit normals of the two adjacent segments.
    """
    px = x[:, 0][:, None]
    py = x[:, 1][:, None]
    a = vertices[:-1]
    b = vertices[1:]
    ab = b - a
    length2 = (ab * ab).sum(axis=1)
    t = ((px - a[:, 0]) * ab[:, 0] + (py - a[:, 1]) * ab[:, 1]) / length2
    t = np.clip(t, 0.0, 1.0)
    qx = a[:, 0] + t * ab[:, 0]
    qy = a[:, 1] + t * ab[:, 1]
    d2 = (px - qx) ** 2 + (py - qy) ** 2
    k = np.argmin(d2, axis=1)
    rows = np.arange(x.shape[0])
    dist = np.sqrt(d2[rows, k])
    tk = t[rows, k]

    seglen = np.sqrt(length2)
    nx = ab[:, 1] / seglen
    ny = -ab[:, 0] / seglen
    sx = nx[k].copy()
    sy = ny[k].copy()
    nseg = ab.shape[0]
    at_end = (tk >= 1.0) & (k + 1 < nseg)
    at_start = (tk <= 0.0) & (k > 0)
    sx[at_end] += nx[k[at_end] + 1]
    sy[at_end] += ny[k[at_end] + 1]
    sx[at_start] += nx[k[at_start] - 1]
    sy[at_start] += ny[k[at_start] - 1]
    qxk = qx[rows, k]
    qyk = qy[rows, k]
    side = (x[:, 0] - qxk) * sx + (x[:, 1] - qyk) * sy
    return np.where(side < 0.0, -dist, dist)


def _cubic(a, b, d, u):
    return (a * u * u + b) * u + d


def _bisect(a, b, d, lo, hi, iters=200):
    flo = _cubic(a, b, d, lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        fm = _cubic(a, b, d, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def parabola_distance(x, x0, c0, c2):
    """Signed distance to the curve ``y = c0 + c2 (x - x0)**2``.

    Positive above the curve. The foot point solves the depressed cubic
    ``a u^3 + b u + d = 0`` (``u = t - x0``), bracketed on its monotone pieces
    and bisected to machine precision.
    """
    px = x[:, 0]
    py = x[:, 1]
    n = px.shape[0]
    d = x0 - px
    if c2 == 0.0:
        dist = np.abs(py - c0)
        return np.where(py < c0, -dist, dist)

    a = 2.0 * c2 * c2
    b = 1.0 + 2.0 * c2 * (c0 - py)
    bound = 1.0 + np.maximum(np.abs(b), np.abs(d)) / a
    crit = np.sqrt(np.maximum(-b, 0.0) / (3.0 * a))
    intervals = ((-bound, -crit), (-crit, crit), (crit, bound))

    best = np.full(n, np.inf)
    for lo, hi in intervals:
        flo = _cubic(a, b, d, lo)
        fhi = _cubic(a, b, d, hi)
        ok = (flo <= 0.0) & (fhi >= 0.0) | (flo >= 0.0) & (fhi <= 0.0)
        ok &= hi > lo
        lo_ = np.where(ok, lo, -bound)
        hi_ = np.where(ok, hi, bound)
        u = _bisect(a, b, d, lo_, hi_)
        du = u + x0 - px
        dy = c0 + c2 * u * u - py
        dist2 = du * du + dy * dy
        best = np.where(ok, np.minimum(best, dist2), best)
    dist = np.sqrt(best)
    below = py < c0 + c2 * (px - x0) ** 2
    return np.where(below, -dist, dist)
