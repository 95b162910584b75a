"""Independent reference values for the test suite.

Nothing here imports adaquad: nodes come from numpy's Gauss-Legendre
routine and closed forms are written out by hand.
"""

import math

import numpy as np
from numpy.polynomial.legendre import leggauss


def gauss01(m):
    x, w = leggauss(m)
    return (x + 1.0) / 2.0, w / 2.0


def tensor_integral(f, base, edges, m):
    """Integral over a parallelepiped with an m^dim numpy Gauss rule."""
    base = np.asarray(base, float)
    edges = np.asarray(edges, float)
    dim = base.shape[0]
    x, w = gauss01(m)
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    wgrid = np.meshgrid(*([w] * dim), indexing="ij")
    xi = np.stack([g.ravel() for g in grids], axis=1)
    wt = np.prod(np.stack([g.ravel() for g in wgrid], axis=1), axis=1)
    pts = base + xi @ edges
    return abs(np.linalg.det(edges)) * np.dot(wt, f(pts))


def erf_box_gaussian(amplitude, alpha, center, lower, upper):
    total = amplitude
    s = math.sqrt(alpha)
    for c, lo, hi in zip(center, lower, upper):
        total *= 0.5 * math.sqrt(math.pi / alpha) * (math.erf(s * (hi - c)) - math.erf(s * (lo - c)))
    return total


def radial_cube_integral(g, n, m=96):
    """Integral of g(|x|) over [-1, 1]^n for n <= 3 by reduction to a wedge.

    Points lambda*(1, s, t) with 0 <= t <= s <= 1 cover one of the 2^n n!
    congruent wedges; the Jacobian is lambda^(n-1). The integrand is smooth
    in (lambda, s, t), so plain Gauss-Legendre converges spectrally.
    """
    lam, wl = gauss01(m)
    if n == 1:
        return 2.0 * np.dot(wl, g(lam))
    if n == 2:
        total = 0.0
        for s, ws in zip(lam, wl):
            total += ws * np.dot(wl, g(lam * math.sqrt(1 + s * s)) * lam)
        return 8.0 * total
    if n == 3:
        total = 0.0
        for s, ws in zip(lam, wl):
            for t, wt in zip(lam * s, wl * s):
                rho = math.sqrt(1 + s * s + t * t)
                total += ws * wt * np.dot(wl, g(lam * rho) * lam ** 2)
        return 48.0 * total
    raise ValueError("n must be 1, 2 or 3")


LINEAR_CUSP_SQUARE = 4.0 - (4.0 / 3.0) * (math.sqrt(2.0) + math.log(1.0 + math.sqrt(2.0)))


def psi_eq2(phi, eps):
    """Regularized Heaviside straight from the integrated polynomial."""
    if phi < -eps:
        return 0.0
    if phi > eps:
        return 1.0
    return (128 * eps ** 9 + 315 * phi * eps ** 8 - 420 * phi ** 3 * eps ** 6
            + 378 * phi ** 5 * eps ** 4 - 180 * phi ** 7 * eps ** 2 + 35 * phi ** 9) / (256 * eps ** 9)


def _chord_length(point, normal, s):
    """Length of {x in [0,1]^2 : normal.(x - point) = s}."""
    n = np.asarray(normal, float)
    p = np.asarray(point, float) + s * n
    d = np.array([-n[1], n[0]])
    lo, hi = -np.inf, np.inf
    for k in range(2):
        if abs(d[k]) < 1e-300:
            if not (0.0 <= p[k] <= 1.0):
                return 0.0
            continue
        a, b = (0.0 - p[k]) / d[k], (1.0 - p[k]) / d[k]
        lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
    return max(hi - lo, 0.0)


def straight_heaviside_integral(point, normal, eps):
    """Integral of psi(phi(x), eps) over the unit square for a straight interface.

    Uses the coarea formula: integral of psi(s) * chord(s) ds. Between
    breakpoints (vertex offsets and +-eps) the integrand is a polynomial of
    degree <= 10, so a 12-point Gauss rule per piece is exact.
    """
    n = np.asarray(normal, float)
    n = n / np.linalg.norm(n)
    corners = np.array([[0, 0], [1, 0], [0, 1], [1, 1]], float)
    offs = (corners - np.asarray(point, float)) @ n
    smin, smax = offs.min(), offs.max()
    breaks = sorted(set([smin, smax] + [o for o in offs] +
                        [b for b in (-eps, eps) if smin < b < smax]))
    x, w = gauss01(12)
    total = 0.0
    for a, b in zip(breaks, breaks[1:]):
        if b - a <= 0:
            continue
        s = a + (b - a) * x
        vals = np.array([psi_eq2(si, eps) * _chord_length(point, n, si) for si in s])
        total += (b - a) * np.dot(w, vals)
    return total


def composite_square_integral(f, cells=512, m=6):
    """Composite m x m Gauss rule on a cells x cells grid over the unit square."""
    x, w = gauss01(m)
    nodes = ((np.arange(cells)[:, None] + x[None, :]) / cells).ravel()
    wts = np.tile(w, cells) / cells
    total = 0.0
    for xv, wv in zip(nodes.reshape(cells, m), wts.reshape(cells, m)):
        pts = np.empty((m * nodes.size, 2))
        pts[:, 0] = np.repeat(xv, nodes.size)
        pts[:, 1] = np.tile(nodes, m)
        ww = np.repeat(wv, nodes.size) * np.tile(wts, m)
        total += np.dot(ww, f(pts))
    return total


def polyline_distance_bruteforce(point, vertices, samples=200001):
    """Unsigned distance to a polyline by dense sampling of each segment."""
    v = np.asarray(vertices, float)
    best = np.inf
    t = np.linspace(0.0, 1.0, samples)[:, None]
    for a, b in zip(v[:-1], v[1:]):
        pts = a + t * (b - a)
        best = min(best, np.min(np.linalg.norm(pts - point, axis=1)))
    return best


def curve_distance_bruteforce(point, c0, c2, x0, lo=-3.0, hi=4.0, samples=2000001):
    """Unsigned distance to y = c0 + c2 (x - x0)^2 by sampling then local refinement."""
    xs = np.linspace(lo, hi, samples)
    d2 = (xs - point[0]) ** 2 + (c0 + c2 * (xs - x0) ** 2 - point[1]) ** 2
    k = int(np.argmin(d2))
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, samples - 1)]
    for _ in range(200):  # golden-section on the bracketing pair of samples
        m1 = b - (b - a) / 1.618033988749895
        m2 = a + (b - a) / 1.618033988749895
        f1 = (m1 - point[0]) ** 2 + (c0 + c2 * (m1 - x0) ** 2 - point[1]) ** 2
        f2 = (m2 - point[0]) ** 2 + (c0 + c2 * (m2 - x0) ** 2 - point[1]) ** 2
        if f1 < f2:
            b = m2
        else:
            a = m1
    u = 0.5 * (a + b)
    return math.sqrt((u - point[0]) ** 2 + (c0 + c2 * (u - x0) ** 2 - point[1]) ** 2)
