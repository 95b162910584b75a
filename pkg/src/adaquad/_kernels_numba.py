"""Loop kernels compiled with numba. Same contracts as ``_kernels_numpy``."""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def map_points(ref, bases, edges):
    ncells = bases.shape[0]
    npts, dim = ref.shape
    out = np.empty((ncells, npts, dim))
    for c in range(ncells):
        for p in range(npts):
            for k in range(dim):
                out[c, p, k] = bases[c, k]
            for j in range(dim):
                xi = ref[p, j]
                for k in range(dim):
                    out[c, p, k] += xi * edges[c, j, k]
    return out


@njit(cache=True)
def weighted_sums(values, weights):
    ncells, npts = values.shape
    out = np.empty(ncells)
    for c in range(ncells):
        s = 0.0
        for p in range(npts):
            s += values[c, p] * weights[p]
        out[c] = s
    return out


@njit(cache=True)
def radial_distance(x, center):
    n, dim = x.shape
    out = np.empty(n)
    for i in range(n):
        s = 0.0
        for k in range(dim):
            d = x[i, k] - center[k]
            s += d * d
        out[i] = math.sqrt(s)
    return out


@njit(cache=True)
def gaussian(x, amplitude, alpha, center):
    n, dim = x.shape
    out = np.empty(n)
    for i in range(n):
        s = 0.0
        for k in range(dim):
            d = x[i, k] - center[k]
            s += d * d
        out[i] = amplitude * math.exp(-alpha * s)
    return out


@njit(cache=True)
def heaviside(phi, eps):
    n = phi.shape[0]
    out = np.empty(n)
    for i in range(n):
        t = phi[i] / eps
        if t < -1.0:
            out[i] = 0.0
        elif t > 1.0:
            out[i] = 1.0
        else:
            t2 = t * t
            poly = 128.0 + t * (315.0 + t2 * (-420.0 + t2 * (378.0 + t2 * (-180.0 + t2 * 35.0))))
            out[i] = min(max(poly / 256.0, 0.0), 1.0)
    return out


@njit(cache=True)
def line_distance(x, point, normal):
    n = x.shape[0]
    out = np.empty(n)
    for i in range(n):
        out[i] = (x[i, 0] - point[0]) * normal[0] + (x[i, 1] - point[1]) * normal[1]
    return out


@njit(cache=True)
def polyline_distance(x, vertices):
    n = x.shape[0]
    nseg = vertices.shape[0] - 1
    nx = np.empty(nseg)
    ny = np.empty(nseg)
    for s in range(nseg):
        ax = vertices[s + 1, 0] - vertices[s, 0]
        ay = vertices[s + 1, 1] - vertices[s, 1]
        L = math.sqrt(ax * ax + ay * ay)
        nx[s] = ay / L
        ny[s] = -ax / L
    out = np.empty(n)
    for i in range(n):
        px = x[i, 0]
        py = x[i, 1]
        best = np.inf
        kbest = 0
        tbest = 0.0
        qxb = 0.0
        qyb = 0.0
        for s in range(nseg):
            ax = vertices[s, 0]
            ay = vertices[s, 1]
            abx = vertices[s + 1, 0] - ax
            aby = vertices[s + 1, 1] - ay
            t = ((px - ax) * abx + (py - ay) * aby) / (abx * abx + aby * aby)
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            qx = ax + t * abx
            qy = ay + t * aby
            d2 = (px - qx) ** 2 + (py - qy) ** 2
            if d2 < best:
                best = d2
                kbest = s
                tbest = t
                qxb = qx
                qyb = qy
        sx = nx[kbest]
        sy = ny[kbest]
        if tbest >= 1.0 and kbest + 1 < nseg:
            sx += nx[kbest + 1]
            sy += ny[kbest + 1]
        elif tbest <= 0.0 and kbest > 0:
            sx += nx[kbest - 1]
            sy += ny[kbest - 1]
        dist = math.sqrt(best)
        if (px - qxb) * sx + (py - qyb) * sy < 0.0:
            out[i] = -dist
        else:
            out[i] = dist
    return out


@njit(cache=True)
def _cubic(a, b, d, u):
    return (a * u * u + b) * u + d


@njit(cache=True)
def _root(a, b, d, lo, hi):
    # safeguarded Newton: fall back to bisection whenever the step leaves the bracket
    flo = _cubic(a, b, d, lo)
    u = 0.5 * (lo + hi)
    for _ in range(200):
        f = _cubic(a, b, d, u)
        if f == 0.0:
            return u
        if (f < 0.0) == (flo < 0.0):
            lo = u
            flo = f
        else:
            hi = u
        df = 3.0 * a * u * u + b
        un = u - f / df if df != 0.0 else 0.5 * (lo + hi)
        if not (lo < un < hi):
            un = 0.5 * (lo + hi)
        if abs(un - u) <= 1e-15 * max(1.0, abs(u)) or un == lo or un == hi:
            return un
        u = un
    return u


@njit(cache=True)
def parabola_distance(x, x0, c0, c2):
    n = x.shape[0]
    out = np.empty(n)
    for i in range(n):
        px = x[i, 0]
        py = x[i, 1]
        if c2 == 0.0:
            dist = abs(py - c0)
            out[i] = -dist if py < c0 else dist
            continue
        a = 2.0 * c2 * c2
        b = 1.0 + 2.0 * c2 * (c0 - py)
        d = x0 - px
        bound = 1.0 + max(abs(b), abs(d)) / a
        crit = math.sqrt(max(-b, 0.0) / (3.0 * a))
        best = np.inf
        for piece in range(3):
            if piece == 0:
                lo = -bound
                hi = -crit
            elif piece == 1:
                lo = -crit
                hi = crit
            else:
                lo = crit
                hi = bound
            if not hi > lo:
                continue
            flo = _cubic(a, b, d, lo)
            fhi = _cubic(a, b, d, hi)
            if (flo <= 0.0 and fhi >= 0.0) or (flo >= 0.0 and fhi <= 0.0):
                if flo == 0.0:
                    u = lo
                elif fhi == 0.0:
                    u = hi
                else:
                    u = _root(a, b, d, lo, hi)
                du = u + x0 - px
                dy = c0 + c2 * u * u - py
                dist2 = du * du + dy * dy
                if dist2 < best:
                    best = dist2
        dist = math.sqrt(best)
        if py < c0 + c2 * (px - x0) ** 2:
            out[i] = -dist
        else:
            out[i] = dist
    return out
