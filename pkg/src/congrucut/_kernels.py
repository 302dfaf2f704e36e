"""Compiled inner loops for the coverage objective.

Everything here works on a region that has been translated to its centroid
and scaled by its diameter, so the kernels never see the caller's units.
Polygons are passed as parallel ``xs``/``ys`` arrays plus a vertex count.
"""

import math

import numpy as np
from numba import njit

MAXV = 48
AREA_EPS = 1e-13  # normalized units; region diameter is 1


@njit(cache=True)
def clip_into(xs, ys, n, a, b, c, ox, oy):
    """Keep the part of a convex polygon with ``a*x + b*y + c >= 0``."""
    m = 0
    if n == 0:
        return 0
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        di = a * xs[i] + b * ys[i] + c
        dj = a * xs[j] + b * ys[j] + c
        if di >= 0.0:
            ox[m] = xs[i]
            oy[m] = ys[i]
            m += 1
        if (di > 0.0 and dj < 0.0) or (di < 0.0 and dj > 0.0):
            t = di / (di - dj)
            ox[m] = xs[i] + t * (xs[j] - xs[i])
            oy[m] = ys[i] + t * (ys[j] - ys[i])
            m += 1
    if m < 3:
        return 0
    return m


@njit(cache=True)
def shoelace(xs, ys, n):
    s = 0.0
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        s += xs[i] * ys[j] - xs[j] * ys[i]
    return 0.5 * s


@njit(cache=True)
def piece_into(rx, ry, rn, p, reflect, ox, oy):
    """Largest piece for one (line, isometry) configuration.

    ``p`` holds ``(offset, phi, theta, tx, ty)``. The line is
    ``{q : n.q = offset}`` with ``n = (-sin phi, cos phi)``; the first side is
    ``n.q >= offset``. The isometry is ``q -> Rot(theta) Mirror q + (tx, ty)``.
    Writes the piece into ``ox``/``oy`` and returns its vertex count.
    """
    off = p[0]
    nx = -math.sin(p[1])
    ny = math.cos(p[1])
    ct = math.cos(p[2])
    st = math.sin(p[2])
    tx = p[3]
    ty = p[4]
    ms = -1.0 if reflect else 1.0

    ax = np.empty(MAXV)
    ay = np.empty(MAXV)
    bx = np.empty(MAXV)
    by = np.empty(MAXV)

    # first side of the line
    m = clip_into(rx, ry, rn, nx, ny, -off, ax, ay)
    if m == 0:
        return 0

    # preimage of the region under g: vertices M R^T (v - t), ccw restored
    gx = np.empty(rn)
    gy = np.empty(rn)
    for i in range(rn):
        vx = rx[i] - tx
        vy = ry[i] - ty
        ux = ct * vx + st * vy
        uy = -st * vx + ct * vy
        k = rn - 1 - i if reflect else i
        gx[k] = ux
        gy[k] = ms * uy
    for i in range(rn):
        j = i + 1
        if j == rn:
            j = 0
        ea = -(gy[j] - gy[i])
        eb = gx[j] - gx[i]
        ec = -(ea * gx[i] + eb * gy[i])
        m = clip_into(ax, ay, m, ea, eb, ec, bx, by)
        if m == 0:
            return 0
        for q in range(m):
            ax[q] = bx[q]
            ay[q] = by[q]

    # preimage of the second side: n.(R M q + t) <= off
    wx = ct * nx + st * ny
    wy = ms * (-st * nx + ct * ny)
    m = clip_into(ax, ay, m, -wx, -wy, off - (nx * tx + ny * ty), ox, oy)
    return m


@njit(cache=True)
def piece_area(rx, ry, rn, p, reflect):
    ox = np.empty(MAXV)
    oy = np.empty(MAXV)
    m = piece_into(rx, ry, rn, p, reflect, ox, oy)
    if m == 0:
        return 0.0
    a = shoelace(ox, oy, m)
    if a < AREA_EPS:
        return 0.0
    return a


@njit(cache=True)
def _objective(rx, ry, rn, p, reflect, scale):
    return -piece_area(rx, ry, rn, p, reflect) * scale


@njit(cache=True)
def nelder_mead(rx, ry, rn, reflect, scale, x0, steps, max_evals, xtol, ftol):
    """Downhill simplex on the negated coverage; returns ``(x, f, evals)``."""
    n = x0.shape[0]
    # adaptive coefficients for moderate dimension
    rho = 1.0
    chi = 1.0 + 2.0 / n
    psi = 0.75 - 1.0 / (2.0 * n)
    sigma = 1.0 - 1.0 / n

    sim = np.empty((n + 1, n))
    fs = np.empty(n + 1)
    sim[0] = x0
    fs[0] = _objective(rx, ry, rn, x0, reflect, scale)
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += steps[i]
        fs[i + 1] = _objective(rx, ry, rn, sim[i + 1], reflect, scale)
    evals = n + 1

    xbar = np.empty(n)
    while evals < max_evals:
        order = np.argsort(fs)
        sim = sim[order]
        fs = fs[order]
        spread = 0.0
        for i in range(1, n + 1):
            for k in range(n):
                d = abs(sim[i, k] - sim[0, k])
                if d > spread:
                    spread = d
        if spread <= xtol and fs[n] - fs[0] <= ftol:
            break
        for k in range(n):
            xbar[k] = 0.0
            for i in range(n):
                xbar[k] += sim[i, k]
            xbar[k] /= n
        xr = xbar + rho * (xbar - sim[n])
        fr = _objective(rx, ry, rn, xr, reflect, scale)
        evals += 1
        if fr < fs[0]:
            xe = xbar + chi * (xr - xbar)
            fe = _objective(rx, ry, rn, xe, reflect, scale)
            evals += 1
            if fe < fr:
                sim[n] = xe
                fs[n] = fe
            else:
                sim[n] = xr
                fs[n] = fr
        elif fr < fs[n - 1]:
            sim[n] = xr
            fs[n] = fr
        else:
            if fr < fs[n]:
                xc = xbar + psi * (xr - xbar)
            else:
                xc = xbar - psi * (xbar - sim[n])
            fc = _objective(rx, ry, rn, xc, reflect, scale)
            evals += 1
            if fc < min(fr, fs[n]):
                sim[n] = xc
                fs[n] = fc
            else:
                for i in range(1, n + 1):
                    sim[i] = sim[0] + sigma * (sim[i] - sim[0])
                    fs[i] = _objective(rx, ry, rn, sim[i], reflect, scale)
                evals += n
    best = np.argmin(fs)
    return sim[best].copy(), fs[best], evals


@njit(cache=True)
def compass(rx, ry, rn, reflect, scale, x0, step0, xtol, max_evals):
    """Axis-aligned pattern search used to polish a simplex result."""
    n = x0.shape[0]
    x = x0.copy()
    f = _objective(rx, ry, rn, x, reflect, scale)
    evals = 1
    step = step0
    while step >= xtol and evals < max_evals:
        improved = False
        for k in range(n):
            for sgn in (1.0, -1.0):
                y = x.copy()
                y[k] += sgn * step
                fy = _objective(rx, ry, rn, y, reflect, scale)
                evals += 1
                if fy < f:
                    x = y
                    f = fy
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return x, f, evals


@njit(cache=True)
def local_search(rx, ry, rn, reflect, scale, x0, step, max_evals, xtol, ftol):
    """Simplex restarts until they stop paying, then a compass polish."""
    steps = np.full(x0.shape[0], step)
    x, f, used = nelder_mead(rx, ry, rn, reflect, scale, x0, steps, max_evals, xtol, ftol)
    for _ in range(6):
        if used >= 3 * max_evals:
            break
        steps[:] = max(step * 0.05, 1e-4)
        x2, f2, e = nelder_mead(rx, ry, rn, reflect, scale, x, steps, max_evals, xtol, ftol)
        used += e
        if f2 < f - ftol:
            x = x2
            f = f2
        else:
            if f2 < f:
                x = x2
                f = f2
            break
    x, f, e = compass(rx, ry, rn, reflect, scale, x, 1e-3, xtol, 20 * max_evals)
    used += e
    return x, f, used


@njit(cache=True)
def side_centroids(rx, ry, rn, off, phi):
    """Centroids of both sides of a line; ``ok`` is False if either is empty."""
    nx = -math.sin(phi)
    ny = math.cos(phi)
    ax = np.empty(MAXV)
    ay = np.empty(MAXV)
    out = np.zeros(4)
    for k in range(2):
        s = 1.0 if k == 0 else -1.0
        m = clip_into(rx, ry, rn, s * nx, s * ny, -s * off, ax, ay)
        if m == 0:
            return out, False
        a = 0.0
        cx = 0.0
        cy = 0.0
        for i in range(m):
            j = i + 1
            if j == m:
                j = 0
            w = ax[i] * ay[j] - ax[j] * ay[i]
            a += w
            cx += (ax[i] + ax[j]) * w
            cy += (ay[i] + ay[j]) * w
        if a <= 0.0:
            return out, False
        out[2 * k] = cx / (3.0 * a)
        out[2 * k + 1] = cy / (3.0 * a)
    return out, True
