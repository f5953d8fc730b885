"""Compiled inner loops: convex diameter and spoke-partition evaluation.

Both kernels work on split coordinate arrays (xs, ys) of a counterclockwise
convex polygon. Callers in :mod:`rotakit.geometry` and :mod:`rotakit.search`
handle validation and orientation.
"""

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _d2(xs, ys, i, j):
    dx = xs[i] - xs[j]
    dy = ys[i] - ys[j]
    return dx * dx + dy * dy


@njit(cache=True)
def caliper_diameter(xs, ys, n):
    """Rotating calipers over the first ``n`` points of a CCW convex polygon."""
    if n < 2:
        return 0.0
    if n == 2:
        return math.sqrt(_d2(xs, ys, 0, 1))
    best = 0.0
    j = 1
    for i in range(n):
        i1 = i + 1 if i + 1 < n else 0
        ex = xs[i1] - xs[i]
        ey = ys[i1] - ys[i]
        steps = 0
        while steps < n:
            j1 = j + 1 if j + 1 < n else 0
            if ex * (ys[j1] - ys[j]) - ey * (xs[j1] - xs[j]) > 0.0:
                j = j1
                steps += 1
            else:
                break
        j1 = j + 1 if j + 1 < n else 0
        # the j1 pairs cover edges parallel to edge i
        best = max(best, _d2(xs, ys, i, j), _d2(xs, ys, i1, j),
                   _d2(xs, ys, i, j1), _d2(xs, ys, i1, j1))
    return math.sqrt(best)


@njit(cache=True)
def _push(bx, by, m, x, y):
    if m > 0 and bx[m - 1] == x and by[m - 1] == y:
        return m
    bx[m] = x
    by[m] = y
    return m + 1


@njit(cache=True)
def _diamond(dx, dy):
    """Monotone surrogate of the polar angle, in [0, 4)."""
    if dy >= 0.0:
        if dx >= 0.0:
            return dy / (dx + dy)
        return 1.0 - dx / (-dx + dy)
    if dx < 0.0:
        return 2.0 - dy / (-dx - dy)
    return 3.0 + dx / (dx - dy)


@njit(cache=True)
def spoke_dm(vx, vy, hx, hy, angles):
    """Maximum piece diameter of the fan cut from hub ``(hx, hy)``.

    ``angles`` are the polar angles (about the hub) of the cuts. Pieces whose
    angular span reaches pi omit the hub, which then lies in the hull of the
    boundary arc and cannot change the diameter.
    """
    n = vx.size
    k = angles.size
    phi = np.empty(n)
    s = 0
    for i in range(n):
        phi[i] = _diamond(vx[i] - hx, vy[i] - hy)
        if phi[i] < phi[s]:
            s = i
    # unwrapped pseudo-angles along the rotated vertex order s, s+1, ...
    u = np.empty(n + 1)
    u[0] = phi[s]
    for i in range(1, n):
        a = phi[(s + i) % n]
        while a < u[i - 1]:
            a += 4.0
        u[i] = a
    u[n] = u[0] + 4.0

    a_sorted = np.sort(np.mod(angles, TWO_PI))
    ca = np.cos(a_sorted)
    sa = np.sin(a_sorted)
    a_un = np.empty(k)
    for t in range(k):
        a = _diamond(ca[t], sa[t])
        while a < u[0]:
            a += 4.0
        while a >= u[n]:
            a -= 4.0
        a_un[t] = a
    # cyclic order is unchanged by the shift into [u0, u0 + 4): rotate to sorted
    first = 0
    for t in range(1, k):
        if a_un[t] < a_un[first]:
            first = t
    order = np.empty(k, dtype=np.int64)
    for t in range(k):
        order[t] = (first + t) % k

    edge = np.empty(k, dtype=np.int64)
    px = np.empty(k)
    py = np.empty(k)
    theta = np.empty(k)
    for t in range(k):
        o = order[t]
        a = a_un[o]
        theta[t] = a_sorted[o]
        e = np.searchsorted(u, a, side="right") - 1
        if e > n - 1:
            e = n - 1
        edge[t] = e
        p = (s + e) % n
        q = (s + e + 1) % n
        dx = ca[o]
        dy = sa[o]
        ex = vx[q] - vx[p]
        ey = vy[q] - vy[p]
        den = dx * ey - dy * ex
        if den == 0.0:
            px[t] = vx[p]
            py[t] = vy[p]
        else:
            wx = vx[p] - hx
            wy = vy[p] - hy
            tt = (wx * ey - wy * ex) / den
            px[t] = hx + tt * dx
            py[t] = hy + tt * dy

    bx = np.empty(n + 4)
    by = np.empty(n + 4)
    best = 0.0
    for t in range(k):
        t2 = t + 1 if t + 1 < k else 0
        gap = theta[t2] - theta[t]
        if gap < 0.0:
            gap += TWO_PI
        last = edge[t2]
        if t2 == 0:
            last += n
        m = _push(bx, by, 0, px[t], py[t])
        for r in range(edge[t] + 1, last + 1):
            v = (s + r) % n
            m = _push(bx, by, m, vx[v], vy[v])
        m = _push(bx, by, m, px[t2], py[t2])
        if gap < math.pi:
            m = _push(bx, by, m, hx, hy)
        d = caliper_diameter(bx, by, m)
        if d > best:
            best = d
    return best


@njit(cache=True)
def admissible_spoke_dm(vx, vy, cx, cy, r, x):
    """``spoke_dm`` at ``x = (hub_x, hub_y, angles...)``, or inf when the hub
    leaves the r-disk, two cuts coincide or a cut gap reaches pi."""
    hx = x[0]
    hy = x[1]
    if (hx - cx) ** 2 + (hy - cy) ** 2 >= r * r:
        return math.inf
    a = np.sort(np.mod(x[2:], TWO_PI))
    k = a.size
    for t in range(k):
        g = (a[t + 1] if t + 1 < k else a[0] + TWO_PI) - a[t]
        if g <= 0.0 or g >= math.pi:
            return math.inf
    return spoke_dm(vx, vy, hx, hy, a)


@njit(cache=True)
def batch_spoke_dm(vx, vy, hubs, angles):
    out = np.empty(hubs.shape[0])
    for i in range(hubs.shape[0]):
        out[i] = spoke_dm(vx, vy, hubs[i, 0], hubs[i, 1], angles[i])
    return out


@njit(cache=True)
def max_dist_to_convex(px, py, qx, qy):
    """max over points p of dist(p, Q) for a CCW convex polygon Q (0 inside)."""
    m = qx.size
    worst = 0.0
    for i in range(px.size):
        x = px[i]
        y = py[i]
        inside = True
        best = math.inf
        for j in range(m):
            j1 = j + 1 if j + 1 < m else 0
            ex = qx[j1] - qx[j]
            ey = qy[j1] - qy[j]
            rx = x - qx[j]
            ry = y - qy[j]
            if ex * ry - ey * rx < 0.0:
                inside = False
            ee = ex * ex + ey * ey
            t = 0.0
            if ee > 0.0:
                t = (rx * ex + ry * ey) / ee
                t = min(max(t, 0.0), 1.0)
            fx = rx - t * ex
            fy = ry - t * ey
            d = math.sqrt(fx * fx + fy * fy)
            if d < best:
                best = d
        if inside and m >= 3:
            best = 0.0
        if best > worst:
            worst = best
    return worst
