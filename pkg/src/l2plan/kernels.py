"""Scalar inner loops used by the planners.

Everything here is written in the numba-compatible subset (``math`` and
small float arrays). The ``jit`` decorator compiles them unless
``L2PLAN_DISABLE_JIT=1``; the interpreted version of each kernel stays
available as ``kernel.py_func``.

All kernels work in scaled units (acceleration bound 1) unless an ``a``
argument is taken explicitly.
"""

import math

import numpy as np

from ._jit import jit

PI = math.pi
TWO_PI = 2.0 * math.pi


@jit
def wrap(x):
    y = x - TWO_PI * math.floor((x + PI) / TWO_PI)
    if y <= -PI:
        y += TWO_PI
    return y


# -- reach with a cruise phase -----------------------------------------------

@jit
def coast_t1(theta, w, vm):
    """Thrust time until |v| = vm, start velocity (w, 0), unit thrust."""
    c = math.cos(theta)
    s = math.sin(theta)
    disc = vm * vm - w * w * s * s
    if disc < 0.0:
        disc = 0.0
    return math.sqrt(disc) - w * c


@jit
def coast_cross(theta, px, py, w, vm):
    """v(t1) x p(t1): zero when the terminal velocity is aligned with the goal."""
    c = math.cos(theta)
    s = math.sin(theta)
    t = coast_t1(theta, w, vm)
    vx = w + c * t
    vy = s * t
    x = px + w * t + 0.5 * c * t * t
    y = py + 0.5 * s * t * t
    return vx * y - vy * x


@jit
def coast_polish(theta, px, py, w, vm, iters):
    """Guarded Newton on coast_cross; returns the best angle seen."""
    best = theta
    fbest = abs(coast_cross(theta, px, py, w, vm))
    for _ in range(iters):
        if fbest == 0.0:
            break
        h = 1e-7
        f = coast_cross(best, px, py, w, vm)
        df = (coast_cross(best + h, px, py, w, vm) - coast_cross(best - h, px, py, w, vm)) / (2.0 * h)
        if df == 0.0 or not math.isfinite(df):
            break
        step = -f / df
        if step > 0.5:
            step = 0.5
        elif step < -0.5:
            step = -0.5
        improved = False
        for _k in range(20):
            cand = best + step
            fc = abs(coast_cross(cand, px, py, w, vm))
            if fc < fbest:
                best = cand
                fbest = fc
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return best


# -- stop at goal, two thrusts -------------------------------------------------

@jit
def stop_residual(theta, t, p, q, v, out):
    """Twice the stopping-point position for thrust (theta, t) then full braking."""
    c = math.cos(theta)
    s = math.sin(theta)
    S = math.sqrt(max(v * v + 2.0 * c * v * t + t * t, 0.0))
    out[0] = 2.0 * p + 2.0 * v * t + c * t * t + (v + c * t) * S
    out[1] = 2.0 * q + s * t * (S + t)


@jit
def solve2(a00, a01, a10, a11, b0, b1):
    det = a00 * a11 - a01 * a10
    if det == 0.0 or not math.isfinite(det):
        return 0.0, 0.0, False
    return (b0 * a11 - a01 * b1) / det, (a00 * b1 - a10 * b0) / det, True


@jit
def stop_polish(theta, t, p, q, v, iters):
    r = np.empty(2)
    rp = np.empty(2)
    rm = np.empty(2)
    stop_residual(theta, t, p, q, v, r)
    nbest = math.hypot(r[0], r[1])
    for _ in range(iters):
        if nbest == 0.0:
            break
        h1 = 1e-7
        h2 = 1e-7 * max(1.0, abs(t))
        stop_residual(theta + h1, t, p, q, v, rp)
        stop_residual(theta - h1, t, p, q, v, rm)
        j00 = (rp[0] - rm[0]) / (2.0 * h1)
        j10 = (rp[1] - rm[1]) / (2.0 * h1)
        stop_residual(theta, t + h2, p, q, v, rp)
        stop_residual(theta, t - h2, p, q, v, rm)
        j01 = (rp[0] - rm[0]) / (2.0 * h2)
        j11 = (rp[1] - rm[1]) / (2.0 * h2)
        d0, d1, ok = solve2(j00, j01, j10, j11, -r[0], -r[1])
        if not ok:
            break
        lam = 1.0
        improved = False
        for _k in range(30):
            th_n = theta + lam * d0
            t_n = t + lam * d1
            stop_residual(th_n, t_n, p, q, v, rp)
            nn = math.hypot(rp[0], rp[1])
            if nn < nbest:
                theta = th_n
                t = t_n
                r[0] = rp[0]
                r[1] = rp[1]
                nbest = nn
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return theta, t, nbest


# -- rendezvous without cruise -------------------------------------------------

@jit
def rendezvous_residual(x, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, out):
    """Forward state after thrust 1 minus backward state before thrust 2."""
    th1 = x[0]
    t1 = x[1]
    th2 = x[2]
    t2 = x[3]
    c1 = math.cos(th1)
    s1 = math.sin(th1)
    c2 = math.cos(th2)
    s2 = math.sin(th2)
    out[0] = (p0x + v0x * t1 + 0.5 * a * c1 * t1 * t1) - (pGx - vGx * t2 + 0.5 * a * c2 * t2 * t2)
    out[1] = (p0y + v0y * t1 + 0.5 * a * s1 * t1 * t1) - (pGy - vGy * t2 + 0.5 * a * s2 * t2 * t2)
    out[2] = (v0x + a * c1 * t1) - (vGx - a * c2 * t2)
    out[3] = (v0y + a * s1 * t1) - (vGy - a * s2 * t2)


@jit
def _norm4(r):
    return math.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3])


@jit
def gauss_solve(A, b):
    """In-place Gaussian elimination with partial pivoting; returns ok flag."""
    n = b.shape[0]
    for k in range(n):
        piv = k
        big = abs(A[k, k])
        for i in range(k + 1, n):
            if abs(A[i, k]) > big:
                big = abs(A[i, k])
                piv = i
        if big == 0.0 or not math.isfinite(big):
            return False
        if piv != k:
            for j in range(n):
                tmp = A[k, j]
                A[k, j] = A[piv, j]
                A[piv, j] = tmp
            tmp = b[k]
            b[k] = b[piv]
            b[piv] = tmp
        for i in range(k + 1, n):
            f = A[i, k] / A[k, k]
            for j in range(k, n):
                A[i, j] -= f * A[k, j]
            b[i] -= f * b[k]
    for k in range(n - 1, -1, -1):
        acc = b[k]
        for j in range(k + 1, n):
            acc -= A[k, j] * b[j]
        b[k] = acc / A[k, k]
    return True


@jit
def newton4(x0, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, tol, max_iter):
    """Damped Newton with a central-difference Jacobian.

    Steps are halved (at most 30 times) until the residual norm drops.
    Returns (x, residual norm, iterations used).
    """
    x = x0.copy()
    r = np.empty(4)
    rp = np.empty(4)
    rm = np.empty(4)
    J = np.empty((4, 4))
    dx = np.empty(4)
    xt = np.empty(4)
    rendezvous_residual(x, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, r)
    nrm = _norm4(r)
    it = 0
    while it < max_iter and nrm >= tol:
        it += 1
        for j in range(4):
            h = 1e-7 * max(1.0, abs(x[j]))
            for i in range(4):
                xt[i] = x[i]
            xt[j] = x[j] + h
            rendezvous_residual(xt, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, rp)
            xt[j] = x[j] - h
            rendezvous_residual(xt, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, rm)
            for i in range(4):
                J[i, j] = (rp[i] - rm[i]) / (2.0 * h)
        for i in range(4):
            dx[i] = -r[i]
        if not gauss_solve(J, dx):
            break
        lam = 1.0
        improved = False
        for _k in range(31):
            for i in range(4):
                xt[i] = x[i] + lam * dx[i]
            rendezvous_residual(xt, p0x, p0y, v0x, v0y, pGx, pGy, vGx, vGy, a, rp)
            nn = _norm4(rp)
            if nn < nrm:
                for i in range(4):
                    x[i] = xt[i]
                    r[i] = rp[i]
                nrm = nn
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return x, nrm, it


# -- rendezvous with cruise ----------------------------------------------------

@jit
def cruise_gap(phi, dx, dy, v0x, v0y, vGx, vGy, vm, a):
    """Cruise chord p(-t2) - p(t1) for cruise direction phi.

    ``(dx, dy)`` is the goal minus the start position.
    """
    ex = math.cos(phi)
    ey = math.sin(phi)
    cx = vm * ex
    cy = vm * ey
    t1 = math.hypot(cx - v0x, cy - v0y) / a
    t2 = math.hypot(vGx - cx, vGy - cy) / a
    gx = dx - 0.5 * (v0x + cx) * t1 - 0.5 * (vGx + cx) * t2
    gy = dy - 0.5 * (v0y + cy) * t1 - 0.5 * (vGy + cy) * t2
    return gx, gy


@jit
def phi_residual(phi, dx, dy, v0x, v0y, vGx, vGy, vm, a):
    gx, gy = cruise_gap(phi, dx, dy, v0x, v0y, vGx, vGy, vm, a)
    if gx == 0.0 and gy == 0.0:
        return PI
    return wrap(math.atan2(gy, gx) - phi)


@jit
def phi_newton(phi0, dx, dy, v0x, v0y, vGx, vGy, vm, a, max_iter):
    """Safeguarded Newton on the cruise-direction fixed point.

    Returns (phi, |residual|, iterations).
    """
    phi = phi0
    f = phi_residual(phi, dx, dy, v0x, v0y, vGx, vGy, vm, a)
    it = 0
    while it < max_iter and abs(f) > 1e-15:
        it += 1
        h = 1e-7
        fp = phi_residual(phi + h, dx, dy, v0x, v0y, vGx, vGy, vm, a)
        fm = phi_residual(phi - h, dx, dy, v0x, v0y, vGx, vGy, vm, a)
        df = wrap(fp - fm) / (2.0 * h)
        if df == 0.0 or not math.isfinite(df):
            break
        step = -f / df
        if step > 1.0:
            step = 1.0
        elif step < -1.0:
            step = -1.0
        improved = False
        for _k in range(30):
            cand = phi + step
            fc = phi_residual(cand, dx, dy, v0x, v0y, vGx, vGy, vm, a)
            if abs(fc) < abs(f):
                phi = cand
                f = fc
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return wrap(phi), abs(f), it


def warmup():
    """Trigger compilation of every kernel once."""
    coast_polish(0.1, -1.0, 0.5, 0.2, 1.0, 2)
    stop_polish(0.1, 1.0, -1.0, 0.5, 0.2, 2)
    newton4(np.array([0.0, 1.0, 3.0, 1.0]), -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1e-12, 3)
    phi_newton(0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 3)
