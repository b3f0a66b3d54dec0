"""Pure-Python path tracker (reference implementation of the compiled kernel).

The fiber polynomial along the loop is ``p(z; s) = sum_k z^k sum_j A[k][j] s^j``
with ``s = center + radius * exp(i*theta)``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

OK = 0
STEP_UNDERFLOW = 1
STEP_CAP = 2

_NEWTON_ITERS = 12


def _coeffs(A, s):
    """a_k(s) and d a_k / ds."""
    out = []
    dout = []
    for row in A:
        acc = 0j
        dacc = 0j
        for c in reversed(row):
            dacc = dacc * s + acc
            acc = acc * s + c
        out.append(acc)
        dout.append(dacc)
    return out, dout


def _horner(a, z):
    p = 0j
    dp = 0j
    for c in reversed(a):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _min_sep(roots):
    n = len(roots)
    best = math.inf
    for i in range(n):
        zi = roots[i]
        for j in range(i + 1, n):
            d = abs(zi - roots[j])
            if d < best:
                best = d
    return best


def _newton(a, z, n):
    for _ in range(_NEWTON_ITERS):
        p, dp = _horner(a, z)
        if dp == 0:
            return z, False, math.inf
        dz = p / dp
        z = z - dz
        if abs(dz) <= 1e-14 * max(1.0, abs(z)):
            p, dp = _horner(a, z)
            rad = n * abs(p / dp) if dp != 0 else math.inf
            return z, True, rad
    return z, False, math.inf


def track_arc(A, center: complex, radius: float, theta0: float, theta1: float,
              roots, h0: float, max_steps: int, record: bool):
    """Continue ``roots`` from ``theta0`` to ``theta1``.

    Returns ``(roots, status, steps, rejections, min_sep, max_ratio, thetas, traj)``
    where ``max_ratio`` is the largest accepted (root motion) / (separation).
    """
    A = [list(map(complex, row)) for row in np.asarray(A)]
    z = [complex(r) for r in roots]
    n = len(z)
    theta = theta0
    span = theta1 - theta0
    h = min(h0, span)
    h_min = span / float(max_steps)
    steps = 0
    rejections = 0
    min_sep_seen = _min_sep(z)
    max_ratio = 0.0
    thetas = [theta] if record else None
    traj = [list(z)] if record else None
    while theta < theta1:
        if steps >= max_steps:
            return z, STEP_CAP, steps, rejections, min_sep_seen, max_ratio, thetas, traj
        if h < h_min:
            return z, STEP_UNDERFLOW, steps, rejections, min_sep_seen, max_ratio, thetas, traj
        h = min(h, theta1 - theta)
        steps += 1
        e = cmath.exp(1j * theta)
        s = center + radius * e
        a, da = _coeffs(A, s)
        dsdt = 1j * radius * e
        sep_old = _min_sep(z)
        # tangent predictor
        pred = []
        for zi in z:
            p, dp = _horner(a, zi)
            pt, _ = _horner(da, zi)
            pred.append(zi - h * (pt * dsdt) / dp if dp != 0 else zi)
        t_new = theta + h
        s_new = center + radius * cmath.exp(1j * t_new)
        a_new, _ = _coeffs(A, s_new)
        new = []
        ok = True
        max_rad = 0.0
        for zi in pred:
            zc, conv, rad = _newton(a_new, zi, n)
            if not conv:
                ok = False
                break
            new.append(zc)
            if rad > max_rad:
                max_rad = rad
        if ok:
            sep_new = _min_sep(new)
            sep = min(sep_old, sep_new)
            motion = max(abs(new[i] - z[i]) for i in range(n)) if n else 0.0
            ok = motion < sep / 3.0 and max_rad < sep_new / 3.0
        if not ok:
            rejections += 1
            h *= 0.5
            continue
        ratio = motion / sep if sep > 0 else 0.0
        if ratio > max_ratio:
            max_ratio = ratio
        if sep_new < min_sep_seen:
            min_sep_seen = sep_new
        z = new
        theta = t_new
        if record:
            thetas.append(theta)
            traj.append(list(z))
        h *= 1.5
    return z, OK, steps, rejections, min_sep_seen, max_ratio, thetas, traj
