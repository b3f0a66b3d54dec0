# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled path tracker; same contract as ``_kernel_py.track_arc``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, INFINITY

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)

cdef int OK = 0
cdef int STEP_UNDERFLOW = 1
cdef int STEP_CAP = 2
cdef int NEWTON_ITERS = 12


cdef inline void _coeffs(double complex[:, ::1] A, double complex s,
                         double complex[::1] a, double complex[::1] da) noexcept nogil:
    cdef Py_ssize_t k, j
    cdef Py_ssize_t nk = A.shape[0]
    cdef Py_ssize_t nj = A.shape[1]
    cdef double complex acc, dacc
    for k in range(nk):
        acc = 0
        dacc = 0
        for j in range(nj - 1, -1, -1):
            dacc = dacc * s + acc
            acc = acc * s + A[k, j]
        a[k] = acc
        da[k] = dacc


cdef inline void _horner(double complex[::1] a, double complex z,
                         double complex* p, double complex* dp) noexcept nogil:
    cdef Py_ssize_t k
    cdef double complex pp = 0, dd = 0
    for k in range(a.shape[0] - 1, -1, -1):
        dd = dd * z + pp
        pp = pp * z + a[k]
    p[0] = pp
    dp[0] = dd


cdef inline double _min_sep(double complex[::1] z) noexcept nogil:
    cdef Py_ssize_t i, j, n = z.shape[0]
    cdef double best = INFINITY, d
    for i in range(n):
        for j in range(i + 1, n):
            d = cabs(z[i] - z[j])
            if d < best:
                best = d
    return best


cdef inline int _newton(double complex[::1] a, double complex* z, int n, double* rad) noexcept nogil:
    cdef int it
    cdef double complex p, dp, dz
    cdef double az
    for it in range(NEWTON_ITERS):
        _horner(a, z[0], &p, &dp)
        if dp == 0:
            return 0
        dz = p / dp
        z[0] = z[0] - dz
        az = cabs(z[0])
        if cabs(dz) <= 1e-14 * (az if az > 1.0 else 1.0):
            _horner(a, z[0], &p, &dp)
            if dp == 0:
                rad[0] = INFINITY
            else:
                rad[0] = n * cabs(p / dp)
            return 1
    return 0


cdef int _track(double complex[:, ::1] A, double complex center, double radius,
                double theta0, double theta1, double complex[::1] z,
                double h0, long max_steps,
                long* steps_out, long* rej_out, double* minsep_out, double* ratio_out,
                double complex[::1] a, double complex[::1] da, double complex[::1] a_new,
                double complex[::1] da_new, double complex[::1] new) noexcept nogil:
    cdef Py_ssize_t n = z.shape[0], i
    cdef double theta = theta0, span = theta1 - theta0
    cdef double h = h0 if h0 < span else span
    cdef double h_min = span / <double>max_steps
    cdef long steps = 0, rejections = 0
    cdef double min_sep_seen = _min_sep(z), max_ratio = 0.0
    cdef double sep_old, sep_new, sep, motion, max_rad, rad, t_new, d
    cdef double complex e, s, dsdt, p, dp, pt, dpt, zc
    cdef int ok, status = OK
    while theta < theta1:
        if steps >= max_steps:
            status = STEP_CAP
            break
        if h < h_min:
            status = STEP_UNDERFLOW
            break
        if h > theta1 - theta:
            h = theta1 - theta
        steps += 1
        e = cexp(1j * theta)
        s = center + radius * e
        _coeffs(A, s, a, da)
        dsdt = 1j * radius * e
        sep_old = _min_sep(z)
        for i in range(n):
            _horner(a, z[i], &p, &dp)
            _horner(da, z[i], &pt, &dpt)
            if dp != 0:
                new[i] = z[i] - h * (pt * dsdt) / dp
            else:
                new[i] = z[i]
        t_new = theta + h
        s = center + radius * cexp(1j * t_new)
        _coeffs(A, s, a_new, da_new)
        ok = 1
        max_rad = 0.0
        for i in range(n):
            zc = new[i]
            if not _newton(a_new, &zc, <int>n, &rad):
                ok = 0
                break
            new[i] = zc
            if rad > max_rad:
                max_rad = rad
        motion = 0.0
        sep = 0.0
        if ok:
            sep_new = _min_sep(new)
            sep = sep_old if sep_old < sep_new else sep_new
            for i in range(n):
                d = cabs(new[i] - z[i])
                if d > motion:
                    motion = d
            ok = motion < sep / 3.0 and max_rad < sep_new / 3.0
        if not ok:
            rejections += 1
            h *= 0.5
            continue
        if sep > 0 and motion / sep > max_ratio:
            max_ratio = motion / sep
        if sep_new < min_sep_seen:
            min_sep_seen = sep_new
        for i in range(n):
            z[i] = new[i]
        theta = t_new
        h *= 1.5
    steps_out[0] = steps
    rej_out[0] = rejections
    minsep_out[0] = min_sep_seen
    ratio_out[0] = max_ratio
    return status


def track_arc(A, center, double radius, double theta0, double theta1,
              roots, double h0, long max_steps, bint record):
    cdef double complex[:, ::1] Av = np.ascontiguousarray(A, dtype=np.complex128)
    cdef double complex[::1] z = np.array(roots, dtype=np.complex128)
    cdef Py_ssize_t nk = Av.shape[0]
    cdef double complex[::1] a = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] da = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] a_new = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] da_new = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] new = np.empty(z.shape[0], dtype=np.complex128)
    cdef double complex c = complex(center)
    cdef long steps = 0, rej = 0
    cdef double minsep = 0.0, ratio = 0.0
    cdef int status
    if record:
        # recording needs the GIL between steps: fall back to the reference loop
        from ._kernel_py import track_arc as _py
        return _py(A, center, radius, theta0, theta1, roots, h0, max_steps, True)
    with nogil:
        status = _track(Av, c, radius, theta0, theta1, z, h0, max_steps,
                        &steps, &rej, &minsep, &ratio, a, da, a_new, da_new, new)
    return [complex(x) for x in z], status, steps, rej, minsep, ratio, None, None
