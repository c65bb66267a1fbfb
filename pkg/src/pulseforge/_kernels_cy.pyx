# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled 2x2 propagator kernels.

Hot loops for sequence products and infidelity sweeps.  The pure-Python module
``pulseforge._kernels_py`` mirrors this API and is selected as a fallback at
import time when the extension is unavailable.  Batch loops release the GIL so
chunked sweeps can run on real threads.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

KIND = "cython"

ctypedef double complex dc


cdef inline void _prop(double theta, double phi, double f,
                       dc *u00, dc *u01, dc *u10, dc *u11) noexcept nogil:
    cdef double r = sqrt(1.0 + f * f)
    cdef double half = 0.5 * theta * r
    cdef double a = cos(half)
    cdef double sb = sin(half) / r
    cdef double nx = sb * cos(phi)
    cdef double ny = sb * sin(phi)
    cdef double nz = sb * f
    u00[0] = a - 1j * nz
    u01[0] = -ny - 1j * nx
    u10[0] = ny - 1j * nx
    u11[0] = a + 1j * nz


cdef inline void _fold_row(const double *thetas, const double *phis,
                           Py_ssize_t k, double f,
                           dc *r00, dc *r01, dc *r10, dc *r11) noexcept nogil:
    cdef dc u00 = 1.0, u01 = 0.0, u10 = 0.0, u11 = 1.0
    cdef dc p00, p01, p10, p11, v00, v01, v10, v11
    cdef Py_ssize_t j
    for j in range(k):
        _prop(thetas[j], phis[j], f, &p00, &p01, &p10, &p11)
        v00 = p00 * u00 + p01 * u10
        v01 = p00 * u01 + p01 * u11
        v10 = p10 * u00 + p11 * u10
        v11 = p10 * u01 + p11 * u11
        u00 = v00; u01 = v01; u10 = v10; u11 = v11
    r00[0] = u00; r01[0] = u01; r10[0] = u10; r11[0] = u11


def propagator(double theta, double phi, double f):
    """Exact propagator for one pulse with a tilted drive axis."""
    out = np.empty((2, 2), dtype=np.complex128)
    cdef dc[:, ::1] o = out
    _prop(theta, phi, f, &o[0, 0], &o[0, 1], &o[1, 0], &o[1, 1])
    return out


def sequence_propagator(thetas, phis, double f):
    """Right-to-left product of propagators; first entry acts first."""
    t = np.ascontiguousarray(thetas, dtype=np.float64)
    p = np.ascontiguousarray(phis, dtype=np.float64)
    cdef double[::1] tv = t
    cdef double[::1] pv = p
    out = np.empty((2, 2), dtype=np.complex128)
    cdef dc[:, ::1] o = out
    _fold_row(&tv[0], &pv[0], tv.shape[0], f,
              &o[0, 0], &o[0, 1], &o[1, 0], &o[1, 1])
    return out


def gate_fidelity(u, v):
    """|tr(u^dag v)| / 2 for two 2x2 matrices."""
    uu = np.ascontiguousarray(u, dtype=np.complex128)
    vv = np.ascontiguousarray(v, dtype=np.complex128)
    cdef dc[:, ::1] a = uu
    cdef dc[:, ::1] b = vv
    cdef dc tr = (a[0, 0].conjugate() * b[0, 0] + a[0, 1].conjugate() * b[0, 1]
                  + a[1, 0].conjugate() * b[1, 0] + a[1, 1].conjugate() * b[1, 1])
    return 0.5 * abs(tr)


def state_fidelity(u, v, psi):
    """|<psi| u^dag v |psi>|."""
    uu = np.ascontiguousarray(u, dtype=np.complex128)
    vv = np.ascontiguousarray(v, dtype=np.complex128)
    pp = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef dc[:, ::1] a = uu
    cdef dc[:, ::1] b = vv
    cdef dc[::1] s = pp
    cdef dc w0 = a[0, 0] * s[0] + a[0, 1] * s[1]
    cdef dc w1 = a[1, 0] * s[0] + a[1, 1] * s[1]
    cdef dc x0 = b[0, 0] * s[0] + b[0, 1] * s[1]
    cdef dc x1 = b[1, 0] * s[0] + b[1, 1] * s[1]
    return abs(w0.conjugate() * x0 + w1.conjugate() * x1)


def batch_gate_infidelity(thetas, phis, double f, target):
    """Gate infidelity of each row's sequence against ``target``, shape (n,)."""
    t = np.ascontiguousarray(thetas, dtype=np.float64)
    p = np.ascontiguousarray(phis, dtype=np.float64)
    tg = np.ascontiguousarray(target, dtype=np.complex128)
    cdef double[:, ::1] tv = t
    cdef double[:, ::1] pv = p
    cdef dc[:, ::1] g = tg
    cdef dc c00 = g[0, 0].conjugate()
    cdef dc c01 = g[0, 1].conjugate()
    cdef dc c10 = g[1, 0].conjugate()
    cdef dc c11 = g[1, 1].conjugate()
    cdef Py_ssize_t n = tv.shape[0], k = tv.shape[1], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef dc u00, u01, u10, u11, tr
    cdef double val
    with nogil:
        for i in range(n):
            _fold_row(&tv[i, 0], &pv[i, 0], k, f, &u00, &u01, &u10, &u11)
            tr = c00 * u00 + c01 * u01 + c10 * u10 + c11 * u11
            val = 1.0 - 0.5 * abs(tr)
            ov[i] = val if val > 0.0 else 0.0
    return out


def batch_state_infidelity(thetas, phis, double f, target, psi):
    """State infidelity of each row's sequence against ``target`` on ``psi``."""
    t = np.ascontiguousarray(thetas, dtype=np.float64)
    p = np.ascontiguousarray(phis, dtype=np.float64)
    tg = np.ascontiguousarray(target, dtype=np.complex128)
    pp = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef double[:, ::1] tv = t
    cdef double[:, ::1] pv = p
    cdef dc[:, ::1] g = tg
    cdef dc[::1] s = pp
    cdef dc r0 = (g[0, 0] * s[0] + g[0, 1] * s[1]).conjugate()
    cdef dc r1 = (g[1, 0] * s[0] + g[1, 1] * s[1]).conjugate()
    cdef dc s0 = s[0], s1 = s[1]
    cdef Py_ssize_t n = tv.shape[0], k = tv.shape[1], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef dc u00, u01, u10, u11, overlap
    cdef double val
    with nogil:
        for i in range(n):
            _fold_row(&tv[i, 0], &pv[i, 0], k, f, &u00, &u01, &u10, &u11)
            overlap = r0 * (u00 * s0 + u01 * s1) + r1 * (u10 * s0 + u11 * s1)
            val = 1.0 - abs(overlap)
            ov[i] = val if val > 0.0 else 0.0
    return out
