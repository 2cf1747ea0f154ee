# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels; same API as _kernels_py."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def legendre_table(x, int count):
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xs.shape[0], p
    cdef int nu
    v_arr = np.zeros((n, count))
    d_arr = np.zeros((n, count))
    cdef double[:, ::1] v = v_arr
    cdef double[:, ::1] d = d_arr
    cdef double t, f
    for p in range(n):
        t = xs[p]
        v[p, 0] = 1.0
        if count > 1:
            v[p, 1] = t
            d[p, 1] = 1.0
        for nu in range(1, count - 1):
            f = nu / (nu + 1.0)
            v[p, nu + 1] = f * (t * v[p, nu] - v[p, nu - 1]) + t * v[p, nu]
            d[p, nu + 1] = (f * (v[p, nu] + t * d[p, nu] - d[p, nu - 1])
                            + v[p, nu] + t * d[p, nu])
    return v_arr, d_arr


def chebyshev_table(x, int count):
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xs.shape[0], p
    cdef int nu
    v_arr = np.zeros((n, count))
    d_arr = np.zeros((n, count))
    cdef double[:, ::1] v = v_arr
    cdef double[:, ::1] d = d_arr
    cdef double t
    for p in range(n):
        t = xs[p]
        v[p, 0] = 1.0
        if count > 1:
            v[p, 1] = t
            d[p, 1] = 1.0
        for nu in range(1, count - 1):
            v[p, nu + 1] = 2.0 * t * v[p, nu] - v[p, nu - 1]
            d[p, nu + 1] = 2.0 * v[p, nu] + 2.0 * t * d[p, nu] - d[p, nu - 1]
    return v_arr, d_arr


def clenshaw_legendre(c, x):
    cdef const double[::1] cs = np.ascontiguousarray(c, dtype=np.float64).ravel()
    xa = np.asarray(x, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(xa).ravel()
    cdef Py_ssize_t n = xs.shape[0], p
    cdef int k
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double t, b1, b2, tmp
    for p in range(n):
        t = xs[p]
        b1 = 0.0
        b2 = 0.0
        for k in range(cs.shape[0] - 1, -1, -1):
            tmp = cs[k] + (2.0 * k + 1.0) / (k + 1.0) * t * b1 - (k + 1.0) / (k + 2.0) * b2
            b2 = b1
            b1 = tmp
        out[p] = b1
    return out_arr.reshape(xa.shape)


def clenshaw_chebyshev(c, x):
    cdef const double[::1] cs = np.ascontiguousarray(c, dtype=np.float64).ravel()
    xa = np.asarray(x, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(xa).ravel()
    cdef Py_ssize_t n = xs.shape[0], p
    cdef int k
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double t, b1, b2, tmp
    for p in range(n):
        t = xs[p]
        b1 = 0.0
        b2 = 0.0
        for k in range(cs.shape[0] - 1, 0, -1):
            tmp = cs[k] + 2.0 * t * b1 - b2
            b2 = b1
            b1 = tmp
        out[p] = cs[0] + t * b1 - b2
    return out_arr.reshape(xa.shape)


def lebesgue_function(nodes, bary, x):
    cdef const double[::1] z = np.ascontiguousarray(nodes, dtype=np.float64).ravel()
    cdef const double[::1] w = np.ascontiguousarray(bary, dtype=np.float64).ravel()
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xs.shape[0], m = z.shape[0], p, i
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double num, den, q, dx
    cdef bint hit
    for p in range(n):
        num = 0.0
        den = 0.0
        hit = False
        for i in range(m):
            dx = xs[p] - z[i]
            if dx == 0.0:
                hit = True
                break
            q = w[i] / dx
            num += fabs(q)
            den += q
        out[p] = 1.0 if hit else num / fabs(den)
    return out_arr
