# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: complex Jacobi eigensolver and pivoted rank.

Mirrors ``_pykernels`` operation for operation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef int MAX_SWEEPS = 100


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex cconj(double complex z) nogil:
    return z.real - 1j * z.imag


def jacobi_eigh(h, double rel_tol=1e-14):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(h, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] uarr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = arr
    cdef double complex[:, ::1] u = uarr
    cdef Py_ssize_t i, j, k, p, q
    cdef int sweep
    cdef double norm = 0.0, off, target, thresh, r, app, aqq, theta, t, c, s
    cdef double complex apq, ph, phc, xp, xq

    for i in range(n):
        for j in range(n):
            norm += cabs2(a[i, j])
    norm = sqrt(norm)

    if n >= 2 and norm > 0.0:
        target = rel_tol * norm
        for sweep in range(MAX_SWEEPS):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += cabs2(a[p, q])
            off = sqrt(2.0 * off)
            if off < target:
                break
            thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r = sqrt(cabs2(apq))
                    if r == 0.0 or r < thresh:
                        continue
                    ph = apq / r
                    phc = cconj(ph)
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * r)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        xp = a[k, p]
                        xq = a[k, q]
                        a[k, p] = c * xp - s * phc * xq
                        a[k, q] = s * xp + c * phc * xq
                    for k in range(n):
                        xp = a[p, k]
                        xq = a[q, k]
                        a[p, k] = c * xp - s * ph * xq
                        a[q, k] = s * xp + c * ph * xq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * r
                    a[q, q] = aqq + t * r
                    for k in range(n):
                        xp = u[k, p]
                        xq = u[k, q]
                        u[k, p] = c * xp - s * phc * xq
                        u[k, q] = s * xp + c * phc * xq

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w, kind="stable")
    return w[order], uarr[:, order]


def pivot_rank(m, double thresh):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(m, dtype=np.complex128, copy=True, order="C")
    cdef double complex[:, ::1] a = arr
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, k
    cdef int rank = 0
    cdef double best, mag
    cdef double complex piv, f, tmp
    for col in range(cols):
        if row >= rows:
            break
        k = row
        best = cabs2(a[row, col])
        for i in range(row + 1, rows):
            mag = cabs2(a[i, col])
            if mag > best:
                best = mag
                k = i
        if sqrt(best) <= thresh:
            continue
        if k != row:
            for j in range(cols):
                tmp = a[row, j]
                a[row, j] = a[k, j]
                a[k, j] = tmp
        piv = a[row, col]
        for i in range(row + 1, rows):
            f = a[i, col] / piv
            if f == 0:
                continue
            for j in range(col, cols):
                a[i, j] = a[i, j] - f * a[row, j]
        rank += 1
        row += 1
    return rank
