# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled symmetric eigensolver (Householder tridiagonalization + implicit QL)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()

cdef double _EPS = 2.0 ** -52


cdef void _tred2(double[:, ::1] V, double[::1] d, double[::1] e, bint vectors) noexcept nogil:
    cdef Py_ssize_t n = V.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double scale, h, f, g, hh
    for j in range(n):
        d[j] = V[n - 1, j]
    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += fabs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
                V[j, i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h = h - f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                V[j, i] = f
                g = e[j] + V[j, j] * f
                for k in range(j + 1, i):
                    g += V[k, j] * d[k]
                    e[k] += V[k, j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    V[k, j] -= (f * e[k] + g * d[k])
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
        d[i] = h

    if vectors:
        for i in range(n - 1):
            V[n - 1, i] = V[i, i]
            V[i, i] = 1.0
            h = d[i + 1]
            if h != 0.0:
                for k in range(i + 1):
                    d[k] = V[k, i + 1] / h
                for j in range(i + 1):
                    g = 0.0
                    for k in range(i + 1):
                        g += V[k, i + 1] * V[k, j]
                    for k in range(i + 1):
                        V[k, j] -= g * d[k]
            for k in range(i + 1):
                V[k, i + 1] = 0.0
        for j in range(n):
            d[j] = V[n - 1, j]
            V[n - 1, j] = 0.0
        V[n - 1, n - 1] = 1.0
    else:
        for j in range(n):
            d[j] = V[j, j]
    e[0] = 0.0


cdef int _tql2(double[:, ::1] V, double[::1] d, double[::1] e, bint vectors, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, k, l, m
    cdef int sweeps
    cdef double f, tst1, g, p, r, dl1, h, c, c2, c3, el1, s, s2
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    f = 0.0
    # negligibility is judged against the norm of the whole tridiagonal
    # matrix; a running maximum lets denormal noise in leading entries stall
    tst1 = 0.0
    for i in range(n):
        if fabs(d[i]) + fabs(e[i]) > tst1:
            tst1 = fabs(d[i]) + fabs(e[i])
    if tst1 == 0.0:
        return 0
    for l in range(n):
        m = l
        while m < n:
            if fabs(e[m]) <= _EPS * tst1:
                break
            m += 1
        if m > l:
            sweeps = 0
            while True:
                sweeps += 1
                if sweeps > max_sweeps:
                    return -1
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f = f + h
                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                i = m - 1
                while i >= l:
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    if vectors:
                        for k in range(n):
                            h = V[k, i + 1]
                            V[k, i + 1] = s * V[k, i] + c * h
                            V[k, i] = c * V[k, i] - s * h
                    i -= 1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if not fabs(e[l]) > _EPS * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return 0


def eigh(a, bint vectors=True, int max_sweeps=60):
    """Eigenvalues (ascending) and optionally eigenvectors of a symmetric matrix."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Va = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = Va.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] da = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ea = np.zeros(n)
    cdef double[:, ::1] V = Va
    cdef double[::1] d = da
    cdef double[::1] e = ea
    cdef int status = 0
    if n == 0:
        return da, (Va if vectors else None)
    with nogil:
        _tred2(V, d, e, vectors)
        status = _tql2(V, d, e, vectors, max_sweeps)
    if status != 0:
        raise np.linalg.LinAlgError("QL iteration did not converge")
    order = np.argsort(da, kind="stable")
    if vectors:
        return da[order], np.ascontiguousarray(Va[:, order])
    return da[order], None
