# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-user uniqueness kernel.  See ``_batch.classify_users``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef enum:
    FULLRANK = 0
    SPHEROID = 1
    SPHERE = 2
    HYPERBOLOID = 3
    CONE = 4
    PARABOLOID = 5
    DEGENERATE = -1


def classify_users(sats, B, pinvB, users, double base_scale, double rank_tol, double class_tol):
    cdef const double[:, ::1] A = np.ascontiguousarray(sats, dtype=np.float64)
    cdef const double[:, ::1] Bm = np.ascontiguousarray(B, dtype=np.float64)
    cdef const double[:, ::1] P = np.ascontiguousarray(pinvB, dtype=np.float64)
    cdef const double[:, ::1] X = np.ascontiguousarray(users, dtype=np.float64)
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1], k = X.shape[0]
    out = np.empty(k, dtype=np.int8)
    cdef signed char[::1] lab = out
    cdef double[::1] d = np.empty(m)
    cdef double[::1] c = np.empty(n + 1)
    cdef Py_ssize_t q, i, j
    cdef double s, dn, rn, e, l, scale, xm
    cdef bint full, flat

    with nogil:
        for q in range(k):
            dn = 0.0
            for i in range(m):
                s = 0.0
                for j in range(n):
                    s += (X[q, j] - A[i, j]) * (X[q, j] - A[i, j])
                d[i] = sqrt(s)
                dn += s
            for j in range(n + 1):
                s = 0.0
                for i in range(m):
                    s += P[j, i] * d[i]
                c[j] = s
            full = False
            if m >= n + 2:
                rn = 0.0
                for i in range(m):
                    s = d[i]
                    for j in range(n + 1):
                        s -= Bm[i, j] * c[j]
                    rn += s * s
                full = sqrt(rn) > rank_tol * sqrt(dn)
            if full:
                lab[q] = FULLRANK
                continue
            e = 0.0
            l = 0.0
            xm = 0.0
            for j in range(n):
                e += 4.0 * c[j] * c[j]
                l += 2.0 * c[j] * X[q, j]
                if fabs(X[q, j]) > xm:
                    xm = fabs(X[q, j])
            e = sqrt(e)
            l -= c[n]
            scale = base_scale if base_scale > xm else xm
            flat = fabs(l) <= class_tol * scale
            if e <= class_tol:
                lab[q] = DEGENERATE if flat else SPHERE
            elif fabs(e - 1.0) <= class_tol:
                lab[q] = DEGENERATE if flat else PARABOLOID
            elif e < 1.0:
                lab[q] = DEGENERATE if flat else SPHEROID
            else:
                lab[q] = CONE if flat else HYPERBOLOID
    return out
