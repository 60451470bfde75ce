# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; see ``_kernels_py`` for the reference versions."""

from libc.stdlib cimport malloc, free


cdef int _reflect(long long *v, long long *cartan, int n) noexcept nogil:
    # cartan is row-major n x n; returns sign, 0 on a wall
    cdef int sign = 1
    cdef int i, k, moved
    cdef long long c
    while True:
        moved = 0
        for i in range(n):
            c = v[i]
            if c == 0:
                return 0
            if c < 0:
                for k in range(n):
                    v[k] -= c * cartan[k * n + i]
                sign = -sign
                moved = 1
                break
        if not moved:
            return sign


def rho_dominant(v, cartan):
    cdef int n = len(v)
    cdef long long *buf = <long long *> malloc(n * sizeof(long long))
    cdef long long *cm = <long long *> malloc(n * n * sizeof(long long))
    cdef int i, j, sign
    try:
        for i in range(n):
            buf[i] = v[i]
            for j in range(n):
                cm[i * n + j] = cartan[i][j]
        sign = _reflect(buf, cm, n)
        if sign == 0:
            return 0, None
        return sign, tuple([buf[i] for i in range(n)])
    finally:
        free(buf)
        free(cm)


def adjoint_decomposition(mu, weights, mults, cartan):
    cdef int n = len(mu)
    cdef int m = len(weights)
    cdef long long *buf = <long long *> malloc(n * sizeof(long long))
    cdef long long *cm = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *wts = <long long *> malloc(m * n * sizeof(long long))
    cdef long long *mu_c = <long long *> malloc(n * sizeof(long long))
    cdef int i, j, a, sign
    acc = {}
    try:
        for i in range(n):
            mu_c[i] = mu[i] + 1
            for j in range(n):
                cm[i * n + j] = cartan[i][j]
        for a in range(m):
            w = weights[a]
            for i in range(n):
                wts[a * n + i] = w[i]
        for a in range(m):
            for i in range(n):
                buf[i] = mu_c[i] + wts[a * n + i]
            sign = _reflect(buf, cm, n)
            if sign:
                nu = tuple([buf[i] - 1 for i in range(n)])
                acc[nu] = acc.get(nu, 0) + sign * mults[a]
    finally:
        free(buf)
        free(cm)
        free(wts)
        free(mu_c)
    return {k: c for k, c in acc.items() if c}
