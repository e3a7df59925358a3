# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for dense integer convolution.

Inputs are Python lists of (unbounded) ints. When every partial sum is
provably below 2**63 the product runs on C ``long long``; otherwise it
falls back to Python-object arithmetic inside the same loop structure.
"""

from libc.stdlib cimport malloc, free

cdef long long _LIMIT = 9223372036854775807


cdef object _bound(list xs):
    cdef object m = 0
    cdef object v
    for v in xs:
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m


cdef list _convolve_i64(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef long long *pa = <long long *> malloc(na * sizeof(long long))
    cdef long long *pb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *po = <long long *> malloc((na + nb - 1) * sizeof(long long))
    cdef long long x
    if pa == NULL or pb == NULL or po == NULL:
        free(pa); free(pb); free(po)
        raise MemoryError()
    try:
        for i in range(na):
            pa[i] = a[i]
        for j in range(nb):
            pb[j] = b[j]
        for i in range(na + nb - 1):
            po[i] = 0
        for i in range(na):
            x = pa[i]
            if x == 0:
                continue
            for j in range(nb):
                po[i + j] += x * pb[j]
        return [po[i] for i in range(na + nb - 1)]
    finally:
        free(pa); free(pb); free(po)


cdef list _convolve_obj(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef list out = [0] * (na + nb - 1)
    cdef object x, y
    for i in range(na):
        x = a[i]
        if not x:
            continue
        for j in range(nb):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def convolve(list a, list b):
    """Dense product of two coefficient lists (index = exponent offset)."""
    if not a or not b:
        return []
    if _bound(a) * _bound(b) * min(len(a), len(b)) <= _LIMIT:
        return _convolve_i64(a, b)
    return _convolve_obj(a, b)


def horner(list coeffs, object t):
    """Evaluate a dense coefficient list at the integer ``t``."""
    cdef object acc = 0
    cdef Py_ssize_t i
    for i in range(len(coeffs) - 1, -1, -1):
        acc = acc * t + coeffs[i]
    return acc


def add_into(list acc, list xs, Py_ssize_t offset=0):
    """In place: ``acc[offset + i] += xs[i]``; ``acc`` must be long enough."""
    cdef Py_ssize_t i, n = len(xs)
    cdef object x
    if offset < 0 or offset + n > len(acc):
        raise IndexError("accumulator too short")
    for i in range(n):
        x = xs[i]
        if x:
            acc[offset + i] += x
