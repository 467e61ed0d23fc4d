# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: triple counting and perfect-square scans."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef unsigned long long u64


def count_triples(labels, int nrel):
    cdef cnp.int32_t[:, :] lab = np.ascontiguousarray(labels, dtype=np.int32)
    cdef Py_ssize_t n = lab.shape[0]
    out = np.zeros((n, n, nrel * nrel), dtype=np.int32)
    cdef cnp.int32_t[:, :, :] cnt = out
    cdef Py_ssize_t x, y, z
    cdef int a
    for x in range(n):
        for z in range(n):
            a = lab[x, z] * nrel
            for y in range(n):
                cnt[x, y, a + lab[z, y]] += 1
    return out


cdef inline bint _is_square(u64 v):
    cdef u64 r = <u64>sqrt(<double>v)
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r * r == v


def square_scan(str kind, long long lo, long long hi):
    """Arguments v in [lo, hi] for which the kind's polynomial is a perfect square.
    Values must stay below 2**62; callers guard the range."""
    cdef long long v
    cdef long long val
    cdef int which
    if kind == "a":
        which = 0
    elif kind == "b":
        which = 1
    else:
        raise ValueError(f"unknown scan kind {kind!r}")
    out = []
    for v in range(lo, hi + 1):
        if which == 0:
            val = v * (v + 1) * (v + 4)
        else:
            val = v * (v - 2) * (2 * v - 3)
        if val < 0:
            continue
        if _is_square(<u64>val):
            out.append(v)
    return out
