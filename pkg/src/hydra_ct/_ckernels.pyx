# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contracts as ``_pykernels``."""
from libc.stdlib cimport malloc, free
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF

import numpy as np


cdef tuple _pack(long *buf, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object item
    for i in range(n):
        item = buf[i]
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


def reduce_codes(seq):
    cdef tuple t = tuple(seq)
    cdef Py_ssize_t n = len(t), top = 0, i
    cdef long c
    if n == 0:
        return ()
    cdef long *buf = <long *> malloc(n * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            c = t[i]
            if top > 0 and buf[top - 1] == (c ^ 1):
                top -= 1
            else:
                buf[top] = c
                top += 1
        return _pack(buf, top)
    finally:
        free(buf)


def concat_reduce(tuple u, tuple v):
    cdef Py_ssize_t nu = len(u), nv = len(v)
    cdef Py_ssize_t n = nu if nu < nv else nv
    cdef Py_ssize_t i = 0
    while i < n and <long> u[nu - 1 - i] == (<long> v[i] ^ 1):
        i += 1
    if i == 0:
        return u + v
    return u[: nu - i] + v[i:]


def invert_codes(tuple w):
    cdef Py_ssize_t n = len(w), i
    cdef tuple out = PyTuple_New(n)
    cdef object item
    for i in range(n):
        item = <long> w[n - 1 - i] ^ 1
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


def substitute(word, table, Py_ssize_t budget):
    cdef Py_ssize_t cap = 64, top = 0, j, m
    cdef long x
    cdef tuple img
    cdef long *buf = <long *> malloc(cap * sizeof(long))
    cdef long *tmp
    if buf == NULL:
        raise MemoryError()
    try:
        for c in word:
            img = <tuple> table[c]
            m = len(img)
            if top + m > cap:
                while top + m > cap:
                    cap *= 2
                tmp = <long *> malloc(cap * sizeof(long))
                if tmp == NULL:
                    raise MemoryError()
                for j in range(top):
                    tmp[j] = buf[j]
                free(buf)
                buf = tmp
            for j in range(m):
                x = img[j]
                if top > 0 and buf[top - 1] == (x ^ 1):
                    top -= 1
                else:
                    buf[top] = x
                    top += 1
            if top > budget:
                return None
        return _pack(buf, top)
    finally:
        free(buf)


def common_prefix(tuple u, tuple v):
    cdef Py_ssize_t nu = len(u), nv = len(v)
    cdef Py_ssize_t n = nu if nu < nv else nv
    cdef Py_ssize_t i = 0
    while i < n and <long> u[i] == <long> v[i]:
        i += 1
    return i


def four_point_max(dmat):
    cdef long[:, ::1] d = np.ascontiguousarray(dmat, dtype=np.int64).astype(np.int_)
    cdef Py_ssize_t n = d.shape[0], i, j, k, l
    cdef long s1, s2, s3, hi, lo, mid, gap, best = -1
    cdef Py_ssize_t bi = -1, bj = -1, bk = -1, bl = -1
    if n < 4:
        return 0, None
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            for k in range(j + 1, n - 1):
                for l in range(k + 1, n):
                    s1 = d[i, j] + d[k, l]
                    s2 = d[i, k] + d[j, l]
                    s3 = d[i, l] + d[j, k]
                    hi = s1 if s1 > s2 else s2
                    hi = hi if hi > s3 else s3
                    lo = s1 if s1 < s2 else s2
                    lo = lo if lo < s3 else s3
                    mid = s1 + s2 + s3 - hi - lo
                    gap = hi - mid
                    if gap > best:
                        best = gap
                        bi = i; bj = j; bk = k; bl = l
    return int(best), (bi, bj, bk, bl)


def quad_gap(dmat, i, j, k, l):
    d = dmat
    s = sorted((d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]))
    return int(s[2] - s[1])
