# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Same bitmask convention: bit ``x*n + y`` of a uint64 marks the pair (x, y).
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int32_t, uint8_t

cnp.import_array()


cdef inline uint64_t _compose(uint64_t a, uint64_t b, int n) nogil:
    cdef uint64_t row = ((<uint64_t>1) << n) - 1
    cdef uint64_t out = 0, ra, acc
    cdef int x, z
    for x in range(n):
        ra = (a >> (x * n)) & row
        acc = 0
        z = 0
        while ra:
            if ra & 1:
                acc |= (b >> (z * n)) & row
            ra >>= 1
            z += 1
        out |= acc << (x * n)
    return out


def compose(a, b, int n):
    return int(_compose(<uint64_t>int(a), <uint64_t>int(b), n))


def compose_table(left, right, int n):
    cdef uint64_t[:] lv = np.ascontiguousarray(left, dtype=np.uint64)
    cdef uint64_t[:] rv = np.ascontiguousarray(right, dtype=np.uint64)
    cdef Py_ssize_t m1 = lv.shape[0], m2 = rv.shape[0], i, j
    out = np.empty((m1, m2), dtype=np.uint64)
    cdef uint64_t[:, :] ov = out
    with nogil:
        for i in range(m1):
            for j in range(m2):
                ov[i, j] = _compose(lv[i], rv[j], n)
    return out


cdef class _UpsetWalk:
    cdef int64_t[:] order
    cdef uint64_t[:] above
    cdef object out
    cdef Py_ssize_t count, cap, k_max

    def __init__(self, order, above, Py_ssize_t cap):
        self.order = np.ascontiguousarray(order, dtype=np.int64)
        self.above = np.ascontiguousarray(above, dtype=np.uint64)
        self.cap = cap
        self.k_max = self.order.shape[0]
        self.count = 0
        self.out = np.empty(min(cap + 1, 1 << 16), dtype=np.uint64)

    cdef int _push(self, uint64_t mask) except -1:
        cdef uint64_t[:] buf
        if self.count >= self.out.shape[0]:
            self.out = np.resize(self.out, min(2 * self.out.shape[0], self.cap + 1))
        buf = self.out
        buf[self.count] = mask
        self.count += 1
        return 0

    cdef int walk(self, Py_ssize_t k, uint64_t mask) except -1:
        cdef int64_t pos
        if self.count > self.cap:
            return 0
        if k == self.k_max:
            self._push(mask)
            return 0
        pos = self.order[k]
        self.walk(k + 1, mask)
        if (self.above[pos] & ~mask) == 0:
            self.walk(k + 1, mask | ((<uint64_t>1) << pos))
        return 0


def enumerate_upsets(order, above, Py_ssize_t cap):
    w = _UpsetWalk(order, above, cap)
    w.walk(0, 0)
    if w.count > cap:
        return None
    return [int(v) for v in w.out[:w.count]]


def assoc_failures(op):
    cdef int32_t[:, :] t = np.ascontiguousarray(op, dtype=np.int32)
    cdef Py_ssize_t m = t.shape[0], a, b, c
    cdef long long count = 0
    cdef Py_ssize_t fa = -1, fb = -1, fc = -1
    with nogil:
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if t[t[a, b], c] != t[a, t[b, c]]:
                        if count == 0:
                            fa = a; fb = b; fc = c
                        count += 1
    return int(count), (int(fa), int(fb), int(fc))


def distrib_failures(meet, join):
    cdef int32_t[:, :] mt = np.ascontiguousarray(meet, dtype=np.int32)
    cdef int32_t[:, :] jt = np.ascontiguousarray(join, dtype=np.int32)
    cdef Py_ssize_t m = mt.shape[0], a, b, c
    cdef long long count = 0
    cdef Py_ssize_t fa = -1, fb = -1, fc = -1
    with nogil:
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if mt[a, jt[b, c]] != jt[mt[a, b], mt[a, c]]:
                        if count == 0:
                            fa = a; fb = b; fc = c
                        count += 1
    return int(count), (int(fa), int(fb), int(fc))


def residuation_failures(leq, mul, ldiv, rdiv):
    cdef uint8_t[:, :] le = np.ascontiguousarray(leq, dtype=np.uint8)
    cdef int32_t[:, :] mu = np.ascontiguousarray(mul, dtype=np.int32)
    cdef int32_t[:, :] ld = np.ascontiguousarray(ldiv, dtype=np.int32)
    cdef int32_t[:, :] rd = np.ascontiguousarray(rdiv, dtype=np.int32)
    cdef Py_ssize_t m = le.shape[0], a, b, c
    cdef long long count = 0
    cdef Py_ssize_t fa = -1, fb = -1, fc = -1
    cdef uint8_t p, u, o
    with nogil:
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    p = le[mu[a, b], c]
                    u = le[b, ld[a, c]]
                    o = le[a, rd[c, b]]
                    if p != u or p != o:
                        if count == 0:
                            fa = a; fb = b; fc = c
                        count += 1
    return int(count), (int(fa), int(fb), int(fc))
