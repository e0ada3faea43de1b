# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native subset-sum kernels.

Counts are stored as fixed-width unsigned integers split into ``L`` little-endian
64-bit limbs, one row per vote total, so ``counts.shape == (W + 1, L)``. ``L`` is
chosen by the caller so that ``2**n`` fits; every quantity touched here is
bounded by that.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

cnp.import_array()


cdef inline uint64_t _add(uint64_t* dst, const uint64_t* src, Py_ssize_t L) noexcept nogil:
    cdef uint64_t carry = 0, a, s, s2
    cdef Py_ssize_t k
    for k in range(L):
        a = dst[k]
        s = a + src[k]
        s2 = s + carry
        carry = (s < a) | (s2 < s)
        dst[k] = s2
    return carry


cdef inline uint64_t _sub(uint64_t* dst, const uint64_t* a, const uint64_t* b,
                          Py_ssize_t L) noexcept nogil:
    # dst = a - b; returns the final borrow (nonzero means a < b)
    cdef uint64_t borrow = 0, x, d, d2
    cdef Py_ssize_t k
    for k in range(L):
        x = a[k]
        d = x - b[k]
        d2 = d - borrow
        borrow = (x < b[k]) | (d < borrow)
        dst[k] = d2
    return borrow


cdef inline bint _is_zero(const uint64_t* a, Py_ssize_t L) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(L):
        if a[k] != 0:
            return False
    return True


def build_counts(int64_t[::1] weights, Py_ssize_t limbs):
    """Fold every weight into the coefficient array of prod(1 + x**w)."""
    cdef int64_t total = 0
    cdef Py_ssize_t i
    for i in range(weights.shape[0]):
        if weights[i] <= 0:
            raise ValueError("weights must be positive")
        total += weights[i]
    out = np.zeros((total + 1, limbs), dtype=np.uint64)
    cdef uint64_t[:, ::1] c = out
    cdef uint64_t* base = &c[0, 0]
    cdef int64_t cur = 0, t, w
    cdef uint64_t overflow = 0
    base[0] = 1
    with nogil:
        for i in range(weights.shape[0]):
            w = weights[i]
            t = cur
            while t >= 0:
                overflow |= _add(base + (t + w) * limbs, base + t * limbs, limbs)
                t -= 1
            cur += w
    if overflow:
        raise OverflowError("limb width too small for coefficient range")
    return out


def remove_weight(const uint64_t[:, ::1] c, int64_t w):
    """Exact deconvolution by (1 + x**w); returns None if w is not a factor."""
    cdef Py_ssize_t rows = c.shape[0], L = c.shape[1]
    if w <= 0 or w >= rows:
        return None
    out = np.empty((rows, L), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t t
    cdef uint64_t borrow = 0
    cdef bint ok = True
    with nogil:
        memcpy(&o[0, 0], &c[0, 0], w * L * sizeof(uint64_t))
        for t in range(w, rows):
            borrow |= _sub(&o[t, 0], &c[t, 0], &o[t - w, 0], L)
            if borrow:
                break
        if not borrow:
            for t in range(rows - w, rows):
                if not _is_zero(&o[t, 0], L):
                    ok = False
                    break
    if borrow or not ok:
        return None
    return out[:rows - w].copy()


def prefix_at(const uint64_t[:, ::1] c, int64_t[::1] points):
    """Sums of c[0:p] for each p in ``points`` (ascending, each <= len(c))."""
    cdef Py_ssize_t rows = c.shape[0], L = c.shape[1]
    cdef Py_ssize_t m = points.shape[0], j = 0
    out = np.zeros((m, L), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef uint64_t* acc = <uint64_t*> calloc(L, sizeof(uint64_t))
    if acc == NULL:
        raise MemoryError()
    cdef int64_t t = 0
    try:
        with nogil:
            while j < m:
                while t < points[j]:
                    _add(acc, &c[t, 0], L)
                    t += 1
                memcpy(&o[j, 0], acc, L * sizeof(uint64_t))
                j += 1
    finally:
        free(acc)
    return out


def deconvolved_prefix_at(const uint64_t[:, ::1] c, int64_t w, int64_t[::1] points):
    """Prefix sums of c / (1 + x**w), evaluated at ascending ``points``.

    One streaming deconvolution pass; only the last ``w`` quotient rows are
    kept. Returns None when a coefficient would go negative.
    """
    cdef Py_ssize_t rows = c.shape[0], L = c.shape[1]
    cdef Py_ssize_t m = points.shape[0], j = 0
    if w <= 0:
        raise ValueError("weight must be positive")
    if m and points[m - 1] > rows:
        raise ValueError("point beyond coefficient range")
    out = np.zeros((m, L), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef uint64_t* ring = <uint64_t*> calloc(w * L, sizeof(uint64_t))
    cdef uint64_t* acc = <uint64_t*> calloc(L, sizeof(uint64_t))
    if ring == NULL or acc == NULL:
        free(ring)
        free(acc)
        raise MemoryError()
    cdef int64_t t = 0, slot = 0
    cdef uint64_t borrow = 0
    try:
        with nogil:
            while j < m:
                while t < points[j]:
                    # ring[slot] holds q[t - w]; overwrite with q[t] = c[t] - q[t - w]
                    if t < w:
                        memcpy(ring + slot * L, &c[t, 0], L * sizeof(uint64_t))
                    else:
                        borrow |= _sub(ring + slot * L, &c[t, 0], ring + slot * L, L)
                    _add(acc, ring + slot * L, L)
                    t += 1
                    slot += 1
                    if slot == w:
                        slot = 0
                if borrow:
                    break
                memcpy(&o[j, 0], acc, L * sizeof(uint64_t))
                j += 1
    finally:
        free(ring)
        free(acc)
    if borrow:
        return None
    return out
