# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Levenshtein distance and the flat-program span matcher.

Mirrors ``_pykernels`` exactly.  Span rows are packed into 64-bit masks, so
this matcher only handles strings of at most 63 characters; the dispatcher
in ``kernels.__init__`` routes longer inputs to the pure-Python fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int32_t, uint64_t
from libc.stdlib cimport free, malloc

cnp.import_array()

MAX_TEXT_LEN = 63


def levenshtein(str a, str b):
    """Levenshtein edit distance between two strings (unit costs)."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j
    cdef int cost, d1, d2, d3
    if a == b:
        return 0
    if la == 0:
        return lb
    if lb == 0:
        return la
    cdef int *prev = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(lb + 1):
            prev[j] = <int> j
        for i in range(1, la + 1):
            cur[0] = <int> i
            for j in range(1, lb + 1):
                cost = 0 if a[i - 1] == b[j - 1] else 1
                d1 = prev[j] + 1
                d2 = cur[j - 1] + 1
                d3 = prev[j - 1] + cost
                if d2 < d1:
                    d1 = d2
                if d3 < d1:
                    d1 = d3
                cur[j] = d1
            tmp = prev
            prev = cur
            cur = tmp
        return prev[lb]
    finally:
        free(prev)
        free(cur)


cdef inline void _compose(uint64_t *left, uint64_t *right, uint64_t *out,
                          Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef uint64_t mask, acc, low
    for i in range(n + 1):
        mask = left[i]
        acc = 0
        while mask:
            low = mask & (~mask + 1)
            j = 0
            while not (low & 1):
                low >>= 1
                j += 1
            acc |= right[j]
            mask &= mask - 1
        out[i] = acc


def match_program(
    int32_t[::1] kind,
    int32_t[::1] a1,
    int32_t[::1] a2,
    int32_t[::1] a3,
    int32_t[::1] iv_off,
    int32_t[::1] iv_len,
    int32_t[::1] iv_lo,
    int32_t[::1] iv_hi,
    int32_t[::1] nullable,
    int root,
    int32_t[::1] text_codes,
):
    """Anchored full-string match of a flat program against ``text_codes``."""
    cdef Py_ssize_t n = text_codes.shape[0]
    cdef Py_ssize_t n_nodes = kind.shape[0]
    cdef Py_ssize_t node, i, k, off, length, reps
    cdef int lo_bound, hi_bound
    cdef int32_t code
    cdef uint64_t new
    cdef bint changed, any_cur, in_set
    if n > MAX_TEXT_LEN:
        raise ValueError("text too long for the 64-bit matcher")
    cdef Py_ssize_t width = n + 1
    cdef uint64_t *rows = <uint64_t *> malloc(n_nodes * width * sizeof(uint64_t))
    cdef uint64_t *cur = <uint64_t *> malloc(width * sizeof(uint64_t))
    cdef uint64_t *nxt = <uint64_t *> malloc(width * sizeof(uint64_t))
    cdef uint64_t *tmp
    cdef uint64_t *row
    cdef uint64_t *left
    cdef uint64_t *right
    if rows == NULL or cur == NULL or nxt == NULL:
        free(rows)
        free(cur)
        free(nxt)
        raise MemoryError()
    try:
        with nogil:
            for node in range(n_nodes):
                row = rows + node * width
                k = kind[node]
                if k == 0:  # CHARSET
                    off = iv_off[node]
                    length = iv_len[node]
                    for i in range(width):
                        row[i] = 0
                    for i in range(n):
                        code = text_codes[i]
                        in_set = False
                        for reps in range(off, off + length):
                            if iv_lo[reps] <= code and code <= iv_hi[reps]:
                                in_set = True
                                break
                        if in_set:
                            row[i] = (<uint64_t> 1) << (i + 1)
                elif k == 1:  # CONCAT
                    _compose(rows + a1[node] * width, rows + a2[node] * width,
                             row, n)
                elif k == 2:  # ALTER
                    left = rows + a1[node] * width
                    right = rows + a2[node] * width
                    for i in range(width):
                        row[i] = left[i] | right[i]
                else:  # QUANT
                    left = rows + a1[node] * width
                    lo_bound = a2[node]
                    hi_bound = a3[node]
                    if hi_bound != -1 and lo_bound > hi_bound:
                        for i in range(width):
                            row[i] = 0
                        continue
                    for i in range(width):
                        cur[i] = (<uint64_t> 1) << i
                    for reps in range(lo_bound):
                        _compose(cur, left, nxt, n)
                        tmp = cur
                        cur = nxt
                        nxt = tmp
                    for i in range(width):
                        row[i] = cur[i]
                    if hi_bound == -1:
                        while True:
                            _compose(cur, left, nxt, n)
                            tmp = cur
                            cur = nxt
                            nxt = tmp
                            changed = False
                            for i in range(width):
                                new = row[i] | cur[i]
                                if new != row[i]:
                                    row[i] = new
                                    changed = True
                            if not changed:
                                break
                    else:
                        for reps in range(lo_bound, hi_bound):
                            _compose(cur, left, nxt, n)
                            tmp = cur
                            cur = nxt
                            nxt = tmp
                            changed = False
                            any_cur = False
                            for i in range(width):
                                if cur[i]:
                                    any_cur = True
                                new = row[i] | cur[i]
                                if new != row[i]:
                                    row[i] = new
                                    changed = True
                            if not changed or not any_cur:
                                break
        return bool((rows[root * width] >> n) & 1)
    finally:
        free(rows)
        free(cur)
        free(nxt)
