# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_pykernels``."""

from cpython cimport array


cdef extern from "Python.h":
    int PyUnicode_KIND(object)
    void* PyUnicode_DATA(object)
    Py_UCS4 PyUnicode_READ(int kind, void* data, Py_ssize_t index) nogil


cdef inline bint _near(const unsigned char* m, Py_UCS4 a, Py_UCS4 b) noexcept nogil:
    if a == b:
        return True
    if a >= 128 or b >= 128:
        return False
    return m[<Py_ssize_t>a * 128 + <Py_ssize_t>b] != 0


def is_typo(str candidate, str trademark, bytes matrix):
    cdef Py_ssize_t n = len(trademark)
    cdef Py_ssize_t k = len(candidate)
    cdef Py_ssize_t d = k - n
    cdef Py_ssize_t lim, p, s, q, j, lo
    cdef const unsigned char* m = matrix
    cdef int ck = PyUnicode_KIND(candidate)
    cdef int tk = PyUnicode_KIND(trademark)
    cdef void* cd = PyUnicode_DATA(candidate)
    cdef void* td = PyUnicode_DATA(trademark)
    cdef Py_UCS4 a, b, ch
    if len(matrix) < 128 * 128:
        raise ValueError("adjacency matrix must hold 128*128 bytes")
    if d == 3:
        return candidate.startswith("www") and candidate[3:] == trademark
    if d < -1 or d > 1:
        return False

    lim = k if k < n else n
    p = 0
    while p < lim and PyUnicode_READ(ck, cd, p) == PyUnicode_READ(tk, td, p):
        p += 1
    if d == 0 and p == n:
        return False  # identical
    s = 0
    while s < lim and PyUnicode_READ(ck, cd, k - 1 - s) == PyUnicode_READ(tk, td, n - 1 - s):
        s += 1

    if d == 0:
        q = n - 1 - s
        if p == q:
            a = PyUnicode_READ(tk, td, p)
            b = PyUnicode_READ(ck, cd, p)
            if a >= 128 or b >= 128:
                return False
            return m[<Py_ssize_t>a * 128 + <Py_ssize_t>b] != 0
        return (q == p + 1
                and PyUnicode_READ(ck, cd, p) == PyUnicode_READ(tk, td, q)
                and PyUnicode_READ(ck, cd, q) == PyUnicode_READ(tk, td, p))
    if d == -1:
        return p + s >= k
    if p + s < n:
        return False
    lo = n - s
    if lo < 0:
        lo = 0
    for j in range(lo, p + 1):
        ch = PyUnicode_READ(ck, cd, j)
        if j > 0 and _near(m, PyUnicode_READ(tk, td, j - 1), ch):
            return True
        if j < n and _near(m, PyUnicode_READ(tk, td, j), ch):
            return True
    return False


def ac_scan(str text, bytes amap, array.array delta, int n_classes,
            array.array out_start, array.array out_ids, array.array plen):
    cdef list hits = []
    cdef const unsigned char* am = amap
    cdef int* dl = delta.data.as_ints
    cdef int* os = out_start.data.as_ints
    cdef int* oi = out_ids.data.as_ints
    cdef int* pl = plen.data.as_ints
    cdef int kind = PyUnicode_KIND(text)
    cdef void* data = PyUnicode_DATA(text)
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t pos
    cdef int state = 0
    cdef int cls, a, b, pid
    cdef Py_UCS4 ch
    if len(amap) < 128:
        raise ValueError("class map must hold 128 bytes")
    for pos in range(n):
        ch = PyUnicode_READ(kind, data, pos)
        cls = am[ch] if ch < 128 else 0
        state = dl[state * n_classes + cls]
        a = os[state]
        b = os[state + 1]
        while a < b:
            pid = oi[a]
            hits.append((pid, pos - pl[pid] + 1))
            a += 1
    return hits
