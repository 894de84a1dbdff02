# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free Gauss-Jordan elimination on integer rows.

Same contract as ``_kernel_py.rref_int``. Works in 64-bit integers while
every operand stays below 2**31 in absolute value (so no product can
overflow) and falls back to Python integers as soon as that fails.
"""
from libc.stdlib cimport malloc, free
from math import gcd

from ._kernel_py import eliminate as _eliminate, rref_int as _rref_big

cdef long long LIMIT = 2147483647


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    a = _abs(a)
    b = _abs(b)
    while b:
        a, b = b, a % b
    return a


cdef Py_ssize_t _small(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                      Py_ssize_t *piv_out, Py_ssize_t *state) nogil:
    """Eliminate in place and return the rank.

    Returns -1 when an operand got too large; ``state`` then holds the
    column and rank reached, with the matrix still a valid intermediate.
    """
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef long long best, v, av, p, f, g, a, b, cont, x
    cdef long long *prow
    cdef long long *row
    cdef long long *tmp
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        best = 0
        for i in range(rank, nrows):
            v = m[i * ncols + c]
            if v:
                av = _abs(v)
                if piv < 0 or av < best:
                    piv = i
                    best = av
                    if av == 1:
                        break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                x = m[rank * ncols + j]
                m[rank * ncols + j] = m[piv * ncols + j]
                m[piv * ncols + j] = x
        prow = m + rank * ncols
        p = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = m + i * ncols
            f = row[c]
            if not f:
                continue
            g = _gcd(p, f)
            a = p // g
            b = f // g
            if _abs(a) > LIMIT or _abs(b) > LIMIT:
                state[0] = c
                state[1] = rank
                return -1
            for j in range(ncols):
                if _abs(row[j]) > LIMIT or _abs(prow[j]) > LIMIT:
                    state[0] = c
                    state[1] = rank
                    return -1
            cont = 0
            for j in range(ncols):
                row[j] = a * row[j] - b * prow[j]
                cont = _gcd(cont, row[j])
            if cont > 1:
                for j in range(ncols):
                    row[j] = row[j] // cont
        piv_out[rank] = c
        rank += 1
    for i in range(rank):
        row = m + i * ncols
        cont = 0
        for j in range(ncols):
            cont = _gcd(cont, row[j])
        if row[piv_out[i]] < 0:
            cont = -cont
        if cont != 1 and cont != 0:
            for j in range(ncols):
                row[j] = row[j] // cont
    return rank


def rref_int(rows, Py_ssize_t ncols):
    cdef list work = [r for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t i, j, rank
    cdef long long *m
    cdef Py_ssize_t *piv
    cdef Py_ssize_t state[2]
    if nrows == 0 or ncols == 0:
        return [], []
    for r in work:
        for x in r:
            if x > LIMIT or x < -LIMIT:
                return _rref_big(work, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            r = work[i]
            for j in range(ncols):
                m[i * ncols + j] = r[j]
        with nogil:
            rank = _small(m, nrows, ncols, piv, state)
        if rank < 0:
            rows_now = [[m[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
            return _eliminate(rows_now, ncols, state[0], state[1],
                              [piv[i] for i in range(state[1])])
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, [piv[i] for i in range(rank)]
    finally:
        free(m)
        free(piv)
