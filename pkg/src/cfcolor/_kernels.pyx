# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact search for conflict-free colorings.

Same contract as ``_kernels_py.search``; see that module for the argument layout.
"""

from libc.stdlib cimport malloc, calloc, free


cdef struct Ctx:
    int n
    int k
    int closed
    int partial
    int *order
    int *nptr
    int *nidx
    int *tptr
    int *tidx
    int *cnt
    int *col
    long long nodes
    long long limit
    int aborted


cdef inline void _place(Ctx *s, int v, int c, int delta) nogil:
    cdef int stride = s.k + 1
    cdef int i
    for i in range(s.nptr[v], s.nptr[v + 1]):
        s.cnt[s.nidx[i] * stride + c] += delta
    if s.closed:
        s.cnt[v * stride + c] += delta


cdef inline int _satisfied(Ctx *s, int v) nogil:
    cdef int base = v * (s.k + 1)
    cdef int c
    for c in range(1, s.k + 1):
        if s.cnt[base + c] == 1:
            return 1
    return 0


cdef int _dfs(Ctx *s, int p, int maxused) nogil:
    cdef int v, c, top, i, ok
    if p == s.n:
        return 1
    if s.limit >= 0 and s.nodes >= s.limit:
        s.aborted = 1
        return 0
    v = s.order[p]
    top = maxused + 1
    if top > s.k:
        top = s.k
    c = 1
    while True:
        if c > top:
            if s.partial and c != 0:
                c = 0
            else:
                break
        s.nodes += 1
        s.col[v] = c
        _place(s, v, c, 1)
        ok = 1
        for i in range(s.tptr[p], s.tptr[p + 1]):
            if not _satisfied(s, s.tidx[i]):
                ok = 0
                break
        if ok:
            if _dfs(s, p + 1, maxused if c <= maxused else c):
                return 1
        _place(s, v, c, -1)
        s.col[v] = -1
        if s.aborted:
            return 0
        if c == 0:
            break
        c += 1
    return 0


def search(int n, order, nptr, nidx, tptr, tidx, int k, bint closed, bint partial, long long limit=-1):
    cdef Ctx s
    cdef int i
    cdef int res
    s.n = n
    s.k = k
    s.closed = closed
    s.partial = partial
    s.nodes = 0
    s.limit = limit
    s.aborted = 0
    s.order = <int *> malloc(max(n, 1) * sizeof(int))
    s.nptr = <int *> malloc((n + 1) * sizeof(int))
    s.nidx = <int *> malloc(max(len(nidx), 1) * sizeof(int))
    s.tptr = <int *> malloc((n + 1) * sizeof(int))
    s.tidx = <int *> malloc(max(len(tidx), 1) * sizeof(int))
    s.cnt = <int *> calloc(max(n, 1) * (k + 1), sizeof(int))
    s.col = <int *> malloc(max(n, 1) * sizeof(int))
    try:
        for i in range(n):
            s.order[i] = order[i]
            s.col[i] = -1
        for i in range(n + 1):
            s.nptr[i] = nptr[i]
            s.tptr[i] = tptr[i]
        for i in range(len(nidx)):
            s.nidx[i] = nidx[i]
        for i in range(len(tidx)):
            s.tidx[i] = tidx[i]
        with nogil:
            res = _dfs(&s, 0, 0)
        if s.aborted:
            return None, s.nodes, True
        if res:
            return [s.col[i] for i in range(n)], s.nodes, False
        return None, s.nodes, False
    finally:
        free(s.order)
        free(s.nptr)
        free(s.nidx)
        free(s.tptr)
        free(s.tidx)
        free(s.cnt)
        free(s.col)
