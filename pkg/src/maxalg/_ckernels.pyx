# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def maxplus_matmul(a, b):
    cdef const double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, ::1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0], m = A.shape[1], p = B.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double aik, s
    out = np.full((n, p), -INFINITY, dtype=np.float64)
    cdef double[:, ::1] C = out
    for i in range(n):
        for k in range(m):
            aik = A[i, k]
            if aik == -INFINITY:
                continue
            for j in range(p):
                s = aik + B[k, j]
                if s > C[i, j]:
                    C[i, j] = s
    return out


def karp_log_mean(w):
    cdef const double[:, ::1] W = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t m = W.shape[0]
    cdef Py_ssize_t k, u, v
    cdef double best, s, worst, q, result
    dd = np.full((m + 1, m), -INFINITY, dtype=np.float64)
    cdef double[:, ::1] D = dd
    D[0, 0] = 0.0
    for k in range(1, m + 1):
        for u in range(m):
            if D[k - 1, u] == -INFINITY:
                continue
            for v in range(m):
                s = D[k - 1, u] + W[u, v]
                if s > D[k, v]:
                    D[k, v] = s
    result = -INFINITY
    for v in range(m):
        if D[m, v] == -INFINITY:
            continue
        worst = INFINITY
        for k in range(m):
            q = (D[m, v] - D[k, v]) / <double>(m - k)
            if q < worst:
                worst = q
        if worst > result:
            result = worst
    return result


cdef void _scc_mask(Py_ssize_t s, Py_ssize_t n, const unsigned char[:, ::1] adj,
                    unsigned char[::1] comp, Py_ssize_t[::1] stack):
    # SCC of s within the subgraph on vertices >= s
    cdef Py_ssize_t top, v, x
    cdef unsigned char[::1] fwd = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] bwd = np.zeros(n, dtype=np.uint8)
    fwd[s] = 1
    stack[0] = s
    top = 1
    while top:
        top -= 1
        v = stack[top]
        for x in range(s, n):
            if adj[v, x] and not fwd[x]:
                fwd[x] = 1
                stack[top] = x
                top += 1
    bwd[s] = 1
    stack[0] = s
    top = 1
    while top:
        top -= 1
        v = stack[top]
        for x in range(s, n):
            if adj[x, v] and not bwd[x]:
                bwd[x] = 1
                stack[top] = x
                top += 1
    for x in range(n):
        comp[x] = fwd[x] & bwd[x]


def elementary_circuits(w, Py_ssize_t cap):
    cdef const double[:, ::1] W = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = W.shape[0]
    adj_arr = (np.asarray(W) != -INFINITY).astype(np.uint8)
    cdef const unsigned char[:, ::1] adj = adj_arr
    cdef unsigned char[::1] comp = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] blocked = np.zeros(n, dtype=np.uint8)
    # bmap[x, v] == 1 means v is in B(x)
    cdef unsigned char[:, ::1] bmap = np.zeros((n, n), dtype=np.uint8)
    cdef Py_ssize_t[::1] path = np.zeros(n + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] nxt = np.zeros(n + 1, dtype=np.intp)
    cdef unsigned char[::1] closed = np.zeros(n + 1, dtype=np.uint8)
    cdef double[::1] sums = np.zeros(n + 1, dtype=np.float64)
    cdef Py_ssize_t[::1] work = np.zeros(n * n + n + 1, dtype=np.intp)
    cdef Py_ssize_t s, depth, v, x, u, top, count = 0, size, i, used = 0
    cdef bint advanced, found
    # growable output buffers
    flat_arr = np.empty(max(16, 4 * n), dtype=np.int64)
    off_arr = np.empty(64, dtype=np.int64)
    prod_arr = np.empty(64, dtype=np.float64)
    cdef long long[::1] flat = flat_arr
    cdef long long[::1] offs = off_arr
    cdef double[::1] prods = prod_arr
    offs[0] = 0

    for s in range(n):
        _scc_mask(s, n, adj, comp, work)
        size = 0
        for x in range(n):
            size += comp[x]
        if size == 1 and not adj[s, s]:
            continue
        for x in range(n):
            blocked[x] = 0
            for u in range(n):
                bmap[x, u] = 0
        blocked[s] = 1
        depth = 0
        path[0] = s
        sums[0] = 0.0
        closed[0] = 0
        nxt[0] = s
        while depth >= 0:
            v = path[depth]
            advanced = False
            while nxt[depth] < n:
                x = nxt[depth]
                nxt[depth] += 1
                if not (adj[v, x] and comp[x]):
                    continue
                if x == s:
                    if count == cap:
                        return _finish(flat_arr, off_arr, prod_arr, count, used, True)
                    if used + depth + 1 > flat.shape[0]:
                        flat_arr = _grow(flat_arr, used, 2 * flat.shape[0] + depth + 1)
                        flat = flat_arr
                    if count + 2 > offs.shape[0]:
                        off_arr = _grow(off_arr, count + 1, 2 * offs.shape[0])
                        prod_arr = _grow(prod_arr, count, 2 * offs.shape[0])
                        offs = off_arr
                        prods = prod_arr
                    for i in range(depth + 1):
                        flat[used + i] = path[i]
                    used += depth + 1
                    prods[count] = sums[depth] + W[v, s]
                    count += 1
                    offs[count] = used
                    closed[depth] = 1
                elif not blocked[x]:
                    depth += 1
                    path[depth] = x
                    sums[depth] = sums[depth - 1] + W[v, x]
                    closed[depth] = 0
                    nxt[depth] = s
                    blocked[x] = 1
                    advanced = True
                    break
            if advanced:
                continue
            found = closed[depth]
            depth -= 1
            if found:
                work[0] = v
                top = 1
                while top:
                    top -= 1
                    u = work[top]
                    if blocked[u]:
                        blocked[u] = 0
                        for x in range(n):
                            if bmap[u, x]:
                                bmap[u, x] = 0
                                work[top] = x
                                top += 1
                if depth >= 0:
                    closed[depth] = 1
            else:
                for x in range(s, n):
                    if adj[v, x] and comp[x]:
                        bmap[x, v] = 1
    return _finish(flat_arr, off_arr, prod_arr, count, used, False)


def _grow(arr, Py_ssize_t keep, Py_ssize_t size):
    out = np.empty(size, dtype=arr.dtype)
    out[:keep] = arr[:keep]
    return out


def _finish(flat_arr, off_arr, prod_arr, Py_ssize_t count, Py_ssize_t used, truncated):
    return (
        np.array(flat_arr[:used]),
        np.array(off_arr[:count + 1]),
        np.array(prod_arr[:count]),
        bool(truncated),
    )
