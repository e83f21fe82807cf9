# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Tanner-graph BFS girth and flooding sum-product decoding."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, exp, log1p, INFINITY, isnan

cnp.import_array()


def bfs_girth(const cnp.int64_t[::1] ptr, const cnp.int64_t[::1] idx, long cap):
    """Shortest cycle length of a simple graph in CSR form, or ``cap + 2`` if none <= cap."""
    cdef Py_ssize_t nv = ptr.shape[0] - 1
    cdef long best = cap + 2
    cdef cnp.int64_t[::1] dist = np.full(nv, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] parent = np.full(nv, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] queue = np.empty(max(nv, 1), dtype=np.int64)
    cdef Py_ssize_t root, head, tail, t, i
    cdef cnp.int64_t u, w, du, c
    with nogil:
        for root in range(nv):
            if ptr[root + 1] - ptr[root] < 2:
                continue
            dist[root] = 0
            queue[0] = root
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if 2 * du >= best:
                    break
                for t in range(ptr[u], ptr[u + 1]):
                    w = idx[t]
                    if dist[w] < 0:
                        dist[w] = du + 1
                        parent[w] = u
                        queue[tail] = w
                        tail += 1
                    elif w != parent[u]:
                        c = du + dist[w] + 1
                        if c < best:
                            best = c
            for i in range(tail):
                dist[queue[i]] = -1
                parent[queue[i]] = -1
            if best <= 3:
                break
    return best


cdef inline double corr(double x) nogil:
    # log(1 + e^-x) for x >= 0; below double resolution past 36
    if x > 36.0:
        return 0.0
    return log1p(exp(-x))


cdef inline double boxplus(double a, double b) nogil:
    cdef double s = 1.0
    cdef double aa = fabs(a), ab = fabs(b)
    if a < 0:
        s = -s
    if b < 0:
        s = -s
    if a == 0 or b == 0:
        return 0.0
    if aa == INFINITY:
        return b
    if ab == INFINITY:
        return a
    return s * (aa if aa < ab else ab) + corr(fabs(a + b)) - corr(fabs(a - b))


def spa_flood(const cnp.int64_t[::1] row_ptr, const cnp.int64_t[::1] edge_var,
              const cnp.int64_t[::1] var_ptr, const cnp.int64_t[::1] var_edges,
              llr_in, int max_iter, double clip):
    """Flooding log-domain sum-product decoding; see ``_fallback.spa_flood``."""
    cdef const double[::1] llr = np.ascontiguousarray(llr_in, dtype=np.float64)
    cdef Py_ssize_t n = llr.shape[0]
    cdef Py_ssize_t nchk = row_ptr.shape[0] - 1
    cdef Py_ssize_t nedge = edge_var.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] total_arr = np.array(llr, dtype=np.float64)
    cdef double[::1] total = total_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] hard_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] hard = hard_arr
    cdef double[::1] v2c = np.empty(nedge, dtype=np.float64)
    cdef double[::1] c2v = np.zeros(nedge, dtype=np.float64)
    cdef Py_ssize_t dmax = 0, c, k, v, a, b, d, t
    for c in range(nchk):
        if row_ptr[c + 1] - row_ptr[c] > dmax:
            dmax = row_ptr[c + 1] - row_ptr[c]
    cdef double[::1] fwd = np.empty(dmax + 1, dtype=np.float64)
    cdef double[::1] bwd = np.empty(dmax + 1, dtype=np.float64)
    cdef double x, acc
    cdef int it, parity, used = max_iter
    cdef bint ok = False

    with nogil:
        for k in range(nedge):
            v2c[k] = llr[edge_var[k]]
        for it in range(1, max_iter + 1):
            for c in range(nchk):
                a = row_ptr[c]
                b = row_ptr[c + 1]
                d = b - a
                if d == 0:
                    continue
                # fwd[t] combines inputs 0..t-1, bwd[t] inputs t..d-1; index 0 / d is neutral
                fwd[0] = INFINITY
                fwd[1] = v2c[a]
                for t in range(1, d - 1):
                    fwd[t + 1] = boxplus(fwd[t], v2c[a + t])
                bwd[d] = INFINITY
                bwd[d - 1] = v2c[a + d - 1]
                for t in range(d - 2, 0, -1):
                    bwd[t] = boxplus(bwd[t + 1], v2c[a + t])
                for t in range(d):
                    if t == 0:
                        x = bwd[1]
                    elif t == d - 1:
                        x = fwd[d - 1]
                    else:
                        x = boxplus(fwd[t], bwd[t + 1])
                    if x > clip:
                        x = clip
                    elif x < -clip:
                        x = -clip
                    c2v[a + t] = x
            for v in range(n):
                acc = llr[v]
                for t in range(var_ptr[v], var_ptr[v + 1]):
                    acc = acc + c2v[var_edges[t]]
                total[v] = acc
                hard[v] = 1 if acc < 0 else 0
                for t in range(var_ptr[v], var_ptr[v + 1]):
                    k = var_edges[t]
                    x = acc - c2v[k]
                    if x > clip:
                        x = clip
                    elif x < -clip:
                        x = -clip
                    v2c[k] = x
            ok = True
            for c in range(nchk):
                parity = 0
                for k in range(row_ptr[c], row_ptr[c + 1]):
                    parity ^= hard[edge_var[k]]
                if parity:
                    ok = False
                    break
            if ok:
                used = it
                break
    return hard_arr, total_arr, bool(ok), used
