"""Pure-Python/numpy versions of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when the
extension is not built or when ``PSLDPC_PURE_PYTHON=1`` is set.
"""

from collections import deque

import numpy as np


def bfs_girth(ptr, idx, cap):
    """Shortest cycle length of an undirected simple graph given in CSR form.

    Returns a value ``> cap`` (``cap + 2``) when no cycle of length ``<= cap`` exists.
    """
    ptr = ptr.tolist()
    idx = idx.tolist()
    nv = len(ptr) - 1
    best = cap + 2
    dist = [-1] * nv
    parent = [-1] * nv
    for root in range(nv):
        if ptr[root + 1] - ptr[root] < 2:
            continue
        touched = [root]
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            for t in range(ptr[u], ptr[u + 1]):
                w = idx[t]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    c = du + dist[w] + 1
                    if c < best:
                        best = c
        for v in touched:
            dist[v] = -1
            parent[v] = -1
        if best <= 3:
            break
    return best


def _boxplus(a, b):
    return (
        np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        + np.log1p(np.exp(-np.abs(a + b)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )


def spa_flood(row_ptr, edge_var, var_ptr, var_edges, llr, max_iter, clip):
    """Flooding log-domain sum-product decoding.

    Edges are numbered in row-major order: check ``c`` owns edges
    ``row_ptr[c]:row_ptr[c+1]`` and edge ``k`` touches variable ``edge_var[k]``.
    ``var_edges[var_ptr[v]:var_ptr[v+1]]`` lists the edges of variable ``v``.

    Returns ``(hard_decision uint8, posterior llr, converged, iterations)``.
    """
    n = len(llr)
    nchk = len(row_ptr) - 1
    nedge = len(edge_var)
    llr = np.asarray(llr, dtype=np.float64)
    deg = np.diff(row_ptr)
    dmax = int(deg.max()) if nchk else 0
    slot = np.arange(dmax)
    valid = slot[None, :] < deg[:, None]
    edge_chk = np.repeat(np.arange(nchk), deg)
    table = np.where(valid, row_ptr[:-1, None] + slot[None, :], 0)

    v2c = llr[edge_var].copy()
    c2v = np.zeros(nedge)
    total = llr.copy()
    hard = (total < 0).astype(np.uint8)
    with np.errstate(invalid="ignore", over="ignore"):
        for it in range(1, max_iter + 1):
            if nchk and dmax:
                x = np.where(valid, v2c[table], np.inf)
                fwd = np.empty((nchk, dmax + 1))
                bwd = np.empty((nchk, dmax + 1))
                fwd[:, 0] = np.inf
                bwd[:, dmax] = np.inf
                for t in range(dmax):
                    fwd[:, t + 1] = _boxplus(fwd[:, t], x[:, t])
                for t in range(dmax - 1, -1, -1):
                    bwd[:, t] = _boxplus(bwd[:, t + 1], x[:, t])
                out = _boxplus(fwd[:, :dmax], bwd[:, 1:])
                # a degree-1 check combines two neutral (+inf) inputs
                out = np.clip(np.nan_to_num(out, nan=clip), -clip, clip)
                c2v = out[valid]
            total = llr + np.bincount(edge_var, weights=c2v, minlength=n)
            v2c = np.clip(total[edge_var] - c2v, -clip, clip)
            hard = (total < 0).astype(np.uint8)
            s = np.bincount(edge_chk, weights=hard[edge_var], minlength=nchk).astype(np.int64)
            if not np.any(s & 1):
                return hard, total, True, it
    return hard, total, False, max_iter
