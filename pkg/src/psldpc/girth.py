"""Girth of QC-LDPC codes, from the exponent matrix or from the expanded Tanner graph.

:func:`girth_exponent` works entirely on the block-level graph. A closed walk
``(i0,j0), (i0,j1), (i1,j1), ..., (i_{l-1},j0)`` through finite entries, with
adjacent positions distinct, lifts to a closed non-backtracking walk of length
``2l`` in the expanded graph exactly when the alternating sum of its exponents
vanishes mod ``P``. The search meets in the middle: from each anchor column it
enumerates non-backtracking half-walks of length ``l`` and looks for two that end
at the same block vertex with the same accumulated shift, leaving and arriving
through different edges. Anchoring at the smallest column index of the walk
lets every half-walk stay within columns ``>= anchor``.

:func:`girth_graph` is the independent oracle: breadth-first search over the
binary matrix.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .matrix import ExponentMatrix, SparseBinaryMatrix

DEFAULT_CAP = 12


@functools.total_ordering
@dataclass(frozen=True)
class GirthResult:
    """``exact`` with an even ``value`` >= 4, or ``exceeds_cap`` with the search ``cap``."""

    kind: str
    value: int | None = None
    cap: int | None = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.value is None or self.value < 4 or self.value % 2:
                raise ValueError(f"exact girth must be even and >= 4, got {self.value}")
        elif self.kind == "exceeds_cap":
            if self.cap is None:
                raise ValueError("exceeds_cap result needs the cap")
        else:
            raise ValueError(f"unknown girth result kind {self.kind!r}")

    @classmethod
    def exact(cls, value: int) -> GirthResult:
        return cls("exact", value=value)

    @classmethod
    def exceeds(cls, cap: int) -> GirthResult:
        return cls("exceeds_cap", cap=cap)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def lower_bound(self) -> int:
        """The girth if exact, else the smallest even value above the cap."""
        return self.value if self.is_exact else self.cap + 2

    def _key(self):
        return self.value if self.is_exact else math.inf

    def __lt__(self, other):
        if not isinstance(other, GirthResult):
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other):
        if not isinstance(other, GirthResult):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return f"girth={self.value}" if self.is_exact else f"girth>cap={self.cap}"


@dataclass(frozen=True)
class CycleWitness:
    """Closed alternating position sequence whose exponent alternating sum is 0 mod P."""

    positions: tuple[tuple[int, int], ...]
    alternating_sum: int

    @property
    def length(self) -> int:
        return len(self.positions)

    def describe(self, E: ExponentMatrix) -> str:
        e = [int(E.entries[p]) for p in self.positions]
        terms = " + ".join(f"({e[k]}-{e[k + 1]})" for k in range(0, len(e), 2))
        return f"{terms} = {self.alternating_sum} == 0 (mod {E.lift})"


def verify_witness(E: ExponentMatrix, w: CycleWitness) -> bool:
    """Re-check alternation, adjacency distinctness, finiteness and the cycle sum."""
    pos = w.positions
    L = len(pos)
    if L < 4 or L % 2:
        return False
    for k in range(L):
        a, b = pos[k], pos[(k + 1) % L]
        if a == b:
            return False
        # even steps share a block row, odd steps share a block column
        shared = 0 if k % 2 == 0 else 1
        if a[shared] != b[shared] or a[1 - shared] == b[1 - shared]:
            return False
    if not all(E.finite[p] for p in pos):
        return False
    total = sum((-1) ** k * int(E.entries[p]) for k, p in enumerate(pos))
    return total == w.alternating_sum and total % E.lift == 0


def _check_cap(cap: int):
    if cap < 4 or cap % 2:
        raise ValueError(f"cap must be an even integer >= 4, got {cap}")


class _BlockGraph:
    """Adjacency of the block-level bipartite graph; edges are finite positions."""

    def __init__(self, E: ExponentMatrix):
        self.P = E.lift
        ii, jj = np.nonzero(E.finite)
        self.edges = list(zip(ii.tolist(), jj.tolist()))
        self.shift = [int(E.entries[p]) for p in self.edges]
        self.col_adj = [[] for _ in range(E.n)]
        self.row_adj = [[] for _ in range(E.m)]
        for k, (i, j) in enumerate(self.edges):
            self.col_adj[j].append((k, i))
            self.row_adj[i].append((k, j))


def _shortest_at_anchor(g: _BlockGraph, j0: int, max_half: int):
    """Smallest half-length ``l <= max_half`` closing a cycle at anchor column ``j0``.

    Returns ``(l, walk_a, walk_b)`` with the two half-walks as edge tuples, or None.
    """
    P = g.P
    # state: (on_column, vertex, offset, edges)
    frontier = [(True, j0, 0, ())]
    for l in range(1, max_half + 1):
        nxt = []
        for on_col, v, off, path in frontier:
            last = path[-1] if path else -1
            if on_col:
                for k, i in g.col_adj[v]:
                    if k != last:
                        nxt.append((False, i, (off - g.shift[k]) % P, path + (k,)))
            else:
                for k, j in g.row_adj[v]:
                    if k != last and j >= j0:
                        nxt.append((True, j, (off + g.shift[k]) % P, path + (k,)))
        frontier = nxt
        if l < 2:
            continue
        hit = _find_pair(frontier)
        if hit is not None:
            return (l,) + hit
    return None


def _find_pair(walks):
    # Two walks pair up iff they share (end, offset) and differ in both first and
    # last edge; inside a group such a pair exists iff neither edge is constant.
    groups: dict = {}
    for w in walks:
        key = (w[0], w[1], w[2])
        first, last = w[3][0], w[3][-1]
        st = groups.get(key)
        if st is None:
            groups[key] = [first, last, False, False, [w]]
            continue
        st[4].append(w)
        if first != st[0]:
            st[2] = True
        if last != st[1]:
            st[3] = True
        if st[2] and st[3]:
            members = st[4]
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    pa, pb = members[a][3], members[b][3]
                    if pa[0] != pb[0] and pa[-1] != pb[-1]:
                        return pa, pb
    return None


def _witness(g: _BlockGraph, walk_a, walk_b) -> CycleWitness:
    seq = list(walk_a) + list(reversed(walk_b))
    positions = tuple(g.edges[k] for k in seq)
    total = sum((-1) ** t * g.shift[k] for t, k in enumerate(seq))
    return CycleWitness(positions, total)


def girth_exponent(E: ExponentMatrix, cap: int = DEFAULT_CAP, witness: bool = False):
    """Exact girth of ``H(E, P)`` up to ``cap`` via the exponent cycle-sum condition.

    Returns a :class:`GirthResult`, or ``(GirthResult, CycleWitness | None)`` when
    ``witness`` is set.
    """
    _check_cap(cap)
    g = _BlockGraph(E)
    best = None
    max_half = cap // 2
    for j0 in range(E.n):
        if not g.col_adj[j0]:
            continue
        found = _shortest_at_anchor(g, j0, max_half)
        if found is not None:
            best = found
            max_half = found[0] - 1
            if max_half < 2:
                break
    if best is None:
        res = GirthResult.exceeds(cap)
        return (res, None) if witness else res
    res = GirthResult.exact(2 * best[0])
    return (res, _witness(g, best[1], best[2])) if witness else res


def tanner_adjacency(H: SparseBinaryMatrix) -> tuple[np.ndarray, np.ndarray]:
    """CSR adjacency of the Tanner graph: variables ``0..cols-1``, checks after them."""
    vdeg = H.col_weights()
    cdeg = H.row_weights()
    ptr = np.zeros(H.cols + H.rows + 1, dtype=np.int64)
    np.cumsum(np.concatenate([vdeg, cdeg]), out=ptr[1:])
    idx = np.concatenate([H.col_idx + H.cols, H.row_idx]).astype(np.int64)
    return ptr, idx


def girth_graph(H: SparseBinaryMatrix, cap: int = DEFAULT_CAP) -> GirthResult:
    """Girth of the Tanner graph of ``H`` by breadth-first search from every vertex."""
    _check_cap(cap)
    ptr, idx = tanner_adjacency(H)
    g = kernels.bfs_girth(ptr, idx, cap)
    return GirthResult.exact(g) if g <= cap else GirthResult.exceeds(cap)


def check_theorem1(E0: ExponentMatrix, E: ExponentMatrix, cap: int = DEFAULT_CAP) -> bool:
    """True iff the girth of the compound ``E`` is at least that of its base ``E0``."""
    return girth_exponent(E, cap) >= girth_exponent(E0, cap)
