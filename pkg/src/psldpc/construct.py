"""Base codes, partition masks, Latin squares and the partition-and-splice compositions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .matrix import (
    INF,
    ExponentMatrix,
    SparseBinaryMatrix,
    _frozen,
    as_mask,
    mask_binary,
    mask_exponent,
)

# Hamming-like masks used for the (4, 8) and (4, 12) GCD examples.
HAMMING_4x8 = (
    (1, 0, 1, 1, 1, 0, 0, 0),
    (1, 1, 0, 1, 0, 1, 0, 0),
    (1, 1, 1, 0, 0, 0, 1, 0),
    (0, 1, 1, 1, 0, 0, 0, 1),
)
HAMMING_4x12 = (
    (1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0),
    (1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0),
    (1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0),
    (0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1),
)
_FIXED_HAMMING = {(4, 8): HAMMING_4x8, (4, 12): HAMMING_4x12}


def is_latin(cells) -> bool:
    """True iff every row and column of the square grid is a permutation of ``0..N-1``."""
    arr = np.asarray(cells)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"Latin square must be square, got shape {arr.shape}")
    N = arr.shape[0]
    target = np.arange(N)
    return bool(
        (np.sort(arr, axis=1) == target).all() and (np.sort(arr, axis=0) == target[:, None]).all()
    )


validate_latin = is_latin


@dataclass(frozen=True, eq=False)
class LatinSquare:
    cells: np.ndarray

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] < 2:
            raise ValueError(f"Latin square must be an N x N grid with N >= 2, got {arr.shape}")
        if not is_latin(arr):
            raise ValueError("not a Latin square: some row or column repeats a symbol")
        object.__setattr__(self, "cells", _frozen(arr))

    @property
    def order(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash(self.cells.tobytes())

    def tolist(self):
        return self.cells.tolist()


@dataclass(frozen=True, eq=False)
class MaskSet:
    """N binary masks of equal shape that partition the cells of an ``m x n`` grid."""

    masks: tuple[np.ndarray, ...]

    def __post_init__(self):
        masks = tuple(as_mask(m) for m in self.masks)
        if len(masks) < 2:
            raise ValueError(f"a mask set needs at least 2 masks, got {len(masks)}")
        shape = masks[0].shape
        for k, mk in enumerate(masks):
            if mk.shape != shape:
                raise ValueError(f"mask {k} has shape {mk.shape}, expected {shape}")
        total = np.sum([mk.astype(np.int64) for mk in masks], axis=0)
        if not (total == 1).all():
            i, j = map(int, np.argwhere(total != 1)[0])
            raise ValueError(
                f"masks do not partition the grid: cell ({i}, {j}) is covered {total[i, j]} times"
            )
        object.__setattr__(self, "masks", masks)

    @classmethod
    def complement_of(cls, m0, count: int = 2) -> MaskSet:
        """``M0``, ``1 - M0``, then ``count - 2`` all-zero masks."""
        m0 = as_mask(m0)
        return extend_maskset(cls((m0, 1 - m0)), count)

    @property
    def count(self) -> int:
        return len(self.masks)

    @property
    def shape(self) -> tuple[int, int]:
        return self.masks[0].shape

    def __getitem__(self, k: int) -> np.ndarray:
        return self.masks[k]

    def __eq__(self, other):
        if not isinstance(other, MaskSet):
            return NotImplemented
        return self.count == other.count and all(
            np.array_equal(a, b) for a, b in zip(self.masks, other.masks)
        )

    def __hash__(self):
        return hash(tuple(m.tobytes() for m in self.masks))


def gcd_base(P: int, L: int) -> ExponentMatrix:
    """GCD-style base: entry ``(i, j) = f_i * j mod P`` with row factors ``(0, 1, L, L+1)``."""
    if P < 2 or L < 2:
        raise ValueError(f"need P >= 2 and L >= 2, got P={P}, L={L}")
    factors = np.array([0, 1, L, L + 1], dtype=np.int64)
    return ExponentMatrix(np.outer(factors, np.arange(L)) % P, P)


def latin_circulant(N: int) -> LatinSquare:
    """The square ``a[i, j] = (i - j) mod N``."""
    if N < 2:
        raise ValueError(f"Latin square order must be >= 2, got {N}")
    i = np.arange(N)
    return LatinSquare((i[:, None] - i[None, :]) % N)


def random_latin(N: int, rng: np.random.Generator) -> LatinSquare:
    """Circulant square with independently permuted rows, columns and symbols."""
    base = latin_circulant(N).cells
    sym = rng.permutation(N)
    return LatinSquare(sym[base[rng.permutation(N)][:, rng.permutation(N)]])


def _tiled(block: np.ndarray, m: int, n: int) -> np.ndarray:
    if m < 1 or n < 1 or n % m:
        raise ValueError(f"n={n} must be a positive multiple of m={m}")
    return np.tile(block, (1, n // m)).astype(np.uint8)


def mask_diagonal(m: int, n: int) -> MaskSet:
    """D partition: ``M0 = [X ... X]`` with ``X`` zero on the diagonal, one elsewhere."""
    return MaskSet.complement_of(_tiled(1 - np.eye(m, dtype=np.uint8), m, n))


def mask_triangle(m: int, n: int) -> MaskSet:
    """T partition: ``M0 = [X ... X]`` with ``X`` lower-triangular ones including the diagonal."""
    return MaskSet.complement_of(_tiled(np.tril(np.ones((m, m), dtype=np.uint8)), m, n))


def hamming_columns(m: int) -> list[tuple[int, ...]]:
    """Distinct non-zero columns of length ``m`` in the Hamming-like preference order.

    Weights run ``m-1, m-2, ..., 1`` and then ``m`` (the all-one column, which
    would leave nothing for the complement). Within a weight, columns come in
    cyclic-shift families, each family led by its lexicographically largest
    member and followed by successive downward rotations; families are taken
    in decreasing order of their leader.
    """
    order = []
    for w in list(range(m - 1, 0, -1)) + [m]:
        seen = set()
        for lead in sorted(_weight_columns(m, w), reverse=True):
            if lead in seen:
                continue
            col = lead
            for _ in range(m):
                if col not in seen:
                    seen.add(col)
                    order.append(col)
                col = col[-1:] + col[:-1]
    return order


def _weight_columns(m: int, w: int):
    for support in combinations(range(m), w):
        yield tuple(1 if i in support else 0 for i in range(m))


def mask_hamming(m: int, n: int) -> MaskSet:
    """H partition: ``M0`` with columns as distinct as possible.

    The 4x8 and 4x12 shapes return the fixed example masks. Other shapes use
    :func:`hamming_columns`, cycling through it again once it is exhausted.
    """
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2 and n >= 1, got m={m}, n={n}")
    if (m, n) in _FIXED_HAMMING:
        m0 = np.array(_FIXED_HAMMING[m, n], dtype=np.uint8)
    else:
        cols = hamming_columns(m)
        m0 = np.array([cols[j % len(cols)] for j in range(n)], dtype=np.uint8).T
    return MaskSet.complement_of(m0)


PARTITIONS = {"d": mask_diagonal, "t": mask_triangle, "h": mask_hamming}


def extend_maskset(ms: MaskSet, N: int) -> MaskSet:
    """Pad a two-mask set with ``N - 2`` all-zero masks."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if ms.count != 2:
        raise ValueError(f"can only extend a two-mask set, got {ms.count} masks")
    zero = np.zeros(ms.shape, dtype=np.uint8)
    return MaskSet(ms.masks + (zero,) * (N - 2))


def random_maskset(m: int, n: int, N: int, rng: np.random.Generator) -> MaskSet:
    """Each cell independently assigned to one of ``N`` masks uniformly at random."""
    owner = rng.integers(0, N, size=(m, n))
    return MaskSet(tuple((owner == k).astype(np.uint8) for k in range(N)))


def _check_compat(shape: tuple[int, int], ms: MaskSet, A: LatinSquare):
    if ms.shape != shape:
        raise ValueError(f"mask shape {ms.shape} does not match base block shape {shape}")
    if ms.count != A.order:
        raise ValueError(f"{ms.count} masks but Latin square of order {A.order}")


def splice_exponent(E0: ExponentMatrix, ms: MaskSet, A: LatinSquare) -> ExponentMatrix:
    """Block ``(r, c)`` of the ``N x N`` result is ``E0`` masked by ``M[A[r, c]]``."""
    _check_compat(E0.shape, ms, A)
    parts = [mask_exponent(E0, mk).entries for mk in ms.masks]
    N = A.order
    return ExponentMatrix(np.block([[parts[A.cells[r, c]] for c in range(N)] for r in range(N)]),
                          E0.lift)


def splice_binary(H0: SparseBinaryMatrix, P: int, ms: MaskSet, A: LatinSquare) -> SparseBinaryMatrix:
    """Binary-level splice: works for any ``mP x nP`` base, including ``P = 1``."""
    if P < 1 or H0.rows % P or H0.cols % P:
        raise ValueError(f"matrix {H0.shape} is not an array of {P}x{P} blocks")
    _check_compat((H0.rows // P, H0.cols // P), ms, A)
    parts = [mask_binary(H0, P, mk).positions() for mk in ms.masks]
    N = A.order
    chunks = []
    for r in range(N):
        for c in range(N):
            pos = parts[A.cells[r, c]]
            if len(pos):
                chunks.append(pos + (r * H0.rows, c * H0.cols))
    pos = np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)
    rows, cols = H0.rows * N, H0.cols * N
    return SparseBinaryMatrix._from_sorted_keys(rows, cols, np.sort(pos[:, 0] * cols + pos[:, 1]))


def splice_special_n2(E0: ExponentMatrix) -> ExponentMatrix:
    """Two-fold splice with the lower-triangular partition and ``A = [[0, 1], [1, 0]]``."""
    return splice_exponent(E0, mask_triangle(E0.m, E0.n), latin_circulant(2))


def masked_cells_are_inf(E: ExponentMatrix, ms: MaskSet, A: LatinSquare, E0: ExponentMatrix) -> bool:
    """True iff every block of ``E`` is ``INF`` wherever its selecting mask is 0."""
    m, n = E0.shape
    for r in range(A.order):
        for c in range(A.order):
            blk = E.entries[r * m:(r + 1) * m, c * n:(c + 1) * n]
            if (blk[ms[A.cells[r, c]] == 0] != INF).any():
                return False
    return True


def as_latin(cells: Sequence[Sequence[int]] | LatinSquare) -> LatinSquare:
    return cells if isinstance(cells, LatinSquare) else LatinSquare(np.asarray(cells))
