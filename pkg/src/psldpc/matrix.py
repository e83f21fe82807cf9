"""Exponent matrices, sparse binary matrices and the two masking operators."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

#: Marker for a zero block in an exponent matrix. Valid shifts are non-negative.
INF = -1


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_mask(mask: Sequence[Sequence[int]] | np.ndarray) -> np.ndarray:
    """Coerce ``mask`` to a read-only 2-D uint8 array, rejecting non-binary entries."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("mask entries must be 0 or 1")
    return _frozen(arr.astype(np.uint8))


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    """An ``m x n`` array of CPM shifts over lift size ``P``; ``INF`` marks a zero block."""

    entries: np.ndarray
    lift: int

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"exponent matrix must be a non-empty 2-D grid, got shape {arr.shape}")
        lift = int(self.lift)
        if lift < 1:
            raise ValueError(f"lift size must be positive, got {lift}")
        bad = (arr != INF) & ((arr < 0) | (arr >= lift))
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise ValueError(
                f"entry ({i}, {j}) = {arr[i, j]} is outside [0, {lift - 1}] and is not INF"
            )
        object.__setattr__(self, "entries", _frozen(arr))
        object.__setattr__(self, "lift", lift)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def finite(self) -> np.ndarray:
        """Boolean support of the matrix (True where the block is a CPM)."""
        return self.entries != INF

    def with_lift(self, lift: int) -> ExponentMatrix:
        """Same shifts, different lift size (entries must still fit)."""
        return ExponentMatrix(self.entries, lift)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, ExponentMatrix):
            return NotImplemented
        return self.lift == other.lift and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.lift, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"ExponentMatrix(m={self.m}, n={self.n}, P={self.lift})"


@dataclass(frozen=True, eq=False)
class SparseBinaryMatrix:
    """Binary matrix stored as compressed rows and compressed columns.

    ``row_ptr``/``row_idx`` hold the sorted column indices of each row, and
    ``col_ptr``/``col_idx`` the sorted row indices of each column. Build with
    :meth:`from_positions` or :meth:`from_dense`.
    """

    rows: int
    cols: int
    row_ptr: np.ndarray
    row_idx: np.ndarray
    col_ptr: np.ndarray
    col_idx: np.ndarray

    @classmethod
    def from_positions(
        cls, rows: int, cols: int, positions: Iterable[tuple[int, int]] | np.ndarray
    ) -> SparseBinaryMatrix:
        rows, cols = int(rows), int(cols)
        if rows < 0 or cols < 0:
            raise ValueError("dimensions must be non-negative")
        pos = np.asarray(list(positions) if not isinstance(positions, np.ndarray) else positions,
                         dtype=np.int64).reshape(-1, 2)
        if len(pos):
            r, c = pos[:, 0], pos[:, 1]
            if (r < 0).any() or (r >= rows).any() or (c < 0).any() or (c >= cols).any():
                raise ValueError("position outside matrix bounds")
            keys = np.unique(r * cols + c)
            if len(keys) != len(pos):
                raise ValueError("duplicate positions")
        else:
            keys = np.zeros(0, dtype=np.int64)
        return cls._from_sorted_keys(rows, cols, keys)

    @classmethod
    def _from_sorted_keys(cls, rows: int, cols: int, keys: np.ndarray) -> SparseBinaryMatrix:
        if cols:
            r, c = np.divmod(keys, cols)
        else:
            r = c = keys
        row_ptr = np.zeros(rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(r, minlength=rows), out=row_ptr[1:])
        order = np.lexsort((r, c))
        col_ptr = np.zeros(cols + 1, dtype=np.int64)
        np.cumsum(np.bincount(c, minlength=cols), out=col_ptr[1:])
        return cls(
            rows,
            cols,
            _frozen(row_ptr),
            _frozen(c.astype(np.int64)),
            _frozen(col_ptr),
            _frozen(r[order].astype(np.int64)),
        )

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> SparseBinaryMatrix:
        arr = np.asarray(dense)
        if arr.ndim != 2:
            raise ValueError("dense matrix must be 2-D")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("dense matrix must be binary")
        return cls.from_positions(arr.shape[0], arr.shape[1], np.argwhere(arr))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.row_idx)

    @property
    def ones(self) -> frozenset[tuple[int, int]]:
        return frozenset(map(tuple, self.positions().tolist()))

    def positions(self) -> np.ndarray:
        """``(nnz, 2)`` array of (row, col) pairs in row-major order."""
        r = np.repeat(np.arange(self.rows, dtype=np.int64), np.diff(self.row_ptr))
        return np.column_stack([r, self.row_idx])

    def row(self, i: int) -> np.ndarray:
        return self.row_idx[self.row_ptr[i]:self.row_ptr[i + 1]]

    def col(self, j: int) -> np.ndarray:
        return self.col_idx[self.col_ptr[j]:self.col_ptr[j + 1]]

    def row_weights(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    def col_weights(self) -> np.ndarray:
        return np.diff(self.col_ptr)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        pos = self.positions()
        out[pos[:, 0], pos[:, 1]] = 1
        return out

    def syndrome(self, word: np.ndarray) -> np.ndarray:
        """``H @ word`` over GF(2)."""
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.cols,):
            raise ValueError(f"word length {word.shape} does not match {self.cols} columns")
        vals = word[self.row_idx].astype(np.int64)
        sums = np.add.reduceat(vals, self.row_ptr[:-1]) if self.nnz else np.zeros(self.rows, np.int64)
        # reduceat returns the element itself for empty rows
        sums[np.diff(self.row_ptr) == 0] = 0
        return (sums & 1).astype(np.uint8)

    def __eq__(self, other):
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_ptr, other.row_ptr)
            and np.array_equal(self.row_idx, other.row_idx)
        )

    def __hash__(self):
        return hash((self.shape, self.row_idx.tobytes(), self.row_ptr.tobytes()))

    def __repr__(self):
        return f"SparseBinaryMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class CodeProfile:
    column_weight_histogram: dict[int, int] = field(default_factory=dict)
    row_weight_histogram: dict[int, int] = field(default_factory=dict)
    designed_rate: Fraction | None = None

    @property
    def regular(self) -> tuple[int, int] | None:
        """``(J, L)`` if the column and row weights are both constant."""
        if len(self.column_weight_histogram) == 1 and len(self.row_weight_histogram) == 1:
            return next(iter(self.column_weight_histogram)), next(iter(self.row_weight_histogram))
        return None

    def as_dict(self) -> dict:
        return {
            "column_weights": {str(k): v for k, v in sorted(self.column_weight_histogram.items())},
            "row_weights": {str(k): v for k, v in sorted(self.row_weight_histogram.items())},
            "designed_rate": None if self.designed_rate is None else str(self.designed_rate),
            "regular": self.regular,
        }


def expand(E: ExponentMatrix) -> SparseBinaryMatrix:
    """Replace every shift ``e`` by the identity cyclically shifted right by ``e``.

    Block ``(i, j)`` gets ones at ``(r, (r + e) mod P)`` for each local row ``r``.
    """
    P = E.lift
    bi, bj = np.nonzero(E.finite)
    shifts = E.entries[bi, bj]
    r = np.arange(P, dtype=np.int64)
    rows = (bi[:, None] * P + r[None, :]).ravel()
    cols = (bj[:, None] * P + (r[None, :] + shifts[:, None]) % P).ravel()
    ncols = E.n * P
    keys = np.sort(rows * ncols + cols)
    return SparseBinaryMatrix._from_sorted_keys(E.m * P, ncols, keys)


def mask_exponent(E: ExponentMatrix, mask) -> ExponentMatrix:
    """Keep entries where ``mask`` is 1, set the rest to ``INF``."""
    mask = as_mask(mask)
    if mask.shape != E.shape:
        raise ValueError(f"mask shape {mask.shape} does not match exponent shape {E.shape}")
    return ExponentMatrix(np.where(mask == 1, E.entries, INF), E.lift)


def mask_binary(H0: SparseBinaryMatrix, P: int, mask) -> SparseBinaryMatrix:
    """Zero every ``P x P`` block of ``H0`` whose mask bit is 0."""
    mask = as_mask(mask)
    if P < 1 or H0.rows % P or H0.cols % P:
        raise ValueError(f"matrix {H0.shape} is not an array of {P}x{P} blocks")
    if mask.shape != (H0.rows // P, H0.cols // P):
        raise ValueError(
            f"mask shape {mask.shape} does not match block shape {(H0.rows // P, H0.cols // P)}"
        )
    pos = H0.positions()
    keep = mask[pos[:, 0] // P, pos[:, 1] // P] == 1
    pos = pos[keep]
    return SparseBinaryMatrix._from_sorted_keys(H0.rows, H0.cols, pos[:, 0] * H0.cols + pos[:, 1])


def profile(H: SparseBinaryMatrix) -> CodeProfile:
    """Row/column weight histograms and designed rate ``1 - rows/cols``."""
    cw = Counter(H.col_weights().tolist())
    rw = Counter(H.row_weights().tolist())
    rate = Fraction(H.cols - H.rows, H.cols) if H.cols else None
    return CodeProfile(dict(sorted(cw.items())), dict(sorted(rw.items())), rate)
