"""Text formats: exponent matrices, masks, Latin squares, alist and simulation CSV.

Grid files are ASCII, space separated and newline terminated. An exponent file
starts with ``m n P`` and uses ``-1`` for a zero block; a mask file holds one or
more ``m n`` headed binary grids; a Latin-square file starts with ``N``.
"""

from __future__ import annotations

import csv
import io as _io
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable

import numpy as np

from .construct import LatinSquare, MaskSet, extend_maskset, is_latin
from .matrix import INF, ExponentMatrix, SparseBinaryMatrix, as_mask


class FormatError(ValueError):
    """Malformed or invalid input; ``line`` is the 1-based line that triggered it."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.source = source

    def __str__(self):
        where = "".join(
            part for part in (self.source and f"{self.source}:", self.line and f"line {self.line}:")
            if part
        )
        return f"{where} {self.message}" if where else self.message


@contextmanager
def _tagged(source):
    try:
        yield
    except FormatError as exc:
        exc.source = exc.source or source
        raise


def _lines(text: str) -> list[tuple[int, list[str]]]:
    """Non-blank lines as ``(lineno, tokens)``."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if toks:
            out.append((no, toks))
    return out


def _ints(no: int, toks: list[str]) -> list[int]:
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(toks)!r}", no) from None


def _grid_text(rows: Iterable[Iterable[int]]) -> str:
    return "".join(" ".join(str(int(x)) for x in row) + "\n" for row in rows)


def _read_grid(lines, pos: int, nrows: int, ncols: int, what: str, header_line: int):
    rows = []
    for r in range(nrows):
        if pos + r >= len(lines):
            raise FormatError(f"{what}: expected {nrows} rows, found {r}", header_line)
        no, toks = lines[pos + r]
        vals = _ints(no, toks)
        if len(vals) != ncols:
            raise FormatError(f"{what}: expected {ncols} entries, got {len(vals)}", no)
        rows.append(vals)
    return rows


# exponent matrices

def write_exponent(E: ExponentMatrix) -> str:
    return f"{E.m} {E.n} {E.lift}\n" + _grid_text(E.entries)


def read_exponent(text: str, source: str | None = None) -> ExponentMatrix:
    lines = _lines(text)
    with _tagged(source):
        if not lines:
            raise FormatError("empty exponent file: missing 'm n P' header")
        no, toks = lines[0]
        head = _ints(no, toks)
        if len(head) != 3 or min(head) < 1:
            raise FormatError("header must be 'm n P' with positive integers", no)
        m, n, P = head
        rows = _read_grid(lines, 1, m, n, "exponent matrix", no)
        for r, vals in enumerate(rows):
            for v in vals:
                if v != INF and not 0 <= v < P:
                    raise FormatError(f"entry {v} outside [-1, {P - 1}]", lines[1 + r][0])
        if len(lines) > 1 + m:
            raise FormatError("unexpected trailing content", lines[1 + m][0])
    return ExponentMatrix(np.array(rows), P)


# masks

def write_mask(mask) -> str:
    mask = as_mask(mask)
    return f"{mask.shape[0]} {mask.shape[1]}\n" + _grid_text(mask)


def write_maskset(ms: MaskSet) -> str:
    return "".join(write_mask(mk) for mk in ms.masks)


def read_masks(text: str, source: str | None = None) -> list[np.ndarray]:
    """All grids in a mask file, validated as binary."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty mask file: missing 'm n' header", source=source)
    masks = []
    pos = 0
    while pos < len(lines):
        no, toks = lines[pos]
        with _tagged(source):
            head = _ints(no, toks)
        if len(head) != 2 or min(head) < 1:
            raise FormatError("mask header must be 'm n' with positive integers", no, source)
        m, n = head
        with _tagged(source):
            rows = _read_grid(lines, pos + 1, m, n, "mask", no)
        for r, vals in enumerate(rows):
            if any(v not in (0, 1) for v in vals):
                raise FormatError("mask entries must be 0 or 1", lines[pos + 1 + r][0], source)
        masks.append(as_mask(rows))
        pos += 1 + m
    return masks


def read_maskset(text: str, count: int | None = None, source: str | None = None) -> MaskSet:
    """Read a mask set, completing it to ``count`` masks where the convention allows.

    A single grid is ``M0`` (``M1 = 1 - M0``); a two-mask set is padded with
    all-zero masks up to ``count``. Any other file must hold exactly ``count``.
    """
    masks = read_masks(text, source)
    try:
        if len(masks) == 1:
            return MaskSet.complement_of(masks[0], count or 2)
        ms = MaskSet(tuple(masks))
        if count is not None and ms.count == 2 and count > 2:
            ms = extend_maskset(ms, count)
    except ValueError as exc:
        raise FormatError(str(exc), source=source) from None
    if count is not None and ms.count != count:
        raise FormatError(f"mask file holds {ms.count} masks, expected {count}", source=source)
    return ms


# Latin squares

def write_latin(A: LatinSquare) -> str:
    return f"{A.order}\n" + _grid_text(A.cells)


def read_latin(text: str, source: str | None = None) -> LatinSquare:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty Latin-square file: missing 'N' header", source=source)
    no, toks = lines[0]
    with _tagged(source):
        head = _ints(no, toks)
    if len(head) != 1 or head[0] < 2:
        raise FormatError("header must be a single order N >= 2", no, source)
    N = head[0]
    with _tagged(source):
        rows = _read_grid(lines, 1, N, N, "Latin square", no)
    for r, vals in enumerate(rows):
        if sorted(vals) != list(range(N)):
            raise FormatError(f"row {r} is not a permutation of 0..{N - 1}", lines[1 + r][0], source)
    if not is_latin(rows):
        raise FormatError("not a Latin square: a column repeats a symbol", no, source)
    return LatinSquare(np.array(rows))


# alist

def write_alist(H: SparseBinaryMatrix) -> str:
    """MacKay alist, zero-padded position lists."""
    cw, rw = H.col_weights(), H.row_weights()
    maxc = int(cw.max()) if H.cols else 0
    maxr = int(rw.max()) if H.rows else 0
    out = _io.StringIO()
    out.write(f"{H.cols} {H.rows}\n{maxc} {maxr}\n")
    out.write(" ".join(map(str, cw.tolist())) + "\n")
    out.write(" ".join(map(str, rw.tolist())) + "\n")
    for j in range(H.cols):
        pos = (H.col(j) + 1).tolist()
        out.write(" ".join(map(str, pos + [0] * (maxc - len(pos)))) + "\n")
    for i in range(H.rows):
        pos = (H.row(i) + 1).tolist()
        out.write(" ".join(map(str, pos + [0] * (maxr - len(pos)))) + "\n")
    return out.getvalue()


def read_alist(text: str, source: str | None = None) -> SparseBinaryMatrix:
    """Parse an alist document; accepts padded and unpadded position lists."""
    lines = _lines(text)
    cursor = 0

    def fail(msg, line=None):
        raise FormatError(msg, line, source)

    def take(section):
        nonlocal cursor
        if cursor >= len(lines):
            fail(f"truncated file: missing {section}")
        no, toks = lines[cursor]
        cursor += 1
        with _tagged(source):
            return no, _ints(no, toks)

    no, head = take("header 'cols rows'")
    if len(head) != 2 or min(head) < 0:
        fail("header must be 'cols rows'", no)
    ncols, nrows = head
    no, mx = take("max weights")
    if len(mx) != 2:
        fail("max-weight line must have two entries", no)
    no, cw = take("column weights") if ncols else (no, [])
    if len(cw) != ncols:
        fail(f"expected {ncols} column weights, got {len(cw)}", no)
    no, rw = take("row weights") if nrows else (no, [])
    if len(rw) != nrows:
        fail(f"expected {nrows} row weights, got {len(rw)}", no)
    if max(cw, default=0) != mx[0] or max(rw, default=0) != mx[1]:
        fail("max weights do not match weight lists", no)

    def lists(weights, limit, section):
        out = []
        for k, w in enumerate(weights):
            # a weight-0 entry has an all-zero line when padded, no line otherwise
            if w == 0 and not (cursor < len(lines) and all(t == "0" for t in lines[cursor][1])):
                out.append([])
                continue
            no, vals = take(f"{section} lists ({section} {k + 1} of {len(weights)})")
            nz = [v for v in vals if v != 0]
            if len(nz) != w:
                fail(f"{section} {k + 1}: weight {w} but {len(nz)} positions", no)
            if any(v < 1 or v > limit for v in nz):
                fail(f"{section} {k + 1}: index out of range 1..{limit}", no)
            if len(set(nz)) != w:
                fail(f"{section} {k + 1}: duplicate index", no)
            out.append([v - 1 for v in nz])
        return out

    col_lists = lists(cw, nrows, "column")
    row_lists = lists(rw, ncols, "row")
    if cursor < len(lines):
        fail("unexpected trailing content", lines[cursor][0])

    from_cols = {(i, j) for j, rs in enumerate(col_lists) for i in rs}
    from_rows = {(i, j) for i, cs in enumerate(row_lists) for j in cs}
    if from_cols != from_rows:
        i, j = min(from_cols ^ from_rows)
        fail(f"column and row lists disagree at position ({i + 1}, {j + 1})")
    return SparseBinaryMatrix.from_positions(nrows, ncols, sorted(from_cols))


# simulation results

CSV_COLUMNS = ("eb_n0_db", "frames", "bit_errors", "frame_errors", "ber", "fer",
               "min_wrong_codeword_weight")


def write_results_csv(result, path: str | os.PathLike | None = None) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for pt in result.points:
        w.writerow([
            f"{pt.eb_n0_db:g}", pt.frames_sent, pt.bit_errors, pt.frame_errors,
            f"{pt.ber:.6e}", f"{pt.fer:.6e}",
            "" if pt.min_wrong_codeword_weight is None else pt.min_wrong_codeword_weight,
        ])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_results_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(_io.StringIO(text)))
    if rows and tuple(rows[0].keys()) != CSV_COLUMNS:
        raise FormatError(f"unexpected CSV columns {tuple(rows[0].keys())}", 1)
    return rows


def load(path: str | os.PathLike, kind: str | None = None):
    """Read a file by extension (``.exp``, ``.mask``, ``.latin``, ``.alist``) or explicit ``kind``."""
    path = Path(path)
    kind = kind or path.suffix.lstrip(".")
    text = path.read_text()
    readers = {"exp": read_exponent, "mask": read_maskset, "latin": read_latin, "alist": read_alist}
    if kind not in readers:
        raise FormatError(f"unknown file kind {kind!r}", source=str(path))
    return readers[kind](text, source=str(path))
