"""Dense exact linear algebra over cyclotomic fields.

Gaussian elimination uses deterministic pivoting: columns are scanned left
to right and the pivot is the first nonzero entry found scanning the
remaining rows top-down.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .cyclotomic import ONE, ZERO, Cyc, as_cyc, embed

__all__ = [
    "CycMatrix",
    "InconsistentSystem",
    "SingularMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve_linear",
    "inverse",
]


class InconsistentSystem(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _scalar(x) -> Cyc:
    c = as_cyc(x)
    if c is NotImplemented:
        raise TypeError(f"not a field element: {x!r}")
    return c


class CycMatrix:
    """Immutable row-major matrix of Cyc entries sharing one conductor."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = [_scalar(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries")
        n = math.lcm(1, *(e.n for e in entries))
        if any(e.n != n for e in entries):
            entries = [e if e.n == n else embed(e, n) for e in entries]
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> CycMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> CycMatrix:
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> CycMatrix:
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> CycMatrix:
        return cls(len(values), 1, values)

    @property
    def conductor(self) -> int:
        return self.entries[0].n if self.entries else 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Cyc:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Cyc]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Cyc]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Cyc]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                acc = ZERO
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                out.append(acc)
        return CycMatrix(self.rows, other.cols, out)

    def __add__(self, other: CycMatrix) -> CycMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> CycMatrix:
        c = _scalar(c)
        return CycMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"CycMatrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self):
        return [[x.to_json() for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, grid) -> CycMatrix:
        return cls.from_rows([[Cyc.from_json(x) for x in row] for row in grid])


def _as_rows(a) -> list[list[Cyc]]:
    if isinstance(a, CycMatrix):
        return a.to_rows()
    return [[_scalar(x) for x in r] for r in a]


def rref(a, ncols: int | None = None) -> tuple[list[list[Cyc]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Only the first ``ncols`` columns are eligible as pivots (used for
    augmented systems); zero rows are dropped from the result.
    """
    rows = [list(r) for r in _as_rows(a)]
    width = len(rows[0]) if rows else 0
    limit = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = prow[c].inverse()
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, width) if prow[j]]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][c]
                if f:
                    rk = rows[k]
                    for j in nz:
                        rk[j] = rk[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows if any(row)], pivots


def rank(a) -> int:
    rows = _as_rows(a)
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def _canonical_rows(vectors: list[list[Cyc]]) -> list[list[Cyc]]:
    if not vectors:
        return []
    return rref(vectors)[0]


def kernel_basis(a, ncols: int | None = None) -> list[CycMatrix]:
    """Basis of the right null space as column matrices.

    The basis is returned in reduced echelon form (as rows), so every vector
    has leading entry 1 and the leading positions strictly increase.
    """
    rows = _as_rows(a)
    width = len(rows[0]) if rows else (ncols or 0)
    if rows and ncols is not None and ncols != width:
        raise ValueError("column count mismatch")
    red, pivots = rref(rows) if rows else ([], [])
    pivset = set(pivots)
    vectors = []
    for f in range(width):
        if f in pivset:
            continue
        v = [ZERO] * width
        v[f] = ONE
        for r, p in enumerate(pivots):
            if red[r][f]:
                v[p] = -red[r][f]
        vectors.append(v)
    return [CycMatrix.column(v) for v in _canonical_rows(vectors)]


def solve_linear(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """One solution X of A X = B (free variables set to zero).

    Raises InconsistentSystem when no solution exists.
    """
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch: A has {a.rows} rows, B has {b.rows}")
    aug = [a.row(i) + b.row(i) for i in range(a.rows)]
    red, pivots = rref(aug, ncols=a.cols) if aug else ([], [])
    for row in red[len(pivots):]:
        if any(row[a.cols:]):
            raise InconsistentSystem("linear system has no solution")
    out = [[ZERO] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        out[p] = red[r][a.cols:]
    return CycMatrix(a.cols, b.cols, [x for r in out for x in r])


def inverse(a: CycMatrix) -> CycMatrix:
    if a.rows != a.cols:
        raise ValueError("only square matrices are invertible")
    if rank(a) != a.rows:
        raise SingularMatrix("matrix is singular")
    return solve_linear(a, CycMatrix.identity(a.rows))
