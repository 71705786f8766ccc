"""Polynomial matrices, stored by columns, and their engine conversions."""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .ideal import exact_quotient
from .ring import Polynomial, Ring, RingMismatchError

Column = Tuple[Polynomial, ...]


def column_to_vector(col: Sequence[Polynomial], offset: int = 0) -> dict:
    v = {}
    for i, p in enumerate(col):
        for e, c in p.terms.items():
            v[(i + offset, e)] = c
    return v


def vector_to_column(ring: Ring, v: dict, rank: int, offset: int = 0) -> Column:
    parts = [dict() for _ in range(rank)]
    for (p, e), c in v.items():
        q = p - offset
        if 0 <= q < rank:
            parts[q][e] = c
    return tuple(Polynomial(ring, t) for t in parts)


def is_zero_column(col: Sequence[Polynomial]) -> bool:
    return all(p.is_zero() for p in col)


class Matrix:
    """An ``nrows x ncols`` matrix over QQ[vars], immutable, column-major."""

    __slots__ = ("ring", "nrows", "cols", "_cache")

    def __init__(self, ring: Ring, nrows: int, cols: Iterable[Sequence[Polynomial]]):
        cols = tuple(tuple(c) for c in cols)
        for c in cols:
            if len(c) != nrows:
                raise ValueError(f"column of length {len(c)} in a matrix with {nrows} rows")
            for p in c:
                if p.ring != ring:
                    raise RingMismatchError("matrix entry from another ring")
        self.ring = ring
        self.nrows = nrows
        self.cols = cols
        self._cache = {}

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence], ncols: int = None) -> "Matrix":
        rows = [[ring(p) for p in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), [tuple(r[j] for r in rows) for j in range(ncols)])

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero()
        return cls(ring, nrows, [(z,) * nrows for _ in range(ncols)])

    @classmethod
    def identity(cls, ring: Ring, n: int, scale=None) -> "Matrix":
        d = ring.one() if scale is None else ring(scale)
        z = ring.zero()
        return cls(ring, n, [tuple(d if i == j else z for i in range(n)) for j in range(n)])

    @classmethod
    def block_diagonal(cls, ring: Ring, blocks: Sequence["Matrix"]) -> "Matrix":
        nrows = sum(b.nrows for b in blocks)
        z = ring.zero()
        cols = []
        top = 0
        for b in blocks:
            for c in b.cols:
                cols.append((z,) * top + c + (z,) * (nrows - top - b.nrows))
            top += b.nrows
        return cls(ring, nrows, cols)

    # queries ------------------------------------------------------------
    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> List[Column]:
        return [tuple(c[i] for c in self.cols) for i in range(self.nrows)]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.cols[j][i]

    def is_zero(self) -> bool:
        return all(is_zero_column(c) for c in self.cols)

    def vectors(self, offset: int = 0) -> List[dict]:
        return [column_to_vector(c, offset) for c in self.cols]

    # algebra ------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, self.ncols, self.rows)

    def apply(self, col: Sequence[Polynomial]) -> Column:
        if len(col) != self.ncols:
            raise ValueError("dimension mismatch in matrix-vector product")
        out = [self.ring.zero()] * self.nrows
        for c, a in zip(self.cols, col):
            if a.is_zero():
                continue
            for i in range(self.nrows):
                if not c[i].is_zero():
                    out[i] = out[i] + c[i] * a
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.ring, self.nrows, [self.apply(c) for c in other.cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, self.nrows,
                      [tuple(a + b for a, b in zip(c, d)) for c, d in zip(self.cols, other.cols)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, s) -> "Matrix":
        s = self.ring(s)
        return Matrix(self.ring, self.nrows, [tuple(p * s for p in c) for c in self.cols])

    def hstack(self, *others: "Matrix") -> "Matrix":
        cols = list(self.cols)
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("row count mismatch in hstack")
            cols.extend(o.cols)
        return Matrix(self.ring, self.nrows, cols)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, self.nrows, [self.cols[j] for j in idx])

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, len(idx), [tuple(c[i] for i in idx) for c in self.cols])

    def top_rows(self, k: int) -> "Matrix":
        return Matrix(self.ring, k, [c[:k] for c in self.cols])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.nrows == other.nrows and self.cols == other.cols

    def __hash__(self):
        return hash((self.nrows, self.cols))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"

    def __str__(self):
        return "\n".join("; ".join(str(p) for p in r) for r in self.rows)


def determinant(m: Matrix) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring
    if n == 0:
        return ring.one()
    a = [list(r) for r in m.rows]
    prev = ring.one()
    sign = 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            for p in range(k + 1, n):
                if not a[p][k].is_zero():
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_quotient(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def fraction_field_rank(rows: Sequence[Sequence[Polynomial]]) -> int:
    """Rank over the fraction field, by fraction-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    ring = a[0][0].ring if n else None
    prev = ring.one() if ring else None
    rank = 0
    for col in range(n):
        piv = next((p for p in range(rank, m) if not a[p][col].is_zero()), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = exact_quotient(a[rank][col] * a[i][j] - a[i][col] * a[rank][j], prev)
            a[i][col] = ring.zero()
        prev = a[rank][col]
        rank += 1
        if rank == m:
            break
    return rank
