"""Exact linear algebra over GF(2) with bit-packed rows.

Rows are stored as arbitrary-precision Python integers (bit i = column i),
which CPython keeps as packed word arrays internally, so a full-row XOR is a
single word-level operation regardless of width. Bits at or beyond ``cols``
are required to be zero. All operations are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def _lowest_bit(x: int) -> int:
    """Index of the lowest set bit of a nonzero integer."""
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), packed into one integer."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the declared length must be zero")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            bits |= v << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        return cls.from_bits(int(c) for c in s)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        """GF(2) inner product."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            i = _lowest_bit(b)
            out.append(i)
            b &= b - 1
        return out

    def to01(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; one packed integer per row, row-major."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("shape must be nonnegative")
        if len(self.data) != self.rows:
            raise ValueError("data length must equal the row count")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits outside cols must be zero")

    @classmethod
    def from_rows(cls, rows: Sequence[int | BitVector], cols: int) -> "BitMatrix":
        data = tuple(r.bits if isinstance(r, BitVector) else r for r in rows)
        return cls(len(data), cols, data)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        if not rows:
            return cls(0, 0, ())
        cols = len(rows[0])
        data = []
        for s in rows:
            if len(s) != cols:
                raise ValueError("ragged rows")
            data.append(BitVector.from_string(s).bits)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column_masked(self, mask: int) -> "BitMatrix":
        """Matrix with all columns outside `mask` zeroed out."""
        return BitMatrix(self.rows, self.cols, tuple(r & mask for r in self.data))

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def mul_vector(self, v: BitVector) -> BitVector:
        """M @ v with v as a column vector."""
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.data):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return BitVector(self.rows, bits)

    def to_strings(self) -> list[str]:
        return [self.row(i).to01() for i in range(self.rows)]


class EchelonBasis:
    """Incremental row basis; add() keeps only rows independent of the span."""

    def __init__(self) -> None:
        self._pivots: dict[int, int] = {}

    def reduce(self, row: int) -> int:
        while row:
            c = _lowest_bit(row)
            if c not in self._pivots:
                break
            row ^= self._pivots[c]
        return row

    def add(self, row: int) -> bool:
        row = self.reduce(row)
        if row == 0:
            return False
        self._pivots[_lowest_bit(row)] = row
        return True

    def contains(self, row: int) -> bool:
        return self.reduce(row) == 0

    @property
    def rank(self) -> int:
        return len(self._pivots)


def rank_of_ints(rows: Iterable[int]) -> int:
    """Rank of a collection of packed rows; fastest path, no ordering."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def rank(m: BitMatrix) -> int:
    """Dimension of the row space; the input is not modified."""
    return rank_of_ints(m.data)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and the sorted pivot column list.

    Pivot rows come first, ordered by pivot column; zero rows are kept at the
    bottom so the output shape matches the input.
    """
    pivots: dict[int, int] = {}
    for r in m.data:
        while r:
            c = _lowest_bit(r)
            if c in pivots:
                r ^= pivots[c]
            else:
                pivots[c] = r
                break
    # back-substitution to clear pivot columns above/below
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for c2, other in pivots.items():
            if c2 != c and (other >> c) & 1:
                pivots[c2] = other ^ row
    cols_sorted = sorted(pivots)
    data = tuple(pivots[c] for c in cols_sorted) + (0,) * (m.rows - len(pivots))
    return BitMatrix(m.rows, m.cols, data), cols_sorted


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of {v : M v = 0}; row count equals cols - rank."""
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (reduced.data[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(len(basis), m.cols, tuple(basis))


def solve(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Coefficients x with x^T M = b^T, or None when b is outside the row space.

    `b` is a length-`cols` row vector; the result has length `rows` and marks
    which rows of M sum to b.
    """
    if b.length != m.cols:
        raise ValueError(f"dimension mismatch: b has length {b.length}, M has {m.cols} columns")
    # echelon with combination tracking over the original row indices
    pivots: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.data):
        combo = 1 << i
        while r:
            c = _lowest_bit(r)
            if c in pivots:
                pr, pc = pivots[c]
                r ^= pr
                combo ^= pc
            else:
                pivots[c] = (r, combo)
                break
    residue = b.bits
    combo = 0
    while residue:
        c = _lowest_bit(residue)
        if c not in pivots:
            return None
        pr, pc = pivots[c]
        residue ^= pr
        combo ^= pc
    return BitVector(m.rows, combo)


def in_row_space(m: BitMatrix, b: BitVector) -> bool:
    return solve(m, b) is not None
