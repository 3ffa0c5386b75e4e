"""Dense integer matrices with exact arithmetic."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionError, DomainError

_INT64_MAX = 2**63 - 1


class IntMatrix:
    """Immutable dense matrix over Z, stored row-major as a tuple of tuples.

    Rows and columns may be zero. Entries are Python ints, so every
    operation is exact.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable[int]] = (), cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if cols is not None and cols != width:
                raise DimensionError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self.rows = len(data)
        self.cols = width
        self.entries = data
        self._hash = None

    # construction ----------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n)) if n else cls((), 0)

    @classmethod
    def scalar(cls, n: int, c: int) -> IntMatrix:
        return cls(((c if i == j else 0) for j in range(n)) for i in range(n)) if n else cls((), 0)

    @classmethod
    def diag(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls(((values[i] if i == j else 0) for j in range(n)) for i in range(n)) if n else cls((), 0)

    @classmethod
    def from_flat(cls, rows: int, cols: int, flat: Sequence[int]) -> IntMatrix:
        if len(flat) != rows * cols:
            raise DimensionError("flat data has wrong length")
        return cls((flat[i * cols:(i + 1) * cols] for i in range(rows)), cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns), cols=len(columns))

    @classmethod
    def block(cls, grid: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
        """Assemble a block matrix; every block row must share a height."""
        out = []
        for brow in grid:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionError("block heights differ within a block row")
            for i in range(h):
                out.append(tuple(x for b in brow for x in b.entries[i]))
        width = sum(b.cols for b in grid[0]) if grid else 0
        return cls(out, cols=width)

    # basic protocol ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.entries for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols}]"
        width = max(len(str(x)) for x in self.flat())
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.entries)

    # arithmetic --------------------------------------------------------------

    def _check_same(self, other: IntMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(((a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), cols=self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(((a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), cols=self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(((-a for a in r) for r in self.entries), cols=self.cols)

    def __mul__(self, c: int) -> IntMatrix:
        if isinstance(c, IntMatrix):
            return NotImplemented
        return IntMatrix(((c * a for a in r) for r in self.entries), cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            (tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.entries),
            cols=other.cols,
        )

    def __pow__(self, e: int) -> IntMatrix:
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = IntMatrix.identity(self.rows)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def mod(self, r: int) -> IntMatrix:
        return IntMatrix(((a % r for a in row) for row in self.entries), cols=self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self.entries), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def transpose(self) -> IntMatrix:
        return self.T

    def trace(self) -> int:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.flat())

    def is_identity(self) -> bool:
        return self.is_square() and self == IntMatrix.identity(self.rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> IntMatrix:
        return IntMatrix((r[c0:c1] for r in self.entries[r0:r1]), cols=max(c1 - c0, 0))

    def kron(self, other: IntMatrix) -> IntMatrix:
        out = []
        for r in self.entries:
            for s in other.entries:
                out.append(tuple(a * b for a in r for b in s))
        return IntMatrix(out, cols=self.cols * other.cols)

    def det(self) -> int:
        from .normal_forms import det

        return det(self)

    def inverse(self) -> IntMatrix:
        """Integer inverse; raises DomainError unless the matrix is unimodular."""
        inv = rational_inverse(self)
        if any(x.denominator != 1 for row in inv for x in row):
            raise DomainError("matrix is not invertible over Z")
        return IntMatrix(((int(x) for x in row) for row in inv), cols=self.cols)

    # serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        def enc(x: int):
            return x if -_INT64_MAX - 1 <= x <= _INT64_MAX else str(x)

        return {"rows": self.rows, "cols": self.cols, "entries": [[enc(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> IntMatrix:
        """Accept the ``{"rows", "cols", "entries"}`` schema or a bare nested list."""
        if isinstance(obj, list):
            return cls(obj)
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"not a matrix object: missing {exc}") from None
        m = cls(([_dec(x) for x in r] for r in entries), cols=cols)
        if m.rows != rows:
            raise DimensionError(f"declared {rows} rows, found {m.rows}")
        return m


def _dec(x) -> int:
    if isinstance(x, bool):
        raise ValueError("boolean is not an integer entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    raise ValueError(f"bad matrix entry {x!r}")


def direct_sum(*blocks: IntMatrix) -> IntMatrix:
    """Block-diagonal matrix ``blocks[0] (+) blocks[1] (+) ...``."""
    n = sum(b.cols for b in blocks)
    out = []
    offset = 0
    for b in blocks:
        for r in b.entries:
            out.append((0,) * offset + r + (0,) * (n - offset - b.cols))
        offset += b.cols
    return IntMatrix(out, cols=n)


def rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    if not A.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = A.rows
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A.entries)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise DomainError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def unit_vector(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))
