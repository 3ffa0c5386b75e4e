"""Determinant, rank, Hermite and Smith normal forms, lattices and cokernels.

Conventions: Hermite normal form is row-style (``U @ A == H``), pivots are
positive and entries above a pivot lie in ``[0, pivot)``; zero rows sit at
the bottom. The column-style form is the transpose of the row form of the
transpose. Smith invariant factors are non-negative with ``d_i | d_{i+1}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from ..errors import DimensionError
from .matrix import IntMatrix


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(A: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not A.is_square():
        raise DimensionError(f"determinant of non-square {A.shape} matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank_q(A: IntMatrix) -> int:
    """Rank over Q by Gaussian elimination on fractions."""
    M = [[Fraction(x) for x in r] for r in A.entries]
    rank = 0
    for c in range(A.cols):
        p = next((i for i in range(rank, A.rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for i in range(rank + 1, A.rows):
            if M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def rank_mod_p(A: IntMatrix, p: int) -> int:
    """Rank over the prime field F_p."""
    M = [[x % p for x in r] for r in A.entries]
    rank = 0
    for c in range(A.cols):
        piv = next((i for i in range(rank, A.rows) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [(x * inv) % p for x in M[rank]]
        for i in range(A.rows):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _combine(rows: list[list[int]], r: int, i: int, x: int, y: int, u: int, v: int) -> None:
    # (row_r, row_i) <- (x*row_r + y*row_i, u*row_r + v*row_i)
    a, b = rows[r], rows[i]
    rows[r] = [x * s + y * t for s, t in zip(a, b)]
    rows[i] = [u * s + v * t for s, t in zip(a, b)]


def _row_hnf(H: list[list[int]], U: list[list[int]], ncols: int) -> int:
    """In-place row HNF on H, mirroring every row operation on U. Returns rank."""
    nrows = len(H)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, x, y = egcd(a, b)
            _combine(H, r, i, x, y, -b // g, a // g)
            _combine(U, r, i, x, y, -b // g, a // g)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-t for t in H[r]]
            U[r] = [-t for t in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [s - q * t for s, t in zip(H[i], H[r])]
                U[i] = [s - q * t for s, t in zip(U[i], U[r])]
        r += 1
    return r


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns ``(H, U)`` with ``U @ A == H``, U unimodular."""
    H = A.tolist()
    U = IntMatrix.identity(A.rows).tolist()
    _row_hnf(H, U, A.cols)
    return IntMatrix(H, cols=A.cols), IntMatrix(U, cols=A.rows)


def hnf_column(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: returns ``(H, V)`` with ``A @ V == H``."""
    Ht, Vt = hnf(A.T)
    return Ht.T, Vt.T


def _is_diagonal(S: list[list[int]]) -> bool:
    return all(x == 0 for i, row in enumerate(S) for j, x in enumerate(row) if i != j)


def snf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns ``(S, U, V)`` with ``U @ A @ V == S``.

    Alternates row and column Hermite reductions until diagonal, then
    repairs the divisibility chain with 2x2 unimodular moves.
    """
    m, n = A.shape
    S = A.tolist()
    U = IntMatrix.identity(m).tolist()
    Vt = IntMatrix.identity(n).tolist()  # rows of Vt are columns of V
    while True:
        _row_hnf(S, U, n)
        if _is_diagonal(S):
            break
        St = [list(c) for c in zip(*S)] if m else [[] for _ in range(n)]
        _row_hnf(St, Vt, m)
        S = [list(r) for r in zip(*St)] if n else [[] for _ in range(m)]
        if _is_diagonal(S):
            break
    k = min(m, n)
    d = [S[i][i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            if b == 0 or (a != 0 and b % a == 0):
                continue
            if a == 0:
                # swap so that zeros trail
                U[i], U[j] = U[j], U[i]
                Vt[i], Vt[j] = Vt[j], Vt[i]
                d[i], d[j] = b, a
                continue
            g, x, y = egcd(a, b)
            _combine(U, i, j, x, y, -b // g, a // g)
            # V columns: (col_i, col_j) <- (col_i + col_j, -(y*b/g) col_i + (x*a/g) col_j)
            _combine(Vt, i, j, 1, 1, -(y * b) // g, (x * a) // g)
            d[i], d[j] = g, a * b // g
    for i in range(k):
        if d[i] < 0:
            d[i] = -d[i]
            U[i] = [-t for t in U[i]]
    S_out = IntMatrix(((d[i] if i == j and i < k else 0) for j in range(n)) for i in range(m)) if m else IntMatrix.zeros(0, n)
    return S_out, IntMatrix(U, cols=m), IntMatrix(Vt, cols=n).T


def invariant_factors(A: IntMatrix) -> list[int]:
    S, _, _ = snf(A)
    return [S[i, i] for i in range(min(A.shape))]


def rank(A: IntMatrix) -> int:
    """Rank via the Hermite form (number of nonzero rows)."""
    H, _ = hnf(A)
    return sum(1 for r in H.entries if any(r))


# -- finite abelian groups -----------------------------------------------------


def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z^free_rank (+) Z_{d1} (+) ... (+) Z_{dt}``
    with ``d1 | d2 | ... | dt`` and every ``d_i >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int], free_rank: int = 0) -> FinAbGroup:
        """Normalize an arbitrary direct sum of cyclic groups; order 0 means Z."""
        free = free_rank + sum(1 for d in orders if d == 0)
        by_prime: dict[int, list[int]] = {}
        for d in orders:
            if d == 0 or abs(d) == 1:
                continue
            for q in _prime_powers(abs(d)):
                p = next(pp for pp in range(2, q + 1) if q % pp == 0)
                by_prime.setdefault(p, []).append(q)
        t = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * t
        for v in by_prime.values():
            v.sort(reverse=True)
            for i, q in enumerate(v):
                factors[t - 1 - i] *= q
        return cls(free, tuple(f for f in factors if f > 1))

    @property
    def order(self) -> int | None:
        """Order of the group, or None when infinite."""
        return None if self.free_rank else prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        i = 0
        while i < len(self.torsion):
            d = self.torsion[i]
            j = i
            while j < len(self.torsion) and self.torsion[j] == d:
                j += 1
            parts.append(f"Z_{d}" if j - i == 1 else f"Z_{d}^{j - i}")
            i = j
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> FinAbGroup:
        """Parse ``"Z^2 + Z_2^3"``, ``"Z_4+Z_6"``, ``"0"`` or ``"{e}"``."""
        text = text.replace(" ", "").replace("⊕", "+").replace("x", "+")
        if text in ("0", "{e}", "1", ""):
            return cls()
        orders: list[int] = []
        for term in text.split("+"):
            m = re.fullmatch(r"Z(?:_(\d+))?(?:\^(\d+))?", term)
            if not m:
                raise ValueError(f"cannot parse group term {term!r}")
            d = int(m.group(1)) if m.group(1) else 0
            orders.extend([d] * (int(m.group(2)) if m.group(2) else 1))
        return cls.from_cyclic_orders(orders)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> FinAbGroup:
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(obj["free_rank"], tuple(obj["torsion"]))


# -- lattices ----------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of Z^ambient_dim; ``basis`` columns are in column-style HNF."""

    ambient_dim: int
    basis: IntMatrix = field(compare=True)

    @classmethod
    def from_generators(cls, generators: IntMatrix) -> LatticeBasis:
        """Lattice spanned by the columns of ``generators``."""
        n = generators.rows
        H, _ = hnf(generators.T)
        rows = [r for r in H.entries if any(r)]
        return cls(n, IntMatrix.from_columns(rows, rows=n) if rows else IntMatrix.zeros(n, 0))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Reduce ``v`` modulo the lattice using the echelon pivots."""
        w = list(v)
        for b in self.vectors():
            piv = next(i for i, x in enumerate(b) if x)
            q = w[piv] // b[piv]
            if q:
                w = [s - q * t for s, t in zip(w, b)]
        return tuple(w)

    def cokernel(self) -> FinAbGroup:
        return cokernel(self.basis)

    def __contains__(self, v) -> bool:
        return self.contains(v)


def kernel_lattice(A: IntMatrix) -> LatticeBasis:
    """``{v in Z^cols : A v = 0}``; always saturated."""
    H, U = hnf(A.T)
    vecs = [U.row(i) for i in range(H.rows) if not any(H.row(i))]
    gens = IntMatrix.from_columns(vecs, rows=A.cols) if vecs else IntMatrix.zeros(A.cols, 0)
    return LatticeBasis.from_generators(gens)


def image_lattice(A: IntMatrix, saturate: bool = False) -> LatticeBasis:
    """Lattice spanned by the columns of A, or its saturation when requested."""
    if not saturate:
        return LatticeBasis.from_generators(A)
    left = kernel_lattice(A.T)
    if left.rank == 0:
        return LatticeBasis.from_generators(IntMatrix.identity(A.rows))
    return kernel_lattice(left.basis.T)


def cokernel(A: IntMatrix) -> FinAbGroup:
    """``Z^rows / (column span of A)``."""
    d = invariant_factors(A)
    r = sum(1 for x in d if x)
    return FinAbGroup(A.rows - r, tuple(x for x in d if x > 1))


def complete_to_unimodular(K: IntMatrix) -> IntMatrix:
    """Extend the columns of a primitive basis K to a unimodular matrix whose first
    columns are exactly K."""
    n, d = K.shape
    H, U = hnf(K)
    expected = IntMatrix.block([[IntMatrix.identity(d)], [IntMatrix.zeros(n - d, d)]]) if d else IntMatrix.zeros(n, 0)
    if H != expected:
        raise ValueError("columns do not span a primitive sublattice")
    return U.inverse()


def is_unimodular(A: IntMatrix) -> bool:
    return A.is_square() and abs(det(A)) == 1


def reverse_hnf_rows(generators: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Row HNF basis of a lattice computed in reversed coordinate order.

    The returned rows are in the original coordinate order; reducing against
    them pushes torsion onto the earliest coordinates.
    """
    gens = [list(reversed(g)) for g in generators]
    if not gens:
        return []
    H, _ = hnf(IntMatrix(gens, cols=dim))
    return [tuple(reversed(r)) for r in H.entries if any(r)]


def reduce_reverse(v: Sequence[int], rows_rev: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical coset representative of ``v`` against :func:`reverse_hnf_rows` output."""
    w = list(v)
    n = len(w)
    for b in rows_rev:
        piv = next(i for i in range(n - 1, -1, -1) if b[i])
        q = w[piv] // b[piv]
        if q:
            w = [s - q * t for s, t in zip(w, b)]
    return tuple(w)


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
