"""Integral and rational similarity machinery for block triangular integer matrices.

The central objects are the map ``psi(T) = A T - T B`` on m x n integer
matrices, its cokernel, and the partition of that cokernel into
(A, B)-equivalence classes under the centralizers of A and B.  Integral
similarity is never decided in general here: searches are bounded and
report ``None`` when nothing was found, never a negative certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .cyclotomic import C, cyclotomic_factorization, cyclotomic_poly, irreducible_factors
from .errors import CapExceeded, DimensionError, DomainError, NonCoprimeError
from .intlinalg import (
    FinAbGroup,
    IntMatrix,
    IntPoly,
    charpoly,
    complete_to_unimodular,
    det,
    direct_sum,
    kernel_lattice,
    rank_mod_p,
    rank_q,
    snf,
)
from .intlinalg.normal_forms import reduce_reverse, reverse_hnf_rows

DEFAULT_BOUND = 3
DEFAULT_COKER_CAP = 10**6
DEFAULT_MODULAR_CAP = 2 * 10**5

L_BLOCK = IntMatrix([[1, 0], [1, -1]])


# -- resultants ------------------------------------------------------------------


def sylvester(p: IntPoly, q: IntPoly) -> IntMatrix:
    """Sylvester matrix: deg(q) shifted rows of p's coefficients (leading first),
    followed by deg(p) shifted rows of q's."""
    if p.is_zero() or q.is_zero():
        raise DomainError("Sylvester matrix of the zero polynomial")
    m, n = p.degree, q.degree
    size = m + n
    a = list(reversed(p.coeffs))
    b = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - i - len(a)))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - i - len(b)))
    return IntMatrix(rows, cols=size)


def resultant(p: IntPoly, q: IntPoly) -> int:
    if p.degree == 0 and q.degree == 0:
        return 1
    return det(sylvester(p, q))


# -- psi and its cokernel -----------------------------------------------------------


def psi_matrix(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Matrix of T -> A T - T B in the row-major basis E_11, E_12, ..., E_mn."""
    if not (A.is_square() and B.is_square()):
        raise DimensionError("psi needs square A and B")
    m, n = A.rows, B.rows
    return A.kron(IntMatrix.identity(n)) - IntMatrix.identity(m).kron(B.T)


def apply_psi(A: IntMatrix, B: IntMatrix, T: IntMatrix) -> IntMatrix:
    return A @ T - T @ B


@dataclass
class CokerPsi:
    """``M_{m x n}(Z) / im psi`` with canonical lifts.

    A class is represented by the reduction of any lift against the image
    lattice's Hermite basis taken in reversed coordinate order, which leaves
    the torsion on the earliest matrix entries.
    """

    A: IntMatrix
    B: IntMatrix
    group: FinAbGroup
    order: int
    _rows: list = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.A.rows, self.B.rows)

    def canonical(self, X: IntMatrix) -> IntMatrix:
        m, n = self.shape
        return IntMatrix.from_flat(m, n, reduce_reverse(X.flat(), self._rows))

    def contains(self, X: IntMatrix) -> bool:
        """Whether X lies in the image of psi."""
        return self.canonical(X).is_zero()

    def elements(self, cap: int = DEFAULT_COKER_CAP) -> list[IntMatrix]:
        """All canonical representatives, sorted with zero first."""
        if self.order > cap:
            raise CapExceeded(f"cokernel of order {self.order} exceeds cap {cap}")
        m, n = self.shape
        ranges = []
        for k in range(m * n):
            piv = next(b for b in self._rows if next(i for i in range(m * n - 1, -1, -1) if b[i]) == k)
            ranges.append(range(piv[k]))
        out = [IntMatrix.from_flat(m, n, v) for v in itertools.product(*ranges)]
        out.sort(key=IntMatrix.flat)
        return out


def coker_psi(A: IntMatrix, B: IntMatrix) -> CokerPsi:
    """Cokernel of psi; requires coprime characteristic polynomials."""
    r = resultant(charpoly(A), charpoly(B)) if A.rows and B.rows else 1
    if r == 0:
        raise NonCoprimeError("characteristic polynomials of A and B share a factor")
    M = psi_matrix(A, B)
    S, _, _ = snf(M)
    d = [S[i, i] for i in range(min(S.shape))]
    group = FinAbGroup(0, tuple(x for x in d if x > 1))
    rows = reverse_hnf_rows(M.columns(), M.rows)
    assert group.order == abs(r)
    return CokerPsi(A, B, group, abs(r), rows)


# -- bounded lattice search ------------------------------------------------------------


class _BudgetExhausted(Exception):
    pass


def bounded_lattice_points(rows, bound: int, max_nodes: int | None = None):
    """Yield every lattice vector (integer combination of the echelon ``rows``)
    whose entries all lie in ``[-bound, bound]``.

    ``rows`` must be in row echelon form. Raises CapExceeded when the search
    visits more than ``max_nodes`` partial assignments.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return
    dim = len(rows[0])
    pivots = [next(i for i, x in enumerate(r) if x) for r in rows]
    ends = pivots[1:] + [dim]
    budget = [max_nodes if max_nodes is not None else -1]

    def rec(level: int, partial: list[int]):
        if level == len(rows):
            yield tuple(partial)
            return
        r, p = rows[level], pivots[level]
        h = r[p]
        lo = -((bound + partial[p]) // h)  # ceil((-bound - partial)/h)
        hi = (bound - partial[p]) // h
        for c in range(lo, hi + 1):
            if budget[0] == 0:
                raise CapExceeded("bounded search node budget exhausted")
            budget[0] -= 1
            cand = [a + c * b for a, b in zip(partial, r)] if c else partial
            if all(-bound <= cand[k] <= bound for k in range(p, ends[level])):
                yield from rec(level + 1, cand)

    # coordinates before the first pivot are identically zero
    yield from rec(0, [0] * dim)


def intertwiners(A: IntMatrix, B: IntMatrix):
    """Echelon basis rows of the lattice ``{P : A P = P B}`` (row-major vectors)."""
    return kernel_lattice(psi_matrix(A, B)).vectors()


def bounded_intertwiners(A: IntMatrix, B: IntMatrix, bound: int, max_nodes: int | None = None):
    """Unimodular P with ``A P = P B`` and entries in ``[-bound, bound]``."""
    n = A.rows
    for v in bounded_lattice_points(intertwiners(A, B), bound, max_nodes):
        P = IntMatrix.from_flat(n, n, v)
        if abs(det(P)) == 1:
            yield P


def centralizer_search(A: IntMatrix, bound: int = DEFAULT_BOUND, max_nodes: int | None = 10**6) -> list[IntMatrix]:
    """All P in C(A) cap GL(n, Z) with every entry in ``[-bound, bound]``."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    return list(bounded_intertwiners(A, A, bound, max_nodes))


def _inverse_mod(P: IntMatrix, r: int) -> IntMatrix:
    n = P.rows
    M = [[x % r for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(P.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if gcd(M[i][c], r) == 1), None)
        if piv is None:
            raise DomainError("matrix not invertible modulo r")
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, r)
        M[c] = [(x * inv) % r for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % r for a, b in zip(M[i], M[c])]
    return IntMatrix(row[n:] for row in M)


def centralizer_units_mod(A: IntMatrix, r: int, cap: int = DEFAULT_MODULAR_CAP) -> list[IntMatrix]:
    """Every unit of the ring ``{P mod r : P A = A P mod r}``.

    The full element list is returned; it trivially generates the group. The
    solution module is read off the Smith form of the commutator map.
    """
    if r < 2:
        raise DomainError("modulus must be >= 2")
    n = A.rows
    M = psi_matrix(A, A)
    S, _, V = snf(M)
    k = min(S.shape)
    steps = []
    for i in range(M.cols):
        d = S[i, i] if i < k else 0
        g = gcd(d, r)  # gcd(0, r) == r
        if g > 1:
            steps.append((V.col(i), r // g, g))
    size = 1
    for _, _, g in steps:
        size *= g
    if size > cap:
        raise CapExceeded(f"modular centralizer has {size} elements, cap {cap}")
    units = []
    for coeffs in itertools.product(*(range(g) for _, _, g in steps)):
        v = [0] * (n * n)
        for (col, scale, _), c in zip(steps, coeffs):
            if c:
                v = [a + c * scale * b for a, b in zip(v, col)]
        P = IntMatrix.from_flat(n, n, [x % r for x in v])
        if gcd(det(P), r) == 1:
            units.append(P)
    return units


# -- (A, B)-equivalence --------------------------------------------------------------------


@dataclass
class Orbit:
    representative: IntMatrix
    members: list[IntMatrix]
    # (X, Y, P, Q): Y is the class of P^-1 X Q
    witnesses: list[tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]] = field(default_factory=list)


@dataclass
class EquivClassSet:
    """Partition of Coker psi into (A, B)-equivalence classes."""

    A: IntMatrix
    B: IntMatrix
    coker: FinAbGroup
    elements: list[IntMatrix]
    orbits: list[Orbit]
    bound: int
    modular_orbit_count: int | None = None
    modular_overapprox: bool = False
    rejected_witnesses: list[tuple[IntMatrix, IntMatrix, str]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def status(self) -> str:
        """``exact`` when the modular lower bound meets the integral upper bound."""
        if self.modular_orbit_count is not None and self.modular_orbit_count == self.count:
            return "exact"
        return f"confirmed at bound {self.bound}"

    def orbit_of(self, X: IntMatrix) -> int:
        key = _coset_key(self.A, self.B, X)
        for i, orb in enumerate(self.orbits):
            if any(_coset_key(self.A, self.B, Y) == key for Y in orb.members):
                return i
        raise KeyError("matrix not found in any orbit")


def _coset_key(A, B, X):
    return coker_psi(A, B).canonical(X)


def validate_witness(A: IntMatrix, B: IntMatrix, P: IntMatrix, Q: IntMatrix) -> str | None:
    """None when (P, Q) lies in C(A) x C(B) with both unimodular, else a reason."""
    if P.shape != A.shape or Q.shape != B.shape:
        return "shape mismatch"
    if P @ A != A @ P:
        return "P does not commute with A"
    if Q @ B != B @ Q:
        return "Q does not commute with B"
    if abs(det(P)) != 1:
        return f"det P = {det(P)}"
    if abs(det(Q)) != 1:
        return f"det Q = {det(Q)}"
    return None


def _orbits(elements, act_pairs, canon):
    index = {X: i for i, X in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = []
    for P_inv, Q, P in act_pairs:
        for i, X in enumerate(elements):
            j = index[canon(P_inv @ X @ Q)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
                edges.append((X, elements[j], P, Q))
    groups: dict[int, list[int]] = {}
    for i in range(len(elements)):
        groups.setdefault(find(i), []).append(i)
    return groups, edges


def ab_equivalence_classes(
    A: IntMatrix,
    B: IntMatrix,
    witnesses=None,
    bound: int = DEFAULT_BOUND,
    cap: int = DEFAULT_COKER_CAP,
    modular: bool = True,
    max_nodes: int | None = 10**6,
) -> EquivClassSet:
    """Orbits of Coker psi under the pairs (P, Q) acting by ``[X] -> [P^-1 X Q]``.

    The acting set is: supplied witness pairs (invalid ones are recorded and
    skipped), centralizer elements of A and of B found with entries bounded by
    ``bound``, and the sign pairs. This gives an upper bound on the true
    number of classes. With ``modular`` the orbits under all centralizer units
    modulo the cokernel exponent are also counted; that is a lower bound, and
    equality of the two certifies the count.
    """
    coker = coker_psi(A, B)
    elements = coker.elements(cap)
    canon = coker.canonical
    m, n = A.rows, B.rows
    Im, In = IntMatrix.identity(m), IntMatrix.identity(n)

    pairs: list[tuple[IntMatrix, IntMatrix, IntMatrix]] = []
    rejected = []
    for P, Q in witnesses or ():
        why = validate_witness(A, B, P, Q)
        if why:
            rejected.append((P, Q, why))
        else:
            pairs.append((P.inverse(), Q, P))
    for s, t in ((-1, 1), (1, -1), (-1, -1)):
        pairs.append((Im * s, In * t, Im * s))
    for P in centralizer_search(A, bound, max_nodes):
        pairs.append((P.inverse(), In, P))
    for Q in centralizer_search(B, bound, max_nodes):
        pairs.append((Im, Q, Im))

    groups, edges = _orbits(elements, pairs, canon)
    orbits = []
    for idxs in groups.values():
        members = sorted((elements[i] for i in idxs), key=IntMatrix.flat)
        mset = set(members)
        orbits.append(
            Orbit(members[0], members, [e for e in edges if e[0] in mset])
        )
    orbits.sort(key=lambda o: (not o.representative.is_zero(), o.representative.flat()))

    result = EquivClassSet(A, B, coker.group, elements, orbits, bound, rejected_witnesses=rejected)
    if modular and coker.order > 1:
        e = coker.group.exponent
        try:
            ua = centralizer_units_mod(A, e)
            ub = centralizer_units_mod(B, e)
        except CapExceeded:
            return result
        mod_pairs = [(P, In, P) for P in ua] + [(Im, Q, Im) for Q in ub]
        mgroups, _ = _orbits(elements, mod_pairs, canon)
        result.modular_orbit_count = len(mgroups)
        result.modular_overapprox = len(mgroups) < len(orbits)
    elif modular:
        result.modular_orbit_count = 1
    return result


# -- block triangularization -----------------------------------------------------------


def block_triangularize(A: IntMatrix, order=None) -> tuple[IntMatrix, list[IntMatrix]]:
    """Unimodular U with ``U^-1 A U`` block upper triangular, one diagonal block per
    distinct irreducible factor p^e of the characteristic polynomial.

    ``order`` lists the irreducible factors (IntPoly) in the wanted diagonal
    order; by default they follow :func:`irreducible_factors`.
    """
    if not A.is_square():
        raise DimensionError("block triangularization needs a square matrix")
    factors = irreducible_factors(charpoly(A))
    mult = {p: e for p, e in factors}
    seq = [p for p, _ in factors] if order is None else list(order)
    if sorted(map(str, seq)) != sorted(map(str, mult)):
        raise DomainError("order must be a permutation of the irreducible factors")
    U_total = IntMatrix.identity(A.rows)
    blocks = []
    cur = A
    offset = 0
    for p in seq:
        k = p.degree * mult[p]
        if k == cur.rows:
            blocks.append(cur)
            break
        K = kernel_lattice((p ** mult[p]).eval_matrix(cur)).basis
        U = complete_to_unimodular(K)
        T = U.inverse() @ cur @ U
        blocks.append(T.submatrix(0, k, 0, k))
        U_total = U_total @ direct_sum(IntMatrix.identity(offset), U)
        offset += k
        cur = T.submatrix(k, T.rows, k, T.cols)
    return U_total, blocks


# -- involutions (Hua-Reiner) ---------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionType:
    x: int
    y: int
    z: int

    def __post_init__(self):
        if min(self.x, self.y, self.z) < 0:
            raise DomainError("negative involution type entry")

    @property
    def n(self) -> int:
        return 2 * self.x + self.y + self.z


def involution_type(A: IntMatrix) -> InvolutionType:
    """(x, y, z) with A integrally similar to L^x (+) (-I_y) (+) I_z."""
    n = A.rows
    if not A.is_square() or A @ A != IntMatrix.identity(n):
        raise DomainError("matrix is not an involution")
    I = IntMatrix.identity(n)
    x = rank_mod_p(A - I, 2)
    minus = n - rank_q(A + I)
    y = minus - x
    return InvolutionType(x, y, n - 2 * x - y)


def involution_normal_form(t: InvolutionType) -> IntMatrix:
    return direct_sum(*([L_BLOCK] * t.x), -IntMatrix.identity(t.y), IntMatrix.identity(t.z))


# -- C_n^{+-} extension type ----------------------------------------------------------------


def _detect_cyclotomic_power(A: IntMatrix) -> tuple[int, int]:
    """(n, s) when A is semisimple with characteristic polynomial Phi_n^s."""
    fac, rest = cyclotomic_factorization(charpoly(A))
    if rest != IntPoly.const(1) or len(fac) != 1:
        raise DomainError("diagonal block is not a power of one cyclotomic polynomial")
    (n, s), = fac.items()
    if not cyclotomic_poly(n).eval_matrix(A).is_zero():
        raise DomainError(f"diagonal block is not annihilated by Phi_{n}")
    return n, s


def unipotent_extension_type(M: IntMatrix, m: int) -> int:
    """t for ``M = [[A, X], [0, eps I_m]]`` with A similar to s copies of C_n.

    t is the F_p-rank of the class of X in ``Coker(A - eps I) (x) Z^m``, which
    is ``(Z/p)^{s x m}`` with ``p = |Phi_n(eps)|``; it is 0 when that value is 1.
    """
    if not M.is_square() or not 0 < m < M.rows:
        raise DomainError("bad block sizes")
    k = M.rows - m
    eps = M[M.rows - 1, M.rows - 1]
    if eps not in (1, -1):
        raise DomainError("lower-right block must be +-I")
    if M.submatrix(k, M.rows, k, M.rows) != IntMatrix.scalar(m, eps):
        raise DomainError("lower-right block is not eps*I_m")
    if not M.submatrix(k, M.rows, 0, k).is_zero():
        raise DomainError("lower-left block is not zero")
    A = M.submatrix(0, k, 0, k)
    X = M.submatrix(0, k, k, M.rows)
    n, s = _detect_cyclotomic_power(A)
    p = abs(cyclotomic_poly(n)(eps))
    if p == 0:
        raise DomainError("eps is an eigenvalue of A")
    if p == 1:
        return 0
    S, U, _ = snf(A - IntMatrix.scalar(k, eps))
    tors = [i for i in range(k) if S[i, i] > 1]
    assert all(S[i, i] == p for i in tors)
    Y = U @ X
    coords = IntMatrix([Y.row(i) for i in tors], cols=m)
    return rank_mod_p(coords, p)


def extension_normal_form(n: int, s: int, m: int, t: int, eps: int = 1) -> IntMatrix:
    """``(C_n^eps)^t (+) C_n^(s - t) (+) eps I_(m - t)``."""
    from .cyclotomic import bordered

    Cn = C(n)
    return direct_sum(*([bordered(Cn, eps)] * t), *([Cn] * (s - t)), IntMatrix.scalar(m - t, eps))


# -- similarity tests ------------------------------------------------------------------------


def rational_canonical_data(A: IntMatrix) -> dict[IntPoly, tuple[int, ...]]:
    """For each irreducible factor p of the characteristic polynomial, the partition
    of its multiplicity into elementary-divisor exponents (largest first)."""
    out = {}
    for p, e in irreducible_factors(charpoly(A)):
        if e == 1:
            out[p] = (1,)
            continue
        d = p.degree
        ranks = [A.rows]
        P = IntMatrix.identity(A.rows)
        pA = p.eval_matrix(A)
        for _ in range(e):
            P = P @ pA
            ranks.append(rank_q(P))
            if ranks[-1] == ranks[-2]:
                break
        at_least = [(ranks[i - 1] - ranks[i]) // d for i in range(1, len(ranks))]
        parts = []
        for size in range(len(at_least), 0, -1):
            exactly = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
            parts.extend([size] * exactly)
        out[p] = tuple(parts)
    return out


def rational_invariant_factors(A: IntMatrix) -> list[IntPoly]:
    """Invariant factors f_1 | f_2 | ... of xI - A over Q[x] (nonconstant ones)."""
    data = rational_canonical_data(A)
    k = max((len(v) for v in data.values()), default=0)
    out = []
    for i in range(k):
        f = IntPoly.const(1)
        for p, parts in data.items():
            # i-th largest exponent goes to the (k - i)-th invariant factor
            if i < len(parts):
                f = f * p ** parts[i]
        out.append(f)
    return list(reversed(out))


def is_rationally_similar(A: IntMatrix, B: IntMatrix) -> bool:
    if A.shape != B.shape or not A.is_square():
        return False
    if charpoly(A) != charpoly(B):
        return False
    return rational_canonical_data(A) == rational_canonical_data(B)


def is_integrally_similar_bounded(
    A: IntMatrix, B: IntMatrix, bound: int = DEFAULT_BOUND, max_nodes: int | None = 10**6
) -> IntMatrix | None:
    """A unimodular P with ``P^-1 A P == B`` and entries in ``[-bound, bound]``, or
    None (unknown). None is never a proof of non-similarity."""
    if A.shape != B.shape or not A.is_square():
        raise DimensionError("similarity needs square matrices of equal size")
    if A == B:
        return IntMatrix.identity(A.rows)
    if not is_rationally_similar(A, B):
        return None
    if A.rows > 12:
        return _krylov_search(A, B, bound, max_nodes or 10**6)
    try:
        for P in bounded_intertwiners(A, B, bound, max_nodes):
            return P
    except CapExceeded:
        return None
    return None


def _krylov_search(A: IntMatrix, B: IntMatrix, bound: int, max_nodes: int) -> IntMatrix | None:
    # For cyclic B with cyclic vector e_1, every intertwiner is K_A(v) K_B(e_1)^-1
    # where v is its first column; v is enumerated in the bounded box.
    from .intlinalg.matrix import rational_inverse

    n = A.rows

    def krylov(X, v):
        cols = [list(v)]
        for _ in range(n - 1):
            cols.append([sum(a * b for a, b in zip(r, cols[-1])) for r in X.entries])
        return IntMatrix.from_columns(cols)

    KB = krylov(B, [int(i == 0) for i in range(n)])
    if det(KB) == 0:
        return None
    KB_inv = rational_inverse(KB)
    seen = 0
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        seen += 1
        if seen > max_nodes:
            return None
        if not any(v):
            continue
        KA = krylov(A, v)
        prod = [[sum(a * b for a, b in zip(r, c)) for c in zip(*KB_inv)] for r in KA.entries]
        if any(x.denominator != 1 for row in prod for x in row):
            continue
        P = IntMatrix((int(x) for x in row) for row in prod)
        if abs(det(P)) == 1:
            return P
    return None
