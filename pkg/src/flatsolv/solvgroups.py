"""The lattice groups ``Sigma = Z^k x| Z^m`` with commuting finite-order actions.

An element is a pair (r, t) with r in Z^k, t in Z^m, and the product is
``(r, t)(r', t') = (r + r', t + E^r t')`` where ``E^r = E_1^r_1 ... E_k^r_k``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import CapExceeded, DimensionError, InfiniteOrder, NonCommuting, NonUnimodular
from .intlinalg import (
    INFINITE,
    FinAbGroup,
    IntMatrix,
    LatticeBasis,
    cokernel,
    det,
    direct_sum,
    image_lattice,
    matrix_order,
    rank,
    snf,
)

HOLONOMY_CAP = 10**4


@dataclass(frozen=True)
class SigmaGroup:
    k: int
    m: int
    generators: tuple[IntMatrix, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "generators": [E.to_json()["entries"] for E in self.generators],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj) -> SigmaGroup:
        gens = [IntMatrix.from_json(g) for g in obj["generators"]]
        k = obj.get("k", len(gens))
        m = obj.get("m", gens[0].rows if gens else 0)
        return make_sigma(k, m, gens, label=obj.get("label", ""))

    def conjugate(self, Q: IntMatrix) -> SigmaGroup:
        """Simultaneous conjugation ``Q^-1 E_i Q``; an isomorphic group."""
        Qi = Q.inverse()
        return make_sigma(self.k, self.m, [Qi @ E @ Q for E in self.generators], self.label)


def make_sigma(k: int, m: int, generators, label: str = "") -> SigmaGroup:
    gens = tuple(generators)
    if k < 1 or m < 0 or len(gens) != k:
        raise DimensionError(f"expected {k} generators, got {len(gens)}")
    for i, E in enumerate(gens):
        if E.shape != (m, m):
            raise DimensionError(f"generator {i} has shape {E.shape}, expected {(m, m)}")
        if abs(det(E)) != 1:
            raise NonUnimodular(f"generator {i} has determinant {det(E)}")
        if matrix_order(E) == INFINITE:
            raise InfiniteOrder(f"generator {i} has infinite order")
    for i, j in itertools.combinations(range(k), 2):
        if gens[i] @ gens[j] != gens[j] @ gens[i]:
            raise NonCommuting(f"generators {i} and {j} do not commute")
    return SigmaGroup(k, m, gens, label)


# -- holonomy ------------------------------------------------------------------------


def _bfs(generators, m: int, cap: int = HOLONOMY_CAP):
    """Elements of <E_1..E_k> with one exponent vector each, plus Schreier relations."""
    k = len(generators)
    start = IntMatrix.identity(m)
    where = {start: (0,) * k}
    order = [start]
    relations = []
    queue = deque([start])
    while queue:
        g = queue.popleft()
        vg = where[g]
        for i, E in enumerate(generators):
            h = g @ E
            vh = tuple(x + (j == i) for j, x in enumerate(vg))
            if h in where:
                rel = tuple(a - b for a, b in zip(vh, where[h]))
                if any(rel):
                    relations.append(rel)
            else:
                if len(order) >= cap:
                    raise CapExceeded(f"holonomy group larger than {cap}")
                where[h] = vh
                order.append(h)
                queue.append(h)
    return order, where, relations


def holonomy_elements(sigma: SigmaGroup, cap: int = HOLONOMY_CAP) -> list[IntMatrix]:
    return _bfs(sigma.generators, sigma.m, cap)[0]


def relation_lattice(sigma: SigmaGroup, cap: int = HOLONOMY_CAP) -> LatticeBasis:
    """``{r in Z^k : E^r = I}``."""
    _, _, rels = _bfs(sigma.generators, sigma.m, cap)
    if not rels:
        return LatticeBasis.from_generators(IntMatrix.zeros(sigma.k, 0))
    return image_lattice(IntMatrix.from_columns(rels, rows=sigma.k))


def holonomy(sigma: SigmaGroup, cap: int = HOLONOMY_CAP) -> FinAbGroup:
    """The finite abelian group <E_1, ..., E_k> as Z^k modulo the relation lattice."""
    R = relation_lattice(sigma, cap)
    g = cokernel(R.basis)
    assert g.free_rank == 0
    return g


# -- abelianization ---------------------------------------------------------------------


def stacked_action_matrix(sigma: SigmaGroup) -> IntMatrix:
    """``[I - E_1 | ... | I - E_k]``."""
    I = IntMatrix.identity(sigma.m)
    return IntMatrix.block([[I - E for E in sigma.generators]])


def commutator_sublattice(sigma: SigmaGroup) -> LatticeBasis:
    """The commutator subgroup, which lies in 0 x Z^m, as a sublattice of Z^m."""
    return image_lattice(stacked_action_matrix(sigma))


def abelianization(sigma: SigmaGroup) -> FinAbGroup:
    """``Z^k (+) Z^m / [Sigma, Sigma]``."""
    q = cokernel(stacked_action_matrix(sigma))
    return FinAbGroup(sigma.k + q.free_rank, q.torsion)


def betti1(sigma: SigmaGroup) -> int:
    return abelianization(sigma).free_rank


def presentation_relation_matrix(sigma: SigmaGroup) -> IntMatrix:
    """Abelianized relators of the presentation with generators a_1..a_k, b_1..b_m.

    Relators: [a_i, a_j], [b_i, b_j] and ``a_i b_j a_i^-1 (E_i b_j)^-1``. Each
    column is the exponent-sum vector of one relator in Z^(k+m).
    """
    k, m = sigma.k, sigma.m
    cols = []
    for _ in itertools.combinations(range(k), 2):
        cols.append([0] * (k + m))
    for _ in itertools.combinations(range(m), 2):
        cols.append([0] * (k + m))
    for E in sigma.generators:
        for j in range(m):
            v = [0] * (k + m)
            # a_i b_j a_i^-1 contributes +e_{b_j}; the image word contributes -E e_j
            v[k + j] += 1
            for l in range(m):
                v[k + l] -= E[l, j]
            cols.append(v)
    return IntMatrix.from_columns(cols, rows=k + m)


# -- generator moves and reduction ---------------------------------------------------------


def permute(sigma: SigmaGroup, perm) -> SigmaGroup:
    perm = tuple(perm)
    if sorted(perm) != list(range(sigma.k)):
        raise IndexError(f"{perm} is not a permutation of range({sigma.k})")
    return SigmaGroup(sigma.k, sigma.m, tuple(sigma.generators[p] for p in perm), sigma.label)


def invert(sigma: SigmaGroup, i: int) -> SigmaGroup:
    gens = list(sigma.generators)
    gens[i] = gens[i].inverse()
    return SigmaGroup(sigma.k, sigma.m, tuple(gens), sigma.label)


def multiply(sigma: SigmaGroup, i: int, j: int, power: int = 1) -> SigmaGroup:
    """Replace slot j by ``E_i^power E_j`` (i != j)."""
    if i == j:
        raise IndexError("multiply needs two different slots")
    gens = list(sigma.generators)
    gens[j] = (gens[i] ** power) @ gens[j]
    return SigmaGroup(sigma.k, sigma.m, tuple(gens), sigma.label)


def generator_moves(sigma: SigmaGroup, move) -> SigmaGroup:
    """Apply ``("permute", perm)``, ``("invert", i)`` or ``("multiply", i, j[, power])``."""
    kind, *args = move
    slots = [] if kind == "permute" else args[:2]
    if any(not 0 <= a < sigma.k for a in slots):
        raise IndexError(f"move {move} out of range for k = {sigma.k}")
    if kind == "permute":
        return permute(sigma, args[0])
    if kind == "invert":
        return invert(sigma, args[0])
    if kind == "multiply":
        return multiply(sigma, *args)
    raise ValueError(f"unknown move {kind!r}")


@dataclass
class Reduction:
    sigma: SigmaGroup
    free_excess: int
    moves: list = field(default_factory=list)


def _exponents_in(target: IntMatrix, gens, m: int):
    _, where, _ = _bfs(gens, m)
    return where.get(target)


def reduce_generators(sigma: SigmaGroup) -> tuple[SigmaGroup, int]:
    """Rewrite Sigma with the fewest acting generators.

    If the holonomy needs only l generators, Sigma is isomorphic to
    ``Z^l' x| Z^(m + k - l')`` acting through ``I_(k - l') (+) H_i`` with
    l' = max(l, 1). A subset of the original generators is preferred; otherwise
    new generators come from the Smith form of the relation lattice.
    """
    red = reduce_generators_with_moves(sigma)
    return red.sigma, red.free_excess


def reduce_generators_with_moves(sigma: SigmaGroup) -> Reduction:
    hol = holonomy(sigma)
    ell = max(len(hol.torsion), 1)
    k, m = sigma.k, sigma.m
    if ell >= k:
        return Reduction(sigma, 0)
    gens = sigma.generators
    size = hol.order
    chosen = None
    for subset in itertools.combinations(range(k), ell):
        if len(_bfs([gens[i] for i in subset], m)[0]) == size:
            chosen = subset
            break
    moves = []
    if chosen is not None:
        new = [gens[i] for i in chosen]
        sub = [gens[i] for i in chosen]
        for j in range(k):
            if j in chosen:
                continue
            exps = _exponents_in(gens[j], sub, m)
            for pos, c in enumerate(exps):
                if c:
                    moves.append(("multiply", chosen[pos], j, -c))
    else:
        # columns of U^-1 form a basis of Z^k adapted to the relation lattice
        S, U, _ = snf(relation_lattice(sigma).basis)
        W = U.inverse()
        new = []
        for i in range(k):
            if S[i, i] == 1:
                continue
            H = IntMatrix.identity(m)
            for E, c in zip(gens, W.col(i)):
                H = H @ (E**c)
            new.append(H)
        while len(new) < ell:
            new.append(IntMatrix.identity(m))
    pad = IntMatrix.identity(k - ell)
    reduced = make_sigma(ell, m + k - ell, [direct_sum(pad, H) for H in new], sigma.label)
    return Reduction(reduced, k - ell, moves)


# -- records ------------------------------------------------------------------------------


@dataclass(frozen=True)
class SolvmanifoldRecord:
    sigma: SigmaGroup
    holonomy: FinAbGroup
    abelianization: FinAbGroup
    betti1: int
    label: str = ""

    def __post_init__(self):
        if self.betti1 != self.abelianization.free_rank:
            raise ValueError("betti1 must equal the free rank of the abelianization")
        if self.betti1 < self.sigma.k:
            raise ValueError("betti1 is at least k")


def make_record(sigma: SigmaGroup, label: str | None = None) -> SolvmanifoldRecord:
    ab = abelianization(sigma)
    return SolvmanifoldRecord(sigma, holonomy(sigma), ab, ab.free_rank, label if label is not None else sigma.label)


def betti1_formula(E: IntMatrix) -> int:
    """(1 + m) - rank(E - I) for a single generator."""
    return 1 + E.rows - rank(E - IntMatrix.identity(E.rows))
