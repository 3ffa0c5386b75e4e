"""Totients, cyclotomic polynomials, companion matrices and angle enumeration.

Rotation angles are exact rationals ``q`` standing for ``2*pi*q``; no
trigonometry is evaluated anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError
from .intlinalg import IntMatrix, IntPoly


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    if n < 1:
        raise DomainError("totient is defined for n >= 1")
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


def inverse_totient(d: int) -> list[int]:
    """All n with totient(n) == d, searched up to 2*d^2 (valid since phi(n) >= sqrt(n/2))."""
    if d < 1:
        raise DomainError("inverse totient needs d >= 1")
    return list(_inverse_totient(d))


@lru_cache(maxsize=None)
def _inverse_totient(d: int) -> tuple[int, ...]:
    return tuple(n for n in range(1, 2 * d * d + 1) if totient(n) == d)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n, by exact division of x^n - 1 by the Phi_d with d | n, d < n."""
    if n < 1:
        raise DomainError("cyclotomic index must be >= 1")
    p = IntPoly((-1,) + (0,) * (n - 1) + (1,))
    for d in divisors(n)[:-1]:
        p = p.exact_div(cyclotomic_poly(d))
    return p


def cyclotomic_factorization(p: IntPoly) -> tuple[dict[int, int], IntPoly]:
    """Split a monic p into prod Phi_j^e_j times a cofactor with no cyclotomic factor."""
    if not p.is_monic():
        raise DomainError("cyclotomic factorization needs a monic polynomial")
    factors: dict[int, int] = {}
    rest = p
    candidates = sorted({j for d in range(1, p.degree + 1) if d == 1 or d % 2 == 0 for j in inverse_totient(d)})
    for j in candidates:
        phi = cyclotomic_poly(j)
        if phi.degree > rest.degree:
            continue
        while rest.degree >= phi.degree:
            q, r = rest.divmod_monic(phi)
            if not r.is_zero():
                break
            rest = q
            factors[j] = factors.get(j, 0) + 1
    return factors, rest


def irreducible_factors(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Irreducible factorization over Q of a monic integer polynomial.

    Cyclotomic factors are found by trial division; any remaining cofactor is
    handed to sympy.
    """
    fac, rest = cyclotomic_factorization(p)
    out = [(cyclotomic_poly(j), e) for j, e in sorted(fac.items())]
    if rest.degree > 0:
        import sympy

        x = sympy.Symbol("x")
        expr = sum(c * x**k for k, c in enumerate(rest.coeffs))
        _, parts = sympy.factor_list(expr, x)
        for f, e in parts:
            coeffs = [int(c) for c in reversed(sympy.Poly(f, x).all_coeffs())]
            out.append((IntPoly(coeffs), int(e)))
    return out


def companion(p: IntPoly) -> IntMatrix:
    """Companion matrix with ones on the subdiagonal and -coefficients in the last column."""
    if not p.is_monic():
        raise DomainError(f"companion matrix needs a monic polynomial, got {p}")
    n = p.degree
    if n < 1:
        raise DomainError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return IntMatrix(rows)


def C(n: int) -> IntMatrix:
    """Companion matrix of Phi_n."""
    return companion(cyclotomic_poly(n))


def bordered(Cm: IntMatrix, sign: int) -> IntMatrix:
    """``[[C, e_1^T], [0, sign]]``."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    n = Cm.rows
    rows = [list(r) + [1 if i == 0 else 0] for i, r in enumerate(Cm.entries)]
    rows.append([0] * n + [sign])
    return IntMatrix(rows)


def angles_for(j: int) -> frozenset[Fraction]:
    """Representative angles (as fractions of a full turn) of the Galois orbit of a
    primitive j-th root of unity, one from each conjugate pair."""
    if j < 3:
        raise DomainError("angles_for needs j >= 3")
    top = (j - 1) // 2 if j % 2 else (j - 2) // 2
    return frozenset(Fraction(l, j) for l in range(1, top + 1) if gcd(l, j) == 1)


def normalize_angle(q) -> Fraction:
    q = Fraction(q) % 1
    return min(q, 1 - q)


@dataclass(frozen=True)
class RotationSpec:
    """``I_s (+) theta(2 pi q_1) (+) ... (+) theta(2 pi q_n)`` with exact rational q_i."""

    s: int
    angles: tuple[Fraction, ...]

    def __post_init__(self):
        qs = tuple(Fraction(q) for q in self.angles)
        for q in qs:
            if not 0 < q < 1:
                raise DomainError(f"angle fraction {q} outside (0, 1)")
        object.__setattr__(self, "angles", qs)
        if self.s < 0:
            raise DomainError("negative fixed dimension")

    @property
    def dim(self) -> int:
        return self.s + 2 * len(self.angles)

    def normalized(self) -> RotationSpec:
        """Identify q with q + k and with 1 - q, and sort the blocks."""
        return RotationSpec(self.s, tuple(sorted(normalize_angle(q) for q in self.angles)))

    def __str__(self):
        blocks = [f"I_{self.s}"] if self.s else []
        for q in self.angles:
            blocks.append(f"theta({_angle_text(q)})")
        return " (+) ".join(blocks)


def _angle_text(q: Fraction) -> str:
    t = 2 * q
    if t == 1:
        return "pi"
    num = "pi" if t.numerator == 1 else f"{t.numerator}pi"
    return num if t.denominator == 1 else f"{num}/{t.denominator}"


def rotation_charpoly(spec: RotationSpec) -> IntPoly | None:
    """Characteristic polynomial of the rotation, or None when it is not in Z[x].

    Integral exactly when, for each denominator j >= 3, every representative in
    ``angles_for(j)`` occurs equally often (the eigenvalue multiset is Galois
    stable). Angle 1/2 contributes (x + 1)^2.
    """
    counts: dict[Fraction, int] = {}
    for q in spec.angles:
        q = normalize_angle(q)
        counts[q] = counts.get(q, 0) + 1
    result = IntPoly((-1, 1)) ** spec.s
    by_den: dict[int, list[Fraction]] = {}
    for q in counts:
        by_den.setdefault(q.denominator, []).append(q)
    for j, qs in sorted(by_den.items()):
        if j == 2:
            result = result * IntPoly((1, 1)) ** (2 * counts[Fraction(1, 2)])
            continue
        orbit = angles_for(j)
        mult = {counts.get(q, 0) for q in orbit}
        if len(mult) != 1:
            return None
        result = result * cyclotomic_poly(j) ** mult.pop()
    return result


@dataclass(frozen=True)
class AngleMultiset:
    """A multiset of cyclotomic indices j >= 3 plus counts of (x + 1) and (x - 1) factors."""

    indices: tuple[int, ...]
    minus_one: int = 0
    plus_one: int = 0

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        if any(j < 3 for j in self.indices):
            raise DomainError("indices must be >= 3")

    @property
    def degree(self) -> int:
        return sum(totient(j) for j in self.indices) + self.minus_one + self.plus_one

    def sort_key(self) -> tuple[int, ...]:
        return tuple([1] * self.plus_one + [2] * self.minus_one + list(self.indices))

    def charpoly(self) -> IntPoly:
        p = IntPoly.from_roots_pm1(self.minus_one, self.plus_one)
        for j in self.indices:
            p = p * cyclotomic_poly(j)
        return p

    def rotation_specs(self) -> list[RotationSpec]:
        """Normalized rotation realizing this multiset; each Phi_j contributes its
        whole orbit of representative angles, so the realization is unique."""
        if self.minus_one % 2:
            raise DomainError("an odd number of (x + 1) factors is not a rotation")
        angles: list[Fraction] = [Fraction(1, 2)] * (self.minus_one // 2)
        for j in self.indices:
            angles.extend(sorted(angles_for(j)))
        return [RotationSpec(self.plus_one, tuple(angles)).normalized()]


def angle_multisets(n: int, allow_pm_one: bool = False) -> list[AngleMultiset]:
    """All multisets S of indices in [3, 8 n^2] with sum of totients 2n.

    With ``allow_pm_one`` the rotation part may also contain theta(pi) blocks,
    recorded as pairs of (x + 1) factors.
    """
    if n < 1:
        raise DomainError("half-dimension must be >= 1")
    bound = 8 * n * n
    usable = [(j, totient(j)) for j in range(3, bound + 1) if totient(j) <= 2 * n]
    results: list[AngleMultiset] = []

    def extend(start: int, remaining: int, chosen: list[int], minus: int):
        if remaining == 0:
            results.append(AngleMultiset(tuple(chosen), minus_one=minus))
            return
        for idx in range(start, len(usable)):
            j, phi = usable[idx]
            if phi <= remaining:
                chosen.append(j)
                extend(idx, remaining - phi, chosen, minus)
                chosen.pop()

    pairs = range(n + 1) if allow_pm_one else range(1)
    for p in pairs:
        extend(0, 2 * n - 2 * p, [], 2 * p)
    results.sort(key=AngleMultiset.sort_key)
    return results


def multiset_from_spec(spec: RotationSpec) -> AngleMultiset | None:
    """Inverse of :meth:`AngleMultiset.rotation_specs` (None when not integral)."""
    p = rotation_charpoly(spec)
    if p is None:
        return None
    fac, _ = cyclotomic_factorization(p)
    idx: list[int] = []
    for j, e in fac.items():
        if j >= 3:
            idx.extend([j] * e)
    return AngleMultiset(tuple(idx), minus_one=fac.get(2, 0), plus_one=fac.get(1, 0))


def product_of_cyclotomics(indices: Iterable[int]) -> IntPoly:
    p = IntPoly.const(1)
    for j in indices:
        p = p * cyclotomic_poly(j)
    return p


def is_cyclotomic_product(p: IntPoly) -> bool:
    return p.is_monic() and cyclotomic_factorization(p)[1] == IntPoly.const(1)


def spec_from_angles(s: int, angles: Sequence) -> RotationSpec:
    return RotationSpec(s, tuple(Fraction(a) for a in angles)).normalized()
