"""Characteristic and minimal polynomials, and finite-order detection."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DimensionError, DomainError
from .matrix import IntMatrix
from .normal_forms import det
from .poly import IntPoly

INFINITE = math.inf


def charpoly(A: IntMatrix) -> IntPoly:
    """det(xI - A) by the Faddeev-LeVerrier recurrence; every division is exact."""
    if not A.is_square():
        raise DimensionError("charpoly of a non-square matrix")
    n = A.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = IntMatrix.zeros(n, n)
    for k in range(1, n + 1):
        M = A @ M + IntMatrix.scalar(n, coeffs[n - k + 1])
        t = (A @ M).trace()
        assert t % k == 0
        coeffs[n - k] = -t // k
    return IntPoly(coeffs)


def minpoly_krylov(A: IntMatrix) -> IntPoly:
    """Minimal polynomial from the first linear dependency among I, A, A^2, ...

    Works for any square integer matrix; the result is monic with integer
    coefficients because it divides the (monic, integral) characteristic
    polynomial.
    """
    if not A.is_square():
        raise DimensionError("minpoly of a non-square matrix")
    n = A.rows
    # echelon basis of vec(A^0..A^{d-1}), each row tracking its combination
    basis: list[tuple[list[Fraction], list[Fraction], int]] = []
    P = IntMatrix.identity(n)
    for d in range(n + 1):
        v = [Fraction(x) for x in P.flat()]
        combo = [Fraction(0)] * (d + 1)
        combo[d] = Fraction(1)
        for bv, bc, piv in basis:
            if v[piv]:
                f = v[piv] / bv[piv]
                v = [a - f * b for a, b in zip(v, bv)]
                combo = [a - f * b for a, b in zip(combo, bc + [Fraction(0)] * (len(combo) - len(bc)))]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            assert combo[-1] == 1 and all(c.denominator == 1 for c in combo)
            return IntPoly(int(c) for c in combo)
        basis.append((v, combo, piv))
        P = P @ A
    raise AssertionError("Cayley-Hamilton violated")


def minpoly(A: IntMatrix) -> IntPoly:
    """Minimal polynomial; cyclotomic trial division first, Krylov fallback."""
    from ..cyclotomic import cyclotomic_factorization, cyclotomic_poly

    f = charpoly(A)
    factors, rest = cyclotomic_factorization(f)
    if rest != IntPoly.const(1):
        return minpoly_krylov(A)
    exps = dict(factors)

    def annihilates(e: dict[int, int]) -> bool:
        p = IntPoly.const(1)
        for j, k in e.items():
            p = p * cyclotomic_poly(j) ** k
        return p.eval_matrix(A).is_zero()

    for j in sorted(exps):
        while exps[j] > 1:
            trial = dict(exps)
            trial[j] -= 1
            if not annihilates(trial):
                break
            exps = trial
    out = IntPoly.const(1)
    for j in sorted(exps):
        out = out * cyclotomic_poly(j) ** exps[j]
    return out


def matrix_order(A: IntMatrix):
    """Least d >= 1 with A^d = I, or ``INFINITE``.

    Finite order holds exactly when the minimal polynomial is squarefree and
    every irreducible factor is cyclotomic; the order is then the lcm of the
    cyclotomic indices.
    """
    if not A.is_square():
        raise DimensionError("order of a non-square matrix")
    d = det(A)
    if d == 0:
        raise DomainError("singular matrix has no multiplicative order")
    if abs(d) != 1:
        return INFINITE
    from ..cyclotomic import cyclotomic_factorization

    factors, rest = cyclotomic_factorization(charpoly(A))
    if rest != IntPoly.const(1):
        return INFINITE
    if A.rows == 0:
        return 1
    mp = minpoly(A)
    mfac, _ = cyclotomic_factorization(mp)
    if any(e > 1 for e in mfac.values()):
        return INFINITE
    return math.lcm(*mfac)
