import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from conftest import int_matrices, random_unimodular, unimodular
from flatsolv.cyclotomic import C, companion
from flatsolv.errors import DimensionError, DomainError
from flatsolv.intlinalg import (
    INFINITE,
    FinAbGroup,
    IntMatrix,
    IntPoly,
    PolyParseError,
    charpoly,
    cokernel,
    complete_to_unimodular,
    det,
    direct_sum,
    hnf,
    hnf_column,
    image_lattice,
    invariant_factors,
    is_unimodular,
    kernel_lattice,
    matrix_order,
    minpoly,
    minpoly_krylov,
    parse_poly,
    poly_gcd_q,
    rank,
    rank_mod_p,
    rank_q,
    snf,
)

I = IntMatrix.identity
C3 = IntMatrix([[0, -1], [1, -1]])


def sym(A):
    return sympy.Matrix(A.tolist()) if A.rows and A.cols else sympy.zeros(A.rows, A.cols)


def sympy_invariants(A):
    S = smith_normal_form(sym(A), domain=sympy.ZZ)
    d = [abs(int(S[i, i])) for i in range(min(S.shape))]
    return sorted(d, key=lambda x: (x == 0, x))


def is_row_hnf(H):
    last = -1
    seen_zero = False
    for i in range(H.rows):
        row = H.row(i)
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            seen_zero = True
            continue
        if seen_zero or piv <= last or row[piv] <= 0:
            return False
        for k in range(i):
            if not 0 <= H[k, piv] < row[piv]:
                return False
        last = piv
    return True


# -- matrices ----------------------------------------------------------------------------


def test_matrix_basics():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A.shape == (2, 2) and A[1, 0] == 3
    assert A.T == IntMatrix([[1, 3], [2, 4]])
    assert A @ I(2) == A and A + A == A * 2
    assert (A**0).is_identity()
    assert IntMatrix.block([[A, I(2)]]).shape == (2, 4)
    assert direct_sum(A, I(1)).shape == (3, 3)
    assert IntMatrix.zeros(0, 3).shape == (0, 3)


def test_inverse_and_negative_power():
    U = IntMatrix([[2, 1], [1, 1]])
    assert U @ U.inverse() == I(2)
    assert U**-2 @ U**2 == I(2)
    with pytest.raises(DomainError):
        IntMatrix([[2, 0], [0, 1]]).inverse()


def test_json_roundtrip_big_entries():
    A = IntMatrix([[2**70, -(2**65)], [1, 0]])
    obj = A.to_json()
    assert isinstance(obj["entries"][0][0], str)
    assert IntMatrix.from_json(obj) == A
    assert IntMatrix.from_json([[1, 2], [3, 4]]) == IntMatrix([[1, 2], [3, 4]])


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2], [3]])


# -- determinant, rank ---------------------------------------------------------------------


def test_det_examples():
    assert det(I(5)) == 1
    assert det(I(2) - C3) == 3
    with pytest.raises(DimensionError):
        det(IntMatrix([[1, 2]]))


@given(int_matrices(square=True, max_dim=6))
def test_det_matches_sympy(A):
    assert det(A) == int(sym(A).det())


@given(int_matrices(max_dim=6))
def test_rank_routes_agree(A):
    r = rank_q(A)
    assert rank(A) == r == int(sym(A).rank())
    assert sum(1 for d in invariant_factors(A) if d) == r


def test_rank_mod_p():
    assert rank_mod_p(IntMatrix([[2, 0], [0, 3]]), 2) == 1
    assert rank_mod_p(IntMatrix([[2, 0], [0, 3]]), 5) == 2


# -- Hermite and Smith forms ------------------------------------------------------------------


def test_hnf_examples():
    H, U = hnf(I(3))
    assert H == I(3) and U == I(3)
    H, U = hnf(IntMatrix([[2, 4], [1, 3]]))
    # pivots positive, the entry above the pivot 2 is reduced into [0, 2)
    assert H == IntMatrix([[1, 1], [0, 2]])
    H, _ = hnf(IntMatrix([[2, 0], [0, 2]]))
    assert H == IntMatrix([[2, 0], [0, 2]])


@given(int_matrices(max_dim=6))
def test_hnf_properties(A):
    H, U = hnf(A)
    assert U @ A == H
    assert is_unimodular(U)
    assert is_row_hnf(H)


@given(int_matrices(max_dim=5))
def test_hnf_column_is_transpose_convention(A):
    H, V = hnf_column(A)
    assert A @ V == H
    assert is_row_hnf(H.T)


def test_snf_examples():
    S, U, V = snf(IntMatrix.zeros(2, 2))
    assert S.is_zero() and U == I(2) and V == I(2)
    S, _, _ = snf(I(2) - C3)
    assert S == IntMatrix.diag([1, 3])
    E = direct_sum(C3, I(3))
    S, _, _ = snf(I(5) - E)
    assert [S[i, i] for i in range(5)] == [1, 3, 0, 0, 0]
    assert cokernel(I(5) - E) == FinAbGroup(3, (3,))


@given(int_matrices(max_dim=6))
def test_snf_properties(A):
    S, U, V = snf(A)
    assert U @ A @ V == S
    assert is_unimodular(U) and is_unimodular(V)
    d = [S[i, i] for i in range(min(S.shape))]
    assert all(S[i, j] == 0 for i in range(S.rows) for j in range(S.cols) if i != j)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == [0] * (len(d) - len(nz))
    if A.is_square() and det(A):
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(det(A))


@given(int_matrices(max_dim=5))
def test_invariant_factors_match_sympy(A):
    assert sorted(invariant_factors(A), key=lambda x: (x == 0, x)) == sympy_invariants(A)


@given(st.data())
def test_cokernel_invariant_under_unimodular_change(data):
    A = data.draw(int_matrices(max_dim=5))
    U = data.draw(unimodular(A.rows))
    V = data.draw(unimodular(A.cols))
    assert cokernel(U @ A @ V) == cokernel(A)


# -- lattices ----------------------------------------------------------------------------


def test_cokernel_examples():
    assert cokernel(I(2) - C3) == FinAbGroup(0, (3,))
    assert cokernel(IntMatrix.zeros(1, 1)) == FinAbGroup(1, ())


@given(int_matrices(max_dim=5))
def test_kernel_lattice(A):
    K = kernel_lattice(A)
    assert K.rank == A.cols - rank_q(A)
    for v in K.vectors():
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A.entries)
    # saturated: the quotient Z^n / K is torsion free
    if K.rank:
        assert cokernel(K.basis).torsion == ()


@given(int_matrices(max_dim=5))
def test_image_lattice_membership(A):
    L = image_lattice(A)
    for c in A.columns():
        assert c in L
    sat = image_lattice(A, saturate=True)
    assert sat.rank == L.rank
    for v in L.vectors():
        assert v in sat


@given(st.data())
def test_complete_to_unimodular(data):
    n = data.draw(st.integers(2, 5))
    U0 = data.draw(unimodular(n))
    k = data.draw(st.integers(1, n))
    K = IntMatrix.from_columns(U0.columns()[:k], rows=n)
    U = complete_to_unimodular(K)
    assert is_unimodular(U)
    assert U.submatrix(0, n, 0, k) == K


def test_complete_to_unimodular_needs_primitive():
    with pytest.raises(ValueError):
        complete_to_unimodular(IntMatrix([[2], [0]]))


# -- finite abelian groups -------------------------------------------------------------------


def test_finabgroup_normalizes_and_prints():
    g = FinAbGroup.from_cyclic_orders([4, 6])
    assert g.torsion == (2, 12)
    assert g == FinAbGroup.parse("Z_4+Z_6")
    assert str(FinAbGroup(2, (2, 2, 2))) == "Z^2 + Z_2^3"
    assert str(FinAbGroup(0, ())) == "0"
    assert FinAbGroup.parse("{e}").is_trivial
    assert FinAbGroup.parse("Z^2 ⊕ Z_2 ⊕ Z_6") == FinAbGroup(2, (2, 6))
    assert FinAbGroup.from_json(FinAbGroup(1, (3,)).to_json()) == FinAbGroup(1, (3,))
    with pytest.raises(ValueError):
        FinAbGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FinAbGroup(0, (1,))


@given(st.lists(st.integers(0, 30), max_size=5))
def test_from_cyclic_orders_order(orders):
    g = FinAbGroup.from_cyclic_orders(orders)
    expect_free = sum(1 for o in orders if o == 0)
    prod = 1
    for o in orders:
        if o:
            prod *= o
    assert g.free_rank == expect_free
    if not expect_free:
        assert g.order == prod
    assert FinAbGroup.parse(str(g)) == g


# -- polynomials ---------------------------------------------------------------------------


def test_charpoly_examples():
    assert charpoly(C3) == parse_poly("x^2+x+1")
    E = direct_sum(I(3), C3)
    assert charpoly(E) == parse_poly("(x-1)^3(x^2+x+1)")
    assert minpoly(E) == parse_poly("(x-1)(x^2+x+1)")
    assert minpoly(I(5)) == parse_poly("x-1")


@given(int_matrices(square=True, max_dim=6))
def test_charpoly_matches_sympy(A):
    x = sympy.Symbol("x")
    coeffs = [int(c) for c in reversed(sym(A).charpoly(x).all_coeffs())]
    assert charpoly(A) == IntPoly(coeffs)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=12))
def test_charpoly_of_companion(low):
    p = IntPoly(list(low) + [1])
    assert charpoly(companion(p)) == p


@given(int_matrices(square=True, max_dim=5, lo=-3, hi=3))
def test_minpoly_routes_agree(A):
    m = minpoly(A)
    assert m.eval_matrix(A).is_zero()
    assert m == minpoly_krylov(A)


def test_poly_parser():
    assert parse_poly("(x-1)(x+1)^2") == IntPoly((-1, -1, 1, 1))
    assert parse_poly("x^2 - 3*x + 2") == IntPoly((2, -3, 1))
    assert parse_poly("-x") == IntPoly((0, -1))
    for bad in ("3x", "x^", "(x", "x^-1", "y"):
        with pytest.raises(PolyParseError):
            parse_poly(bad)


@given(st.lists(st.integers(-4, 4), max_size=5), st.lists(st.integers(-4, 4), max_size=5))
def test_poly_str_roundtrip(a, b):
    p = IntPoly(a) * IntPoly(b)
    assert parse_poly(str(p).replace("*", "*")) == p


def test_poly_gcd():
    a = parse_poly("(x-1)(x+1)^2")
    b = parse_poly("(x+1)(x^2+1)")
    assert poly_gcd_q(a, b) == parse_poly("x+1")
    assert poly_gcd_q(parse_poly("x^2+x+1"), parse_poly("x-1")) == IntPoly.const(1)


# -- order ---------------------------------------------------------------------------------


def test_order_examples():
    assert matrix_order(-I(4)) == 2
    assert matrix_order(C(12)) == 12
    assert matrix_order(IntMatrix([[1, 1], [0, 1]])) == INFINITE
    assert matrix_order(IntMatrix([[2, 1], [1, 1]])) == INFINITE
    with pytest.raises(DomainError):
        matrix_order(IntMatrix([[1, 1], [1, 1]]))


def test_order_by_multiplication(rng):
    for n in list(range(1, 31)):
        A = C(n)
        U = random_unimodular(A.rows, rng)
        B = U.inverse() @ A @ U
        d = matrix_order(B)
        assert d == n
        assert (B**d).is_identity()
        assert all(not (B**e).is_identity() for e in range(1, d) if d % e == 0)


def test_rational_inverse_is_exact():
    from flatsolv.intlinalg.matrix import rational_inverse

    inv = rational_inverse(IntMatrix([[2, 0], [0, 3]]))
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]


def test_random_det_big(rng):
    A = IntMatrix([[rng.randint(-10**12, 10**12) for _ in range(5)] for _ in range(5)])
    assert det(A) == int(sym(A).det())
    assert random.Random(0) is not None
