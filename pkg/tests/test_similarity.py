import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_unimodular
from flatsolv.cyclotomic import C, bordered, cyclotomic_poly
from flatsolv.errors import DomainError, NonCoprimeError
from flatsolv.intlinalg import IntMatrix, IntPoly, charpoly, det, direct_sum, is_unimodular, parse_poly
from flatsolv.similarity import (
    L_BLOCK,
    InvolutionType,
    ab_equivalence_classes,
    apply_psi,
    block_triangularize,
    bounded_intertwiners,
    centralizer_search,
    coker_psi,
    extension_normal_form,
    involution_normal_form,
    involution_type,
    is_integrally_similar_bounded,
    is_rationally_similar,
    psi_matrix,
    rational_invariant_factors,
    resultant,
    sylvester,
    unipotent_extension_type,
    validate_witness,
)

I = IntMatrix.identity
C3, C4, C6 = C(3), C(4), C(6)
E13 = IntMatrix([[0, 0, 1], [0, 0, 0]])

polys = st.lists(st.integers(-4, 4), min_size=1, max_size=5).map(lambda c: IntPoly(list(c) + [1]))


def sym_resultant(p, q):
    x = sympy.Symbol("x")
    P = sum(c * x**i for i, c in enumerate(p.coeffs))
    Q = sum(c * x**i for i, c in enumerate(q.coeffs))
    return int(sympy.resultant(P, Q, x))


def norm_resultant(p, q):
    """det q(C_p) = prod q(alpha) over the roots of the monic p, via sympy."""
    from flatsolv.cyclotomic import companion

    Cp = sympy.Matrix(companion(p).tolist())
    val = sympy.zeros(*Cp.shape)
    for i, c in enumerate(q.coeffs):
        val += c * Cp**i
    return int(val.det())


# -- resultants and psi --------------------------------------------------------------------


def test_sylvester_layout():
    S = sylvester(parse_poly("x^2+x+1"), parse_poly("x-1"))
    # deg q rows of p (leading coefficient first), then deg p rows of q
    assert S == IntMatrix([[1, 1, 1], [1, -1, 0], [0, 1, -1]])


def test_resultant_examples():
    assert resultant(parse_poly("x^2+x+1"), parse_poly("(x-1)(x+1)^2")) == 3
    assert resultant(parse_poly("x-1"), parse_poly("x+1")) == 2
    assert resultant(parse_poly("x-1"), parse_poly("(x-1)(x+1)")) == 0


@given(polys, polys)
def test_resultant_matches_oracles(p, q):
    r = resultant(p, q)
    # sympy's sign convention differs from the Sylvester determinant in places
    assert abs(r) == abs(sym_resultant(p, q))
    assert r == norm_resultant(p, q)


@given(polys, polys)
def test_resultant_zero_iff_common_factor(p, q):
    g = sympy.gcd(sympy.Poly(list(reversed(p.coeffs)), sympy.Symbol("x")),
                  sympy.Poly(list(reversed(q.coeffs)), sympy.Symbol("x")))
    assert (resultant(p, q) == 0) == (g.degree() > 0)


@given(polys, polys)
def test_psi_determinant_is_resultant(p, q):
    from flatsolv.cyclotomic import companion

    A, B = companion(p), companion(q)
    assert abs(det(psi_matrix(A, B))) == abs(resultant(p, q))


def test_psi_matrix_is_row_major():
    rng = random.Random(3)
    A = IntMatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
    B = IntMatrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
    T = IntMatrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(2)])
    flat = psi_matrix(A, B) @ IntMatrix([[v] for v in T.flat()])
    assert [r[0] for r in flat.entries] == list(apply_psi(A, B, T).flat())


def test_coker_examples():
    B = direct_sum(-I(2), I(1))
    ck = coker_psi(C3, B)
    assert ck.order == 3
    assert ck.elements() == [IntMatrix.zeros(2, 3), E13, E13 * 2]
    assert ck.canonical(E13 * 4) == E13
    assert ck.contains(apply_psi(C3, B, IntMatrix([[1, 2, 3], [4, 5, 6]])))
    with pytest.raises(NonCoprimeError):
        coker_psi(I(1), direct_sum(I(1), -I(1)))


@given(polys, polys)
def test_coker_order_equals_resultant(p, q):
    from flatsolv.cyclotomic import companion

    r = resultant(p, q)
    if r == 0:
        return
    ck = coker_psi(companion(p), companion(q))
    assert ck.order == abs(r)
    if abs(r) <= 200:
        elems = ck.elements()
        assert len(elems) == abs(r)
        assert len({ck.canonical(X) for X in elems}) == abs(r)


# -- centralizers and orbits ----------------------------------------------------------------


def test_centralizer_search():
    cent = centralizer_search(C3, bound=1)
    assert I(2) in cent and C3 in cent and -I(2) in cent
    for P in cent:
        assert P @ C3 == C3 @ P and is_unimodular(P)
    # the unit group of Z[zeta_3] has order 6
    assert len(centralizer_search(C3, bound=3)) == 6


def test_bounded_intertwiners():
    U = IntMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    A = direct_sum(C3, I(1))
    B = U.inverse() @ A @ U
    found = list(itertools.islice(bounded_intertwiners(A, B, 2), 5))
    assert found
    for P in found:
        assert A @ P == P @ B and is_unimodular(P)


def test_validate_witness():
    B = direct_sum(-I(2), I(1))
    assert validate_witness(C3, B, I(2), I(3)) is None
    assert validate_witness(C3, B, C3, I(3)) is None
    assert validate_witness(C3, B, IntMatrix([[1, 1], [0, 1]]), I(3)) is not None
    assert validate_witness(C3, B, I(2), IntMatrix.diag([2, 1, 1])) is not None


def test_equivalence_classes_basic():
    B = direct_sum(-I(2), I(1))
    cls = ab_equivalence_classes(C3, B)
    assert cls.count == 2 and cls.status == "exact"
    assert cls.orbits[0].representative.is_zero()
    assert cls.orbit_of(E13) == cls.orbit_of(E13 * 2) != cls.orbit_of(IntMatrix.zeros(2, 3))


def test_orbit_witnesses_conjugate_block_matrices():
    B = direct_sum(-I(2), I(1))
    cls = ab_equivalence_classes(C3, B)
    for orb in cls.orbits:
        for X, Y, P, Q in orb.witnesses:
            assert P @ C3 == C3 @ P and Q @ B == B @ Q
            assert coker_psi(C3, B).canonical(P.inverse() @ X @ Q) == coker_psi(C3, B).canonical(Y)


def test_classes_invariant_under_total_conjugation():
    # the number of classes only depends on the conjugacy classes of A and B
    rng = random.Random(11)
    B = direct_sum(-I(2), I(1))
    U = random_unimodular(3, rng)
    B2 = U.inverse() @ B @ U
    assert ab_equivalence_classes(C3, B2).count == ab_equivalence_classes(C3, B).count


# -- block triangular form ------------------------------------------------------------------


def test_block_triangularize_order():
    A = direct_sum(C6, C4, I(1))
    order = [parse_poly("x-1"), cyclotomic_poly(4), cyclotomic_poly(6)]
    U, blocks = block_triangularize(A, order)
    assert is_unimodular(U)
    T = U.inverse() @ A @ U
    assert [charpoly(b) for b in blocks] == order
    assert T.submatrix(1, 5, 0, 1).is_zero() and T.submatrix(3, 5, 1, 3).is_zero()


@given(st.integers(0, 2**31))
def test_block_triangularize_random(seed):
    rng = random.Random(seed)
    A0 = direct_sum(C3, -I(1), I(2))
    U0 = random_unimodular(5, rng)
    A = U0.inverse() @ A0 @ U0
    U, blocks = block_triangularize(A)
    T = U.inverse() @ A @ U
    assert is_unimodular(U)
    off = 0
    for b in blocks:
        k = b.rows
        assert T.submatrix(off, off + k, off, off + k) == b
        assert T.submatrix(off + k, T.rows, off, off + k).is_zero()
        off += k
    prod = IntPoly.const(1)
    for b in blocks:
        prod = prod * charpoly(b)
    assert prod == charpoly(A)


# -- involutions ---------------------------------------------------------------------------


def test_involution_type_examples():
    assert involution_type(L_BLOCK) == InvolutionType(1, 0, 0)
    assert involution_type(direct_sum(-I(2), I(3))) == InvolutionType(0, 2, 3)
    assert involution_type(IntMatrix([[0, 1], [1, 0]])) == InvolutionType(1, 0, 0)
    with pytest.raises(DomainError):
        involution_type(C4)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**31))
def test_involution_type_is_conjugation_invariant(x, y, z, seed):
    t = InvolutionType(x, y, z)
    if t.n == 0:
        return
    W = involution_normal_form(t)
    U = random_unimodular(t.n, random.Random(seed))
    assert involution_type(U.inverse() @ W @ U) == t


# -- extensions of cyclotomic blocks ----------------------------------------------------------


def test_unipotent_extension_examples():
    # C_4 bordered by -1 with X = e_1: p = |Phi_4(-1)| = 2
    M = direct_sum(C4, -I(1))
    M = IntMatrix([[M[i, j] + (i == 0 and j == 2) for j in range(3)] for i in range(3)])
    assert unipotent_extension_type(M, 1) == 1
    assert unipotent_extension_type(direct_sum(C4, -I(1)), 1) == 0
    assert unipotent_extension_type(bordered(C3, 1), 1) == 1
    # |Phi_4(1)| = 2 and |Phi_6(1)| = 1
    assert unipotent_extension_type(bordered(C6, 1), 1) == 0


def test_unipotent_extension_cross_checked_by_search():
    M = direct_sum(C4, -I(1))
    M = IntMatrix([[M[i, j] + (i == 0 and j == 2) for j in range(3)] for i in range(3)])
    t = unipotent_extension_type(M, 1)
    N = extension_normal_form(4, 1, 1, t, eps=-1)
    assert is_integrally_similar_bounded(M, N, bound=2) is not None
    assert is_integrally_similar_bounded(M, direct_sum(C4, -I(1)), bound=3) is None


@given(st.integers(0, 2**31), st.integers(0, 2), st.sampled_from([(3, 1), (4, 1), (4, -1), (6, -1)]))
def test_unipotent_extension_block_conjugation_invariant(seed, t, ne):
    n, eps = ne
    s, m = 2, 2
    if t > min(s, m):
        return
    M = _block_shaped_extension(n, s, m, t, eps)
    k = 2 * s
    rng = random.Random(seed)
    P = random_unimodular(k, rng)
    Q = random_unimodular(m, rng)
    D = direct_sum(P, Q)
    N = D.inverse() @ M @ D
    # P need not centralize, but the lower-right block must stay eps * I
    assert unipotent_extension_type(N, m) == unipotent_extension_type(M, m)


def _block_shaped_extension(n, s, m, t, eps):
    """[[C_n^s, X], [0, eps I_m]] with X = e_1 of block i in column i for i < t."""
    d = C(n).rows
    k = d * s
    M = direct_sum(*([C(n)] * s), IntMatrix.scalar(m, eps))
    rows = M.tolist()
    for i in range(t):
        rows[i * d][k + i] = 1
    return IntMatrix(rows)


def test_block_shaped_extension_matches_normal_form():
    for n, eps in ((3, 1), (4, -1)):
        for t in range(3):
            M = _block_shaped_extension(n, 2, 2, t, eps)
            assert unipotent_extension_type(M, 2) == t
            assert is_rationally_similar(M, extension_normal_form(n, 2, 2, t, eps))


# -- similarity -----------------------------------------------------------------------------


def test_rational_similarity():
    assert is_rationally_similar(direct_sum(-I(2), I(3)), direct_sum(L_BLOCK, -I(1), I(2)))
    assert not is_rationally_similar(direct_sum(C4, I(1)), direct_sum(C3, I(1)))
    J = IntMatrix([[1, 1], [0, 1]])
    assert not is_rationally_similar(J, I(2))
    assert rational_invariant_factors(J) == [parse_poly("(x-1)^2")]
    assert rational_invariant_factors(I(2)) == [parse_poly("x-1"), parse_poly("x-1")]


def test_integral_similarity_bounded():
    P = is_integrally_similar_bounded(L_BLOCK, IntMatrix([[1, 0], [1, -1]]))
    assert P is not None
    assert P.inverse() @ L_BLOCK @ P == IntMatrix([[1, 0], [1, -1]])
    # rationally similar, integrally not: None, never a false positive
    assert is_integrally_similar_bounded(L_BLOCK, IntMatrix.diag([1, -1])) is None
