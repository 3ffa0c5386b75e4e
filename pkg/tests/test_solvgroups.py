import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_sigma, random_unimodular
from flatsolv.classify import load_json
from flatsolv.config import default_fixtures_dir
from flatsolv.cyclotomic import C, bordered
from flatsolv.errors import DimensionError, InfiniteOrder, NonCommuting, NonUnimodular
from flatsolv.intlinalg import FinAbGroup, IntMatrix, cokernel, direct_sum, rank
from flatsolv.solvgroups import (
    SigmaGroup,
    abelianization,
    betti1,
    betti1_formula,
    commutator_sublattice,
    generator_moves,
    holonomy,
    holonomy_elements,
    make_record,
    make_sigma,
    presentation_relation_matrix,
    reduce_generators,
    reduce_generators_with_moves,
    relation_lattice,
)

I = IntMatrix.identity


def fixture_sigmas():
    out = []
    for name in ("table1.json", "table2.json", "table3.json", "rejected13.json"):
        obj = load_json(default_fixtures_dir() / name)
        for row in obj["rows"]:
            out.append(SigmaGroup.from_json({"generators": row["generators"], "label": row["label"]}))
    return out


FIXTURES = fixture_sigmas()


def hom_count_brute(sigma, q):
    """|Hom(Sigma, Z/q)| by enumerating images of the translation generators."""
    count = 0
    for t in itertools.product(range(q), repeat=sigma.m):
        ok = all(
            all((sum(E[l, j] * t[l] for l in range(sigma.m)) - t[j]) % q == 0 for j in range(sigma.m))
            for E in sigma.generators
        )
        count += ok
    return q**sigma.k * count


def hom_count_from_group(g: FinAbGroup, q):
    from math import gcd

    n = q**g.free_rank
    for d in g.torsion:
        n *= gcd(d, q)
    return n


# -- construction ----------------------------------------------------------------------


def test_make_sigma_examples():
    make_sigma(1, 5, [I(5)])
    make_sigma(1, 5, [direct_sum(C(3), I(3))])
    make_sigma(2, 4, [direct_sum(I(2), -I(2)), -I(4)])


def test_make_sigma_errors():
    with pytest.raises(NonCommuting):
        make_sigma(2, 2, [C(4), IntMatrix([[0, 1], [1, 0]])])
    with pytest.raises(InfiniteOrder):
        make_sigma(1, 2, [IntMatrix([[1, 1], [0, 1]])])
    with pytest.raises(NonUnimodular):
        make_sigma(1, 2, [IntMatrix.diag([2, 1])])
    with pytest.raises(DimensionError):
        make_sigma(2, 2, [I(2)])
    with pytest.raises(DimensionError):
        make_sigma(1, 3, [I(2)])


def test_json_roundtrip():
    s = make_sigma(2, 4, [direct_sum(I(2), C(3)), direct_sum(C(3), I(2))], "x")
    assert SigmaGroup.from_json(json.loads(json.dumps(s.to_json()))) == s


# -- holonomy ---------------------------------------------------------------------------


def test_holonomy_examples():
    assert holonomy(make_sigma(1, 5, [I(5)])) == FinAbGroup(0, ())
    s = make_sigma(1, 5, [direct_sum(C(6), bordered(C(4), 1))])
    assert holonomy(s) == FinAbGroup(0, (12,))
    s = make_sigma(2, 4, [direct_sum(I(2), C(3)), direct_sum(C(3), I(2))])
    assert holonomy(s) == FinAbGroup(0, (3, 3))
    assert len(holonomy_elements(s)) == 9


def test_relation_lattice_examples():
    assert relation_lattice(make_sigma(1, 5, [I(5)])).basis == I(1)
    s = make_sigma(2, 4, [direct_sum(I(2), -I(2)), -I(4)])
    assert cokernel(relation_lattice(s).basis) == FinAbGroup(0, (2, 2))


def test_commutator_sublattice_examples():
    assert commutator_sublattice(make_sigma(1, 5, [I(5)])).rank == 0
    s = make_sigma(1, 5, [direct_sum(-I(4), I(1))])
    L = commutator_sublattice(s)
    assert L.basis == IntMatrix([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2], [0, 0, 0, 0]])
    s = make_sigma(2, 4, [direct_sum(I(2), -I(2)), -I(4)])
    assert cokernel(commutator_sublattice(s).basis) == FinAbGroup(0, (2, 2, 2, 2))


@given(st.integers(0, 2**31))
def test_holonomy_order_matches_elements(seed):
    s = random_sigma(random.Random(seed))
    assert holonomy(s).order == len(holonomy_elements(s))


# -- abelianization ------------------------------------------------------------------------


def test_abelianization_examples():
    s = make_sigma(1, 5, [direct_sum(C(3), I(3))])
    assert abelianization(s) == FinAbGroup(4, (3,)) and betti1(s) == 4
    s = make_sigma(1, 5, [direct_sum(C(4), bordered(C(4), 1))])
    assert abelianization(s) == FinAbGroup(2, (2,))
    s = make_sigma(2, 4, [direct_sum(I(2), C(3)), direct_sum(C(3), I(2))])
    assert abelianization(s) == FinAbGroup(2, (3, 3))


def test_abelianization_matches_presentation_on_fixtures():
    for s in FIXTURES:
        assert cokernel(presentation_relation_matrix(s)) == abelianization(s), s.label


@given(st.integers(0, 2**31))
def test_abelianization_matches_presentation_random(seed):
    s = random_sigma(random.Random(seed))
    assert cokernel(presentation_relation_matrix(s)) == abelianization(s)


@given(st.integers(0, 2**31), st.sampled_from([2, 3, 4, 6]))
def test_hom_count_brute_force(seed, q):
    s = random_sigma(random.Random(seed), m=random.Random(seed).randint(1, 4))
    assert hom_count_brute(s, q) == hom_count_from_group(abelianization(s), q)


def test_betti_formula_single_generator():
    for s in FIXTURES:
        if s.k == 1:
            assert betti1(s) == betti1_formula(s.generators[0]) == 1 + s.m - rank(s.generators[0] - I(s.m))


# -- invariance ---------------------------------------------------------------------------


def _random_move(rng, k):
    kind = rng.choice(["permute", "invert", "multiply"] if k > 1 else ["invert"])
    if kind == "permute":
        perm = list(range(k))
        rng.shuffle(perm)
        return ("permute", tuple(perm))
    if kind == "invert":
        return ("invert", rng.randrange(k))
    i, j = rng.sample(range(k), 2)
    return ("multiply", i, j, rng.choice([-2, -1, 1, 3]))


@given(st.integers(0, 2**31))
def test_moves_preserve_invariants(seed):
    rng = random.Random(seed)
    s = rng.choice([f for f in FIXTURES if f.k > 1] + [random_sigma(rng)])
    ab, hol = abelianization(s), holonomy(s)
    for _ in range(6):
        s = generator_moves(s, _random_move(rng, s.k))
        assert abelianization(s) == ab and holonomy(s) == hol


def test_moves_examples():
    A, B = direct_sum(I(2), C(3)), direct_sum(C(3), I(2))
    s = make_sigma(2, 4, [A, B])
    assert generator_moves(s, ("permute", (1, 0))).generators == (B, A)
    s1 = make_sigma(1, 2, [C(4)])
    t = generator_moves(s1, ("invert", 0))
    assert t.generators == (C(4).inverse(),) and abelianization(t) == abelianization(s1)
    with pytest.raises(IndexError):
        generator_moves(s, ("invert", 2))
    with pytest.raises(IndexError):
        generator_moves(s, ("multiply", 0, 0))


@given(st.integers(0, 2**31))
def test_conjugation_invariance(seed):
    rng = random.Random(seed)
    s = rng.choice(FIXTURES[:20] + [random_sigma(rng)])
    Q = random_unimodular(s.m, rng)
    t = s.conjugate(Q)
    assert holonomy(t) == holonomy(s) and abelianization(t) == abelianization(s)


# -- reduction -----------------------------------------------------------------------------


def test_reduce_generators_examples():
    A = C(12)
    s = make_sigma(2, 4, [A, A**4])
    red, extra = reduce_generators(s)
    assert extra == 1 and red.k == 1 and red.m == 5
    assert red.generators == (direct_sum(I(1), A),)
    s = make_sigma(2, 4, [direct_sum(I(2), -I(2)), -I(4)])
    assert reduce_generators(s) == (s, 0)
    B = direct_sum(C(3), -I(2))
    red, extra = reduce_generators(make_sigma(2, 4, [I(4), B]))
    assert extra == 1 and red.generators == (direct_sum(I(1), B),)


def test_reduce_generators_move_sequence():
    A = C(12)
    s = make_sigma(2, 4, [A, A**4])
    red = reduce_generators_with_moves(s)
    t = s
    for mv in red.moves:
        t = generator_moves(t, mv)
    assert t.generators[0] == A and t.generators[1] == I(4)


@given(st.integers(0, 2**31))
def test_reduce_preserves_invariants(seed):
    s = random_sigma(random.Random(seed))
    red, extra = reduce_generators(s)
    assert red.k <= s.k and red.k + red.m == s.k + s.m and extra == s.k - red.k
    assert holonomy(red) == holonomy(s)
    assert abelianization(red) == abelianization(s)


def test_records_have_even_betti_for_tables():
    for s in FIXTURES:
        if s.label.startswith("rejected"):
            continue
        rec = make_record(s)
        assert rec.betti1 % 2 == 0, s.label
