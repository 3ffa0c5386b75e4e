import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flatsolv.intlinalg import IntMatrix

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def int_matrices(draw, min_dim=1, max_dim=5, lo=-5, hi=5, square=False):
    r = draw(st.integers(min_dim, max_dim))
    c = r if square else draw(st.integers(min_dim, max_dim))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix(rows, cols=c)


def random_unimodular(n, rng, steps=None):
    """Product of random elementary integer row operations and sign flips."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        kind = rng.random()
        if kind < 0.7 and n > 1:
            c = rng.choice([-2, -1, 1, 2])
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        elif kind < 0.85 and n > 1:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-a for a in M[i]]
    return IntMatrix(M)


@st.composite
def unimodular(draw, n):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_unimodular(n, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_sigma(rng, k=None, m=None):
    """Commuting finite-order generators: each is a direct sum of powers of fixed
    finite-order blocks, conjugated by one random unimodular matrix."""
    from flatsolv.cyclotomic import C
    from flatsolv.intlinalg import direct_sum
    from flatsolv.similarity import L_BLOCK
    from flatsolv.solvgroups import make_sigma

    k = k or rng.randint(1, 3)
    m = m or rng.randint(1, 5)
    pool = [C(3), C(4), C(6), L_BLOCK, IntMatrix([[-1]]), IntMatrix([[1]])]
    blocks = []
    size = 0
    while size < m:
        b = rng.choice([p for p in pool if p.rows <= m - size])
        blocks.append(b)
        size += b.rows
    gens = [direct_sum(*[b ** rng.randint(0, 5) for b in blocks]) for _ in range(k)]
    U = random_unimodular(m, rng)
    Ui = U.inverse()
    return make_sigma(k, m, [Ui @ E @ U for E in gens])


@pytest.fixture(scope="session")
def tables():
    """Both dimension 6 tables with full diagnostics, computed once per session."""
    from flatsolv.classify import classify_dim6
    from flatsolv.config import ClassifyConfig

    aa, sp = classify_dim6(ClassifyConfig(family="all"))
    return {"almost-abelian": aa, "splittable": sp}
