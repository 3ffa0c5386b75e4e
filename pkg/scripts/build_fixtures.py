"""Regenerate the JSON fixtures under src/flatsolv/fixtures from block notation.

Every representative matrix of the dimension 6 tables is written here the way
it is displayed in the source tables (direct sums, bordered companions and
block triangular forms), then expanded to explicit integer entries.

    python scripts/build_fixtures.py [--out DIR]
"""

import argparse
import json
from pathlib import Path

from flatsolv.cyclotomic import C, bordered
from flatsolv.intlinalg import IntMatrix, direct_sum

I = IntMatrix.identity
L = IntMatrix([[1, 0], [1, -1]])
C2p = IntMatrix([[-1, 1], [0, 1]])
C4m = IntMatrix([[0, -1, 1], [1, 0, 0], [0, 0, -1]])
C3, C4, C6 = C(3), C(4), C(6)
C3p, C4p, C6m = bordered(C3, 1), bordered(C4, 1), bordered(C6, -1)


def neg(k):
    return -I(k)


def E(i, j, rows, cols):
    """Matrix unit with a 1 at (i, j), 1-based."""
    M = [[0] * cols for _ in range(rows)]
    M[i - 1][j - 1] = 1
    return IntMatrix(M)


def e(*idx, n=4):
    v = [0] * n
    for i in idx:
        v[i - 1] += 1
    return IntMatrix([v])


def tri(A, X, B):
    """``[[A, X], [0, B]]``."""
    return IntMatrix.block([[A, X], [IntMatrix.zeros(B.rows, A.cols), B]])


def one_over(x, D):
    return tri(I(1), x, D)


def row(label, gens, holonomy, ab, phi=None):
    out = {"label": label, "generators": [g.tolist() for g in gens], "holonomy": holonomy, "abelianization": ab}
    if phi is not None:
        s, angles = phi
        out["phi"] = {"s": s, "angles": angles}
    return out


def table1():
    r = []
    r.append(row("I5", [I(5)], "0", "Z^6", (5, [])))
    pi = (3, ["1/2"])
    r.append(row("-I2 (+) I3", [direct_sum(neg(2), I(3))], "Z_2", "Z^4 + Z_2^2", pi))
    r.append(row("L (+) -I1 (+) I2", [direct_sum(L, neg(1), I(2))], "Z_2", "Z^4 + Z_2", pi))
    r.append(row("L (+) L (+) I1", [direct_sum(L, L, I(1))], "Z_2", "Z^4", pi))
    r.append(row("C3 (+) I3", [direct_sum(C3, I(3))], "Z_3", "Z^4 + Z_3", (3, ["1/3"])))
    r.append(row("C3+ (+) I2", [direct_sum(C3p, I(2))], "Z_3", "Z^4", (3, ["1/3"])))
    r.append(row("C4 (+) I3", [direct_sum(C4, I(3))], "Z_4", "Z^4 + Z_2", (3, ["1/4"])))
    r.append(row("C4+ (+) I2", [direct_sum(C4p, I(2))], "Z_4", "Z^4", (3, ["1/4"])))
    r.append(row("C6 (+) I3", [direct_sum(C6, I(3))], "Z_6", "Z^4", (3, ["1/6"])))
    r.append(row("C5 (+) I1", [direct_sum(C(5), I(1))], "Z_5", "Z^2 + Z_5", (1, ["1/5", "2/5"])))
    r.append(row("C5+", [bordered(C(5), 1)], "Z_5", "Z^2", (1, ["1/5", "2/5"])))
    r.append(row("C8 (+) I1", [direct_sum(C(8), I(1))], "Z_8", "Z^2 + Z_2", (1, ["1/8", "3/8"])))
    r.append(row("C8+", [bordered(C(8), 1)], "Z_8", "Z^2", (1, ["1/8", "3/8"])))
    r.append(row("C10 (+) I1", [direct_sum(C(10), I(1))], "Z_10", "Z^2", (1, ["1/10", "3/10"])))
    r.append(row("C12 (+) I1", [direct_sum(C(12), I(1))], "Z_12", "Z^2", (1, ["1/12", "5/12"])))
    return r


def table2():
    r = []
    pp = (1, ["1/2", "1/2"])
    r.append(row("I1 (+) -I4", [direct_sum(I(1), neg(4))], "Z_2", "Z^2 + Z_2^4", pp))
    r.append(row("L (+) -I3", [direct_sum(L, neg(3))], "Z_2", "Z^2 + Z_2^3", pp))

    p3 = (1, ["1/2", "1/3"])
    D1, D2 = direct_sum(neg(2), I(1)), direct_sum(C2p, neg(1))
    r.append(row("C3 (+) -I2 (+) I1", [direct_sum(C3, D1)], "Z_6", "Z^2 + Z_2 + Z_6", p3))
    r.append(row("[[C3, E13], [0, -I2 (+) I1]]", [tri(C3, E(1, 3, 2, 3), D1)], "Z_6", "Z^2 + Z_2^2", p3))
    r.append(row("C3 (+) C2+ (+) -I1", [direct_sum(C3, D2)], "Z_6", "Z^2 + Z_6", p3))
    r.append(row("[[C3, E11], [0, C2+ (+) -I1]]", [tri(C3, E(1, 1, 2, 3), D2)], "Z_6", "Z^2 + Z_2", p3))

    p4 = (1, ["1/2", "1/4"])
    D1, D2 = direct_sum(C4, neg(2)), direct_sum(C4m, neg(1))
    r.append(row("I1 (+) C4 (+) -I2", [direct_sum(I(1), D1)], "Z_4", "Z^2 + Z_2^3", p4))
    r.append(row("[[1, e1], [0, C4 (+) -I2]]", [one_over(e(1), D1)], "Z_4", "Z^2 + Z_2^2", p4))
    r.append(row("[[1, e3], [0, C4 (+) -I2]]", [one_over(e(3), D1)], "Z_4", "Z^2 + Z_2^2", p4))
    r.append(row("[[1, e1+e3], [0, C4 (+) -I2]]", [one_over(e(1, 3), D1)], "Z_4", "Z^2 + Z_2^2", p4))
    r.append(row("1 (+) C4- (+) -I1", [direct_sum(I(1), D2)], "Z_4", "Z^2 + Z_2 + Z_4", p4))
    r.append(row("[[1, e1], [0, C4- (+) -I1]]", [one_over(e(1), D2)], "Z_4", "Z^2 + Z_2", p4))
    r.append(row("[[1, e3], [0, C4- (+) -I1]]", [one_over(e(3), D2)], "Z_4", "Z^2 + Z_2^2", p4))
    r.append(row("[[1, e4], [0, C4- (+) -I1]]", [one_over(e(4), D2)], "Z_4", "Z^2 + Z_4", p4))

    p6 = (1, ["1/2", "1/6"])
    D1, D2 = direct_sum(C6, neg(2)), direct_sum(C6m, neg(1))
    r.append(row("I1 (+) C6 (+) -I2", [direct_sum(I(1), D1)], "Z_6", "Z^2 + Z_2^2", p6))
    r.append(row("[[1, e3], [0, C6 (+) -I2]]", [one_over(e(3), D1)], "Z_6", "Z^2 + Z_2", p6))
    r.append(row("I1 (+) C6- (+) -I1", [direct_sum(I(1), D2)], "Z_6", "Z^2 + Z_2^2", p6))
    r.append(row("[[1, e3], [0, C6- (+) -I1]]", [one_over(e(3), D2)], "Z_6", "Z^2 + Z_2", p6))

    r.append(row("C3 (+) C3 (+) I1", [direct_sum(C3, C3, I(1))], "Z_3", "Z^2 + Z_3^2", (1, ["1/3", "1/3"])))
    r.append(row("C3 (+) C3+", [direct_sum(C3, C3p)], "Z_3", "Z^2 + Z_3", (1, ["1/3", "1/3"])))
    r.append(row("C4 (+) C4 (+) I1", [direct_sum(C4, C4, I(1))], "Z_4", "Z^2 + Z_2^2", (1, ["1/4", "1/4"])))
    r.append(row("C4 (+) C4+", [direct_sum(C4, C4p)], "Z_4", "Z^2 + Z_2", (1, ["1/4", "1/4"])))
    r.append(row("C6 (+) C6 (+) I1", [direct_sum(C6, C6, I(1))], "Z_6", "Z^2", (1, ["1/6", "1/6"])))

    p34 = (1, ["1/3", "1/4"])
    D1, D2 = direct_sum(C3, I(1)), C3p
    r.append(row("C4 (+) C3 (+) I1", [direct_sum(C4, D1)], "Z_12", "Z^2 + Z_6", p34))
    r.append(row("[[C4, E13], [0, C3 (+) I1]]", [tri(C4, E(1, 3, 2, 3), D1)], "Z_12", "Z^2 + Z_3", p34))
    r.append(row("C4 (+) C3+", [direct_sum(C4, D2)], "Z_12", "Z^2 + Z_2", p34))
    r.append(row("[[C4, E12], [0, C3+]]", [tri(C4, E(1, 2, 2, 3), D2)], "Z_12", "Z^2", p34))

    p36 = (1, ["1/3", "1/6"])
    r.append(row("C6 (+) C3 (+) I1", [direct_sum(C6, D1)], "Z_6", "Z^2 + Z_3", p36))
    r.append(row("[[C6, E11], [0, C3 (+) I1]]", [tri(C6, E(1, 1, 2, 3), D1)], "Z_6", "Z^2 + Z_3", p36))
    r.append(row("C6 (+) C3+", [direct_sum(C6, D2)], "Z_6", "Z^2", p36))
    r.append(row("[[C6, E11], [0, C3+]]", [tri(C6, E(1, 1, 2, 3), D2)], "Z_6", "Z^2", p36))

    p46 = (1, ["1/4", "1/6"])
    r.append(row("C6 (+) C4 (+) I1", [direct_sum(C6, C4, I(1))], "Z_12", "Z^2 + Z_2", p46))
    r.append(row("C6 (+) C4+", [direct_sum(C6, C4p)], "Z_12", "Z^2", p46))
    return r


B1 = IntMatrix([[1, 1, 0, 0], [-3, -2, -2, 1], [0, 0, 1, 0], [0, 0, 0, 1]])
B2 = IntMatrix([[-1, 1, 0, 0], [-3, 2, -2, 1], [0, 0, -1, 0], [0, 0, 0, -1]])
B3 = IntMatrix([[1, 1, 0, 0], [-2, -1, -1, 1], [0, 0, 1, 0], [0, 0, 0, 1]])
B4 = IntMatrix([[1, -2, 0, -1], [1, -1, -1, 0], [0, 0, 1, -1], [0, 0, 2, -1]])


def table3():
    r = []
    m4 = neg(4)
    i2 = I(2)
    t22 = tri(i2, E(2, 2, 2, 2), neg(2))
    tI = tri(i2, i2, neg(2))
    r.append(row("<I2 (+) -I2, -I4>", [direct_sum(i2, neg(2)), m4], "Z_2 + Z_2", "Z^2 + Z_2^4"))
    r.append(row("<[[I2, E22], [0, -I2]], -I4>", [t22, m4], "Z_2 + Z_2", "Z^2 + Z_2^3"))
    r.append(row("<[[I2, I2], [0, -I2]], -I4>", [tI, m4], "Z_2 + Z_2", "Z^2 + Z_2^2"))
    r.append(row("<-I2 (+) C3, -I4>", [direct_sum(neg(2), C3), m4], "Z_2 + Z_6", "Z^2 + Z_2^2"))
    r.append(row("<I2 (+) C4, -I4>", [direct_sum(i2, C4), m4], "Z_2 + Z_4", "Z^2 + Z_2^3"))
    r.append(row("<[[I2, E11], [0, C4]], -I4>", [tri(i2, E(1, 1, 2, 2), C4), m4], "Z_2 + Z_4", "Z^2 + Z_2^2"))
    r.append(row("<C3 (+) C4, -I4>", [direct_sum(C3, C4), m4], "Z_4 + Z_6", "Z^2 + Z_2"))
    r.append(row("<C3 (+) -C3, -I4>", [direct_sum(C3, -C3), m4], "Z_2 + Z_6", "Z^2"))
    r.append(row("<[[C3, E11], [0, -C3]], -I4>", [tri(C3, E(1, 1, 2, 2), -C3), m4], "Z_2 + Z_6", "Z^2"))
    r.append(row("<I2 (+) C3, C3 (+) -I2>", [direct_sum(i2, C3), direct_sum(C3, neg(2))], "Z_3 + Z_6", "Z^2 + Z_3"))
    r.append(row("<I2 (+) -C3, C6 (+) I2>", [direct_sum(i2, -C3), direct_sum(C6, i2)], "Z_6 + Z_6", "Z^2"))
    r.append(row("<I2 (+) C3, C3 (+) I2>", [direct_sum(i2, C3), direct_sum(C3, i2)], "Z_3 + Z_3", "Z^2 + Z_3^2"))
    r.append(row("<[[I2, E11], [0, C3]], B1>", [tri(i2, E(1, 1, 2, 2), C3), B1], "Z_3 + Z_3", "Z^2 + Z_3"))
    r.append(row("<I2 (+) C3, C6 (+) -I2>", [direct_sum(i2, C3), direct_sum(C6, neg(2))], "Z_3 + Z_6", "Z^2"))
    r.append(row("<[[I2, E11], [0, C3]], B2>", [tri(i2, E(1, 1, 2, 2), C3), B2], "Z_3 + Z_6", "Z^2"))
    r.append(row("<I2 (+) C4, C4 (+) I2>", [direct_sum(i2, C4), direct_sum(C4, i2)], "Z_4 + Z_4", "Z^2 + Z_2^2"))
    r.append(row("<[[I2, E11], [0, C4]], B3>", [tri(i2, E(1, 1, 2, 2), C4), B3], "Z_4 + Z_4", "Z^2 + Z_2"))
    r.append(row("<I2 (+) -I2, C4 (+) C4>", [direct_sum(i2, neg(2)), direct_sum(C4, C4)], "Z_2 + Z_4", "Z^2 + Z_2^2"))
    r.append(row("<[[I2, E22], [0, -I2]], B4>", [t22, B4], "Z_2 + Z_4", "Z^2 + Z_2^2"))
    r.append(row("<[[I2, I2], [0, -I2]], C4 (+) C4>", [tI, direct_sum(C4, C4)], "Z_2 + Z_4", "Z^2 + Z_2"))
    return r


def M(rows):
    return IntMatrix(rows)


def rejected13():
    s = lambda a, b, c, d: M([[a, b], [c, d]])
    pairs = [
        (IntMatrix.diag([-1, 1, -1, 1]), IntMatrix.diag([1, -1, -1, 1])),
        (direct_sum(s(-1, 0, 0, 1), s(0, -1, -1, 0)), direct_sum(s(-1, 0, 0, 1), s(0, 1, 1, 0))),
        (
            M([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0]]),
            M([[1, 0, 0, 0], [0, -1, -1, 0], [0, 0, 1, 0], [0, 0, 1, -1]]),
        ),
        (direct_sum(s(1, 0, 0, -1), s(0, -1, -1, 0)), direct_sum(neg(2), I(2))),
        (
            M([[-1, 0, 0, 0], [0, 1, 1, 0], [0, 0, -1, 0], [0, 0, -1, 1]]),
            M([[-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0]]),
        ),
        (
            M([[0, 0, 1, -1], [0, 1, 0, 0], [0, 0, -1, 0], [-1, 0, -1, 0]]),
            M([[1, 1, 1, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, -1, -1, 1]]),
        ),
        (
            M([[1, 0, 0, 0], [0, 0, 1, -1], [0, 0, -1, 0], [0, -1, -1, 0]]),
            M([[1, 0, 0, 0], [0, -1, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0]]),
        ),
        (
            M([[-1, 0, 0, 0], [0, 1, 0, 0], [0, -1, 0, -1], [0, -1, -1, 0]]),
            M([[-1, 0, 0, 0], [0, 0, 1, -1], [0, 1, 0, 1], [0, 0, 0, 1]]),
        ),
        (
            M([[0, 0, -1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
            M([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]]),
        ),
        (
            M([[0, -1, 1, 1], [-1, 0, -1, -1], [0, 0, 0, -1], [0, 0, -1, 0]]),
            direct_sum(s(0, -1, -1, 0), s(0, 1, 1, 0)),
        ),
        (
            direct_sum(s(0, 1, 1, 0), s(0, -1, -1, 0)),
            M([[-1, 0, -1, -1], [0, -1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
        ),
        (
            M([[1, 0, 2, 0], [-1, 0, -1, -1], [0, 0, -1, 0], [-1, -1, -1, 0]]),
            M([[-1, 0, 0, -2], [1, 0, 1, 1], [1, 1, 0, 1], [0, 0, 0, 1]]),
        ),
        (
            direct_sum(s(0, -1, -1, 0), s(0, -1, -1, 0)),
            M([[0, 0, -1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
        ),
    ]
    return [{"label": f"rejected-{i + 1}", "generators": [A.tolist(), B.tolist()]} for i, (A, B) in enumerate(pairs)]


def family_c4m(q1=0, q2=0, q3=0, q4=0, q5=0, q6=0):
    return M([[q1, -q2, q3, q4], [q2, q1, q2 - q3, -q4], [0, 0, q1 + q2 - 2 * q3, -2 * q4], [0, 0, q5, q6]])


def family_c6m(q1=0, q2=0, q3=0, q4=0, q5=0, q6=0):
    return M([[q1, -q2, q2 - 2 * q3, -2 * q4], [q2, q1 + q2, q3, q4], [0, 0, q1 - q2 + 3 * q3, 3 * q4], [0, 0, q5, q6]])


def witnesses():
    def case(label, A, B, pairs):
        return {
            "label": label,
            "A": A.tolist(),
            "B": B.tolist(),
            "pairs": [{"P": P.tolist(), "Q": Q.tolist()} for P, Q in pairs],
        }

    one = I(1)
    out = [
        case("C3 | -I2 (+) I1", C3, direct_sum(neg(2), I(1)), [(neg(2), direct_sum(neg(2), I(1)))]),
        case("C3 | C2+ (+) -I1", C3, direct_sum(C2p, neg(1)), [(neg(2), I(3))]),
        case(
            "I1 | C4 (+) -I2",
            one,
            direct_sum(C4, neg(2)),
            [(one, direct_sum(neg(2), C4)), (one, direct_sum(I(2), M([[1, 1], [1, 0]])))],
        ),
        case(
            "I1 | C4- (+) -I1",
            one,
            direct_sum(C4m, neg(1)),
            [
                (one, family_c4m(q1=1, q3=1, q6=1)),
                (one, family_c4m(q1=1, q4=1, q6=1)),
                (one, family_c4m(q1=1, q5=1, q6=1)),
            ],
        ),
        case(
            "I1 | C6 (+) -I2",
            one,
            direct_sum(C6, neg(2)),
            [(one, direct_sum(C6, C4)), (one, direct_sum(C6, M([[1, 1], [0, 1]])))],
        ),
        case(
            "I1 | C6- (+) -I1",
            one,
            direct_sum(C6m, neg(1)),
            [(one, family_c6m(q1=2, q4=1, q5=1, q6=1)), (one, family_c6m(q1=1, q4=1, q6=1))],
        ),
        case("C4 | C3 (+) I1", C4, direct_sum(C3, I(1)), []),
        case("C4 | C3+", C4, C3p, []),
        case("C6 | C3 (+) I1", C6, direct_sum(C3, I(1)), [(I(2), direct_sum(C3, I(1))), (C6, I(3))]),
        case("C6 | C3+", C6, C3p, [(I(2), C3p), (C6, I(3))]),
    ]
    return out


def a36():
    v1 = [-x for x in (4, 1, 4, 2, 2, 4, 3, 4, 1, 2, 3, 3, 1, 1, 4, 4, 1, 2, 1, 2, 2, 3, 4, 4, 4, 4, 2, 1, 2, 4, 4, 3, 2, 3, 1, -15)]
    v2 = [149, 4, 133, 64, 42, 130, 76, 143, 24, 53, 86, 103, 35, 9, 113, 144, 20, 69, 22, 61, 54, 82, 119,
          120, 116, 132, 68, 26, 45, 118, 124, 100, 47, 110, 7, 120]
    # the right block has 34 columns: a zero row, I_34, and a row of -1
    right = [[0] * 34] + [[int(i == j) for j in range(34)] for i in range(34)] + [[-1] * 34]
    rows = [[v1[i], v2[i]] + right[i] for i in range(36)]
    return IntMatrix(rows)


def main():
    default = Path(__file__).resolve().parent.parent / "src" / "flatsolv" / "fixtures"
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=default)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    def dump(name, obj):
        (args.out / name).write_text(json.dumps(obj, indent=1) + "\n")
        print("wrote", args.out / name)

    dump("table1.json", {"table": 1, "k": 1, "m": 5, "rows": table1()})
    dump("table2.json", {"table": 2, "k": 1, "m": 5, "rows": table2()})
    dump("table3.json", {"table": 3, "k": 2, "m": 4, "declared_rows": 20, "reconstructed": [], "rows": table3()})
    dump("rejected13.json", {"k": 2, "m": 4, "declared_rows": 13, "rows": rejected13()})
    dump("witnesses_41.json", witnesses())
    A = a36()
    dump("a36.json", {"label": "A36", "order": 37, **A.to_json()})


if __name__ == "__main__":
    main()
