"""Univariate polynomials over Z, plus a small parser for the CLI syntax."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from ..errors import DomainError
from .matrix import IntMatrix


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Polynomial with integer coefficients stored in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def from_roots_pm1(cls, minus: int = 0, plus: int = 0) -> IntPoly:
        """``(x - 1)**plus * (x + 1)**minus``."""
        return cls((-1, 1)) ** plus * cls((1, 1)) ** minus

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: IntPoly) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise DomainError("negative polynomial power")
        result, base = IntPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod_monic(self, d: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division with remainder by a monic divisor; stays inside Z[x]."""
        if not d.is_monic():
            raise DomainError("divisor must be monic")
        r = list(self.coeffs)
        dd = d.degree
        if len(r) - 1 < dd:
            return IntPoly(), IntPoly(r)
        q = [0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c:
                q[k - dd] = c
                for i, b in enumerate(d.coeffs):
                    r[k - dd + i] -= c * b
        return IntPoly(q), IntPoly(r[:dd])

    def exact_div(self, d: IntPoly) -> IntPoly:
        q, r = self.divmod_monic(d)
        if not r.is_zero():
            raise DomainError(f"{d} does not divide {self}")
        return q

    def divides(self, other: IntPoly) -> bool:
        return other.divmod_monic(self)[1].is_zero()

    def __call__(self, x):
        if isinstance(x, IntMatrix):
            return self.eval_matrix(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, A: IntMatrix) -> IntMatrix:
        n = A.rows
        acc = IntMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = acc @ A + IntMatrix.scalar(n, c)
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


def poly_gcd_q(p: IntPoly, q: IntPoly) -> IntPoly:
    """Greatest common divisor over Q, returned as a primitive integer polynomial
    with positive leading coefficient (the zero polynomial if both are zero)."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while b:
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    if not a:
        return IntPoly()
    from math import lcm

    den = 1
    for c in a:
        den = lcm(den, c.denominator)
    ints = IntPoly(int(c * den) for c in a)
    g = ints.content()
    ints = IntPoly(c // g for c in ints.coeffs)
    return -ints if ints.lead < 0 else ints


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\^)|(\+)|(-)|(\*)|(\()|(\)))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    out = []
    names = ("int", "x", "^", "+", "-", "*", "(", ")")
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        kind = names[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return out


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := power (('*' power) | <juxtaposed '(' group>)*
    # power  := atom ['^' int]
    # atom   := int | 'x' | '(' expr ')'

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            where = self.toks[self.i][2] if self.i < len(self.toks) else "end"
            raise PolyParseError(f"expected {kind!r} at {where}")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> IntPoly:
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyParseError(f"trailing input at {self.toks[self.i][2]}")
        return p

    def expr(self) -> IntPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take(self.peek())[0] == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> IntPoly:
        acc = self.power()
        while True:
            if self.peek() == "*":
                self.take("*")
                acc = acc * self.power()
            elif self.peek() == "(":
                acc = acc * self.power()
            elif self.peek() in ("x", "int"):
                raise PolyParseError(
                    f"implicit multiplication at {self.toks[self.i][2]}; write '*' or parenthesize"
                )
            else:
                return acc

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            e = int(self.take("int")[1])
            base = base**e
        return base

    def atom(self) -> IntPoly:
        k = self.peek()
        if k == "int":
            return IntPoly.const(int(self.take("int")[1]))
        if k == "x":
            self.take("x")
            return IntPoly.x()
        if k == "(":
            self.take("(")
            p = self.expr()
            self.take(")")
            return p
        where = self.toks[self.i][2] if self.i < len(self.toks) else "end"
        raise PolyParseError(f"unexpected token at {where}")


def parse_poly(text: str) -> IntPoly:
    """Parse ASCII polynomial syntax such as ``"(x-1)(x+1)^2"`` or ``"x^2+x+1"``."""
    return _Parser(text).parse()
