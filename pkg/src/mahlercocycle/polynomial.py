"""Exact integer polynomials and their height-one classification.

Coefficients are stored ascending by exponent as Python ints, so products
never overflow.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    pass


def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with integer coefficients, ``coeffs[m]`` is c_m."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for v in coeffs:
            if isinstance(v, bool) or int(v) != v:
                raise PolynomialError(f"coefficient {v!r} is not an integer")
            c.append(int(v))
        object.__setattr__(self, "coeffs", _trim(c))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise PolynomialError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        """Exponent of the lowest nonzero term."""
        if self.is_zero:
            raise PolynomialError("zero polynomial has no valuation")
        return next(m for m, c in enumerate(self.coeffs) if c)

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_mul(self, other)

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def substitute_negated(self) -> IntPolynomial:
        """p(-z)."""
        return IntPolynomial(c if m % 2 == 0 else -c for m, c in enumerate(self.coeffs))

    def strip_monomial(self) -> IntPolynomial:
        """Divide out z^v so the constant term is nonzero."""
        if self.is_zero:
            return self
        return IntPolynomial(self.coeffs[self.valuation:])

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(m * c for m, c in enumerate(self.coeffs) if m)

    def to_text(self) -> str:
        return format_poly(self)

    def __str__(self) -> str:
        return format_poly(self)


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial with complex (float) coefficients, ascending by exponent."""

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex] = ()):
        c = [complex(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise PolynomialError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


@dataclass(frozen=True)
class PolyClass:
    height: int
    is_borwein: bool
    is_littlewood: bool
    is_newman: bool
    is_reciprocal: bool


def classify(p: IntPolynomial) -> PolyClass:
    if p.is_zero:
        raise PolynomialError("zero polynomial has no classification")
    c = p.coeffs
    height = max(abs(v) for v in c)
    borwein = height <= 1 and c[0] != 0
    return PolyClass(
        height=height,
        is_borwein=borwein,
        is_littlewood=all(v in (-1, 1) for v in c),
        is_newman=all(v in (0, 1) for v in c) and c[0] == 1,
        is_reciprocal=c == c[::-1],
    )


def reciprocal_of(p: IntPolynomial) -> IntPolynomial:
    """z^deg p(1/z) with the resulting monomial factor removed."""
    if p.is_zero:
        raise PolynomialError("reciprocal of the zero polynomial is undefined")
    return IntPolynomial(p.coeffs[::-1]).strip_monomial()


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if p.is_zero or q.is_zero:
        return IntPolynomial()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPolynomial(out)


def cyclotomic_sum(length: int) -> IntPolynomial:
    """p_L(z) = 1 + z + ... + z^(L-1)."""
    return IntPolynomial([1] * length)


# --- exact division, gcd and square-free parts over Q --------------------

def _qtrim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        s = len(a) - len(b)
        q[s] = f
        for i, v in enumerate(b):
            a[s + i] -= f * v
        a.pop()
        _qtrim(a)
    return _qtrim(q), a


def _qgcd(a: list, b: list) -> list:
    a, b = _qtrim(list(a)), _qtrim(list(b))
    while b:
        a, b = b, _qdivmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [v / lead for v in a]


def _qderiv(a: list) -> list:
    return _qtrim([m * a[m] for m in range(1, len(a))])


def squarefree_factors(p: IntPolynomial) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: monic rational f_i with p = lead * prod f_i^i.

    Only factors of positive degree are returned.
    """
    if p.is_zero:
        raise PolynomialError("zero polynomial has no square-free decomposition")
    f = [Fraction(c) for c in p.coeffs]
    if len(f) == 1:
        return []
    a0 = _qgcd(f, _qderiv(f))
    b = _qdivmod(f, a0)[0]
    c = _qdivmod(_qderiv(f), a0)[0]
    d = _qtrim([x - y for x, y in _zip_pad(c, _qderiv(b))])
    out = []
    i = 1
    while len(b) > 1:
        a = _qgcd(b, d)
        if not a:
            a = [Fraction(1)]
        b = _qdivmod(b, a)[0]
        c = _qdivmod(d, a)[0]
        d = _qtrim([x - y for x, y in _zip_pad(c, _qderiv(b))])
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def int_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[z], primitive with positive leading term."""
    if p.is_zero:
        return _primitive(q)
    if q.is_zero:
        return _primitive(p)
    g = _qgcd([Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs])
    den = 1
    for v in g:
        den = den * v.denominator // _igcd(den, v.denominator)
    return _primitive(IntPolynomial(int(v * den) for v in g))


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _primitive(p: IntPolynomial) -> IntPolynomial:
    if p.is_zero:
        return p
    g = 0
    for c in p.coeffs:
        g = _igcd(g, c)
    sign = -1 if p.leading < 0 else 1
    return IntPolynomial(sign * c // g for c in p.coeffs)


def exact_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """p / q when q divides p in Z[z]; raises otherwise."""
    quo, rem = _qdivmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs])
    if rem or any(v.denominator != 1 for v in quo):
        raise PolynomialError(f"{q} does not divide {p} over the integers")
    return IntPolynomial(int(v) for v in quo)


# --- text format ----------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([a-z])\s*(?:\^\s*(\d+))?)?")


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``"1,1,0,-1"`` (ascending coefficients) or ``"1+z-z^3"``."""
    s = text.strip()
    if not s:
        raise PolynomialError("empty polynomial string")
    if re.fullmatch(r"\s*-?\d+\s*(,\s*-?\d+\s*)*", s):
        return IntPolynomial(int(v) for v in s.split(","))
    if re.search(r"\d\s+\d", s):
        raise PolynomialError(f"missing operator in {s!r}")
    return _parse_human(s)


def _parse_human(s: str) -> IntPolynomial:
    body = s.replace(" ", "")
    var = None
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise PolynomialError(f"cannot parse polynomial near {body[pos:]!r}")
        sign, num, v, exp = m.groups()
        if not num and not v:
            raise PolynomialError(f"cannot parse polynomial near {body[pos:]!r}")
        if pos > 0 and not sign:
            raise PolynomialError(f"missing operator near {body[pos:]!r}")
        if v:
            if var is None:
                var = v
            elif v != var:
                raise PolynomialError(f"mixed variables {var!r} and {v!r} in univariate polynomial")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if v else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    if not coeffs:
        raise PolynomialError("empty polynomial string")
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPolynomial(out)


def format_poly(p: IntPolynomial) -> str:
    """Comma-separated ascending coefficients; the zero polynomial is ``"0"``."""
    return ",".join(str(c) for c in p.coeffs) if p.coeffs else "0"


def as_poly(p: IntPolynomial | Sequence[int] | str) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, str):
        return parse_poly(p)
    return IntPolynomial(p)
