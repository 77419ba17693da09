"""Sparse multivariate polynomials over exact rationals.

A variable is a (kind, i, j) triple: kind "w" for universal Chern roots
(vertex i, slot j), "u" for the restriction targets (root index i, copy j),
and "a"/"b" for the ordered residue alphabets.  A monomial is a sorted tuple
of (variable, positive exponent) pairs; a polynomial maps monomials to
nonzero Fractions.  The zero polynomial has no terms.

Rendering is canonical (degree-major, then lexicographic on monomials) so
equal polynomials always print identically, e.g. ``w[1,1] - w[2,1]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple


class NotDivisible(ArithmeticError):
    """Division by a difference of variables left a remainder."""


class Var(NamedTuple):
    kind: str
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.kind}[{self.i},{self.j}]"


def w(i: int, j: int) -> Var:
    return Var("w", i, j)


def u(i: int, j: int) -> Var:
    return Var("u", i, j)


Mono = tuple[tuple[Var, int], ...]

_ZERO = Fraction(0)


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "MPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MPoly":
        c = Fraction(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def one(cls) -> "MPoly":
        return cls.const(1)

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "MPoly":
        if exp < 0:
            raise ValueError("negative exponent in a polynomial")
        if exp == 0:
            return cls.one()
        return cls({((v, exp),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.terms == other.terms

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) + c
        return MPoly(out)

    def __neg__(self) -> "MPoly":
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = Fraction(other)
            return MPoly({m: k * c for m, c in self.terms.items()}) if k else MPoly()
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, _ZERO) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or None if inhomogeneous or
        zero."""
        degs = {_mono_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(mono, _ZERO)

    def rename(self, mapping: dict[Var, Var]) -> "MPoly":
        """Substitute variables by variables (merging exponents on
        collisions)."""
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            d: dict[Var, int] = {}
            for v, e in m:
                nv = mapping.get(v, v)
                d[nv] = d.get(nv, 0) + e
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, _ZERO) + c
        return MPoly(out)

    def substitute(self, mapping: dict[Var, "MPoly"]) -> "MPoly":
        """Substitute variables by polynomials."""
        total = MPoly.zero()
        for m, c in self.terms.items():
            term = MPoly.const(c)
            for v, e in m:
                term = term * (mapping[v] ** e if v in mapping else MPoly.var(v, e))
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(), key=lambda item: (-_mono_degree(item[0]), item[0])
        )
        pieces = []
        for m, c in ordered:
            factors = [
                str(v) if e == 1 else f"{v}^{e}" for v, e in m
            ]
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append((c < 0, text))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, text in pieces[1:]:
            out += (" - " if neg else " + ") + text
        return out

    __repr__ = __str__


def linear_difference(a: Var, b: Var) -> MPoly:
    return MPoly.var(a) - MPoly.var(b)


def exact_div_linear(p: MPoly, a: Var, b: Var) -> MPoly:
    """Exact quotient of p by (a - b); raises NotDivisible on a remainder.

    Synthetic division in the variable a with coefficients in the remaining
    variables: the remainder is the substitution a -> b, so divisibility is
    exactly the vanishing of that substitution.
    """
    if a == b:
        raise ValueError("cannot divide by the zero difference")
    if p.is_zero():
        return MPoly.zero()
    # split as a polynomial in a
    raw: dict[int, dict[Mono, Fraction]] = {}
    for m, c in p.terms.items():
        e = 0
        rest = []
        for v, k in m:
            if v == a:
                e = k
            else:
                rest.append((v, k))
        d = raw.setdefault(e, {})
        key = tuple(rest)
        d[key] = d.get(key, _ZERO) + c
    by_exp = {e: MPoly(d) for e, d in raw.items()}
    top = max(by_exp)
    bpoly = MPoly.var(b)
    quotient_parts: dict[int, MPoly] = {}
    carry = MPoly.zero()
    for e in range(top, 0, -1):
        coeff = by_exp.get(e, MPoly.zero()) + carry
        quotient_parts[e - 1] = coeff
        carry = coeff * bpoly
    remainder = by_exp.get(0, MPoly.zero()) + carry
    if not remainder.is_zero():
        raise NotDivisible(f"{a} - {b} does not divide the polynomial")
    total = MPoly.zero()
    for e, part in quotient_parts.items():
        total = total + part * MPoly.var(a, e)
    return total


def symmetrize_check(p: MPoly, kind: str, sizes: Iterable[int]) -> bool:
    """True iff p is invariant under every adjacent swap of same-block
    variables (kind, i, j) <-> (kind, i, j+1), blocks sized by sizes."""
    for i, size in enumerate(sizes, start=1):
        for j in range(1, size):
            a, b = Var(kind, i, j), Var(kind, i, j + 1)
            if p.rename({a: b, b: a}) != p:
                return False
    return True
