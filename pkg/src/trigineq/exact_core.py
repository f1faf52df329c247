"""Exact rational polynomials and Sturm root counting.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable and
stored as ascending coefficient tuples with no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


def rat(value) -> Fraction:
    """Parse ints, Fractions and decimal strings ("29.1" -> 291/10) exactly."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals; pass a string")
    return Fraction(value)


class Poly:
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, a):
        return poly_eval(self, a)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(t)) by Horner."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        return poly_divmod(self, _as_poly(other))

    def __floordiv__(self, other) -> "Poly":
        return poly_divmod(self, _as_poly(other))[0]

    def __mod__(self, other) -> "Poly":
        return poly_divmod(self, _as_poly(other))[1]


def _as_poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly([p])


def poly_eval(p: Poly, a) -> Fraction:
    """Exact Horner evaluation."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * a + c
    return acc


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by the zero polynomial")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        return Poly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    lead = q.lead
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q.coeffs):
                rem[k + j] -= c * b
    return Poly(quot), Poly(rem[:dq])


def sign_at(p: Poly, a) -> int:
    v = poly_eval(p, a)
    return (v > 0) - (v < 0)


# -- integer fast path --------------------------------------------------------

def primitive_ints(p: Poly) -> list[int]:
    """Positive rational multiple of p with coprime integer coefficients."""
    if p.is_zero():
        return []
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    return _primitive(ints)


def _primitive(ints: list[int]) -> list[int]:
    g = gcd(*ints)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _neg_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive positive multiple of -(a mod b)."""
    lc = b[-1]
    if lc < 0:
        b = [-c for c in b]
        lc = -lc
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        top = r[-1]
        r = [lc * c for c in r]
        for j, bc in enumerate(b):
            r[k + j] -= top * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    if not r:
        return []
    return _primitive([-c for c in r])


def _int_derivative(a: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(a)][1:]


def _int_prs(p: list[int]) -> list[list[int]]:
    seq = [p, _primitive(_int_derivative(p))] if len(p) > 1 else [p]
    while len(seq) > 1 and len(seq[-1]) > 1:
        r = _neg_prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(r)
    return seq


def _int_sign_at(a: list[int], x: Fraction) -> int:
    # homogenized Horner: acc = den^deg * a(num/den), den > 0
    num, den = x.numerator, x.denominator
    acc = 0
    scale = 1
    for c in reversed(a):
        acc = acc * num + c * scale
        scale *= den
    return (acc > 0) - (acc < 0)


def square_free_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial is undefined")
    seq = _int_prs(primitive_ints(p))
    g = seq[-1]
    if len(g) <= 1:
        return p
    return poly_divmod(p, Poly(g))[0]


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence of the square-free part of a polynomial.

    Elements are stored as primitive integer polynomials (positive rescalings
    of the classical chain, so every sign pattern is unchanged).
    """

    polys: tuple[Poly, ...]
    _ints: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    @property
    def base(self) -> Poly:
        return self.polys[0]

    def variations(self, a) -> int:
        """Number of sign changes V(a), zeros dropped."""
        return _count_changes(_int_sign_at(list(q), Fraction(a)) for q in self._ints)

    def variations_at_infinity(self, positive: bool = True) -> int:
        signs = []
        for q in self._ints:
            s = 1 if q[-1] > 0 else -1
            if not positive and (len(q) - 1) % 2:
                s = -s
            signs.append(s)
        return _count_changes(signs)


def _count_changes(signs) -> int:
    changes, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


def sturm_chain(p: Poly) -> SturmChain:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial is undefined")
    ints = primitive_ints(p)
    seq = _int_prs(ints)
    if len(seq[-1]) > 1:
        # repeated roots: rebuild on p / gcd(p, p')
        sqf = poly_divmod(Poly(ints), Poly(seq[-1]))[0]
        seq = _int_prs(primitive_ints(sqf))
    polys = tuple(Poly(q) for q in seq)
    return SturmChain(polys, tuple(tuple(q) for q in seq))


def count_roots(chain: SturmChain, a, b, include_a: bool = False, include_b: bool = False) -> int:
    """Distinct real roots of the chain's polynomial between a and b.

    ``b=None`` stands for +infinity and ``a=None`` for -infinity.  Endpoint
    membership is controlled by the two flags.
    """
    va = chain.variations_at_infinity(False) if a is None else chain.variations(a)
    vb = chain.variations_at_infinity(True) if b is None else chain.variations(b)
    if a is not None and b is not None and not Fraction(a) < Fraction(b):
        raise ValueError("count_roots needs a < b")
    n = va - vb  # roots in (a, b]
    base = chain._ints[0]
    if b is not None and not include_b and _int_sign_at(list(base), Fraction(b)) == 0:
        n -= 1
    if a is not None and include_a and _int_sign_at(list(base), Fraction(a)) == 0:
        n += 1
    return n


def poly_from_roots(roots: Sequence) -> Poly:
    out = Poly([1])
    for r in roots:
        out = out * Poly([-Fraction(r), 1])
    return out
