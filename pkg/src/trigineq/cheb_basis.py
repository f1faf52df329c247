"""Chebyshev tables and the trigonometric-to-algebraic conversion.

Every sum is held in half-angle harmonics ``j * x/2``.  With ``u = x/2`` and
``c = cos(u)``::

    cos(j u) = T_j(c)            sin(j u) = sin(u) * U_{j-1}(c)

so a sum becomes ``P(c) + sin(u) Q(c)``.  When every harmonic is even the
same sum can be written in ``t = cos(x)`` with ``sin(x)`` as the odd factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

from .exact_core import Poly

if TYPE_CHECKING:
    from .trig_sums import TrigSum

_T = Poly([0, 2])


@dataclass(frozen=True)
class ChebTable:
    T: tuple[Poly, ...]
    U: tuple[Poly, ...]

    @property
    def K(self) -> int:
        return len(self.T) - 1

    @classmethod
    def build(cls, K: int) -> "ChebTable":
        T = [Poly([1]), Poly([0, 1])]
        U = [Poly([1]), Poly([0, 2])]
        for _ in range(2, K + 1):
            T.append(_T * T[-1] - T[-2])
            U.append(_T * U[-1] - U[-2])
        return cls(tuple(T[: K + 1]), tuple(U[: K + 1]))


@lru_cache(maxsize=None)
def _table(capacity: int) -> ChebTable:
    return ChebTable.build(capacity)


def table_for(k: int) -> ChebTable:
    cap = 64
    while cap < k:
        cap *= 2
    return _table(cap)


def cheb_T(k: int) -> Poly:
    """T_k, with T_k(cos a) = cos(k a)."""
    if k < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    return table_for(k).T[k]


def cheb_U(k: int) -> Poly:
    """U_k, with U_k(cos a) sin(a) = sin((k+1) a)."""
    if k < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    return table_for(k).U[k]


def cheb_T_values(a, K: int) -> list[Fraction]:
    """T_0(a), ..., T_K(a) by the three-term recurrence."""
    a = Fraction(a)
    vals = [Fraction(1), a][: K + 1]
    while len(vals) <= K:
        vals.append(2 * a * vals[-1] - vals[-2])
    return vals


@dataclass(frozen=True)
class HalfAngleForm:
    """value = cos_part(c) + sin(u) * sin_part(c), c = cos(u), u = x/2."""

    cos_part: Poly
    sin_part: Poly

    def __add__(self, other: "HalfAngleForm") -> "HalfAngleForm":
        return HalfAngleForm(self.cos_part + other.cos_part, self.sin_part + other.sin_part)

    def scale(self, a) -> "HalfAngleForm":
        return HalfAngleForm(self.cos_part * Fraction(a), self.sin_part * Fraction(a))


@dataclass(frozen=True)
class FullAngleForm:
    """value = cos_part(t) + sin(x) * sin_part(t), t = cos(x)."""

    cos_part: Poly
    sin_part: Poly


def _combine(pairs, basis) -> Poly:
    # sum of coeff * basis(index) with a dense accumulator
    width = max((idx for _, idx in pairs), default=-1) + 2
    acc = [Fraction(0)] * width
    for coeff, idx in pairs:
        for i, b in enumerate(basis(idx).coeffs):
            acc[i] += coeff * b
    return Poly(acc)


def to_algebraic(s: "TrigSum") -> HalfAngleForm:
    cos_terms = [(a, j) for j, kind, a in s.terms if kind == "cos"]
    sin_terms = [(a, j - 1) for j, kind, a in s.terms if kind == "sin"]
    cos_part = _combine(cos_terms, cheb_T) + s.constant
    return HalfAngleForm(cos_part, _combine(sin_terms, cheb_U))


def has_full_angle_form(s: "TrigSum") -> bool:
    return all(j % 2 == 0 for j, _, _ in s.terms)


def to_full_angle(s: "TrigSum") -> FullAngleForm:
    """Conversion in t = cos(x); needs every harmonic to be a whole multiple of x."""
    if not has_full_angle_form(s):
        raise ValueError("sum has half-integer harmonics; use to_algebraic")
    cos_terms = [(a, j // 2) for j, kind, a in s.terms if kind == "cos"]
    sin_terms = [(a, j // 2 - 1) for j, kind, a in s.terms if kind == "sin"]
    cos_part = _combine(cos_terms, cheb_T) + s.constant
    return FullAngleForm(cos_part, _combine(sin_terms, cheb_U))


def _expand(p: Poly, basis) -> dict[int, Fraction]:
    """Coefficients of p in the basis basis(0), basis(1), ... (peel leading terms)."""
    out: dict[int, Fraction] = {}
    rest = p
    while not rest.is_zero():
        d = rest.degree
        b = basis(d)
        c = rest.lead / b.lead
        out[d] = c
        rest = rest - b * c
    return out


def from_full_angle(cos_part: Poly, sin_part: Poly = Poly()) -> "TrigSum":
    """Inverse of :func:`to_full_angle`: cos_part(t) + sin(x) sin_part(t) as a TrigSum."""
    from .trig_sums import TrigSum

    terms = []
    constant = Fraction(0)
    for k, c in _expand(cos_part, cheb_T).items():
        if k == 0:
            constant += c
        else:
            terms.append((2 * k, "cos", c))
    for k, c in _expand(sin_part, cheb_U).items():
        terms.append((2 * (k + 1), "sin", c))
    return TrigSum.make(terms, constant)


# -- exact angles --------------------------------------------------------------
# Angles are Fractions q meaning q*pi.

_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
    Fraction(4, 3): Fraction(-1, 2),
    Fraction(3, 2): Fraction(0),
    Fraction(5, 3): Fraction(1, 2),
}


def rational_cos(q: Fraction) -> Fraction:
    """cos(q*pi) when it is rational, else ValueError."""
    r = Fraction(q) % 2
    if r not in _RATIONAL_COS:
        raise ValueError(f"cos({q}*pi) is irrational; use the grid path")
    return _RATIONAL_COS[r]


def x_interval_to_c(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Image of x in (a*pi, b*pi) under c = cos(x/2), increasing order."""
    a, b = Fraction(a), Fraction(b)
    if not 0 <= a < b <= 2:
        raise ValueError("half-angle map needs 0 <= a < b <= 2pi")
    return rational_cos(b / 2), rational_cos(a / 2)


def x_interval_to_t(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Image of x in (a*pi, b*pi) under t = cos(x), increasing order."""
    a, b = Fraction(a), Fraction(b)
    if not 0 <= a < b <= 1:
        raise ValueError("full-angle map needs 0 <= a < b <= pi")
    return rational_cos(b), rational_cos(a)
