"""Catalog of the trigonometric sums and their evaluators.

A :class:`TrigSum` is a finite combination of ``sin(j*y/2)`` and
``cos(j*y/2)`` plus a constant, where ``y = scale * x``.  Nearly every family
has ``scale == 1``; the window helpers f_n, g_n, h_n live in the variable
``t`` with ``y = t / (n + 2)``.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

import mpmath

from .cheb_basis import HalfAngleForm, to_algebraic
from .exact_core import poly_eval

DEFAULT_PRECISION_BITS = 128

TAGS = (
    "A11", "B12", "T31", "U14", "V15", "C16", "D17",
    "P10", "P_DIFF", "THETA", "THETA_DIFF",
    "S22", "L_N", "F24", "G25", "H26", "E5",
    "REMARK2_1", "REMARK2_2", "REMARK2_3", "REMARK2_4",
    "TAU_SIGNED",
)
NEEDS_M = {"A11", "B12", "T31", "U14", "V15", "C16", "D17", "TAU_SIGNED"}

# lower limit on n per tag
_MIN_N = {"A11": 1, "B12": 0, "T31": 0, "U14": 0, "V15": 0, "C16": 0, "D17": 0,
          "P10": 1, "P_DIFF": 1, "THETA": 1, "THETA_DIFF": 1, "S22": 1, "L_N": 1,
          "F24": 1, "G25": 1, "H26": 1, "E5": 0, "REMARK2_1": 0, "REMARK2_2": 0,
          "REMARK2_3": 0, "REMARK2_4": 0, "TAU_SIGNED": 0}


def default_precision() -> int:
    env = os.environ.get("TRIGINEQ_PRECISION_BITS")
    return int(env) if env else DEFAULT_PRECISION_BITS


def binom(N: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > N."""
    if k < 0 or N < 0 or k > N:
        return 0
    return comb(N, k)


@dataclass(frozen=True)
class TrigSum:
    terms: tuple[tuple[int, str, Fraction], ...] = ()
    constant: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)

    @classmethod
    def make(cls, terms: Iterable, constant=0, scale=1) -> "TrigSum":
        acc: dict[tuple[int, str], Fraction] = defaultdict(Fraction)
        const = Fraction(constant)
        for j, kind, a in terms:
            a = Fraction(a)
            if kind not in ("sin", "cos"):
                raise ValueError(f"unknown term kind {kind!r}")
            if j < 0:
                j = -j
                if kind == "sin":
                    a = -a
            if j == 0:
                if kind == "cos":
                    const += a
                continue
            acc[(j, kind)] += a
        clean = tuple(sorted((j, kind, a) for (j, kind), a in acc.items() if a != 0))
        return cls(clean, const, Fraction(scale))

    @classmethod
    def cos(cls, j: int, a=1) -> "TrigSum":
        return cls.make([(j, "cos", a)])

    @classmethod
    def sin(cls, j: int, a=1) -> "TrigSum":
        return cls.make([(j, "sin", a)])

    def _check_scale(self, other: "TrigSum"):
        if self.scale != other.scale:
            raise ValueError("cannot combine sums with different argument scales")

    def __add__(self, other) -> "TrigSum":
        if isinstance(other, (int, Fraction)):
            return TrigSum.make(self.terms, self.constant + other, self.scale)
        self._check_scale(other)
        return TrigSum.make(self.terms + other.terms, self.constant + other.constant, self.scale)

    __radd__ = __add__

    def __neg__(self) -> "TrigSum":
        return self * -1

    def __sub__(self, other) -> "TrigSum":
        return self + (-other)

    def __rsub__(self, other) -> "TrigSum":
        return (-self) + other

    def __mul__(self, other) -> "TrigSum":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return TrigSum.make([(j, k, a * other) for j, k, a in self.terms],
                                self.constant * other, self.scale)
        self._check_scale(other)
        left = list(self.terms) + ([(0, "cos", self.constant)] if self.constant else [])
        right = list(other.terms) + ([(0, "cos", other.constant)] if other.constant else [])
        out = []
        half = Fraction(1, 2)
        for j1, k1, a in left:
            for j2, k2, b in right:
                w = a * b * half
                if k1 == "cos" and k2 == "cos":
                    out += [(j1 - j2, "cos", w), (j1 + j2, "cos", w)]
                elif k1 == "sin" and k2 == "sin":
                    out += [(j1 - j2, "cos", w), (j1 + j2, "cos", -w)]
                elif k1 == "sin":
                    out += [(j1 + j2, "sin", w), (j1 - j2, "sin", w)]
                else:
                    out += [(j2 + j1, "sin", w), (j2 - j1, "sin", w)]
        return TrigSum.make(out, 0, self.scale)

    __rmul__ = __mul__

    @property
    def kinds(self) -> set[str]:
        return {k for _, k, _ in self.terms}

    def is_sin_only(self) -> bool:
        return self.constant == 0 and self.kinds <= {"sin"}

    def is_cos_only(self) -> bool:
        return self.kinds <= {"cos"}

    def value_at_zero(self) -> Fraction:
        return self.constant + sum((a for _, k, a in self.terms if k == "cos"), Fraction(0))

    def derivative(self) -> "TrigSum":
        """d/dx, accounting for the argument scale."""
        out = []
        for j, kind, a in self.terms:
            w = a * j * self.scale / 2
            out.append((j, "cos", w) if kind == "sin" else (j, "sin", -w))
        return TrigSum.make(out, 0, self.scale)

    def antiderivative(self) -> "TrigSum":
        """Integral from 0 to x; the constant term must vanish."""
        if self.constant:
            raise ValueError("antiderivative of a nonzero constant is not a trigonometric sum")
        out, const = [], Fraction(0)
        for j, kind, a in self.terms:
            w = 2 * a / (j * self.scale)
            if kind == "sin":
                out.append((j, "cos", -w))
                const += w
            else:
                out.append((j, "sin", w))
        return TrigSum.make(out, const, self.scale)

    def reflect(self) -> "TrigSum":
        """The sum evaluated at pi - x (scale 1 only)."""
        if self.scale != 1:
            raise ValueError("reflection needs scale 1")
        out = []
        for j, kind, a in self.terms:
            cj, sj = _quarter_turn(j)
            if kind == "cos":
                out += [(j, "cos", a * cj), (j, "sin", a * sj)]
            else:
                out += [(j, "cos", a * sj), (j, "sin", -a * cj)]
        return TrigSum.make(out, self.constant, 1)

    def scale_harmonics(self, k: int) -> "TrigSum":
        """The sum evaluated at k*x."""
        return TrigSum.make([(j * k, kind, a) for j, kind, a in self.terms], self.constant, self.scale)

    @property
    def max_harmonic(self) -> int:
        return max((j for j, _, _ in self.terms), default=0)


def _quarter_turn(j: int) -> tuple[int, int]:
    # (cos(j*pi/2), sin(j*pi/2))
    return [(1, 0), (0, 1), (-1, 0), (0, -1)][j % 4]


# -- family catalog -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FamilyId:
    tag: str
    m: int | None = None
    n: int = 0
    j: int | None = field(default=None)

    def label(self) -> str:
        parts = [self.tag]
        if self.m is not None:
            parts.append(f"m={self.m}")
        parts.append(f"n={self.n}")
        if self.j is not None:
            parts.append(f"j={self.j}")
        return "(".join([parts[0], ",".join(parts[1:])]) + ")"


def validate(f: FamilyId) -> None:
    if f.tag not in TAGS:
        raise ValueError(f"unknown family tag {f.tag!r}")
    if f.tag in NEEDS_M:
        if f.m is None or f.m < 1:
            raise ValueError("m must be ≥ 1")
    if f.n < _MIN_N[f.tag]:
        raise ValueError(f"n must be ≥ {_MIN_N[f.tag]} for {f.tag}")
    if f.tag == "TAU_SIGNED" and f.j not in (1, 2):
        raise ValueError("TAU_SIGNED needs j in {1, 2}")


def tau(j: int, k: int) -> int:
    if j == 1:
        return k
    return k // 2


def _binom_sum(m: int, n: int, ks, harmonic, kind: str) -> TrigSum:
    return TrigSum.make([(harmonic(k), kind, binom(n - k + m, m)) for k in ks])


def _pn(n: int) -> TrigSum:
    return TrigSum.make([(2 * k, "sin", (n - k + 1) * (n - k + 2) * k) for k in range(1, n + 1)])


# (2/9) sin x (1 + 2 cos x)^2 = (4/9) sin x + (4/9) sin 2x + (2/9) sin 3x
P_MINORANT = TrigSum.make([(2, "sin", Fraction(4, 9)), (4, "sin", Fraction(4, 9)),
                           (6, "sin", Fraction(2, 9))])


def build(f: FamilyId) -> TrigSum:
    validate(f)
    tag, m, n = f.tag, f.m, f.n
    if tag == "A11":
        return _binom_sum(m, n, range(1, n + 1), lambda k: 2 * k, "sin")
    if tag == "B12":
        return _binom_sum(m, n, range(0, n + 1), lambda k: 2 * k, "cos")
    if tag == "T31":
        body = _binom_sum(m, n, range(1, n + 1), lambda k: 2 * k, "cos")
        return body + Fraction(binom(n + m, m), 2)
    if tag in ("U14", "V15", "C16", "D17"):
        ks = range(0, n + 1) if tag in ("U14", "V15") else range(0, n + 1, 2)
        kind = "cos" if tag in ("U14", "C16") else "sin"
        return _binom_sum(m, n, ks, lambda k: 2 * k + 1, kind)
    if tag.startswith("REMARK2_"):
        alias = {"1": "U14", "2": "V15", "3": "C16", "4": "D17"}[tag[-1]]
        return build(FamilyId(alias, 1, n))
    if tag == "TAU_SIGNED":
        return TrigSum.make([(2 * (2 * k + 1), "sin",
                              (-1) ** tau(f.j, k) * Fraction(binom(n - k + m, m), 2 * k + 1))
                             for k in range(n + 1)])
    if tag == "P10":
        return _pn(n)
    if tag == "P_DIFF":
        return _pn(n) - P_MINORANT
    if tag == "THETA":
        return _pn(n).antiderivative()
    if tag == "THETA_DIFF":
        return (_pn(n) - P_MINORANT).antiderivative()
    if tag == "S22":
        return TrigSum.make([(2, "sin", 18 * n + 24), (2 * (n + 1), "sin", -(9 * n + 27)),
                             (2 * (n + 2), "sin", 9 * n), (8, "sin", 2), (10, "sin", -1)])
    if tag == "L_N":
        return TrigSum.make([(2, "sin", 18 * n + 24), (1, "sin", -18 * n)], Fraction("-29.1"))
    scale = Fraction(1, n + 2)
    if tag == "F24":
        return TrigSum.make([(2, "sin", 24), (8, "sin", 2), (10, "sin", -1)], 0, scale)
    if tag == "G25":
        return TrigSum.make([(2, "sin", 18 * n), (2 * (n + 1), "sin", -27)], 0, scale)
    if tag == "H26":
        return TrigSum.make([(2 * (n + 2), "sin", 9 * n), (2 * (n + 1), "sin", -9 * n)], 0, scale)
    if tag == "E5":
        sx = TrigSum.sin(2)
        inner = TrigSum.sin(2, 2 * (n + 1)) - TrigSum.sin(4 * (n + 1))
        half = TrigSum.sin(1)
        big = TrigSum.sin(2 * (n + 1))
        return sx * inner + (half * half) * (big * big) * 4
    raise ValueError(f"unknown family tag {tag!r}")  # pragma: no cover


# -- evaluation ------------------------------------------------------------------

def eval_float(s: TrigSum, x, precision_bits: int | None = None):
    """High-precision value of s at x (x may be an mpf, int, Fraction or string)."""
    bits = precision_bits or default_precision()
    if bits < 64:
        raise ValueError("precision_bits must be ≥ 64")
    with mpmath.workprec(bits):
        xv = _to_mpf(x)
        u = xv * _to_mpf(s.scale) / 2
        parts = [_to_mpf(s.constant)]
        for j, kind, a in s.terms:
            f = mpmath.cos if kind == "cos" else mpmath.sin
            parts.append(_to_mpf(a) * f(j * u))
        return +mpmath.fsum(parts)


def _to_mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def eval_exact(s: TrigSum, c) -> tuple[Fraction, Fraction]:
    """(cos_value, sin_u_coeff) with value = cos_value + sin(u) * sin_u_coeff, c = cos(u)."""
    form = to_algebraic(s)
    return poly_eval(form.cos_part, c), poly_eval(form.sin_part, c)


def half_angle_form(s: TrigSum) -> HalfAngleForm:
    return to_algebraic(s)
