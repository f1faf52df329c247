"""Truncated power series for the absolutely monotonic family W_{m,omega}.

W(x) = m - 1 - m/(1-x) + (1 - omega x) / ((1-x)^(m+1) (1 - 2 omega x + x^2))

Its Taylor coefficients are binomially weighted cosine sums minus m, so
nonnegativity of the coefficients follows from the cosine inequality with
cos(theta) = omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath
import numpy as np

from .cheb_basis import cheb_T_values
from .trig_sums import binom


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        _same_order(self, other)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        _same_order(self, other)
        return PowerSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return cauchy_product(self, other)

    @classmethod
    def from_poly_coeffs(cls, coeffs, N: int) -> "PowerSeries":
        cs = list(coeffs)[: N + 1]
        return cls(tuple(cs + [0] * (N + 1 - len(cs))))


@dataclass(frozen=True)
class WParams:
    m: int
    omega: Fraction

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))
        if self.m < 1:
            raise ValueError("m must be ≥ 1")
        if abs(self.omega) > 1:
            raise ValueError("omega must lie in [-1, 1]")


def _same_order(a: PowerSeries, b: PowerSeries):
    if a.N != b.N:
        raise ValueError(f"truncation orders differ ({a.N} vs {b.N})")


def series_lambda(m: int, N: int) -> PowerSeries:
    """1/(1-x)^(m+1)."""
    if m < 0 or N < 0:
        raise ValueError("m and N must be nonnegative")
    return PowerSeries(tuple(binom(n + m, m) for n in range(N + 1)))


def series_phi(omega, N: int) -> PowerSeries:
    """sum cos(n theta) x^n with cos(theta) = omega."""
    omega = Fraction(omega)
    if abs(omega) > 1:
        raise ValueError("omega must lie in [-1, 1]")
    return PowerSeries(tuple(cheb_T_values(omega, N)))


def cauchy_product(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _same_order(a, b)
    # integer convolution over common denominators
    da = lcm(*(c.denominator for c in a.coeffs))
    db = lcm(*(c.denominator for c in b.coeffs))
    ia = [int(c * da) for c in a.coeffs]
    ib = [int(c * db) for c in b.coeffs]
    den = da * db
    out = []
    for n in range(a.N + 1):
        s = 0
        for k in range(n + 1):
            s += ia[k] * ib[n - k]
        out.append(Fraction(s, den))
    return PowerSeries(tuple(out))


def w_coefficients(p: WParams, N: int) -> PowerSeries:
    if N < 1:
        raise ValueError("N must be ≥ 1")
    prod = cauchy_product(series_lambda(p.m, N), series_phi(p.omega, N))
    return PowerSeries(tuple((p.m - 1 if n == 0 else 0) - p.m + c for n, c in enumerate(prod.coeffs)))


@dataclass(frozen=True)
class MonotonicityVerdict:
    passed: bool
    first_negative: int | None
    N: int
    min_positive_order: int | None
    zero_orders: tuple[int, ...]
    note: str = ""

    def to_dict(self) -> dict:
        return {"passed": self.passed, "first_negative": self.first_negative, "N": self.N,
                "zero_orders": list(self.zero_orders), "note": self.note}


def check_coefficients(series: PowerSeries) -> MonotonicityVerdict:
    neg = next((k for k, c in enumerate(series.coeffs) if c < 0), None)
    zeros = tuple(k for k, c in enumerate(series.coeffs) if c == 0 and k > 0)
    pos = next((k for k, c in enumerate(series.coeffs) if c > 0), None)
    return MonotonicityVerdict(neg is None, neg, series.N, pos, zeros,
                               f"orders > {series.N} not examined")


def check_absolute_monotonicity(p: WParams, N: int) -> MonotonicityVerdict:
    """Nonnegativity of the Taylor coefficients 0..N of W_{m,omega}."""
    if N < 8:
        raise ValueError("N must be ≥ 8")
    return check_coefficients(w_coefficients(p, N))


def reconstruction_residual(p: WParams, N: int) -> PowerSeries:
    """(W + m/(1-x) - (m-1)) * (1-x)^(m+1) (1 - 2 omega x + x^2) - (1 - omega x), truncated."""
    w = w_coefficients(p, N)
    base = w + PowerSeries(tuple(p.m - (p.m - 1 if n == 0 else 0) for n in range(N + 1)))
    den = [Fraction(0)] * (p.m + 4)
    for k in range(p.m + 2):
        den[k] = Fraction((-1) ** k * binom(p.m + 1, k))
    quad = [1, -2 * p.omega, 1]
    poly = [sum(den[i - j] * quad[j] for j in range(3) if 0 <= i - j < len(den)) for i in range(p.m + 4)]
    lhs = cauchy_product(base, PowerSeries.from_poly_coeffs(poly, N))
    return lhs - PowerSeries.from_poly_coeffs([1, -p.omega], N)


def w_closed_form(p: WParams, x):
    """High-precision value of W_{m,omega}(x) from the closed form."""
    m = p.m
    om = mpmath.mpf(p.omega.numerator) / p.omega.denominator
    x = mpmath.mpf(x)
    return m - 1 - m / (1 - x) + (1 - om * x) / ((1 - x) ** (m + 1) * (1 - 2 * om * x + x * x))


@dataclass(frozen=True)
class SuperadditivityResult:
    passed: bool
    worst_slack: str
    worst_point: tuple[str, str]
    samples: int

    def to_dict(self) -> dict:
        return {"passed": self.passed, "worst_slack": self.worst_slack,
                "worst_point": list(self.worst_point), "samples": self.samples}


def stratified_pairs(samples: int, seed: int = 0, gap: float = 1e-6) -> list[tuple[float, float]]:
    """Half uniform on {x, y >= 0, x + y < 1 - gap}, half with x + y pushed toward 1."""
    rng = np.random.default_rng(seed)
    half = samples // 2
    pairs = []
    for _ in range(half):
        while True:
            x, y = rng.uniform(0, 1, 2)
            if x + y < 1 - gap:
                break
        pairs.append((float(x), float(y)))
    # boundary layer: s = x + y in (1 - 10^-k, 1 - gap)
    for i in range(samples - half):
        depth = rng.uniform(1, 6)
        s = 1 - max(10 ** -depth, gap)
        share = rng.uniform(0, 1)
        pairs.append((float(s * share), float(s * (1 - share))))
    return pairs


def check_superadditive(p: WParams, samples: int = 10_000, seed: int = 0,
                        precision_bits: int = 192) -> SuperadditivityResult:
    """Sampled check of W(x) + W(y) <= W(x + y).

    Slack is reported relative to max(|W(x + y)|, 1) since W blows up as
    x + y -> 1.
    """
    if samples < 100:
        raise ValueError("samples must be ≥ 100")
    worst, worst_pt, ok = None, ("0", "0"), True
    with mpmath.workprec(precision_bits):
        tol = mpmath.mpf(10) ** -30
        for x, y in stratified_pairs(samples, seed):
            wx, wy, wxy = w_closed_form(p, x), w_closed_form(p, y), w_closed_form(p, mpmath.mpf(x) + y)
            slack = wxy - wx - wy
            rel = slack / max(abs(wxy), 1)
            if rel < -tol:
                ok = False
            if worst is None or rel < worst:
                worst, worst_pt = rel, (repr(x), repr(y))
        return SuperadditivityResult(ok, mpmath.nstr(worst, 20), worst_pt, samples)


def coefficient_rows(series: PowerSeries) -> list[tuple[int, str, str]]:
    """(order, numerator, denominator) rows for CSV export."""
    return [(k, str(c.numerator), str(c.denominator)) for k, c in enumerate(series.coeffs)]
