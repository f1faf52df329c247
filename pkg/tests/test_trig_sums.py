import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigineq.cheb_basis import from_full_angle, to_full_angle
from trigineq.exact_core import Poly
from trigineq.trig_sums import (NEEDS_M, TAGS, FamilyId, TrigSum, _MIN_N, binom, build, eval_exact,
                                eval_float, half_angle_form, validate)

t = Poly([0, 1])


def fam(tag, m=None, n=0, j=None):
    return build(FamilyId(tag, m, n, j))


def catalog(max_m=12, max_n=12):
    for tag in TAGS:
        ms = range(1, max_m + 1) if tag in NEEDS_M else [None]
        js = (1, 2) if tag == "TAU_SIGNED" else (None,)
        for m in ms:
            for n in range(_MIN_N[tag], max_n + 1):
                for j in js:
                    yield FamilyId(tag, m, n, j)


# -- binomials and validation ------------------------------------------------------

def test_binomials():
    assert binom(5, 2) == 10
    assert binom(9, 0) == 1
    assert binom(7, 3) == binom(6, 3) + binom(6, 2) == 35
    assert binom(3, 5) == 0


@pytest.mark.parametrize("f, message", [
    (FamilyId("A11", 0, 3), "m must be ≥ 1"),
    (FamilyId("A11", 1, 0), "n must be ≥ 1"),
    (FamilyId("TAU_SIGNED", 1, 3, 3), "TAU_SIGNED needs j in {1, 2}"),
    (FamilyId("NOPE", 1, 1), "unknown family tag"),
])
def test_invalid_parameters(f, message):
    with pytest.raises(ValueError, match=message):
        validate(f)


def test_label():
    assert FamilyId("A11", 1, 2).label() == "A11(m=1,n=2)"


# -- catalog examples ------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 7])
def test_first_cosine_sum_minus_m(m):
    assert fam("B12", m, 1) - m == TrigSum.make([(2, "cos", 1)], 1)


def test_p10_first_term():
    assert fam("P10", None, 1) == TrigSum.sin(2, 2)


@pytest.mark.parametrize("n", [3, 4, 9])
def test_p_diff_leading_coefficients(n):
    coeff = {j: a for j, _, a in fam("P_DIFF", None, n).terms}
    assert coeff[2] == n * (n + 1) - Fraction(4, 9)
    assert coeff[4] == 2 * (n - 1) * n - Fraction(4, 9)
    assert coeff[6] == 3 * (n - 2) * (n - 1) - Fraction(2, 9)


def test_s22_at_quarter_turn():
    with mpmath.workprec(128):
        assert abs(eval_float(fam("S22", None, 2), mpmath.pi / 2) - 104) < mpmath.mpf(10) ** -30


def test_sin_sum_vanishes_at_zero():
    assert eval_float(fam("A11", 3, 5), 0) == 0


def test_v15_single_term():
    assert fam("V15", 1, 0) == TrigSum.sin(1)
    assert abs(eval_float(fam("V15", 1, 0), mpmath.pi) - 1) < mpmath.mpf(10) ** -30


def test_exact_values():
    assert to_full_angle(fam("B12", 3, 1)).cos_part(Fraction(1, 2)) == Fraction(9, 2)
    # c = 1/2 is t = -1/2
    assert eval_exact(fam("P_DIFF", None, 3), Fraction(1, 2))[1] == 0
    assert eval_exact(TrigSum.make([]), Fraction(2, 5)) == (0, 0)


# -- structural invariants --------------------------------------------------------------

terms = st.lists(st.tuples(st.integers(-12, 12), st.sampled_from(["cos", "sin"]),
                           st.fractions(-4, 4, max_denominator=6)), max_size=8)


@given(terms, st.fractions(-4, 4, max_denominator=6))
def test_canonical_form(raw, constant):
    s = TrigSum.make(raw, constant)
    keys = [(j, kind) for j, kind, _ in s.terms]
    assert len(keys) == len(set(keys))
    assert all(a != 0 for _, _, a in s.terms)
    assert all(j > 0 for j, _, _ in s.terms)
    assert s.value_at_zero() == s.constant + sum(a for _, kind, a in s.terms if kind == "cos")
    v0 = s.value_at_zero()
    with mpmath.workprec(128):
        assert abs(eval_float(s, 0) - mpmath.mpf(v0.numerator) / v0.denominator) < mpmath.mpf(10) ** -30


@given(terms, terms)
def test_product_matches_pointwise(r1, r2):
    s1, s2 = TrigSum.make(r1, 1), TrigSum.make(r2, -2)
    with mpmath.workprec(128):
        x = mpmath.mpf("0.731")
        assert abs(eval_float(s1 * s2, x) - eval_float(s1, x) * eval_float(s2, x)) < mpmath.mpf(10) ** -25


# -- exact identities -----------------------------------------------------------------------

def test_u_recurrence():
    for m in range(1, 21):
        for n in range(1, 21):
            assert fam("U14", m + 1, n + 1) == fam("U14", m, n + 1) + fam("U14", m + 1, n)


def test_d_averaging():
    for n in range(1, 31):
        assert fam("D17", 1, 2 * n) == (fam("D17", 1, 2 * n - 1) + fam("D17", 1, 2 * n + 1)) * TrigSum.make([], Fraction(1, 2))


def test_constant_gap():
    for m in range(1, 21):
        for n in range(0, 21):
            gap = fam("B12", m, n) - m - fam("T31", m, n)
            assert gap == TrigSum.make([], Fraction(binom(n + m, m), 2) - m)


def test_v_decomposition():
    for m in range(1, 16):
        for n in range(1, 16):
            v = fam("V15", m, n)
            a, b = fam("A11", m, n), fam("B12", m, n)
            assert v == TrigSum.cos(1) * a + TrigSum.sin(1) * b
            # half-angle form: V = sin(u)(B(c) + c A'(c)) where A = sin(u) A'(c)
            form = half_angle_form(v)
            assert form.cos_part.is_zero()
            assert form.sin_part == half_angle_form(b).cos_part + t * half_angle_form(a).sin_part


def test_s_reformulation():
    for n in range(1, 41):
        r = to_full_angle(fam("P_DIFF", None, n)).sin_part
        s_hat = to_full_angle(fam("S22", None, n)).sin_part
        assert 18 * (1 - t) ** 2 * r == s_hat
        assert to_full_angle(fam("P_DIFF", None, n)).cos_part.is_zero()


def test_integrated_minorant_identity():
    F = Fraction(2, 27) * (1 - t) * (13 + 10 * t + 4 * t * t)
    antider = from_full_angle(F)
    assert antider.derivative() == TrigSum.sin(2) * (1 + 2 * TrigSum.cos(2)) * (1 + 2 * TrigSum.cos(2)) \
        * TrigSum.make([], Fraction(2, 9))
    for n in range(1, 21):
        assert fam("THETA_DIFF", None, n) == fam("THETA", None, n) - antider


def test_theta_is_antiderivative():
    for n in range(1, 21):
        theta = fam("THETA", None, n)
        assert theta.derivative() == fam("P10", None, n)
        assert theta.value_at_zero() == 0


def test_reflection_swaps_c_and_d():
    for m in range(1, 11):
        for n in range(0, 21):
            assert fam("C16", m, n).reflect() == fam("D17", m, n)


def test_alias_tags_match_m_one():
    for i, tag in enumerate(("U14", "V15", "C16", "D17"), start=1):
        assert fam(f"REMARK2_{i}", None, 9) == fam(tag, 1, 9)


def test_e_identity_numerically():
    rng = random.Random(3)
    with mpmath.workprec(192):
        for n in range(0, 21):
            d, e = fam("D17", 1, 2 * n + 1), fam("E5", None, n)
            for _ in range(64):
                x = mpmath.mpf(rng.random()) * mpmath.pi
                lhs = eval_float(d, x, 192) / 2 * 32 * mpmath.sin(x / 2) ** 3 * mpmath.cos(x / 2) ** 2
                assert abs(lhs - eval_float(e, x, 192)) < mpmath.mpf(10) ** -20


# -- evaluators agree ------------------------------------------------------------------------------

def test_float_and_exact_evaluators_agree():
    rng = random.Random(11)
    tol = mpmath.mpf(10) ** -25
    with mpmath.workprec(160):
        for f in catalog():
            s = build(f)
            for _ in range(4):
                c = Fraction(rng.randint(-999, 999), 1000)
                cv, sv = eval_exact(s, c)
                u = mpmath.acos(mpmath.mpf(c.numerator) / c.denominator)
                exact = mpmath.mpf(cv.numerator) / cv.denominator + mpmath.sin(u) * sv.numerator / sv.denominator
                approx = eval_float(s, 2 * u / (mpmath.mpf(s.scale.numerator) / s.scale.denominator), 160)
                assert abs(approx - exact) <= tol * max(1, abs(exact)), f


def test_precision_floor():
    with pytest.raises(ValueError):
        eval_float(TrigSum.sin(2), 1, precision_bits=32)


def test_p_diff_polynomial_degrees():
    # the minorant sin x (1 + 2t)^2 / sin x has degree 2, which dominates for n = 1, 2
    for n in range(1, 101):
        r = to_full_angle(fam("P_DIFF", None, n)).sin_part
        assert r.degree == (2 if n < 3 else n - 1)
