from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigineq.exact_core import (Poly, count_roots, poly_divmod, poly_eval, poly_from_roots, rat,
                                 sign_at, square_free_part, sturm_chain)
from trigineq.cheb_basis import to_full_angle
from trigineq.trig_sums import FamilyId, build

from oracles import random_int_polys, scan_root_count, to_poly

V = Poly([Fraction(11, 10), -8, 12, 16, -16])

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small, min_size=0, max_size=7).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_v_has_no_root_on_closed_interval():
    chain = sturm_chain(V)
    assert count_roots(chain, Fraction(-1, 2), 1, include_a=True, include_b=True) == 0


def test_v_at_one():
    assert poly_eval(V, 1) == Fraction(51, 10)
    assert sign_at(V, 1) == 1


def test_sign_at_rational_root_is_zero():
    p = poly_from_roots([Fraction(-1, 2), Fraction(3, 7), 2])
    for r in (Fraction(-1, 2), Fraction(3, 7), 2):
        assert sign_at(p, r) == 0


def test_r4_positive_at_zero():
    form = to_full_angle(build(FamilyId("P_DIFF", None, 4)))
    assert sign_at(form.sin_part, 0) == 1


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("1.1") == Fraction(11, 10)


def test_zero_polynomial_has_no_chain():
    with pytest.raises(ValueError):
        sturm_chain(Poly())


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(Poly([1, 2]), Poly())


def test_count_roots_needs_ordered_interval():
    with pytest.raises(ValueError):
        count_roots(sturm_chain(V), 1, 0)


def test_multiple_roots_counted_once():
    p = poly_from_roots([1, 1, 1, -2, -2, Fraction(1, 3)])
    chain = sturm_chain(p)
    assert count_roots(chain, None, None) == 3
    assert count_roots(chain, -2, 1) == 1
    assert count_roots(chain, -2, 1, include_a=True) == 2
    assert count_roots(chain, -2, 1, include_a=True, include_b=True) == 3


def test_endpoint_flags():
    p = poly_from_roots([0, 1])
    chain = sturm_chain(p)
    assert count_roots(chain, 0, 1) == 0
    assert count_roots(chain, 0, 1, include_b=True) == 1
    assert count_roots(chain, 0, 1, include_a=True, include_b=True) == 2


@given(nonzero_polys)
def test_chain_ends_in_nonzero_constant(p):
    chain = sturm_chain(p)
    assert chain.polys[-1].degree == 0


@given(polys, nonzero_polys)
def test_divmod_reconstructs(p, q):
    quot, rem = poly_divmod(p, q)
    assert q * quot + rem == p
    assert rem.degree < q.degree


@given(polys, polys, small)
def test_evaluation_is_a_ring_homomorphism(p, q, a):
    assert poly_eval(p * q, a) == poly_eval(p, a) * poly_eval(q, a)
    assert poly_eval(p + q, a) == poly_eval(p, a) + poly_eval(q, a)


@given(nonzero_polys)
@settings(max_examples=50)
def test_square_free_part_divides(p):
    sqf = square_free_part(p)
    assert (p % sqf).is_zero()
    assert (sqf.derivative().is_zero() or sturm_chain(sqf).base.degree == sqf.degree)


def test_sturm_agrees_with_float_scan_on_random_polynomials():
    compared = 0
    for coeffs in random_int_polys(200):
        expected = scan_root_count(coeffs)
        if expected is None:
            continue
        compared += 1
        assert count_roots(sturm_chain(to_poly(coeffs)), -10, 10) == expected, coeffs
    assert compared >= 180
