from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padharm.cyclotomic import CyclotomicScalar, sqrt_rational_power


def e(r):
    return CyclotomicScalar.root_of_unity(Fraction(r))


def test_half_turn_is_minus_one():
    assert (e("1/2") + CyclotomicScalar.one()).is_zero()


def test_third_roots_sum_to_zero():
    total = e(0) + e("1/3") + e("2/3")
    assert total.is_zero()


def test_products_add_rotations():
    assert (e("1/3") * e("1/3") - e("2/3")).is_zero()
    assert (e("1/2") * e("1/2") - e(0)).is_zero()


def test_as_rational():
    assert CyclotomicScalar.from_rational(Fraction(5, 7)).as_rational() == \
        Fraction(5, 7)
    assert e("1/3").as_rational() is None
    # e(1/3) + e(2/3) = -1 is rational even though neither term is
    assert (e("1/3") + e("2/3")).as_rational() == -1


def test_conj_negates_rotation():
    assert (e("1/3").conj() - e("2/3")).is_zero()


def test_monomial_inverse():
    x = e("1/5") * CyclotomicScalar.from_rational(Fraction(3, 2))
    assert (x * x.inverse() - CyclotomicScalar.one()).is_zero()


def test_non_monomial_inverse_rejected():
    with pytest.raises(ArithmeticError):
        (e(0) + e("1/5")).inverse()


def test_sqrt_rational_power():
    # even powers of sqrt(q) are rational
    assert sqrt_rational_power(3, 2).as_rational() == 3
    assert sqrt_rational_power(3, -4).as_rational() == Fraction(1, 9)
    # odd powers square to the right rational
    s = sqrt_rational_power(3, 1)
    assert (s * s).as_rational() == 3


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cycs = st.lists(
    st.tuples(st.fractions(min_value=0, max_value=1, max_denominator=8),
              rationals),
    min_size=0, max_size=4,
).map(lambda ts: sum((CyclotomicScalar({r: c}) for r, c in ts),
                     CyclotomicScalar.zero()))


@settings(max_examples=60, deadline=None)
@given(cycs, cycs, cycs)
def test_ring_axioms(a, b, c):
    assert ((a + b) * c - (a * c + b * c)).is_zero()
    assert ((a * b) - (b * a)).is_zero()
    assert ((a + b) - (b + a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(cycs, cycs)
def test_conj_is_multiplicative(a, b):
    assert ((a * b).conj() - a.conj() * b.conj()).is_zero()
