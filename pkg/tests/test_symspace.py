"""Symmetric-space geometry: tau transport, Cayley maps, Hermitian forms,
transfer factors, and rank-1 orbit matching."""

from fractions import Fraction

import pytest

from padharm.padic import FieldContext, QuadExtContext
from padharm.characters import eta_for_extension, eta_prime_default
from padharm.errors import NotInDomain, NotRegularSemisimple
from padharm.matrices import FractionRing, QuadExtRing, mat, section_sigma
from padharm.symspace import (
    HermitianForm,
    cayley,
    cayley_inverse,
    in_s_lie,
    in_u_lie,
    match_side,
    match_witness_rank1,
    tau_scale,
    tau_unscale,
    transfer_factor_lie,
    xi_minus_s,
    xi_plus_s,
)


def make_ext(delta=2, p=3, N=6):
    return QuadExtContext(FieldContext(p, N), delta)


def test_tau_scale_round_trip():
    ext = make_ext()
    Xf = [[Fraction(1), Fraction(2, 3)], [Fraction(-1), Fraction(0)]]
    X = tau_scale(ext, Xf)
    assert in_s_lie(X)
    back = tau_unscale(ext, X)
    for i in range(2):
        for j in range(2):
            assert back[i][j].as_fraction() % 3**6 == Xf[i][j] % 3**6


def test_tau_unscale_rejects_non_s():
    ext = make_ext()
    one = ext.one()
    with pytest.raises(NotInDomain):
        tau_unscale(ext, mat([[one]]))


def test_cayley_round_trip():
    ext = make_ext()
    X = tau_scale(ext, [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(-1)]])
    g = cayley(ext, X)
    back = cayley_inverse(ext, g)
    for i in range(2):
        for j in range(2):
            d = back[i][j] - X[i][j]
            assert d.x.is_exact_zero or d.x.is_fuzzy_zero
            assert d.y.is_exact_zero or d.y.is_fuzzy_zero


def test_xi_elements_lie_in_s():
    ext = make_ext()
    assert in_s_lie(xi_plus_s(ext, 3))
    assert in_s_lie(xi_minus_s(ext, 3))


def test_hermitian_form_basics():
    ext = make_ext()
    form = HermitianForm(ext, (1, 3))
    assert form.disc() == Fraction(3)
    big = form.extend_by_line()
    assert big.n == 3 and big.diag[-1] == 1
    with pytest.raises(NotInDomain):
        HermitianForm(ext, (1, 0))


def test_transfer_factor_lie_rejects_singular():
    ext = make_ext()
    eta = eta_for_extension(ext)
    eta_prime = eta_prime_default(ext, eta)
    Z = tau_scale(ext, [[Fraction(0)] * 2 for _ in range(2)])
    with pytest.raises(NotRegularSemisimple):
        transfer_factor_lie(ext, Z, eta_prime, sign="minus")
    # the shifted nilpotent has nonvanishing minus-discriminant
    val = transfer_factor_lie(ext, xi_minus_s(ext, 2), eta_prime, sign="minus")
    assert (val * val.conj()).as_rational() == 1


def test_match_side_dichotomy():
    ext = make_ext()
    eta = eta_for_extension(ext)
    forms = [HermitianForm(ext, (1, 1)), HermitianForm(ext, (1, 3))]
    Rf = FractionRing()
    sides = set()
    for b1 in (Fraction(1), Fraction(3), Fraction(-1), Fraction(9)):
        Xf = section_sigma(Rf, (Fraction(1),), (Fraction(2), b1))
        side = match_side(ext, tau_scale(ext, Xf), eta, forms)
        assert side in (0, 1)
        sides.add(side)
    # the grid hits both norm classes
    assert sides == {0, 1}


def test_match_side_rejects_non_regular():
    ext = make_ext()
    eta = eta_for_extension(ext)
    forms = [HermitianForm(ext, (1, 1)), HermitianForm(ext, (1, 3))]
    Z = tau_scale(ext, [[Fraction(0)] * 2 for _ in range(2)])
    with pytest.raises(NotRegularSemisimple):
        match_side(ext, Z, eta, forms)


def test_match_witness_rank1():
    ext = make_ext()
    eta = eta_for_extension(ext)
    form = HermitianForm(ext, (1,))
    Rf = FractionRing()
    # b_1 = -1 puts the norm equation in the solvable class for theta = (1, 1)
    Xf = section_sigma(Rf, (Fraction(1),), (Fraction(2), Fraction(-1)))
    X = tau_scale(ext, Xf)
    Y = match_witness_rank1(ext, X, eta, form)
    theta = form.extend_by_line()
    assert in_u_lie(Y, theta)
    # diagonal entries carry the invariants a = tau*1 and b_0 = tau*2
    assert Y[0][0].y.as_fraction() % 3**6 == 1
    assert Y[1][1].y.as_fraction() % 3**6 == 2
    # off-diagonal product recovers b_1 = tau^2 * (-1) = -delta
    prod = Y[0][1] * Y[1][0]
    assert prod.y.is_exact_zero or prod.y.is_fuzzy_zero
    assert prod.x.as_fraction() % 3**6 == (-2) % 3**6
