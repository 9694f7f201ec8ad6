"""Dagger test data: admissibility predicates, shell valuations, and the
smoothed-Whittaker compactness identity."""

from fractions import Fraction

from padharm.padic import FieldContext, QuadExtContext
from padharm.characters import AdditiveCharacter, eta_for_extension
from padharm.dagger import (
    compactness_W_closed,
    compactness_W_direct,
    is_admissible_column,
    is_admissible_matrix,
    is_admissible_scalar,
    make_dagger_column,
    make_dagger_matrix,
    make_dagger_scalar,
    shell_valuation,
)


def setup_ctx(delta=2, p=3, N=8):
    F = FieldContext(p, N)
    psi = AdditiveCharacter(F, 0)
    return QuadExtContext(F, delta), psi


def test_shell_valuation_monotone():
    ext, psi = setup_ctx()
    vals = [shell_valuation(ext, psi, m) for m in (1, 2, 3)]
    assert vals == sorted(vals, reverse=True)


def test_scalar_admissibility():
    ext, psi = setup_ctx()
    for m in (1, 2):
        theta = make_dagger_scalar(ext, psi, m)
        assert is_admissible_scalar(ext, psi, m, theta.packet)
    # shrinking the support below the shell breaks the predicate
    good = make_dagger_scalar(ext, psi, 1)
    wrong_m = make_dagger_scalar(ext, psi, 3)
    assert not is_admissible_scalar(ext, psi, 1, wrong_m.packet) or \
        is_admissible_scalar(ext, psi, 3, wrong_m.packet)


def test_column_and_matrix_admissibility():
    ext, psi = setup_ctx()
    for m in (1, 2):
        for k in (2, 3):
            col = make_dagger_column(ext, psi, m, k)
            assert is_admissible_column(col)
        matd = make_dagger_matrix(ext, psi, m, 2)
        assert is_admissible_matrix(matd)


def test_ramified_scalar_admissibility():
    ext, psi = setup_ctx(delta=3)
    theta = make_dagger_scalar(ext, psi, 1)
    assert is_admissible_scalar(ext, psi, 1, theta.packet)


def test_compactness_identity_grid():
    ext, psi = setup_ctx()
    eta = eta_for_extension(ext)
    theta = make_dagger_scalar(ext, psi, 1)
    for u in (1, 2):
        for v in (-1, 0, 1):
            y = Fraction(u) * Fraction(3) ** v
            direct = compactness_W_direct(ext, psi, eta, theta, y)
            closed = compactness_W_closed(ext, psi, eta, theta, y)
            assert (direct - closed).is_zero()


def test_compactness_vanishes_deep():
    ext, psi = setup_ctx()
    eta = eta_for_extension(ext)
    theta = make_dagger_scalar(ext, psi, 1)
    # far outside the dagger shell the smoothed Whittaker value is zero
    val = compactness_W_closed(ext, psi, eta, theta, Fraction(3) ** 6)
    assert val.is_zero()
