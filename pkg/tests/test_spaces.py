"""Schwartz functions as wave packets: evaluation, integration, Fourier
calculus, and the independent Riemann-sum transform oracle."""

from fractions import Fraction

from padharm.cyclotomic import CyclotomicScalar
from padharm.padic import FieldContext, QuadExtContext
from padharm.characters import AdditiveCharacter
from padharm.spaces import (
    WavePacket,
    e_space,
    f_space,
    matrix_space_f,
    riemann_fourier,
    s_space,
    tensor,
)


def setup_field(p=3, N=6):
    F = FieldContext(p, N)
    return F, AdditiveCharacter(F, 0)


def test_indicator_evaluate_and_integral():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (1,))  # 1_{3O}
    assert f.evaluate((Fraction(3),)).as_rational() == 1
    assert f.evaluate((Fraction(1),)).as_rational() == 0
    assert f.integral().as_rational() == Fraction(1, 3)
    unit = WavePacket.indicator(sp, (0,))
    assert unit.integral().as_rational() == 1


def test_fourier_unit_lattice_self_dual():
    F, psi = setup_field()
    sp = f_space(F, psi, 2)
    unit = WavePacket.indicator(sp, (0, 0))
    assert unit.fourier().equals(unit)


def test_fourier_against_riemann_oracle():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (1,), center=(Fraction(1, 3),),
                             freq=(Fraction(2, 3),))
    ft = f.fourier()
    for w in (Fraction(0), Fraction(1), Fraction(1, 3), Fraction(-2, 3)):
        direct = riemann_fourier(f, (w,))
        assert (ft.evaluate((w,)) - direct).as_rational() == 0


def test_double_fourier_is_reflection():
    F, psi = setup_field()
    sp = matrix_space_f(F, psi, 2)
    f = WavePacket.indicator(sp, (0, 1, -1, 0),
                             center=(1, Fraction(1, 3), 0, 2))
    assert f.fourier().fourier().equals(f.reflect())


def test_shift_phase_covariance():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (1,), freq=(Fraction(1, 3),))
    t = (Fraction(1),)
    # FT(f(. - t))(w) = psi(<t, w>) FT(f)(w)
    lhs = f.shift(t).fourier()
    for w in (Fraction(0), Fraction(1, 3), Fraction(2, 3)):
        expect = psi(w * t[0]) * f.fourier().evaluate((w,))
        assert (lhs.evaluate((w,)) - expect).as_rational() == 0


def test_convolution_indicator():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (0,))
    conv = f.convolve_add(f)
    # 1_O * 1_O = 1_O (the lattice is a group of volume 1)
    assert conv.equals(f)


def test_pointwise_product_of_nested_indicators():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    wide = WavePacket.indicator(sp, (-1,))
    narrow = WavePacket.indicator(sp, (1,))
    assert (wide * narrow).equals(narrow)


def test_refinement_preserves_values_and_integral():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (0,), freq=(Fraction(1, 3),))
    g = f.refined((1,))
    for x in (Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(5)):
        assert (f.evaluate((x,)) - g.evaluate((x,))).as_rational() == 0
    assert (f.integral() - g.integral()).as_rational() == 0


def test_tensor_integral_splits():
    F, psi = setup_field()
    sp = f_space(F, psi, 1)
    f = WavePacket.indicator(sp, (1,))
    g = WavePacket.indicator(sp, (0,), freq=(Fraction(1, 3),))
    prod = tensor(f, g)
    lhs = prod.integral()
    rhs = f.integral() * g.integral()
    assert (lhs - rhs).as_rational() == 0


def test_extension_space_double_transform():
    F, psi = setup_field()
    ext = QuadExtContext(F, 2)
    for sp in (e_space(ext, psi, 1), s_space(ext, psi, 1)):
        f = WavePacket.indicator(sp, 0, center=tuple(
            Fraction(i, 3) for i in range(sp.dim)))
        assert f.fourier().fourier().equals(f.reflect())
