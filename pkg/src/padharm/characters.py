"""Additive and tame multiplicative characters with exact cyclotomic values.

The additive character psi has conductor exponent d (trivial on p^-d O,
nontrivial one step further out); its extension to E is psi_E(z) =
psi(tr(z)/2), which restricts to psi on F.  Multiplicative characters
are tame: determined by a value on the uniformizer and a character of
the residue field, evaluated through a discrete-log table.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CyclotomicScalar, legendre
from .errors import (
    InsufficientPrecision,
    NotInDomain,
    UnsupportedConductor,
)
from .padic import FieldContext, PAdicScalar, QuadExtContext, QuadExtScalar, val_p


def frac_part_p(x, p):
    """The p-power fractional part: r in [0,1) with p-power denominator
    and x - r integral at p."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    k = -val_p(x, p)
    if k <= 0:
        return Fraction(0)
    pk = p ** k
    num = x.numerator
    den = x.denominator
    dprime = den // (p ** val_p(den, p)) if den % p == 0 else den
    # x = num/(p^k * dprime); representative a/p^k with a = num * dprime^-1
    a = num * pow(dprime, -1, pk) % pk
    return Fraction(a, pk)


class AdditiveCharacter:
    """psi(x) = e(frac_p(p^d x)): conductor exponent d."""

    def __init__(self, field, conductor_exponent=0):
        self.F = field
        self.d = int(conductor_exponent)

    def __eq__(self, other):
        return (
            isinstance(other, AdditiveCharacter)
            and self.F == other.F
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.F, self.d))

    def phase(self, x):
        """The argument r in Q/Z with psi(x) = e(r), for rational x."""
        return frac_part_p(Fraction(self.F.p) ** self.d * Fraction(x), self.F.p)

    def __call__(self, x):
        if isinstance(x, PAdicScalar):
            ap = x.abs_prec()
            if ap is not None and ap < -self.d:
                raise InsufficientPrecision(
                    "additive character needs the value mod p^%d" % (-self.d)
                )
            if x.is_exact_zero or x.is_fuzzy_zero:
                return CyclotomicScalar.one()
            x = x.as_fraction()
        return CyclotomicScalar.root_of_unity(self.phase(x))


class AdditiveCharacterE:
    """psi_E(z) = psi(tr(z)/2); restricts to psi on F."""

    def __init__(self, psi):
        self.psi = psi

    def __call__(self, z):
        if isinstance(z, QuadExtScalar):
            return self.psi(z.x)
        # rational pair (x, y) meaning x + tau*y
        x, _ = z
        return self.psi(x)

    def conj_value(self, z):
        return self(z).conj()


@lru_cache(maxsize=None)
def _dlog_table_F(p):
    """Discrete logs in F_p^* for a fixed generator; returns (g, table)."""
    for g in range(2, p):
        seen = {}
        x = 1
        for k in range(p - 1):
            seen[x] = k
            x = x * g % p
        if len(seen) == p - 1:
            return g, seen
    raise ArithmeticError("no generator found")


@lru_cache(maxsize=None)
def _dlog_table_Fp2(p, d0):
    """Discrete logs in F_{p^2}^* = F_p[t]/(t^2 - d0); returns (g, table)
    with elements keyed as pairs (x, y)."""
    order = p * p - 1

    def mul(a, b):
        return ((a[0] * b[0] + d0 * a[1] * b[1]) % p,
                (a[0] * b[1] + a[1] * b[0]) % p)

    for gx in range(p):
        for gy in range(p):
            g = (gx, gy)
            if g == (0, 0):
                continue
            seen = {}
            x = (1, 0)
            ok = True
            for k in range(order):
                if x in seen:
                    ok = False
                    break
                seen[x] = k
                x = mul(x, g)
            if ok and len(seen) == order:
                return g, seen
    raise ArithmeticError("no generator found")


class MultiplicativeCharacter:
    """Tame character of F^*: chi(p^v u) = e(v * r_pi) * e(k * dlog(u0)/(p-1))."""

    def __init__(self, field, value_on_uniformizer, residue_exponent):
        self.F = field
        self.r_pi = Fraction(value_on_uniformizer) % 1
        self.k = int(residue_exponent) % (field.p - 1)

    @property
    def is_unramified(self):
        return self.k == 0

    def conductor_exponent(self):
        return 0 if self.k == 0 else 1

    def is_quadratic(self):
        two = self ** 2
        return two.r_pi == 0 and two.k == 0

    def __pow__(self, n):
        return MultiplicativeCharacter(self.F, self.r_pi * n, self.k * n)

    def phase(self, x):
        p = self.F.p
        if isinstance(x, PAdicScalar):
            v = x.valuation()
            u0 = x.residue()
        else:
            x = Fraction(x)
            if x == 0:
                raise NotInDomain("multiplicative character at 0")
            v = val_p(x, p)
            u = x / Fraction(p) ** v
            u0 = u.numerator * pow(u.denominator, -1, p) % p
        r = (self.r_pi * v) % 1
        if self.k:
            _, table = _dlog_table_F(p)
            r = (r + Fraction(self.k * table[u0], p - 1)) % 1
        return r

    def __call__(self, x):
        return CyclotomicScalar.root_of_unity(self.phase(x))

    def sign(self, x):
        """Value as an integer +-1 (the character must be quadratic there)."""
        r = self.phase(x)
        if r == 0:
            return 1
        if r == Fraction(1, 2):
            return -1
        raise NotInDomain("character value is not a sign")


def eta_unramified(field):
    return MultiplicativeCharacter(field, Fraction(1, 2), 0)


def eta_for_extension(ext):
    """The quadratic character of F^* with kernel the norms of E^*."""
    F = ext.F
    if ext.is_inert:
        return eta_unramified(F)
    p = F.p
    # ramified: eta on units is the residue Legendre character; eta(p) is
    # pinned by eta(-delta) = eta(Norm(tau)) = 1.
    du = ext.delta.unit() % p
    sign = legendre((-du) % p, p)
    r_pi = Fraction(0) if sign == 1 else Fraction(1, 2)
    return MultiplicativeCharacter(F, r_pi, (p - 1) // 2)


class ExtCharacter:
    """Tame character of E^*: value on a uniformizer of E plus a character
    of the residue field k_E (given by an exponent against a fixed
    generator)."""

    def __init__(self, ext, value_on_uniformizer, residue_exponent):
        self.ext = ext
        self.r_pi = Fraction(value_on_uniformizer) % 1
        order = (ext.F.p ** 2 - 1) if ext.is_inert else (ext.F.p - 1)
        self.k = int(residue_exponent) % order
        self._order = order

    def _unit_residue_log(self, z):
        p = self.ext.F.p
        if self.ext.is_inert:
            d0 = self.ext.delta.unit() % p if self.ext.delta.valuation() == 0 else 0
            x0 = 0 if (z.x.is_exact_zero or z.x.valuation() > 0) else z.x.residue()
            y0 = 0 if (z.y.is_exact_zero or z.y.valuation() > 0) else z.y.residue()
            _, table = _dlog_table_Fp2(p, d0)
            return table[(x0, y0)]
        x0 = z.x.residue()
        _, table = _dlog_table_F(p)
        return table[x0]

    def phase(self, z):
        ext = self.ext
        if isinstance(z, (int, Fraction)):
            z = ext.scalar(z, 0)
        elif isinstance(z, PAdicScalar):
            z = QuadExtScalar(ext, z, ext.F.zero())
        if z.is_zero():
            raise NotInDomain("character at 0")
        v = z.valuation_E()
        pi = ext.scalar(ext.F.p, 0) if ext.is_inert else ext.tau()
        zu = z * _ext_pow(pi.inverse(), v)
        r = (self.r_pi * v) % 1
        if self.k:
            r = (r + Fraction(self.k * self._unit_residue_log(zu), self._order)) % 1
        return r

    def __call__(self, z):
        return CyclotomicScalar.root_of_unity(self.phase(z))

    def __pow__(self, n):
        return ExtCharacter(self.ext, self.r_pi * n, self.k * n)

    def restricts_to(self, chi, samples=None):
        """Check this character restricts to chi on F^* (on generators)."""
        F = self.ext.F
        gen, _ = _dlog_table_F(F.p)
        pts = samples or [Fraction(F.p), Fraction(gen)]
        return all(self.phase(x) == chi.phase(x) for x in pts)


def _ext_pow(z, n):
    out = z.ext.one()
    base = z
    if n < 0:
        base = z.inverse()
        n = -n
    for _ in range(n):
        out = out * base
    return out


def eta_prime_default(ext, eta=None):
    """A standard extension of eta to E^*."""
    eta = eta or eta_for_extension(ext)
    p = ext.F.p
    if ext.is_inert:
        # unramified extension: trivial on units, -1 on the uniformizer p
        return ExtCharacter(ext, eta.r_pi, 0)
    # ramified: residue character must restrict to Legendre on F_p, and
    # eta'(tau)^2 = eta'(delta) = eta(delta) pins the value on tau up to sign
    eta_delta = eta.phase(ext.delta_fraction)
    r_tau = eta_delta / 2
    return ExtCharacter(ext, r_tau, (p - 1) // 2)


def omega_trivial(ext):
    return ExtCharacter(ext, 0, 0)


def gauss_sum(eta, psi):
    """g = sum over units a mod p of eta(a) psi(a/p)."""
    p = eta.F.p
    total = CyclotomicScalar.zero()
    for a in range(1, p):
        total = total + eta(a) * psi(Fraction(a, p))
    return total


def epsilon_half(eta, psi):
    """The s = 1/2 epsilon factor, normalized to modulus one.

    Unramified eta with unramified psi gives exactly 1; a ramified
    (conductor-one) eta gives the normalized Gauss sum g / sqrt(p).
    Other conductors are out of scope.
    """
    if psi.d != 0:
        raise UnsupportedConductor("only conductor-zero psi is supported")
    if eta.is_unramified:
        return CyclotomicScalar.one()
    from .cyclotomic import sqrt_prime

    p = eta.F.p
    g = gauss_sum(eta, psi)
    return g * sqrt_prime(p) * CyclotomicScalar.from_rational(Fraction(1, p))
