"""Oscillating ("dagger") test-function spaces and the compactness identity.

A dagger scalar of level m on E = F[tau] is theta = theta+ (x) theta- where
theta+ is a multiple of the indicator of p^m O_F and theta- is supported in
p^m O_F with Fourier transform supported in a single valuation shell, exactly
v = -2m - d - v(delta) in the minus coordinate.  Column and matrix variants
place dagger scalars on the last/superdiagonal entries and plain congruence
indicators elsewhere.  The compactness identity evaluates the resulting
smoothed Whittaker-type integral in closed form; both sides are computed
here by independent finite methods.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .cyclotomic import CyclotomicScalar
from .errors import InvalidLevel, NotAdmissible, SchemaError
from .padic import val_p
from .spaces import WavePacket, e_space, matrix_space_e, riemann_fourier, tensor


# -- exact arithmetic on E-points given as Fraction pairs --------------------


def e_mul(a, b, delta):
    return (a[0] * b[0] + delta * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def e_matmul(A, B, delta):
    n, k, m = len(A), len(B), len(B[0])
    out = [[(Fraction(0), Fraction(0))] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = (Fraction(0), Fraction(0))
            for t in range(k):
                prod = e_mul(A[i][t], B[t][j], delta)
                s = (s[0] + prod[0], s[1] + prod[1])
            out[i][j] = s
    return out


def mat_to_coords(A, k):
    """Flatten a k x k matrix of E-pairs into matrix_space_e coordinates."""
    out = []
    for i in range(k):
        for j in range(k):
            out.extend(A[i][j])
    return tuple(out)


# -- generators ----------------------------------------------------------------


class DaggerData:
    """A constructed dagger test function with its building blocks."""

    __slots__ = ("kind", "ext", "psi", "m", "k", "entries", "packet")

    def __init__(self, kind, ext, psi, m, k, entries, packet):
        self.kind = kind
        self.ext = ext
        self.psi = psi
        self.m = m
        self.k = k
        self.entries = entries
        self.packet = packet


def shell_valuation(ext, psi, m):
    """Minus-coordinate valuation of the hat-support shell at level m."""
    vdelta = val_p(ext.delta_fraction, ext.F.p)
    return -2 * m - psi.d - vdelta


def make_dagger_scalar(ext, psi, m, unit=1, coeff=1):
    """Generator of the level-m dagger space on E: indicator of p^m O_E
    twisted in the minus coordinate at the shell frequency."""
    if m < 1:
        raise InvalidLevel("dagger level must be >= 1")
    p = ext.F.p
    unit = Fraction(unit)
    if unit == 0 or val_p(unit, p) != 0:
        raise SchemaError("twist unit must be a p-adic unit")
    V = e_space(ext, psi, 1)
    c = unit * Fraction(p) ** shell_valuation(ext, psi, m)
    packet = WavePacket(
        V, [(coeff, (Fraction(0), Fraction(0)), (m, m), (Fraction(0), c))]
    )
    return DaggerData("scalar", ext, psi, m, 1, {"theta": packet}, packet)


def indicator_E(ext, psi, exps_pair, center_pair=(0, 0)):
    V = e_space(ext, psi, 1)
    return WavePacket.indicator(
        V, exps_pair, center=tuple(Fraction(t) for t in center_pair)
    )


def make_dagger_column(ext, psi, m, k, scalar=None):
    """Column function on M_{k,1}(E): plain p^m O_E indicators above a
    dagger scalar in the last coordinate."""
    if m < 1:
        raise InvalidLevel("dagger level must be >= 1")
    theta = scalar if scalar is not None else make_dagger_scalar(ext, psi, m)
    entries = {}
    packet = None
    for i in range(k):
        comp = theta.packet if i == k - 1 else indicator_E(ext, psi, (m, m))
        entries[i] = comp
        packet = comp if packet is None else tensor(packet, comp)
    # the concatenated space coincides with e_space(ext, psi, k)
    packet = WavePacket(e_space(ext, psi, k), packet.terms)
    return DaggerData("column", ext, psi, m, k, entries, packet)


def make_dagger_matrix(ext, psi, m, k, scalars=None):
    """Matrix function on H_k(E): congruence indicators with dagger scalars
    on the superdiagonal."""
    if m < 1:
        raise InvalidLevel("dagger level must be >= 1")
    entries = {}
    for i in range(k):
        for j in range(k):
            if i == j:
                entries[(i, j)] = indicator_E(ext, psi, (m, m), (1, 0))
            elif j == i + 1:
                theta = None
                if scalars is not None:
                    theta = scalars.get((i, j))
                if theta is None:
                    theta = make_dagger_scalar(ext, psi, m)
                entries[(i, j)] = theta.packet
            else:
                entries[(i, j)] = indicator_E(ext, psi, (m, m))
    sp = matrix_space_e(ext, psi, k)
    # assemble product terms; a frequency attached to entry (i,j) must be
    # stored at position (j,i) because the space pairing is tr(XY)
    pos = {(i, j): 2 * (i * k + j) for i in range(k) for j in range(k)}
    terms = []
    for combo in itertools.product(
        *[entries[(i, j)].terms for i in range(k) for j in range(k)]
    ):
        coeff = CyclotomicScalar.one()
        center = [Fraction(0)] * (2 * k * k)
        exps = [0] * (2 * k * k)
        freq = [Fraction(0)] * (2 * k * k)
        idx = 0
        for i in range(k):
            for j in range(k):
                c, x0, a, f0 = combo[idx]
                idx += 1
                coeff = coeff * c
                base = pos[(i, j)]
                tbase = pos[(j, i)]
                for t in range(2):
                    center[base + t] = x0[t]
                    exps[base + t] = a[t]
                    freq[tbase + t] = f0[t]
        terms.append((coeff, tuple(center), tuple(exps), tuple(freq)))
    packet = WavePacket(sp, terms)
    return DaggerData("matrix", ext, psi, m, k, entries, packet)


# -- definitional predicates -----------------------------------------------


def _supported_in(packet, min_exp):
    """Support contained in the product lattice p^min_exp O (coordinatewise)."""
    p = packet.space.F.p
    for _, x0, a, _ in packet.terms:
        for xi, ai in zip(x0, a):
            if ai < min_exp:
                return False
            if xi != 0 and val_p(xi, p) < min_exp:
                return False
    return True


def _invariant_under_shifts(packet, exp):
    """Invariance under translation by p^exp in every coordinate."""
    n = packet.space.dim
    p = packet.space.F.p
    for i in range(n):
        t = [Fraction(0)] * n
        t[i] = Fraction(p) ** exp
        if not packet.shift(tuple(t)).equals(packet):
            return False
    return True


def is_admissible_scalar(ext, psi, m, packet):
    """All clauses of the level-m dagger definition on E."""
    if m < 1:
        raise InvalidLevel("dagger level must be >= 1")
    p = ext.F.p
    if not packet.terms:
        return False
    if not _supported_in(packet, m):
        return False
    if not _invariant_under_shifts(packet, 2 * m):
        return False
    # plus part is a multiple of the indicator of p^m O: the value must not
    # depend on the plus coordinate within the support
    reps_plus = [Fraction(j * p ** m) for j in range(p ** m)]
    reps_minus = [Fraction(j * p ** m) for j in range(p ** m)]
    for y in reps_minus:
        vals = {packet.evaluate((x, y)) for x in reps_plus}
        if len(vals) > 1:
            return False
    # hat-support shell: minus coordinate exactly at the shell valuation,
    # plus coordinate within the dual of p^m O
    s0 = shell_valuation(ext, psi, m)
    d = psi.d
    fh = packet.fourier()
    for _, w0, b, _ in fh.terms:
        if w0[0] != 0 and val_p(w0[0], p) < -m - d:
            return False
        if b[0] < -m - d:
            return False
        if w0[1] == 0 or val_p(w0[1], p) != s0 or b[1] <= s0:
            return False
    return True


def is_admissible_column(data):
    if data.kind != "column":
        return False
    ext, psi, m, k = data.ext, data.psi, data.m, data.k
    for i in range(k - 1):
        if not data.entries[i].equals(indicator_E(ext, psi, (m, m))):
            return False
    return is_admissible_scalar(ext, psi, m, data.entries[k - 1])


def is_admissible_matrix(data, samples=8, seed=0):
    """Entrywise clauses plus the derived invariance/decomposability
    properties, the latter checked on pseudorandom exact sample points."""
    if data.kind != "matrix":
        return False
    ext, psi, m, k = data.ext, data.psi, data.m, data.k
    for i in range(k):
        for j in range(k):
            e = data.entries[(i, j)]
            if i == j:
                if not e.equals(indicator_E(ext, psi, (m, m), (1, 0))):
                    return False
            elif j == i + 1:
                if not is_admissible_scalar(ext, psi, m, e):
                    return False
            else:
                if not e.equals(indicator_E(ext, psi, (m, m))):
                    return False
    return matrix_invariance_report(data, samples=samples, seed=seed)["ok"]


def _sample_support_point(data, rng):
    """A pseudorandom E-matrix in 1 + p^m M_k(O_E)."""
    p, m, k = data.ext.F.p, data.m, data.k
    pm = Fraction(p) ** m
    A = []
    for i in range(k):
        row = []
        for j in range(k):
            x = Fraction(rng.randrange(p ** 2)) * pm + (1 if i == j else 0)
            y = Fraction(rng.randrange(p ** 2)) * pm
            row.append((x, y))
        A.append(row)
    return A


def matrix_invariance_report(data, samples=8, seed=0):
    """Derived properties of admissible matrix data: invariance under the
    lower-unipotent congruence subgroup and under 1 + p^m M_k(O_F), and
    decomposability of the real part."""
    import random

    rng = random.Random(seed)
    ext, m, k = data.ext, data.m, data.k
    delta = ext.delta_fraction
    p = ext.F.p
    pm = Fraction(p) ** m
    f = data.packet
    ok = True
    for _ in range(samples):
        g = _sample_support_point(data, rng)
        base = f.evaluate(mat_to_coords(g, k))
        # lower-unipotent congruence factor
        v = [
            [
                (Fraction(1) if i == j else
                 (Fraction(rng.randrange(p)) * pm if i > j else Fraction(0)),
                 Fraction(rng.randrange(p)) * pm if i > j else Fraction(0))
                for j in range(k)
            ]
            for i in range(k)
        ]
        for prod in (e_matmul(v, g, delta), e_matmul(g, v, delta)):
            if f.evaluate(mat_to_coords(prod, k)) != base:
                ok = False
        # F-rational congruence factor
        h = [
            [
                ((Fraction(1) if i == j else Fraction(0))
                 + Fraction(rng.randrange(p)) * pm, Fraction(0))
                for j in range(k)
            ]
            for i in range(k)
        ]
        for prod in (e_matmul(h, g, delta), e_matmul(g, h, delta)):
            if f.evaluate(mat_to_coords(prod, k)) != base:
                ok = False
        # real part: replacing the F-part of g by another element of
        # 1 + p^m M_k(O_F) leaves the value unchanged
        g2 = [
            [
                ((Fraction(1) if i == j else Fraction(0))
                 + Fraction(rng.randrange(p ** 2)) * pm, g[i][j][1])
                for j in range(k)
            ]
            for i in range(k)
        ]
        if f.evaluate(mat_to_coords(g2, k)) != base:
            ok = False
    return {"ok": ok, "samples": samples}


# -- decomposition -------------------------------------------------------------


def decompose_admissible(varphi_data, phi_data):
    """Split an admissible pair into the nested column/row components.

    Returns the list of column functions phi_i (innermost first), the row
    functions phi'_i, and the exact value of the row-function integral over
    the lower-triangular Borel of F (multiplicative measure on the diagonal,
    additive below).
    """
    if varphi_data.kind != "matrix" or phi_data.kind != "column":
        raise NotAdmissible("expected a (matrix, column) admissible pair")
    if (
        varphi_data.k != phi_data.k
        or varphi_data.m != phi_data.m
        or varphi_data.ext != phi_data.ext
    ):
        raise NotAdmissible("mismatched admissible pair")
    k, m = varphi_data.k, varphi_data.m
    ext, psi = varphi_data.ext, varphi_data.psi
    q = Fraction(ext.F.p)
    columns = {k: phi_data}
    rows = {}
    for i in range(k, 0, -1):
        # row i of varphi (1-indexed size-i row including the diagonal)
        rows[i] = [varphi_data.entries[(i - 1, j)] for j in range(i)]
        if i >= 2:
            col = DaggerData(
                "column", ext, psi, m, i - 1,
                {t: varphi_data.entries[(t, i - 1)] for t in range(i - 1)},
                None,
            )
            columns[i - 1] = col
    # integral of the assembled row function over the lower Borel:
    # diagonal entries against d*x (volume q^-m on 1 + p^m O_F), strictly
    # lower entries against additive measure (volume q^-m on p^m O_F)
    integral = Fraction(1)
    for i in range(1, k + 1):
        for j in range(i):
            comp = rows[i][j]
            if j == i - 1:
                if not comp.equals(indicator_E(ext, psi, (m, m), (1, 0))):
                    raise NotAdmissible("diagonal row entry is not standard")
                integral *= q ** (-m)
            else:
                if not comp.equals(indicator_E(ext, psi, (m, m))):
                    raise NotAdmissible("off-diagonal row entry is not standard")
                integral *= q ** (-m)
    return {"columns": columns, "rows": rows, "b_integral": integral}


# -- the compactness identity at n = 2 ---------------------------------------


def _mult_integral_eta(ext, eta, varphi, y, level):
    """int_{F^x} varphi(y^{-1} h) eta(h) d*h by unit-coset enumeration.

    varphi is a packet on E supported near 1, evaluated at F-points; the
    support pins v(h) = v(y), so the sum over unit cosets at the given
    level is exact.
    """
    F = ext.F
    p = F.p
    v = val_p(y, p)
    total = CyclotomicScalar.zero()
    volcell = CyclotomicScalar.from_rational(Fraction(p) ** (-level))
    for u in range(1, p ** level):
        if u % p == 0:
            continue
        h = Fraction(u) * Fraction(p) ** v
        val = varphi.evaluate((h / y, Fraction(0)))
        if not val.is_zero():
            total = total + val * eta(h) * volcell
    return total


def compactness_W_direct(ext, psi, eta, theta_data, y, level=None):
    """Direct evaluation of the smoothed Whittaker value at diag level 1:
    hat-theta(-tau y) computed by Riemann cell sums, times the enumerated
    eta-twisted multiplicative integral."""
    m = theta_data.m
    if level is None:
        level = m + 1
    y = Fraction(y)
    hat = riemann_fourier(theta_data.packet, (Fraction(0), -y))
    varphi1 = indicator_E(ext, psi, (m, m), (1, 0))
    integral = _mult_integral_eta(ext, eta, varphi1, y, level)
    return hat * integral


def compactness_W_closed(ext, psi, eta, theta_data, y):
    """Closed form: vol(1 + p^m O_F, d*) * eta(y) * hat-theta(-tau y),
    with the transform taken per-term on the wave packet."""
    m = theta_data.m
    y = Fraction(y)
    hat = theta_data.packet.fourier().evaluate((Fraction(0), -y))
    vol = CyclotomicScalar.from_rational(Fraction(ext.F.p) ** (-m))
    return vol * eta(y) * hat
