"""Eta-twisted orbital integrals on the symmetric-space Lie algebra.

Three computation routes live here, each exact:

* ``orbital_nilpotent`` -- the regularized integral over the regular
  nilpotent orbit through xi_+ (or xi_-), evaluated coordinate-wise as a
  product of Tate-type local factors, giving a rational function of
  T = q^(-s).
* ``orbital_rs_n1`` / ``orbital_rs`` -- regular semisimple integrals by
  finite enumeration of torus shells (rank 1) or of additive matrix
  cells with a determinant-valuation window certified through the
  delta_+ section (rank 2).
* the descent pipeline ``f_natural`` -> ``f_psi_natural`` ->
  ``dagger_mu_closed_form`` / ``spherical_rhs`` with independent direct
  enumerators, used for the germ-constancy and spherical identities in
  rank 1.

Conventions: the group acts by X |-> h X h^(-1) with h embedded as
diag(h, 1); the multiplicative weight is eta(det h) |det h|^s with the
unnormalized measure d*h = dh / |det h|^n, and the nilpotent integrals
are normalized so the level-0 indicator gives (1 - 1/q)/(1 + T) in
rank 1.  On square-matrix coordinate spaces the trace pairing couples
the (i,j) and (j,i) slots, so a frequency that should oscillate against
the entry x_ij is stored at position (j,i).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .cyclotomic import CyclotomicScalar, sqrt_rational_power
from .errors import (
    InvalidLevel,
    NotAdmissible,
    NotInDomain,
    NotRegularSemisimple,
    ScaleExceeded,
)
from .padic import val_p
from .qrational import Poly, QRational
from .spaces import WavePacket, e_minus_space, e_space, f_space, matrix_space_e, s_space


# ---------------------------------------------------------------------------
# results


class OrbitalResult:
    """A finite sum  sum_i c_i * R_i(T)  with c_i cyclotomic scalars and
    R_i rational functions of T = q^(-s)."""

    __slots__ = ("pairs", "metadata")

    def __init__(self, pairs, metadata=None):
        merged = {}
        for c, qr in pairs:
            if not isinstance(c, CyclotomicScalar):
                c = CyclotomicScalar.from_rational(c)
            if qr.is_zero():
                continue
            if qr in merged:
                merged[qr] = merged[qr] + c
            else:
                merged[qr] = c
        self.pairs = tuple(
            (c, qr)
            for qr, c in sorted(merged.items(), key=lambda kv: repr(kv[0]))
            if not c.is_zero()
        )
        self.metadata = dict(metadata or {})

    @staticmethod
    def zero(metadata=None):
        return OrbitalResult([], metadata)

    def is_zero(self):
        return not self.pairs

    def value_at(self, t):
        """Exact value at a rational point T = t, as a cyclotomic scalar."""
        total = CyclotomicScalar.zero()
        for c, qr in self.pairs:
            total = total + c * CyclotomicScalar.from_rational(qr.evaluate(t))
        return total

    def value0(self):
        """The regularized value at s = 0 (T = 1)."""
        return self.value_at(Fraction(1))

    def as_qrational(self):
        """Collapse to a single QRational; requires rational coefficients."""
        total = QRational.const(0)
        for c, qr in self.pairs:
            r = c.as_rational()
            if r is None:
                raise NotInDomain("coefficients are not rational")
            total = total + QRational.const(r) * qr
        return total

    def substitute_reciprocal(self):
        return OrbitalResult(
            [(c, qr.substitute_reciprocal()) for c, qr in self.pairs],
            self.metadata,
        )

    def scale(self, c):
        if not isinstance(c, CyclotomicScalar):
            c = CyclotomicScalar.from_rational(c)
        return OrbitalResult(
            [(c * c0, qr) for c0, qr in self.pairs], self.metadata
        )

    def __add__(self, other):
        if not isinstance(other, OrbitalResult):
            return NotImplemented
        return OrbitalResult(
            list(self.pairs) + list(other.pairs), self.metadata
        )

    def __eq__(self, other):
        if not isinstance(other, OrbitalResult):
            return NotImplemented
        return (self - other).is_zero()

    def __sub__(self, other):
        return self + other.scale(-1)

    def __hash__(self):
        return hash(self.pairs)

    def pole_report(self, q, s_points=((Fraction(1, 2), +1),)):
        """Pole orders of each summand denominator at T = sign*q^(-s0) for
        half-integer s0, plus a Sturm count of real denominator roots in
        (0, 1]."""
        out = []
        for _, qr in self.pairs:
            entry = {
                "real_roots_in_unit": qr.real_pole_count(0, 1),
                "orders": {},
            }
            for s0, sign in s_points:
                t2 = Fraction(q) ** (-2 * s0) if (2 * s0) % 1 == 0 else None
                if t2 is None:
                    continue
                if s0 % 1 == 0:
                    t = Fraction(q) ** (-s0) * sign
                    try:
                        qr.evaluate(t)
                        entry["orders"][(s0, sign)] = 0
                    except Exception:
                        den = qr.den
                        k = 0
                        while den.eval(t) == 0:
                            k += 1
                            den = den.derivative()
                        entry["orders"][(s0, sign)] = k
                else:
                    entry["orders"][(s0, sign)] = qr.pole_order_at_sqrt(t2, sign)
            out.append(entry)
        return out

    def __repr__(self):
        return f"OrbitalResult({len(self.pairs)} summands)"


class CellDecomposition:
    """A finite decomposition of an integration region into product cells;
    the cell measures must add up to the region measure."""

    __slots__ = ("cells", "region_measure")

    def __init__(self, cells, region_measure):
        self.cells = tuple(cells)
        self.region_measure = Fraction(region_measure)
        total = sum((Fraction(m) for _, m in self.cells), Fraction(0))
        if total != self.region_measure:
            raise NotInDomain("cell measures do not add up to the region")


# ---------------------------------------------------------------------------
# square-coordinate helpers


def _matrix_dim(space):
    k = 1
    while k * k < space.dim:
        k += 1
    if k * k != space.dim:
        raise NotInDomain("packet does not live on a square matrix space")
    return k


def _transpose_perm(k):
    return tuple((t % k) * k + (t // k) for t in range(k * k))


def packet_transpose(f):
    """g(X) = f(X^t) on a square-coordinate space whose pairing is the
    transposition map (trace pairing); centers, exponents and frequencies
    all move by the same index permutation."""
    k = _matrix_dim(f.space)
    perm = _transpose_perm(k)
    pair = tuple(f.space.pairing)
    if any(pair[t] != perm[t] for t in range(k * k)):
        raise NotInDomain("space pairing is not the transposition")
    out = []
    for c, x0, a, f0 in f.terms:
        out.append(
            (
                c,
                tuple(x0[perm[t]] for t in range(k * k)),
                tuple(a[perm[t]] for t in range(k * k)),
                tuple(f0[perm[t]] for t in range(k * k)),
            )
        )
    return WavePacket(f.space, out)


def _require_quadratic(eta):
    if not eta.is_quadratic():
        raise NotInDomain("the twisting character must be quadratic")


def _inv_vol(space, exps):
    """1 / vol_lattice(exps), as a cyclotomic scalar."""
    d = space.psi.d
    k = 2 * sum(exps) + sum(d + w for w in space._wv)
    return sqrt_rational_power(space.F.p, k)


# ---------------------------------------------------------------------------
# the regularized nilpotent orbital integral


def orbital_nilpotent(sign, f, eta):
    """Regularized integral of f over the regular nilpotent orbit through
    xi_+ (sign="plus") or xi_- (sign="minus"), with weight
    eta(det h) |det h|^s, as an OrbitalResult in T = q^(-s).

    Coordinate recipe on the plus side: the superdiagonal entries
    b_1..b_n carry the Tate factor with weight |b_l|^(l(-1+s)) and
    character eta^l; the entries strictly above the superdiagonal are
    free additive coordinates; all the rest are pinned to 0.  The minus
    side is the plus side of the transposed function with s -> -s.
    """
    if sign not in ("plus", "minus"):
        raise NotInDomain("sign must be 'plus' or 'minus'")
    _require_quadratic(eta)
    if sign == "minus":
        res = orbital_nilpotent("plus", packet_transpose(f), eta)
        out = res.substitute_reciprocal()
        out.metadata.update(res.metadata)
        out.metadata["sign"] = "minus"
        return out

    k = _matrix_dim(f.space)
    n = k - 1
    if n < 1:
        raise NotInDomain("need matrices of size at least 2")
    p = f.space.F.p
    q = Fraction(p)
    pair = f.space.pairing

    if eta.r_pi not in (Fraction(0), Fraction(1, 2)):
        raise NotInDomain("eta(p) must be a sign")
    eta_p = 1 if eta.r_pi == 0 else -1

    def idx(i, j):
        return i * k + j

    b_coords = [(l, idx(l - 1, l)) for l in range(1, n + 1)]
    x_coords = [idx(i, j) for i in range(k) for j in range(i + 2, k)]
    active = {t for _, t in b_coords} | set(x_coords)

    pairs = []
    for coeff, center, exps, freq in f.terms:
        for t in active:
            if freq[pair[t]] != 0:
                raise NotInDomain(
                    "oscillation against an integrated coordinate"
                )
        # pinned coordinates: the term contributes only if 0 lies in the coset
        dead = False
        for t in range(k * k):
            if t in active:
                continue
            if center[t] != 0 and val_p(center[t], p) < exps[t]:
                dead = True
                break
        if dead:
            continue
        cf = coeff
        qr = QRational.const(1)
        for t in x_coords:
            qr = qr * QRational.const(q ** (-exps[t]))
        for l, t in b_coords:
            a = exps[t]
            beta = center[t]
            e = l % 2
            if beta == 0 or val_p(beta, p) >= a:
                # full lattice p^a O
                if e and not eta.is_unramified:
                    dead = True
                    break
                s = eta_p if e else 1
                num = QRational.monomial(
                    (1 - 1 / q) * Fraction(s) ** (a % 2) * q ** ((l - 1) * a),
                    l * a,
                )
                den = Poly(
                    [Fraction(1)] + [Fraction(0)] * (l - 1) + [-s * q ** (l - 1)]
                )
                qr = qr * num / QRational(den)
            else:
                v = val_p(beta, p)
                if e:
                    cf = cf * eta(beta)
                qr = qr * QRational.monomial(q ** (v * l - a), v * l)
        if not dead:
            pairs.append((cf, qr))

    meta = {
        "n": n,
        "sign": "plus",
        "variable": "q^-s",
        "convergence": f"Re(s) > {1 - Fraction(1, n)}",
    }
    return OrbitalResult(pairs, meta)


# ---------------------------------------------------------------------------
# regular semisimple integrals, rank 1


def _support_floor(f, t):
    """A lower bound for the valuation of coordinate t on supp f."""
    vals = []
    for _, center, exps, _ in f.terms:
        c = center[t]
        vals.append(exps[t] if (c == 0 or val_p(c, f.space.F.p) >= exps[t])
                    else min(val_p(c, f.space.F.p), exps[t]))
    return min(vals)


def orbital_rs_n1(X, f, eta, slack=0):
    """O(X, f, s) for 2x2 coordinates X = (x11, x12, x21, x22) regular
    semisimple (x12 x21 != 0), by exact enumeration of torus shells and
    unit cosets.  Returns an OrbitalResult in T = q^(-s)."""
    _require_quadratic(eta)
    if _matrix_dim(f.space) != 2:
        raise NotInDomain("rank-1 path needs 2x2 coordinates")
    X = tuple(Fraction(t) for t in X)
    x11, x12, x21, x22 = X
    if x12 == 0 or x21 == 0:
        raise NotRegularSemisimple("off-diagonal entries must not vanish")
    p = f.space.F.p
    q = Fraction(p)
    d = f.space.psi.d
    if not f.terms:
        return OrbitalResult.zero({"n": 1, "shells": []})

    # shell range from the support of f at the off-diagonal coordinates
    lo = _support_floor(f, 1) - val_p(x12, p)
    hi = val_p(x21, p) - _support_floor(f, 2)
    pairs = []
    pairmap = f.space.pairing
    for v in range(lo, hi + 1):
        # unit granularity: coset membership and frequency phases must be
        # constant on u(1 + p^lam O)
        lam = max(1, eta.conductor_exponent()) + slack
        for _, center, exps, freq in f.terms:
            for t, vx in ((1, val_p(x12, p) + v), (2, val_p(x21, p) - v)):
                lam = max(lam, exps[t] - vx + slack)
                g = freq[pairmap[t]] * f.space.weights[pairmap[t]]
                if g != 0:
                    lam = max(lam, -d - val_p(g, p) - vx + slack)
        shell = CyclotomicScalar.zero()
        for u in range(1, p ** lam):
            if u % p == 0:
                continue
            h = Fraction(u) * q ** v
            val = f.evaluate((x11, x12 * h, x21 / h, x22))
            if val.is_zero():
                continue
            shell = shell + val * eta(h)
        if not shell.is_zero():
            pairs.append((shell * q ** (-lam), QRational.monomial(1, v)))
    return OrbitalResult(pairs, {"n": 1, "shells": [lo, hi], "variable": "q^-s"})


# ---------------------------------------------------------------------------
# regular semisimple integrals, rank 2 (cell enumeration)


def _mat2_from_coords(X):
    return [[X[0], X[1], X[2]], [X[3], X[4], X[5]], [X[6], X[7], X[8]]]


def _delta_plus_val_window(f, Xm, p):
    """Certify that Delta_+ has constant valuation on each term of supp f
    and return {v(Delta_+(X)) - vd} U entry bounds via the section
    delta_+: h = delta_+(Y) delta_+(X)^(-1), det h = Delta_+(Y)/Delta_+(X)."""
    from .matrices import Delta_plus, FractionRing, delta_plus, det, mat, mat_inv

    R = FractionRing()
    k = 3
    DX = delta_plus(R, mat([[R.coerce(x) for x in row] for row in Xm]))
    dX = det(R, DX)
    if dX == 0:
        raise NotRegularSemisimple("Delta_+(X) = 0")
    vdX = val_p(dX, p)
    adjX = mat_inv(R, DX)
    adj_entries = [e * dX for row in adjX for e in row]
    lo_adj = min(val_p(t, p) for t in adj_entries if t != 0)

    windows = set()
    m0 = None
    for _, center, exps, _ in f.terms:
        a_min = min(exps)
        c_min = min(
            [exps[t] if center[t] == 0 else min(val_p(center[t], p), exps[t])
             for t in range(k * k)]
        )
        m0 = c_min if m0 is None else min(m0, c_min)
        Ym = mat([[R.coerce(x) for x in row]
                  for row in _mat2_from_coords(center)])
        dY = Delta_plus(R, Ym)
        # integer-coefficient polynomial of degree 3 in the entries:
        # perturbing by p^a_min moves Delta_+ inside p^(a_min + 2 min(0, c_min))
        bound = a_min + 2 * min(0, c_min)
        if dY == 0 or val_p(dY, p) >= bound:
            raise NotInDomain(
                "Delta_+ valuation is not certified constant on the support"
            )
        windows.add(val_p(dY, p))
    return windows, vdX, lo_adj, m0


def orbital_rs(X, f, eta, budget=500000, slack=0):
    """O(X, f, s) for 3x3 coordinates (rank-2 group H = GL_2(F)) by additive
    cell enumeration of h over a box certified through the delta_+ section.

    The support of f must have certified-constant Delta_+ valuations; the
    determinant of h is then pinned to a finite window, the box of entry
    valuations is rigorous, and exactness is certified by computing at two
    granularities."""
    _require_quadratic(eta)
    k = _matrix_dim(f.space)
    if k == 2:
        return orbital_rs_n1(X, f, eta, slack=slack)
    if k != 3:
        raise NotInDomain("cell enumeration is implemented for ranks 1 and 2")
    X = tuple(Fraction(t) for t in X)
    Xm = _mat2_from_coords(X)
    p = f.space.F.p
    if not f.terms:
        return OrbitalResult.zero({"n": 2})
    windows, vdX, lo_adj, m0 = _delta_plus_val_window(f, Xm, p)
    det_window = {vd - vdX for vd in windows}
    mu = min(0, m0)
    lo = (m0 + mu) + lo_adj - vdX  # h = delta_+(Y) adj(delta_+(X)) / Delta_+(X)
    a_max = max(max(t[2]) for t in f.terms)
    M = max(lo + 1, a_max + max(0, -2 * lo), max(det_window) + 1) + slack
    first = _orbital_rs_cells(X, f, eta, lo, M, det_window, budget)
    second = _orbital_rs_cells(X, f, eta, lo, M + 1, det_window, budget)
    if not (first == second):
        raise NotInDomain("cell enumeration failed the refinement check")
    first.metadata.update({"n": 2, "box_floor": lo, "granularity": M,
                           "det_window": sorted(det_window)})
    return first


def _orbital_rs_cells(X, f, eta, lo, M, det_window, budget):
    p = f.space.F.p
    q = Fraction(p)
    side = p ** (M - lo)
    if side ** 4 > budget:
        raise ScaleExceeded("rank-2 cell budget")
    vol = f_space(f.space.F, f.space.psi, 4).vol_lattice((M,) * 4)
    reps = [Fraction(j * p ** lo) for j in range(side)]
    pairs = {}
    for h11, h12, h21, h22 in itertools.product(reps, repeat=4):
        dh = h11 * h22 - h12 * h21
        if dh == 0:
            # v(det) >= 2M + 2 min(lo,0) - ... beyond the window by choice of M
            continue
        vd = val_p(dh, p)
        if vd not in det_window:
            continue
        # Y = h3 X h3^(-1) with h3 = diag(h, 1)
        inv = [[h22 / dh, -h12 / dh], [-h21 / dh, h11 / dh]]
        h = [[h11, h12], [h21, h22]]
        Y = _conjugate_3x3(h, inv, X)
        val = f.evaluate(Y)
        if val.is_zero():
            continue
        c = val * eta(dh) * q ** (2 * vd)
        key = vd
        pairs[key] = pairs.get(key, CyclotomicScalar.zero()) + c
    out = []
    for vd, c in pairs.items():
        out.append((c * vol, QRational.monomial(1, vd)))
    return OrbitalResult(out, {"variable": "q^-s"})


def _conjugate_3x3(h, hinv, X):
    """Coordinates of diag(h,1) X diag(h,1)^(-1) for 2x2 h and 3x3 X."""
    Xm = _mat2_from_coords(X)
    top = [[h[i][0] * Xm[0][j] + h[i][1] * Xm[1][j] for j in range(3)]
           for i in range(2)]
    rows = top + [Xm[2]]
    out = []
    for i in range(3):
        r = rows[i]
        out.extend(
            [
                r[0] * hinv[0][0] + r[1] * hinv[1][0],
                r[0] * hinv[0][1] + r[1] * hinv[1][1],
                r[2],
            ]
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# eta-twisted averaging over the maximal compact, rank 1


def k_average(f, eta, slack=0):
    """f_K(X) = int_K f(k X k^(-1)) eta(k) dk over K = O^* embedded as
    diag(u, 1), normalized to total measure 1, for 2x2 coordinates."""
    _require_quadratic(eta)
    if _matrix_dim(f.space) != 2:
        raise NotInDomain("averaging is implemented in rank 1")
    p = f.space.F.p
    d = f.space.psi.d
    pairmap = f.space.pairing
    lam = max(1, eta.conductor_exponent()) + slack
    for _, center, exps, freq in f.terms:
        for t in (1, 2):
            lam = max(lam, exps[t] - _support_floor(f, t) + slack)
            g = freq[pairmap[t]] * f.space.weights[pairmap[t]]
            if g != 0:
                lam = max(lam, -d - val_p(g, p) - _support_floor(f, t) + slack)
    total = WavePacket.zero(f.space)
    count = 0
    for u in range(1, p ** lam):
        if u % p == 0:
            continue
        count += 1
        uf = Fraction(u)
        # g(X) = f(k X k^(-1)) = f(x11, u x12, x21 / u, x22)
        g = f.pullback_diagonal((1, uf, 1 / uf, 1)).scale(eta(uf))
        total = total + g
    return total.scale(Fraction(1, count))


# ---------------------------------------------------------------------------
# the descent pipeline, rank 1


def varrho_point(x1, y1, y0):
    """Coordinates of the section point varrho(x, y) = tau [[x1, y1], [1, y0]]
    on the 2x2 symmetric-space coordinates."""
    return (Fraction(x1), Fraction(y1), Fraction(1), Fraction(y0))


def f_natural(ext, psi, r):
    """The Lie-algebra descent of the normalized congruence pair at level r:
    a multiple of the indicator of p^r s(O).

    The group pair is f_i = vol(1 + p^r M(O_E))^(-1) 1_{1+p^r M(O_E)}; the
    descent integrates f1~ * f2 over the split subgroup against eta' and
    lands on the tau-part coordinates."""
    if r < 1:
        raise InvalidLevel("congruence level must be >= 1")
    c = _inv_vol(matrix_space_e(ext, psi, 2), (r,) * 8) * f_space(
        ext.F, psi, 4
    ).vol_lattice((r,) * 4)
    return WavePacket.indicator(s_space(ext, psi, 2), r).scale(c)


def f_natural_direct(ext, psi, eta_prime, r, X, slack=0):
    """Independent enumeration of the descent integral at one point X of the
    tau-part coordinates: integrate the normalized congruence indicator over
    the split group against eta'(det)."""
    p = ext.F.p
    delta = ext.delta_fraction
    X = tuple(Fraction(t) for t in X)
    vX = min([val_p(t, p) for t in X if t != 0] or [0])
    L = r + max(1, -min(0, vX)) + slack
    c2 = _inv_vol(matrix_space_e(ext, psi, 2), (r,) * 8)
    cellvol = f_space(ext.F, psi, 4).vol_lattice((L,) * 4)
    Xm = [[X[0], X[1]], [X[2], X[3]]]
    total = CyclotomicScalar.zero()
    reps = [Fraction(j * p ** r) for j in range(p ** (L - r))]
    for k11, k12, k21, k22 in itertools.product(reps, repeat=4):
        h = [[1 + k11, k12], [k21, 1 + k22]]
        # minus part of (1 + tau X) h is tau X h: need X h in p^r M(O_F)
        ok = True
        for i in range(2):
            for j in range(2):
                t = Xm[i][0] * h[0][j] + Xm[i][1] * h[1][j]
                if t != 0 and val_p(t, p) < r:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        # det((1 + tau X) h) over E, as a (plus, minus) pair
        m = [
            [(h[i][j], Xm[i][0] * h[0][j] + Xm[i][1] * h[1][j]) for j in range(2)]
            for i in range(2)
        ]
        a, b = m[0][0], m[1][1]
        c, dd = m[0][1], m[1][0]
        detE = (
            a[0] * b[0] + delta * a[1] * b[1] - c[0] * dd[0] - delta * c[1] * dd[1],
            a[0] * b[1] + a[1] * b[0] - c[0] * dd[1] - c[1] * dd[0],
        )
        total = total + eta_prime(ext.scalar(*detE)) * cellvol
    return c2 * total


def _phi_minus_packet(phi_data):
    """The minus-coordinate factor of a dagger scalar, carrying the whole
    coefficient; the plus factor is the plain indicator of p^m O_F."""
    if phi_data.kind != "scalar":
        raise NotAdmissible("need a dagger scalar")
    ext, psi, m = phi_data.ext, phi_data.psi, phi_data.m
    out = []
    for c, x0, a, f0 in phi_data.packet.terms:
        if x0[0] != 0 or a[0] != m or f0[0] != 0:
            raise NotAdmissible("plus factor is not the level-m indicator")
        out.append((c, (x0[1],), (a[1],), (f0[1],)))
    return WavePacket(e_minus_space(ext, psi, 1), out)


def c_psi_plus(ext, psi, m):
    """int phi+ dx for the normalized plus factor: the self-dual volume of
    p^m O_F."""
    return f_space(ext.F, psi, 1).vol_lattice((m,))


def f_psi_natural(ext, psi, phi_data, r):
    """The descent of the degenerate-Whittaker average of the level-r
    congruence pair against the dagger scalar phi.

    Product form on the tau-part coordinates: indicator of p^r in the
    (1,1), (2,1), (2,2) slots and the smoothed reflected minus factor
    int phi-(w) 1_{p^r}(x12 + w) dw in the (1,2) slot, all times
    c(Psi+) and the descent normalization."""
    m = phi_data.m
    if r < max(2 * m, m + 1):
        raise InvalidLevel("need r >= 2m for translation invariance")
    base = f_natural(ext, psi, r)
    (c0, _, _, _), = base.terms
    phi_minus = _phi_minus_packet(phi_data)
    ind = WavePacket.indicator(e_minus_space(ext, psi, 1), (r,))
    slot = ind.convolve_add(phi_minus.reflect())
    cp = c_psi_plus(ext, psi, m)
    sp = s_space(ext, psi, 2)
    out = []
    for c2, (w0,), (aw,), (fw,) in slot.terms:
        out.append(
            (
                c0 * c2 * cp,
                (Fraction(0), w0, Fraction(0), Fraction(0)),
                (r, aw, r, r),
                # the phase against x12 sits at the paired position (2,1)
                (Fraction(0), Fraction(0), fw, Fraction(0)),
            )
        )
    return WavePacket(sp, out)


def f_psi_natural_direct(ext, psi, eta_prime, phi_data, r, X, slack=0):
    """Independent enumeration of the degenerate-Whittaker descent at one
    point: double integral over u in p^m O_E (the dagger support) and over
    the split group, of phi(u) f2(n(u)(1+X)h) eta'(det((1+X)h))."""
    p = ext.F.p
    q = Fraction(p)
    delta = ext.delta_fraction
    m = phi_data.m
    X = tuple(Fraction(t) for t in X)
    vX = min([val_p(t, p) for t in X if t != 0] or [0])
    Lu = r + max(0, -min(0, vX)) + slack
    c2 = _inv_vol(matrix_space_e(ext, psi, 2), (r,) * 8)
    uvol = e_space(ext, psi, 1).vol_lattice((Lu, Lu))
    Xm = [[X[0], X[1]], [X[2], X[3]]]
    total = CyclotomicScalar.zero()
    ureps = [Fraction(j * p ** m) for j in range(p ** (Lu - m))]
    for up, um in itertools.product(ureps, repeat=2):
        phival = phi_data.packet.evaluate((up, um))
        if phival.is_zero():
            continue
        # n(u)(1 + tau X) over E: entries as (plus, minus) pairs
        one_plus = [
            [(Fraction(1 if i == j else 0) , Xm[i][j]) for j in range(2)]
            for i in range(2)
        ]
        nu = [[(Fraction(1), Fraction(0)), (up, um)],
              [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))]]
        A = [
            [
                (
                    sum(nu[i][t][0] * one_plus[t][j][0]
                        + delta * nu[i][t][1] * one_plus[t][j][1]
                        for t in range(2)),
                    sum(nu[i][t][0] * one_plus[t][j][1]
                        + nu[i][t][1] * one_plus[t][j][0]
                        for t in range(2)),
                )
                for j in range(2)
            ]
            for i in range(2)
        ]
        P0 = [[A[i][j][0] for j in range(2)] for i in range(2)]
        Q0 = [[A[i][j][1] for j in range(2)] for i in range(2)]
        dP = P0[0][0] * P0[1][1] - P0[0][1] * P0[1][0]
        if dP == 0:
            raise NotInDomain("degenerate plus part in the enumeration")
        Pinv = [[P0[1][1] / dP, -P0[0][1] / dP], [-P0[1][0] / dP, P0[0][0] / dP]]
        QP = [[sum(Q0[i][t] * Pinv[t][j] for t in range(2)) for j in range(2)]
              for i in range(2)]
        vQP = min([val_p(t, p) for row in QP for t in row if t != 0] or [0])
        Lh = max(r + 1, r - min(0, vQP)) + slack
        hreps = [Fraction(j * p ** r) for j in range(p ** (Lh - r))]
        hvol = f_space(ext.F, psi, 4).vol_lattice((Lh,) * 4)
        # additive volume scaling of h = Pinv (1 + kcell) and d*h weight
        vdP = val_p(dP, p)
        jac = q ** (2 * vdP)  # |det Pinv|^2 = q^(2 vdP) as additive scaling
        for k11, k12, k21, k22 in itertools.product(hreps, repeat=4):
            one_k = [[1 + k11, k12], [k21, 1 + k22]]
            h = [[sum(Pinv[i][t] * one_k[t][j] for t in range(2))
                  for j in range(2)] for i in range(2)]
            dh = h[0][0] * h[1][1] - h[0][1] * h[1][0]
            Mmin = [[sum(Q0[i][t] * h[t][j] for t in range(2)) for j in range(2)]
                    for i in range(2)]
            if any(t != 0 and val_p(t, p) < r for row in Mmin for t in row):
                continue
            # eta'(det((1+tau X) h)) with det over E
            a, b = one_plus[0][0], one_plus[1][1]
            c, dd = one_plus[0][1], one_plus[1][0]
            det1X = (
                a[0] * b[0] + delta * a[1] * b[1]
                - c[0] * dd[0] - delta * c[1] * dd[1],
                a[0] * b[1] + a[1] * b[0] - c[0] * dd[1] - c[1] * dd[0],
            )
            detE = (det1X[0] * dh, det1X[1] * dh)
            weight = q ** (2 * val_p(dh, p))  # 1 / |det h|^2
            total = total + (
                phival
                * eta_prime(ext.scalar(*detE))
                * hvol
                * CyclotomicScalar.from_rational(jac * weight)
                * uvol
            )
    return c2 * total


def _shell_character_sum(packet, eta, shell, p, d, extra_cond=1):
    """sum over v(a) = shell of packet(a) eta(a) d*a by unit-coset
    enumeration (unnormalized d*a, so the shell has measure 1 - 1/q)."""
    q = Fraction(p)
    lam = max(1, eta.conductor_exponent(), extra_cond)
    for _, (c0,), (a0,), (f0,) in packet.terms:
        lam = max(lam, a0 - shell)
        if f0 != 0:
            lam = max(lam, -d - val_p(f0, p) - shell - 1)
    total = CyclotomicScalar.zero()
    for u in range(1, p ** lam):
        if u % p == 0:
            continue
        a = Fraction(u) * q ** shell
        val = packet.evaluate((-a,))
        if val.is_zero():
            continue
        total = total + val * eta(a)
    return total * q ** (-lam)


def dagger_mu_closed_form(ext, psi, eta, phi_data):
    """The regular-nilpotent germ constant attached to a dagger scalar, in
    closed form: c(Psi+) times the shell character sum of the Fourier
    transform of the minus factor,

        mu = c(Psi+) * sum_{v(a) = s0} phihat-(-a) eta(a) d*a,

    with s0 the dagger shell valuation."""
    _require_quadratic(eta)
    from .dagger import shell_valuation

    m = phi_data.m
    s0 = shell_valuation(ext, psi, m)
    hat = _phi_minus_packet(phi_data).fourier()
    vdelta = val_p(ext.delta_fraction, ext.F.p)
    total = _shell_character_sum(
        hat, eta, s0, ext.F.p, psi.d + vdelta
    )
    return c_psi_plus(ext, psi, m) * total


def mu_via_nilpotent(ext, psi, eta, phi_data, r):
    """The same germ constant through the orbital-integral machinery: the
    regularized minus-nilpotent integral of the Fourier transform of the
    degenerate-Whittaker descent, at s = 0."""
    g = f_psi_natural(ext, psi, phi_data, r).fourier()
    return orbital_nilpotent("minus", g, eta).value0()


def germ_constant_check(ext, psi, eta, eta_prime, phi_data, r, points,
                        slack=0):
    """Local constancy of the regular semisimple orbital integral near the
    minus nilpotent: O(varrho(x, y), ghat, 0) at each sample point against
    the germ constant mu, with the transfer factor eta'(Delta_-) recorded
    per point (constant on the section slice)."""
    from .matrices import mat
    from .symspace import transfer_factor_lie

    g = f_psi_natural(ext, psi, phi_data, r).fourier()
    mu = mu_via_nilpotent(ext, psi, eta, phi_data, r)
    out = {"mu": mu, "points": [], "all_equal": True}
    for (x1, y1, y0) in points:
        X = varrho_point(x1, y1, y0)
        val = orbital_rs_n1(X, g, eta, slack=slack).value0()
        tf = transfer_factor_lie(
            ext,
            mat([[ext.scalar(0, X[0]), ext.scalar(0, X[1])],
                 [ext.scalar(0, X[2]), ext.scalar(0, X[3])]]),
            eta_prime,
            sign="minus",
        )
        ok = (val - mu).is_zero()
        out["points"].append(
            {"point": (x1, y1, y0), "value": val, "transfer_factor": tf,
             "equal": ok}
        )
        if not ok:
            out["all_equal"] = False
    return out


def spherical_rhs(ext, psi, eta, phi_data, omega_tau=1):
    """The spectral side of the rank-1 germ identity: omega(tau) times the
    shell character sum of the full Fourier transform of the dagger scalar
    along the minus axis,

        omega(tau) * sum_{v(y) = s0} phihat((0, -y)) eta(y) d*y."""
    _require_quadratic(eta)
    from .dagger import shell_valuation

    p = ext.F.p
    q = Fraction(p)
    d = psi.d
    m = phi_data.m
    s0 = shell_valuation(ext, psi, m)
    vdelta = val_p(ext.delta_fraction, p)
    hat = phi_data.packet.fourier()
    lam = max(1, eta.conductor_exponent(), d + vdelta)
    for _, x0, a, f0 in hat.terms:
        lam = max(lam, a[1] - s0)
        if f0[1] != 0:
            lam = max(lam, -d - vdelta - val_p(f0[1], p) - s0)
    total = CyclotomicScalar.zero()
    for u in range(1, p ** lam):
        if u % p == 0:
            continue
        y = Fraction(u) * q ** s0
        val = hat.evaluate((Fraction(0), -y))
        if val.is_zero():
            continue
        total = total + val * eta(y)
    if omega_tau not in (1, -1):
        raise NotInDomain("omega(tau) must be a sign for a quadratic"
                          " central character trivial on F^*")
    return total * q ** (-lam) * Fraction(omega_tau)


def theorem_germ_gl(ext, psi, eta, phi_data, r, omega_tau=1):
    """The rank-1 germ identity: the spectral shell sum equals
    |tau|_E^((d1+d2)/2) omega(tau) mu with both exponents 0 in rank 1.
    The two sides are computed by disjoint routes (a full 2-dimensional
    Fourier transform and shell sum against the orbital-integral
    machinery with all descent constants)."""
    lhs = spherical_rhs(ext, psi, eta, phi_data, omega_tau=omega_tau)
    mu = mu_via_nilpotent(ext, psi, eta, phi_data, r)
    rhs = mu * Fraction(omega_tau)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "mu": mu,
        "tau_norm_exponent": Fraction(0),
        "equal": (lhs - rhs).is_zero(),
    }
