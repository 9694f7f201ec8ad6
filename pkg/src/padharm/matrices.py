"""Invariant theory of the conjugation action of GL_n on (n+1)x(n+1)
matrices, with exact sections.

Matrices are tuples of tuples over a ring adapter (exact rationals,
truncated p-adics, quadratic extensions, or Z/p^k for brute-force
oracles).  The block form is X = [[A, u], [v, w]] with A of size n.
Invariants: a_i = (-1)^(i-1) tr Lambda^i A read from det(T*1 + A), and
b_0 = w, b_j = v A^(j-1) u.  The moment matrices are
delta_plus(X) = (A^(n-1)u, ..., Au, u) as columns and
delta_minus(X) = rows (v; vA; ...; vA^(n-1)).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import (
    InsufficientPrecision,
    NotInDomain,
    NotRegular,
    ScaleExceeded,
)
from .padic import PAdicScalar, QuadExtScalar

# ---------------------------------------------------------------------------
# ring adapters


class FractionRing:
    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def is_zero(self, x):
        return x == 0

    def inv(self, x):
        if x == 0:
            raise NotInDomain("inverse of zero")
        return 1 / x


class IntModRing:
    """Z/m with m = p^k; zero test exact, inverses for units only."""

    def __init__(self, p, k=1):
        self.p = p
        self.k = k
        self.m = p ** k

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        return int(x) % self.m

    def is_zero(self, x):
        return x % self.m == 0

    def inv(self, x):
        if x % self.p == 0:
            raise NotInDomain("not a unit")
        return pow(x, -1, self.m)


class PAdicRing:
    def __init__(self, ctx):
        self.ctx = ctx

    def zero(self):
        return self.ctx.zero()

    def one(self):
        return self.ctx.one()

    def coerce(self, x):
        return x if isinstance(x, PAdicScalar) else self.ctx.scalar(x)

    def is_zero(self, x):
        return x.is_zero()

    def inv(self, x):
        return x.inverse()


class QuadExtRing:
    def __init__(self, ext):
        self.ext = ext

    def zero(self):
        return self.ext.zero()

    def one(self):
        return self.ext.one()

    def coerce(self, x):
        return x if isinstance(x, QuadExtScalar) else self.ext.scalar(x, 0)

    def is_zero(self, x):
        return x.is_zero()

    def inv(self, x):
        return x.inverse()


# ---------------------------------------------------------------------------
# generic matrix algebra


def mat(rows):
    return tuple(tuple(r) for r in rows)


def mat_from_scalars(R, rows):
    return mat([[R.coerce(x) for x in r] for r in rows])


def identity(R, n):
    return mat(
        [[R.one() if i == j else R.zero() for j in range(n)] for i in range(n)]
    )


def zero_matrix(R, n, m=None):
    m = n if m is None else m
    return mat([[R.zero()] * m for _ in range(n)])


def mat_add(A, B):
    return mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])


def mat_sub(A, B):
    return mat([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])


def mat_neg(A):
    return mat([[-a for a in r] for r in A])


def mat_scale(c, A):
    return mat([[c * a for a in r] for r in A])


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = A[i][0] * B[0][j]
            for t in range(1, k):
                s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return mat(out)


def transpose(A):
    return tuple(zip(*A))


def mat_pow(R, A, k):
    out = identity(R, len(A))
    for _ in range(k):
        out = mat_mul(out, A)
    return out


def det(R, A):
    """Leibniz expansion: division-free, exact over any commutative ring."""
    n = len(A)
    total = R.zero()
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = A[0][perm[0]]
        for i in range(1, n):
            term = term * A[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        clen = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def mat_inv(R, A):
    """Gaussian elimination with decidable pivots; raises
    InsufficientPrecision if no pivot can be certified nonzero."""
    n = len(A)
    aug = [list(A[i]) + list(identity(R, n)[i]) for i in range(n)]
    for col in range(n):
        piv = None
        undecided = False
        for r in range(col, n):
            try:
                if not R.is_zero(aug[r][col]):
                    piv = r
                    break
            except InsufficientPrecision:
                undecided = True
        if piv is None:
            if undecided:
                raise InsufficientPrecision("pivot undecided during inversion")
            raise NotInDomain("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = R.inv(aug[col][col])
        aug[col] = [pinv * x for x in aug[col]]
        for r in range(n):
            if r != col:
                c = aug[r][col]
                try:
                    if R.is_zero(c):
                        continue
                except InsufficientPrecision:
                    pass
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return mat([row[n:] for row in aug])


def charpoly_plus(R, A):
    """Coefficients (c_0=1, c_1, ..., c_n) of det(T*1 + A) in descending
    powers of T, computed by Leibniz expansion over R[T]."""
    n = len(A)
    zero, one = R.zero(), R.one()

    def padd(p, q):
        k = max(len(p), len(q))
        return [
            (p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero)
            for i in range(k)
        ]

    def pmul(p, q):
        out = [zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return out

    total = [zero] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = [one]
        for i in range(n):
            entry = A[i][perm[i]]
            if perm[i] == i:
                term = pmul(term, [entry, one])  # entry + T
            else:
                term = pmul(term, [entry])
        if sign < 0:
            term = [-x for x in term]
        total = padd(total, term)
    # total is little-endian in T of degree n; return descending
    total = total + [zero] * (n + 1 - len(total))
    return tuple(reversed(total))


# ---------------------------------------------------------------------------
# block structure and invariants


def blocks(X):
    n = len(X) - 1
    A = mat([row[:n] for row in X[:n]])
    u = tuple(X[i][n] for i in range(n))
    v = tuple(X[n][:n])
    w = X[n][n]
    return A, u, v, w


def assemble(A, u, v, w):
    n = len(A)
    rows = [list(A[i]) + [u[i]] for i in range(n)]
    rows.append(list(v) + [w])
    return mat(rows)


def invariants_of(R, X):
    """(a_1..a_n, b_0..b_n) for X in M_{n+1}."""
    A, u, v, w = blocks(X)
    n = len(A)
    cp = charpoly_plus(R, A)  # c_0..c_n, coefficient of T^(n-i) is c_i
    a = tuple(cp[i] if i % 2 == 1 else -cp[i] for i in range(1, n + 1))
    b = [w]
    row = v
    for _ in range(n):
        b.append(_dot(row, u, R))
        row = _vec_mat(row, A)
    return a, tuple(b)


def _dot(v, u, R):
    s = R.zero()
    for a, b in zip(v, u):
        s = s + a * b
    return s


def _vec_mat(v, A):
    n = len(A)
    return tuple(
        _sum_terms([v[i] * A[i][j] for i in range(n)]) for j in range(n)
    )


def _mat_vec(A, u):
    return tuple(_sum_terms([A[i][j] * u[j] for j in range(len(u))]) for i in range(len(A)))


def _sum_terms(terms):
    s = terms[0]
    for t in terms[1:]:
        s = s + t
    return s


def delta_plus(R, X):
    """Columns (A^(n-1)u, ..., Au, u)."""
    A, u, _, _ = blocks(X)
    n = len(A)
    cols = [u]
    cur = u
    for _ in range(n - 1):
        cur = _mat_vec(A, cur)
        cols.append(cur)
    cols.reverse()
    return transpose(mat(cols))


def delta_minus(R, X):
    """Rows (v; vA; ...; vA^(n-1))."""
    A, _, v, _ = blocks(X)
    n = len(A)
    rows = [v]
    cur = v
    for _ in range(n - 1):
        cur = _vec_mat(cur, A)
        rows.append(cur)
    return mat(rows)


def Delta_plus(R, X):
    return det(R, delta_plus(R, X))


def Delta_minus(R, X):
    return det(R, delta_minus(R, X))


def Delta(R, X):
    return Delta_plus(R, X) * Delta_minus(R, X)


def xi_plus(R, m):
    """The upper shift matrix of size m."""
    return mat(
        [
            [R.one() if j == i + 1 else R.zero() for j in range(m)]
            for i in range(m)
        ]
    )


def xi_minus(R, m):
    return transpose(xi_plus(R, m))


def embed_h(R, h, m):
    """diag(h, 1, ..., 1) of size m for h of size n <= m."""
    n = len(h)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i < n and j < n:
                row.append(h[i][j])
            else:
                row.append(R.one() if i == j else R.zero())
        rows.append(row)
    return mat(rows)


def conjugate(R, h, X):
    """h X h^-1 with h in GL_n embedded into GL_{n+1} when needed."""
    if len(h) != len(X):
        h = embed_h(R, h, len(X))
    return mat_mul(mat_mul(h, X), mat_inv(R, h))


def is_nilpotent(R, X):
    """X lies in the null-cone: all invariants vanish."""
    a, b = invariants_of(R, X)
    return all(R.is_zero(x) for x in a) and all(R.is_zero(x) for x in b)


def classify_nilpotent(R, X):
    """For nilpotent X: 'plus'/'minus' when regular (conjugate to the
    matching shift matrix), 'irregular' otherwise."""
    if not is_nilpotent(R, X):
        raise NotInDomain("matrix is not in the null-cone")
    dplus = not R.is_zero(Delta_plus(R, X))
    dminus = not R.is_zero(Delta_minus(R, X))
    if dplus and dminus:
        raise ArithmeticError("nilpotent element with Delta != 0")
    if dplus:
        return "plus"
    if dminus:
        return "minus"
    return "irregular"


# ---------------------------------------------------------------------------
# sections


def section_sigma(R, a, b):
    """sigma(a, b): rows 1..n have a_i in column 1 and 1 on the
    superdiagonal; the last row is (b_n, ..., b_1, b_0)."""
    n = len(a)
    a = [R.coerce(x) for x in a]
    b = [R.coerce(x) for x in b]
    rows = []
    for i in range(n):
        row = [R.zero()] * (n + 1)
        row[0] = a[i]
        row[i + 1] = R.one()
        rows.append(row)
    rows.append([b[n - j] for j in range(n)] + [b[0]])
    return mat(rows)


def section_sigma_prime(R, a, b):
    """sigma'(a, b): rows 1..n-1 are the shift pattern, row n is
    (a_n, ..., a_1, 1), the last row is (b_n, ..., b_1, b_0)."""
    n = len(a)
    a = [R.coerce(x) for x in a]
    b = [R.coerce(x) for x in b]
    rows = []
    for i in range(n - 1):
        row = [R.zero()] * (n + 1)
        row[i + 1] = R.one()
        rows.append(row)
    rows.append([a[n - 1 - j] for j in range(n)] + [R.one()])
    rows.append([b[n - j] for j in range(n)] + [b[0]])
    return mat(rows)


def varrho(R, a, b):
    """The transpose of sigma'."""
    return transpose(section_sigma_prime(R, a, b))


def iota(R, h, a, b):
    return conjugate(R, h, section_sigma(R, a, b))


def iota_inverse(R, X):
    """(h, (a, b)) with X = h sigma(a,b) h^-1; requires Delta_+ invertible
    (delta_+(sigma(a,b)) = 1, so h = delta_+(X))."""
    h = delta_plus(R, X)
    try:
        mat_inv(R, h)
    except NotInDomain:
        raise NotRegular("Delta_+(X) = 0: X is outside the plus chart")
    a, b = invariants_of(R, X)
    return h, (a, b)


def iota_prime_inverse(R, X):
    """(h, (a, b)) with X = h sigma'(a,b) h^-1, via the three-step solve:
    a from the characteristic polynomial of A, then h from the moment
    matrices, then b from (v h, w)."""
    A, u, v, w = blocks(X)
    n = len(A)
    cp = charpoly_plus(R, A)
    a = tuple(cp[i] if i % 2 == 1 else -cp[i] for i in range(1, n + 1))
    zero_b = [R.zero()] * (n + 1)
    ref = section_sigma_prime(R, a, zero_b)
    h = mat_mul(delta_plus(R, X), mat_inv(R, delta_plus(R, ref)))
    hinv = mat_inv(R, h)
    vh = _vec_mat(v, h)
    b = [w] + [vh[n - i] for i in range(1, n + 1)]  # (vh)_j = b_{n-j+1}
    return h, (a, tuple(b))


def in_script_w(R, X):
    """Membership in the slice: superdiagonal 1, zero above it."""
    m = len(X)
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1:
                if not R.is_zero(X[i][j] - R.one()):
                    return False
            elif not R.is_zero(X[i][j]):
                return False
    return True


def in_lower_unipotent(R, h):
    m = len(h)
    for i in range(m):
        for j in range(m):
            if i == j:
                if not R.is_zero(h[i][j] - R.one()):
                    return False
            elif j > i and not R.is_zero(h[i][j]):
                return False
    return True


def nu_plus(R, u_mat):
    """u xi_+ u^-1 for u in N_n embedded in GL_{n+1}."""
    m = len(u_mat) + 1
    return conjugate(R, u_mat, xi_plus(R, m))


def last_row_poly(R, A_top, a, p=None, N=None):
    """Reconstruct the last row of A from its first n-1 rows (slice form:
    superdiagonal 1, zeros above) and the a-invariants.

    Works over Z/p^N by digit lifting: the dependence is triangular with
    unit Jacobian, so each digit of the last row is determined by an
    exhaustive search over residue digits.
    """
    n = len(A_top) + 1
    if not isinstance(R, IntModRing):
        raise NotInDomain("last_row_poly is implemented over Z/p^N")
    p, Npow = R.p, R.k
    target = tuple(R.coerce(x) for x in a)

    def a_of(last_row):
        A = mat([list(r) for r in A_top] + [list(last_row)])
        cp = charpoly_plus(R, A)
        return tuple(
            cp[i] if i % 2 == 1 else (-cp[i]) % R.m for i in range(1, n + 1)
        )

    row = [0] * n
    for k in range(Npow):
        pk = p ** k
        found = None
        for digits in itertools.product(range(p), repeat=n):
            cand = [row[j] + digits[j] * pk for j in range(n)]
            got = a_of(cand)
            if all((g - t) % (p ** (k + 1)) == 0 for g, t in zip(got, target)):
                found = cand
                break
        if found is None:
            raise NotInDomain("no last row matches the invariants")
        row = found
    return tuple(x % R.m for x in row)


# ---------------------------------------------------------------------------
# triangular-map checking over (Z/p^N)^m


def triangular_check(phi, m, p, Npow, budget=200000, samples=10000, seed=0):
    """Assert phi: (Z/p^N)^m -> (Z/p^N)^m is a bijection.

    Exhaustive fiber count when the domain fits in the budget, otherwise
    a seeded collision check on `samples` random points.  Returns a
    report dict.
    """
    size = (p ** Npow) ** m
    mod = p ** Npow
    if size <= budget:
        seen = set()
        for x in itertools.product(range(mod), repeat=m):
            y = tuple(c % mod for c in phi(x))
            if y in seen:
                raise ArithmeticError(f"fiber of size >= 2 over {y}")
            seen.add(y)
        if len(seen) != size:
            raise ArithmeticError("image is smaller than the domain")
        return {"mode": "exhaustive", "domain": size, "fibers": 1}
    rng = random.Random(seed)
    seen = {}
    for _ in range(samples):
        x = tuple(rng.randrange(mod) for _ in range(m))
        y = tuple(c % mod for c in phi(x))
        if y in seen and seen[y] != x:
            raise ArithmeticError("collision found: map is not injective")
        seen[y] = x
    return {"mode": "sampled", "domain": size, "samples": samples}


# ---------------------------------------------------------------------------
# finite-field brute-force oracle (regular nilpotent classification)


def nilpotent_cone_Fp(p, n, budget=2 * 10**6):
    """All nilpotent X in M_{n+1}(F_p) for the invariant map, enumerated
    from the constraint equations (n <= 2)."""
    R = IntModRing(p, 1)
    if n > 2:
        raise ScaleExceeded("brute-force cone enumeration is desk scale only")
    out = []
    if n == 1:
        for A in range(p):
            for u in range(p):
                for v in range(p):
                    for w in range(p):
                        if A % p == 0 and w % p == 0 and (v * u) % p == 0:
                            out.append(mat([[A, u], [v, w]]))
        return out
    count = 0
    for entries in itertools.product(range(p), repeat=4):
        A = mat([entries[:2], entries[2:]])
        tr = (A[0][0] + A[1][1]) % p
        dA = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % p
        if tr or dA:
            continue
        for u in itertools.product(range(p), repeat=2):
            Au = _mat_vec(A, u)
            for v in itertools.product(range(p), repeat=2):
                count += 1
                if count > budget:
                    raise ScaleExceeded("cone enumeration budget exceeded")
                if _dot(v, u, R) % p or _dot(v, Au, R) % p:
                    continue
                out.append(assemble(A, u, v, 0))
    return out


def gl_n_Fp(p, n):
    R = IntModRing(p, 1)
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        h = mat([entries[i * n:(i + 1) * n] for i in range(n)])
        d = det(R, h) % p
        if d:
            out.append(h)
    return out


def orbit_of(R, X, group):
    seen = set()
    for h in group:
        Y = conjugate(R, h, X)
        seen.add(tuple(tuple(int(e) % R.m for e in row) for row in Y))
    return seen
