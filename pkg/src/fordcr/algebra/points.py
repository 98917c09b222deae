"""Algebraic points: rational univariate representations over a real field.

A point is presented by a squarefree parametrizing polynomial r in l[u]
(l the real ground field), an isolating interval for the root u* in use,
and one polynomial per coordinate giving its value as an element of
l[u]/(r) evaluated at u*.  Zero tests reduce to gcd computations with r
(a value is zero at u* iff the gcd of its numerator with r has a root in
the isolating interval), so every sign decision comes with an algebraic
certificate rather than a floating point guess.
"""

from .rationals import QQ, iv_sign
from .field import Elem
from .upoly import UPoly


class PointRing:
    """The quotient l[u]/(r) for squarefree monic r."""

    def __init__(self, r):
        r = r.monic()
        self.field = r.field
        self.r = r
        self._chain = None

    @property
    def degree(self):
        return self.r.degree

    def reduce(self, p):
        if p.degree < self.r.degree:
            return p
        return p % self.r

    def upoly(self, coeffs):
        return self.reduce(UPoly(self.field, coeffs))

    def invert(self, p):
        """Inverse of p mod r; raises if gcd(p, r) is nonconstant."""
        g, s, _ = p.xgcd(self.r)
        if g.degree != 0:
            raise NonInvertible(g)
        return self.reduce(s * g.c[0].inverse())

    def split_by(self, h):
        """Split r by h: returns (r_zero, r_unit) with r = r_zero * r_unit.

        r_zero collects the roots where h vanishes, r_unit the others.
        Either part may be trivial (degree 0).
        """
        h = self.reduce(h)
        if h.is_zero():
            return self.r, UPoly(self.field, [1])
        g = h.gcd(self.r)
        return g, (self.r // g).monic()

    def chain(self):
        if self._chain is None:
            self._chain = self.r.sturm_chain()
        return self._chain

    def mult_matrix(self, p):
        """Matrix of multiplication by p on the power basis of l[u]/(r)."""
        n = self.degree
        cols = []
        cur = self.reduce(p)
        x = UPoly(self.field, [0, 1])
        for _ in range(n):
            col = list(cur.c) + [self.field.zero] * (n - len(cur.c))
            cols.append(col)
            cur = self.reduce(cur * x)
        # cols[j] = p * u^j in basis coordinates; matrix rows are basis index
        return [[cols[j][i] for j in range(n)] for i in range(n)]


class NonInvertible(Exception):
    """Raised when a division hits a zero divisor; carries the gcd factor."""

    def __init__(self, factor):
        super().__init__("zero divisor; factor of degree %d" % factor.degree)
        self.factor = factor


def charpoly(field, mat):
    """Characteristic polynomial of a square matrix over the field.

    Uses Newton's identities on the power-sum traces, which needs only
    exact division by small integers.
    """
    n = len(mat)
    if n == 0:
        return UPoly(field, [1])
    powers = [[field.one if i == j else field.zero for j in range(n)]
              for i in range(n)]
    traces = []
    cur = powers
    for _ in range(n):
        cur = _mat_mul(field, cur, mat)
        traces.append(sum((cur[i][i] for i in range(n)), field.zero))
    e = [field.one]
    for k in range(1, n + 1):
        acc = field.zero
        sign = 1
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + (term if sign > 0 else -term)
            sign = -sign
        e.append(acc * QQ(1, k))
    coeffs = [field.zero] * (n + 1)
    for i in range(n + 1):
        c = e[i]
        coeffs[n - i] = c if i % 2 == 0 else -c
    return UPoly(field, coeffs)


def _mat_mul(field, a, b):
    n = len(a)
    out = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(n):
            c = ai[k]
            if c.is_zero():
                continue
            bk = b[k]
            row = out[i]
            for j in range(n):
                if not bk[j].is_zero():
                    row[j] = row[j] + c * bk[j]
    return out


class AlgebraicPoint:
    """A tuple of real algebraic coordinates sharing one parametrization."""

    def __init__(self, ring, interval, coords):
        self.ring = ring
        self.lo = QQ(interval[0])
        self.hi = QQ(interval[1])
        self.coords = tuple(ring.reduce(c) for c in coords)
        self._cache = {}

    @property
    def field(self):
        return self.ring.field

    @classmethod
    def from_rationals(cls, field, values):
        """Exact point with rational coordinates (u is a dummy root of u)."""
        ring = PointRing(UPoly(field, [0, 1]))
        return cls(ring, (0, 0), [UPoly(field, [v]) for v in values])

    @classmethod
    def from_elems(cls, values):
        field = values[0].field
        ring = PointRing(UPoly(field, [0, 1]))
        return cls(ring, (0, 0), [UPoly(field, [v]) for v in values])

    def nvars(self):
        return len(self.coords)

    # -- interval refinement --------------------------------------------------

    def refine(self, eps):
        """Shrink the isolating interval for u to width <= eps."""
        eps = QQ(eps)
        if self.hi - self.lo > eps:
            self.lo, self.hi = self.ring.r.refine(self.lo, self.hi, eps)
        return (self.lo, self.hi)

    def coord_interval(self, i, eps):
        """Certified enclosure of coordinate i with width <= eps."""
        eps = QQ(eps)
        key = ("civ", i)
        cached = self._cache.get(key)
        if cached is not None and cached[1] - cached[0] <= eps:
            return cached
        p = self.coords[i]
        if p.degree <= 0:
            iv = p.c[0].interval(eps)
            self._cache[key] = iv
            return iv
        ueps = eps / 4
        ceps = eps / 2
        while True:
            uiv = (self.lo, self.hi) if self.lo == self.hi else \
                self.ring.r.refine(self.lo, self.hi, ueps)
            self.lo, self.hi = uiv
            iv = p.eval_interval(uiv, ceps)
            if iv[1] - iv[0] <= eps:
                self._cache[key] = iv
                return iv
            # both the root interval and the coefficient enclosures limit
            # the achievable width, so shrink the two together
            ueps /= 16
            ceps /= 16

    def coord_float(self, i):
        lo, hi = self.coord_interval(i, QQ(1, 1 << 48))
        return float((lo + hi) / 2)

    def floats(self):
        return tuple(self.coord_float(i) for i in range(len(self.coords)))

    # -- exact sign and zero tests ---------------------------------------------

    def sign_of_upoly(self, h):
        """Sign of h(u*) for h in l[u], with a gcd certificate for zero."""
        h = self.ring.reduce(h)
        if h.is_zero():
            return 0
        # interval evaluation settles most nonzero signs before the much
        # costlier gcd certificate is attempted
        eps = QQ(1, 1 << 8)
        for round in range(2):
            uiv = (self.lo, self.hi) if self.lo == self.hi else \
                self.ring.r.refine(self.lo, self.hi, eps)
            self.lo, self.hi = uiv
            iv = h.eval_interval(uiv, eps)
            s = iv_sign(iv)
            if s is not None:
                return s
            eps /= 1 << 8
        g = h.gcd(self.ring.r)
        if g.degree > 0 and self._has_root(g):
            return 0
        while True:
            uiv = (self.lo, self.hi) if self.lo == self.hi else \
                self.ring.r.refine(self.lo, self.hi, eps)
            self.lo, self.hi = uiv
            iv = h.eval_interval(uiv, eps)
            s = iv_sign(iv)
            if s is not None:
                return s
            eps /= 1 << 8

    def _has_root(self, g):
        """Does g (a divisor of r) vanish at our root u*?"""
        if self.lo == self.hi:
            return g.sign_at(self.lo) == 0
        # endpoints are non-roots of r, hence of g
        return g.count_roots(self.lo, self.hi) > 0

    def sign_of(self, expr):
        """Sign of an MPoly in the point's coordinates at the point."""
        h = expr.eval_upolys(self.coords, self.ring)
        return self.sign_of_upoly(h)

    def coord_sign(self, i):
        key = ("csign", i)
        s = self._cache.get(key)
        if s is None:
            s = self.sign_of_upoly(self.coords[i])
            self._cache[key] = s
        return s

    def coord_minpoly(self, i):
        """A polynomial over l annihilating coordinate i (squarefree)."""
        key = ("minpoly", i)
        if key not in self._cache:
            mat = self.ring.mult_matrix(self.coords[i])
            self._cache[key] = charpoly(self.field, mat).squarefree()
        return self._cache[key]

    def subpoint(self, indices):
        return AlgebraicPoint(self.ring, (self.lo, self.hi),
                              [self.coords[i] for i in indices])

    def __repr__(self):
        return "AlgPt(%s)" % (", ".join("%.6f" % v for v in self.floats()))


def alg_equal(p, q, eps0=QQ(1, 1 << 16)):
    """Decide whether two algebraic points are equal, with certificates.

    Inequality is certified by disjoint coordinate enclosures; equality by
    a common root of the coordinatewise annihilating polynomials trapped
    in a shrinking common interval.
    """
    if p.nvars() != q.nvars():
        return False
    if p.ring is q.ring and (p.lo, p.hi) == (q.lo, q.hi):
        if all(a == b for a, b in zip(p.coords, q.coords)):
            return True
    for i in range(p.nvars()):
        if not _coord_equal(p, q, i, eps0):
            return False
    return True


def _count_in(g, iv):
    lo, hi = iv
    while g.sign_at(lo) == 0 or g.sign_at(hi) == 0:
        # endpoint root: widen a hair so Sturm counting is clean
        w = (hi - lo) if hi > lo else QQ(1, 1 << 20)
        lo -= w / (1 << 10)
        hi += w / (1 << 10)
    return g.count_roots(lo, hi), (lo, hi)


def _coord_equal(p, q, i, eps):
    mp = mq = g = None
    while True:
        a = p.coord_interval(i, eps)
        b = q.coord_interval(i, eps)
        if a[1] < b[0] or b[1] < a[0]:
            return False
        if g is None:
            mp = p.coord_minpoly(i)
            mq = q.coord_minpoly(i)
            g = mp.gcd(mq)
            if g.degree <= 0:
                return False
        # equality certificate: each enclosure isolates its own value among
        # the roots of its annihilator, each contains a root of the gcd, and
        # the union contains exactly one gcd root.  Roots of the gcd are
        # common roots, so both values must be that single root.
        na, ia = _count_in(mp, a)
        nb, ib = _count_in(mq, b)
        if na == 1 and nb == 1:
            ga, _ = _count_in(g, ia)
            gb, _ = _count_in(g, ib)
            union = (min(ia[0], ib[0]), max(ia[1], ib[1]))
            gu, _ = _count_in(g, union)
            if ga >= 1 and gb >= 1 and gu == 1:
                return True
            if ga == 0 or gb == 0:
                return False
        eps /= 1 << 8


def sort_points(points, eps=QQ(1, 1 << 24)):
    """Deterministic order: lexicographic on coordinate interval midpoints.

    Refines until strict separation in some coordinate (equal points should
    have been merged beforehand).
    """
    import functools

    def cmp(p, q):
        if p is q:
            return 0
        e = eps
        for _ in range(64):
            for i in range(p.nvars()):
                a = p.coord_interval(i, e)
                b = q.coord_interval(i, e)
                if a[1] < b[0]:
                    return -1
                if b[1] < a[0]:
                    return 1
            if alg_equal(p, q):
                return 0
            e /= 1 << 8
        raise RuntimeError("could not separate points for sorting")

    return sorted(points, key=functools.cmp_to_key(cmp))
