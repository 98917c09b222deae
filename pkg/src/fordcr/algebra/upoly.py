"""Univariate polynomials over a RealField.

Coefficients are stored in ascending order.  These are the workhorse for
root isolation: Sturm sequences with exact sign evaluation at rational
points give certified root counts, and bisection then produces isolating
intervals with rational endpoints.
"""

from .rationals import QQ, Q0, Q1
from .field import Elem


class UPoly:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        for i, x in enumerate(cs):
            if not isinstance(x, Elem):
                cs[i] = field.elem(x)
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs:
            cs = [field.zero]
        self.field = field
        self.c = tuple(cs)

    # -- basics --------------------------------------------------------------

    @property
    def degree(self):
        if len(self.c) == 1 and self.c[0].is_zero():
            return -1
        return len(self.c) - 1

    def is_zero(self):
        return self.degree < 0

    def lc(self):
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.c), len(o.c))
        z = self.field.zero
        a = list(self.c) + [z] * (n - len(self.c))
        b = list(o.c) + [z] * (n - len(o.c))
        return UPoly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return UPoly(self.field, [-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, UPoly):
            z = self.field.zero
            out = [z] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if not a.is_zero():
                    for j, b in enumerate(other.c):
                        out[i + j] = out[i + j] + a * b
            return UPoly(self.field, out)
        return UPoly(self.field, [x * other for x in self.c])

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly(self.field, [other])

    def monic(self):
        if self.is_zero() or self.lc() == 1:
            return self
        inv = self.lc().inverse()
        return UPoly(self.field, [x * inv for x in self.c])

    def divmod(self, other):
        assert not other.is_zero()
        rem = list(self.c)
        db, da = other.degree, self.degree
        if da < db:
            return UPoly(self.field, [0]), self
        inv = other.lc().inverse()
        q = [self.field.zero] * (da - db + 1)
        for i in range(da - db, -1, -1):
            coef = rem[i + db] * inv
            if not coef.is_zero():
                q[i] = coef
                for j in range(db + 1):
                    rem[i + j] = rem[i + j] - coef * other.c[j]
        return UPoly(self.field, q), UPoly(self.field, rem[:db] or [0])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self):
        if self.degree <= 0:
            return UPoly(self.field, [0])
        return UPoly(self.field,
                     [self.c[i] * i for i in range(1, len(self.c))])

    def shift_mul_x(self, k=1):
        return UPoly(self.field, [self.field.zero] * k + list(self.c))

    # -- evaluation -----------------------------------------------------------

    def eval_rational(self, q):
        q = QQ(q)
        acc = self.field.zero
        for coef in reversed(self.c):
            acc = acc * q + coef
        return acc

    def eval_elem(self, x):
        acc = self.field.zero
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def sign_at(self, q):
        return self.eval_rational(q).sign()

    def eval_interval(self, iv, eps):
        """Certified enclosure of p over the rational interval iv."""
        from .rationals import iv_add, iv_mul
        n = len(self.c)
        e = QQ(eps) / max(1, 2 * n)
        acc = self.c[-1].interval(e)
        for i in range(n - 2, -1, -1):
            acc = iv_mul(acc, iv)
            acc = iv_add(acc, self.c[i].interval(e))
        return acc

    # -- gcd and squarefree ----------------------------------------------------

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, (a % b)
        if a.is_zero():
            return a
        return a.monic()

    def squarefree(self):
        if self.degree <= 1:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return (self // g).monic()

    # -- Sturm machinery ---------------------------------------------------------

    def sturm_chain(self):
        chain = [self, self.derivative()]
        while chain[-1].degree > 0:
            r = chain[-2] % chain[-1]
            if r.is_zero():
                break
            r = -r
            # scale by a positive constant only, to keep the Sturm property
            s = r.lc().sign()
            inv = (r.lc() * s).inverse()
            chain.append(r * inv)
        if chain[-1].is_zero():
            chain.pop()
        return chain

    @staticmethod
    def _variations(signs):
        v = 0
        prev = 0
        for s in signs:
            if s == 0:
                continue
            if prev and s != prev:
                v += 1
            prev = s
        return v

    def count_roots(self, a, b, chain=None):
        """Number of distinct roots in (a, b]; requires squarefree self."""
        chain = chain or self.sturm_chain()
        va = self._variations([p.sign_at(a) for p in chain])
        vb = self._variations([p.sign_at(b) for p in chain])
        return va - vb

    def isolate_roots(self, a, b):
        """Isolating intervals for the roots of a squarefree p in [a, b].

        Returns a list of (lo, hi) rational pairs, sorted, each containing
        exactly one root; a degenerate pair (q, q) flags a rational root.
        Endpoint roots at a or b are included.
        """
        a, b = QQ(a), QQ(b)
        assert not self.is_zero()
        if self.degree == 0:
            return []
        chain = self.sturm_chain()
        out = []
        if self.sign_at(a) == 0:
            out.append((a, a))
        if self.sign_at(b) == 0 and b != a:
            out.append((b, b))
        # shrink endpoints to non-roots
        step = (b - a) / 64
        lo, hi = a, b
        while self.sign_at(lo) == 0:
            lo += step
            step /= 2
        step = (b - a) / 64
        while self.sign_at(hi) == 0:
            hi -= step
            step /= 2
        if lo < hi:
            out.extend(self._isolate(lo, hi, chain))
        out.sort(key=lambda iv: (iv[0], iv[1]))
        return out

    def _isolate(self, a, b, chain):
        n = self.count_roots(a, b, chain)
        if n == 0:
            return []
        if n == 1:
            return [(a, b)]
        mid = (a + b) / 2
        if self.sign_at(mid) == 0:
            delta = (b - a) / 4
            while True:
                if (self.sign_at(mid - delta) != 0
                        and self.sign_at(mid + delta) != 0
                        and self.count_roots(mid - delta, mid + delta,
                                             chain) == 1):
                    break
                delta /= 2
            return (self._isolate(a, mid - delta, chain) + [(mid, mid)]
                    + self._isolate(mid + delta, b, chain))
        return self._isolate(a, mid, chain) + self._isolate(mid, b, chain)

    def refine(self, lo, hi, eps):
        """Shrink an isolating interval to width <= eps by bisection."""
        from .rationals import dyadic_floor
        eps = QQ(eps)
        if lo == hi:
            return (lo, hi)
        slo = self.sign_at(lo)
        while hi - lo > eps:
            # bisect at a dyadic point so the endpoint heights stay
            # proportional to the achieved precision
            width = hi - lo
            inv = 4 / width
            bits = int(inv.numerator // inv.denominator).bit_length()
            mid = dyadic_floor((lo + hi) / 2, bits)
            if not lo < mid < hi:
                mid = (lo + hi) / 2
            sm = self.sign_at(mid)
            if sm == 0:
                # landed on the root; return a tight symmetric interval
                return (mid, mid)
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return (lo, hi)

    def root_bound(self):
        """Cauchy bound on the absolute value of any real root."""
        lc_iv = self.lc().interval(QQ(1, 16))
        m = Q0
        for coef in self.c[:-1]:
            iv = coef.interval(QQ(1, 16))
            m = max(m, abs(iv[0]), abs(iv[1]))
        denom = min(abs(lc_iv[0]), abs(lc_iv[1]))
        if denom == 0:
            # leading coefficient interval straddles; refine via sign
            s = self.lc().sign()
            assert s != 0
            lc_iv = self.lc().interval(QQ(1, 1 << 20))
            denom = min(abs(lc_iv[0]), abs(lc_iv[1]))
        return 1 + m / denom

    def isolate_all_roots(self):
        bound = self.root_bound()
        return self.isolate_roots(-bound, bound)

    def xgcd(self, other):
        """Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic."""
        zero = UPoly(self.field, [0])
        one = UPoly(self.field, [1])
        r0, r1 = self, other
        s0, s1 = one, zero
        t0, t1 = zero, one
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = r0.lc().inverse()
        return r0 * inv, s0 * inv, t0 * inv

    def resultant(self, other):
        """Resultant of self and other, as a field element."""
        f, g = self, other
        if f.is_zero() or g.is_zero():
            return self.field.zero
        res = self.field.one
        while g.degree > 0:
            r = f % g
            if r.is_zero():
                return self.field.zero
            res = res * (g.lc() ** (f.degree - r.degree)) \
                * self.field.elem((-1) ** (f.degree * g.degree))
            f, g = g, r
        return res * g.c[0] ** f.degree

    def compose_scale_shift(self, s, t):
        """p(s*x + t) for rational s, t."""
        out = UPoly(self.field, [self.c[-1]])
        lin = UPoly(self.field, [t, s])
        for coef in reversed(self.c[:-1]):
            out = out * lin + UPoly(self.field, [coef])
        return out

    def __repr__(self):
        return "UPoly(deg %d)" % self.degree
