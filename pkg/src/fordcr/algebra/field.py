"""Real number fields Q(theta) with exact sign determination.

A field is presented by a monic irreducible polynomial m over Q together
with an isolating interval with rational endpoints that pins down which
real root theta is meant.  Elements are coefficient vectors in the power
basis 1, theta, ..., theta^(n-1); equality with zero is decidable by
inspecting the vector, and the sign of a nonzero element is obtained by
interval evaluation, refining the isolating interval until zero is
excluded.
"""

from .rationals import (QQ, Q0, Q1, qq, dyadic_floor, exact_sqrt, iv_add,
                        iv_mul, iv_scale, iv_sign, iv_width, sqrt_bounds)


class RealField:
    """Q(theta) for a designated real root theta of a monic m in Q[x]."""

    def __init__(self, minpoly, interval, gens=None, label=None):
        minpoly = tuple(QQ(c) for c in minpoly)
        assert minpoly[-1] == 1, "minimal polynomial must be monic"
        self.minpoly = minpoly
        self.degree = len(minpoly) - 1
        self._lo = QQ(interval[0])
        self._hi = QQ(interval[1])
        self.label = label or "Q(theta)"
        # reduction table: theta^(n+k) as vectors, k = 0 .. n-2
        n = self.degree
        red = []
        if n > 1:
            cur = [-c for c in minpoly[:-1]]  # theta^n
            red.append(tuple(cur))
            for _ in range(n - 2):
                cur = [Q0] + cur[:-1], cur[-1]
                shifted, top = cur
                cur = [shifted[i] + top * red[0][i] for i in range(n)]
                red.append(tuple(cur))
        self._red = red
        # coarse-to-fine ladder of past enclosures; interval evaluation
        # picks the cheapest level that meets the requested width instead
        # of always paying for the finest endpoints reached so far
        self._levels = [(self._lo, self._hi)]
        self._khint = 0
        self._parent = None
        self._gens = {}
        if gens:
            for name, vec in gens.items():
                self._gens[name] = self.elem(vec)
        # sanity: m must change sign over the isolating interval (or deg 1)
        if n > 1:
            slo = self._eval_m_sign(self._lo)
            shi = self._eval_m_sign(self._hi)
            assert slo != 0 and shi != 0 and slo != shi, \
                "interval does not isolate a root"

    # -- construction -------------------------------------------------------

    @classmethod
    def rationals(cls):
        return cls((Q0, Q1), (0, 0), label="Q")

    def adjoin_sqrt(self, g, new_name, label=None):
        """The field self(sqrt(g)) for a positive element g of self.

        Returns the new field; its named generators are the images of all
        generators of self together with new_name mapped to the positive
        square root of g.  If g is a rational square the field is unchanged
        apart from gaining the new generator name.

        The primitive element is t = sqrt(g) + k * theta for the smallest
        k >= 0 making the characteristic polynomial of multiplication by t
        squarefree; everything is computed with exact rational arithmetic.
        """
        gq = g.as_rational()
        if gq is not None:
            r = exact_sqrt(gq)
            if r is not None:
                self._gens[new_name] = self.elem(r)
                return self
        assert g.sign() > 0, "can only adjoin square roots of positive elements"
        n = self.degree
        N = 2 * n
        # theta^(i+1) as a vector, for i = 0 .. n-1
        shift = []
        for i in range(n):
            if i + 1 < n:
                vec = [Q0] * n
                vec[i + 1] = Q1
            else:
                vec = list(self._red[0]) if n > 1 else \
                    [-self.minpoly[0]]
            shift.append(vec)
        for k in range(64):
            # multiplication by t = w + k*theta on the basis
            # theta^0..theta^(n-1), theta^0*w..theta^(n-1)*w
            M = [[Q0] * N for _ in range(N)]
            for i in range(n):
                M[n + i][i] = Q1
                gi = [Q0] * n
                gi[i] = Q1
                gprod = self._mul_vecs(g.c, tuple(gi))
                for j in range(n):
                    M[j][n + i] += gprod[j]
                if k:
                    for j in range(n):
                        M[j][i] += k * shift[i][j]
                        M[n + j][n + i] += k * shift[i][j]
            mono = _charpoly_newton(M)
            if _is_squarefree(mono):
                break
        else:  # pragma: no cover
            raise ValueError("no squarefree primitive element found")
        from .upoly import UPoly
        qf = RealField.rationals()
        mq = UPoly(qf, [qf.elem(c) for c in mono])
        # isolating interval for t from intervals of theta and sqrt(g)
        eps = QQ(1, 16)
        while True:
            glo, ghi = self._interval_of(g.c, eps)
            if glo > 0:
                wlo, _ = sqrt_bounds(glo)
                _, whi = sqrt_bounds(ghi)
                tiv = iv_add((wlo, whi), iv_scale(self.root_interval(), k))
                if (mq.sign_at(tiv[0]) != 0 and mq.sign_at(tiv[1]) != 0
                        and mq.count_roots(tiv[0], tiv[1]) == 1):
                    break
            eps /= 1 << 6
            self.refine_root(4)
        fld = RealField(mono, tiv, label=label or self.label)
        # express theta and w in powers of t by solving a linear system
        P = [[Q0] * N for _ in range(N)]
        col = [Q1] + [Q0] * (N - 1)
        for j in range(N):
            for i in range(N):
                P[i][j] = col[i]
            col = [sum(M[i][l] * col[l] for l in range(N)) for i in range(N)]
        theta_t = _solve_rational(P, [Q1 if i == 1 else Q0 for i in range(N)])
        w_t = _solve_rational(P, [Q1 if i == n else Q0 for i in range(N)])
        theta_new = fld.elem(theta_t)
        fld._parent = (self, theta_new)
        for name, gen in self._gens.items():
            img = fld.zero
            for i in reversed(range(n)):
                img = img * theta_new + fld.elem(gen.c[i])
            fld._gens[name] = img
        fld._gens[new_name] = fld.elem(w_t)
        return fld

    def embed_from(self, other, x):
        """Map x, an element of other, into self.

        Requires self to have been obtained from other by a chain of
        adjoin_sqrt calls; the chain is walked through the stored images
        of each intermediate primitive element.
        """
        chain = []
        f = self
        while f is not other:
            if f._parent is None:
                raise ValueError("fields are not related by adjoin_sqrt")
            f, theta_img = f._parent
            chain.append(theta_img)
        for theta_img in reversed(chain):
            fld = theta_img.field
            acc = fld.zero
            for c in reversed(x.c):
                acc = acc * theta_img + fld.elem(c)
            x = acc
        return x

    # -- basic access -------------------------------------------------------

    def elem(self, coeffs):
        n = self.degree
        vec = [Q0] * n
        if isinstance(coeffs, (list, tuple)):
            assert len(coeffs) <= n
            for i, c in enumerate(coeffs):
                vec[i] = QQ(c)
        else:
            vec[0] = QQ(coeffs)
        return Elem(self, tuple(vec))

    def rational(self, num, den=1):
        return self.elem(qq(num, den))

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    def gen(self, name):
        return self._gens[name]

    def theta(self):
        if self.degree == 1:
            return self.zero
        vec = [Q0] * self.degree
        vec[1] = Q1
        return Elem(self, tuple(vec))

    def gen_names(self):
        return sorted(self._gens)

    # -- root interval management ------------------------------------------

    def _eval_m_sign(self, q):
        acc = Q0
        for c in reversed(self.minpoly):
            acc = acc * q + c
        return (acc > 0) - (acc < 0)

    def refine_root(self, steps=1):
        for _ in range(steps):
            if self._lo == self._hi:
                return
            width = self._hi - self._lo
            # bisect at a dyadic point so endpoint heights track the
            # achieved precision instead of the iteration count
            inv = 4 / width
            bits = int(inv.numerator // inv.denominator).bit_length()
            mid = dyadic_floor((self._lo + self._hi) / 2, bits)
            if not self._lo < mid < self._hi:
                mid = (self._lo + self._hi) / 2
            s = self._eval_m_sign(mid)
            if s == 0:
                # rational root; can only happen in degree 1 setups
                self._lo = self._hi = mid
                return
            if s == self._eval_m_sign(self._lo):
                self._lo = mid
            else:
                self._hi = mid
        last = self._levels[-1]
        if (last[1] - last[0]) > (self._hi - self._lo) * 256:
            self._levels.append((self._lo, self._hi))

    def root_interval(self, eps=None):
        if eps is not None:
            while self._hi - self._lo > eps:
                self.refine_root()
        return (self._lo, self._hi)

    # -- element level helpers ----------------------------------------------

    def _mul_vecs(self, a, b):
        n = self.degree
        if n == 1:
            return (a[0] * b[0],)
        prod = [Q0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                row = self._red[k - n]
                for i in range(n):
                    out[i] += c * row[i]
        return tuple(out)

    def _horner_iv(self, vec, th):
        n = self.degree
        acc = (vec[n - 1], vec[n - 1])
        for i in range(n - 2, -1, -1):
            acc = iv_mul(acc, th)
            acc = iv_add(acc, (vec[i], vec[i]))
        return acc

    def _interval_of(self, vec, eps):
        n = self.degree
        if n == 1:
            return (vec[0], vec[0])
        levels = self._levels
        k = min(self._khint, len(levels) - 1)
        first = True
        while True:
            if k >= len(levels):
                if (self._lo, self._hi) != levels[-1]:
                    levels.append((self._lo, self._hi))
                else:
                    self.refine_root(4)
                    levels.append((self._lo, self._hi))
            th = levels[k]
            acc = self._horner_iv(vec, th)
            w = iv_width(acc)
            if w <= eps:
                # drift the starting level back toward coarse so later
                # low-precision queries stay cheap
                self._khint = max(k - 1, 0) if first else k
                return acc
            first = False
            # skip ladder levels that cannot be fine enough
            k += 1
            thw = th[1] - th[0]
            if thw > 0 and w > 0:
                want = thw * eps / w
                while k < len(levels) - 1 and \
                        levels[k][1] - levels[k][0] > want:
                    k += 1

    def _sign_of(self, vec):
        if all(c == 0 for c in vec):
            return 0
        if self.degree == 1:
            return 1 if vec[0] > 0 else -1
        eps = QQ(1, 16)
        while True:
            iv = self._interval_of(vec, eps)
            s = iv_sign(iv)
            if s is not None:
                return s
            eps /= 1 << 8

    def __repr__(self):
        return "RealField(%s, deg %d)" % (self.label, self.degree)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)


def _charpoly_newton(M):
    """Characteristic polynomial (ascending, monic) of a rational matrix.

    Newton's identities on the power sum traces; all divisions are by
    integers so the computation stays in Q.
    """
    N = len(M)
    powers = M
    traces = []
    for i in range(N):
        traces.append(sum(powers[j][j] for j in range(N)))
        if i + 1 < N:
            powers = [[sum(powers[r][l] * M[l][c] for l in range(N))
                       for c in range(N)] for r in range(N)]
    e = [Q1]
    for kk in range(1, N + 1):
        s = Q0
        sign = 1
        for i in range(1, kk + 1):
            s += sign * e[kk - i] * traces[i - 1]
            sign = -sign
        e.append(s / kk)
    mono = [Q0] * (N + 1)
    for kk in range(N + 1):
        mono[N - kk] = e[kk] if kk % 2 == 0 else -e[kk]
    return mono


def _is_squarefree(mono):
    d = _trim([i * c for i, c in enumerate(mono)][1:])
    a, b = _trim(list(mono)), d
    while _deg(b) > 0:
        _, r = _qq_divmod(a, b)
        a, b = b, _trim(r)
    return b != [Q0]


def _solve_rational(A, rhs):
    """Solve A x = rhs exactly over Q (A square, invertible)."""
    N = len(A)
    M = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(N):
        piv = next(r for r in range(col, N) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        inv = Q1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(N):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][N] for r in range(N)]


class Elem:
    """An element of a RealField, as a power-basis coefficient vector."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, Elem):
            assert other.field is self.field
            return other
        return self.field.elem(QQ(other))

    def __add__(self, other):
        o = self._coerce(other)
        return Elem(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Elem(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Elem(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, Elem):
            assert other.field is self.field
            return Elem(self.field, self.field._mul_vecs(self.c, other.c))
        q = QQ(other)
        return Elem(self.field, tuple(a * q for a in self.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Elem):
            return self * other.inverse()
        q = QQ(other)
        return Elem(self.field, tuple(a / q for a in self.c))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        assert k >= 0
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        n = self.field.degree
        if n == 1:
            return self.field.elem(Q1 / self.c[0])
        m = list(self.field.minpoly)
        a = list(self.c)
        # extended gcd of a and m in Q[x]; gcd is a nonzero constant
        r0, r1 = m, _trim(a)
        s0, s1 = [Q0], [Q1]
        t0 = [Q1]
        while _deg(r1) > 0:
            q, r = _qq_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        assert r1 and r1 != [Q0], "minimal polynomial is not irreducible"
        inv_c = Q1 / r1[0]
        vec = [c * inv_c for c in s1]
        vec = vec[:n] + [Q0] * max(0, n - len(vec))
        # reduce mod m just in case (deg(s1) < deg(m) always holds here)
        return Elem(self.field, tuple(vec[:n]))

    # -- decision procedures -------------------------------------------------

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def sign(self):
        return self.field._sign_of(self.c)

    def interval(self, eps=QQ(1, 1 << 30)):
        return self.field._interval_of(self.c, QQ(eps))

    def __eq__(self, other):
        if isinstance(other, Elem):
            if other.field is not self.field:
                return NotImplemented
            return self.c == other.c
        try:
            q = QQ(other)
        except TypeError:
            return NotImplemented
        return self == self.field.elem(q)

    def __hash__(self):
        return hash(self.c)

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        lo, hi = self.interval(QQ(1, 1 << 60))
        return float((lo + hi) / 2)

    def as_rational(self):
        """Return the element as a rational if it is one, else None."""
        if all(a == 0 for a in self.c[1:]):
            return self.c[0]
        return None

    def __repr__(self):
        q = self.as_rational()
        if q is not None:
            return "El(%s)" % q
        return "El(%s ~ %.6f)" % (list(self.c), float(self))


# -- small helpers for Q[x] used by Elem.inverse -----------------------------

def _deg(p):
    return len(p) - 1


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qq_divmod(a, b):
    a = list(a)
    b = _trim(b)
    q = [Q0] * max(1, len(a) - len(b) + 1)
    inv = Q1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    return _trim(q), _trim(a[:len(b) - 1] or [Q0])


def _poly_mul(a, b):
    out = [Q0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Q0] * (n - len(a))
    b = list(b) + [Q0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])
