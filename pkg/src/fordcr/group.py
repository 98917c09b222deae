"""The twist parabolic family of representations into SU(2,1).

Generators are the upper/lower triangular parabolic matrices

    G1 = [[l, a, b], [0, conj(l)^2, c], [0, 0, l]],
    G3 = [[l, 0, 0], [f, conj(l)^2, 0], [e, d, l]],

preserving the antidiagonal Hermitian form <V, W> = V1 conj(W3)
+ V2 conj(W2) + V3 conj(W1), with G2 = [G3, G1^-1].  The unit parameter
is l = (1 + s i)^2 / (1 + s^2) for rational s, so l is an exact rational
point of the circle; the remaining entries live in the real field
Q(sqrt(1+s^2), sqrt(8k-1), a) where k = (l^3 + conj(l)^3)/2.
"""

from .algebra.rationals import QQ
from .algebra.field import RealField
from .algebra.cx import Cx

WORD_LETTERS = {"1": 1, "2": 2, "3": 3}


def parse_word(text):
    """Word syntax: digits with optional bars, e.g. '2 1 1' or '\\bar1 2 1'.

    A digit optionally preceded by '-' means the inverse generator.
    """
    out = []
    i = 0
    text = text.replace("\\bar", "-").replace(" ", "")
    while i < len(text):
        ch = text[i]
        if ch == "-":
            out.append(-int(text[i + 1]))
            i += 2
        else:
            out.append(int(ch))
            i += 1
    return tuple(out)


def word_name(word):
    return "".join(str(t) if t > 0 else "̅%d" % -t for t in word)


class Mat3:
    """Exact 3x3 matrices over Cx pairs."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        assert len(self.rows) == 3 and all(len(r) == 3 for r in self.rows)

    @property
    def field(self):
        return self.rows[0][0].field

    def __mul__(self, other):
        if isinstance(other, Mat3):
            a, b = self.rows, other.rows
            return Mat3([[sum((a[i][k] * b[k][j] for k in range(1, 3)),
                              a[i][0] * b[0][j])
                          for j in range(3)] for i in range(3)])
        # column vector
        a = self.rows
        return tuple(sum((a[i][k] * other[k] for k in range(1, 3)),
                         a[i][0] * other[0]) for i in range(3))

    def det(self):
        a = self.rows
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))

    def adjugate(self):
        a = self.rows
        def c(i1, i2, j1, j2):
            return a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]
        return Mat3([
            [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
            [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
            [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
        ])

    def inverse(self):
        d = self.det()
        adj = self.adjugate()
        if d == 1:
            return adj
        dinv = 1 / d
        return Mat3([[e * dinv for e in row] for row in adj.rows])

    def conj_transpose(self):
        a = self.rows
        return Mat3([[a[j][i].conj() for j in range(3)] for i in range(3)])

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def __sub__(self, other):
        return Mat3([[x - y for x, y in zip(r1, r2)]
                     for r1, r2 in zip(self.rows, other.rows)])

    def __eq__(self, other):
        return isinstance(other, Mat3) and all(
            x == y for r1, r2 in zip(self.rows, other.rows)
            for x, y in zip(r1, r2))

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)

    def scalar_factor_of(self, other):
        """If self = z * other for a scalar z, return z, else None."""
        z = None
        for i in range(3):
            for j in range(3):
                if not other.rows[i][j].is_zero():
                    z = self.rows[i][j] / other.rows[i][j]
                    break
            if z is not None:
                break
        if z is None:
            return None
        for i in range(3):
            for j in range(3):
                if not (self.rows[i][j] - z * other.rows[i][j]).is_zero():
                    return None
        return z

    def __repr__(self):
        return "Mat3(%s)" % (self.rows,)


def herm(V, W):
    """<V, W> = V1 conj(W3) + V2 conj(W2) + V3 conj(W1)."""
    return V[0] * W[2].conj() + V[1] * W[1].conj() + V[2] * W[0].conj()


def box(p, q):
    """Hermitian cross product: <box(p,q), p> = <box(p,q), q> = 0."""
    pc = [v.conj() for v in p]
    qc = [v.conj() for v in q]
    cross = (pc[1] * qc[2] - pc[2] * qc[1],
             pc[2] * qc[0] - pc[0] * qc[2],
             pc[0] * qc[1] - pc[1] * qc[0])
    # the form matrix is the antidiagonal permutation
    return (cross[2], cross[1], cross[0])


class ParameterError(ValueError):
    """The requested twist parameter is outside the admissible range."""


class Representation:
    """Exact matrices for one member of the twist parabolic family."""

    def __init__(self, s):
        s = QQ(s)
        self.s = s
        self._build()

    def _build(self):
        s = self.s
        den = 1 + s * s
        lam_re = (1 - s * s) / den
        lam_im = 2 * s / den
        # kappa = Re(lambda^3) is rational
        kre, kim = lam_re, lam_im
        # lambda^3 via two complex multiplications on rationals
        r2 = lam_re * kre - lam_im * kim
        i2 = lam_re * kim + lam_im * kre
        r3 = lam_re * r2 - lam_im * i2
        kappa = r3
        self.kappa = kappa
        if 8 * kappa - 1 <= 0:
            raise ParameterError("kappa <= 1/8 at s = %s" % s)
        # the coefficient field is built as a tower of real quadratic
        # extensions: sigma = sqrt(1+s^2), tau = sqrt(8 kappa - 1), and
        # alpha = a itself, whose square lives in Q(sigma, tau)
        label = "l_s(s=%s)" % s
        field = RealField.rationals()
        field = field.adjoin_sqrt(field.elem(den), "sigma", label=label)
        field = field.adjoin_sqrt(field.elem(8 * kappa - 1), "tau",
                                  label=label)
        sigma = field.gen("sigma")
        tau = field.gen("tau")
        lin = field.elem(1 - 3 * s * s)
        odd = tau * field.elem(s * (3 - s * s))
        sig3 = (sigma * sigma * sigma).inverse()
        asq = (lin + odd) * sig3
        dsq = (lin - odd) * sig3
        if asq.sign() <= 0 or dsq.sign() <= 0:
            raise ParameterError("a or d leaves the real axis at s = %s" % s)
        field = field.adjoin_sqrt(asq, "alpha", label=label)
        sigma = field.gen("sigma")
        tau = field.gen("tau")
        a = field.gen("alpha")
        self.field = field
        self.sigma = sigma
        self.tau = tau
        one = field.one

        def C(re, im=0):
            re = re if hasattr(re, "field") else field.elem(re)
            im = im if hasattr(im, "field") else field.elem(im)
            return Cx(re, im)

        lam = C(lam_re, lam_im)
        self.lam = lam
        d = field.elem(2 * kappa - 1) / a
        scale = sigma / field.elem(2 * den)
        b = C(-(one + tau * s) * scale, -(tau - field.elem(s)) * scale)
        e = C(-(one - tau * s) * scale, (tau + field.elem(s)) * scale)
        c = -(C(a) * lam.conj())
        f = -(C(d) * lam.conj())
        self.a, self.b, self.d, self.e = C(a), b, C(d), e
        self.c, self.f = c, f
        zero = C(0)
        lb2 = lam.conj() * lam.conj()
        self.G1 = Mat3([[lam, C(a), b], [zero, lb2, c], [zero, zero, lam]])
        self.G3 = Mat3([[lam, zero, zero], [f, lb2, zero], [e, C(d), lam]])
        g1i = self.G1.inverse()
        g3i = self.G3.inverse()
        self.G2 = self.G3 * g1i * g3i * self.G1
        self._inv = {1: g1i, 2: self.G2.inverse(), 3: g3i}
        self._gen = {1: self.G1, 2: self.G2, 3: self.G3}
        self.p0 = (C(1), zero, zero)

    # -- the defining five equation system ------------------------------------

    def system_residuals(self):
        """The five defining equations; all must be exactly zero."""
        lam, a, b, d, e = self.lam, self.a, self.b, self.d, self.e
        two_kappa = self.field.elem(2 * self.kappa)
        res = [
            a * a + b.conj() * lam + b * lam.conj(),
            d * d + e.conj() * lam + e * lam.conj(),
            Cx(self.field.one) + a * d - Cx(two_kappa),
            e * b * lam - Cx(two_kappa),
            Cx(b.norm2() - two_kappa),
        ]
        return res

    # -- words -----------------------------------------------------------------

    def matrix(self, word):
        if isinstance(word, str):
            word = parse_word(word)
        m = None
        for t in word:
            g = self._gen[t] if t > 0 else self._inv[-t]
            m = g if m is None else m * g
        if m is None:
            one = Cx(self.field.one)
            zero = Cx(self.field.zero)
            m = Mat3([[one, zero, zero], [zero, one, zero], [zero, zero, one]])
        return m

    def identity(self):
        return self.matrix(())

    def projectively_equal(self, m1, m2):
        """m1 = z m2 with |z| = 1."""
        z = m1.scalar_factor_of(m2)
        if z is None:
            return False
        return (z.norm2() - 1).is_zero()

    def preserves_form(self, m):
        """m* J m = J, with J the antidiagonal form."""
        J = [(2, 0), (1, 1), (0, 2)]
        mc = m.conj_transpose()
        # compute m* J m explicitly: (m* J m)_{ij} = sum_k conj(m_{ki'}) ...
        # simpler: check <m v, m w> = <v, w> on the standard basis
        field = self.field
        basis = []
        for i in range(3):
            v = [Cx(field.zero)] * 3
            v[i] = Cx(field.one)
            basis.append(tuple(v))
        for v in basis:
            for w in basis:
                if not (herm(m * v, m * w) - herm(v, w)).is_zero():
                    return False
        return True

    def verify_relations(self):
        """Exact checks of the group relations; returns a dict of booleans."""
        G1, G2, G3 = self.G1, self.G2, self.G3
        ident = self.identity()
        out = {}
        out["commutator"] = (G2 - self.matrix((3, -1, -3, 1))).is_zero()
        out["g1g2=g2g3"] = (G1 * G2 - G2 * G3).is_zero()
        out["g2^4"] = self.projectively_equal(self.matrix((2, 2, 2, 2)), ident)
        out["(g1g2)^3"] = self.projectively_equal(
            self.matrix((1, 2, 1, 2, 1, 2)), ident)
        out["(g2g1g2)^3"] = self.projectively_equal(
            self.matrix((2, 1, 2) * 3), ident)
        out["form_g1"] = self.preserves_form(G1)
        out["form_g3"] = self.preserves_form(G3)
        return out

    def traces(self):
        return {"tr(G2)": self.G2.trace(),
                "tr(G1G2)": (self.G1 * self.G2).trace(),
                "tr(G2G1G2)": (self.G2 * self.G1 * self.G2).trace()}

    # -- fixed points -----------------------------------------------------------

    def fixed_point(self, word):
        """The isolated (negative) fixed point of an elliptic word.

        Looks for a rank-one eigenspace with unit eigenvalue in Q(i) whose
        eigenvector has negative square norm.
        """
        m = self.matrix(word)
        field = self.field
        cands = [Cx(field.one), Cx(-field.one),
                 Cx(field.zero, field.one), Cx(field.zero, -field.one),
                 self.lam, self.lam.conj()]
        for z in cands:
            shifted = Mat3([[m.rows[i][j] - (z if i == j else 0 * z)
                             for j in range(3)] for i in range(3)])
            vec = _kernel_vector(shifted)
            if vec is None:
                continue
            if herm(vec, vec).re.sign() < 0:
                return vec
        raise ValueError("no negative eigenvector with small unit eigenvalue")

    def parabolic_eigenvalues(self, word):
        """Eigenvalue data certifying that a triangular word is parabolic.

        Returns (eigenvalues on the diagonal, is_parabolic); only valid
        for matrices that are exactly triangular.
        """
        m = self.matrix(word)
        rows = m.rows
        lower = all(rows[i][j].is_zero() for i in range(3)
                    for j in range(3) if j > i)
        upper = all(rows[i][j].is_zero() for i in range(3)
                    for j in range(3) if j < i)
        if not (lower or upper):
            raise ValueError("word is not triangular; eigenvalues not read off")
        diag = [rows[i][i] for i in range(3)]
        distinct = []
        for dv in diag:
            if not any((dv - other).is_zero() for other in distinct):
                distinct.append(dv)
        # not diagonalizable <=> prod over distinct eigenvalues (m - d) != 0
        field = self.field
        one, zero = Cx(field.one), Cx(field.zero)
        prod = Mat3([[one, zero, zero], [zero, one, zero], [zero, zero, one]])
        for dv in distinct:
            shift = Mat3([[m.rows[i][j] - (dv if i == j else zero)
                           for j in range(3)] for i in range(3)])
            prod = prod * shift
        return diag, not prod.is_zero()


def _kernel_vector(m):
    """A nonzero kernel vector of a rank-2 exact matrix, or None."""
    rows = [list(r) for r in m.rows]
    field = m.field
    zero = Cx(field.zero)
    one = Cx(field.one)
    # Gaussian elimination
    cols_used = []
    pivots = []
    r = 0
    for c in range(3):
        piv = None
        for i in range(r, 3):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(3):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == 3:
            return None
    free = [c for c in range(3) if c not in pivots]
    if not free:
        return None
    c = free[0]
    vec = [zero, zero, zero]
    vec[c] = one
    for i, pc in enumerate(pivots):
        vec[pc] = -rows[i][c]
    return tuple(vec)


def bisector_word(index):
    """The group word for bisector number `index` (1-based).

    Words come in blocks of four (2, -2, 3, -3) conjugated by powers of G1,
    powers ordered 0, 1, -1, 2, -2, ...
    """
    assert index >= 1
    block, pos = divmod(index - 1, 4)
    base = [2, -2, 3, -3][pos]
    if block == 0:
        p = 0
    elif block % 2 == 1:
        p = (block + 1) // 2
    else:
        p = -(block // 2)
    if p == 0:
        return (base,)
    conj = (1,) * p if p > 0 else (-1,) * (-p)
    inv = tuple(-t for t in reversed(conj))
    return conj + (base,) + inv


def bisector_index(word):
    """Inverse of bisector_word for words in the standard shape."""
    for i in range(1, 200):
        if bisector_word(i) == tuple(word):
            return i
    raise ValueError("not a standard conjugate word: %s" % (word,))
