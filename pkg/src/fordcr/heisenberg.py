"""Boundary geometry at infinity in Heisenberg coordinates.

The boundary of the complex hyperbolic plane minus the center point of
the Ford domain is identified with C x R via unipotent translations:
the point (a, s) corresponds to the affine boundary point with
z1 = -|a|^2 + i s and z2 = a sqrt(2).  This module provides the group
law, the Cygan metric, spinal spheres of group elements (the boundary
traces of the bounding bisectors), the normalizing conjugation that
puts G1 into translation form, and certified strips along the x axis
used to bound which G1-translates of a sphere can meet another one.
"""

from .algebra.rationals import QQ, Q0, exact_sqrt, sqrt_bounds
from .algebra.cx import Cx
from .algebra.mpoly import MPoly
from .group import Mat3, Representation, parse_word


class HeisPoint:
    """A point (z, t) of the Heisenberg group C x R, exact coordinates."""

    __slots__ = ("z", "t")

    def __init__(self, z, t):
        self.z = z
        self.t = t

    def __eq__(self, other):
        return (self.z - other.z).is_zero() and (self.t - other.t).is_zero()

    def __repr__(self):
        return "HeisPoint(%r, %r)" % (self.z, self.t)

    def floats(self):
        return (float(self.z.re), float(self.z.im), float(self.t))


def heis_mul(p, q):
    """Group law (a,s)*(a',s') = (a+a', s+s'+2 Im(a conj(a')))."""
    cross = p.z * q.z.conj()
    return HeisPoint(p.z + q.z, p.t + q.t + 2 * cross.im)


def heis_inverse(p):
    return HeisPoint(-p.z, -p.t)


def cygan_norm4(p):
    """Fourth power of the Cygan norm ||(z,t)|| = ||z|^2 + it|^(1/2).

    The fourth power |z|^4 + t^2 stays inside the coefficient field,
    so all comparisons of Cygan distances are done on fourth powers.
    """
    n2 = p.z.norm2()
    return n2 * n2 + p.t * p.t


def cygan_distance4(p, q):
    return cygan_norm4(heis_mul(heis_inverse(p), q))


def on_sphere(sphere, p):
    """Exact test that p lies on the given spinal sphere."""
    return (cygan_distance4(sphere.center, p) - sphere.radius4).is_zero()


class SpinalSphere:
    """Boundary sphere of a bounding bisector: Cygan sphere data.

    radius4 is the fourth power of the radius; the radius itself is
    usually irrational (2^(-1/4) for the core spheres of G3), so it is
    only materialized as a certified interval.
    """

    __slots__ = ("center", "radius4", "word")

    def __init__(self, center, radius4, word=None):
        self.center = center
        self.radius4 = radius4
        self.word = word

    def radius_interval(self, eps=QQ(1, 1 << 40)):
        lo4, hi4 = self.radius4.interval(eps)
        lo2, _ = sqrt_bounds(max(lo4, Q0))
        _, hi2 = sqrt_bounds(hi4)
        lo, _ = sqrt_bounds(lo2)
        _, hi = sqrt_bounds(hi2)
        return lo, hi

    def radius_float(self):
        lo, hi = self.radius_interval()
        return float((lo + hi) / 2)

    def strip(self, eps=QQ(1, 1 << 40)):
        """Certified rational bounds [x_min, x_max] containing the sphere.

        The x extent of a Cygan ball is exactly the radius: on the
        sphere (x-a)^4 <= ((x-a)^2+(y-b)^2)^2 <= r^4.
        """
        rlo, rhi = self.radius_interval(eps)
        clo, chi = self.center.z.re.interval(eps)
        return clo - rhi, chi + rhi

    def __repr__(self):
        x, y, t = self.center.floats()
        return "SpinalSphere(center=(%.6f%+.6fi, %.6f), r=%.6f, word=%s)" % (
            x, y, t, self.radius_float(), self.word)


def sphere_equation(sphere, ring_field=None):
    """The defining quartic of a spinal sphere as an MPoly in (x, y, t).

    With center (a+ib, t0) and radius r the equation is

        ((x-a)^2 + (y-b)^2)^2 + (t - t0 + 2(ay - bx))^2 - r^4,

    the shear term 2(ay - bx) being 2 Im(z conj(z0)).
    """
    fld = ring_field or sphere.radius4.field
    a, b = sphere.center.z.re, sphere.center.z.im
    t0 = sphere.center.t
    x = MPoly.variable(fld, 3, 0)
    y = MPoly.variable(fld, 3, 1)
    t = MPoly.variable(fld, 3, 2)
    dx = x - MPoly.constant(fld, 3, a)
    dy = y - MPoly.constant(fld, 3, b)
    horiz = dx * dx + dy * dy
    shear = (t - MPoly.constant(fld, 3, t0)
             + (y * MPoly.constant(fld, 3, 2 * a))
             - (x * MPoly.constant(fld, 3, 2 * b)))
    return horiz * horiz + shear * shear - MPoly.constant(fld, 3,
                                                          sphere.radius4)


CORE_WORDS = ((1, "2"), (2, "-2"), (3, "3"), (4, "-3"))

# Intersection ranges: S_i can meet G1^k S_j only for k in the stated
# closed interval.  translation_disjointness recomputes these with
# certified arithmetic; the table is the expected baseline answer.
PUBLISHED_K_RANGES = {
    (1, 1): (-2, 2), (1, 2): (-4, 1), (1, 3): (-3, 1), (1, 4): (-4, 0),
    (2, 2): (-2, 2), (2, 3): (-2, 2), (2, 4): (-2, 2),
    (3, 3): (-2, 2), (3, 4): (-2, 1), (4, 4): (-2, 2),
}


class BoundaryModel:
    """Heisenberg-normalized coordinates for one representation.

    Extends the coefficient field by 2^(1/4) (needed for the Heisenberg
    rescaling z2 = a sqrt(2) and the core radii), conjugates all group
    matrices so that G2^2 sends the point at infinity to the origin, and
    exposes spinal spheres in the normalized coordinates.
    """

    def __init__(self, rep):
        if not isinstance(rep, Representation):
            rep = Representation(rep)
        self.rep = rep
        label = rep.field.label + "+2^(1/4)"
        fld = rep.field.adjoin_sqrt(rep.field.elem(2), "sqrt2", label=label)
        fld = fld.adjoin_sqrt(fld.gen("sqrt2"), "rt2", label=label)
        self.field = fld
        self.sqrt2 = fld.gen("sqrt2")
        self.rt2 = fld.gen("rt2")
        self._base = rep.field
        self._cache = {}
        self._disjoint = None
        g22 = self._embed_mat(rep.matrix((2, 2)))
        col = tuple(row[0] for row in g22.rows)
        origin_image = self.to_heis(col)
        self.conjugator = self.translation_matrix(heis_inverse(origin_image))
        self._conj_inv = self.conjugator.inverse()

    # -- coordinates ---------------------------------------------------------

    def _embed(self, x):
        return self.field.embed_from(self._base, x)

    def _embed_cx(self, z):
        return Cx(self._embed(z.re), self._embed(z.im))

    def _embed_mat(self, m):
        return Mat3([[self._embed_cx(e) for e in row] for row in m.rows])

    def to_heis(self, vec):
        """Heisenberg coordinates of a homogeneous boundary vector."""
        z3 = vec[2]
        assert not z3.is_zero(), "the point at infinity has no coordinates"
        z1 = vec[0] / z3
        z2 = vec[1] / z3
        assert (2 * z1.re + z2.norm2()).is_zero(), "vector is not on the boundary"
        return HeisPoint(z2 / Cx(self.sqrt2), z1.im)

    def from_heis(self, p):
        """Homogeneous boundary vector of a Heisenberg point."""
        one = Cx(self.field.one)
        z1 = Cx(-p.z.norm2(), p.t)
        return (z1, p.z * Cx(self.sqrt2), one)

    def translation_matrix(self, p):
        """The unipotent matrix translating the origin to p."""
        fld = self.field
        zero, one = Cx(fld.zero), Cx(fld.one)
        a = p.z
        rt = Cx(self.sqrt2)
        return Mat3([[one, -(a.conj() * rt), Cx(-a.norm2(), p.t)],
                     [zero, one, a * rt],
                     [zero, zero, one]])

    # -- normalized matrices and their spheres --------------------------------

    def matrix(self, word):
        """Normalized matrix: the conjugate of the group word."""
        if isinstance(word, str):
            word = parse_word(word)
        if word not in self._cache:
            m = self._embed_mat(self.rep.matrix(word))
            self._cache[word] = self.conjugator * m * self._conj_inv
        return self._cache[word]

    def boundary_action(self, word, p):
        """Image of a Heisenberg point under a normalized group word."""
        vec = self.matrix(word) * self.from_heis(p)
        return self.to_heis(vec)

    def g1_heis_element(self):
        """The Heisenberg element by which G1 acts as a left translation.

        Only meaningful when the normalized G1 is a pure translation
        (the unipotent member of the family); verified exactly, raising
        otherwise.  The x component is -1/sqrt(2): in the rescaled
        coordinates (z, t) = (a sqrt2, s) the action is the unit-step
        map (z, t) -> (z - 1, t + Im z).
        """
        a1 = self.matrix("1")
        origin = HeisPoint(Cx(self.field.zero), self.field.zero)
        h1 = self.to_heis(a1 * self.from_heis(origin))
        if not (a1 - self.translation_matrix(h1)).is_zero():
            raise ValueError("normalized G1 is not a Heisenberg translation")
        return h1

    def g1_translation(self, p):
        """Image of p under G1: left multiplication by g1_heis_element."""
        return heis_mul(self.g1_heis_element(), p)

    def g1_screw_data(self):
        """Exact normal form of G1 as a screw motion about a vertical axis.

        The normalized G1 fixes infinity, so its boundary action is a
        left translation composed with a rotation about the vertical
        axis through the origin: G1 = L_h R_u with |u| = 1.  When u is
        not 1 the axis can be recentered: with c = h_z / (1 - u),

            G1 = T_c (R_u V_tau) T_c^{-1},

        T_c the translation by (c, 0) and V_tau the (central) vertical
        translation by tau.  Returns (axis, u, tau) where axis is the
        HeisPoint (c, 0); the decomposition and the normal form are
        verified by exact identities.  Raises for the translation case
        (u = 1), which g1_heis_element handles.
        """
        a1 = self.matrix("1")
        d1 = a1.rows[0][0]
        u = a1.rows[1][1] / d1
        if (u - Cx(self.field.one)).is_zero():
            raise ValueError("normalized G1 is a translation, not a screw")
        origin = HeisPoint(Cx(self.field.zero), self.field.zero)
        h = self.to_heis(a1 * self.from_heis(origin))
        zero, one = Cx(self.field.zero), Cx(self.field.one)
        rot = Mat3([[one, zero, zero], [zero, u, zero], [zero, zero, one]])
        model = self.translation_matrix(h) * rot
        scaled = Mat3([[e * d1 for e in row] for row in model.rows])
        if not (a1 - scaled).is_zero():
            raise ValueError("normalized G1 is not a Heisenberg screw motion")
        axis = HeisPoint(h.z / (one - u), self.field.zero)
        centered = heis_mul(heis_inverse(axis),
                            self.boundary_action("1", axis))
        assert centered.z.is_zero(), "axis is not fixed by the rotation part"
        tau = centered.t
        assert not tau.is_zero(), "vertical part vanishes: G1 would be elliptic"
        return axis, u, tau

    def g1_step(self):
        """Exact positive x-translation length of G1^(-1), i.e. 1/sqrt(2)."""
        step = -self.g1_heis_element().z.re
        assert step.sign() > 0
        return step

    def spinal_sphere(self, word):
        """The spinal sphere bounding the side of the given word.

        The sphere surrounds the image of infinity under the word, so the
        center/radius formulas are read off the inverse matrix: for
        G = matrix(word)^(-1), the center is (conj(g32)/conj(g31) / sqrt2,
        Im(conj(g33)/conj(g31))) and radius^4 = 1/|g31|^2.
        """
        if isinstance(word, str):
            word = parse_word(word)
        g = self.matrix(word).inverse()
        g31, g32, g33 = g.rows[2]
        if g31.is_zero():
            raise ValueError("element fixes the sphere center; no bisector")
        ratio = g32.conj() / g31.conj()
        center = HeisPoint(ratio / Cx(self.sqrt2), (g33.conj() / g31.conj()).im)
        radius4 = 1 / g31.norm2()
        return SpinalSphere(center, radius4, word)

    def core_spheres(self):
        """S1..S4: the spheres of the four core sides 2, -2, 3, -3."""
        return {idx: self.spinal_sphere(w) for idx, w in CORE_WORDS}

    def disjointness_table(self):
        """Certified k ranges for all ordered pairs of core spheres.

        S_i can meet G1^k S_j only for k in the returned closed range.
        The unipotent member is handled by the x-strip argument; the
        twisted members by vertical separation along the screw axis.
        """
        if getattr(self, "_disjoint", None) is not None:
            return self._disjoint
        spheres = self.core_spheres()
        try:
            axis, u, tau = self.g1_screw_data()
        except ValueError:
            axis = None
        out = {}
        scan = None if axis is None else _ScrewScan(spheres, axis, u, tau)
        for i in range(1, 5):
            for j in range(i, 5):
                if scan is None:
                    out[(i, j)] = translation_disjointness(
                        spheres[i], spheres[j], self.g1_step())
                else:
                    out[(i, j)] = scan.range(i, j)
        self._disjoint = out
        return out


# -- effective disjointness ----------------------------------------------------


def _sign_minus_root4(x, A):
    """Exact sign of x - A^(1/4) for a field element x and positive A."""
    if x.sign() <= 0:
        return -1
    return (x * x * x * x - A).sign()


def _sign_gap(x, A, B):
    """Exact sign of x - A^(1/4) - B^(1/4), A, B positive field elements.

    Handles the cases arising from core sphere radii: either fourth
    root may be rational, and the irrational radii come in equal pairs.
    Anything else is decided by interval refinement (and would only
    fail to terminate on an exact tie, which does not occur here).
    """
    ra = exact_sqrt(A.as_rational()) if A.as_rational() is not None else None
    ra = exact_sqrt(ra) if ra is not None else None
    rb = exact_sqrt(B.as_rational()) if B.as_rational() is not None else None
    rb = exact_sqrt(rb) if rb is not None else None
    if ra is not None and rb is not None:
        return (x - (ra + rb)).sign()
    if ra is not None:
        return _sign_minus_root4(x - ra, B)
    if rb is not None:
        return _sign_minus_root4(x - rb, A)
    if (A - B).is_zero():
        # x - 2 A^(1/4): compare x^4 with 16 A
        if x.sign() <= 0:
            return -1
        return (x * x * x * x - 16 * A).sign()
    eps = QQ(1, 1 << 20)
    for _ in range(12):
        xlo, xhi = x.interval(eps)
        alo, ahi = A.interval(eps)
        blo, bhi = B.interval(eps)
        lo = xlo - _fourth_root_hi(ahi) - _fourth_root_hi(bhi)
        hi = xhi - _fourth_root_lo(alo) - _fourth_root_lo(blo)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        eps *= eps
    raise ArithmeticError("balanced radii sum; refine symbolically")


def _fourth_root_hi(q):
    _, h2 = sqrt_bounds(max(q, Q0))
    _, h = sqrt_bounds(h2)
    return h


def _fourth_root_lo(q):
    l2, _ = sqrt_bounds(max(q, Q0))
    l, _ = sqrt_bounds(l2)
    return l


def translation_disjointness(si, sj, step):
    """Certified integer range (kmin, kmax) outside which S_i and G1^k S_j
    cannot meet.

    step is the exact x-translation length of G1^(-1) (1/sqrt2 in the
    normalized coordinates).  The strips [c_j - r_j - k step,
    c_j + r_j - k step] and [c_i - r_i, c_i + r_i] overlap exactly for
    |D - k step| <= r_i + r_j with D = c_j - c_i; the returned range is
    the set of integers in that interval, decided by exact sign tests
    at the integer boundaries.
    """
    D = sj.center.z.re - si.center.z.re
    A, B = si.radius4, sj.radius4
    dlo, dhi = D.interval(QQ(1, 1 << 30))
    slo, shi = step.interval(QQ(1, 1 << 30))
    rhi = _fourth_root_hi(A.interval()[1]) + _fourth_root_hi(B.interval()[1])
    kmin = min(_int_floor((dlo - rhi) / slo), _int_floor((dlo - rhi) / shi))
    kmax = max(_int_ceil((dhi + rhi) / slo), _int_ceil((dhi + rhi) / shi))
    # k step >= D - (r_i + r_j)  <=>  sign((D - k step) - r_i - r_j) <= 0
    while _sign_gap(D - kmin * step, A, B) > 0:
        kmin += 1
    # k step <= D + (r_i + r_j)  <=>  sign((k step - D) - r_i - r_j) <= 0
    while _sign_gap(kmax * step - D, A, B) > 0:
        kmax -= 1
    return kmin, kmax


def _sign_gap4(D4, A, B):
    """Exact sign of D4^(1/4) - A^(1/4) - B^(1/4) by interval refinement.

    Used for the center-distance test of two Cygan balls: all three
    arguments are fourth powers living in the coefficient field.  An
    exact tie would mean tangent spheres, which does not occur at the
    integer powers scanned here.
    """
    eps = QQ(1, 1 << 20)
    for _ in range(12):
        dlo, dhi = D4.interval(eps)
        alo, ahi = A.interval(eps)
        blo, bhi = B.interval(eps)
        lo = _fourth_root_lo(dlo) - _fourth_root_hi(ahi) - _fourth_root_hi(bhi)
        hi = _fourth_root_hi(dhi) - _fourth_root_lo(alo) - _fourth_root_lo(blo)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        eps *= eps
    raise ArithmeticError("tangent spinal spheres; refine symbolically")


class _ScrewScan:
    """Certified k-range scans for G1 acting as a vertical-axis screw.

    In axis-centered coordinates w = T_axis^(-1) p the powers of G1 act
    as (z, t) -> (u^k z, t + k tau), a Cygan isometry, so G1^k S_j is
    the Cygan ball of radius r_j about m_k = (u^k z_j, t_j + k tau).
    The t component of w_i^(-1) m_k is t_j - t_i + k tau - 2 Im(z_i
    conj(u^k z_j)), so

        dist(w_i, m_k)^4 >= (|k| |tau| - C)^2,
        C = |t_i - t_j| + 2 |z_i| |z_j|,

    which exceeds (r_i + r_j)^4 once |k| |tau| > C + (r_i + r_j)^2.
    Starting from that bound, each range is trimmed inward by certified
    center-distance tests at each integer, run in rational interval
    arithmetic with the exact elements as a fallback.  The centered
    centers and their boxes are shared across all ordered pairs.
    """

    EPS = QQ(1, 1 << 60)

    def __init__(self, spheres, axis, u, tau):
        inv_axis = heis_inverse(axis)
        self.u, self.tau = u, tau
        self.spheres = spheres
        self.w = {i: heis_mul(inv_axis, s.center)
                  for i, s in spheres.items()}
        eps = self.EPS
        self.zbox = {i: (w.z.re.interval(eps), w.z.im.interval(eps))
                     for i, w in self.w.items()}
        self.tbox = {i: w.t.interval(eps) for i, w in self.w.items()}
        self.rbox = {}
        for i, s in spheres.items():
            lo, hi = s.radius4.interval(eps)
            self.rbox[i] = (_fourth_root_lo(lo), _fourth_root_hi(hi))
        self.zhi = {i: _fourth_root_hi(_sq_hi(w.z.norm2(), eps))
                    for i, w in self.w.items()}
        self.ubox = (u.re.interval(eps), u.im.interval(eps))
        self.taubox = tau.interval(eps)
        tlo, thi = self.taubox
        self.tau_lo = tlo if tlo > 0 else -thi
        assert self.tau_lo > 0, "refine tau before bounding the screw range"
        self.upows_box = {0: ((QQ(1), QQ(1)), (QQ(0), QQ(0)))}
        self.upows = {0: Cx(u.re.field.one)}
        self.u_inv = Cx(u.re.field.one) / u

    def range(self, i, j):
        dlo, dhi = _isub(self.tbox[i], self.tbox[j])
        dt_hi = max(dhi, -dlo)
        r_hi = self.rbox[i][1] + self.rbox[j][1]
        k0 = _int_ceil((dt_hi + 2 * self.zhi[i] * self.zhi[j]
                        + r_hi * r_hi) / self.tau_lo)
        rhs = _isq(_isq(_iadd(self.rbox[i], self.rbox[j])))
        kmin, kmax = -k0, k0
        while kmin < kmax and self._disjoint(i, j, kmin, rhs):
            kmin += 1
        while kmax > kmin and self._disjoint(i, j, kmax, rhs):
            kmax -= 1
        return kmin, kmax

    def _u_pow_box(self, k):
        if k not in self.upows_box:
            ux, uy = self.ubox
            if k > 0:
                px, py = self._u_pow_box(k - 1)
                sx, sy = ux, uy
            else:
                px, py = self._u_pow_box(k + 1)
                n2 = _iadd(_isq(ux), _isq(uy))
                assert n2[0] > 0
                inv = (1 / n2[1], 1 / n2[0])
                sx = _imul(ux, inv)
                sy = _imul((-uy[1], -uy[0]), inv)
            self.upows_box[k] = (_isub(_imul(px, sx), _imul(py, sy)),
                                 _iadd(_imul(px, sy), _imul(py, sx)))
        return self.upows_box[k]

    def _u_pow(self, k):
        if k not in self.upows:
            step = self.u if k > 0 else self.u_inv
            self.upows[k] = self._u_pow(k - (1 if k > 0 else -1)) * step
        return self.upows[k]

    def _disjoint(self, i, j, k, rhs):
        (ix, iy), it = self.zbox[i], self.tbox[i]
        (jx, jy), jt = self.zbox[j], self.tbox[j]
        px, py = self._u_pow_box(k)
        mx = _isub(_imul(px, jx), _imul(py, jy))
        my = _iadd(_imul(px, jy), _imul(py, jx))
        mt = _iadd(jt, _imul((QQ(k), QQ(k)), self.taubox))
        zx = _isub(mx, ix)
        zy = _isub(my, iy)
        # t part of wi^(-1) mk: mt - it - 2 Im(wi.z conj(mk.z))
        cross = _isub(_imul(iy, mx), _imul(ix, my))
        tt = _iadd(_isub(mt, it), _imul((QQ(-2), QQ(-2)), cross))
        d4 = _iadd(_isq(_iadd(_isq(zx), _isq(zy))), _isq(tt))
        if d4[0] > rhs[1]:
            return True
        if d4[1] < rhs[0]:
            return False
        # inconclusive box: decide with the exact elements
        wi, wj = self.w[i], self.w[j]
        mk = HeisPoint(self._u_pow(k) * wj.z, wj.t + k * self.tau)
        return _sign_gap4(cygan_distance4(wi, mk),
                          self.spheres[i].radius4,
                          self.spheres[j].radius4) > 0


def _iadd(a, b):
    return a[0] + b[0], a[1] + b[1]


def _isub(a, b):
    return a[0] - b[1], a[1] - b[0]


def _imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _isq(a):
    hi = max(a[0] * a[0], a[1] * a[1])
    lo = QQ(0) if a[0] <= 0 <= a[1] else min(a[0] * a[0], a[1] * a[1])
    return lo, hi


def _sq_hi(x, eps):
    """Rational upper bound for a nonnegative field element's square."""
    hi = x.interval(eps)[1]
    return hi * hi


def _int_floor(q):
    return int(q.numerator) // int(q.denominator)


def _int_ceil(q):
    return -((-int(q.numerator)) // int(q.denominator))


def g1_rescaled_form(z, t):
    """The G1 action in rescaled coordinates (z, t) = (a sqrt2, s):

        (z, t) -> (z - 1, t + Im z).
    """
    one = Cx(z.re.field.one)
    return z - one, t + z.im
