"""Exact solving of bisector restriction systems on the Clifford torus.

Every function we ever restrict to a Giraud chart torus has the shape

    g = c + Re(a z1) + Re(b z2) + Re(d z1 conj(z2)),

with c real and a, b, d complex over the ground field.  Writing
mu(z1) = b + conj(d z1) and nu(z1) = -c - Re(a z1), the equation g = 0
becomes Re(mu(z1) z2) = nu(z1), which is *linear* in (x2, y2).  A pair of
such equations is solved by Cramer's rule; substituting into |z2| = 1 and
reducing modulo x1^2 = 1 - y1^2 leaves A(y1) x1 + B(y1) = 0 and hence the
univariate polynomial A^2 (1 - y1^2) - B^2 of degree at most six.  All
branching (vanishing of A, of the Cramer determinant, of discriminants)
is handled by exact gcd splitting, and every candidate is certified by
back substitution into the original equations.
"""

from .rationals import QQ
from .field import Elem
from .cx import Cx
from .upoly import UPoly
from .mpoly import MPoly
from .points import (PointRing, AlgebraicPoint, NonInvertible, charpoly,
                     alg_equal, sort_points)

# variable order everywhere: (x1, y1, x2, y2)
NV = 4


class DegenerateSystem(Exception):
    """The solution set is not zero dimensional (or the shape is wrong)."""


class TorusFn:
    """c + Re(a z1) + Re(b z2) + Re(d z1 conj(z2)) with exact coefficients."""

    __slots__ = ("c", "a", "b", "d")

    def __init__(self, c, a, b, d):
        assert isinstance(c, Elem)
        self.c = c
        self.a = a
        self.b = b
        self.d = d

    def __neg__(self):
        return TorusFn(-self.c, -self.a, -self.b, -self.d)

    @property
    def field(self):
        return self.c.field

    def as_mpoly(self):
        f = self.field
        t = {}
        t[(0, 0, 0, 0)] = self.c
        def put(m, v):
            t[m] = t.get(m, f.zero) + v
        put((1, 0, 0, 0), self.a.re)
        put((0, 1, 0, 0), -self.a.im)
        put((0, 0, 1, 0), self.b.re)
        put((0, 0, 0, 1), -self.b.im)
        # Re(d z1 conj z2) = d.re (x1 x2 + y1 y2) - d.im (y1 x2 - x1 y2)
        put((1, 0, 1, 0), self.d.re)
        put((0, 1, 0, 1), self.d.re)
        put((0, 1, 1, 0), -self.d.im)
        put((1, 0, 0, 1), self.d.im)
        return MPoly(f, NV, t)

    def mu_nu(self):
        """(mu1, mu2, nu) as MPolys in (x1, y1) embedded in 4 variables."""
        f = self.field
        def mk(const, cx1, cy1):
            return MPoly(f, NV, {(0, 0, 0, 0): const,
                                 (1, 0, 0, 0): cx1,
                                 (0, 1, 0, 0): cy1})
        mu1 = mk(self.b.re, self.d.re, -self.d.im)
        mu2 = mk(self.b.im, -self.d.im, -self.d.re)
        nu = mk(-self.c, -self.a.re, self.a.im)
        return mu1, mu2, nu

    def eval_cx(self, z1, z2):
        """Exact value at complex torus points given as Cx pairs."""
        v = self.c + (Cx(self.a.re, self.a.im) * z1).re \
            + (Cx(self.b.re, self.b.im) * z2).re \
            + (Cx(self.d.re, self.d.im) * z1 * z2.conj()).re
        return v

    def swap(self):
        """The same function with the roles of z1 and z2 exchanged."""
        return TorusFn(self.c, self.b, self.a, self.d.conj())

    def crit_eqs(self):
        """The two critical point equations, as TorusFn instances.

        d g / d t1 = 0 is Im((a + d conj z2) z1) = 0; written back into
        the standard shape via Im w = Re(-i w) and Re w = Re(conj w).
        """
        f = self.field
        def neg_i(z):
            return Cx(z.im, -z.re)
        def pos_i(z):
            return Cx(-z.im, z.re)
        zero = Cx(f.zero, f.zero)
        e1 = TorusFn(f.zero, neg_i(self.a), zero, neg_i(self.d))
        e2 = TorusFn(f.zero, zero, neg_i(self.b), pos_i(self.d))
        return e1, e2

    def coeff_bound_positive(self):
        """Cheap sufficient test for g > 0 on the whole torus.

        |Re(a z1)| <= |a| etc., so g >= c - |a| - |b| - |d|; we compare
        c^2 against (|a| + |b| + |d|)^2 conservatively through the field
        norms, avoiding square roots.
        """
        if self.c.sign() <= 0:
            return False
        na, nb, nd = self.a.norm2(), self.b.norm2(), self.d.norm2()
        # sqrt-free check: |a|+|b|+|d| <= s iff ... use interval arithmetic
        eps = QQ(1, 1 << 16)
        import math
        iva, ivb, ivd = na.interval(eps), nb.interval(eps), nd.interval(eps)
        ivc = self.c.interval(eps)
        hi = _sqrt_hi(iva[1]) + _sqrt_hi(ivb[1]) + _sqrt_hi(ivd[1])
        return ivc[0] > hi

    def __repr__(self):
        return "TorusFn(c=%r)" % self.c


def _sqrt_hi(q):
    """A rational upper bound for sqrt(max(q, 0))."""
    if q <= 0:
        return QQ(0)
    from math import isqrt
    num, den = q.numerator, q.denominator
    # ceil(sqrt(num/den)) at 2^-24 granularity
    scale = 1 << 48
    v = isqrt(int(num * scale * scale // den)) + 1
    return QQ(v, scale)


# ---------------------------------------------------------------------------
# circle reduction helpers


def _circle_mpolys(field):
    one = MPoly.constant(field, NV, 1)
    x1 = MPoly.variable(field, NV, 0)
    y1 = MPoly.variable(field, NV, 1)
    x2 = MPoly.variable(field, NV, 2)
    y2 = MPoly.variable(field, NV, 3)
    return x1 * x1 + y1 * y1 - one, x2 * x2 + y2 * y2 - one


def _reduce_to_AB(field, E):
    """Reduce an MPoly in (x1, y1) mod x1^2 = 1 - y1^2 to A(y1) x1 + B(y1)."""
    one = MPoly.constant(field, NV, 1)
    y1 = MPoly.variable(field, NV, 1)
    E = E.substitute_power(0, one - y1 * y1)
    A = E.coefficient_of(0, 1).as_upoly_in(1)
    B = E.coefficient_of(0, 0).as_upoly_in(1)
    return A, B


def _upoly_one_minus_sq(field):
    return UPoly(field, [1, 0, -1])


# ---------------------------------------------------------------------------
# branch construction

class _Branch:
    """A parametrized family of candidate solutions.

    ring.r is squarefree; coords are polys in the parameter giving
    (x1, y1, x2, y2)."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = [ring.reduce(c) for c in coords]


def _linear_solve(field, mat, rhs):
    """Solve a square linear system over the field (exact Gauss)."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for row in range(col, n):
            if not a[row][col].is_zero():
                piv = row
                break
        if piv is None:
            raise DegenerateSystem("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for row in range(n):
            if row != col and not a[row][col].is_zero():
                f = a[row][col]
                a[row] = [v - f * w for v, w in zip(a[row], a[col])]
    return [a[i][n] for i in range(n)]


def quad_extension(rbase, c1, c0, carried, max_tries=24):
    """Points of the algebra  l[u, w] / (rbase(u), w^2 + c1 w + c0).

    carried is a list of (pu, pw) pairs representing values pu(u) + pw(u) w.
    Returns a list of (ring, values) where values are polys in the new
    parameter; the last two carried slots appended are u and w themselves.
    Non-reduced parts (vanishing discriminant) are split off and handled
    as direct double-root branches.
    """
    field = rbase.field
    out = []
    base = PointRing(rbase)
    disc = base.reduce(c1 * c1 - UPoly(field, [4]) * c0)
    dz, du = base.split_by(disc)
    if dz.degree > 0:
        # double root: w = -c1/2 exactly
        ring = PointRing(dz)
        half = field.elem(QQ(-1, 2))
        w = ring.reduce(c1 * half)
        u = UPoly(field, [0, 1])
        vals = [ring.reduce(pu + pw * w) for pu, pw in carried]
        out.append((ring, vals + [ring.reduce(u), w]))
    if du.degree > 0:
        out.extend(_etale_quad(du, c1, c0, carried, max_tries))
    return out


def _etale_quad(rbase, c1, c0, carried, max_tries):
    field = rbase.field
    base = PointRing(rbase)
    c1 = base.reduce(c1)
    c0 = base.reduce(c0)
    n = rbase.degree
    N = 2 * n
    zero, one = field.zero, field.one
    # basis: u^0..u^(n-1), u^0 w .. u^(n-1) w
    x = UPoly(field, [0, 1])
    for k in range(max_tries):
        # t = w + k u ; build multiplication matrix
        mat = [[zero] * N for _ in range(N)]
        for j in range(n):
            # t * u^j = k u^(j+1) + u^j w
            p = base.reduce(x.shift_mul_x(j) * QQ(k))
            for i, cv in enumerate(p.c):
                mat[i][j] = mat[i][j] + cv
            mat[n + j][j] = mat[n + j][j] + one
        for j in range(n):
            # t * u^j w = k u^(j+1) w + u^j (-c1 w - c0)
            pw = base.reduce(x.shift_mul_x(j) * QQ(k) - c1.shift_mul_x(j))
            pu = base.reduce(-c0.shift_mul_x(j))
            for i, cv in enumerate(pw.c):
                mat[n + i][n + j] = mat[n + i][n + j] + cv
            for i, cv in enumerate(pu.c):
                mat[i][n + j] = mat[i][n + j] + cv
        R = charpoly(field, mat)
        if R.gcd(R.derivative()).degree == 0:
            break
    else:
        raise DegenerateSystem("no separating element found")
    ring = PointRing(R)
    # powers of t in the basis: cols[j] = coordinates of t^j
    cols = []
    cur = [zero] * N
    cur[0] = one
    for _ in range(N):
        cols.append(cur[:])
        cur = _apply_vec(field, mat, cur)
    P = [[cols[j][i] for j in range(N)] for i in range(N)]
    def express(vec):
        sol = _linear_solve(field, P, vec)
        return ring.reduce(UPoly(field, sol))
    uvec = [zero] * N
    if n >= 2:
        uvec[1] = one
    else:
        uvec[0] = -rbase.c[0]
    wvec = [zero] * N
    wvec[n] = one
    u_t = express(uvec)
    w_t = express(wvec)
    vals = []
    for pu, pw in carried:
        pu = base.reduce(pu)
        pw = base.reduce(pw)
        vec = [zero] * N
        for i, cv in enumerate(pu.c):
            vec[i] = vec[i] + cv
        for i, cv in enumerate(pw.c):
            vec[n + i] = vec[n + i] + cv
        vals.append(express(vec))
    return [(ring, vals + [u_t, w_t])]


def _apply_vec(field, mat, vec):
    n = len(mat)
    out = [field.zero] * n
    for j, vj in enumerate(vec):
        if vj.is_zero():
            continue
        for i in range(n):
            m = mat[i][j]
            if not m.is_zero():
                out[i] = out[i] + m * vj
    return out


# ---------------------------------------------------------------------------
# the main pairwise solver

def solve_pair(ga, gb, extra_check=(), swap_ok=True):
    """All common zeros of two torus functions on the Clifford torus.

    Returns verified AlgebraicPoints with coordinates (x1, y1, x2, y2),
    sorted deterministically.  Raises DegenerateSystem if the
    intersection is not a finite set.
    """
    field = ga.field
    eqs = [ga.as_mpoly(), gb.as_mpoly()]
    c1m, c2m = _circle_mpolys(field)
    eqs += [c1m, c2m]
    eqs += list(extra_check)
    branches = _candidate_branches(ga, gb, swap_ok)
    return _verify_and_collect(field, branches, eqs)


def _candidate_branches(ga, gb, swap_ok=True):
    field = ga.field
    mu1a, mu2a, nua = ga.mu_nu()
    mu1b, mu2b, nub = gb.mu_nu()
    D = mu2a * mu1b - mu1a * mu2b
    x2n = mu2a * nub - mu2b * nua
    y2n = mu1a * nub - mu1b * nua
    E = x2n * x2n + y2n * y2n - D * D
    A, B = _reduce_to_AB(field, E)
    if A.is_zero() and B.is_zero():
        if swap_ok:
            sw = _candidate_branches(ga.swap(), gb.swap(), swap_ok=False)
            return [_swap_branch(br) for br in sw]
        raise DegenerateSystem("identically satisfied elimination")
    wsq = _upoly_one_minus_sq(field)
    r0 = A * A * wsq - B * B
    if r0.is_zero():
        if swap_ok:
            sw = _candidate_branches(ga.swap(), gb.swap(), swap_ok=False)
            return [_swap_branch(br) for br in sw]
        raise DegenerateSystem("vanishing eliminant")
    r = r0.squarefree()
    u = UPoly(field, [0, 1])
    zero = UPoly(field, [0])
    out = []
    base = PointRing(r)
    Am = base.reduce(A)
    bad, good = base.split_by(Am)
    xy_branches = []  # (ring, x1 poly, y1 poly)
    if good.degree > 0:
        # r is squarefree, so gcd(A, good) = 1 and A is invertible here
        Rg = PointRing(good)
        x1 = Rg.reduce(-(B % good) * Rg.invert(A % good))
        xy_branches.append((Rg, x1, Rg.reduce(u)))
    if bad.degree > 0:
        # A and B vanish identically here; x1^2 = 1 - u^2, both signs
        lin, core = PointRing(bad).split_by(wsq)
        if lin.degree > 0:
            # roots with u = +-1, where x1 = 0
            for rt in lin.monic().isolate_all_roots():
                q = rt[0]  # linear factors have rational roots
                rr = PointRing(UPoly(field, [-q, 1]))
                xy_branches.append((rr, zero, UPoly(field, [q])))
        if core.degree > 0:
            c0 = UPoly(field, [-1, 0, 1]) % core  # w^2 - (1 - u^2) = 0
            for ring, vals in quad_extension(core, zero, c0, []):
                u_t, w_t = vals[-2], vals[-1]
                xy_branches.append((ring, w_t, u_t))
    for ring, x1p, y1p in xy_branches:
        out.extend(_solve_z2(ring, x1p, y1p, ga, gb))
    return out


def _swap_branch(br):
    c = br.coords
    return _Branch(br.ring, [c[2], c[3], c[0], c[1]])


def _mp2_eval(ring, mp, x1p, y1p):
    """Evaluate an MPoly that only involves (x1, y1) on a branch."""
    zero2 = UPoly(ring.field, [0])
    return mp.eval_upolys([x1p, y1p, zero2, zero2], ring)


def _solve_z2(ring, x1p, y1p, ga, gb):
    field = ring.field
    mu1a, mu2a, nua = ga.mu_nu()
    mu1b, mu2b, nub = gb.mu_nu()
    D = mu2a * mu1b - mu1a * mu2b
    x2n = mu2a * nub - mu2b * nua
    y2n = mu1a * nub - mu1b * nua
    Du = _mp2_eval(ring, D, x1p, y1p)
    out = []
    dzero, dunit = ring.split_by(Du)
    if dunit.degree > 0:
        R = PointRing(dunit)
        Dinv = R.invert(Du % dunit)
        x2 = R.reduce(_mp2_eval(R, x2n, x1p % dunit, y1p % dunit) * Dinv)
        y2 = R.reduce(_mp2_eval(R, y2n, x1p % dunit, y1p % dunit) * Dinv)
        out.append(_Branch(R, [x1p, y1p, x2, y2]))
    if dzero.degree > 0:
        # the linear system is rank deficient on these roots; fall back to
        # one line intersected with the circle
        R = PointRing(dzero)
        x1d, y1d = x1p % dzero, y1p % dzero
        m1 = _mp2_eval(R, mu1a, x1d, y1d)
        m2 = _mp2_eval(R, mu2a, x1d, y1d)
        nu = _mp2_eval(R, nua, x1d, y1d)
        # on roots where the first slice line is trivial (real ones have
        # m1 = m2 = nu = 0 there) the second line must cut the circle
        triv, rest = R.split_by(R.reduce(m1 * m1 + m2 * m2 + nu * nu))
        if rest.degree > 0:
            Rr = PointRing(rest)
            out.extend(_line_circle(Rr, x1d % rest, y1d % rest,
                                    m1 % rest, m2 % rest, nu % rest))
        if triv.degree > 0:
            Rt = PointRing(triv)
            x1t, y1t = x1d % triv, y1d % triv
            out.extend(_line_circle(
                Rt, x1t, y1t,
                _mp2_eval(Rt, mu1b, x1t, y1t),
                _mp2_eval(Rt, mu2b, x1t, y1t),
                _mp2_eval(Rt, nub, x1t, y1t)))
    return out


def _line_circle(ring, x1p, y1p, m1, m2, nu):
    """Solve m1 x2 - m2 y2 = nu with x2^2 + y2^2 = 1 over the branch ring."""
    field = ring.field
    out = []
    m1z, m1u = ring.split_by(m1)
    if m1u.degree > 0:
        # m1^2 + m2^2 may still vanish on a factor; such a factor has no
        # real roots (m1 is invertible here), so it carries no solutions
        _, m1u = PointRing(m1u).split_by(
            ring.reduce(m1 * m1 + m2 * m2) % m1u)
    if m1u.degree > 0:
        R = PointRing(m1u)
        m1r, m2r, nur = m1 % m1u, m2 % m1u, nu % m1u
        lead = R.reduce(m1r * m1r + m2r * m2r)
        inv = R.invert(lead)
        c1 = R.reduce(UPoly(field, [2]) * nur * m2r * inv)
        c0 = R.reduce((nur * nur - m1r * m1r) * inv)
        carried = [(x1p % m1u, UPoly(field, [0])),
                   (y1p % m1u, UPoly(field, [0])),
                   # x2 = (nu + m2 w)/m1 with w = y2
                   (R.reduce(nur * R.invert(m1r)),
                    R.reduce(m2r * R.invert(m1r)))]
        for ring2, vals in quad_extension(R.r, c1, c0, carried):
            x1v, y1v, x2v = vals[0], vals[1], vals[2]
            y2v = vals[-1]  # w itself
            out.append(_Branch(ring2, [x1v, y1v, x2v, y2v]))
    if m1z.degree > 0:
        R = PointRing(m1z)
        m2r, nur = m2 % m1z, nu % m1z
        m2z, m2u = R.split_by(m2r)
        if m2u.degree > 0:
            R2 = PointRing(m2u)
            y2 = R2.reduce(-(nur % m2u) * R2.invert(m2r % m2u))
            # x2 = +- sqrt(1 - y2^2)
            c0 = R2.reduce(y2 * y2 - UPoly(field, [1]))
            carried = [(x1p % m2u, UPoly(field, [0])),
                       (y1p % m2u, UPoly(field, [0])),
                       (y2, UPoly(field, [0]))]
            for ring2, vals in quad_extension(R2.r, UPoly(field, [0]), c0,
                                              carried):
                x1v, y1v, y2v = vals[0], vals[1], vals[2]
                x2v = vals[-1]
                out.append(_Branch(ring2, [x1v, y1v, x2v, y2v]))
        if m2z.degree > 0:
            # both mu components vanish; the equation is 0 = nu
            nuz, _ = PointRing(m2z).split_by(nur % m2z)
            if nuz.degree > 0:
                m = nuz.monic()
                bound = m.root_bound()
                if m.count_roots(-bound, bound) > 0:
                    raise DegenerateSystem(
                        "a full z2 circle solves the system")
    return out


def _verify_and_collect(field, branches, eqs):
    pts = []
    for br in branches:
        roots = br.ring.r.isolate_all_roots()
        for iv in roots:
            pt = AlgebraicPoint(br.ring, iv, br.coords)
            if all(pt.sign_of(eq) == 0 for eq in eqs):
                pts.append(pt)
    # dedupe across branches
    uniq = []
    for p in pts:
        if not any(alg_equal(p, q) for q in uniq):
            uniq.append(p)
    return sort_points(uniq)


# ---------------------------------------------------------------------------
# derived solvers

def critical_points(g):
    """Critical points of g on the torus, as verified algebraic points."""
    e1, e2 = g.crit_eqs()
    return solve_pair(e1, e2)


def double_points(g):
    """Points of the curve g = 0 where the two z2 branches meet.

    These are the zeros of the branch discriminant |mu|^2 - nu^2 on the
    curve: folds and genuine double points of the restriction.
    """
    field = g.field
    mu1, mu2, nu = g.mu_nu()
    delta = mu1 * mu1 + mu2 * mu2 - nu * nu
    A, B = _reduce_to_AB(field, delta)
    wsq = _upoly_one_minus_sq(field)
    if A.is_zero() and B.is_zero():
        raise DegenerateSystem("discriminant vanishes identically")
    r0 = A * A * wsq - B * B
    if r0.is_zero():
        raise DegenerateSystem("discriminant eliminant vanishes")
    r = r0.squarefree()
    u = UPoly(field, [0, 1])
    zero = UPoly(field, [0])
    base = PointRing(r)
    branches = []
    bad, good = base.split_by(base.reduce(A))
    xy = []
    if good.degree > 0:
        Rg = PointRing(good)
        x1 = Rg.reduce(-(B % good) * Rg.invert(A % good))
        xy.append((Rg, x1, Rg.reduce(u)))
    if bad.degree > 0:
        lin, core = PointRing(bad).split_by(wsq)
        if lin.degree > 0:
            for rt in lin.monic().isolate_all_roots():
                q = rt[0]
                rr = PointRing(UPoly(field, [-q, 1]))
                xy.append((rr, zero, UPoly(field, [q])))
        if core.degree > 0:
            for ring, vals in quad_extension(core, zero,
                                             -(wsq % core), []):
                xy.append((ring, vals[-1], vals[-2]))
    for ring, x1p, y1p in xy:
        m1 = _mp2_eval(ring, mu1, x1p, y1p)
        m2 = _mp2_eval(ring, mu2, x1p, y1p)
        nuv = _mp2_eval(ring, nu, x1p, y1p)
        nrm = ring.reduce(m1 * m1 + m2 * m2)
        nz, nu_ok = ring.split_by(nrm)
        if nu_ok.degree > 0:
            R = PointRing(nu_ok)
            inv = R.invert(nrm % nu_ok)
            x2 = R.reduce((nuv % nu_ok) * (m1 % nu_ok) * inv)
            y2 = R.reduce(-(nuv % nu_ok) * (m2 % nu_ok) * inv)
            branches.append(_Branch(R, [x1p, y1p, x2, y2]))
        if nz.degree > 0:
            nzz, _ = PointRing(nz).split_by(nuv % nz)
            if nzz.degree > 0:
                # |mu|^2 = nu = 0 at a complex root of the eliminant is
                # harmless; only a real root means a whole z2 circle.
                m = nzz.monic()
                bound = m.root_bound()
                if m.count_roots(-bound, bound) > 0:
                    raise DegenerateSystem("curve contains a z2 circle")
    # verify: delta = 0, g = 0, circles
    c1m, c2m = _circle_mpolys(field)
    eqs = [delta, g.as_mpoly(), c1m, c2m]
    return _verify_and_collect(field, branches, eqs)


def slice_points(g, x1q, y1q):
    """Solutions of g = 0 on the slice z1 = (x1q, y1q), a rational circle
    point.  Returns verified points."""
    field = g.field
    mu1, mu2, nu = g.mu_nu()
    triv = PointRing(UPoly(field, [0, 1]))
    x1p = UPoly(field, [x1q])
    y1p = UPoly(field, [y1q])
    m1 = _mp2_eval(triv, mu1, x1p, y1p)
    m2 = _mp2_eval(triv, mu2, x1p, y1p)
    nuv = _mp2_eval(triv, nu, x1p, y1p)
    branches = _line_circle(triv, x1p, y1p, m1, m2, nuv)
    c1m, c2m = _circle_mpolys(field)
    eqs = [g.as_mpoly(), c1m, c2m]
    return _verify_and_collect(field, branches, eqs)


def torus_min_positive(g):
    """Exact test: is g > 0 everywhere on the torus?

    The torus is compact, so the minimum is attained at a critical point;
    g > 0 everywhere iff g > 0 at every critical point.  A cheap interval
    bound is tried first.
    """
    if g.coeff_bound_positive():
        return True
    x1 = MPoly.variable(g.field, NV, 0)
    gm = g.as_mpoly()
    try:
        crits = critical_points(g)
    except DegenerateSystem:
        return False
    if not crits:
        # no critical points can only happen for constant g
        return g.c.sign() > 0
    return all(p.sign_of(gm) > 0 for p in crits)


def torus_region_positive(g, g0):
    """Exact test: is g > 0 on the region {g0 <= 0} of the torus?

    The region is compact, so a nonpositive value of g would be
    witnessed either by an interior minimum (a critical point of g
    with g0 < 0) or on the boundary curve {g0 = 0}.  On the curve it
    suffices that g never vanishes and is positive at one sample per
    connected component: fold points of the branch projection catch
    the components with turning points, and a full circle slice
    catches the components winding around the primary factor.
    Returns False whenever positivity cannot be certified.
    """
    if torus_min_positive(g):
        return True
    gm = g.as_mpoly()
    g0m = g0.as_mpoly()
    try:
        if solve_pair(g0, g):
            return False
        crits = critical_points(g)
    except DegenerateSystem:
        return False
    for p in crits:
        if p.sign_of(g0m) <= 0 and p.sign_of(gm) <= 0:
            return False
    samples = []
    try:
        samples.extend(double_points(g0))
        for gg, perm in ((g0, None), (g0.swap(), (2, 3, 0, 1))):
            pts = slice_points(gg, QQ(1), QQ(0))
            if perm:
                pts = [p.subpoint(perm) for p in pts]
            samples.extend(pts)
    except DegenerateSystem:
        return False
    return all(p.sign_of(gm) > 0 for p in samples)


def torus_region_constant_sign(g, g0):
    """Sign of g on {g0 <= 0} if it is constant and nonzero, else 0.

    Either sign certifies that the region misses the surface {g = 0};
    only the positive sign additionally places the region outside the
    half space {g <= 0}.
    """
    if torus_region_positive(g, g0):
        return 1
    if torus_region_positive(-g, g0):
        return -1
    return 0
