"""Facet combinatorics of the partial Ford domain.

Every ridge of the domain lives on the intersection of two bounding
bisectors, parametrized by the Clifford torus (z1, z2).  A set
F_{J,K} (equalities J, strict inequalities K) is carved out of the
torus by the restricted functions g_i; its boundary decomposes into
arcs of the carrier curves {g_c = 0}.  The engine below maintains
that arc decomposition while inequalities are added one at a time:

  * breakpoints on a carrier curve are fold points (branch
    discriminant zero), singular points, and certified intersections
    with the other carrier curves;
  * an arc is the piece of one z2-branch between two consecutive
    breakpoints, with an exact sample point in its interior;
  * membership of arcs and points is decided by exact sign tests, so
    every kept arc is genuinely on the boundary and a face is empty
    exactly when no arc survives.

The outcome per bisector pair is a classification record (disjoint
strips, outside the ball, a positivity witness, refined to empty, or
an actual ridge with its cell structure), and per side the finite and
ideal vertices with their certified incidence sets.
"""

from .algebra.mpoly import MPoly
from .algebra.points import AlgebraicPoint, PointRing, alg_equal
from .algebra.rationals import QQ
from .algebra.torus import (DegenerateSystem, TorusFn, critical_points,
                            double_points, solve_pair,
                            torus_min_positive, torus_region_positive)
from .algebra.upoly import UPoly
from .giraud import DegenerateChart, GiraudChart
from .group import bisector_word, parse_word
from .heisenberg import BoundaryModel

NV = 4

CORE_INDEX = {"2": 1, "-2": 2, "3": 3, "-3": 4}


# ---------------------------------------------------------------------------
# bisector indexing helpers


def conjugate_index(core, power):
    """Index of the G1^power conjugate of core bisector `core` (1..4)."""
    if power == 0:
        return core
    block = 2 * power - 1 if power > 0 else -2 * power
    return 4 * block + core

def index_power(index):
    """(core, power) for a bisector index."""
    block, pos = divmod(index - 1, 4)
    if block == 0:
        p = 0
    elif block % 2 == 1:
        p = (block + 1) // 2
    else:
        p = -(block // 2)
    return pos + 1, p


class Candidate:
    """One bisector index in the scope of a side computation."""

    __slots__ = ("index", "word", "in_range")

    def __init__(self, index, word, in_range):
        self.index = index
        self.word = word
        self.in_range = in_range

    def __repr__(self):
        return "Candidate(%d%s)" % (self.index,
                                    "" if self.in_range else ", strip")


def candidate_ranges(model):
    """Certified power ranges per ordered core pair (i, j), 1 <= i,j <= 4.

    ranges[(i, j)] = (lo, hi) means the sphere of side i can meet the
    G1^p-translate of core sphere j only for lo <= p <= hi.
    """
    table = model.disjointness_table()
    out = {}
    for (i, j), (lo, hi) in table.items():
        out[(i, j)] = (lo, hi)
        if i != j:
            out[(j, i)] = (-hi, -lo)
    return out


def enumerate_candidates(model, side, width=4):
    """All bisector indices within `width` conjugation blocks of a side.

    Returns Candidate records; `in_range` is False when the certified
    strip bounds already force the spinal spheres apart, which is a
    sound emptiness certificate for the corresponding pair.
    """
    ranges = candidate_ranges(model)
    for (lo, hi) in ranges.values():
        # soundness of the width cutoff: every admissible power is
        # within the scanned blocks
        assert -width <= lo and hi <= width
    out = []
    for p in _powers(width):
        for core in (1, 2, 3, 4):
            idx = conjugate_index(core, p)
            if idx == side:
                continue
            lo, hi = ranges[(side, core)]
            out.append(Candidate(idx, bisector_word(idx), lo <= p <= hi))
    out.sort(key=lambda c: c.index)
    return out


def _powers(width):
    yield 0
    for a in range(1, width + 1):
        yield a
        yield -a


# ---------------------------------------------------------------------------
# exact ordering of points on a parametrizing circle

def _coord_signs(pt, ix, iy):
    return pt.coord_sign(ix), pt.coord_sign(iy)


def _circle_class(pt, ix, iy):
    """0 at angle 0, 1 on the upper half, 2 at angle pi, 3 on the lower."""
    sx, sy = _coord_signs(pt, ix, iy)
    if sy > 0:
        return 1
    if sy < 0:
        return 3
    return 0 if sx > 0 else 2


def _coord_less(p, i, q, j, max_rounds=80):
    """Exact p.coords[i] < q.coords[j] for values known to differ."""
    eps = QQ(1, 1 << 16)
    for _ in range(max_rounds):
        a = p.coord_interval(i, eps)
        b = q.coord_interval(j, eps)
        if a[1] < b[0]:
            return True
        if b[1] < a[0]:
            return False
        eps /= 1 << 8
    raise RuntimeError("could not separate coordinates (equal points?)")


def _angle_less(p, q, axis):
    """Strict order of circle angles in [0, 2 pi), exact."""
    ix, iy = 2 * axis, 2 * axis + 1
    cp = _circle_class(p, ix, iy)
    cq = _circle_class(q, ix, iy)
    if cp != cq:
        return cp < cq
    if cp == 1:
        return _coord_less(q, ix, p, ix)  # upper half: angle grows as x drops
    if cp == 3:
        return _coord_less(p, ix, q, ix)  # lower half: angle grows with x
    return False  # both at 0 or both at pi: equal points


def _in_open_cyclic(a, x, b, axis):
    """Is x strictly inside the ccw open circle interval (a, b)?"""
    if _angle_less(a, b, axis):
        return _angle_less(a, x, axis) and _angle_less(x, b, axis)
    return _angle_less(a, x, axis) or _angle_less(x, b, axis)


def _half_angle_interval(pt, ix, iy, eps):
    """Enclosure of u = y / (1 + x), the tangent half-angle parameter."""
    while True:
        xa, xb = pt.coord_interval(ix, eps)
        ya, yb = pt.coord_interval(iy, eps)
        if 1 + xa > 0:
            lo = min(ya / (1 + xa), ya / (1 + xb))
            hi = max(yb / (1 + xa), yb / (1 + xb))
            return lo, hi
        eps /= 1 << 8


def _rational_circle_point(u):
    den = 1 + u * u
    return ((1 - u * u) / den, 2 * u / den)


def _sample_angle_between(field, a, b, axis):
    """A rational circle point strictly inside the ccw interval (a, b).

    Either endpoint may be None, meaning the interval is the whole
    circle minus the other endpoint (or the full circle when both are
    None).
    """
    ix, iy = 2 * axis, 2 * axis + 1
    if a is not None and b is not None and a is b:
        # a single breakpoint: the interval is the rest of the circle
        b = None
    if a is None and b is None:
        return (QQ(1), QQ(0))
    if a is None or b is None:
        p = a if a is not None else b
        # anything different from p works; try a few fixed points
        for u in (QQ(0), QQ(1), QQ(-1)):
            x, y = _rational_circle_point(u)
            if not _matches_rational(p, ix, iy, x, y):
                return (x, y)
        return (QQ(-1), QQ(0))  # p is none of the above, in particular not -1
    ca = _circle_class(a, ix, iy)
    cb = _circle_class(b, ix, iy)
    if ca != 2 and cb != 2:
        marker = AlgebraicPoint.from_rationals(
            a.field, [QQ(-1) if i == ix else QQ(0) for i in range(NV)])
        if _in_open_cyclic(a, marker, b, axis):
            return (QQ(-1), QQ(0))
    # the interval avoids the point at angle pi, so the half-angle
    # parameter u = y/(1+x) is monotone over it; pick a rational u
    # strictly between the endpoint parameters
    eps = QQ(1, 1 << 16)
    while True:
        if ca == 2:
            ub = _half_angle_interval(b, ix, iy, eps)
            return _rational_circle_point(ub[0] - 1)
        if cb == 2:
            ua = _half_angle_interval(a, ix, iy, eps)
            return _rational_circle_point(ua[1] + 1)
        ua = _half_angle_interval(a, ix, iy, eps)
        ub = _half_angle_interval(b, ix, iy, eps)
        if ua[1] < ub[0]:
            return _rational_circle_point((ua[1] + ub[0]) / 2)
        eps /= 1 << 8


def _matches_rational(pt, ix, iy, x, y):
    f = pt.field
    dx = MPoly.variable(f, pt.nvars(), ix) - MPoly.constant(f, pt.nvars(),
                                                            f.elem(x))
    dy = MPoly.variable(f, pt.nvars(), iy) - MPoly.constant(f, pt.nvars(),
                                                            f.elem(y))
    return pt.sign_of(dx) == 0 and pt.sign_of(dy) == 0


def _boxes_overlap(a, b, rounds=6):
    """False only when the interval boxes certify the points differ."""
    eps = QQ(1, 1 << 10)
    for _ in range(rounds):
        for i in range(NV):
            al, ah = a.coord_interval(i, eps)
            bl, bh = b.coord_interval(i, eps)
            if ah < bl or bh < al:
                return False
        eps /= 1 << 10
    return True


# ---------------------------------------------------------------------------
# breakpoints and arcs


class PointRec:
    """A registered breakpoint: an exact point plus cached sign data."""

    __slots__ = ("point", "carriers", "signs", "branch", "_floats")

    def __init__(self, point):
        self.point = point
        self.carriers = set()
        self.signs = {}
        self.branch = {}
        self._floats = None

    def floats(self):
        if self._floats is None:
            self._floats = self.point.floats()
        return self._floats

    def coord_sign(self, i):
        return self.point.coord_sign(i)

    def coord_interval(self, i, eps):
        return self.point.coord_interval(i, eps)

    @property
    def field(self):
        return self.point.field

    def nvars(self):
        return self.point.nvars()

    def sign_of(self, expr):
        return self.point.sign_of(expr)

    def __repr__(self):
        return "PointRec(%s | on %s)" % (
            ", ".join("%.5f" % v for v in self.floats()),
            sorted(self.carriers))


class Arc:
    """A single-branch piece of a carrier curve between two breakpoints.

    `start` and `end` are PointRec or None for a closed loop; `axis`
    says which circle factor parametrizes the branch (0 for z1).
    """

    __slots__ = ("carrier", "axis", "branch", "start", "end", "sample")

    def __init__(self, carrier, axis, branch, start, end, sample):
        self.carrier = carrier
        self.axis = axis
        self.branch = branch
        self.start = start
        self.end = end
        self.sample = sample

    def is_loop(self):
        return self.start is None

    def endpoints(self):
        return [p for p in (self.start, self.end) if p is not None]

    def __repr__(self):
        if self.is_loop():
            return "Arc(%s, loop branch %+d)" % (self.carrier, self.branch)
        return "Arc(%s, %s -> %s)" % (self.carrier, self.start, self.end)


class FacetKey:
    """Index data of a facet: equalities J and strict inequalities K."""

    __slots__ = ("J", "K")

    def __init__(self, J, K):
        self.J = tuple(sorted(J))
        self.K = tuple(sorted(K))
        assert not set(self.J) & set(self.K)

    def __repr__(self):
        return "F_{%s},{%s}" % (",".join(map(str, self.J)),
                                ",".join(map(str, self.K)))


class CurveDegenerate(RuntimeError):
    """A carrier curve fell outside the single-branch torus model."""


def _has_full_slice(g):
    """True when a whole z2 circle {z1 = z10} lies on the curve g = 0.

    That happens exactly when mu(z10) = nu(z10) = 0 at a circle point
    z10, which forces |b| = |d|.
    """
    if g.d.is_zero():
        return False
    if (g.b.norm2() - g.d.norm2()).sign() != 0:
        return False
    z0 = -g.b.conj() / g.d
    return (-g.c - (g.a * z0).re).is_zero()


class CurveModel:
    """Branch structure of one restricted function's zero set."""

    def __init__(self, fn, carrier):
        self.carrier = carrier
        self.axis = 0
        if fn.b.is_zero() and fn.d.is_zero():
            if fn.a.is_zero():
                raise CurveDegenerate("constant restriction on carrier %s"
                                      % (carrier,))
            self.axis = 1
        elif _has_full_slice(fn):
            # a vertical circle sits on the curve; over the other axis it
            # is an ordinary graph branch
            if _has_full_slice(fn.swap()):
                raise CurveDegenerate("full slices both ways on carrier %s"
                                      % (carrier,))
            self.axis = 1
        self.fn = fn
        self.oriented = fn if self.axis == 0 else fn.swap()
        f = fn.field
        self.mu1, self.mu2, self.nu = self._mu_mpolys()
        px, py = 2 * (1 - self.axis), 2 * (1 - self.axis) + 1
        self.branch_poly = (MPoly.variable(f, NV, px) * self.mu2
                            + MPoly.variable(f, NV, py) * self.mu1)
        self.delta = self.mu1 * self.mu1 + self.mu2 * self.mu2 \
            - self.nu * self.nu
        self._folds = None
        self._sings = None

    def _mu_mpolys(self):
        fn = self.oriented
        f = fn.field
        ix, iy = 2 * self.axis, 2 * self.axis + 1
        def mk(const, cx, cy):
            return MPoly(f, NV, {(0,) * NV: const,
                                 _unit(ix): cx, _unit(iy): cy})
        mu1 = mk(fn.b.re, fn.d.re, -fn.d.im)
        mu2 = mk(fn.b.im, -fn.d.im, -fn.d.re)
        nu = mk(-fn.c, -fn.a.re, fn.a.im)
        return mu1, mu2, nu

    def _permute(self, pts):
        if self.axis == 0:
            return pts
        return [p.subpoint((2, 3, 0, 1)) for p in pts]

    def folds(self):
        """Points of the curve where the two z2-branches meet."""
        if self._folds is None:
            try:
                self._folds = self._permute(double_points(self.oriented))
            except DegenerateSystem as exc:
                raise CurveDegenerate(str(exc))
        return self._folds

    def singular_points(self):
        """Critical points of the restriction lying on the curve."""
        if self._sings is None:
            gm = self.fn.as_mpoly()
            try:
                crits = critical_points(self.fn)
            except DegenerateSystem:
                crits = self._degenerate_criticals()
            self._sings = [p for p in crits if p.sign_of(gm) == 0]
        return self._sings

    def _degenerate_criticals(self):
        # restrictions depending on one circle factor only, or only on
        # the product z1 * zbar2, have whole circles of critical points;
        # their branch discriminant is then constant and the circles miss
        # the curve exactly when it is nonzero
        fn = self.fn
        if fn.a.is_zero() and fn.b.is_zero() and not fn.d.is_zero():
            # g = c + Re(d z1 zbar2): the critical circles carry the
            # values c +- |d|
            if (fn.d.norm2() - fn.c * fn.c).sign() != 0:
                return []
        if all(sum(m) == 0 for m in self.delta.terms):
            f = fn.field
            zero = [f.elem(QQ(0))] * NV
            if self.delta.eval_elems(zero).sign() != 0:
                return []
        raise CurveDegenerate("critical set meets carrier %s"
                              % (self.carrier,))

    def branch_sign(self, rec):
        """+1 top branch, -1 bottom, 0 at a fold."""
        cached = rec.branch.get(self.carrier)
        if cached is None:
            cached = rec.sign_of(self.branch_poly)
            rec.branch[self.carrier] = cached
        return cached

    def delta_sign_at(self, x, y):
        f = self.fn.field
        vals = [f.elem(QQ(0))] * NV
        ix, iy = 2 * self.axis, 2 * self.axis + 1
        vals[ix] = f.elem(x)
        vals[iy] = f.elem(y)
        return self.delta.eval_elems(vals).sign()

    def point_at(self, x, y, branch):
        """Exact curve point over rational primary circle point (x, y).

        The secondary coordinate solves z * mu = nu + branch * i * t with
        t = sqrt(delta), so the point lives in a quadratic extension.
        """
        f = self.fn.field
        vals = [f.elem(QQ(0))] * NV
        ix, iy = 2 * self.axis, 2 * self.axis + 1
        vals[ix], vals[iy] = f.elem(x), f.elem(y)
        m1 = self.mu1.eval_elems(vals)
        m2 = self.mu2.eval_elems(vals)
        nuv = self.nu.eval_elems(vals)
        n2 = m1 * m1 + m2 * m2
        disc = n2 - nuv * nuv
        if disc.sign() <= 0:
            raise CurveDegenerate("sample slice not inside a branch gap")
        ring = PointRing(UPoly(f, [-disc, 0, 1]))
        bound = ring.r.root_bound()
        inv = n2.inverse()
        xs = UPoly(f, [nuv * m1 * inv, branch * m2 * inv])
        ys = UPoly(f, [-nuv * m2 * inv, branch * m1 * inv])
        prim = [UPoly(f, [f.elem(x)]), UPoly(f, [f.elem(y)])]
        coords = prim + [xs, ys] if self.axis == 0 else [xs, ys] + prim
        return AlgebraicPoint(ring, (QQ(0), QQ(bound)), coords)

    def build_arcs(self, records, sampler):
        """Arc decomposition with the given breakpoint records.

        `records` must contain every fold and singular point of the
        curve (the engine registers them before calling).  `sampler`
        wraps point_at results into sample records.
        """
        axis = self.axis
        folds = [r for r in records if self.branch_sign(r) == 0]
        others = [r for r in records if self.branch_sign(r) != 0]
        arcs = []
        if not folds:
            sgn = self._global_delta_sign(records)
            if sgn < 0:
                if records:
                    raise CurveDegenerate("breakpoints on an empty curve")
                return []
            for branch in (1, -1):
                pts = [r for r in others if self.branch_sign(r) == branch]
                arcs.extend(self._chain(None, pts, branch, sampler,
                                        wrap=True))
            return arcs
        folds = _sort_cyclic(folds, axis)
        n = len(folds)
        for i in range(n):
            fa, fb = folds[i], folds[(i + 1) % n]
            x, y = _sample_angle_between(self.fn.field, fa, fb, axis) \
                if n > 1 else _sample_angle_between(self.fn.field, fa, None,
                                                    axis)
            if self.delta_sign_at(x, y) <= 0:
                continue
            inside = [r for r in others
                      if n == 1 or _in_open_cyclic(fa, r, fb, axis)]
            for branch in (1, -1):
                pts = [r for r in inside if self.branch_sign(r) == branch]
                arcs.extend(self._chain((fa, fb), pts, branch, sampler))
        return arcs

    def _global_delta_sign(self, avoid):
        for u in (QQ(0), QQ(1), QQ(-1), QQ(2), QQ(-2), QQ(1, 2)):
            x, y = _rational_circle_point(u)
            s = self.delta_sign_at(x, y)
            if s != 0:
                return s
        raise CurveDegenerate("could not find a generic slice")

    def _chain(self, ends, pts, branch, sampler, wrap=False):
        axis = self.axis
        arcs = []
        if wrap:
            pts = _sort_cyclic(pts, axis)
            if not pts:
                x, y = _sample_angle_between(self.fn.field, None, None, axis)
                return [Arc(self.carrier, axis, branch, None, None,
                            sampler(self, x, y, branch))]
            stops = pts + [pts[0]]
        else:
            fa, fb = ends
            inner = _sort_from(fa, pts, axis)
            stops = [fa] + inner + [fb]
        for a, b in zip(stops, stops[1:]):
            x, y = _sample_angle_between(self.fn.field, a, b, axis)
            arcs.append(Arc(self.carrier, axis, branch, a, b,
                            sampler(self, x, y, branch)))
        return arcs


def _unit(i):
    m = [0] * NV
    m[i] = 1
    return tuple(m)


def _sort_cyclic(recs, axis):
    out = list(recs)
    out.sort(key=_angle_key_factory(out, axis))
    return out


def _sort_from(origin, recs, axis):
    out = list(recs)
    import functools

    def cmp(p, q):
        if p is q:
            return 0
        return -1 if _in_open_cyclic(origin, p, q, axis) else 1

    out.sort(key=functools.cmp_to_key(cmp))
    return out


def _angle_key_factory(recs, axis):
    import functools

    def cmp(p, q):
        if p is q:
            return 0
        return -1 if _angle_less(p, q, axis) else 1

    return functools.cmp_to_key(cmp)


# ---------------------------------------------------------------------------
# the refinement engine


class AssumptionError(RuntimeError):
    """A genericity assumption failed; carries the offending data."""


class FaceComputation:
    """Inductive construction of F_{J,K} for J = {j, k} on its chart."""

    def __init__(self, rep, j, k, scope=None):
        self.rep = rep
        self.j = j
        self.k = k
        self.chart = GiraudChart.from_indices(rep, j, k)
        self.scope = scope
        self._fns = {}
        self._curves = {}
        self._pair_cache = {}
        self.registry = []
        self.K = []
        self.arcs = []
        self.log = []
        self.notes = []
        self._samples = []

    # -- per-index data ------------------------------------------------------

    def fn(self, x):
        if x not in self._fns:
            self._fns[x] = self.chart.restrict(x)
        return self._fns[x]

    def mpoly(self, x):
        key = ("mp", x)
        if key not in self._fns:
            self._fns[key] = self.fn(x).as_mpoly()
        return self._fns[key]

    def curve(self, x):
        if x not in self._curves:
            self._curves[x] = CurveModel(self.fn(x), x)
        return self._curves[x]

    def sign(self, rec, x):
        s = rec.signs.get(x)
        if s is None:
            s = rec.sign_of(self.mpoly(x))
            rec.signs[x] = s
            if s == 0:
                rec.carriers.add(x)
        return s

    # -- breakpoint registry ---------------------------------------------------

    def register(self, point, carriers):
        if isinstance(point, PointRec):
            rec = point
        else:
            rec = PointRec(point)
        for other in self.registry:
            if _boxes_overlap(other, rec) and alg_equal(other.point,
                                                        rec.point):
                other.carriers.update(carriers)
                return other
        rec.carriers.update(carriers)
        self.registry.append(rec)
        return rec

    def solutions(self, c, x):
        """Registered intersection points of carriers c and x."""
        key = (c, x) if c <= x else (x, c)
        if key not in self._pair_cache:
            pts = solve_pair(self.fn(key[0]), self.fn(key[1]))
            self._pair_cache[key] = [self.register(p, set(key)) for p in pts]
        return self._pair_cache[key]

    def curve_breakpoints(self, x):
        """Folds and singular points of carrier x, registered."""
        key = ("bp", x)
        if key not in self._pair_cache:
            cm = self.curve(x)
            recs = []
            for p in cm.folds() + cm.singular_points():
                r = self.register(p, {x})
                if not any(r is q for q in recs):
                    recs.append(r)
            self._pair_cache[key] = recs
        return self._pair_cache[key]

    def _sampler(self, cm, xq, yq, branch):
        rec = PointRec(cm.point_at(xq, yq, branch))
        self._samples.append(rec)
        return rec

    # -- the induction ----------------------------------------------------------

    def start(self):
        """Initialize with K = {0}: the Giraud disk inside the ball."""
        assert not self.K
        recs = self.curve_breakpoints(0)
        self.arcs = self.curve(0).build_arcs(recs, self._sampler)
        self.K = [0]
        self.log.append(("start", 0, len(self.arcs)))
        return self

    def refine(self, x):
        """Pass from F_{J,K} to F_{J,K u {x}}."""
        assert x not in self.K and x not in (self.j, self.k)
        crossings = {}
        touched = False
        for c in sorted({a.carrier for a in self.arcs}):
            pts = self.solutions(c, x)
            crossings[c] = pts
            # the new curve can only enter the face through a boundary
            # point, i.e. a crossing lying weakly inside F-bar
            if any(all(self.sign(r, i) <= 0 for i in self.K) for r in pts):
                touched = True
        interior = [r for r in self.curve_breakpoints(x)
                    if all(self.sign(r, i) < 0 for i in self.K)]
        kept = []
        for arc in self.arcs:
            kept.extend(self._split_and_test(arc, x, crossings[arc.carrier]))
        new_arcs = []
        if touched or interior:
            # sign changes along the new carrier can also happen across
            # curves whose own arcs were dropped earlier, so complete
            # the breakpoint set before tracing
            for c in self.K:
                if c not in crossings:
                    self.solutions(c, x)
            new_arcs = self._trace_new_carrier(x)
            if interior and not any(
                    r in (a.start, a.end) for a in new_arcs
                    for r in interior):
                # a fold of g_x sits inside the face but no traced arc
                # reaches it: only possible for an isolated oval
                self.notes.append(("isolated-component?", x))
        self.arcs = kept + new_arcs
        self.K.append(x)
        self.log.append(("refine", x, len(kept), len(new_arcs)))
        return self

    def _split_and_test(self, arc, x, pts):
        inner = []
        for r in pts:
            if r is arc.start or r is arc.end:
                continue
            cm = self.curve(arc.carrier)
            b = cm.branch_sign(r)
            if b != arc.branch and b != 0:
                continue
            if arc.is_loop() or _in_open_cyclic(arc.start, r, arc.end,
                                                arc.axis):
                inner.append(r)
        if not inner:
            s = self.sign(arc.sample, x)
            if s == 0:
                raise AssumptionError("sample on carrier %s lies on %s"
                                      % (arc.carrier, x))
            return [arc] if s < 0 else []
        cm = self.curve(arc.carrier)
        if arc.is_loop():
            inner = _sort_cyclic(inner, arc.axis)
            stops = inner + [inner[0]]
        else:
            inner = _sort_from(arc.start, inner, arc.axis)
            stops = [arc.start] + inner + [arc.end]
        out = []
        for a, b in zip(stops, stops[1:]):
            xq, yq = _sample_angle_between(self.fn(arc.carrier).field,
                                           a, b, arc.axis)
            sample = self._sampler(cm, xq, yq, arc.branch)
            piece = Arc(arc.carrier, arc.axis, arc.branch, a, b, sample)
            ok = all(self.sign(sample, i) < 0
                     for i in self.K if i != arc.carrier)
            if ok and self.sign(sample, x) < 0:
                out.append(piece)
        return out

    def _trace_new_carrier(self, x):
        recs = list(self.curve_breakpoints(x))
        ids = {id(r) for r in recs}
        for r in self.registry:
            if x in r.carriers and id(r) not in ids:
                recs.append(r)
                ids.add(id(r))
        try:
            arcs = self.curve(x).build_arcs(recs, self._sampler)
        except CurveDegenerate as exc:
            raise AssumptionError("carrier %s: %s" % (x, exc))
        out = []
        for arc in arcs:
            if all(self.sign(arc.sample, i) < 0 for i in self.K):
                out.append(arc)
        return out

    # -- outcomes -----------------------------------------------------------------

    def is_empty(self):
        return not self.arcs

    def key(self):
        return FacetKey((self.j, self.k), tuple(self.K))

    def closure_points(self):
        """Breakpoints satisfying every inequality weakly.

        When the face itself is empty this is exactly the weak-closure
        set F-bar: interiors of dropped arcs fail some inequality
        strictly, so only breakpoints can remain.
        """
        out = []
        for rec in self.registry:
            if all(self.sign(rec, i) <= 0 for i in self.K):
                out.append(rec)
        return out

    def boundary_cycles(self):
        """Group surviving arcs into closed cycles by endpoint matching."""
        loops = [[a] for a in self.arcs if a.is_loop()]
        rest = [a for a in self.arcs if not a.is_loop()]
        adj = {}
        for a in rest:
            adj.setdefault(id(a.start), []).append(a)
            adj.setdefault(id(a.end), []).append(a)
        for arcs in adj.values():
            if len(arcs) != 2:
                raise AssumptionError(
                    "boundary is not a 1-manifold (%d arcs at a point)"
                    % len(arcs))
        cycles = []
        seen = set()
        for a in rest:
            if id(a) in seen:
                continue
            cycle = [a]
            seen.add(id(a))
            node = a.end
            while node is not a.start:
                nxt = [b for b in adj[id(node)] if id(b) not in seen]
                if not nxt:
                    raise AssumptionError("open boundary chain")
                b = nxt[0]
                seen.add(id(b))
                cycle.append(b)
                node = b.end if b.start is node else b.start
            cycles.append(cycle)
        return loops + cycles

    def vertex_records(self):
        """Arc endpoints that lie on at least three defining sets."""
        out = []
        seen = set()
        for a in self.arcs:
            for r in a.endpoints():
                if id(r) in seen:
                    continue
                seen.add(id(r))
                carriers = {i for i in self.K if self.sign(r, i) == 0}
                if len(carriers) >= 2:
                    out.append((r, carriers))
        return out

    def interior_sample(self):
        """An exact rational torus point strictly inside the face."""
        for a in self.arcs:
            xq = a.sample
            break
        else:
            return None
        trials = [QQ(0), QQ(1), QQ(-1), QQ(2), QQ(-2), QQ(1, 2), QQ(-1, 2),
                  QQ(3), QQ(-3), QQ(1, 3), QQ(-1, 3)]
        f = self.fn(0).field
        for u1 in trials:
            x1, y1 = _rational_circle_point(u1)
            for u2 in trials:
                x2, y2 = _rational_circle_point(u2)
                vals = [f.elem(x1), f.elem(y1), f.elem(x2), f.elem(y2)]
                if all(self.mpoly(i).eval_elems(vals).sign() < 0
                       for i in self.K):
                    return (x1, y1, x2, y2)
        return None


# ---------------------------------------------------------------------------
# classification of bisector pairs


class Classification:
    """How one candidate pair was decided."""

    __slots__ = ("side", "index", "kind", "witnesses", "face", "closure")

    def __init__(self, side, index, kind, witnesses=(), face=None,
                 closure=()):
        self.side = side
        self.index = index
        self.kind = kind
        self.witnesses = tuple(witnesses)
        self.face = face
        self.closure = tuple(closure)

    def __repr__(self):
        extra = ""
        if self.witnesses:
            extra = " by %s" % (list(self.witnesses),)
        return "Classification(%d vs %d: %s%s)" % (self.side, self.index,
                                                   self.kind, extra)


def ball_contact(chart):
    """Does the chart torus avoid the open ball?

    Returns the list of torus points where the boundary function
    vanishes when it is nonnegative everywhere, or None when the
    torus does enter the ball.
    """
    g0 = chart.restrict(0)
    gm = g0.as_mpoly()
    crits = critical_points(g0)
    touching = []
    for p in crits:
        s = p.sign_of(gm)
        if s < 0:
            return None
        if s == 0:
            touching.append(p)
    return touching


def positivity_witness(chart, scope, cheap_only=True):
    """Indices l with g_l > 0 on the Giraud disk of the chart.

    The disk is the part of the chart torus inside the ball, i.e.
    where g_0 <= 0; a witness proves the chart carries no ridge.  The
    cheap pass only uses the coefficient bound (positivity on the
    whole torus); the full pass certifies positivity relative to the
    disk region.
    """
    out = []
    g0 = chart.restrict(0)
    for l in scope:
        fn = chart.restrict(l)
        if fn.coeff_bound_positive():
            out.append(l)
        elif not cheap_only and torus_region_positive(fn, g0):
            out.append(l)
    return out


def classify_pair(rep, side, cand, scope, refine_order=None):
    """Decide emptiness / combinatorics of the pair (side, cand.index)."""
    k = cand.index
    if not cand.in_range:
        return Classification(side, k, "strip")
    chart = GiraudChart.from_indices(rep, side, k)
    touching = ball_contact(chart)
    if touching is not None:
        return Classification(side, k, "ball", closure=touching)
    others = [i for i in scope if i not in (side, k, 0)]
    cheap = positivity_witness(chart, others)
    if cheap:
        return Classification(side, k, "positive", witnesses=cheap)
    face = FaceComputation(rep, side, k, scope=scope).start()
    order = refine_order if refine_order is not None else others
    for x in order:
        face.refine(x)
        if face.is_empty():
            break
    if face.is_empty():
        closure = face.closure_points()
        witnesses = positivity_witness(chart, others, cheap_only=False)
        kind = "vertex" if closure else "empty"
        if witnesses:
            kind = "positive"
        return Classification(side, k, kind, witnesses=witnesses,
                              face=face, closure=closure)
    return Classification(side, k, "face", face=face)


# ---------------------------------------------------------------------------
# ambient coordinates and vertex identification


def ambient_point(chart, rec):
    """Affine coordinates (x1, y1, x2, y2) in C^2 of a chart point.

    The homogeneous lift is V = b0 + z1 b1 + z2 b2; the affine chart
    divides by the last coordinate, which cannot vanish on the closed
    ball away from the center p_infinity.
    """
    pt = rec.point if isinstance(rec, PointRec) else rec
    ring = pt.ring
    x1, y1, x2, y2 = pt.coords
    b0, b1, b2 = chart.basis
    comps = []
    for i in range(3):
        re = _const(ring, b0[i].re) \
            + x1 * b1[i].re - y1 * b1[i].im + x2 * b2[i].re - y2 * b2[i].im
        im = _const(ring, b0[i].im) \
            + x1 * b1[i].im + y1 * b1[i].re + x2 * b2[i].im + y2 * b2[i].re
        comps.append((ring.reduce(re), ring.reduce(im)))
    (ar, ai), (br, bi), (cr, ci) = comps
    den = ring.reduce(cr * cr + ci * ci)
    inv = ring.invert(den)
    w1r = ring.reduce((ar * cr + ai * ci) * inv)
    w1i = ring.reduce((ai * cr - ar * ci) * inv)
    w2r = ring.reduce((br * cr + bi * ci) * inv)
    w2i = ring.reduce((bi * cr - br * ci) * inv)
    return AlgebraicPoint(ring, (pt.lo, pt.hi), [w1r, w1i, w2r, w2i])


def _const(ring, e):
    return UPoly(ring.field, [e])


def projective_fix_residuals(rep, word, apt):
    """MPolys whose vanishing at the ambient point says the word fixes it.

    For V = (z1, z2, 1) and M the word's matrix, M V is proportional
    to V iff all cross products of the two vanish; real and imaginary
    parts are returned as 4-variable polynomials.
    """
    if isinstance(word, str):
        word = parse_word(word)
    m = rep.matrix(word)
    f = rep.field
    x1 = MPoly.variable(f, NV, 0)
    y1 = MPoly.variable(f, NV, 1)
    x2 = MPoly.variable(f, NV, 2)
    y2 = MPoly.variable(f, NV, 3)
    one = MPoly.constant(f, NV, f.one)
    zero = MPoly.constant(f, NV, f.zero)
    V = [(x1, y1), (x2, y2), (one, zero)]

    def cmul(z, w):
        (a, b), (c, d) = z, w
        return (a * c - b * d, a * d + b * c)

    def cadd(z, w):
        return (z[0] + w[0], z[1] + w[1])

    MV = []
    for i in range(3):
        acc = (zero, zero)
        for jj in range(3):
            e = m.rows[i][jj]
            acc = cadd(acc, cmul((MPoly.constant(f, NV, e.re),
                                  MPoly.constant(f, NV, e.im)), V[jj]))
        MV.append(acc)
    out = []
    for i in range(3):
        for jj in range(i + 1, 3):
            re = MV[i][0] * V[jj][0] - MV[i][1] * V[jj][1] \
                - (V[i][0] * MV[jj][0] - V[i][1] * MV[jj][1])
            im = MV[i][0] * V[jj][1] + MV[i][1] * V[jj][0] \
                - (V[i][0] * MV[jj][1] + V[i][1] * MV[jj][0])
            out.append(re)
            out.append(im)
    return out


def word_fixes_point(rep, word, apt):
    return all(apt.sign_of(r) == 0
               for r in projective_fix_residuals(rep, word, apt))


DEFAULT_STABILIZER_POOL = (
    "2", "-2", "3", "-3",
    "121", "-121", "1-21", "-1-21", "131", "-131", "1-31", "-1-31",
    "2111", "1211",
    "2333", "3233", "3323", "3332", "1121", "1112",
    "-323", "3-23", "-232", "2-32",
    "-212", "21-2", "-313", "31-3",
)


def stabilizer_word(rep, apt, pool=DEFAULT_STABILIZER_POOL):
    """Shortest pool word fixing the point projectively (exactly)."""
    ranked = sorted(pool, key=lambda w: len(parse_word(w)))
    floats = apt.floats()
    z1 = complex(floats[0], floats[1])
    z2 = complex(floats[2], floats[3])
    for w in ranked:
        m = rep.matrix(parse_word(w))
        rows = [[complex(float(e.re), float(e.im)) for e in row]
                for row in m.rows]
        v = (z1, z2, 1.0)
        mv = [sum(rows[i][j] * v[j] for j in range(3)) for i in range(3)]
        cross = abs(mv[0] * v[1] - mv[1] * v[0]) \
            + abs(mv[0] * v[2] - mv[2] * v[0]) \
            + abs(mv[1] * v[2] - mv[2] * v[1])
        scale = max(abs(c) for c in mv) + 1
        if cross / scale > 1e-8:
            continue
        if word_fixes_point(rep, w, apt):
            return w
    return None


# ---------------------------------------------------------------------------
# side complexes


class VertexRecord:
    """A vertex of the polytope with its certified incidence data."""

    __slots__ = ("ambient", "chart_points", "incidence", "kind", "word")

    def __init__(self, ambient, incidence, kind, word=None):
        self.ambient = ambient
        self.chart_points = []
        self.incidence = set(incidence)
        self.kind = kind
        self.word = word

    def __repr__(self):
        tag = self.word or self.kind
        return "Vertex(%s on %s)" % (tag, sorted(self.incidence))


class SideComplex:
    """Computed combinatorics of one core side of the domain."""

    def __init__(self, rep, side_index, width=4, model=None, label_pool=None):
        self.rep = rep
        self.side = side_index
        self.word = bisector_word(side_index)
        self.model = model if model is not None else BoundaryModel(rep)
        self.candidates = enumerate_candidates(self.model, side_index, width)
        self.scope = [c.index for c in self.candidates if c.in_range]
        self.classifications = {}
        self.finite_vertices = []
        self.ideal_vertices = []
        self._label_pool = label_pool or DEFAULT_STABILIZER_POOL

    def run(self):
        for cand in self.candidates:
            cls = classify_pair(self.rep, self.side, cand,
                                [0] + self.scope)
            self.classifications[cand.index] = cls
        self._collect_vertices()
        return self

    def ridges(self):
        return {k: c for k, c in self.classifications.items()
                if c.kind == "face"}

    def classification_rows(self):
        """Indices grouped by decision mechanism, for table comparison."""
        rows = {}
        for k, c in sorted(self.classifications.items()):
            rows.setdefault(c.kind, []).append(k)
        return rows

    def _collect_vertices(self):
        for k, cls in sorted(self.classifications.items()):
            if cls.kind != "face":
                continue
            face = cls.face
            for rec, carriers in face.vertex_records():
                inc = self._incidence(face, rec)
                apt = ambient_point(face.chart, rec)
                kind = "ideal" if 0 in inc else "finite"
                self._add_vertex(apt, rec, inc, kind)
        for v in self.finite_vertices:
            v.word = stabilizer_word(self.rep, v.ambient, self._label_pool)

    def _incidence(self, face, rec):
        inc = set()
        if face.sign(rec, 0) == 0:
            inc.add(0)
        inc.update((face.j, face.k))
        for i in self.scope:
            if i in (face.j, face.k):
                continue
            if face.sign(rec, i) == 0:
                inc.add(i)
        return inc

    def _add_vertex(self, apt, rec, inc, kind):
        bucket = self.ideal_vertices if kind == "ideal" \
            else self.finite_vertices
        for v in bucket:
            if _boxes_overlap(v.ambient, apt) and alg_equal(v.ambient, apt):
                v.incidence.update(inc)
                v.chart_points.append(rec)
                return v
        v = VertexRecord(apt, inc, kind)
        v.chart_points.append(rec)
        bucket.append(v)
        return v

    def vertex_table(self):
        """(word, sorted incidence indices) per finite vertex."""
        rows = []
        for v in self.finite_vertices:
            rows.append((v.word, tuple(sorted(v.incidence))))
        rows.sort(key=lambda r: (r[0] is None, r))
        return rows


def compute_side(rep, side, width=4, model=None):
    """Full combinatorics of a core side ('2', '-2', '3', '-3' or index)."""
    if isinstance(side, str):
        side = CORE_INDEX[side]
    return SideComplex(rep, side, width=width, model=model).run()


# ---------------------------------------------------------------------------
# assumption report


def hessian_mpolys(fn):
    """Second angular derivatives of the restriction, as MPolys."""

    def d1(f):
        i = lambda z: type(z)(-z.im, z.re)
        zero = type(fn.a)(fn.field.zero, fn.field.zero)
        return TorusFn(fn.field.zero, i(f.a), zero, i(f.d))

    def d2(f):
        i = lambda z: type(z)(-z.im, z.re)
        ni = lambda z: type(z)(z.im, -z.re)
        zero = type(fn.a)(fn.field.zero, fn.field.zero)
        return TorusFn(fn.field.zero, zero, i(f.b), ni(f.d))

    f1 = d1(fn)
    f2 = d2(fn)
    h11 = d1(f1).as_mpoly()
    h12 = d2(f1).as_mpoly()
    h22 = d2(f2).as_mpoly()
    return h11, h12, h22


def critical_nondegenerate(fn, carrier=None):
    """Exact Hessian check at the critical points the refinement uses.

    The arc tracing step relies on the critical points of a
    restriction that lie on its own zero curve (the singular points of
    the curve); those must be nondegenerate so that the curve has only
    simple nodes there.  Critical points away from the curve may be
    degenerate without affecting any decision, and the restrictions
    depending on a single angle have whole degenerate critical
    circles, which the curve model certifies to miss the curve.
    """
    cm = CurveModel(fn, carrier)
    sings = cm.singular_points()
    h11, h12, h22 = hessian_mpolys(fn)
    det = h11 * h22 - h12 * h12
    report = [(p, p.sign_of(det)) for p in sings]
    return all(s != 0 for _, s in report), report


def check_assumptions(rep, side, width=4, model=None, charts=None):
    """Genericity report for the candidate scope of one side.

    Covers the three working assumptions: zero-dimensionality of the
    solved systems (witnessed by every solver call succeeding),
    nondegenerate critical points for each restricted function on each
    ridge chart, and absence of isolated components (collected from
    the refinement engine's notes).
    """
    if isinstance(side, str):
        side = CORE_INDEX[side]
    if model is None:
        model = BoundaryModel(rep)
    cands = enumerate_candidates(model, side, width)
    scope = [c.index for c in cands if c.in_range]
    chart_list = charts if charts is not None else scope
    failures = []
    degenerate = []
    solved = 0
    for k in chart_list:
        try:
            chart = GiraudChart.from_indices(rep, side, k)
        except DegenerateChart:
            degenerate.append((side, k))
            continue
        for x in [0] + scope:
            if x in (side, k):
                continue
            fn = chart.restrict(x)
            if fn.b.is_zero() and fn.d.is_zero() and fn.a.is_zero():
                degenerate.append((side, k, x))
                continue
            try:
                ok, report = critical_nondegenerate(fn, carrier=x)
            except (DegenerateSystem, CurveDegenerate) as exc:
                failures.append((side, k, x, str(exc)))
                continue
            solved += 1
            if not ok:
                failures.append((side, k, x, "degenerate critical point"))
    return {"side": side, "checked": solved, "failures": failures,
            "degenerate": degenerate}
