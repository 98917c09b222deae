"""Certificates for the Poincare polyhedron checklist.

Side pairings, ridge cycles with the induced group presentation,
transversality at the finite and ideal vertices, and deformation
stability scans over the twist parameter.  Every verdict here reduces
to an exact matrix identity or an exact sign computation; there are no
floating point thresholds.
"""

from .algebra.mpoly import MPoly
from .algebra.rationals import QQ
from .facets import compute_side
from .giraud import GiraudChart
from .group import (Mat3, ParameterError, Representation, bisector_word,
                    herm, parse_word)
from .heisenberg import BoundaryModel

CORE_SIDES = ("2", "-2", "3", "-3")

# ---------------------------------------------------------------------------
# side pairings


def _as_word(w):
    return parse_word(w) if isinstance(w, str) else tuple(w)


def _inverse_word(w):
    return tuple(-t for t in reversed(w))


def _g1_power_factor(rep, m, span=4):
    """(k, z) with m = z G1^k and |z| = 1, or None."""
    for k in range(-span, span + 1):
        pw = (1,) * k if k >= 0 else (-1,) * (-k)
        z = m.scalar_factor_of(rep.matrix(pw))
        if z is not None and (z.norm2() - 1).is_zero():
            return k, z
    return None


class PairingCertificate:
    """One face-pairing identity, certified by its matrix residual."""

    __slots__ = ("pairing", "source", "target", "power", "scalar", "valid",
                 "residual")

    def __init__(self, pairing, source, target, power, scalar, valid,
                 residual=None):
        self.pairing = pairing
        self.source = source
        self.target = target
        self.power = power
        self.scalar = scalar
        self.valid = valid
        self.residual = residual

    def __repr__(self):
        ok = "ok" if self.valid else "FAILED"
        return "Pairing(%s: %s -> %s, G1^%s, %s)" % (
            self.pairing, self.source, self.target, self.power, ok)


# (source face word, target face word): the pairing map sends the
# 2-face of the source onto the 2-face of the target, and the residual
# target^-1 . pairing . source is a power of G1.
G2_PAIRING_TABLE = [
    ("3", "-13"),
    ("-1-1-1-3", "1-3"),
    ("-13", "-1-2"),
    ("-12", "-3"),
    ("-1-1-3", "1-2"),
    ("12", "3"),
    ("-1-2", "12"),
    ("-1-1-2", "112"),
]

G3_PAIRING_TABLE = [
    ("2", "-1-3"),
    ("-2", "-2"),
    ("12", "112"),
    ("1-2", "1-3"),
    ("13", "1112"),
    ("-13", "-1-2"),
]

# (pairing word, stabilizer word of source vertex, stabilizer word of
# the image vertex): the pairing map carries the fixed point of the
# first stabilizer to the fixed point of the second.
VERTEX_IMAGE_TABLE = [
    ("-2", "2", "2"),
    ("-2", "-121", "-323"),
    ("-2", "2111", "2333"),
    ("-2", "1211", "3233"),
    ("-3", "2", "-323"),
    ("-3", "12-1", "1112"),
]


def _pairing_certificate(rep, pairing, source, target):
    pairing_w = _as_word(pairing)
    source_w = _as_word(source)
    target_w = _as_word(target)
    residual = _inverse_word(target_w) + pairing_w + source_w
    m = rep.matrix(residual)
    found = _g1_power_factor(rep, m)
    if found is None:
        return PairingCertificate(pairing, source, target, None, None,
                                  False, residual=m)
    k, z = found
    return PairingCertificate(pairing, source, target, k, z, True)


def _proportional(u, v):
    """u = z v for some nonzero complex scalar z; returns z or None."""
    z = None
    for x, y in zip(u, v):
        if not y.is_zero():
            z = x / y
            break
    if z is None:
        return None
    for x, y in zip(u, v):
        if not (x - z * y).is_zero():
            return None
    return z


def _vertex_image_certificate(rep, pairing, source, target):
    v = rep.fixed_point(_as_word(source))
    u = rep.matrix(_as_word(pairing)) * v
    # u is a negative vector fixed by the target word iff it is the
    # isolated fixed point of that (elliptic) word
    mu = rep.matrix(_as_word(target)) * u
    z = _proportional(mu, u)
    valid = z is not None and herm(u, u).re.sign() < 0
    return PairingCertificate(pairing, "p_{%s}" % source, "p_{%s}" % target,
                              None, z, valid)


def verify_side_pairings(rep):
    """All fourteen face-pairing identities plus the six vertex images."""
    certs = []
    for source, target in G2_PAIRING_TABLE:
        certs.append(_pairing_certificate(rep, "-2", source, target))
    for source, target in G3_PAIRING_TABLE:
        certs.append(_pairing_certificate(rep, "-3", source, target))
    for pairing, source, target in VERTEX_IMAGE_TABLE:
        certs.append(_vertex_image_certificate(rep, pairing, source, target))
    return certs


# ---------------------------------------------------------------------------
# ridge cycles and the presentation


class CycleRelation:
    """One ridge cycle with its closing power and derived relation."""

    __slots__ = ("ridge", "steps", "power", "order", "relation", "valid",
                 "notes")

    def __init__(self, ridge, steps, power, order, relation, valid, notes=""):
        self.ridge = ridge
        self.steps = steps
        self.power = power
        self.order = order
        self.relation = relation
        self.valid = valid
        self.notes = notes

    def __repr__(self):
        ok = "ok" if self.valid else "FAILED"
        return "Cycle(%s ^ %s: close by G1^%d, order %s, %s)" % (
            self.ridge[0], self.ridge[1], self.power, self.order, ok)


# Each entry: the successive ridges (pairs of face words) and the
# closing power k, meaning the last ridge is the G1^k translate of the
# first.  The pairing applied at each step is the inverse of the first
# word of the current ridge.
RIDGE_CYCLE_TABLE = [
    ([("2", "3"), ("-131", "-2"), ("-3", "-1-31"), ("2", "3")], 0),
    ([("2", "-1-1-1-3111"), ("1-3-1", "-2"), ("3", "13-1"),
      ("1112-1-1-1", "-3")], 3),
    ([("2", "-131"), ("-1-21", "-2"), ("-1-1-1-3111", "-121"),
      ("-1-1211", "-1-1-13111")], -2),
    ([("2", "-121"), ("-3", "-2"), ("-2", "3"), ("12-1", "2")], 1),
    ([("2", "-1-21"), ("12-1", "-2")], 1),
    ([("2", "-1-1-211"), ("112-1-1", "-2")], 2),
]


def _unit_proportional(u, v):
    z = _proportional(u, v)
    return z is not None and (z.norm2() - 1).is_zero()


def _step_moves_ridge(rep, g, ridge, ridge_next):
    """The pairing g = u^-1 carries the ridge of B_u and B_v onto the next.

    A ridge point is equidistant from p0, u p0 and v p0; its image is
    equidistant from g p0, p0 and g v p0, so the image ridge lies on the
    sides defined by the lifts g p0 and g v p0.  Those two lifts must
    match the defining lifts of the next ridge, each up to a unit
    scalar.
    """
    gm = rep.matrix(_as_word(g))
    qv = rep.matrix(_as_word(ridge[1])) * rep.p0
    imgs = [gm * rep.p0, gm * qv]
    targets = [rep.matrix(_as_word(w)) * rep.p0 for w in ridge_next]
    return ((_unit_proportional(imgs[0], targets[0])
             and _unit_proportional(imgs[1], targets[1]))
            or (_unit_proportional(imgs[0], targets[1])
                and _unit_proportional(imgs[1], targets[0])))


def _trace_cycle(rep, ridges, power):
    """Compose the pairings around a ridge; returns (steps, relation)."""
    steps = []
    total = ()
    ok = True
    for cur, nxt in zip(ridges, ridges[1:]):
        g = _inverse_word(_as_word(cur[0]))
        steps.append(g)
        if not _step_moves_ridge(rep, g, cur, nxt):
            ok = False
        total = g + total
    # close up by G1^-power back to the initial ridge
    closing = (-1,) * power if power >= 0 else (1,) * (-power)
    closed = closing + total
    mc = rep.matrix(closed)
    order = None
    acc = mc
    ident = rep.identity()
    for n in range(1, 7):
        if rep.projectively_equal(acc, ident):
            order = n
            break
        acc = acc * mc
    relation = closed * order if order else None
    return steps, closed, order, relation, ok and order is not None


def _free_reduce(word):
    out = []
    for t in word:
        if out and out[-1] == -t:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def _rotations(word):
    return {word[i:] + word[:i] for i in range(len(word))}


def rewrite_to_identity(word, relators, max_len=40, max_nodes=200000):
    """A path from `word` to the empty word by relator insertions.

    Moves insert any cyclic rotation of a relator or of its inverse at
    any position, followed by free reduction; the search is best-first
    on length.  Returns the list of intermediate words (both endpoints
    included) or None when no derivation within the bounds is found.
    """
    import heapq

    inserts = set()
    for r in relators:
        r = _free_reduce(_as_word(r))
        for rot in _rotations(r):
            inserts.add(rot)
            inserts.add(_inverse_word(rot))
    start = _free_reduce(_as_word(word))
    if not start:
        return [start]
    heap = [(len(start), start)]
    parent = {start: None}
    seen = 0
    while heap and seen < max_nodes:
        _, w = heapq.heappop(heap)
        seen += 1
        for ins in inserts:
            for pos in range(len(w) + 1):
                nxt = _free_reduce(w[:pos] + ins + w[pos:])
                if len(nxt) > max_len or nxt in parent:
                    continue
                parent[nxt] = w
                if not nxt:
                    path = [nxt]
                    while path[-1] is not None:
                        path.append(parent[path[-1]])
                    path.pop()
                    path.reverse()
                    return path
                heapq.heappush(heap, (len(nxt), nxt))
    return None


def _witness_path(rep, path):
    """Every step of a rewriting path is an exact projective identity."""
    for prev, cur in zip(path, path[1:]):
        if not rep.projectively_equal(rep.matrix(prev), rep.matrix(cur)):
            return False
    return True


PRESENTATION = {
    "g2 = [g3, g1^-1]": (-2, 3, -1, -3, 1),
    "g1 g2 = g2 g3": (1, 2, -3, -2),
    "g2^4": (2, 2, 2, 2),
    "(g1 g2)^3": (1, 2) * 3,
    "(g2 g1 g2)^3": (2, 1, 2) * 3,
}


def ridge_cycle_relations(rep):
    """The six ridge cycles and the equivalence with the presentation.

    Returns (cycles, presentation report).  Each cycle is traced through
    its ridges with every pairing step certified on the bisector lifts;
    the derived relations and the five presentation relators are then
    shown to generate the same normal closure by explicit bounded
    rewriting, every step of which is checked as a matrix identity.
    """
    cycles = []
    for ridges, power in RIDGE_CYCLE_TABLE:
        steps, closed, order, relation, valid = _trace_cycle(
            rep, ridges, power)
        cycles.append(CycleRelation(ridges[0], steps, power, order,
                                    relation, valid))
    derived = [c.relation for c in cycles if c.relation]
    relators = list(PRESENTATION.values())
    report = {}
    for name, rel in PRESENTATION.items():
        path = rewrite_to_identity(rel, derived)
        report[name] = path is not None and _witness_path(rep, path)
    for i, c in enumerate(cycles):
        path = rewrite_to_identity(c.relation, relators) \
            if c.relation else None
        report["cycle %d" % (i + 1)] = path is not None \
            and _witness_path(rep, path)
    return cycles, report


# ---------------------------------------------------------------------------
# ambient bisector equations in the global spinal chart


def ambient_equation(chart, x):
    """The defining quadric of constraint x as an MPoly in (x1,y1,x2,y2).

    Global affine coordinates (z1, z2) extend the spinal chart through
    V = b0 + z1 b1 + z2 b2; the equation has the shape
    c + p |z1|^2 + q |z2|^2 + Re(a z1) + Re(b z2) + Re(d z1 conj z2).
    x = 0 gives the boundary of the ball, an index the usual
    |<V,p0>|^2 - |<V, q_x p0>|^2.
    """
    rep = chart.rep
    if x == 0:
        b0, b1, b2 = chart.basis
        cc, p, q = herm(b0, b0).re, herm(b1, b1).re, herm(b2, b2).re
        a, b, d = 2 * herm(b1, b0), 2 * herm(b2, b0), 2 * herm(b1, b2)
    else:
        word = bisector_word(x) if isinstance(x, int) else _as_word(x)
        qx = rep.matrix(word) * rep.p0
        c = chart.pairing_coeffs(rep.p0)
        e = chart.pairing_coeffs(qx)
        cc = c[0].norm2() - e[0].norm2()
        p = c[1].norm2() - e[1].norm2()
        q = c[2].norm2() - e[2].norm2()
        a = 2 * (c[1] * c[0].conj() - e[1] * e[0].conj())
        b = 2 * (c[2] * c[0].conj() - e[2] * e[0].conj())
        d = 2 * (c[1] * c[2].conj() - e[1] * e[2].conj())
    f = chart.field
    return MPoly(f, 4, {
        (0, 0, 0, 0): cc,
        (2, 0, 0, 0): p, (0, 2, 0, 0): p,
        (0, 0, 2, 0): q, (0, 0, 0, 2): q,
        (1, 0, 0, 0): a.re, (0, 1, 0, 0): -a.im,
        (0, 0, 1, 0): b.re, (0, 0, 0, 1): -b.im,
        (1, 0, 1, 0): d.re, (0, 1, 0, 1): d.re,
        (0, 1, 1, 0): -d.im, (1, 0, 0, 1): d.im,
    })


def gradient_mpolys(eq):
    return [eq.diff(i) for i in range(4)]


def chart_coordinates(chart, vec):
    """The (z1, z2) chart coordinates of a homogeneous lift, exactly."""
    m = Mat3([[chart.basis[j][i] for j in range(3)] for i in range(3)])
    alpha, beta, gamma = m.inverse() * vec
    return beta / alpha, gamma / alpha


# ---------------------------------------------------------------------------
# transversality at the finite vertex p2


class TransversalityReport:
    """Exact rank data for the bisectors through one vertex."""

    __slots__ = ("vertex", "indices", "gradients", "pair_ranks",
                 "triple_ranks", "quad_ranks", "non_transverse", "tangents",
                 "exits", "valid")

    def __init__(self, vertex, indices, gradients, pair_ranks, triple_ranks,
                 quad_ranks, non_transverse, tangents, exits, valid):
        self.vertex = vertex
        self.indices = indices
        self.gradients = gradients
        self.pair_ranks = pair_ranks
        self.triple_ranks = triple_ranks
        self.quad_ranks = quad_ranks
        self.non_transverse = non_transverse
        self.tangents = tangents
        self.exits = exits
        self.valid = valid

    def __repr__(self):
        return "Transversality(%s: non-transverse %s)" % (
            list(self.indices), self.non_transverse)


def _minor_dets(rows, size):
    """Determinants of all size x size minors of a list of 4-vectors."""
    from itertools import combinations
    out = []
    n = len(rows)
    for ri in combinations(range(n), size):
        for ci in combinations(range(4), size):
            sub = [[rows[i][j] for j in ci] for i in ri]
            out.append(_det(sub))
    return out


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _rank(rows):
    """Exact rank of a list of 4-vectors of field elements."""
    for size in (min(len(rows), 4), min(len(rows), 4) - 1, 2, 1):
        if size <= 0:
            break
        if any(not d.is_zero() for d in _minor_dets(rows, size)):
            return size
    return 0


def _kernel_direction(rows, field):
    """A nonzero vector orthogonal to four rank-3 gradient rows."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(4):
        piv = next((i for i in range(r, len(work))
                    if not work[i][c].is_zero()), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inverse()
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                fct = work[i][c]
                work[i] = [x - fct * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(4) if c not in pivots]
    if not free:
        return None
    c = free[0]
    vec = [field.zero] * 4
    vec[c] = field.one
    for i, pc in enumerate(pivots):
        vec[pc] = -work[i][c]
    return vec


def vertex_transversality(rep, indices=(1, 2, 3, 5, 10, 11), vertex_word="2"):
    """Rank analysis of the bisectors through an elliptic fixed vertex.

    Works in the global chart of the first two indices; gradients are
    exact field elements, ranks come from exact minors, and each
    tangent direction of a rank-deficient quadruple is followed to its
    two exit bisectors by exact first order signs.
    """
    from itertools import combinations

    # the global chart through the first pair of incident bisectors
    chart = GiraudChart.from_indices(rep, indices[0], indices[2])
    field = rep.field
    v = rep.fixed_point(_as_word(vertex_word))
    z1, z2 = chart_coordinates(chart, v)
    coords = [z1.re, z1.im, z2.re, z2.im]
    grads = {}
    for i in indices:
        eq = ambient_equation(chart, i)
        if not eq.eval_elems(coords).is_zero():
            raise ValueError("vertex is not on bisector %d" % i)
        grads[i] = [g.eval_elems(coords) for g in gradient_mpolys(eq)]
    pair_ranks = {}
    for pair in combinations(indices, 2):
        pair_ranks[pair] = _rank([grads[i] for i in pair])
    triple_ranks = {}
    for tri in combinations(indices, 3):
        triple_ranks[tri] = _rank([grads[i] for i in tri])
    quad_ranks = {}
    non_transverse = []
    tangents = {}
    exits = {}
    for quad in combinations(indices, 4):
        rows = [grads[i] for i in quad]
        rk = _rank(rows)
        quad_ranks[quad] = rk
        if rk == 4:
            continue
        non_transverse.append(quad)
        u = _kernel_direction(rows, field)
        if u is None:
            continue
        # normalize so the last coordinate is 1, as a readable witness
        if not u[3].is_zero():
            inv = u[3].inverse()
            u = [x * inv for x in u]
        tangents[quad] = u
        plus, minus = [], []
        for m in indices:
            if m in quad:
                continue
            s = sum((grads[m][t] * u[t] for t in range(1, 4)),
                    grads[m][0] * u[0]).sign()
            if s > 0:
                plus.append(m)
            elif s < 0:
                minus.append(m)
        exits[quad] = (tuple(plus), tuple(minus))
    valid = (all(r == 2 for r in pair_ranks.values())
             and all(r == 3 for r in triple_ranks.values())
             and all(len(e[0]) == 1 and len(e[1]) == 1
                     for e in exits.values()))
    return TransversalityReport((z1, z2), tuple(indices), grads, pair_ranks,
                                triple_ranks, quad_ranks,
                                tuple(non_transverse), tangents, exits, valid)


# ---------------------------------------------------------------------------
# transversality at ideal vertices


def ideal_vertex_transversality(chart, point, incidence):
    """Certify independence of the 4 gradients at an ideal vertex.

    `point` is an AlgebraicPoint in the torus coordinates of `chart`
    and `incidence` the incident constraint indices including 0 (the
    boundary of the ball).  The 4x4 determinant of the gradients (three
    bisector extors plus the sphere at infinity) is evaluated as one
    exact sign.
    """
    idx = sorted(incidence)
    if 0 not in idx or len(idx) != 4:
        raise ValueError("expected the ball and exactly three bisectors")
    grad_rows = []
    for i in idx:
        eq = ambient_equation(chart, i)
        grad_rows.append(gradient_mpolys(eq))
    det = _mpoly_det4(grad_rows)
    s = point.sign_of(det)
    return s != 0


def _mpoly_det4(rows):
    from itertools import permutations
    total = None
    for perm in permutations(range(4)):
        sign = _perm_sign(perm)
        term = rows[0][perm[0]]
        for i in range(1, 4):
            term = term * rows[i][perm[i]]
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def ideal_vertices_of_side(side_complex):
    """(chart, torus point, incidence) for each ideal vertex of a side."""
    out = []
    for k, cls in sorted(side_complex.classifications.items()):
        if cls.kind != "face":
            continue
        face = cls.face
        for rec, carriers in face.vertex_records():
            inc = side_complex._incidence(face, rec)
            if 0 in inc:
                out.append((face.chart, rec.point, inc))
    return out


def batch_ideal_transversality(side_complexes):
    """Certify every ideal vertex of the given side complexes."""
    results = []
    for sc in side_complexes:
        for chart, point, inc in ideal_vertices_of_side(sc):
            keep = sorted(inc)[:4] if len(inc) > 4 else sorted(inc)
            ok = ideal_vertex_transversality(chart, point, keep)
            results.append((sc.side, tuple(sorted(inc)), ok))
    return results


# ---------------------------------------------------------------------------
# the six-bisector membership lemmas


P2_MEMBERSHIP = (1, 2, 3, 5, 10, 11)
P121_MEMBERSHIP = (1, 9, 10, 11, 18, 19)


def explicit_p2(rep):
    """The paper normalization (1+l^3, ab - d conj(l)^2, (conj l + l^2)(e+b))."""
    lam, a, b, d, e = rep.lam, rep.a, rep.b, rep.d, rep.e
    l2 = lam * lam
    l3 = l2 * lam
    lc = lam.conj()
    one = type(lam)(rep.field.one, rep.field.zero)
    return (one + l3, a * b - d * (lc * lc), (lc + l2) * (e + b))


def six_bisector_membership(rep):
    """Lemma checks: p2 and G1^-1 p2 each lie on six bounding bisectors.

    Returns a dict of named boolean certificates, all derived from exact
    identities in the coefficient field of the representation.
    """
    field = rep.field
    lam = rep.lam
    p2 = explicit_p2(rep)
    out = {}
    g2p2 = rep.matrix((2,)) * p2
    out["p2 fixed by g2"] = _proportional(g2p2, p2) is not None
    # |<p2, p0>|^2 = 2 + l^3 + conj(l)^3 = 2 + 2 kappa
    target = field.elem(2 + 2 * rep.kappa)
    n0 = herm(p2, rep.p0).norm2()
    out["|<p2,p0>|^2 = 2+l^3+conj(l)^3"] = (n0 - target).is_zero()
    # <p2, X> for X = (conj b, a, conj l) against the closed form
    X = (rep.b.conj(), rep.a, lam.conj())
    lc3 = (lam.conj() * lam.conj()) * lam.conj()
    l3 = (lam * lam) * lam
    two = type(lam)(field.elem(2), field.zero)
    closed = lam.conj() * (two - l3 - lc3 - rep.b * rep.b * lam)
    # the displayed closed form pairs with conjugate linearity in the
    # first slot, i.e. it equals herm(X, p2) in this package's herm
    val = herm(X, p2)
    out["<p2,X> closed form"] = (val - closed).is_zero()
    out["|<p2,X>|^2 = 2+l^3+conj(l)^3"] = (val.norm2() - target).is_zero()
    for i in P2_MEMBERSHIP:
        qi = rep.matrix(bisector_word(i)) * rep.p0
        out["p2 on bisector %d" % i] = \
            (herm(p2, qi).norm2() - n0).is_zero()
    # the translated statement for p_{bar121} = G1^-1 p2
    p121 = rep.matrix((-1,)) * p2
    n1 = herm(p121, rep.p0).norm2()
    out["|<p_{-121},p0>|^2 = 2+l^3+conj(l)^3"] = (n1 - target).is_zero()
    for i in P121_MEMBERSHIP:
        qi = rep.matrix(bisector_word(i)) * rep.p0
        out["p_{-121} on bisector %d" % i] = \
            (herm(p121, qi).norm2() - n1).is_zero()
    return out


class _Tower:
    """Arithmetic in Q(s)[sigma, tau, alpha, i] modulo the squares.

    Elements are dicts keyed by exponent bits (sigma, tau, alpha, i)
    with rational-function coefficients in s; sigma^2 = 1+s^2, tau^2 =
    8 kappa - 1, i^2 = -1, and alpha^2 = (line + tau odd) sigma /
    (1+s^2)^2 folds back into the tower.  Every product is reduced on
    the spot, so zero testing is coefficient-wise and exact: a zero
    verdict is a polynomial identity in the twist parameter, not a
    sample check.
    """

    def __init__(self):
        from sympy.polys.fields import field
        from sympy import QQ as SQ
        F, s = field("s", SQ)
        self.F, self.s = F, s
        self.den = 1 + s ** 2
        # kappa = Re(lambda^3), lambda = (1+is)^2/(1+s^2)
        self.kappa = (1 - 15 * s ** 2 + 15 * s ** 4 - s ** 6) / self.den ** 3
        self.tau2 = 8 * self.kappa - 1
        self.line = 1 - 3 * s ** 2
        self.odd = s * (3 - s ** 2)
        # alpha^2 as a tower element with alpha-free keys
        self.asq = {(1, 0, 0, 0): self.line / self.den ** 2,
                    (1, 1, 0, 0): self.odd / self.den ** 2}

    def scalar(self, c):
        return {(0, 0, 0, 0): c * self.F.one}

    def add(self, x, y):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    def neg(self, x):
        return {k: -c for k, c in x.items()}

    def mul(self, x, y):
        out = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                for k, c in self._term(k1, k2, c1 * c2):
                    if k in out:
                        out[k] += c
                    else:
                        out[k] = c
        return {k: c for k, c in out.items() if c}

    def _term(self, k1, k2, c):
        sg = k1[0] + k2[0]
        ta = k1[1] + k2[1]
        al = k1[2] + k2[2]
        im = k1[3] + k2[3]
        if sg == 2:
            c *= self.den
        if ta == 2:
            c *= self.tau2
        if im == 2:
            c = -c
        key = (sg % 2, ta % 2, al % 2, im % 2)
        if al < 2:
            return [(key, c)]
        # alpha^2 = asq: distribute over its two terms
        out = []
        for ka, ca in self.asq.items():
            out.extend(self._term((key[0], key[1], 0, key[3]), ka, c * ca))
        return out

    def conj(self, x):
        return {k: (-c if k[3] else c) for k, c in x.items()}

    def is_zero(self, x):
        return not x


def six_bisector_identity():
    """The membership lemmas as identities over the whole parameter field.

    Reruns the p2 and p_{bar121} computations with the twist parameter
    kept symbolic, using _Tower arithmetic, so every verdict covers the
    entire parabolic family at once.  Returns a dict of named booleans
    mirroring six_bisector_membership.
    """
    T = _Tower()
    s = T.s
    sc = T.scalar
    one = sc(1)

    def elem(*terms):
        return {k: c for k, c in terms if c}

    lam = elem(((0, 0, 0, 0), (1 - s ** 2) / T.den),
               ((0, 0, 0, 1), 2 * s / T.den))
    half = T.F.one / 2
    b = elem(((1, 0, 0, 0), -half / T.den),
             ((1, 1, 0, 0), -s * half / T.den),
             ((1, 0, 0, 1), s * half / T.den),
             ((1, 1, 0, 1), -half / T.den))
    e_ = elem(((1, 0, 0, 0), -half / T.den),
              ((1, 1, 0, 0), s * half / T.den),
              ((1, 0, 0, 1), s * half / T.den),
              ((1, 1, 0, 1), half / T.den))
    a = elem(((0, 0, 1, 0), T.F.one))
    # d = (2 kappa - 1)/a, rationalized through the tower
    r = (2 * T.kappa - 1) * T.den / (T.line ** 2 - T.tau2 * T.odd ** 2)
    d = elem(((1, 0, 1, 0), r * T.line), ((1, 1, 1, 0), -r * T.odd))
    lamc = T.conj(lam)
    zero = {}
    c_ = T.neg(T.mul(a, lamc))
    f = T.neg(T.mul(d, lamc))
    lb2 = T.mul(lamc, lamc)
    G1 = [[lam, a, b], [zero, lb2, c_], [zero, zero, lam]]
    G3 = [[lam, zero, zero], [f, lb2, zero], [e_, d, lam]]

    def mmul(m, n):
        return [[T.add(T.add(T.mul(m[i][0], n[0][j]),
                             T.mul(m[i][1], n[1][j])),
                       T.mul(m[i][2], n[2][j])) for j in range(3)]
                for i in range(3)]

    def adjugate(m):
        def co(i, j):
            r_ = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            det = T.add(T.mul(m[r_[0]][c[0]], m[r_[1]][c[1]]),
                        T.neg(T.mul(m[r_[0]][c[1]], m[r_[1]][c[0]])))
            return det if (i + j) % 2 == 0 else T.neg(det)
        return [[co(j, i) for j in range(3)] for i in range(3)]

    G1i, G3i = adjugate(G1), adjugate(G3)
    G2 = mmul(mmul(G3, G1i), mmul(G3i, G1))
    G2i = adjugate(G2)
    gens = {1: G1, -1: G1i, 2: G2, -2: G2i, 3: G3, -3: G3i}
    ident = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]

    def mat(word):
        m = ident
        for t in _as_word(word):
            m = mmul(m, gens[t])
        return m

    def apply(m, v):
        return [T.add(T.add(T.mul(m[i][0], v[0]), T.mul(m[i][1], v[1])),
                      T.mul(m[i][2], v[2])) for i in range(3)]

    def pair(u, v):
        return T.add(T.add(T.mul(u[0], T.conj(v[2])),
                           T.mul(u[1], T.conj(v[1]))),
                     T.mul(u[2], T.conj(v[0])))

    def norm2(x):
        return T.mul(x, T.conj(x))

    def sub(x, y):
        return T.add(x, T.neg(y))

    p0 = [one, zero, zero]
    l2 = T.mul(lam, lam)
    l3 = T.mul(l2, lam)
    lc2 = T.conj(l2)
    lc3 = T.conj(l3)
    p2 = [T.add(one, l3),
          sub(T.mul(a, b), T.mul(d, lc2)),
          T.mul(T.add(lamc, l2), T.add(e_, b))]
    out = {}
    out["tower consistency d*a = 2 kappa - 1"] = \
        T.is_zero(sub(T.mul(d, a), sc(2 * T.kappa - 1)))
    g2p2 = apply(mat("2"), p2)
    out["p2 fixed by g2"] = all(
        T.is_zero(sub(T.mul(g2p2[i], p2[j]), T.mul(g2p2[j], p2[i])))
        for i in range(3) for j in range(i + 1, 3))
    target = T.add(sc(2), T.add(l3, lc3))
    n0 = norm2(pair(p2, p0))
    out["|<p2,p0>|^2 = 2+l^3+conj(l)^3"] = T.is_zero(sub(n0, target))
    X = [T.conj(b), a, lamc]
    val = pair(p2, X)
    # the displayed closed form pairs with conjugate linearity in the
    # first slot, so it equals the conjugate of pair(p2, X)
    closed = T.mul(lamc, sub(sc(2), T.add(T.add(l3, lc3),
                                          T.mul(T.mul(b, b), lam))))
    out["<p2,X> closed form"] = T.is_zero(sub(T.conj(val), closed))
    out["|<p2,X>|^2 = 2+l^3+conj(l)^3"] = T.is_zero(sub(norm2(val), target))
    for i in P2_MEMBERSHIP:
        qi = apply(mat(bisector_word(i)), p0)
        out["p2 on bisector %d" % i] = \
            T.is_zero(sub(norm2(pair(p2, qi)), n0))
    p121 = apply(mat("-1"), p2)
    n1 = norm2(pair(p121, p0))
    out["|<p_{-121},p0>|^2 = 2+l^3+conj(l)^3"] = T.is_zero(sub(n1, target))
    for i in P121_MEMBERSHIP:
        qi = apply(mat(bisector_word(i)), p0)
        out["p_{-121} on bisector %d" % i] = \
            T.is_zero(sub(norm2(pair(p121, qi)), n1))
    return out


# ---------------------------------------------------------------------------
# stability scan


class StabilityReport:
    """Re-run of the whole checklist at one twist parameter sample."""

    __slots__ = ("s", "admissible", "reason", "relations", "membership",
                 "pairings", "cycles", "transversality", "lattice_diff",
                 "verdict")

    def __init__(self, s):
        self.s = QQ(s)
        self.admissible = True
        self.reason = None
        self.relations = None
        self.membership = None
        self.pairings = None
        self.cycles = None
        self.transversality = None
        self.lattice_diff = None
        self.verdict = None

    def passed(self):
        if not self.admissible:
            return False
        return self.verdict == "identical"

    def __repr__(self):
        return "Stability(s=%s: %s)" % (self.s, self.verdict or self.reason)


def facet_lattice(side_complexes):
    """A hashable summary of the face lattice, index for index."""
    summary = {}
    for sc in side_complexes:
        rows = {k: tuple(v) for k, v in sc.classification_rows().items()}
        verts = tuple(sorted((w, inc) for w, inc in sc.vertex_table()))
        ideal = tuple(sorted(tuple(sorted(v.incidence))
                             for v in sc.ideal_vertices))
        summary[sc.side] = (rows.get("face", ()), verts, ideal)
    return summary


def _lattice_diff(base, other):
    diffs = []
    for side in sorted(set(base) | set(other)):
        if base.get(side) != other.get(side):
            diffs.append((side, base.get(side), other.get(side)))
    return diffs


def run_checklist(rep, sides=CORE_SIDES, complexes=None):
    """Relations, memberships, pairings, cycles, transversality, lattice."""
    result = {}
    result["relations"] = rep.verify_relations()
    result["membership"] = six_bisector_membership(rep)
    result["pairings"] = verify_side_pairings(rep)
    cycles, presentation = ridge_cycle_relations(rep)
    result["cycles"] = cycles
    result["presentation"] = presentation
    result["transversality"] = vertex_transversality(rep)
    if complexes is None:
        model = BoundaryModel(rep)
        complexes = [compute_side(rep, s, model=model) for s in sides]
    result["complexes"] = complexes
    result["ideal"] = batch_ideal_transversality(complexes)
    result["lattice"] = facet_lattice(complexes)
    return result


def stability_scan(samples, baseline=None, sides=CORE_SIDES):
    """Deformation test: re-run the pipeline at each rational sample."""
    if baseline is None:
        baseline = run_checklist(Representation(0), sides=sides)
    reports = []
    for s in samples:
        rpt = StabilityReport(s)
        try:
            rep = Representation(s)
        except ParameterError as exc:
            rpt.admissible = False
            rpt.reason = "outside parabolic family: %s" % exc
            reports.append(rpt)
            continue
        res = run_checklist(rep, sides=sides)
        rpt.relations = all(res["relations"].values())
        rpt.membership = all(res["membership"].values())
        rpt.pairings = all(c.valid for c in res["pairings"])
        rpt.cycles = (all(c.valid for c in res["cycles"])
                      and all(res["presentation"].values()))
        tr = res["transversality"]
        rpt.transversality = (tr.valid
                              and tr.non_transverse
                              == baseline["transversality"].non_transverse
                              and all(ok for _, _, ok in res["ideal"]))
        rpt.lattice_diff = _lattice_diff(baseline["lattice"], res["lattice"])
        checks = [rpt.relations, rpt.membership, rpt.pairings, rpt.cycles,
                  rpt.transversality]
        if all(checks) and not rpt.lattice_diff:
            rpt.verdict = "identical"
        else:
            rpt.verdict = "diff: %s" % {
                "relations": rpt.relations, "membership": rpt.membership,
                "pairings": rpt.pairings, "cycles": rpt.cycles,
                "transversality": rpt.transversality,
                "lattice": rpt.lattice_diff}
        reports.append(rpt)
    return reports
