"""Topology of the domain boundary at infinity.

The boundary of the domain meets the sphere at infinity in a region E
bounded by a surface C, and C is tiled by hexagons: each core spinal
sphere contributes the cycle of six ideal vertices computed by the
facet engine, and the G1-translates of these four hexagons cover C.
This module assembles the tiling, derives the identifications induced
by the side pairings and by G1, and checks that the quotient pattern
is the expected torus with the frozen spine identification pattern.

The pictures here are purely combinatorial: cells are labelled by
bisector index triples, so all checks reduce to exact index bookkeeping
on top of the certified facet and pairing computations.  The only
metric statement is cylinder_check, which certifies that the segment
joining consecutive G1-images of the origin stays strictly inside the
first core sphere, so C winds around an unknotted core curve.
"""

import json
import os

from .algebra.rationals import QQ
from .group import parse_word
from .facets import CORE_INDEX, compute_side, conjugate_index, index_power
from .heisenberg import BoundaryModel, HeisPoint, cygan_distance4, \
    sphere_equation
from .algebra.cx import Cx


class BoundaryError(ValueError):
    """Combinatorial mismatch while assembling the boundary tiling."""


# ---------------------------------------------------------------------------
# hexagon tiling

def _shift_triple(triple, dp):
    """Relabel a bisector index triple by conjugating with G1^dp."""
    out = []
    for idx in triple:
        core, p = index_power(idx)
        out.append(conjugate_index(core, p + dp))
    return tuple(sorted(out))


def _canonical_triple(triple):
    """Lexicographically smallest G1-relabelling of a vertex triple."""
    return min(_shift_triple(triple, dp) for dp in range(-6, 7))


def _cycle_from_adjacency(triples, side):
    """Order vertex triples of one side into the hexagon cycle.

    Two ideal vertices of a side are joined by an ideal edge exactly
    when they lie on a common second bisector, i.e. when their triples
    share two indices (the side itself plus one more).
    """
    nbrs = {t: [] for t in triples}
    for i, a in enumerate(triples):
        for b in triples[i + 1:]:
            if len(set(a) & set(b)) == 2:
                nbrs[a].append(b)
                nbrs[b].append(a)
    for t, ns in nbrs.items():
        if len(ns) != 2:
            raise BoundaryError(
                "ideal vertex %s of side %d has %d neighbors, not 2"
                % (t, side, len(ns)))
    start = min(triples)
    cycle = [start, min(nbrs[start])]
    while len(cycle) < len(triples):
        prev, cur = cycle[-2], cycle[-1]
        nxt = [n for n in nbrs[cur] if n != prev]
        cycle.append(nxt[0])
    if cycle[-1] not in nbrs[start] or len(set(cycle)) != len(triples):
        raise BoundaryError("ideal boundary of side %d is not a single cycle"
                            % side)
    return cycle


class HexTiling:
    """The hexagon tiling of C: one labelled hexagon per core side.

    hexagons[core] is the cyclically ordered list of vertex triples of
    the core hexagon; every other tile of C is a G1-relabelling, so the
    four entries are a complete set of orbit representatives.  edges
    lists, for each hexagon edge, the neighboring cell (core, power).
    """

    def __init__(self, hexagons, edges):
        self.hexagons = hexagons
        self.edges = edges

    def summary(self):
        return {
            "hexagons": {str(c): [list(t) for t in cyc]
                         for c, cyc in sorted(self.hexagons.items())},
            "edges": [
                {"core": c, "vertices": [list(a), list(b)],
                 "neighbor": [nc, np]}
                for (c, a, b, nc, np) in self.edges],
        }


def _side_complexes(rep, complexes=None):
    if complexes is None:
        complexes = {}
    out = {}
    for name, idx in sorted(CORE_INDEX.items(), key=lambda kv: kv[1]):
        out[idx] = complexes.get(idx) or complexes.get(name) \
            or compute_side(rep, idx)
    return out


def hexagon_tiling(rep, complexes=None):
    """Assemble the four core hexagons and their mutual adjacency.

    complexes may carry precomputed SideComplex objects (keyed by core
    index or side word) to avoid recomputing the facet combinatorics.
    """
    sides = _side_complexes(rep, complexes)
    hexagons = {}
    for core, sc in sides.items():
        triples = []
        for v in sc.ideal_vertices:
            inc = sorted(v.incidence - {0})
            if len(inc) != 3 or 0 not in v.incidence:
                raise BoundaryError(
                    "ideal vertex of side %d is not on exactly three "
                    "bisectors: %s" % (core, sorted(v.incidence)))
            triples.append(tuple(inc))
        if len(triples) != 6:
            raise BoundaryError("side %d has %d ideal vertices, not 6"
                                % (core, len(triples)))
        hexagons[core] = _cycle_from_adjacency(triples, core)
    return HexTiling(hexagons, _tiling_edges(hexagons))


def _tiling_edges(hexagons):
    edges = []
    for core, cycle in sorted(hexagons.items()):
        for i, a in enumerate(cycle):
            b = cycle[(i + 1) % 6]
            common = set(a) & set(b) - {core}
            if len(common) != 1:
                raise BoundaryError("edge %s-%s of side %d has no unique "
                                    "second bisector" % (a, b, core))
            j = common.pop()
            nc, np = index_power(j)
            # the same edge must appear on the neighbor hexagon after
            # undoing the G1 conjugation that produced index j
            sa, sb = _shift_triple(a, -np), _shift_triple(b, -np)
            cyc = hexagons[nc]
            pairs = {frozenset((cyc[k], cyc[(k + 1) % 6])) for k in range(6)}
            if frozenset((sa, sb)) not in pairs:
                raise BoundaryError(
                    "edge %s-%s of side %d missing from neighbor %d^(%d)"
                    % (a, b, core, nc, np))
            edges.append((core, a, b, nc, np))
    return edges


def _g1_edge_classes(tiling):
    """Pair up the 24 directed hexagon edges into 12 G1 classes."""
    classes = {}
    for (core, a, b, nc, np) in tiling.edges:
        classes.setdefault(_edge_key(core, a, b), []).append((core, a, b))
    out = []
    for key in sorted(classes):
        members = classes[key]
        if len(members) != 2:
            raise BoundaryError("edge class %s has %d members, not 2"
                                % (key, len(members)))
        out.append(tuple(members))
    return out


def _coherent_flips(tiling, edge_classes):
    """Orientation signs per hexagon making edge traversals opposite.

    Returns (flips, consistent): BFS through the edge adjacency graph;
    consistent is False when some edge forces a contradiction (the
    quotient surface would be non-orientable).
    """
    faces = sorted(tiling.hexagons)
    adjacency = {}
    for cls in edge_classes:
        (c1, a1, b1), (c2, a2, b2) = cls
        adjacency.setdefault(c1, []).append((c2, cls))
        adjacency.setdefault(c2, []).append((c1, cls))
    flips = {faces[0]: 1}
    consistent = True
    pending = [faces[0]]
    while pending:
        cur = pending.pop()
        for other, cls in adjacency.get(cur, ()):
            (c1, a1, b1), (c2, a2, b2) = cls
            aligned = _same_direction(c1, a1, b1, c2, a2, b2)
            want = -flips[cur] if aligned else flips[cur]
            if other not in flips:
                flips[other] = want
                pending.append(other)
            elif flips[other] != want:
                consistent = False
    return flips, consistent


def _orient_coherently(tiling):
    """Reverse hexagon cycles so the whole tiling is coherently oriented.

    Afterwards every G1 edge class is traversed once in each direction,
    so the pairing orientation flags are measured against a fixed
    orientation of the quotient torus.  A non-orientable pattern is
    left untouched for manifold_check to report.
    """
    flips, consistent = _coherent_flips(tiling, _g1_edge_classes(tiling))
    if not consistent:
        return
    for core, sign in flips.items():
        if sign < 0:
            tiling.hexagons[core] = list(reversed(tiling.hexagons[core]))
    tiling.edges = _tiling_edges(tiling.hexagons)


# ---------------------------------------------------------------------------
# gluing pattern

class GluingPattern:
    """Identifications of the hexagon tiling induced by the group.

    vertex_maps: for each pairing generator, the list of (source core,
    source triple, target triple); orientation[pairing] is -1 when the
    induced map reverses the cyclic order of the hexagon (the pairing
    maps are anti-holomorphic on the hexagon in that case).
    edge_classes: quotient classes of hexagon edges under both the
    G1 relabelling and the pairing maps being tracked separately would
    conflate two quotients, so only the G1 (torus) classes are stored.
    """

    def __init__(self, tiling, vertex_maps, orientation, edge_classes):
        self.tiling = tiling
        self.vertex_maps = vertex_maps
        self.orientation = orientation
        self.edge_classes = edge_classes

    def summary(self):
        return {
            "tiling": self.tiling.summary(),
            "vertex_maps": {
                g: [{"core": c, "from": list(a), "to": list(b)}
                    for (c, a, b) in rows]
                for g, rows in sorted(self.vertex_maps.items())},
            "orientation": dict(sorted(self.orientation.items())),
            "edge_classes": [[list(map(list, e)) for e in cls]
                             for cls in self.edge_classes],
        }


def _ridge_bijections():
    """Index maps induced on ridges by the two pairing generators.

    Read off the certified pairing word tables: the identity
    g . source = target . G1^k proves that the pairing g carries the
    ridge on (own side, source bisector) to the ridge on (paired side,
    target bisector).
    """
    from .certify import G2_PAIRING_TABLE, G3_PAIRING_TABLE
    sigma2 = {1: 2}
    for src, tgt in G2_PAIRING_TABLE:
        sigma2[_table_index(src)] = _table_index(tgt)
    sigma3 = {3: 4}
    for src, tgt in G3_PAIRING_TABLE:
        sigma3[_table_index(src)] = _table_index(tgt)
    return {"G2^-1": (1, 2, sigma2), "G3^-1": (3, 4, sigma3)}


def _table_index(text):
    """Bisector index of a pairing-table word.

    Table words may drop trailing G1 factors (harmless, since G1 fixes
    the center), so read the conjugating power off the leading run.
    """
    w = parse_word(text)
    i = p = 0
    while i < len(w) and abs(w[i]) == 1:
        p += 1 if w[i] == 1 else -1
        i += 1
    core = {2: 1, -2: 2, 3: 3, -3: 4}[w[i]]
    assert all(abs(t) == 1 for t in w[i + 1:]), text
    return conjugate_index(core, p)


def _cycle_orientation(src_cycle, dst_cycle, vmap):
    """+1 / -1 when vmap carries the source cycle to the target cycle
    preserving / reversing the cyclic order; errors otherwise."""
    image = [vmap[t] for t in src_cycle]
    n = len(dst_cycle)
    for direction in (1, -1):
        for off in range(n):
            if all(image[i] == dst_cycle[(off + direction * i) % n]
                   for i in range(n)):
                return direction
    raise BoundaryError("vertex map does not carry hexagon to hexagon")


def gluing_pattern(rep, complexes=None, tiling=None):
    """Compute all identifications of the fundamental hexagon set U.

    The pairing maps match each vertex triple of a paired side to a
    triple of the partner side through the certified ridge bijections;
    every vertex must find a partner, and the whole hexagon must map
    cyclically (with a recorded orientation flag).  The G1 action
    identifies boundary edges of U pairwise, giving the torus gluing.
    """
    if tiling is None:
        tiling = hexagon_tiling(rep, complexes)
    _orient_coherently(tiling)
    vertex_maps = {}
    orientation = {}
    for name, (src_core, dst_core, sigma) in _ridge_bijections().items():
        vmap = {}
        rows = []
        for t in tiling.hexagons[src_core]:
            try:
                img = tuple(sorted(sigma[i] if i != src_core else dst_core
                                   for i in t))
            except KeyError:
                raise BoundaryError("vertex %s of side %d carries a ridge "
                                    "outside the pairing table" %
                                    (t, src_core))
            if img not in tiling.hexagons[dst_core]:
                raise BoundaryError("image %s of vertex %s is not a vertex "
                                    "of side %d" % (img, t, dst_core))
            vmap[t] = img
            rows.append((src_core, t, img))
        if len(set(vmap.values())) != 6:
            raise BoundaryError("pairing %s is not injective on vertices"
                                % name)
        orientation[name] = _cycle_orientation(
            tiling.hexagons[src_core], tiling.hexagons[dst_core], vmap)
        vertex_maps[name] = rows
    # G1 quotient classes of hexagon edges: each edge is shared by the
    # carrying hexagon and the G1-relabelled neighbor hexagon
    return GluingPattern(tiling, vertex_maps, orientation,
                         _g1_edge_classes(tiling))


# ---------------------------------------------------------------------------
# torus and spine pattern recognition

FIXTURE_PATH = os.path.join(os.path.dirname(__file__), "data",
                            "spine_pattern.json")


def pattern_serialization(pattern):
    """Deterministic labelled-complex form of a gluing pattern.

    Triples are replaced by their canonical G1-orbit representatives so
    the serialization is invariant under relabelling conventions, and
    every cycle starts at its smallest vertex in the direction that
    sorts lower.
    """
    hexs = {}
    for core, cycle in sorted(pattern.tiling.hexagons.items()):
        canon = [_canonical_triple(t) for t in cycle]
        k = canon.index(min(canon))
        fwd = [canon[(k + i) % 6] for i in range(6)]
        bwd = [canon[(k - i) % 6] for i in range(6)]
        hexs[str(core)] = [list(t) for t in min(fwd, bwd)]
    vmaps = {}
    for name, rows in sorted(pattern.vertex_maps.items()):
        vmaps[name] = sorted(
            [[core, list(_canonical_triple(a)), list(_canonical_triple(b))]
             for (core, a, b) in rows])
    edges = sorted(
        sorted([core, list(_canonical_triple(a)), list(_canonical_triple(b))]
               for (core, a, b) in cls)
        for cls in pattern.edge_classes)
    return {"hexagons": hexs, "vertex_maps": vmaps,
            "orientation": dict(sorted(pattern.orientation.items())),
            "edges": edges}


def manifold_check(pattern, fixture_path=FIXTURE_PATH):
    """Verdict on the quotient surface U/~ and the spine pattern.

    Checks Euler characteristic 0, orientability and connectedness of
    the quotient of the four hexagons by the G1 edge identifications,
    then compares the full labelled pattern with the frozen fixture.
    Returns a dict of named boolean verdicts plus the computed counts;
    a diff entry is present when the fixture comparison fails.
    """
    tiling = pattern.tiling
    faces = sorted(tiling.hexagons)
    vert_classes = {_canonical_triple(t)
                    for cyc in tiling.hexagons.values() for t in cyc}
    V, E, F = len(vert_classes), len(pattern.edge_classes), len(faces)
    chi = V - E + F
    # orientability: try to choose a direction for every hexagon so
    # that every quotient edge is traversed once in each direction
    flip, ok_orient = _coherent_flips(tiling, pattern.edge_classes)
    connected = len(flip) == len(faces)
    out = {
        "V": V, "E": E, "F": F,
        "euler characteristic zero": chi == 0,
        "orientable": ok_orient,
        "connected": connected,
        "torus": chi == 0 and ok_orient and connected,
    }
    serialized = pattern_serialization(pattern)
    if os.path.exists(fixture_path):
        with open(fixture_path) as fh:
            fixture = json.load(fh)
        out["matches spine fixture"] = serialized == fixture
        if not out["matches spine fixture"]:
            out["diff"] = _pattern_diff(fixture, serialized)
    else:
        out["matches spine fixture"] = False
        out["diff"] = "fixture missing: %s" % fixture_path
    return out


def _edge_key(core, a, b):
    """Canonical form of a tiling edge: the endpoint triples themselves
    determine the edge, so the carrying hexagon is not part of the key."""
    return min((_shift_triple(x, dp), _shift_triple(y, dp))
               for dp in range(-6, 7) for x, y in ((a, b), (b, a)))


def _same_direction(c1, a1, b1, c2, a2, b2):
    """Whether two representatives of an edge class run the same way.

    Both are directed as their hexagon's chosen cycle traverses them;
    they are G1-relabellings of one another, so compare canonically.
    """
    k1 = min((_shift_triple(a1, dp), _shift_triple(b1, dp))
             for dp in range(-6, 7))
    k2 = min((_shift_triple(a2, dp), _shift_triple(b2, dp))
             for dp in range(-6, 7))
    return k1 == k2


def write_fixture(pattern, path=FIXTURE_PATH):
    """Freeze the serialized pattern as the baseline fixture."""
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(pattern_serialization(pattern), fh, indent=1,
                  sort_keys=True)
        fh.write("\n")


def _pattern_diff(expect, got):
    diff = {}
    for key in set(expect) | set(got):
        if expect.get(key) != got.get(key):
            diff[key] = {"expected": expect.get(key), "got": got.get(key)}
    return diff


# ---------------------------------------------------------------------------
# the unknotted cylinder

def cylinder_check(rep, model=None, depth=24):
    """Certify that a fundamental segment of the core axis is inside S1.

    The x axis is a core curve for the solid cylinder bounded by C; by
    G1-invariance it suffices to check one fundamental segment for the
    G1 translation, which in the rescaled boundary coordinates is the
    unit interval [0, 1] on the x axis.  The certificate evaluates the
    defining quartic of the first core sphere exactly at the rational
    parameters 0, 1/2, 1 and then certifies sup over the whole segment
    by branch-and-bound on certified coefficient intervals.
    """
    if model is None:
        model = BoundaryModel(rep)
    sphere = model.spinal_sphere("2")
    # segment parameter q in [0,1]; the unscaled x coordinate is
    # q / sqrt(2), negated to follow the G1^(-1) step direction; the
    # containment statement is symmetric in the sign convention, so
    # certify the positive representative
    half_rt2 = Cx(model.sqrt2 / model.field.elem(2))
    eq = sphere_equation(sphere)
    # restriction to the x axis: monomials containing y or t vanish
    coeffs = {}
    for mono, c in eq.terms.items():
        i, j, k = mono
        if j == 0 and k == 0:
            coeffs[i] = coeffs.get(i, model.field.zero) + c
    values = {}
    for q in (QQ(0), QQ(1, 2), QQ(1)):
        x = half_rt2 * Cx(model.field.elem(q))
        p = HeisPoint(x, model.field.zero)
        val = cygan_distance4(sphere.center, p) - sphere.radius4
        s = val.sign()
        values[str(q)] = s
        if s >= 0:
            return {"inside at samples": False, "certified segment": False,
                    "signs": values}
    # univariate polynomial in q: substitute x = q * half_rt2
    poly = {}
    scale = model.field.one
    for i in range(0, 5):
        if i in coeffs:
            poly[i] = coeffs[i] * scale
        scale = scale * (model.sqrt2 / model.field.elem(2))
    # the t and shear contributions involve x only through the stored
    # MPoly, so coeffs above already include them; certified bounds:
    eps = QQ(1, 1 << 40)
    bounds = {i: poly[i].interval(eps) for i in poly}
    segments = [(QQ(0), QQ(1))]
    checked = 0
    while segments:
        if checked > (1 << min(depth, 16)):
            return {"inside at samples": True, "certified segment": False,
                    "signs": values, "reason": "subdivision limit"}
        a, b = segments.pop()
        hi = QQ(0)
        pa, pb = QQ(1), QQ(1)
        for i in range(0, 5):
            if i in bounds:
                lo_i, hi_i = bounds[i]
                hi += max(hi_i * pa, hi_i * pb, lo_i * pa, lo_i * pb)
            pa, pb = pa * a, pb * b
        checked += 1
        if hi < 0:
            continue
        mid = (a + b) / 2
        segments.append((a, mid))
        segments.append((mid, b))
    return {"inside at samples": True, "certified segment": True,
            "signs": values, "boxes": checked}
