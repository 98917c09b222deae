"""Acceptance gate: one check per published claim, with runtime budgets.

Each test certifies one block of the reproduction end to end, at the
tolerance stated in its docstring (exact unless noted), and asserts a
wall-clock budget.  The expensive baseline objects come from the shared
session fixtures so the budgets measure the actual computation once.
"""

import math
import time

from fordcr.algebra.cx import Cx
from fordcr.algebra.rationals import QQ
from fordcr.boundary import (cylinder_check, gluing_pattern, hexagon_tiling,
                             manifold_check)
from fordcr.certify import (six_bisector_identity, stability_scan,
                            vertex_transversality)
from fordcr.cli import check_tables
from fordcr.giraud import GiraudChart, curve_curve_intersect
from fordcr.group import Representation
from fordcr.heisenberg import CORE_WORDS, PUBLISHED_K_RANGES
from fordcr.tables import (FINITE_VERTEX_TABLES, FOLD_ARGUMENT_12,
                           G5_AT_FIRST, G11_AT_SECOND, IDEAL_VERTEX_0135,
                           LOG_INTERSECTIONS_12_03, SEXTIC_ROOTS_13_02)

TOL = 1e-6
SCAN_SAMPLES = (QQ(1, 100), QQ(-1, 100), QQ(1, 50), QQ(-1, 50))


def test_01_parameter_block(rep0):
    """lambda=1, a=d=1, b=-(1+i sqrt7)/2, e=conj(b), kappa=1, exactly."""
    t0 = time.monotonic()
    f = rep0.field
    one = f.one
    assert (rep0.lam - Cx(one)).is_zero()
    assert rep0.kappa == 1
    assert (rep0.a - Cx(one)).is_zero()
    assert (rep0.d - Cx(one)).is_zero()
    half = f.rational(1, 2)
    assert (rep0.b - Cx(-half, -rep0.tau * half)).is_zero()
    assert (rep0.e - Cx(-half, rep0.tau * half)).is_zero()
    assert (rep0.tau * rep0.tau - f.elem(7)).is_zero()
    assert all(r.is_zero() for r in rep0.system_residuals())
    assert time.monotonic() - t0 < 1


def test_02_relations_and_traces(rep0):
    """Five defining relations and the three traces, exactly, at the
    unipotent point and at four deformed samples with |s| <= 1/20."""
    t0 = time.monotonic()
    for rep in [rep0] + [Representation(s) for s in SCAN_SAMPLES]:
        rel = rep.verify_relations()
        assert all(rel.values()), rel
        tr = rep.traces()
        assert (tr["tr(G2)"] - Cx(rep.field.one)).is_zero()
        assert tr["tr(G1G2)"].is_zero()
        assert rep.matrix((1, 1, 2)).trace().is_zero()
    assert time.monotonic() - t0 < 5


def test_03_core_sphere_table(rep0, model0):
    """Centers and radii of S1..S4 as algebraic identities."""
    t0 = time.monotonic()
    f = model0.field
    s7 = model0._embed(rep0.tau)
    rt = model0.sqrt2
    quarter = f.rational(1, 4)
    alpha = Cx(f.elem(3) * quarter / rt, s7 * quarter / rt)
    expected = {
        "2": (alpha, f.zero, f.one),
        "-2": (-alpha, f.zero, f.one),
        "3": (Cx(-(f.rational(1, 2) / rt)), -s7 * f.rational(1, 8),
              f.rational(1, 2)),
        "-3": (Cx(-(f.one / rt)), s7 * f.rational(1, 2), f.rational(1, 2)),
    }
    for _, word in CORE_WORDS:
        s = model0.spinal_sphere(word)
        z, t, r4 = expected[word]
        assert (s.center.z - z).is_zero(), word
        assert (s.center.t - t).is_zero(), word
        assert (s.radius4 - r4).is_zero(), word
    assert time.monotonic() - t0 < 1


def test_04_effective_finiteness(model0):
    """All ten disjointness k-ranges, exactly."""
    t0 = time.monotonic()
    assert model0.disjointness_table() == PUBLISHED_K_RANGES
    assert time.monotonic() - t0 < 1


def test_05_numeric_anchors(rep0):
    """The published sample values, each within 1e-6 of a certified
    interval around the exact algebraic quantity."""
    from fordcr.facets import CurveModel
    t0 = time.monotonic()
    eps = QQ(1, 1 << 50)
    chart12 = GiraudChart.from_indices(rep0, 1, 2)
    chart13 = GiraudChart.from_indices(rep0, 1, 3)

    def log_coord(pt, i):
        lox, hix = (float(v) for v in pt.coord_interval(2 * i, eps))
        loy, hiy = (float(v) for v in pt.coord_interval(2 * i + 1, eps))
        a = math.atan2(loy, hix) / (2 * math.pi)
        b = math.atan2(hiy, lox) / (2 * math.pi)
        return min(a, b), max(a, b)

    # fold arguments of the ball curve on chart {1,2}
    args = []
    for p in CurveModel(chart12.restrict(0), 0).folds():
        lo, hi = log_coord(p, 0)
        assert hi - lo < TOL
        args.append((lo + hi) / 2)
    args.sort()
    assert len(args) == 2
    assert abs(args[0] + FOLD_ARGUMENT_12) < TOL
    assert abs(args[1] - FOLD_ARGUMENT_12) < TOL

    # log-coordinate intersections of the ball curve with g3
    pts = curve_curve_intersect(chart12.restrict(0), chart12.restrict(3))
    assert len(pts) == 2
    for target in LOG_INTERSECTIONS_12_03:
        assert any(all(lo - TOL <= target[i] <= hi + TOL
                       for i in range(2)
                       for lo, hi in [log_coord(p, i)])
                   for p in pts), target

    # sextic roots and the separating positivity values on chart {1,3}
    pts = curve_curve_intersect(chart13.restrict(0), chart13.restrict(2))
    assert len(pts) == 2
    vals = []
    for p in pts:
        p.refine(QQ(1, 1 << 60))
        vals.append((p.coord_float(3), p))
    vals.sort()
    for (y2, _), target in zip(vals, SEXTIC_ROOTS_13_02):
        assert abs(y2 - target) < TOL
    g5 = chart13.restrict(5).as_mpoly()
    g11 = chart13.restrict(11).as_mpoly()
    assert abs(_mpoly_float(g5, vals[0][1]) - G5_AT_FIRST) < TOL
    assert abs(_mpoly_float(g11, vals[1][1]) - G11_AT_SECOND) < TOL

    # the ideal vertex on bisectors {0, 1, 3, 5}
    pts = curve_curve_intersect(chart13.restrict(0), chart13.restrict(5))
    good = 0
    for p in pts:
        p.refine(QQ(1, 1 << 60))
        xs = [p.coord_float(i) for i in range(4)]
        good += all(abs(x - t) < TOL
                    for x, t in zip(xs, IDEAL_VERTEX_0135))
    assert good == 1
    assert time.monotonic() - t0 < 30


def _mpoly_float(mp, p):
    p.refine(QQ(1, 1 << 60))
    xs = [p.coord_float(i) for i in range(4)]
    return sum(float(c) * math.prod(xs[v] ** e for v, e in enumerate(mono))
               for mono, c in mp.terms.items())


def test_06_face_combinatorics(complexes0, timings):
    """Representative faces, both finite-vertex tables, and both
    classification tables, against the frozen reference data."""
    # the single weak-closure point of the empty face on chart {1,2}
    cls = complexes0[1].classifications[2]
    assert cls.kind == "vertex" and len(cls.closure) == 1
    floats = cls.closure[0].floats()
    assert abs(floats[0] - 1) < 1e-9 and abs(floats[2] - 1) < 1e-9
    # the triangle on chart {1,3}
    tri = complexes0[1].classifications[3]
    assert tri.kind == "face"
    assert sorted({a.carrier for a in tri.face.arcs}) == [0, 5, 11]
    # the three empty mechanisms
    assert complexes0[1].classifications[4].kind == "positive"
    assert complexes0[1].classifications[6].kind == "ball"
    assert complexes0[3].classifications[8].kind == "empty"
    # both vertex tables and both classification tables
    for side, rows in FINITE_VERTEX_TABLES.items():
        got = sorted(complexes0[side].vertex_table())
        assert got == sorted((w, tuple(sorted(i))) for w, i in rows), side
    report, ok = check_tables(complexes0)
    assert ok, report
    assert timings["complexes0"] < 600


def test_07_side_pairings(checklist0):
    """All 14 pairing identities and the 6 vertex images, exactly."""
    t0 = time.monotonic()
    pairings = checklist0["pairings"]
    assert len(pairings) == 14 + 6
    assert all(c.valid for c in pairings)
    byname = {(c.pairing, c.source): c.target for c in pairings[14:]}
    assert byname[("-2", "p_{-121}")] == "p_{-323}"
    assert time.monotonic() - t0 < 10


def test_08_ridge_cycles(checklist0):
    """The six cycle relations and the derived presentation."""
    t0 = time.monotonic()
    cycles = checklist0["cycles"]
    assert len(cycles) == 6 and all(c.valid for c in cycles)
    assert [c.power for c in cycles] == [0, 3, -2, 1, 1, 2]
    assert [c.order for c in cycles] == [1, 1, 1, 1, 3, 3]
    assert all(checklist0["presentation"].values())
    assert time.monotonic() - t0 < 10


def test_09_transversality(rep0, checklist0):
    """Gradients at the central vertex, the three non-transverse
    quadruples with their exit table, and the ideal 4-gradient
    independence certificates."""
    t0 = time.monotonic()
    tr = vertex_transversality(rep0)
    assert tr.valid
    assert tr.indices == (1, 2, 3, 5, 10, 11)
    assert tr.non_transverse == ((1, 2, 3, 10), (1, 2, 5, 11),
                                 (3, 5, 10, 11))
    f = rep0.field
    s7 = rep0.tau
    e = f.elem
    expected = {
        1: (e(-8), f.zero, f.zero, f.zero),
        2: (e(3), s7, e(-1), -3 * s7),
        3: (f.zero, f.zero, e(-6), -2 * s7),
        5: (e(QQ(-1, 2)), s7 * QQ(-3, 2), e(QQ(-1, 2)), s7 * QQ(-3, 2)),
        10: (e(-5), s7, e(5), -s7),
        11: (e(QQ(-9, 2)), s7 * QQ(5, 2), e(QQ(-1, 2)), s7 * QQ(-3, 2)),
    }
    for i, vec in expected.items():
        assert all((a - b).is_zero()
                   for a, b in zip(tr.gradients[i], vec)), i
    assert tr.exits == {(1, 2, 3, 10): ((11,), (5,)),
                        (1, 2, 5, 11): ((3,), (10,)),
                        (3, 5, 10, 11): ((1,), (2,))}
    assert all(ok for _, _, ok in checklist0["ideal"])
    assert time.monotonic() - t0 < 60


def test_10_stability_scan(checklist0):
    """The full pipeline at s in {1/100, -1/100, 1/50, -1/50} with the
    facet lattice identical to the unipotent baseline, plus the
    parameter-uniform six-bisector identities as polynomial identities."""
    t0 = time.monotonic()
    assert all(six_bisector_identity().values())
    reports = stability_scan(SCAN_SAMPLES, baseline=checklist0)
    for rpt in reports:
        assert rpt.verdict == "identical", (str(rpt.sample), rpt.verdict)
    assert time.monotonic() - t0 < 3600


def test_11_boundary_topology(rep0, complexes0):
    """Hexagon tiling, torus quotient, frozen spine fixture, and the
    certified cylinder segment inside S1."""
    t0 = time.monotonic()
    tiling = hexagon_tiling(rep0, complexes=complexes0)
    assert sorted(tiling.hexagons) == [1, 2, 3, 4]
    pattern = gluing_pattern(rep0, tiling=tiling)
    verdict = manifold_check(pattern)
    assert verdict["euler characteristic zero"]
    assert verdict["orientable"] and verdict["connected"]
    assert verdict["torus"] and verdict["matches spine fixture"]
    cyl = cylinder_check(rep0)
    assert cyl["inside at samples"] and cyl["certified segment"]
    assert time.monotonic() - t0 < 60


def test_12_property_suites(rep0):
    """Solver back-substitution, interval rounding fuzz (1e4 cases),
    curve-count oracle agreement (100 systems), isometry invariant
    (1e3 words)."""
    import test_properties as props
    t0 = time.monotonic()
    props.test_solver_back_substitution_exact()
    props.test_interval_outward_rounding_fuzz()
    props.test_certified_count_matches_branch_trace()
    props.test_random_words_preserve_form(rep0)
    assert time.monotonic() - t0 < 300
