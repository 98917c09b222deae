"""Giraud charts, restricted torus functions, and the numeric anchors."""

import math

import pytest

from fordcr.algebra.rationals import QQ
from fordcr.facets import CurveModel
from fordcr.giraud import (DegenerateChart, GiraudChart, branch_parametrize,
                           curve_curve_intersect, discriminant, make_chart)
from fordcr.tables import (FOLD_ARGUMENT_12, G5_AT_FIRST, G11_AT_SECOND,
                           IDEAL_VERTEX_0135, LOG_INTERSECTIONS_12_03,
                           SEXTIC_ROOTS_13_02)

EPS = QQ(1, 1 << 50)
TOL = 1e-6


def _log_coord(pt, i):
    lox, hix = (float(v) for v in pt.coord_interval(2 * i, EPS))
    loy, hiy = (float(v) for v in pt.coord_interval(2 * i + 1, EPS))
    a = math.atan2(loy, hix) / (2 * math.pi)
    b = math.atan2(hiy, lox) / (2 * math.pi)
    return min(a, b), max(a, b)


def _close(pt, target):
    for i in range(2):
        lo, hi = _log_coord(pt, i)
        if not (lo - TOL <= target[i] <= hi + TOL):
            return False
    return True


@pytest.fixture(scope="module")
def chart12(rep0):
    return GiraudChart.from_indices(rep0, 1, 2)


@pytest.fixture(scope="module")
def chart13(rep0):
    return GiraudChart.from_indices(rep0, 1, 3)


def test_degenerate_triple_rejected(rep0):
    with pytest.raises(DegenerateChart):
        make_chart(rep0, (2,), (2,))


def test_restriction_vanishes_on_defining_words(rep0, chart13):
    # <V, q_j> and <V, q_k> have equal norms on the chart by design,
    # so the restriction of either defining inequality vanishes
    fn = chart13.restrict(3)
    f = rep0.field
    one, zero = f.one, f.zero
    from fordcr.algebra.cx import Cx
    val = fn.eval_cx(Cx(one, zero), Cx(one, zero))
    v = chart13.point(Cx(one, zero), Cx(one, zero))
    from fordcr.group import herm
    q3 = rep0.matrix((3,)) * rep0.p0
    q0 = rep0.p0
    direct = herm(v, q0).norm2() - herm(v, q3).norm2()
    assert (val - direct).is_zero()


def test_fold_arguments_of_ball_curve(chart12):
    cm = CurveModel(chart12.restrict(0), 0)
    folds = cm.folds()
    args = []
    for p in folds:
        lo, hi = _log_coord(p, 0)
        args.append((lo + hi) / 2)
        assert hi - lo < TOL
    args.sort()
    assert len(args) == 2
    assert abs(args[0] + FOLD_ARGUMENT_12) < TOL
    assert abs(args[1] - FOLD_ARGUMENT_12) < TOL


def test_log_intersections_ball_with_g3(chart12):
    pts = curve_curve_intersect(chart12.restrict(0), chart12.restrict(3))
    assert len(pts) == 2
    for target in LOG_INTERSECTIONS_12_03:
        assert any(_close(p, target) for p in pts), target


def test_sextic_roots_and_positivity(rep0, chart13):
    pts = curve_curve_intersect(chart13.restrict(0), chart13.restrict(2))
    assert len(pts) == 2
    g5 = chart13.restrict(5).as_mpoly()
    g11 = chart13.restrict(11).as_mpoly()
    vals = []
    for p in pts:
        lo, hi = (float(v) for v in p.coord_interval(3, EPS))
        vals.append(((lo + hi) / 2, p))
    vals.sort()
    (y2a, pa), (y2b, pb) = vals
    assert abs(y2a - SEXTIC_ROOTS_13_02[0]) < TOL
    assert abs(y2b - SEXTIC_ROOTS_13_02[1]) < TOL
    assert pa.sign_of(g5) > 0
    assert pb.sign_of(g11) > 0
    assert abs(_mpoly_float(g5, pa) - G5_AT_FIRST) < TOL
    assert abs(_mpoly_float(g11, pb) - G11_AT_SECOND) < TOL


def _mpoly_float(mp, p):
    p.refine(QQ(1, 1 << 60))
    xs = [p.coord_float(i) for i in range(4)]
    tot = 0.0
    for mono, c in mp.terms.items():
        v = float(c)
        for var, e in enumerate(mono):
            v *= xs[var] ** e
        tot += v
    return tot


def test_ideal_vertex_coordinates(chart13):
    pts = curve_curve_intersect(chart13.restrict(0), chart13.restrict(5))
    good = []
    for p in pts:
        p.refine(QQ(1, 1 << 60))
        xs = [p.coord_float(i) for i in range(4)]
        if all(abs(x - t) < TOL for x, t in zip(xs, IDEAL_VERTEX_0135)):
            good.append(p)
    assert len(good) == 1


def test_branch_parametrize_consistent(chart12):
    fn = chart12.restrict(3)
    delta, top, bottom = branch_parametrize(fn)
    z1 = complex(math.cos(0.3), math.sin(0.3))
    if delta(z1) > 0:
        for branch in (top, bottom):
            z2 = branch(z1)
            assert abs(abs(z2) - 1) < 1e-9
            val = (float(fn.c) + (complex(float(fn.a.re), float(fn.a.im))
                                  * z1).real
                   + (complex(float(fn.b.re), float(fn.b.im)) * z2).real
                   + (complex(float(fn.d.re), float(fn.d.im)) * z1
                      * z2.conjugate()).real)
            assert abs(val) < 1e-9


def test_discriminant_signs(chart12):
    fn = chart12.restrict(3)
    disc = discriminant(fn)
    # the discriminant lives in the (x1, y1) plane
    assert disc.nvars == 2
    assert disc.terms
