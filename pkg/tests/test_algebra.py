"""Exact real field tower, polynomials, and torus solving."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fordcr.algebra.cx import Cx
from fordcr.algebra.field import RealField
from fordcr.algebra.points import AlgebraicPoint, alg_equal
from fordcr.algebra.rationals import QQ, exact_sqrt, sqrt_bounds
from fordcr.algebra.torus import TorusFn, solve_pair
from fordcr.algebra.upoly import UPoly

rationals = st.fractions(min_value=-100, max_value=100).map(
    lambda f: QQ(f.numerator, f.denominator))


@pytest.fixture(scope="module")
def field23():
    f = RealField.rationals()
    f = f.adjoin_sqrt(f.elem(2), "r2")
    return f.adjoin_sqrt(f.elem(3), "r3")


@given(q=st.fractions(min_value=0, max_value=10 ** 9))
def test_sqrt_bounds_bracket(q):
    q = QQ(q.numerator, q.denominator)
    lo, hi = sqrt_bounds(q)
    assert lo * lo <= q <= hi * hi
    assert lo >= 0


def test_exact_sqrt_of_squares():
    assert exact_sqrt(QQ(49, 4)) == QQ(7, 2)
    assert exact_sqrt(QQ(2)) is None


@settings(max_examples=60, deadline=None)
@given(a=rationals, b=rationals, c=rationals, d=rationals)
def test_field_ring_axioms(field23, a, b, c, d):
    r2, r3 = field23.gen("r2"), field23.gen("r3")
    x = field23.elem(a) + r2 * field23.elem(b)
    y = field23.elem(c) + r3 * field23.elem(d)
    assert ((x + y) * (x - y) - (x * x - y * y)).is_zero()
    assert (x * y - y * x).is_zero()
    if not x.is_zero():
        assert (x * x.inverse() - field23.one).is_zero()


def test_sqrt_generators_square_back(field23):
    r2, r3 = field23.gen("r2"), field23.gen("r3")
    assert (r2 * r2 - field23.elem(2)).is_zero()
    assert (r3 * r3 - field23.elem(3)).is_zero()
    assert (r2 * r3 * r2 * r3 - field23.elem(6)).is_zero()
    assert r2.sign() > 0 and r3.sign() > 0


@settings(max_examples=40, deadline=None)
@given(a=rationals, b=rationals)
def test_interval_contains_value(field23, a, b):
    r2 = field23.gen("r2")
    x = field23.elem(a) + r2 * field23.elem(b)
    eps = QQ(1, 1 << 70)
    lo, hi = x.interval(eps)
    assert hi - lo <= 2 * eps
    # oracle: a + b sqrt2 bracketed through integer sqrt bounds on 2
    s_lo, s_hi = sqrt_bounds(QQ(2))
    cand = (a + b * s_lo, a + b * s_hi)
    o_lo, o_hi = min(cand), max(cand)
    assert lo <= o_hi and o_lo <= hi


def test_upoly_sturm_root_isolation():
    f = RealField.rationals()
    # (x^2 - 2)(x - 3): roots -sqrt2, sqrt2, 3
    p = UPoly(f, [6, -2, -3, 1])
    roots = p.isolate_all_roots()
    assert len(roots) == 3
    refined = [p.refine(lo, hi, QQ(1, 1 << 20)) for lo, hi in roots]
    mids = sorted(float((lo + hi) / 2) for lo, hi in refined)
    assert abs(mids[0] + 2 ** 0.5) < 0.2
    assert abs(mids[1] - 2 ** 0.5) < 0.2
    assert abs(mids[2] - 3) < 0.2


def test_upoly_resultant_eliminates():
    f = RealField.rationals()
    p = UPoly(f, [-2, 0, 1])
    q = UPoly(f, [-3, 0, 1])
    r = p.resultant(q)
    assert not r.is_zero()


def _fn(field, c, a, b, d):
    mk = lambda t: Cx(field.elem(QQ(t[0])), field.elem(QQ(t[1])))
    return TorusFn(field.elem(QQ(c)), mk(a), mk(b), mk(d))


def test_solve_pair_known_system():
    # c + Re(z1) = 0 with c = -cos(pi/3) style rational systems:
    # Re(z1) = 3/5 and Re(z2) = -(1 - z1 pairing) forced rationally
    f = RealField.rationals()
    ga = _fn(f, QQ(-3, 5), (1, 0), (0, 0), (0, 0))
    gb = _fn(f, QQ(1, 2), (0, 0), (1, 0), (0, 0))
    pts = solve_pair(ga, gb)
    assert len(pts) == 4
    for p in pts:
        x1, y1, x2, y2 = (p.coord_float(i) for i in range(4))
        assert abs(x1 - 0.6) < 1e-9
        assert abs(x2 + 0.5) < 1e-9
        assert abs(x1 * x1 + y1 * y1 - 1) < 1e-9
        assert abs(x2 * x2 + y2 * y2 - 1) < 1e-9


def test_algebraic_point_identity():
    f = RealField.rationals()
    p = AlgebraicPoint.from_rationals(f, [QQ(1, 3), QQ(-2, 5)])
    q = AlgebraicPoint.from_rationals(f, [QQ(1, 3), QQ(-2, 5)])
    r = AlgebraicPoint.from_rationals(f, [QQ(1, 3), QQ(-1, 5)])
    assert alg_equal(p, q)
    assert not alg_equal(p, r)
    assert p.coord_sign(0) > 0 and p.coord_sign(1) < 0
