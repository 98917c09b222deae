"""Randomized soundness suites for the exact kernels.

Four independent fuzz batteries, all with fixed seeds: back substitution
of the torus solver, outward rounding of interval evaluation, agreement
of the certified intersection count with a floating point branch trace,
and invariance of the Hermitian form under random group words.
"""

import cmath
import math
import random

from fordcr.algebra.cx import Cx
from fordcr.algebra.field import RealField
from fordcr.algebra.rationals import QQ, sqrt_bounds
from fordcr.algebra.torus import DegenerateSystem, TorusFn, solve_pair
from fordcr.giraud import branch_parametrize


def _fn(field, c, a, b, d):
    mk = lambda t: Cx(field.elem(QQ(t[0])), field.elem(QQ(t[1])))
    return TorusFn(field.elem(QQ(c)), mk(a), mk(b), mk(d))


def _rand_fn(field, rng, span=2):
    r = lambda: rng.randint(-span, span)
    return _fn(field, r(), (r(), r()), (r(), r()), (r(), r()))


def _feval(fn, z1, z2):
    c = float(fn.c)
    a = complex(float(fn.a.re), float(fn.a.im))
    b = complex(float(fn.b.re), float(fn.b.im))
    d = complex(float(fn.d.re), float(fn.d.im))
    return c + (a * z1).real + (b * z2).real + (d * z1 * z2.conjugate()).real


def test_solver_back_substitution_exact():
    """Every point returned by solve_pair satisfies all four equations
    with exact sign zero, not just numerically."""
    rng = random.Random(20260826)
    field = RealField.rationals()
    solved = 0
    while solved < 60:
        ga = _rand_fn(field, rng)
        gb = _rand_fn(field, rng)
        try:
            pts = solve_pair(ga, gb)
        except (DegenerateSystem, ZeroDivisionError):
            continue
        solved += 1
        ma, mb = ga.as_mpoly(), gb.as_mpoly()
        for p in pts:
            assert p.sign_of(ma) == 0
            assert p.sign_of(mb) == 0
            x1, y1, x2, y2 = (p.coord_float(i) for i in range(4))
            assert abs(x1 * x1 + y1 * y1 - 1) < 1e-9
            assert abs(x2 * x2 + y2 * y2 - 1) < 1e-9
    assert solved == 60


def test_interval_outward_rounding_fuzz():
    """10^4 random elements of Q(sqrt2, sqrt3): the certified interval
    contains the value (bracketed through rational sqrt bounds) and
    meets the requested width."""
    rng = random.Random(14641)
    f = RealField.rationals()
    f = f.adjoin_sqrt(f.elem(2), "r2")
    f = f.adjoin_sqrt(f.elem(3), "r3")
    r2, r3 = f.gen("r2"), f.gen("r3")
    s2 = sqrt_bounds(QQ(2), bits=80)
    s3 = sqrt_bounds(QQ(3), bits=80)
    eps = QQ(1, 1 << 48)
    for _ in range(10 ** 4):
        q = [QQ(rng.randint(-999, 999), rng.randint(1, 99))
             for _ in range(4)]
        x = (f.elem(q[0]) + r2 * f.elem(q[1]) + r3 * f.elem(q[2])
             + r2 * r3 * f.elem(q[3]))
        lo, hi = x.interval(eps)
        assert hi - lo <= 2 * eps
        # oracle bracket: min / max over the sqrt bound corners,
        # sqrt6 bracketed by the product of the outer bounds
        cands = []
        for a2 in s2:
            for a3 in s3:
                for a6 in (s2[0] * s3[0], s2[1] * s3[1]):
                    cands.append(q[0] + q[1] * a2 + q[2] * a3 + q[3] * a6)
        assert lo <= max(cands) and min(cands) <= hi


def _loop_sign_changes(vals):
    """Sign changes around a closed sequence of nonzero floats."""
    count = 0
    reliable = True
    for i in range(len(vals)):
        u, v = vals[i], vals[(i + 1) % len(vals)]
        if u * v < 0:
            count += 1
        if min(abs(u), abs(v)) < 1e-7:
            reliable = False
    return count, reliable


def _branch_sign_changes(ga, gb, n=2048, cut=1e-4):
    """Sign changes of gb along the float trace of the curve ga = 0.

    The curve is the union of the two square root branches over the
    arcs where the discriminant is positive, glued at the folds; each
    glued loop is a closed curve, so its sign change count is the
    number of transverse gb crossings on it.  Returns (count,
    reliable): reliable is False near folds or tangencies, where the
    sampled count cannot be trusted.
    """
    delta, top, bottom = branch_parametrize(ga)
    z1s = [cmath.exp(2j * math.pi * i / n) for i in range(n)]
    deltas = [delta(z) for z in z1s]
    reliable = all(not 0 < d <= cut for d in deltas)
    valid = [d > cut for d in deltas]
    count = 0
    if all(valid):
        # no folds: the two branches are separate closed loops
        for branch in (top, bottom):
            c, ok = _loop_sign_changes([_feval(gb, z, branch(z))
                                        for z in z1s])
            count += c
            reliable = reliable and ok
        return count, reliable
    # maximal circular runs of valid samples, each traced out and back
    runs = []
    i = 0
    while i < n and valid[i]:
        i += 1
    start = i  # first invalid index (exists since not all valid)
    run = []
    for k in range(n):
        j = (start + 1 + k) % n
        if valid[j]:
            run.append(j)
        elif run:
            runs.append(run)
            run = []
    if run:
        runs.append(run)
    for run in runs:
        loop = [_feval(gb, z1s[j], top(z1s[j])) for j in run]
        loop += [_feval(gb, z1s[j], bottom(z1s[j])) for j in reversed(run)]
        c, ok = _loop_sign_changes(loop)
        count += c
        reliable = reliable and ok
    return count, reliable


def test_certified_count_matches_branch_trace():
    """100 random systems: the certified solution count agrees with a
    floating point trace of one curve, away from folds."""
    rng = random.Random(777001)
    field = RealField.rationals()
    compared = 0
    attempts = 0
    while compared < 100:
        attempts += 1
        assert attempts < 5000
        ga = _rand_fn(field, rng)
        gb = _rand_fn(field, rng)
        if ga.b.is_zero() and ga.d.is_zero():
            continue
        try:
            pts = solve_pair(ga, gb)
        except (DegenerateSystem, ZeroDivisionError):
            continue
        delta, _, _ = branch_parametrize(ga)
        z1s = [complex(p.coord_float(0), p.coord_float(1)) for p in pts]
        if any(abs(delta(z1)) < 1e-2 for z1 in z1s):
            continue  # intersection too close to a fold to trust floats
        numeric, reliable = _branch_sign_changes(ga, gb)
        if not reliable:
            continue
        certified = sum(1 for z1 in z1s if delta(z1) > 1e-4)
        assert numeric == certified, (ga, gb)
        compared += 1


def test_random_words_preserve_form(rep0):
    rng = random.Random(8128)
    letters = [1, -1, 2, -2, 3, -3]
    for _ in range(10 ** 3):
        word = tuple(rng.choice(letters)
                     for _ in range(rng.randint(1, 12)))
        m = rep0.matrix(word)
        assert rep0.preserves_form(m), word
