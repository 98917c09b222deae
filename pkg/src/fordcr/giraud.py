"""Spinal coordinate charts on intersections of two bisectors.

A Giraud disk B_j int B_k is parametrized by (z1, z2) on S^1 x S^1
through V(z1, z2) = q_j (x) q_k + z1 q_k (x) p0 + z2 p0 (x) q_j, where
(x) is the Hermitian box product and q_j = G_j p0.  Every defining
inequality of the Ford domain restricts to the Clifford torus as a
function of the shape c + Re(a z1) + Re(b z2) + Re(d z1 conj z2), which
is solved exactly by the machinery in algebra.torus.
"""

from .algebra.cx import Cx
from .algebra.mpoly import MPoly
from .algebra.torus import (TorusFn, critical_points, double_points,
                            slice_points, solve_pair, torus_min_positive)
from .group import Representation, bisector_word, box, herm, parse_word


class DegenerateChart(ValueError):
    """The three defining points lie in a common complex line."""


def _word(w):
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


class GiraudChart:
    """Exact chart data for the intersection of two bounding bisectors."""

    def __init__(self, rep, word_j, word_k):
        self.rep = rep
        self.word_j = _word(word_j)
        self.word_k = _word(word_k)
        p0 = rep.p0
        qj = rep.matrix(self.word_j) * p0
        qk = rep.matrix(self.word_k) * p0
        det = herm(box(qj, qk), p0)
        # <qj (x) qk, p0> is (up to conjugation) the determinant of the
        # three lifts, so it vanishes exactly when they are dependent
        if det.is_zero():
            raise DegenerateChart("cospinal or degenerate triple")
        self.p0 = p0
        self.qj = qj
        self.qk = qk
        self.basis = (box(qj, qk), box(qk, p0), box(p0, qj))

    @property
    def field(self):
        return self.rep.field

    @classmethod
    def from_indices(cls, rep, j, k):
        """Chart B_j int B_k in the standard bisector indexing."""
        return cls(rep, bisector_word(j), bisector_word(k))

    def point(self, z1, z2):
        """The homogeneous lift V(z1, z2)."""
        b0, b1, b2 = self.basis
        return tuple(b0[i] + z1 * b1[i] + z2 * b2[i] for i in range(3))

    def pairing_coeffs(self, vec):
        """(c0, c1, c2) with <V(z1,z2), vec> = c0 + c1 z1 + c2 z2."""
        return tuple(herm(b, vec) for b in self.basis)

    def restrict(self, x):
        """The defining function g_x on the chart torus.

        x = 0 gives the ball boundary function <V, V>; a word or a
        bisector index gives |<V, p0>|^2 - |<V, G_x p0>|^2.
        """
        if x == 0:
            return self._ball_function()
        if isinstance(x, int):
            x = bisector_word(x)
        qx = self.rep.matrix(_word(x)) * self.p0
        c = self.pairing_coeffs(self.p0)
        e = self.pairing_coeffs(qx)
        const = (c[0].norm2() + c[1].norm2() + c[2].norm2()
                 - e[0].norm2() - e[1].norm2() - e[2].norm2())
        a = 2 * (c[1] * c[0].conj() - e[1] * e[0].conj())
        b = 2 * (c[2] * c[0].conj() - e[2] * e[0].conj())
        d = 2 * (c[1] * c[2].conj() - e[1] * e[2].conj())
        return TorusFn(const, a, b, d)

    def _ball_function(self):
        b = self.basis
        const = sum((herm(v, v).re for v in b[1:]), herm(b[0], b[0]).re)
        return TorusFn(const, 2 * herm(b[1], b[0]), 2 * herm(b[2], b[0]),
                       2 * herm(b[1], b[2]))


def make_chart(rep, word_j, word_k):
    if not isinstance(rep, Representation):
        rep = Representation(rep)
    return GiraudChart(rep, word_j, word_k)


def discriminant(fn):
    """|mu(z1)|^2 - nu(z1)^2 as an MPoly in (x1, y1).

    The curve fn = 0 has solutions z2 on the unit circle over the
    points of S^1 where this is nonnegative; its zeros on the circle
    are the fold points of the double cover (z1, z2) -> z1.
    """
    f = fn.field
    bd = Cx(fn.b.re, fn.b.im) * Cx(fn.d.re, fn.d.im)
    mu_sq = MPoly(f, 2, {(0, 0): fn.b.norm2() + fn.d.norm2(),
                         (1, 0): 2 * bd.re, (0, 1): -2 * bd.im})
    nu = MPoly(f, 2, {(0, 0): -fn.c, (1, 0): -fn.a.re, (0, 1): fn.a.im})
    return mu_sq - nu * nu


def branch_parametrize(fn):
    """Float evaluators for the two branches z2(z1) of fn = 0.

    Returns (delta, top, bottom): delta maps a unit complex z1 to the
    discriminant value, and the branches map z1 to z2 with
    Re(mu z2) = nu, z2 = (nu +- i sqrt(delta)) conj(mu) / |mu|^2.
    These are plain floating point helpers for tracing and plotting;
    all certified decisions go through the exact solvers.
    """
    if fn.b.is_zero() and fn.d.is_zero():
        raise ValueError("function does not depend on z2")
    b = complex(float(fn.b.re), float(fn.b.im))
    d = complex(float(fn.d.re), float(fn.d.im))
    a = complex(float(fn.a.re), float(fn.a.im))
    c = float(fn.c)

    def mu(z1):
        return b + (d * z1).conjugate()

    def nu(z1):
        return -c - (a * z1).real

    def delta(z1):
        m = mu(z1)
        return abs(m) ** 2 - nu(z1) ** 2

    def branch(sign):
        def z2(z1):
            m = mu(z1)
            disc = max(delta(z1), 0.0)
            return (nu(z1) + sign * 1j * disc ** 0.5) * m.conjugate() / abs(m) ** 2
        return z2

    return delta, branch(+1.0), branch(-1.0)


def curve_curve_intersect(fa, fb, extra_check=()):
    """All common torus zeros of two restricted functions, certified."""
    return solve_pair(fa, fb, extra_check=extra_check)
