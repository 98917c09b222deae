"""Sparse multivariate polynomials over a RealField.

Monomials are exponent tuples; coefficients are field elements.  Just
enough structure for restricted bisector equations in chart coordinates
(x1, y1, x2, y2) and their derivatives.
"""

from .field import Elem


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for mono, coef in (terms or {}).items():
            if not isinstance(coef, Elem):
                coef = field.elem(coef)
            if not coef.is_zero():
                clean[tuple(mono)] = clean.get(tuple(mono), field.zero) + coef
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, i):
        mono = [0] * nvars
        mono[i] = 1
        return cls(field, nvars, {tuple(mono): field.one})

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, self.field.zero) + c
        return MPoly(self.field, self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MPoly(self.field, self.nvars,
                     {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MPoly):
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    if m in out:
                        out[m] = out[m] + c1 * c2
                    else:
                        out[m] = c1 * c2
            return MPoly(self.field, self.nvars, out)
        return MPoly(self.field, self.nvars,
                     {m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i):
        out = {}
        for m, c in self.terms.items():
            if m[i] > 0:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MPoly(self.field, self.nvars, out)

    def eval_elems(self, values):
        """Evaluate at a point given by field elements (or rationals)."""
        acc = self.field.zero
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    v = values[i]
                    if not isinstance(v, Elem):
                        v = self.field.elem(v)
                    term = term * v ** e
            acc = acc + term
        return acc

    def eval_upolys(self, values, ring):
        """Evaluate at coordinates given as univariate polys mod ring.r."""
        from .upoly import UPoly
        acc = UPoly(self.field, [0])
        pows = [{} for _ in range(self.nvars)]
        def power(i, e):
            if e == 0:
                return UPoly(self.field, [1])
            if e not in pows[i]:
                pows[i][e] = ring.reduce(power(i, e - 1) * values[i])
            return pows[i][e]
        for m, c in self.terms.items():
            term = UPoly(self.field, [c])
            for i, e in enumerate(m):
                if e:
                    term = ring.reduce(term * power(i, e))
            acc = acc + term
        return ring.reduce(acc)

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=-1)

    def coefficient_of(self, i, e):
        """The coefficient of x_i^e, as an MPoly in the remaining slots."""
        out = {}
        for m, c in self.terms.items():
            if m[i] == e:
                mm = list(m)
                mm[i] = 0
                out[tuple(mm)] = c
        return MPoly(self.field, self.nvars, out)

    def substitute_power(self, i, repl):
        """Rewrite x_i^2 -> repl until the degree in x_i is at most 1."""
        cur = self
        while cur.degree_in(i) >= 2:
            out = MPoly(self.field, self.nvars)
            for m, c in cur.terms.items():
                if m[i] >= 2:
                    mm = list(m)
                    mm[i] -= 2
                    out = out + MPoly(self.field, self.nvars,
                                      {tuple(mm): c}) * repl
                else:
                    out = out + MPoly(self.field, self.nvars, {m: c})
            cur = out
        return cur

    def as_upoly_in(self, i):
        """View as a univariate poly in x_i; other vars must not occur."""
        from .upoly import UPoly
        deg = self.degree_in(i)
        coeffs = [self.field.zero] * (max(deg, 0) + 1)
        for m, c in self.terms.items():
            assert all(e == 0 for j, e in enumerate(m) if j != i)
            coeffs[m[i]] = coeffs[m[i]] + c
        return UPoly(self.field, coeffs)

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "MPoly(%d terms in %d vars)" % (len(self.terms), self.nvars)
