"""Complex numbers over a RealField, as exact (re, im) pairs."""

from .field import Elem


class Cx:
    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        assert isinstance(re, Elem)
        self.re = re
        self.im = im if im is not None else re.field.zero

    @property
    def field(self):
        return self.re.field

    def _coerce(self, other):
        if isinstance(other, Cx):
            return other
        if isinstance(other, Elem):
            return Cx(other)
        return Cx(self.re.field.elem(other))

    def __add__(self, other):
        o = self._coerce(other)
        return Cx(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Cx(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Cx(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        return Cx(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n2 = o.norm2()
        inv = n2.inverse()
        num = self * o.conj()
        return Cx(num.re * inv, num.im * inv)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        out = Cx(self.re.field.one)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return Cx(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def times_i(self):
        return Cx(-self.im, self.re)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return "Cx(%r, %r)" % (self.re, self.im)


def cx(field, re, im=0):
    return Cx(field.elem(re), field.elem(im))
