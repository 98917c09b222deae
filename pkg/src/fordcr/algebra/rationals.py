"""Exact rational arithmetic helpers.

Uses gmpy2.mpq when available (noticeably faster on the sizes that show
up in iterated resultant computations), plain fractions.Fraction otherwise.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

Q0 = QQ(0)
Q1 = QQ(1)


def qq(num, den=1):
    """Coerce to the rational type in use."""
    return QQ(num, den) if den != 1 else QQ(num)


def to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def dyadic_floor(q, bits):
    """Largest multiple of 2**-bits that is <= q."""
    scaled = q * (1 << bits)
    n = scaled.numerator // scaled.denominator
    return QQ(n, 1 << bits)


def dyadic_ceil(q, bits):
    scaled = q * (1 << bits)
    n = -((-scaled.numerator) // scaled.denominator)
    return QQ(n, 1 << bits)


def sqrt_bounds(q, bits=48):
    """Rational (lo, hi) with lo >= 0 and lo**2 <= q <= hi**2, for q >= 0."""
    from math import isqrt
    assert q >= 0
    num = int(q.numerator) << (2 * bits)
    r = isqrt(num // int(q.denominator))
    return QQ(r, 1 << bits), QQ(r + 1, 1 << bits)


def exact_sqrt(q):
    """The exact rational square root of q, or None if q is not a square."""
    from math import isqrt
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return QQ(rn, rd)
    return None


# --- interval arithmetic on rational endpoint pairs -------------------------

def iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def iv_neg(a):
    return (-a[1], -a[0])


def iv_mul(a, b):
    p0 = a[0] * b[0]
    p1 = a[0] * b[1]
    p2 = a[1] * b[0]
    p3 = a[1] * b[1]
    return (min(p0, p1, p2, p3), max(p0, p1, p2, p3))


def iv_scale(a, q):
    if q >= 0:
        return (a[0] * q, a[1] * q)
    return (a[1] * q, a[0] * q)


def iv_width(a):
    return a[1] - a[0]


def iv_contains_zero(a):
    return a[0] <= 0 <= a[1]


def iv_sign(a):
    """Sign if determined by the interval, else None."""
    if a[0] > 0:
        return 1
    if a[1] < 0:
        return -1
    if a[0] == a[1] == 0:
        return 0
    return None


def iv_sqr(a):
    lo, hi = a
    if lo >= 0:
        return (lo * lo, hi * hi)
    if hi <= 0:
        return (hi * hi, lo * lo)
    return (Q0, max(lo * lo, hi * hi))
