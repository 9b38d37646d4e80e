"""Exact Gaussian-rational coefficient arithmetic.

Coefficients live in Q(i).  The polynomial layer stores them either as a
plain Python ``int`` (the overwhelmingly common case: real integers) or as a
:class:`GaussRat`.  The ``c*`` kernel functions below accept and return this
union; they keep values normalized so that a coefficient is an ``int``
whenever it is a real integer.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Coeff = "int | GaussRat"


class GaussRat:
    """A Gaussian rational (a + b*i)/den with den > 0 and gcd(a, b, den) = 1.

    The public accessors ``re`` and ``im`` return ``Fraction`` values in
    lowest terms; multiplication respects i**2 = -1.
    """

    __slots__ = ("a", "b", "den")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            a, b, den = re.a, re.b, re.den
            if im:
                raise ValueError("cannot combine GaussRat re with nonzero im")
        else:
            ra = Fraction(re)
            rb = Fraction(im)
            den = ra.denominator * rb.denominator // gcd(ra.denominator, rb.denominator)
            a = ra.numerator * (den // ra.denominator)
            b = rb.numerator * (den // rb.denominator)
        g = gcd(a, b, den)
        if g > 1:
            a //= g
            b //= g
            den //= g
        self.a = a
        self.b = b
        self.den = den

    @staticmethod
    def _make(a: int, b: int, den: int) -> "GaussRat":
        if den < 0:
            a, b, den = -a, -b, -den
        g = gcd(a, b, den)
        if g > 1:
            a //= g
            b //= g
            den //= g
        self = object.__new__(GaussRat)
        self.a = a
        self.b = b
        self.den = den
        return self

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.den)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.den)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conjugate(self) -> "GaussRat":
        return GaussRat._make(self.a, -self.b, self.den)

    def norm(self) -> Fraction:
        """|c|^2 = re^2 + im^2."""
        return Fraction(self.a * self.a + self.b * self.b, self.den * self.den)

    def __add__(self, other):
        if isinstance(other, int):
            return GaussRat._make(self.a + other * self.den, self.b, self.den)
        if isinstance(other, GaussRat):
            return GaussRat._make(
                self.a * other.den + other.a * self.den,
                self.b * other.den + other.b * self.den,
                self.den * other.den,
            )
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._make(-self.a, -self.b, self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, GaussRat) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussRat._make(self.a * other, self.b * other, self.den)
        if isinstance(other, GaussRat):
            return GaussRat._make(
                self.a * other.a - self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.den * other.den,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return cdiv(self, other)

    def __rtruediv__(self, other):
        return cdiv(other, self)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.b == 0 and self.a == other
        if isinstance(other, GaussRat):
            return self.a == other.a and self.b == other.b and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.den))

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    def __str__(self):
        return cstr(self)


I = GaussRat(0, 1)


def cfrom(value) -> "int | GaussRat":
    """Coerce an int / Fraction / GaussRat / (re, im) pair into a coefficient."""
    if isinstance(value, int):
        return value
    if isinstance(value, GaussRat):
        return cnorm(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else GaussRat(value)
    if isinstance(value, tuple) and len(value) == 2:
        return cnorm(GaussRat(*value))
    raise TypeError(f"cannot coerce {value!r} to a coefficient")


def cnorm(c):
    if isinstance(c, GaussRat) and c.b == 0 and c.den == 1:
        return c.a
    return c


def cis_zero(c) -> bool:
    if isinstance(c, int):
        return c == 0
    return c.is_zero()


def cadd(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return x + y
    if isinstance(x, int):
        return cnorm(y + x)
    return cnorm(x + y)


def csub(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return x - y
    return cadd(x, cneg(y))


def cmul(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return x * y
    if isinstance(x, int):
        return cnorm(y * x)
    return cnorm(x * y)


def cneg(x):
    return -x


def cconj(x):
    if isinstance(x, int):
        return x
    return x.conjugate()


def cdiv(x, y):
    """Exact division in Q(i); y must be nonzero."""
    if cis_zero(y):
        raise ZeroDivisionError("coefficient division by zero")
    if isinstance(x, int) and isinstance(y, int):
        if x % y == 0:
            return x // y
        return GaussRat(Fraction(x, y))
    gx = x if isinstance(x, GaussRat) else GaussRat(x)
    gy = y if isinstance(y, GaussRat) else GaussRat(y)
    # (x / y) = x * conj(y) / |y|^2
    num = gx * gy.conjugate()
    n = gy.a * gy.a + gy.b * gy.b
    return cnorm(GaussRat._make(num.a * gy.den * gy.den, num.b * gy.den * gy.den,
                                num.den * n))


def ceq(x, y) -> bool:
    return cis_zero(csub(x, y))


def _sqrt_fraction(q: Fraction):
    """Exact nonnegative rational square root, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def csqrt(c):
    """Exact square root of c in Q(i), or None if c is not a square there.

    When a root exists the one with re > 0 (or re = 0 and im >= 0) is
    returned.
    """
    g = c if isinstance(c, GaussRat) else GaussRat(c)
    if g.is_zero():
        return 0
    re, im = g.re, g.im
    if im == 0:
        r = _sqrt_fraction(re)
        if r is not None:
            return cfrom(r)
        r = _sqrt_fraction(-re)
        if r is not None:
            return cnorm(GaussRat(0, r))
        return None
    n = _sqrt_fraction(re * re + im * im)
    if n is None:
        return None
    x = _sqrt_fraction((re + n) / 2)
    if x is None or x == 0:
        return None
    y = im / (2 * x)
    root = GaussRat(x, y)
    if cis_zero(csub(cmul(root, root), c)):
        return cnorm(root)
    return None


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cstr(c) -> str:
    """Canonical coefficient text: '3', '-1/2', 'i', '-2*i', '(1+1/2*i)'."""
    if isinstance(c, int):
        return str(c)
    re, im = c.re, c.im
    if im == 0:
        return _frac_str(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{_frac_str(im)}*i"
    im_part = "i" if im == 1 else ("-i" if im == -1 else f"{_frac_str(im)}*i")
    if im > 0:
        return f"({_frac_str(re)}+{im_part})"
    return f"({_frac_str(re)}{im_part})"


UNITS = (1, -1, I, -I)


def cunit_quotient(x, y):
    """Return u in {1, -1, i, -i} with x = u*y, or None."""
    if cis_zero(y):
        return 1 if cis_zero(x) else None
    for u in UNITS:
        if ceq(x, cmul(u, y)):
            return u
    return None
