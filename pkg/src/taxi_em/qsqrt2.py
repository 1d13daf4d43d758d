"""Exact arithmetic in the field Q(sqrt 2).

Several infima of the weight bounds are of the form a + b*sqrt(2) with a, b
rational, and are attained only at triangles with irrational coordinates.
``QSqrt2`` lets the closed-form bounds be evaluated and compared exactly
at such triangles without any floating point.
"""

from fractions import Fraction
import math
import numbers


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, numbers.Rational):
        return Fraction(v)
    raise TypeError(f"expected a rational, got {type(v).__name__}")


class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, v):
        if isinstance(v, QSqrt2):
            return v
        if isinstance(v, numbers.Rational):
            return cls(v, 0)
        return NotImplemented

    @property
    def is_rational(self):
        return self.b == 0

    def sign(self):
        # sign of a + b*sqrt(2) by comparing a^2 with 2 b^2
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: the larger magnitude wins
        lhs, rhs = a * a, 2 * b * b
        if lhs == rhs:  # impossible for rational a, b != 0
            return 0
        if lhs > rhs:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def conjugate(self):
        return QSqrt2(self.a, -self.b)

    def __add__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conjugate()
        return QSqrt2(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt(2)"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt(2)"


SQRT2 = QSqrt2(0, 1)
