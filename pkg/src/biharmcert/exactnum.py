"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt(d)).

Rationals are :class:`fractions.Fraction`, which already keeps values in
lowest terms with a positive denominator.  :class:`QuadExt` adds the
``a + b*sqrt(d)`` numbers needed when principal curvatures are irrational.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "QuadExt",
    "DiscriminantMismatch",
    "rat_normalize",
    "parse_rational",
    "format_rational",
    "quad",
    "quad_arith",
    "quad_inv",
    "parse_quad",
    "is_rational_square",
    "rational_sqrt",
]


class DiscriminantMismatch(ValueError):
    """Raised when combining elements of two different quadratic fields."""


def rat_normalize(n: int, d: int) -> Fraction:
    """Return ``n/d`` in lowest terms with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(n, d)


_RAT_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (no decimals) into a Fraction."""
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat_normalize(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_rational_square(x: Fraction) -> bool:
    return rational_sqrt(x) is not None


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QuadExt:
    """An element ``a + b*sqrt(d)`` of Q(sqrt(d)), d >= 0 not a rational square.

    Use :func:`quad` to build values; it returns a plain Fraction when the
    discriminant is a perfect square.  Elements with ``b == 0`` still carry
    their field's discriminant so that mixed-field arithmetic is caught.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        a, b, d = _as_fraction(a), _as_fraction(b), _as_fraction(d)
        if d < 0:
            raise ValueError("discriminant must be nonnegative")
        if is_rational_square(d):
            raise ValueError(
                f"discriminant {format_rational(d)} is a rational square; use quad()"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise DiscriminantMismatch(
                    f"sqrt({format_rational(self.d)}) vs sqrt({format_rational(other.d)})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2``."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            # only possible for zero since d is not a square
            raise ZeroDivisionError("inverse of zero in Q(sqrt(d))")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(d)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- projections ----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d!r})"

    def __str__(self):
        d = format_rational(self.d)
        if self.b == 0:
            return format_rational(self.a)
        mag = abs(self.b)
        root = f"sqrt({d})" if mag == 1 else f"{format_rational(mag)}*sqrt({d})"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)} {sign} {root}"


def quad(a, b, d):
    """Build ``a + b*sqrt(d)``, collapsing to a Fraction for square ``d``."""
    a, b, d = _as_fraction(a), _as_fraction(b), _as_fraction(d)
    root = rational_sqrt(d)
    if root is not None:
        return a + b * root
    return QuadExt(a, b, d)


def quad_arith(op: str, x, y):
    """Apply ``op`` in {"add", "sub", "mul"} to two field elements."""
    if isinstance(x, QuadExt) and isinstance(y, QuadExt) and x.d != y.d:
        raise DiscriminantMismatch(
            f"sqrt({format_rational(x.d)}) vs sqrt({format_rational(y.d)})"
        )
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def quad_inv(x):
    if isinstance(x, QuadExt):
        return x.inverse()
    x = _as_fraction(x)
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


_QUAD_RE = re.compile(
    r"""\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*)?
        (?:(?P<b>[+-]?\d+(?:/\d+)?)\s*\*\s*|(?P<neg>-)\s*)?sqrt\(\s*(?P<d>\d+(?:/\d+)?)\s*\)\s*$""",
    re.VERBOSE,
)


def parse_quad(text: str):
    """Parse ``"p/q"``, ``"a + b*sqrt(d)"``, ``"b*sqrt(d)"`` or ``"sqrt(d)"``."""
    if "sqrt" not in text:
        return parse_rational(text)
    m = _QUAD_RE.match(text)
    if m is None:
        raise ValueError(f"malformed quadratic number: {text!r}")
    a = parse_rational(m.group("a")) if m.group("a") else Fraction(0)
    b = parse_rational(m.group("b")) if m.group("b") else Fraction(-1 if m.group("neg") else 1)
    if m.group("sign") == "-":
        b = -b
    return quad(a, b, parse_rational(m.group("d")))
