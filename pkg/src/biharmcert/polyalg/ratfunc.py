"""Quotients of polynomials.

Normalization is deliberately shallow: common monomial factors and scalar
content are removed, the denominator gets a positive leading coefficient,
and an exact polynomial quotient is recognized when the denominator divides
the numerator.  No multivariate GCD is attempted; equality is decided by
cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..exactnum import QuadExt
from .poly import MultiPoly, NotDivisible, VarTable, VarTableMismatch, _is_scalar

__all__ = ["RatFunc", "substitute", "clear_denominators"]


def _integer_normalize(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Scale both to integer coefficients with no common integer factor."""
    coeffs = [c.to_rational() if isinstance(c, QuadExt) else c for c in num.terms.values()]
    coeffs += [c.to_rational() if isinstance(c, QuadExt) else c for c in den.terms.values()]
    lcm_den = 1
    for c in coeffs:
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    g = 0
    for c in coeffs:
        g = gcd(g, (c * lcm_den).numerator)
    scale = Fraction(lcm_den, g)
    lc = den.leading_coeff()
    if (lc.to_rational() if isinstance(lc, QuadExt) else lc) < 0:
        scale = -scale
    return num.scale(scale), den.scale(scale)


def _normalize(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    table = num.table
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return num, MultiPoly.const(table, 1)
    g = tuple(min(a, b) for a, b in zip(num.monomial_gcd(), den.monomial_gcd()))
    if any(g):
        num, den = num.div_monomial(g), den.div_monomial(g)
    if not den.is_constant():
        try:
            q = num.exact_div(den)
        except NotDivisible:
            pass
        else:
            num, den = q, MultiPoly.const(table, 1)
    if num.is_rational() and den.is_rational():
        return _integer_normalize(num, den)
    lc = den.leading_coeff()
    return num.scale(1 / lc), den.scale(1 / lc)


class RatFunc:
    """Immutable ``numerator / denominator`` over a shared variable table."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        if not isinstance(num, MultiPoly):
            raise TypeError("numerator must be a MultiPoly")
        if den is None:
            den = MultiPoly.const(num.table, 1)
        elif _is_scalar(den):
            den = MultiPoly.const(num.table, den)
        if den.table != num.table:
            raise VarTableMismatch("numerator and denominator tables differ")
        if not _normalized:
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def table(self) -> VarTable:
        return self.num.table

    @classmethod
    def lift(cls, x, table: VarTable | None = None) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MultiPoly):
            return cls(x)
        if _is_scalar(x) and table is not None:
            return cls(MultiPoly.const(table, x))
        raise TypeError(f"cannot lift {type(x).__name__} to RatFunc")

    def _other(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly) or _is_scalar(other):
            return RatFunc.lift(other, self.table)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("rational function has a nonconstant denominator")
        return self.num.scale(1 / self.den.constant_value())

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        # equal values may have different representatives
        raise TypeError("RatFunc is unhashable")

    # -- calculus -------------------------------------------------------
    def diff(self, var: str) -> RatFunc:
        dn, dd = self.num.diff(var), self.den.diff(var)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, values) -> RatFunc:
        d = self.den.subs(values)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return RatFunc(self.num.subs(values), d)

    def evaluate(self, values):
        n = self.num.evaluate(values)
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return n / d

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def substitute(p, var: str, value) -> RatFunc:
    """Replace ``var`` in ``p`` by a rational function over the same table.

    ``p`` may itself be a :class:`RatFunc`.  Each polynomial part is
    expanded over the common denominator ``den(value)**deg``.
    """
    if isinstance(p, RatFunc):
        return substitute(p.num, var, value) / substitute(p.den, var, value)
    value = RatFunc.lift(value, p.table)
    parts = p.coeffs_in(var)
    if not parts or max(parts) == 0:
        return RatFunc(p)
    deg = max(parts)
    vn, vd = value.num, value.den
    num = MultiPoly.zero(p.table)
    vn_pows = [MultiPoly.const(p.table, 1)]
    vd_pows = [MultiPoly.const(p.table, 1)]
    for _ in range(deg):
        vn_pows.append(vn_pows[-1] * vn)
        vd_pows.append(vd_pows[-1] * vd)
    for k, coeff in parts.items():
        num = num + coeff * vn_pows[k] * vd_pows[deg - k]
    return RatFunc(num, vd_pows[deg])


def clear_denominators(r) -> tuple[MultiPoly, MultiPoly]:
    """Return the normalized ``(numerator, denominator)`` pair of ``r``."""
    r = RatFunc.lift(r)
    return r.num, r.den
