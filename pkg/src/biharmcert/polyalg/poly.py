"""Sparse multivariate polynomials over an exact field.

A polynomial is a map from exponent tuples to nonzero coefficients.  The
coefficients are :class:`fractions.Fraction` or
:class:`~biharmcert.exactnum.QuadExt`; plain ints are promoted on entry.
Monomials are ordered graded-lexicographically, with variable precedence
given by the order of the :class:`VarTable`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from ..exactnum import QuadExt

Monomial = tuple


class VarTableMismatch(ValueError):
    """Two polynomials over different variable tables were combined."""


class UnknownVariable(KeyError):
    def __str__(self):
        return f"unknown variable {self.args[0]!r}"


class NotDivisible(ArithmeticError):
    """Raised by :meth:`MultiPoly.exact_div` when a remainder is left."""


class VarTable:
    """Ordered, immutable list of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, name, value):
        raise AttributeError("VarTable is immutable")

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarTable({list(self.names)!r})"

    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.names)

    def gen_monomial(self, name: str, power: int = 1) -> Monomial:
        m = [0] * len(self.names)
        m[self.index(name)] = power
        return tuple(m)


def monomial_key(m: Monomial):
    """Sort key for the graded-lex order (larger key = larger monomial)."""
    return (sum(m), m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def _scalar(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, QuadExt)):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QuadExt)) and not isinstance(x, bool)


class MultiPoly:
    """Immutable sparse polynomial; see module docstring."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            n = len(table)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("monomial length does not match the variable table")
                if c:
                    clean[tuple(m)] = _scalar(c)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, table: VarTable, terms: dict) -> MultiPoly:
        # caller guarantees: tuple monomials, no zero coefficients
        p = object.__new__(cls)
        object.__setattr__(p, "table", table)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, table: VarTable) -> MultiPoly:
        return cls._raw(table, {})

    @classmethod
    def const(cls, table: VarTable, c) -> MultiPoly:
        c = _scalar(c)
        return cls._raw(table, {table.zero_monomial(): c} if c else {})

    @classmethod
    def var(cls, table: VarTable, name: str) -> MultiPoly:
        return cls._raw(table, {table.gen_monomial(name): Fraction(1)})

    @classmethod
    def monomial(cls, table: VarTable, mono: Monomial, coeff=1) -> MultiPoly:
        return cls(table, {tuple(mono): coeff})

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.table != self.table:
                raise VarTableMismatch(f"{self.table!r} vs {other.table!r}")
            return other
        if _is_scalar(other):
            return MultiPoly.const(self.table, other)
        return NotImplemented

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        z = self.table.zero_monomial()
        return not self.terms or (len(self.terms) == 1 and z in self.terms)

    def constant_value(self):
        """Coefficient of the constant monomial."""
        return self.terms.get(self.table.zero_monomial(), Fraction(0))

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) or c.is_rational for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def scale(self, c) -> MultiPoly:
        c = _scalar(c)
        if not c:
            return MultiPoly.zero(self.table)
        return MultiPoly._raw(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return MultiPoly.zero(self.table)
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return MultiPoly._raw(self.table, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / _scalar(other))
        return NotImplemented

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.table == other.table and self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.table, frozenset(self.terms.items())))
            )
        return self._hash

    # -- structure ------------------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=monomial_key)
        return m, self.terms[m]

    def leading_coeff(self):
        return self.leading_term()[1]

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = self.table.index(var)
        return max(m[i] for m in self.terms)

    def variables(self) -> list[str]:
        used = [False] * len(self.table)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return [n for n, u in zip(self.table.names, used) if u]

    def coeffs_in(self, var: str) -> dict[int, MultiPoly]:
        """Split as ``sum_k coeff_k * var**k``; coefficients are free of ``var``."""
        i = self.table.index(var)
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = m[i]
            mm = m[:i] + (0,) + m[i + 1 :]
            parts.setdefault(k, {})[mm] = c
        return {k: MultiPoly._raw(self.table, t) for k, t in parts.items()}

    def coeff(self, var: str, k: int) -> MultiPoly:
        return self.coeffs_in(var).get(k, MultiPoly.zero(self.table))

    def lc_in(self, var: str) -> MultiPoly:
        """Leading coefficient with respect to ``var``."""
        parts = self.coeffs_in(var)
        if not parts:
            return MultiPoly.zero(self.table)
        return parts[max(parts)]

    def monomial_gcd(self) -> Monomial:
        if not self.terms:
            return self.table.zero_monomial()
        it = iter(self.terms)
        g = list(next(it))
        for m in it:
            g = [min(x, y) for x, y in zip(g, m)]
        return tuple(g)

    def div_monomial(self, mono: Monomial) -> MultiPoly:
        return MultiPoly._raw(self.table, {mono_div(m, mono): c for m, c in self.terms.items()})

    def mul_monomial(self, mono: Monomial, coeff=1) -> MultiPoly:
        coeff = _scalar(coeff)
        return MultiPoly._raw(
            self.table, {mono_mul(m, mono): c * coeff for m, c in self.terms.items() if c * coeff}
        )

    # -- content --------------------------------------------------------
    def content(self) -> Fraction:
        """Rational ``g`` with ``self/g`` integral, primitive, positive leading coefficient.

        Only defined for rational coefficients.
        """
        if not self.terms:
            return Fraction(0)
        num_g = 0
        den_l = 1
        for c in self.terms.values():
            if isinstance(c, QuadExt):
                c = c.to_rational()
            num_g = gcd(num_g, c.numerator)
            den_l = den_l * c.denominator // gcd(den_l, c.denominator)
        g = Fraction(num_g, den_l)
        lc = self.leading_coeff()
        if (lc.to_rational() if isinstance(lc, QuadExt) else lc) < 0:
            g = -g
        return g

    def primitive(self) -> MultiPoly:
        if not self.terms:
            return self
        return self.scale(1 / self.content())

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff())

    # -- calculus & substitution ---------------------------------------
    def diff(self, var: str) -> MultiPoly:
        i = self.table.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1 :]] = c * e
        return MultiPoly._raw(self.table, out)

    def subs(self, values: Mapping[str, object]) -> MultiPoly:
        """Substitute scalars or polynomials (same table) for variables."""
        idx = {self.table.index(k): v for k, v in values.items()}
        if not idx:
            return self
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                v = idx[i]
                cache[key] = v**e if not isinstance(v, MultiPoly) else v**e
            return cache[key]

        result = MultiPoly.zero(self.table)
        acc: dict = {}
        for m, c in self.terms.items():
            factor = c
            rest = list(m)
            poly_factor = None
            for i in idx:
                e = m[i]
                if e:
                    rest[i] = 0
                    p = power(i, e)
                    if isinstance(p, MultiPoly):
                        poly_factor = p if poly_factor is None else poly_factor * p
                    else:
                        factor = factor * _scalar(p)
            if not factor:
                continue
            rest = tuple(rest)
            if poly_factor is None:
                v = acc.get(rest)
                acc[rest] = factor if v is None else v + factor
            else:
                result = result + poly_factor.mul_monomial(rest, factor)
        return result + MultiPoly(self.table, acc)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at scalar values for every variable that occurs."""
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError(f"variables left after evaluation: {p.variables()}")
        return p.constant_value()

    def to_table(self, table: VarTable) -> MultiPoly:
        """Re-express over another table containing every variable used."""
        if table == self.table:
            return self
        pos = []
        for i, name in enumerate(self.table.names):
            pos.append(table.index(name) if name in table else None)
        n = len(table)
        out = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = pos[i]
                    if j is None:
                        raise UnknownVariable(self.table.names[i])
                    mm[j] = e
            out[tuple(mm)] = c
        return MultiPoly._raw(table, out)

    # -- division -------------------------------------------------------
    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises :class:`NotDivisible` otherwise."""
        other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        lm_q, lc_q = other.leading_term()
        inv_lc = 1 / lc_q
        rem = dict(self.terms)
        quot: dict = {}
        q_terms = list(other.terms.items())
        while rem:
            lm = max(rem, key=monomial_key)
            if not mono_divides(lm_q, lm):
                raise NotDivisible("polynomial division leaves a remainder")
            t_m = mono_div(lm, lm_q)
            t_c = rem[lm] * inv_lc
            quot[t_m] = t_c
            for m, c in q_terms:
                mm = mono_mul(m, t_m)
                v = rem.get(mm)
                v = -(c * t_c) if v is None else v - c * t_c
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return MultiPoly._raw(self.table, quot)

    def divides(self, other: MultiPoly) -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- text -----------------------------------------------------------
    def __str__(self):
        from .parse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    """Dispatch ``add``/``sub``/``mul``/``pow`` (``q`` is the exponent for pow)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p**q
    raise ValueError(f"unknown operation {op!r}")


def differentiate(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)
