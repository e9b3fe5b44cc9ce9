"""Algorithms that treat a polynomial as univariate in one main variable.

The other variables ride along in the coefficients, so resultants and
pseudo-remainders are computed over the polynomial ring in the remaining
variables without ever forming fractions of polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import MultiPoly, VarTable

__all__ = [
    "coeff_list",
    "from_coeff_list",
    "pseudo_divmod",
    "prem",
    "resultant",
    "resultant_sylvester",
    "sylvester_matrix",
    "bareiss_det",
    "univariate_gcd",
    "SturmChain",
    "sturm_chain",
    "sturm_count",
    "parse_extended",
]


def coeff_list(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficients of ``p`` in ``var``, lowest degree first; [] for zero."""
    parts = p.coeffs_in(var)
    if not parts:
        return []
    zero = MultiPoly.zero(p.table)
    return [parts.get(k, zero) for k in range(max(parts) + 1)]


def from_coeff_list(coeffs: list[MultiPoly], var: str, table: VarTable) -> MultiPoly:
    x = MultiPoly.var(table, var)
    out = MultiPoly.zero(table)
    for k, c in enumerate(coeffs):
        if c:
            out = out + c * x**k
    return out


def _trim(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _prem_lists(a: list, b: list, with_quotient: bool = False):
    """Pseudo-division of coefficient lists: lc(b)^e * a = q*b + r."""
    db = len(b) - 1
    lcb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    quot = [None] * max(e, 0)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        shift = dr - db
        if with_quotient:
            quot = [c * lcb if c is not None else None for c in quot]
            quot[shift] = lr
        new = [c * lcb for c in r]
        for i, bc in enumerate(b):
            if bc:
                new[i + shift] = new[i + shift] - lr * bc
        new.pop()  # leading coefficient cancels by construction
        r = _trim(new)
        e -= 1
    if e > 0:
        f = lcb**e
        r = [c * f for c in r]
        if with_quotient:
            quot = [c * f if c is not None else None for c in quot]
    if with_quotient:
        return quot, r
    return r


def pseudo_divmod(p: MultiPoly, q: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    """``(Q, R)`` with ``lc(q)**(deg p - deg q + 1) * p = Q*q + R``."""
    a, b = coeff_list(p, var), coeff_list(q, var)
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    if len(a) < len(b):
        return MultiPoly.zero(p.table), p
    zero = MultiPoly.zero(p.table)
    quot, rem = _prem_lists(a, b, with_quotient=True)
    quot = [zero if c is None else c for c in quot]
    return from_coeff_list(quot, var, p.table), from_coeff_list(rem, var, p.table)


def prem(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    a, b = coeff_list(p, var), coeff_list(q, var)
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    if len(a) < len(b):
        return p
    return from_coeff_list(_prem_lists(a, b), var, p.table)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant in ``var`` by the subresultant polynomial remainder sequence.

    Only exact divisions in the coefficient ring are performed, which keeps
    intermediate coefficients from growing exponentially.
    """
    if p.table != q.table:
        raise ValueError("resultant of polynomials over different tables")
    table = p.table
    A, B = coeff_list(p, var), coeff_list(q, var)
    if len(A) < 2 or len(B) < 2:
        raise ValueError(f"resultant needs positive degree in {var!r}")
    one = MultiPoly.const(table, 1)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    g = one
    h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _prem_lists(A, B)
        A = B
        if not R:
            return MultiPoly.zero(table)
        div = g * h**delta
        B = [c.exact_div(div) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).exact_div(h ** (delta - 1))
        if len(B) - 1 == 0:
            break
    da = len(A) - 1
    lb = B[-1]
    if da == 1:
        h = lb
    else:
        h = (lb**da).exact_div(h ** (da - 1))
    return h if s > 0 else -h


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    a = list(reversed(coeff_list(p, var)))
    b = list(reversed(coeff_list(q, var)))
    m, n = len(a) - 1, len(b) - 1
    zero = MultiPoly.zero(p.table)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix, exact_div=None):
    """Fraction-free determinant (Bareiss), with row pivoting.

    ``exact_div(a, b)`` defaults to ``a.exact_div(b)`` for polynomials and
    true division otherwise.
    """
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    if exact_div is None:

        def exact_div(a, b):
            return a.exact_div(b) if isinstance(a, MultiPoly) else a / b

    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[k][k] * 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot
                if mik and row_k[j]:
                    v = v - mik * row_k[j]
                row_i[j] = v if prev is None else exact_div(v, prev)
            row_i[k] = row_i[k] * 0
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant_sylvester(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant as the determinant of the Sylvester matrix (independent route)."""
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise ValueError(f"resultant needs positive degree in {var!r}")
    return bareiss_det(sylvester_matrix(p, q, var))


# -- univariate over the rationals -------------------------------------------


def _rational_coeffs(p: MultiPoly, var: str) -> list[Fraction]:
    others = [v for v in p.variables() if v != var]
    if others:
        raise ValueError(f"polynomial is not univariate in {var!r}: also uses {others}")
    return [c.constant_value() for c in coeff_list(p, var)]


def _q_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        t = a[-1] * inv
        q[shift] = t
        for i, bc in enumerate(b):
            a[i + shift] -= t * bc
        a.pop()
        _trim(a)
    return q, a


def _q_monic(a: list) -> list:
    inv = 1 / a[-1]
    return [c * inv for c in a]


def _q_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _q_divmod(a, b)[1]
    return _q_monic(a) if a else a


def _q_deriv(a: list) -> list:
    return _trim([a[k] * k for k in range(1, len(a))])


def _to_poly(cs: list, var: str, table: VarTable) -> MultiPoly:
    i = table.index(var)
    terms = {}
    for k, c in enumerate(cs):
        if c:
            m = list(table.zero_monomial())
            m[i] = k
            terms[tuple(m)] = c
    return MultiPoly(table, terms)


def univariate_gcd(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """GCD in ``var`` with other variables treated as field-of-fractions coefficients.

    Rational univariate inputs give the monic GCD.  With extra variables the
    result is the last nonzero subresultant-PRS entry made primitive, which
    is the GCD up to a factor free of ``var``.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    table = p.table
    if set(p.variables()) <= {var} and set(q.variables()) <= {var}:
        g = _q_gcd(_rational_coeffs(p, var), _rational_coeffs(q, var))
        return _to_poly(g, var, table)
    if q.is_zero():
        return p.primitive()
    if p.is_zero():
        return q.primitive()
    A, B = coeff_list(p, var), coeff_list(q, var)
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        return MultiPoly.const(table, 1)
    g = h = MultiPoly.const(table, 1)
    while True:
        delta = len(A) - len(B)
        R = _prem_lists(A, B)
        if not R:
            return from_coeff_list(B, var, table).primitive()
        if len(R) == 1:
            return MultiPoly.const(table, 1)
        A = B
        div = g * h**delta
        B = [c.exact_div(div) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).exact_div(h ** (delta - 1))


# -- Sturm sequences ---------------------------------------------------------


def parse_extended(text):
    """Parse an extended rational: ``"inf"``, ``"-inf"``, ``"p/q"`` or a number."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        if math.isinf(text):
            return text
        raise ValueError("floating-point bounds must be infinite")
    t = str(text).strip().lower()
    if t in ("inf", "+inf", "oo", "+oo"):
        return math.inf
    if t in ("-inf", "-oo"):
        return -math.inf
    from ..exactnum import parse_rational

    return parse_rational(t)


@dataclass(frozen=True)
class SturmChain:
    var: str
    polys: tuple

    def __len__(self):
        return len(self.polys)

    def sign_variations(self, x) -> int:
        signs = []
        for p in self.polys:
            cs = _rational_coeffs(p, self.var)
            s = _sign_at(cs, x)
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(cs: list, x) -> int:
    if not cs:
        return 0
    if isinstance(x, float) and math.isinf(x):
        lc = cs[-1]
        s = 1 if lc > 0 else -1
        if x < 0 and (len(cs) - 1) % 2 == 1:
            s = -s
        return s
    v = Fraction(0)
    for c in reversed(cs):
        v = v * x + c
    return (v > 0) - (v < 0)


def _squarefree(cs: list) -> list:
    d = _q_deriv(cs)
    if not d:
        return cs
    g = _q_gcd(cs, d)
    if len(g) <= 1:
        return cs
    return _q_divmod(cs, g)[0]


def sturm_chain(p: MultiPoly, var: str, squarefree: bool = True) -> SturmChain:
    cs = _rational_coeffs(p, var)
    if not cs:
        raise ValueError("Sturm chain of the zero polynomial")
    if squarefree:
        cs = _squarefree(cs)
    chain = [cs, _q_deriv(cs)]
    while chain[-1]:
        r = _q_divmod(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    chain.pop()
    return SturmChain(var, tuple(_to_poly(c, var, p.table) for c in chain))


def sturm_count(p: MultiPoly, var: str, lo=-math.inf, hi=math.inf) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    lo, hi = parse_extended(lo), parse_extended(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.is_zero():
        raise ValueError("Sturm count of the zero polynomial")
    chain = sturm_chain(p, var)
    return chain.sign_variations(lo) - chain.sign_variations(hi)
