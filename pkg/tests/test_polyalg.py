import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from biharmcert.polyalg import (
    MultiPoly,
    PolynomialSyntaxError,
    RatFunc,
    RewriteRule,
    UnknownVariable,
    VarTable,
    VarTableMismatch,
    bareiss_det,
    clear_denominators,
    differentiate,
    format_polynomial,
    monomial_of,
    parse_polynomial,
    poly_arith,
    reduce_by_rewrite,
    resultant,
    resultant_sylvester,
    sturm_chain,
    sturm_count,
    substitute,
    sylvester_matrix,
    univariate_gcd,
)
from helpers import XY, X, cases, linear, prod, rand_frac, rand_poly

RED = VarTable(("u", "S", "K", "f", "c"))
K_TAB = VarTable(("k",))
SEXTIC = "3*k^6 - 9*k^4 + 21*k^2 + 1"


def P(text, table=RED):
    return parse_polynomial(text, table)


def to_sympy(p):
    return sympy.sympify(format_polynomial(p).replace("^", "**"))


# -- parsing and printing ----------------------------------------------------


def test_parse_examples():
    s = P(SEXTIC, K_TAB)
    assert len(s) == 4 and s.degree() == 6
    q = P("k^2 - 2", K_TAB)
    assert len(q) == 2 and q.degree() == 2
    assert P("(f + K)^2 - f^2 - 2*f*K - K^2").is_zero()


def test_format_examples():
    assert format_polynomial(MultiPoly.zero(RED)) == "0"
    assert format_polynomial(P("f^2").scale(Fraction(1, 2))) == "1/2*f^2"
    assert format_polynomial(P(SEXTIC, K_TAB)) == SEXTIC


def test_leading_unary_minus_and_nesting():
    assert P("-(f - K)") == P("K - f")
    assert P("-1/2*f^2 + 3") == P("3 - 1/2*f^2")


def test_syntax_errors_carry_offsets():
    with pytest.raises(PolynomialSyntaxError) as err:
        P("f + * K")
    assert err.value.offset == 4
    with pytest.raises(PolynomialSyntaxError):
        P("(f + K")
    with pytest.raises(PolynomialSyntaxError):
        P("f^-1")
    with pytest.raises(UnknownVariable):
        P("z + 1")


PINNED_POLYS = [
    "27*f^2*(4044800*c^3 - 49579440*c^2*f^2 + 187840944*c*f^4 - 254205945*f^6)"
    " - 6*(51200*c^3 - 19600320*c^2*f^2 + 119328660*c*f^4 - 80969301*f^6)*K"
    " - 208*(2240*c^2 - 108396*c*f^2 - 285363*f^4)*K^2 + 2704*(16*c - 2277*f^2)*K^3 + 140608*K^4",
    "u*S - f*(-9/2*K - 6*c + 189/8*f^2)",
    "13/2*K + 10*c - 108*f^2",
    "13/2*K + 15*c - 441/4*f^2",
    "(K + 9*f^2)*S - 27/4*f*u",
    "S^2 + 2*K + 4*c - 27/4*f^2",
]


@pytest.mark.parametrize("text", PINNED_POLYS)
def test_round_trip_pinned_polynomials(text):
    p = P(text)
    assert P(format_polynomial(p)) == p


def test_round_trip_generated_corpus():
    for rng in cases(11):
        p = rand_poly(rng, XY, terms=5)
        assert parse_polynomial(format_polynomial(p), XY) == p


# -- arithmetic --------------------------------------------------------------


def test_arith_examples():
    assert poly_arith("mul", P("f + K"), P("f - K")) == P("f^2 - K^2")
    p = P("u*S - 3*f")
    assert poly_arith("add", p, MultiPoly.zero(RED)) == p
    assert poly_arith("pow", P("1 - 3*k^2", K_TAB), 2) == P("9*k^4 - 6*k^2 + 1", K_TAB)


def test_table_mismatch():
    with pytest.raises(VarTableMismatch):
        P("x", XY) + P("f")


def test_zero_has_empty_map():
    p = P("f - f")
    assert p.terms == {} and not p


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(mono, coeff, max_size=5).map(lambda d: MultiPoly(XY, d))


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    zero, one = MultiPoly.zero(XY), MultiPoly.const(XY, 1)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p
    assert p - p == zero


def test_ring_axioms_seeded():
    for rng in cases(1):
        p, q, r = (rand_poly(rng) for _ in range(3))
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)
        assert p + q - q == p


def test_differentiate_examples():
    assert differentiate(P("45/2*f^2 - 2*K"), "f") == P("45*f")
    assert differentiate(P("140608*K^4"), "K") == P("562432*K^3")
    with pytest.raises(UnknownVariable):
        differentiate(P("f"), "z")


def test_leibniz_seeded():
    for rng in cases(2):
        p, q = rand_poly(rng), rand_poly(rng)
        for v in ("x", "y"):
            assert differentiate(p * q, v) == p * differentiate(q, v) + q * differentiate(p, v)


# -- rational functions and substitution ---------------------------------------


def test_substitute_examples():
    locus = P("13/2*K + 15*c - 441/4*f^2")
    value = RatFunc(P("441*f^2 - 60*c"), P("26"))
    assert substitute(locus, "K", value).is_zero()
    assert substitute(P(SEXTIC, K_TAB), "k", 1) == RatFunc(MultiPoly.const(K_TAB, 16))
    p = P("u*S + f")
    assert substitute(p, "K", value) == RatFunc(p)


def test_substitute_is_multiplicative():
    for rng in cases(3):
        p, q = rand_poly(rng), rand_poly(rng)
        den = rand_poly(rng, terms=2, deg=1) + 2
        if den.is_zero():
            continue
        val = RatFunc(rand_poly(rng, terms=2, deg=1) + 1, den)
        lhs = substitute(p * q, "x", val)
        rhs = substitute(p, "x", val) * substitute(q, "x", val)
        assert lhs == rhs


def test_clear_denominators_examples():
    f, u = P("f"), P("u")
    assert clear_denominators(RatFunc(f, u)) == (f, u)
    assert clear_denominators(RatFunc(f.scale(2), u.scale(4))) == (f, u.scale(2))
    assert clear_denominators(RatFunc(MultiPoly.zero(RED), u)) == (MultiPoly.zero(RED), MultiPoly.const(RED, 1))


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(P("f"), MultiPoly.zero(RED))


# -- gcd, resultants -------------------------------------------------------------


def test_gcd_examples():
    x = X
    assert univariate_gcd(P("x^2 - 1", x), P("x - 1", x), "x") == P("x - 1", x)
    s = P(SEXTIC, K_TAB)
    assert univariate_gcd(s, s.diff("k"), "k") == MultiPoly.const(K_TAB, 1)
    p = P("2*x^2 - 4", x)
    assert univariate_gcd(p, MultiPoly.zero(x), "x") == P("x^2 - 2", x)
    with pytest.raises(ValueError):
        univariate_gcd(MultiPoly.zero(x), MultiPoly.zero(x), "x")


def test_resultant_examples():
    x = X
    assert resultant(P("x - 1", x), P("x^2 - 1", x), "x").is_zero()
    assert resultant(P("x^2 - 1", x), P("x - 2", x), "x") == MultiPoly.const(x, 3)
    assert resultant(P("x^2 + 1", x), P("x^2 - 3", x), "x") == MultiPoly.const(x, 16)
    with pytest.raises(ValueError):
        resultant(P("3", x), P("x", x), "x")


def test_toy_resultant_in_K():
    t = VarTable(("K", "f"))
    r = resultant(P("(K - f)*(K - 2*f)", t), P("K - 3*f", t), "K")
    assert r == P("2*f^2", t)


def test_bareiss_integer_matrix():
    m = [[Fraction(v) for v in row] for row in ([2, 0, 1], [1, 3, 2], [1, 1, 1])]
    assert bareiss_det(m) == sympy.Matrix(m).det()


def _rand_univariate(rng, table, deg):
    x = MultiPoly.var(table, "x")
    p = x**deg * rng.choice([1, 2, -3])
    for k in range(deg):
        p = p + x**k * rand_frac(rng)
    return p


def test_resultant_gcd_duality():
    # shared-root and coprime families, half each
    for i, rng in enumerate(cases(4)):
        a = _rand_univariate(rng, XY, rng.randint(1, 3))
        b = _rand_univariate(rng, XY, rng.randint(1, 3))
        if i % 2:
            g = linear(XY, "x", rand_frac(rng)) * (1 if rng.random() < 0.5 else MultiPoly.var(XY, "y") + 1)
            a, b = a * g, b * g
        res = resultant(a, b, "x")
        assert res == resultant_sylvester(a, b, "x")
        g = univariate_gcd(a, b, "x")
        assert res.is_zero() == (g.degree("x") > 0)
        if i % 2:
            assert res.is_zero()


def test_resultant_against_sympy():
    x, y = sympy.symbols("x y")
    for rng in cases(5, 60):
        a = rand_poly(rng, XY, terms=4, deg=2) + MultiPoly.var(XY, "x") ** 2
        b = rand_poly(rng, XY, terms=4, deg=2) + MultiPoly.var(XY, "x")
        if a.degree("x") < 1 or b.degree("x") < 1:
            continue
        ours = to_sympy(resultant(a, b, "x"))
        theirs = sympy.resultant(to_sympy(a), to_sympy(b), x)
        assert sympy.expand(ours - theirs) == 0


def test_sylvester_shape():
    m = sylvester_matrix(P("x^2 + 1", X), P("x^2 - 3", X), "x")
    assert len(m) == 4 and all(len(row) == 4 for row in m)


# -- Sturm ----------------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(P(SEXTIC, K_TAB), "k") == 0
    assert sturm_count(P("u^2 - 2", RED), "u", 0, "inf") == 1
    assert sturm_count(P("3*u^3 - 9*u^2 + 21*u + 1", RED), "u", "-inf", "inf") == 1
    with pytest.raises(ValueError):
        sturm_count(MultiPoly.zero(RED), "u")


def test_sturm_half_open():
    p = P("(x - 1)*(x - 2)", X)
    assert sturm_count(p, "x", 1, 2) == 1
    assert sturm_count(p, "x", 0, 1) == 1
    assert sturm_count(p, "x", Fraction(1, 2), Fraction(3, 2)) == 1


def test_sturm_chain_ends_in_gcd():
    p = P("(x - 1)^2*(x + 3)", X)
    chain = sturm_chain(p, "x", squarefree=False)
    g = univariate_gcd(p, p.diff("x"), "x")
    assert chain.polys[-1].monic() == g


def test_sturm_against_constructed_roots():
    for rng in cases(6):
        roots = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(rng.randint(1, 6))]
        factors = [linear(X, "x", r) ** rng.randint(1, 2) for r in roots]
        if rng.random() < 0.5:
            factors.append(MultiPoly.var(X, "x") ** 2 + rng.randint(1, 5))
        p = prod(factors, X).scale(rng.choice([1, -2, Fraction(3, 5)]))
        distinct = set(roots)
        lo = rng.choice([-math.inf, Fraction(rng.randint(-6, 0))])
        hi = rng.choice([math.inf, Fraction(rng.randint(1, 6))])
        assert sturm_count(p, "x", lo, hi) == sum(1 for r in distinct if lo < r <= hi)
        assert sturm_count(p, "x") == len(distinct)


# -- rewriting ----------------------------------------------------------------------


def _us_rule():
    R = P("f*(-9/2*K - 6*c + 189/8*f^2)")
    return RewriteRule(monomial_of(RED, u=1, S=1), R, "uS rule", "X_1f_1"), R


def test_rewrite_examples():
    rule, R = _us_rule()
    assert reduce_by_rewrite(P("f*u*S"), rule) == P("f") * R
    assert reduce_by_rewrite(P("u^2*S^2"), rule) == R * R
    p = P("u^3 + S^2 + K*f")
    assert reduce_by_rewrite(p, rule) == p


def test_rule_must_be_self_reduced():
    with pytest.raises(ValueError):
        RewriteRule(monomial_of(RED, u=1, S=1), P("u^2*S^2"))


def test_rewrite_matches_field_substitution():
    rule, R = _us_rule()
    for rng in cases(7, 200):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            terms[tuple(rng.randint(0, 2) for _ in range(5))] = rand_frac(rng)
        p = MultiPoly(RED, terms)
        nf = reduce_by_rewrite(p, rule)
        assert not any(m[0] and m[1] for m in nf.terms)
        # u := R/S must give the same rational function
        via_subs = substitute(p, "u", RatFunc(R, P("S")))
        assert substitute(nf, "u", RatFunc(R, P("S"))) == via_subs
