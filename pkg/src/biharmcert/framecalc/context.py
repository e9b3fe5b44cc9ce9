"""Frame contexts: generators, derivation rules per frame direction, constraints.

A context is a small differential algebra.  Each direction (``X1``, ``X2``)
maps every non-constant generator to a rational function; ``derive`` extends
that map to all polynomials and rational functions by linearity, the Leibniz
rule and the quotient rule.  Constraints are kept as oriented rewrite rules
so that reduction modulo them is a normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from types import MappingProxyType

from ..polyalg import (
    MultiPoly,
    RatFunc,
    RewriteRule,
    RewriteSystem,
    VarTable,
    monomial_of,
    parse_polynomial,
    substitute,
)
from ..report import Certificate, StepReport

__all__ = [
    "MissingRule",
    "Constraint",
    "Assumption",
    "FrameContext",
    "build_full_context",
    "build_reduced_context",
    "derive",
    "verify_identity",
    "constraint_defects",
    "bracket_defect",
    "constraint_preservation",
    "x3_rules",
    "transfer_rat",
    "substitute_all",
    "FULL_VARS",
    "REDUCED_VARS",
]

FULL_VARS = ("u", "alpha2", "alpha3", "beta2", "beta3", "k2", "k3", "f", "c")
REDUCED_VARS = ("u", "S", "K", "f", "c")


class MissingRule(KeyError):
    """A derivation reached a generator its direction has no rule for."""


@dataclass(frozen=True)
class Constraint:
    name: str
    rule: RewriteRule

    @property
    def relation(self) -> MultiPoly:
        return self.rule.as_relation()

    @property
    def anchor(self) -> str:
        return self.rule.anchor


@dataclass(frozen=True)
class Assumption:
    poly: MultiPoly
    kind: str  # "nonzero" or "positive"
    anchor: str = ""

    def describe(self) -> str:
        return f"{self.poly} {'> 0' if self.kind == 'positive' else '!= 0'}"


def _freeze(rules):
    return MappingProxyType({d: MappingProxyType(dict(t)) for d, t in rules.items()})


@dataclass(frozen=True)
class FrameContext:
    name: str
    table: VarTable
    rules: MappingProxyType
    constants: frozenset
    constraints: tuple = ()
    assumptions: tuple = ()
    abbreviations: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "rules", _freeze(self.rules))
        object.__setattr__(self, "abbreviations", MappingProxyType(dict(self.abbreviations)))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        for table in self.rules.values():
            for gen, r in table.items():
                if gen not in self.table or r.table != self.table:
                    raise ValueError(f"rule for {gen} is not over the context table")
        object.__setattr__(
            self, "system", RewriteSystem.interreduced(c.rule for c in self.constraints)
        )

    # -- construction helpers -------------------------------------------
    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.var(self.table, name)

    def parse(self, text: str) -> MultiPoly:
        """Parse ``text``; abbreviation names expand to their definitions."""
        if not self.abbreviations:
            return parse_polynomial(text, self.table)
        names = self.table.names + tuple(self.abbreviations)
        wide = VarTable(names)
        p = parse_polynomial(text, wide)
        out = MultiPoly.zero(self.table)
        n = len(self.table.names)
        abbrevs = list(self.abbreviations.values())
        for mono, c in p.terms.items():
            term = MultiPoly.monomial(self.table, mono[:n], c)
            for e, val in zip(mono[n:], abbrevs):
                if e:
                    term = term * val**e
            out = out + term
        return out

    def ratfunc(self, num: str, den: str = "1") -> RatFunc:
        return RatFunc(self.parse(num), self.parse(den))

    def with_constraints(self, *constraints: Constraint) -> FrameContext:
        return replace(self, constraints=self.constraints + tuple(constraints))

    def with_rules(self, direction: str, table: dict) -> FrameContext:
        rules = dict(self.rules)
        rules[direction] = table
        return replace(self, rules=rules)

    def constraint(self, name: str) -> Constraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)

    # -- reduction ------------------------------------------------------
    def reduce(self, p: MultiPoly) -> MultiPoly:
        return self.system.reduce(p)

    def reduce_rat(self, r: RatFunc) -> MultiPoly:
        """Normal form of the numerator; the denominator is a nonvanishing factor."""
        return self.reduce(RatFunc.lift(r).num)


def derive(ctx: FrameContext, direction: str, expr) -> RatFunc:
    """Apply the derivation ``direction`` to a polynomial or rational function."""
    if direction not in ctx.rules:
        raise MissingRule(f"context has no direction {direction!r}")
    if isinstance(expr, RatFunc):
        if expr.den.is_constant():
            return derive(ctx, direction, expr.num) / expr.den.constant_value()
        dn = derive(ctx, direction, expr.num)
        dd = derive(ctx, direction, expr.den)
        return (dn * RatFunc(expr.den) - dd * RatFunc(expr.num)) / RatFunc(expr.den * expr.den)
    if not isinstance(expr, MultiPoly):
        return RatFunc(MultiPoly.zero(ctx.table))
    rules = ctx.rules[direction]
    poly_part = MultiPoly.zero(ctx.table)
    by_den: dict = {}
    for name in expr.variables():
        if name in ctx.constants:
            continue
        if name not in rules:
            raise MissingRule(f"direction {direction} has no rule for {name}")
        partial = expr.diff(name)
        r = rules[name]
        if r.den.is_constant():
            poly_part = poly_part + partial * r.num.scale(1 / r.den.constant_value())
        else:
            by_den[r.den] = by_den.get(r.den, MultiPoly.zero(ctx.table)) + partial * r.num
    out = RatFunc(poly_part)
    for den, num in by_den.items():
        out = out + RatFunc(num, den)
    return out


def verify_identity(ctx: FrameContext, lhs, rhs, name="identity", claim="", anchor="") -> StepReport:
    """Reduce ``rhs - lhs`` (cross-multiplied) modulo the context constraints.

    When both sides are polynomials the witness is the plain difference, so a
    perturbation of the right side by ``e`` shows up as exactly ``e``.
    """
    lhs = RatFunc.lift(lhs, ctx.table)
    rhs = RatFunc.lift(rhs, ctx.table)
    if lhs.den.is_constant() and rhs.den.is_constant():
        diff = rhs.num.scale(1 / rhs.den.constant_value()) - lhs.num.scale(1 / lhs.den.constant_value())
    else:
        diff = rhs.num * lhs.den - lhs.num * rhs.den
    residual = ctx.reduce(diff)
    return StepReport.from_residual(name, claim or f"{lhs} = {rhs}", anchor, residual)


def constraint_defects(ctx: FrameContext) -> dict:
    """``(constraint, direction) -> normal form of the derived constraint``.

    A context is closed under derivation exactly when every value is zero.
    """
    out = {}
    for con in ctx.constraints:
        for direction in ctx.rules:
            d = derive(ctx, direction, con.relation)
            out[(con.name, direction)] = ctx.reduce(d.num)
    return out


def bracket_defect(ctx: FrameContext, expr, coeff: str = "alpha2", transversal: str = "X2") -> RatFunc:
    """``X1(T e) - T(X1 e) - coeff*T(e)`` for ``T`` the transversal direction.

    The frame relation ``[X1, X_i] = alpha_i X_i`` says this vanishes on
    every function of the hypersurface.
    """
    e = RatFunc.lift(expr, ctx.table)
    t = derive(ctx, transversal, e)
    d = derive(ctx, "X1", t) - derive(ctx, transversal, derive(ctx, "X1", e))
    return d - RatFunc(ctx.gen(coeff)) * t


# -- the two concrete contexts ---------------------------------------------

def _rules_from_text(ctx_parse, texts: dict) -> dict:
    out = {}
    for gen, value in texts.items():
        if isinstance(value, tuple):
            out[gen] = RatFunc(ctx_parse(value[0]), ctx_parse(value[1]))
        else:
            out[gen] = RatFunc(ctx_parse(value))
    return out


# Shared pieces in text form; K and S abbreviate k2*k3 and alpha2+alpha3.
FULL_X1 = {
    "f": "u",
    "u": "u*S - (2*K + 3*c - 45/2*f^2)*f",
    "k2": "(k2 + 3/2*f)*alpha2",
    "k3": "(k3 + 3/2*f)*alpha3",
    "alpha2": "alpha2^2 + c - 3/2*f*k2",
    "alpha3": "alpha3^2 + c - 3/2*f*k3",
    "beta2": "alpha2*beta2",
    "beta3": "alpha3*beta3",
}

FULL_X2 = {
    "f": "0",
    "u": "0",
    "k2": "-(k3 - k2)*beta3",
    "k3": "(k3 - k2)*beta3",
    "alpha3": "beta3*(alpha3 - alpha2)",
    "alpha2": ("-beta3*(alpha3 - alpha2)*u - 2*f*(k3 - k2)^2*beta3", "u"),
}

# The third frame direction, needed only for the beta2 half of the argument.
FULL_X3 = {
    "f": "0",
    "u": "0",
    "k2": "(k3 - k2)*beta2",
    "k3": "-(k3 - k2)*beta2",
    "alpha2": "beta2*(alpha3 - alpha2)",
    "alpha3": ("-beta2*(alpha3 - alpha2)*u + 2*f*(k3 - k2)^2*beta2", "u"),
}

REDUCED_X1 = {
    "f": "u",
    "u": "f*(-13/2*K - 9*c + 369/8*f^2)",
    "K": "(K + 9*f^2)*S - 27/4*f*u",
    "S": "S^2 + 2*K + 4*c - 27/4*f^2",
}

# f*R with R the bracket below is what u*S equals on the hypersurface
R_TILDE = "-9/2*K - 6*c + 189/8*f^2"
C_FACTOR = "13/2*K + 10*c - 108*f^2"
D_FACTOR = "13/2*K + 15*c - 441/4*f^2"


def build_full_context() -> FrameContext:
    table = VarTable(FULL_VARS)
    abbrev = {
        "K": MultiPoly.var(table, "k2") * MultiPoly.var(table, "k3"),
        "S": MultiPoly.var(table, "alpha2") + MultiPoly.var(table, "alpha3"),
    }
    bare = FrameContext("full", table, {}, frozenset({"c"}), abbreviations=abbrev)
    rules = {
        "X1": _rules_from_text(bare.parse, FULL_X1),
        "X2": _rules_from_text(bare.parse, FULL_X2),
    }
    sum_rule = RewriteRule(
        monomial_of(table, k3=1),
        bare.parse("9/2*f - k2"),
        justification="k2 + k3 = 9/2*f",
        anchor="sum_curv23",
    )
    f, u, k2, k3 = (bare.gen(n) for n in ("f", "u", "k2", "k3"))
    assumptions = (
        Assumption(f, "positive", "cond_f_3"),
        Assumption(u, "nonzero", "cond_f_3"),
        Assumption(k3 - k2, "nonzero", "distinct principal curvatures"),
        Assumption(k2 + f * Fraction(3, 2), "nonzero", "distinct principal curvatures"),
        Assumption(k3 + f * Fraction(3, 2), "nonzero", "distinct principal curvatures"),
    )
    return FrameContext(
        "full",
        table,
        rules,
        frozenset({"c"}),
        (Constraint("sum_curv23", sum_rule),),
        assumptions,
        abbrev,
    )


def x3_rules(ctx: FrameContext) -> dict:
    """Rule table of the third direction over the full context's table."""
    return _rules_from_text(ctx.parse, FULL_X3)


def build_reduced_context(order=REDUCED_VARS) -> FrameContext:
    """Context on {u, S, K, f, c}; ``order`` fixes the variable precedence."""
    if sorted(order) != sorted(REDUCED_VARS):
        raise ValueError(f"order must be a permutation of {REDUCED_VARS}")
    table = VarTable(tuple(order))
    bare = FrameContext("reduced", table, {}, frozenset({"c"}))
    rules = {"X1": _rules_from_text(bare.parse, REDUCED_X1)}
    us_rule = RewriteRule(
        monomial_of(table, u=1, S=1),
        bare.parse(f"f*({R_TILDE})"),
        justification="u*S = f*(-9/2*K - 6*c + 189/8*f^2)",
        anchor="X_1f_1",
    )
    assumptions = (
        Assumption(bare.gen("u"), "nonzero", "cond_f_3"),
        Assumption(bare.gen("f"), "positive", "cond_f_3"),
    )
    return FrameContext(
        "reduced", table, rules, frozenset({"c"}), (Constraint("X_1f_1", us_rule),), assumptions
    )


def transfer_rat(r: RatFunc, table: VarTable) -> RatFunc:
    """Re-express a rational function over another table."""
    return RatFunc(r.num.to_table(table), r.den.to_table(table))


def substitute_all(expr, values: dict) -> RatFunc:
    """Substitute several variables (each by a RatFunc/MultiPoly) in turn."""
    out = RatFunc.lift(expr)
    for var, val in values.items():
        out = substitute(out, var, val)
    return out


def constraint_preservation(ctx: FrameContext) -> Certificate:
    """One step per (constraint, direction): the derived constraint must reduce to 0."""
    steps = [
        StepReport.from_residual(
            f"preserve[{name}:{direction}]",
            f"{direction} of the constraint {name} reduces to 0 modulo the constraints",
            ctx.constraint(name).anchor,
            nf,
        )
        for (name, direction), nf in constraint_defects(ctx).items()
    ]
    return Certificate(f"preservation[{ctx.name}]", steps, f"constraints of the {ctx.name} context are closed")
