"""Monomial rewrite rules ``lhs -> rhs`` and normal forms modulo a few of them.

A single rule is reduction modulo one binomial-style relation.  A
:class:`RewriteSystem` chains several rules whose left-hand monomials are
pairwise coprime and whose right-hand sides are already reduced; for such a
set every polynomial has a unique normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Monomial, MultiPoly, VarTableMismatch, mono_div, mono_divides

__all__ = ["RewriteRule", "RewriteSystem", "reduce_by_rewrite", "monomial_of"]


def _lhs_degree(m: Monomial, lhs: Monomial) -> int:
    """Total degree of ``m`` restricted to the variables of ``lhs``."""
    return sum(e for e, l in zip(m, lhs) if l)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Monomial
    rhs: MultiPoly
    justification: str = ""
    anchor: str = ""

    def __post_init__(self):
        lhs = tuple(self.lhs)
        object.__setattr__(self, "lhs", lhs)
        if len(lhs) != len(self.rhs.table) or not any(lhs):
            raise ValueError("lhs must be a nonconstant monomial over the rhs table")
        for m in self.rhs.terms:
            if mono_divides(lhs, m):
                raise ValueError("rule is not self-reduced: rhs contains a multiple of lhs")
        top = sum(lhs)
        for m in self.rhs.terms:
            if _lhs_degree(m, lhs) >= top:
                # termination needs each step to drop the degree in the lhs variables
                raise ValueError("rhs degree in the lhs variables must be below the lhs degree")

    @classmethod
    def from_relation(cls, relation: MultiPoly, lhs: Monomial, **kw) -> RewriteRule:
        """Orient ``relation = 0`` as ``lhs -> ...``; lhs must occur exactly once."""
        lhs = tuple(lhs)
        c = relation.terms.get(lhs)
        if not c:
            raise ValueError("lhs monomial does not occur in the relation")
        rest = relation - MultiPoly.monomial(relation.table, lhs, c)
        return cls(lhs, rest.scale(-1 / c), **kw)

    @property
    def table(self):
        return self.rhs.table

    def as_relation(self) -> MultiPoly:
        return MultiPoly.monomial(self.rhs.table, self.lhs) - self.rhs

    def describe(self) -> str:
        lhs = MultiPoly.monomial(self.rhs.table, self.lhs)
        return f"{lhs} -> {self.rhs}"


def reduce_by_rewrite(p: MultiPoly, rule: RewriteRule) -> MultiPoly:
    """Normal form of ``p``: no remaining monomial divisible by ``rule.lhs``."""
    if p.table != rule.table:
        raise VarTableMismatch("polynomial and rule use different tables")
    lhs = rule.lhs
    rhs_pows = [MultiPoly.const(p.table, 1)]
    done: dict = {}
    pending = dict(p.terms)
    while pending:
        extra = MultiPoly.zero(p.table)
        for m, c in pending.items():
            if not mono_divides(lhs, m):
                v = done.get(m)
                v = c if v is None else v + c
                if v:
                    done[m] = v
                else:
                    done.pop(m, None)
                continue
            k = min(e // l for e, l in zip(m, lhs) if l)
            rest = mono_div(m, tuple(l * k for l in lhs))
            while len(rhs_pows) <= k:
                rhs_pows.append(rhs_pows[-1] * rule.rhs)
            extra = extra + rhs_pows[k].mul_monomial(rest, c)
        pending = dict(extra.terms)
    return MultiPoly(p.table, done)


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple = field(default_factory=tuple)

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        for i, r in enumerate(rules):
            for s in rules[i + 1 :]:
                if any(a and b for a, b in zip(r.lhs, s.lhs)):
                    raise ValueError(
                        f"leading monomials of {r.describe()} and {s.describe()} are not coprime"
                    )
            for s in rules:
                if s is not r and any(mono_divides(s.lhs, m) for m in r.rhs.terms):
                    raise ValueError(f"rhs of {r.describe()} is reducible by {s.describe()}")

    @classmethod
    def interreduced(cls, rules) -> RewriteSystem:
        """Build a system after reducing each rhs by the earlier rules, then the later ones."""
        rules = list(rules)
        changed = True
        while changed:
            changed = False
            for i, r in enumerate(rules):
                rhs = r.rhs
                for j, s in enumerate(rules):
                    if i != j:
                        rhs = reduce_by_rewrite(rhs, s)
                if rhs != r.rhs:
                    rules[i] = RewriteRule(r.lhs, rhs, r.justification, r.anchor)
                    changed = True
        return cls(tuple(rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def reduce(self, p: MultiPoly) -> MultiPoly:
        prev = None
        while prev != p:
            prev = p
            for r in self.rules:
                p = reduce_by_rewrite(p, r)
        return p

    def extended(self, *rules: RewriteRule) -> RewriteSystem:
        return RewriteSystem.interreduced(self.rules + tuple(rules))


def monomial_of(table, **powers) -> Monomial:
    m = list(table.zero_monomial())
    for name, e in powers.items():
        m[table.index(name)] = e
    return tuple(m)

