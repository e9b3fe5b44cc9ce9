"""Consequences of the frame equations once beta2 = beta3 = 0.

With both betas zero the hypersurface data closes on f, u = X1(f), K = k2*k3
and S = alpha2 + alpha3.  The checks below rebuild that closure from the
full rule table: first the relation between the two formulas for X1(u),
which is an algebraic constraint, then the derived X1 rules used by the
reduced context.
"""

from __future__ import annotations

from fractions import Fraction

from ..polyalg import MultiPoly, RatFunc, RewriteRule, monomial_of
from ..report import Certificate, StepReport
from .context import (
    REDUCED_X1,
    R_TILDE,
    Constraint,
    FrameContext,
    build_full_context,
    build_reduced_context,
    derive,
    verify_identity,
)

__all__ = [
    "beta_free_context",
    "linear_tuple",
    "verify_prelim_chain",
]


def beta_free_context(ctx: FrameContext | None = None) -> FrameContext:
    """Full context plus beta2 = beta3 = 0, X1(k2 + k3) = 9/2*u and Gauss2.

    The second constraint solves the derived sum relation for u; the third is
    the Gauss equation ``K + c = -alpha2*alpha3 - beta2^2 - beta3^2``.
    """
    ctx = ctx or build_full_context()
    t = ctx.table
    zero = MultiPoly.zero(t)
    cons = [
        Constraint("beta2", RewriteRule(monomial_of(t, beta2=1), zero, "beta2 = 0", "beta3=0_5")),
        Constraint("beta3", RewriteRule(monomial_of(t, beta3=1), zero, "beta3 = 0", "beta3=0_5")),
        Constraint(
            "sum_curv23'",
            RewriteRule(
                monomial_of(t, u=1),
                ctx.parse("2/9*(alpha2*(k2 + 3/2*f) + alpha3*(k3 + 3/2*f))"),
                "X1(k2 + k3) = 9/2*X1(f)",
                "sum_curv23",
            ),
        ),
        Constraint(
            "Gauss2",
            RewriteRule(
                monomial_of(t, alpha2=1, alpha3=1),
                ctx.parse("-K - c - beta2^2 - beta3^2"),
                "K + c = -alpha2*alpha3 - beta2^2 - beta3^2",
                "Gauss2",
            ),
        ),
    ]
    return ctx.with_constraints(*cons)


def linear_tuple(p: MultiPoly, names=("K", "c", "f")) -> tuple:
    """Coefficients (a, b, e) of ``p = a*K + b*c + e*f^2``; raises otherwise."""
    t = p.table
    k, c, f = names
    a = p.terms.get(monomial_of(t, **{k: 1}), Fraction(0))
    b = p.terms.get(monomial_of(t, **{c: 1}), Fraction(0))
    e = p.terms.get(monomial_of(t, **{f: 2}), Fraction(0))
    rebuilt = (
        MultiPoly.var(t, k).scale(a) + MultiPoly.var(t, c).scale(b) + MultiPoly.var(t, f) ** 2 * e
    )
    if rebuilt != p:
        raise ValueError(f"{p} is not of the form a*{k} + b*{c} + e*{f}^2")
    return (Fraction(a), Fraction(b), Fraction(e))


def _f_cofactor(p: MultiPoly) -> MultiPoly:
    return p.exact_div(MultiPoly.var(p.table, "f"))


def verify_prelim_chain() -> Certificate:
    full = build_full_context()
    bf = beta_free_context(full)
    steps = []

    # (a) |A|^2 with k1 = -3/2 f
    steps.append(
        verify_identity(
            full,
            full.parse("9/4*f^2 + k2^2 + k3^2"),
            full.parse("45/2*f^2 - 2*K"),
            name="norm_A2",
            claim="k1^2 + k2^2 + k3^2 = 45/2*f^2 - 2*K modulo k2 + k3 = 9/2*f",
            anchor="norm_A2",
        )
    )

    # (b) second X1-derivatives of k2 and k3
    x1 = lambda e: derive(bf, "X1", e)  # noqa: E731
    printed = {
        "k2": "21/2*alpha2*u + 2*(K + c)*(k3 + 3/2*f) + (c - 3/2*f*k2)*(k2 + 3/2*f)",
        "k3": "21/2*alpha3*u + 2*(K + c)*(k2 + 3/2*f) + (c - 3/2*f*k3)*(k3 + 3/2*f)",
    }
    second = {}
    for k, text in printed.items():
        second[k] = x1(x1(bf.gen(k)))
        steps.append(
            verify_identity(
                bf,
                second[k],
                bf.parse(text),
                name=f"Gauss1_reloaded[{k}]",
                claim=f"X1(X1({k})) = {text}",
                anchor="Gauss1_reloaded",
            )
        )

    # (c) half the sum gives X1(X1(f)); compare with the formula for X1(u)
    x1x1f = (second["k2"] + second["k3"]) * Fraction(2, 9)
    steps.append(
        verify_identity(
            bf,
            x1x1f,
            bf.parse("7/3*u*S + f*(4*K + 5*c - 9*f^2)"),
            name="f''_from_Gauss1",
            claim="2/9*(X1(X1(k2)) + X1(X1(k3))) = 7/3*u*S + f*(4*K + 5*c - 9*f^2)",
            anchor="f''_from_Gauss1",
        )
    )
    residual_claim = "7/3*u*S + f*(4*K + 5*c - 9*f^2) - X1(u) = 4/3*(u*S - f*R)"
    x1u = full.rules["X1"]["u"]
    steps.append(
        verify_identity(
            full,
            full.parse("7/3*u*S + f*(4*K + 5*c - 9*f^2)") - x1u.as_poly(),
            full.parse(f"4/3*(u*S - f*({R_TILDE}))"),
            name="X_1f_1[residual]",
            claim=residual_claim,
            anchor="X_1f_1",
        )
    )
    # read the tuple off in the reduced variables: (diff - 4/3 uS) / (-4/3 f)
    red = build_reduced_context()
    diff = red.parse("7/3*u*S + f*(4*K + 5*c - 9*f^2) - (u*S - (2*K + 3*c - 45/2*f^2)*f)")
    us = red.parse("u*S")
    r_part = _f_cofactor(diff - us.scale(Fraction(4, 3))).scale(Fraction(-3, 4))
    steps.append(
        StepReport.from_comparison(
            "X_1f_1",
            "u*S = f*(a*K + b*c + e*f^2) with (a, b, e) = (-9/2, -6, 189/8)",
            "X_1f_1",
            (Fraction(-9, 2), Fraction(-6), Fraction(189, 8)),
            linear_tuple(r_part),
        )
    )

    # (d) substituting back: X1(X1(f)) closes on f, K, c
    nf = red.reduce(red.parse("7/3*u*S + f*(4*K + 5*c - 9*f^2)"))
    steps.append(
        StepReport.from_comparison(
            "X_1X_1f_1",
            "X1(X1(f)) = f*(a*K + b*c + e*f^2) with (a, b, e) = (-13/2, -9, 369/8)",
            "X_1X_1f_1",
            (Fraction(-13, 2), Fraction(-9), Fraction(369, 8)),
            linear_tuple(_f_cofactor(nf)),
        )
    )
    steps.append(
        verify_identity(
            red,
            red.parse("u*S - (2*K + 3*c - 45/2*f^2)*f"),
            red.parse(REDUCED_X1["u"]),
            name="X_1X_1f_1[II]",
            claim="the X1(u) formula of the full table agrees with the reduced rule modulo u*S = f*R",
            anchor="X_1X_1f_1",
        )
    )

    # (e) X1(K) through alpha2*alpha3 = -(K + c)
    x1k = bf.parse(REDUCED_X1["K"])
    steps.append(
        verify_identity(
            bf, x1(bf.parse("K")), x1k,
            name="X_1K",
            claim="X1(K) = (K + 9*f^2)*S - 27/4*f*u",
            anchor="X_1K",
        )
    )
    steps.append(
        verify_identity(
            bf, -x1(bf.parse("alpha2*alpha3")), x1k,
            name="X_1K[Gauss2]",
            claim="-X1(alpha2*alpha3) = (K + 9*f^2)*S - 27/4*f*u",
            anchor="X_1K",
        )
    )
    steps.append(
        verify_identity(
            bf, x1(bf.parse("S")), bf.parse(REDUCED_X1["S"]),
            name="X_1S",
            claim="X1(alpha2 + alpha3) = S^2 + 2*K + 4*c - 27/4*f^2",
            anchor="Gauss1",
        )
    )

    # spot check on the umbilic-in-the-plane slice k2 = k3 = 9/4 f
    sub = {"k2": Fraction(9, 4), "k3": Fraction(9, 4), "f": 1}
    direct = full.parse("9/4*f^2 + k2^2 + k3^2").evaluate(sub)
    formula = full.parse("45/2*f^2 - 2*K").evaluate(sub)
    steps.append(
        StepReport.from_comparison(
            "norm_A2[k2=k3]",
            "k2 = k3 = 9/4*f gives |A|^2 = 99/8*f^2 both ways (f = 1)",
            "norm_A2",
            (Fraction(99, 8), Fraction(99, 8)),
            (direct, formula),
        )
    )
    return Certificate(
        "prelim",
        steps,
        "with beta2 = beta3 = 0 the data closes on f, u, K, S, c with the reduced X1 rules",
    )
