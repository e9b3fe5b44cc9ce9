"""Isoparametric hypersurfaces with three distinct principal curvatures.

With k1 = cot(theta) the other two curvatures are cot(theta + pi/3) and
cot(theta + 2*pi/3); the cotangent addition formula writes them as rational
functions of k1 over Q(sqrt 3).  Biharmonicity forces |A|^2 = m = 3*2^q,
and |A|^2 = 2^q * (k1^2 + k2^2 + k3^2) for multiplicities 2^q.
"""

from __future__ import annotations

from ..exactnum import QuadExt
from ..polyalg import MultiPoly, RatFunc, VarTable, parse_polynomial, sturm_count
from ..report import Certificate, StepReport

__all__ = [
    "ISO_TABLE",
    "SEXTIC",
    "curvature_triple",
    "sum_of_squares",
    "verify_isoparametric_identity",
    "thm31_certificate",
]

ISO_TABLE = VarTable(("k",))
SEXTIC = "3*k^6 - 9*k^4 + 21*k^2 + 1"
SQRT3 = QuadExt(0, 1, 3)


def curvature_triple(table: VarTable = ISO_TABLE, var: str = "k"):
    k = MultiPoly.var(table, var)
    one = MultiPoly.const(table, 1)
    s = MultiPoly.const(table, SQRT3)
    k2 = RatFunc(k - s, one + s * k)
    k3 = RatFunc(k + s, one - s * k)
    return RatFunc(k), k2, k3


def sum_of_squares() -> RatFunc:
    k1, k2, k3 = curvature_triple()
    return k1 * k1 + k2 * k2 + k3 * k3


def verify_isoparametric_identity() -> StepReport:
    """(k1^2 + k2^2 + k3^2)*(1 - 3*k1^2)^2 = 9*k1^6 + 45*k1^2 + 6 over Q(sqrt 3)."""
    lhs = sum_of_squares() * RatFunc(parse_polynomial("(1 - 3*k^2)^2", ISO_TABLE))
    rhs = parse_polynomial("9*k^6 + 45*k^2 + 6", ISO_TABLE)
    residual = lhs.num - lhs.den * rhs
    return StepReport.from_residual(
        "eq-akalpha",
        "(k1^2 + k2^2 + k3^2)*(1 - 3*k1^2)^2 = 9*k1^6 + 45*k1^2 + 6",
        "eq-akalpha",
        residual,
        lhs=lhs,
    )


def _rationalize(p: MultiPoly) -> MultiPoly | None:
    terms = {}
    for m, c in p.terms.items():
        if isinstance(c, QuadExt):
            if not c.is_rational:
                return None
            c = c.to_rational()
        terms[m] = c
    return MultiPoly(p.table, terms)


def thm31_certificate() -> Certificate:
    steps = []
    ident = verify_isoparametric_identity()
    steps.append(ident)

    k1, k2, k3 = curvature_triple()
    at1 = [r.evaluate({"k": 1}) for r in (k1, k2, k3)]
    steps.append(
        StepReport.from_comparison(
            "eq-akalpha[k1=1]",
            "k1 = 1 gives k2 = sqrt3 - 2, k3 = -(2 + sqrt3), sum of squares 15",
            "eq-akalpha",
            (QuadExt(-2, 1, 3), QuadExt(-2, -1, 3), 15),
            (at1[1], at1[2], sum(x * x for x in at1)),
        )
    )

    # 2^q * S2 = 3 * 2^q with Q standing for 2^q
    s2 = sum_of_squares()
    num, den = _rationalize(s2.num), _rationalize(s2.den)
    steps.append(
        StepReport.from_bool(
            "eq-akalpha[rational]", "sqrt3 parts of the sum of squares cancel", "eq-akalpha",
            num is not None and den is not None, detail=str(s2),
        )
    )
    if num is None or den is None:
        return Certificate("thm31", steps, "sum of squares is not rational; no conclusion")
    qt = VarTable(("Q", "k"))
    Q = MultiPoly.var(qt, "Q")
    rel = Q * num.to_table(qt) - Q * 3 * den.to_table(qt)
    free = rel.exact_div(Q)
    steps.append(
        StepReport.from_bool(
            "q-independence", "2^q cancels from 2^q*|A|^2-relation", "|A|^2=m=3*2^q",
            rel.degree("Q") == 1 and "Q" not in free.variables(), detail=str(rel),
        )
    )
    sextic = free.to_table(ISO_TABLE).primitive()
    if sextic.leading_coeff() < 0:
        sextic = -sextic
    printed = parse_polynomial(SEXTIC, ISO_TABLE)
    steps.append(
        StepReport.from_residual("sextic", f"the relation is {SEXTIC} = 0", "3k_1^6-9k_1^4+21k_1^2+1=0",
                                 sextic - printed)
    )
    for q in range(4):
        m = 3 * 2**q
        val = (num.scale(2**q) - den.scale(m)).to_table(ISO_TABLE).primitive()
        if val.leading_coeff() < 0:
            val = -val
        steps.append(
            StepReport.from_residual(
                f"sextic[q={q}]", f"m = {m}: 2^q*|A|^2 = m gives the same sextic", "|A|^2=m=3*2^q",
                val - printed,
            )
        )
    n_real = sturm_count(sextic, "k")
    steps.append(
        StepReport.from_comparison("sturm", "the sextic has no real roots", "an equation with no real roots",
                                   (0,), (n_real,))
    )
    cubic = parse_polynomial("3*k^3 - 9*k^2 + 21*k + 1", ISO_TABLE)
    half = sturm_count(cubic, "k", 0)
    steps.append(
        StepReport.from_comparison("sturm[k^2]", "3*u^3 - 9*u^2 + 21*u + 1 has no roots in (0, inf)",
                                   "an equation with no real roots", (0,), (half,))
    )
    return Certificate(
        "thm31",
        steps,
        "no proper biharmonic isoparametric hypersurface with three distinct principal curvatures in the unit sphere",
    )
