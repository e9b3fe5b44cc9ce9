"""Exact checks on concrete constant-mean-curvature hypersurfaces.

For a CMC hypersurface of a space form of curvature c the biharmonic
equation reduces to its normal part, ``(m*c - |A|^2)*|H| = 0``.  All the
instances here (round spheres, generalized Clifford tori, explicit lists of
principal curvatures) are CMC, so biharmonicity is decided by the rational
number ``|A|^2 - m*c`` together with whether ``|H|`` vanishes.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import format_rational, parse_rational, quad, rational_sqrt
from .report import Certificate, StepReport

__all__ = [
    "InvalidInstance",
    "UsageError",
    "Sphere",
    "CliffordTorus",
    "CurvatureList",
    "CurvatureData",
    "Classification",
    "PROPER",
    "MINIMAL",
    "NOT_BIHARMONIC",
    "curvature_data",
    "biharmonic_defect",
    "scalar_curvature_check",
    "classify_compact_S4",
    "space_form_obstruction",
    "instance_from_config",
    "negate",
]

PROPER = "proper-biharmonic"
MINIMAL = "minimal"
NOT_BIHARMONIC = "non-biharmonic"


class InvalidInstance(ValueError):
    pass


class UsageError(ValueError):
    """A request outside the domain of a check (wrong dimension, wrong sign of c)."""


@dataclass(frozen=True)
class Sphere:
    m: int
    a_sq: Fraction
    c: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a_sq", Fraction(self.a_sq))
        if self.m < 1:
            raise InvalidInstance("dimension must be positive")
        if self.a_sq <= 0:
            raise InvalidInstance("radius squared must be positive")
        if self.c == 1 and self.a_sq > 1:
            raise InvalidInstance("a small sphere of the unit sphere has radius at most 1")


@dataclass(frozen=True)
class CliffordTorus:
    m1: int
    m2: int
    r1_sq: Fraction
    c: int = 1

    def __post_init__(self):
        object.__setattr__(self, "r1_sq", Fraction(self.r1_sq))
        if self.m1 < 1 or self.m2 < 1:
            raise InvalidInstance("factor dimensions must be positive")
        if not 0 < self.r1_sq < 1:
            raise InvalidInstance("need 0 < r1^2 < 1")
        if self.c != 1:
            raise InvalidInstance("Clifford tori live in the unit sphere (c = 1)")

    @property
    def m(self) -> int:
        return self.m1 + self.m2

    @property
    def r2_sq(self) -> Fraction:
        return 1 - self.r1_sq


@dataclass(frozen=True)
class CurvatureList:
    curvatures: tuple  # ((value, multiplicity), ...)
    c: int = 1

    def __post_init__(self):
        curv = tuple((v, int(k)) for v, k in self.curvatures)
        if not curv or any(k < 1 for _, k in curv):
            raise InvalidInstance("multiplicities must be positive")
        object.__setattr__(self, "curvatures", curv)

    @property
    def m(self) -> int:
        return sum(k for _, k in self.curvatures)


@dataclass(frozen=True)
class CurvatureData:
    m: int
    c: int
    H_sq: Fraction
    A_sq: Fraction
    curvatures: tuple
    is_CMC: bool = True

    @property
    def H(self):
        """|H| as an element of Q or of a quadratic field."""
        r = rational_sqrt(self.H_sq)
        return r if r is not None else quad(0, 1, self.H_sq)


def _rational(x, what: str) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if x.is_rational:
        return x.to_rational()
    raise ValueError(f"{what} = {x} is not rational")


def curvature_data(h) -> CurvatureData:
    if isinstance(h, Sphere):
        k_sq = 1 / h.a_sq - h.c
        if k_sq < 0:
            raise InvalidInstance("no such sphere: 1/a^2 - c < 0")
        k = quad(0, 1, k_sq)
        return _from_list(CurvatureList(((k, h.m),), h.c))
    if isinstance(h, CliffordTorus):
        t = h.r2_sq / h.r1_sq
        ratio = quad(0, 1, t)  # r2/r1
        inv = quad(0, 1 / t, t)  # r1/r2 in the same field
        return _from_list(CurvatureList(((ratio, h.m1), (-inv, h.m2)), h.c))
    if isinstance(h, CurvatureList):
        return _from_list(h)
    raise TypeError(f"not a hypersurface instance: {h!r}")


def _from_list(h: CurvatureList) -> CurvatureData:
    trace = sum((k * v for v, k in h.curvatures), Fraction(0))
    a_sq = sum((k * v * v for v, k in h.curvatures), Fraction(0))
    mean = trace / h.m
    return CurvatureData(
        m=h.m,
        c=h.c,
        H_sq=_rational(mean * mean, "|H|^2"),
        A_sq=_rational(a_sq, "|A|^2"),
        curvatures=h.curvatures,
    )


def biharmonic_defect(d: CurvatureData):
    """``(|A|^2 - m*c, status)`` for a CMC hypersurface."""
    if not d.is_CMC:
        raise UsageError("the defect formula needs constant mean curvature")
    defect = d.A_sq - d.m * d.c
    if d.H_sq == 0:
        status = MINIMAL
    elif defect == 0:
        status = PROPER
    else:
        status = NOT_BIHARMONIC
    return defect, status


def scalar_curvature(d: CurvatureData) -> Fraction:
    return d.m * (d.m - 1) * d.c + d.m**2 * d.H_sq - d.A_sq


def scalar_curvature_check(d: CurvatureData) -> StepReport:
    s = scalar_curvature(d)
    _, status = biharmonic_defect(d)
    if status == PROPER and d.c == 1:
        predicted = d.m**2 * (1 + d.H_sq) - 2 * d.m
        return StepReport.from_comparison(
            "scalar_curvature",
            f"s = m(m-1)c + m^2|H|^2 - |A|^2 = m^2(1 + |H|^2) - 2m = {format_rational(predicted)}",
            "s=m^2(1+k)-2m",
            (predicted,),
            (s,),
            s=s,
        )
    return StepReport(
        "scalar_curvature",
        f"s = m(m-1)c + m^2|H|^2 - |A|^2 = {format_rational(s)}; closed form skipped (not proper biharmonic in the unit sphere)",
        "s=m^2(1+k)-2m",
        "0",
        ("skipped",),
        {"s": s},
    )


@dataclass(frozen=True)
class Classification:
    kind: str  # Hypersphere | CliffordTorus | Minimal | NotProperBiharmonic
    label: str
    rationale: str
    defect: Fraction
    H_sq: Fraction

    def __str__(self):
        return self.label


def _torus_rationale(h: CliffordTorus) -> str:
    if h.r1_sq == Fraction(1, 2):
        if h.m1 != h.m2:
            return "r1 = r2 = 1/sqrt(2) and m1 != m2"
        return "r1 = r2 = 1/sqrt(2) but m1 = m2, so the torus is minimal"
    if h.m1 * h.r2_sq == h.m2 * h.r1_sq:
        return (
            f"m1*r2^2 = m2*r1^2 ({format_rational(h.m1 * h.r2_sq)} = "
            f"{format_rational(h.m2 * h.r1_sq)}), so the torus is minimal"
        )
    return "r1 != 1/sqrt(2): |A|^2 != m"


def classify_compact_S4(h) -> Classification:
    """Compact CMC hypersurfaces of the unit 4-sphere, sorted by biharmonicity."""
    if h.m != 3 or h.c != 1:
        raise UsageError("classification is for hypersurfaces of the unit 4-sphere (m = 3, c = 1)")
    d = curvature_data(h)
    defect, status = biharmonic_defect(d)
    rationale = _torus_rationale(h) if isinstance(h, CliffordTorus) else ""
    if status == MINIMAL:
        return Classification("Minimal", "Minimal", rationale or "|H| = 0", defect, d.H_sq)
    if status == NOT_BIHARMONIC:
        return Classification(
            "NotProperBiharmonic", "NotProperBiharmonic",
            rationale or f"|A|^2 - m = {format_rational(defect)} != 0", defect, d.H_sq,
        )
    if len({v for v, _ in d.curvatures}) == 1:
        return Classification("Hypersphere", "Hypersphere(1/sqrt(2))", "umbilical with |A|^2 = 3", defect, d.H_sq)
    mults = sorted(k for _, k in d.curvatures)
    return Classification(
        "CliffordTorus", f"CliffordTorus({mults[0]},{mults[1]})",
        rationale or "two distinct principal curvatures with |A|^2 = 3", defect, d.H_sq,
    )


def space_form_obstruction(c) -> Certificate:
    """A CMC proper biharmonic hypersurface of E^4(c) needs |A|^2 = 3c."""
    c = Fraction(c)
    if c > 0:
        raise UsageError(
            "no obstruction for c > 0: Sphere{m=3, a_sq=1/2, c=1} is proper biharmonic in the unit sphere"
        )
    m = 3
    required = m * c
    steps = [
        StepReport.from_comparison(
            "defect", f"(m*c - |A|^2)*|H| = 0 with |H| != 0 forces |A|^2 = m*c = {format_rational(required)}",
            "caract_bih_hipersurf_spheres", (required,), (m * c,),
        )
    ]
    if c == 0:
        # |A|^2 >= m|H|^2 >= 0, so |A|^2 = 0 gives |H| = 0
        steps.append(
            StepReport.from_bool(
                "minimal_forced", "|A|^2 = 0 and |A|^2 >= m*|H|^2 give |H| = 0: minimal, not proper",
                "|A|^2=0", required == 0,
            )
        )
        conclusion = "c = 0: |A|^2 = 0 forces the hypersurface to be minimal; no proper biharmonic CMC hypersurface"
    else:
        steps.append(
            StepReport.from_bool(
                "impossible", f"|A|^2 = {format_rational(required)} < 0 is impossible for a sum of squares",
                "|A|^2=-3", required < 0,
            )
        )
        conclusion = f"c = {format_rational(c)}: impossible, |A|^2 = {format_rational(required)}"
    return Certificate(f"obstruction[c={format_rational(c)}]", steps, conclusion)


def negate(h: CurvatureList) -> CurvatureList:
    """The same hypersurface with the opposite unit normal."""
    return CurvatureList(tuple((-v, k) for v, k in h.curvatures), h.c)


def instance_from_config(text: str):
    """Parse ``key = value`` lines (variant, m, m1, m2, a_sq, r1_sq, c)."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[instance]\n" + text)
    except configparser.Error as exc:
        raise InvalidInstance(f"malformed config: {exc}") from exc
    sec = cp["instance"]
    variant = sec.get("variant", "").strip().lower()
    try:
        c = int(sec.get("c", "1"))
        if variant == "sphere":
            return Sphere(int(sec["m"]), parse_rational(sec["a_sq"]), c)
        if variant in ("torus", "cliffordtorus", "clifford_torus"):
            return CliffordTorus(int(sec["m1"]), int(sec["m2"]), parse_rational(sec["r1_sq"]), c)
    except KeyError as exc:
        raise InvalidInstance(f"missing key {exc.args[0]!r} for variant {variant!r}") from exc
    raise InvalidInstance(f"unknown variant {variant!r}")
