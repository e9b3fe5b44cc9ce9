from fractions import Fraction
from itertools import product

import pytest

from biharmcert.exactnum import QuadExt
from biharmcert.geomcheck import (
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER,
    CliffordTorus,
    CurvatureList,
    InvalidInstance,
    Sphere,
    UsageError,
    biharmonic_defect,
    classify_compact_S4,
    curvature_data,
    instance_from_config,
    negate,
    scalar_curvature_check,
    space_form_obstruction,
)

HALF = Fraction(1, 2)
GRID = [Fraction(p, q) for q in range(2, 9) for p in range(1, q)]


def as_list(h):
    return CurvatureList(curvature_data(h).curvatures, h.c)


def test_hypersphere():
    d = curvature_data(Sphere(3, HALF))
    assert d.A_sq == 3 and d.H == 1
    assert {v for v, _ in d.curvatures} == {1}
    assert biharmonic_defect(d) == (0, PROPER)
    assert classify_compact_S4(Sphere(3, HALF)).label == "Hypersphere(1/sqrt(2))"


def test_clifford_torus_12():
    h = CliffordTorus(1, 2, HALF)
    d = curvature_data(h)
    assert d.A_sq == 3 and d.H_sq == Fraction(1, 9) and d.H == Fraction(1, 3)
    assert biharmonic_defect(d) == (0, PROPER)
    c = classify_compact_S4(h)
    assert c.kind == "CliffordTorus" and c.label == "CliffordTorus(1,2)"
    assert "m1 != m2" in c.rationale


def test_great_sphere_is_minimal():
    d = curvature_data(Sphere(3, 1))
    assert d.H_sq == 0 and d.A_sq == 0
    assert biharmonic_defect(d)[1] == MINIMAL
    rep = scalar_curvature_check(d)
    assert rep.data["s"] == 6 and "skipped" in rep.claim


def test_non_biharmonic_sphere():
    d = curvature_data(Sphere(3, Fraction(1, 3)))
    assert d.A_sq == 6
    assert biharmonic_defect(d) == (3, NOT_BIHARMONIC)
    assert classify_compact_S4(Sphere(3, Fraction(1, 3))).kind == "NotProperBiharmonic"


def test_torus_11_is_minimal():
    d = curvature_data(CliffordTorus(1, 1, HALF))
    assert biharmonic_defect(d) == (0, MINIMAL)


def test_torus_minimal_off_half():
    c = classify_compact_S4(CliffordTorus(1, 2, Fraction(1, 3)))
    assert c.kind == "Minimal" and "2/3 = 2/3" in c.rationale


@pytest.mark.parametrize("h, s", [(Sphere(3, HALF), 12), (CliffordTorus(1, 2, HALF), 4)])
def test_scalar_curvature(h, s):
    rep = scalar_curvature_check(curvature_data(h))
    assert rep.status == "verified"
    assert rep.data["s"] == s and rep.data["expected"] == (s,)


def test_classification_needs_s4():
    with pytest.raises(UsageError):
        classify_compact_S4(Sphere(4, HALF))


def test_obstructions():
    flat = space_form_obstruction(0)
    assert flat.verified and flat.step("minimal_forced")
    hyp = space_form_obstruction(-1)
    assert hyp.verified and "-3" in hyp.conclusion
    with pytest.raises(UsageError) as err:
        space_form_obstruction(1)
    assert "Sphere{m=3, a_sq=1/2, c=1}" in str(err.value)


@pytest.mark.parametrize("bad", [lambda: Sphere(3, 0), lambda: Sphere(3, 2), lambda: CliffordTorus(1, 2, 1), lambda: CliffordTorus(0, 2, HALF)])
def test_invalid_instances(bad):
    with pytest.raises(InvalidInstance):
        bad()


def test_irrational_curvatures_rational_invariants():
    h = CliffordTorus(1, 2, Fraction(1, 3))
    d = curvature_data(h)
    assert any(isinstance(v, QuadExt) for v, _ in d.curvatures)
    assert isinstance(d.A_sq, Fraction) and isinstance(d.H_sq, Fraction)


def test_config_parsing():
    h = instance_from_config("variant = torus\nm1 = 1\nm2 = 2\nr1_sq = 1/2  # comment\n")
    assert h == CliffordTorus(1, 2, HALF)
    assert instance_from_config("variant = sphere\nm = 3\na_sq = 1/2\nc = 1") == Sphere(3, HALF)
    with pytest.raises(InvalidInstance):
        instance_from_config("variant = sphere\nm = 3")
    with pytest.raises(InvalidInstance):
        instance_from_config("variant = cone")


# -- invariants over a grid ---------------------------------------------------------------


def tori(max_m=6):
    for m1, m2 in product(range(1, max_m), repeat=2):
        if m1 + m2 <= max_m:
            for r in GRID:
                yield CliffordTorus(m1, m2, r)


def test_normal_flip_invariance():
    for h in list(tori()) + [Sphere(m, a) for m in (2, 3, 5) for a in GRID]:
        lst = as_list(h)
        d, e = curvature_data(lst), curvature_data(negate(lst))
        assert (d.H_sq, d.A_sq) == (e.H_sq, e.A_sq)
        assert biharmonic_defect(d) == biharmonic_defect(e)
        if h.m == 3:
            assert classify_compact_S4(lst).kind == classify_compact_S4(negate(lst)).kind


def test_torus_symmetry():
    for h in tori():
        g = CliffordTorus(h.m2, h.m1, 1 - h.r1_sq)
        d, e = curvature_data(h), curvature_data(g)
        assert (d.H_sq, d.A_sq) == (e.H_sq, e.A_sq)
        if h.m == 3:
            assert classify_compact_S4(h).kind == classify_compact_S4(g).kind


def test_torus_defect_zero_cases():
    for h in tori():
        defect, status = biharmonic_defect(curvature_data(h))
        if defect == 0:
            if h.r1_sq == HALF:
                assert status == (PROPER if h.m1 != h.m2 else MINIMAL)
            else:
                assert h.m1 * h.r2_sq == h.m2 * h.r1_sq and status == MINIMAL


def test_sphere_defect_unique_zero():
    for m in range(1, 7):
        values = [(a, biharmonic_defect(curvature_data(Sphere(m, a)))[0]) for a in sorted(set(GRID))]
        assert [a for a, v in values if v == 0] == [HALF]
        # m(1 - a)/a - m decreases in a
        assert all(v1 > v2 for (_, v1), (_, v2) in zip(values, values[1:]))


def test_cauchy_schwarz():
    for h in tori():
        d = curvature_data(h)
        assert d.A_sq >= d.m * d.H_sq
