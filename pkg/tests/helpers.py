"""Seeded generators shared by the property tests."""

import random
from fractions import Fraction

from biharmcert.polyalg import MultiPoly, VarTable

XY = VarTable(("x", "y"))
X = VarTable(("x",))


def rand_frac(rng, lo=-9, hi=9, den=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_poly(rng, table=XY, terms=4, deg=3):
    out = {}
    n = len(table)
    for _ in range(rng.randint(0, terms)):
        mono = tuple(rng.randint(0, deg) for _ in range(n))
        out[mono] = rand_frac(rng)
    return MultiPoly(table, out)


def linear(table, var, root):
    return MultiPoly.var(table, var) - root


def prod(factors, table):
    p = MultiPoly.const(table, 1)
    for f in factors:
        p = p * f
    return p


def cases(seed, count=200):
    """``count`` independent generators derived from ``seed``."""
    master = random.Random(seed)
    for _ in range(count):
        yield random.Random(master.getrandbits(64))
