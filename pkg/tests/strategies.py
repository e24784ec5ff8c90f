"""Hypothesis strategies for the model objects."""

import math
from fractions import Fraction

from hypothesis import strategies as st

from cobstab import base as B
from cobstab.lift import LiftedGenerator
from cobstab.phase import Angle, Charge


def _coprime(rd):
    r, d = rd
    return (r == 0 and d == 1) or (r > 0 and math.gcd(r, d) == 1)


@st.composite
def bricks(draw, size=5, modulus=3):
    r, d = draw(st.tuples(st.integers(0, size), st.integers(-size, size)).filter(_coprime))
    x = Fraction(draw(st.integers(0, modulus - 1)), modulus)
    return B.Brick(r, d, x, draw(st.integers(0, modulus - 1)))


@st.composite
def atoms(draw, size=5, max_jordan=3, shifts=(-4, 4)):
    return B.Atom(draw(bricks(size)), draw(st.integers(1, max_jordan)),
                  draw(st.integers(*shifts)))


def objects(max_atoms=3):
    return st.lists(atoms(), min_size=1, max_size=max_atoms).map(B.BaseObject)


@st.composite
def semistable_objects(draw):
    a = draw(atoms())
    extra = draw(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(1, 2)),
                          max_size=2))
    out = [a]
    for x, m, j in extra:
        out.append(B.Atom(B.Brick(a.brick.r, a.brick.d, Fraction(x, 3), m), j, a.shift))
    return B.BaseObject(out)


@st.composite
def generators(draw, max_height=8):
    return LiftedGenerator(draw(st.integers(1, max_height)), draw(st.integers(-3, 3)),
                           draw(semistable_objects()))


ints = st.integers(-50, 50)
charges = st.tuples(ints, ints).filter(lambda t: t != (0, 0)).map(lambda t: Charge(*t))


@st.composite
def angles(draw):
    a, b = draw(st.tuples(st.integers(-20, 20), st.integers(0, 20)).filter(
        lambda t: (t[1] > 0 or t[0] < 0) and math.gcd(*t) == 1))
    return Angle(draw(st.integers(-10, 10)), (a, b))


@st.composite
def gradings(draw):
    a, b = draw(st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(
        lambda t: t != (0, 0) and math.gcd(*t) == 1))
    return B.Grading(draw(st.integers(-5, 5)), (a, b))
