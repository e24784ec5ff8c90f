"""Seeded random atoms, lifted generators and balanced cobordism specs."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import base as B
from .cones import ZERO_TAG, nonzero
from .lift import CobordismSpec, End, LiftedGenerator, hom_dim_lifted


def random_brick(rng: random.Random, size: int = 4, modulus: int = 3) -> B.Brick:
    while True:
        r = rng.randint(0, size)
        d = rng.randint(-size, size)
        if r == 0:
            d = 1
        if r > 0 and math.gcd(r, d) != 1:
            continue
        x = Fraction(rng.randrange(modulus), modulus)
        return B.Brick(r, d, x, rng.randrange(modulus))


def random_atom(rng, size=4, modulus=3, max_jordan=2, shifts=(-2, 2)) -> B.Atom:
    return B.Atom(random_brick(rng, size, modulus), rng.randint(1, max_jordan),
                  rng.randint(*shifts))


def random_semistable(rng, size=4, modulus=3) -> B.BaseObject:
    """One atom, sometimes with a second atom of the same phase."""
    a = random_atom(rng, size, modulus)
    atoms = [a]
    if rng.random() < 0.3:
        b = B.Brick(a.brick.r, a.brick.d, Fraction(rng.randrange(modulus), modulus),
                    rng.randrange(modulus))
        atoms.append(B.Atom(b, rng.randint(1, 2), a.shift))
    return B.BaseObject(atoms)


def random_generator(rng, max_height=8, size=4, modulus=3) -> LiftedGenerator:
    return LiftedGenerator(rng.randint(2, max_height), rng.randint(-3, 3),
                           random_semistable(rng, size, modulus))


def _atom_with_charge(re: int, im: int, x, m) -> B.Atom:
    g = math.gcd(re, im)
    a, b = re // g, im // g
    shift = 0
    if not (b > 0 or (b == 0 and a < 0)):
        a, b, shift = -a, -b, 1
    return B.Atom(B.Brick(b, -a, x, m), g, shift)


def random_spec(rng, max_ends=6, max_height=8, size=4, modulus=3,
                bottom=None, nonzero_rate=0.5, max_atoms=2, shifts=(-6, 6)) -> CobordismSpec:
    """A cobordism spec whose end charges cancel, with tags on every pair of ends.

    Nonzero tags are only placed where the degree one morphism space between
    the lifted ends is nonzero.
    """
    while True:
        s = rng.randint(2, max_ends)
        has_bottom = rng.random() < 0.5 if bottom is None else bottom
        pool = list(range(2, max_height + 1))
        ups = sorted(rng.sample(pool, min(len(pool), s - 1 if has_bottom else s)))
        heights = ([1] if has_bottom else []) + ups
        objs = []
        for _ in heights:
            objs.append(B.BaseObject([random_atom(rng, size, modulus, shifts=shifts)
                                      for _ in range(rng.randint(1, max_atoms))]))
        k = rng.randrange(len(heights))
        objs[k] = B.ZERO_OBJECT
        total = sum((B.central_charge(o) for o in objs), B.ZERO_CHARGE)
        x = Fraction(rng.randrange(modulus), modulus)
        m = rng.randrange(modulus)
        if total.is_zero():
            a = random_atom(rng, size, modulus, shifts=(-1, 1))
            fill = B.BaseObject([a, a.shifted(1)])
        else:
            a = _atom_with_charge(int(-total.re), int(-total.im), x, m)
            if a.brick.r > size or abs(a.brick.d) > size or a.jordan > 6:
                continue
            fill = B.BaseObject([a])
        objs[k] = fill
        ends = [End(h, o) for h, o in zip(heights, objs)]
        spec = CobordismSpec(ends)
        tags = {}
        up = [i for i, h in enumerate(heights) if h > 1]
        for i in up:
            for j in up:
                if heights[i] <= heights[j]:
                    continue
                if hom_dim_lifted(spec.generator(i), spec.generator(j), 1) and rng.random() < nonzero_rate:
                    tags[(i, j)] = nonzero(f"e{i}{j}")
                else:
                    tags[(i, j)] = ZERO_TAG
        return CobordismSpec(ends, tags)
