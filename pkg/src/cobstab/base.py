"""Desk model of the derived category of an elliptic curve.

Every object is a finite direct sum of shifted indecomposable semistables.
An indecomposable semistable is a stable *brick* ``(r, d, x, m)`` with
``gcd(r, d) = 1`` (the skyscraper is ``(0, 1)``), a Jordan size ``h`` and a
shift.  ``x`` is a point of the circle and ``m`` a monodromy label; two bricks
with the same slope but different ``(x, m)`` have no morphisms between them.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (EmptyObject, Inconsistent, NotUnimodular, ObjectMismatch,
                     ParallelDirections, UnresolvedTag)
from .phase import (Angle, Charge, ZERO_CHARGE, check_alignment, compare_phases,
                    cross, frac_str, phase_of_charge, primitive, shift_phase)


@dataclass(frozen=True, order=True)
class Brick:
    r: int
    d: int
    x: Fraction = Fraction(0)
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        if self.r < 0:
            raise ValueError("rank must be nonnegative")
        if self.r == 0 and self.d != 1:
            raise ValueError("a torsion brick must be (0, 1)")
        if self.r > 0 and math.gcd(self.r, self.d) != 1:
            raise ValueError(f"({self.r}, {self.d}) is not coprime")
        if not 0 <= self.x < 1:
            raise ValueError("point must lie in [0, 1)")

    @property
    def slope(self) -> tuple:
        return (self.r, self.d)

    def charge(self) -> Charge:
        return Charge(-self.d, self.r)

    def phase(self) -> Angle:
        return phase_of_charge(self.charge())

    def __str__(self):
        return f"brick(r={self.r},d={self.d},x={self.x.numerator}/{self.x.denominator},m={self.m})"


SKYSCRAPER = Brick(0, 1)
STRUCTURE_SHEAF = Brick(1, 0)


@dataclass(frozen=True, order=True)
class Atom:
    """Indecomposable semistable: Jordan block of size ``jordan`` on a brick, shifted."""
    brick: Brick
    jordan: int = 1
    shift: int = 0

    def __post_init__(self):
        if self.jordan < 1:
            raise ValueError("jordan size must be positive")

    def shifted(self, k: int) -> "Atom":
        return Atom(self.brick, self.jordan, self.shift + k)

    def __str__(self):
        return f"{self.brick}[{self.shift}]^{self.jordan}"


@dataclass(frozen=True, order=True)
class BaseObject:
    atoms: tuple = field(default_factory=tuple)

    def __init__(self, atoms=()):
        if isinstance(atoms, Atom):
            atoms = (atoms,)
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))

    def __add__(self, other: "BaseObject") -> "BaseObject":
        return BaseObject(self.atoms + other.atoms)

    def shifted(self, k: int) -> "BaseObject":
        return BaseObject(a.shifted(k) for a in self.atoms)

    def is_zero(self) -> bool:
        return not self.atoms

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(str(a) for a in self.atoms)


ZERO_OBJECT = BaseObject()


def as_object(x) -> BaseObject:
    if isinstance(x, BaseObject):
        return x
    if isinstance(x, Atom):
        return BaseObject((x,))
    if isinstance(x, Brick):
        return BaseObject((Atom(x),))
    raise TypeError(f"cannot read {x!r} as a base object")


def central_charge(obj) -> Charge:
    total = ZERO_CHARGE
    for a in as_object(obj).atoms:
        c = a.brick.charge().scale(a.jordan)
        total = total + (-c if a.shift % 2 else c)
    return total


def atom_phase(a: Atom) -> Angle:
    return shift_phase(a.brick.phase(), a.shift)


def is_stable(a: Atom) -> bool:
    return a.jordan == 1


def object_phase(obj) -> Angle:
    """Phase of a semistable object; raises ValueError when it has several."""
    obj = as_object(obj)
    if not obj.atoms:
        raise EmptyObject("zero object has no phase")
    phases = {atom_phase(a) for a in obj.atoms}
    if len(phases) != 1:
        raise ValueError("object is not semistable")
    return phases.pop()


def is_semistable(obj) -> bool:
    obj = as_object(obj)
    return bool(obj.atoms) and len({atom_phase(a) for a in obj.atoms}) == 1


def euler_form(a: Atom, b: Atom) -> int:
    ra, da = a.jordan * a.brick.r, a.jordan * a.brick.d
    rb, db = b.jordan * b.brick.r, b.jordan * b.brick.d
    sign = -1 if (a.shift + b.shift) % 2 else 1
    return sign * (ra * db - rb * da)


def _ext(a: Atom, b: Atom, e: int) -> int:
    """dim Ext^e between the unshifted atoms."""
    if e not in (0, 1):
        return 0
    if a.brick == b.brick:
        return min(a.jordan, b.jordan)
    if a.brick.slope == b.brick.slope:
        return 0
    chi = a.jordan * b.jordan * (a.brick.r * b.brick.d - b.brick.r * a.brick.d)
    if chi > 0:
        return chi if e == 0 else 0
    return -chi if e == 1 else 0


def hom_dim(a, b, k: int) -> int:
    """dim Hom(a, b[k]) for atoms or base objects."""
    if isinstance(a, Atom) and isinstance(b, Atom):
        return _ext(a, b, k + b.shift - a.shift)
    return sum(_ext(x, y, k + y.shift - x.shift)
               for x in as_object(a).atoms for y in as_object(b).atoms)


def hom_dims(a, b) -> dict:
    """Nonzero dimensions of Hom(a, b[k]) keyed by k."""
    out = Counter()
    for x in as_object(a).atoms:
        for y in as_object(b).atoms:
            base = y.shift - x.shift
            for e in (0, 1):
                v = _ext(x, y, e)
                if v:
                    out[e - base] += v
    return dict(sorted(out.items()))


def hn_filtration(obj) -> list:
    """HN factors as (Angle, BaseObject), phases strictly decreasing."""
    obj = as_object(obj)
    if not obj.atoms:
        raise EmptyObject("the zero object has no HN filtration")
    groups = {}
    for a in obj.atoms:
        groups.setdefault(atom_phase(a), []).append(a)
    order = sorted(groups, reverse=True)
    return [(p, BaseObject(groups[p])) for p in order]


def jordan_holder(a: Atom) -> list:
    return [Atom(a.brick, 1, a.shift) for _ in range(a.jordan)]


def base_k0(obj) -> Counter:
    """K0 class in the basis of stable bricks."""
    out = Counter()
    for a in as_object(obj).atoms:
        out[a.brick] += (-1 if a.shift % 2 else 1) * a.jordan
    return Counter({k: v for k, v in out.items() if v})


def numerical_class(obj) -> tuple:
    """(rank, degree, point sum mod 1, monodromy sum) of an object.

    Unlike ``base_k0`` this is blind to which bricks occur, so it is the
    invariant a nonsplit extension has to preserve.
    """
    r = d = m = 0
    x = Fraction(0)
    for a in as_object(obj).atoms:
        c = (-1 if a.shift % 2 else 1) * a.jordan
        r += c * a.brick.r
        d += c * a.brick.d
        x += c * a.brick.x
        m += c * a.brick.m
    return (r, d, x - math.floor(x), m)


def _act_atom(M, a: Atom) -> Atom:
    (p, q), (s, t) = M
    re, im = -a.brick.d, a.brick.r
    x, y = p * re + q * im, s * re + t * im
    shift = a.shift
    if not (y > 0 or (y == 0 and x < 0)):
        x, y, shift = -x, -y, shift + 1
    return Atom(Brick(y, -x, a.brick.x, a.brick.m), a.jordan, shift)


def sl2_act(M, obj) -> BaseObject:
    """Act by a determinant one integer matrix on the charge vectors (-d, r)."""
    (p, q), (s, t) = M
    if p * t - q * s != 1:
        raise NotUnimodular(f"det of {M} is {p * t - q * s}")
    return BaseObject(_act_atom(M, a) for a in as_object(obj).atoms)


def check_base_object(obj) -> list:
    """A1 on every HN factor; returns the list of squared moduli."""
    return [check_alignment(central_charge(f), p) for p, f in hn_filtration(obj)]


def extension(sub, quot, witness=None) -> BaseObject:
    """Middle term E of a nonsplit triangle sub -> E -> quot -> sub[1].

    With a witness the answer is the witness after a class check.  Without one
    the middle term is determined only when the class lives between atoms on a
    single brick: the generic extension of Jordan blocks in the same degree is
    the block of the summed size, and a map J_b -> J_a one degree down has
    cone J_{a-m} + J_{b-m}[1] with m = min(a, b).
    """
    sub, quot = as_object(sub), as_object(quot)
    if witness is not None:
        witness = as_object(witness)
        if numerical_class(witness) != numerical_class(sub + quot):
            raise ObjectMismatch("witness has the wrong rank, degree or determinant")
        return witness
    if len(quot.atoms) != 1:
        raise UnresolvedTag("extension by a sum of atoms needs a witness")
    q = quot.atoms[0]
    partners = [a for a in sub.atoms if a.brick == q.brick and q.shift - a.shift in (0, 1)]
    if not partners:
        if hom_dim(quot, sub, 1) == 0:
            raise Inconsistent("nonzero extension class in a zero Ext group")
        raise UnresolvedTag("extension across different bricks needs a witness")
    if len(partners) > 1:
        raise UnresolvedTag("extension class is ambiguous; give a witness")
    a = partners[0]
    rest = list(sub.atoms)
    rest.remove(a)
    if q.shift == a.shift:
        new = [Atom(a.brick, a.jordan + q.jordan, a.shift)]
    else:
        m = min(a.jordan, q.jordan)
        new = []
        if a.jordan > m:
            new.append(Atom(a.brick, a.jordan - m, a.shift))
        if q.jordan > m:
            new.append(Atom(a.brick, q.jordan - m, q.shift))
    return BaseObject(rest + new)


@dataclass(frozen=True)
class Grading:
    """Grading of a straight line: winding plus the doubled angle of dir over 2pi."""
    winding: int
    dir: tuple

    def __post_init__(self):
        a, b = self.dir
        if (a, b) == (0, 0) or math.gcd(a, b) != 1:
            raise ValueError(f"direction {self.dir} is not primitive")
        object.__setattr__(self, "dir", (int(a), int(b)))

    def shift(self, sigma: int) -> "Grading":
        return Grading(self.winding - sigma, self.dir)

    def __str__(self):
        return f"g({self.winding};{self.dir[0]},{self.dir[1]})"


def grading_of_brick(b: Brick, winding: int = 0) -> Grading:
    return Grading(winding, primitive(b.r, -b.d))


def _line_rep(v):
    # representative with angle in [0, pi)
    a, b = v
    if b > 0 or (b == 0 and a > 0):
        return (a, b)
    return (-a, -b)


def degree_at_intersection(g1: Grading, g2: Grading) -> int:
    """Degree of a transverse intersection point of two graded lines."""
    u, v = _line_rep(g1.dir), _line_rep(g2.dir)
    c = cross(u, v)
    if c == 0:
        raise ParallelDirections(f"{g1} and {g2} are parallel")
    return (g2.winding - g1.winding) + (1 if c > 0 else 0)


def describe_atom(a: Atom) -> dict:
    return {
        "brick": [a.brick.r, a.brick.d, frac_str(a.brick.x), a.brick.m],
        "jordan": a.jordan,
        "shift": a.shift,
        "charge": central_charge(a).to_json(),
        "phase": atom_phase(a).to_json(),
        "stable": is_stable(a),
    }


def phase_order(a: Atom, b: Atom) -> int:
    return compare_phases(atom_phase(a), atom_phase(b))
