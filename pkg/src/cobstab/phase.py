"""Exact central charges and phases.

A phase is stored as an integer winding plus a primitive direction in the
closed upper half plane.  The direction ``(a, b)`` is normalised so that
``b > 0`` or ``b == 0 and a < 0``; it stands for the unique ``t`` in
``(0, 1]`` with ``exp(i*pi*t)`` on the ray through ``a + i*b``.  The phase is
``winding + t``.  No floating point is involved in any comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import Misaligned, ZeroCharge


def frac_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Charge:
    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __add__(self, other: "Charge") -> "Charge":
        return Charge(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Charge") -> "Charge":
        return Charge(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Charge":
        return Charge(-self.re, -self.im)

    def scale(self, k) -> "Charge":
        return Charge(self.re * k, self.im * k)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_json(self) -> dict:
        return {"re": frac_str(self.re), "im": frac_str(self.im)}

    def __repr__(self):
        return f"Charge({frac_str(self.re)}, {frac_str(self.im)})"


ZERO_CHARGE = Charge(0, 0)


def primitive(a: int, b: int) -> tuple[int, int]:
    g = math.gcd(a, b)
    if g == 0:
        raise ZeroCharge("zero vector has no direction")
    return a // g, b // g


def _is_canonical(a: int, b: int) -> bool:
    return b > 0 or (b == 0 and a < 0)


def cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


@total_ordering
@dataclass(frozen=True)
class Angle:
    winding: int
    dir: tuple

    def __post_init__(self):
        a, b = self.dir
        if (a, b) == (0, 0) or math.gcd(a, b) != 1 or not _is_canonical(a, b):
            raise ValueError(f"direction {self.dir} is not primitive and canonical")
        object.__setattr__(self, "dir", (int(a), int(b)))

    def __lt__(self, other: "Angle") -> bool:
        return compare_phases(self, other) < 0

    def shift(self, k: int) -> "Angle":
        return Angle(self.winding + k, self.dir)

    def approx(self) -> float:
        # only for display and for float sanity checks
        return self.winding + math.atan2(self.dir[1], self.dir[0]) / math.pi

    def to_json(self) -> dict:
        return {"winding": self.winding, "dir": [self.dir[0], self.dir[1]]}

    def __str__(self):
        return f"{self.winding}+arg({self.dir[0]},{self.dir[1]})/pi"


def phase_of_charge(c: Charge) -> Angle:
    """Phase in (0, 2] of a nonzero charge."""
    if c.is_zero():
        raise ZeroCharge("phase of the zero charge is undefined")
    den = math.lcm(c.re.denominator, c.im.denominator)
    a, b = primitive(int(c.re * den), int(c.im * den))
    if _is_canonical(a, b):
        return Angle(0, (a, b))
    return Angle(1, (-a, -b))


def compare_phases(x: Angle, y: Angle) -> int:
    """Return -1, 0 or 1 as x is below, equal to or above y."""
    if x.winding != y.winding:
        return -1 if x.winding < y.winding else 1
    c = cross(x.dir, y.dir)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def shift_phase(a: Angle, k: int) -> Angle:
    return Angle(a.winding + k, a.dir)


def add_quarter(a: Angle, sign: int = 1) -> Angle:
    """The phase a + 1/4 (or a - 1/4 for sign=-1), exactly.

    Turning a direction by 45 degrees keeps it integral: (x, y) goes to
    (x - y, x + y), or to (x + y, y - x) for the other way round.
    """
    x, y = a.dir
    u, v = (x - y, x + y) if sign > 0 else (x + y, y - x)
    u, v = primitive(u, v)
    if _is_canonical(u, v):
        return Angle(a.winding, (u, v))
    return Angle(a.winding + (1 if sign > 0 else -1), (-u, -v))


def charge_of_shift(c: Charge, k: int) -> Charge:
    return -c if k % 2 else c


def check_alignment(c: Charge, a: Angle) -> Fraction:
    """Return |c|^2 when c lies on the ray of phase a, else raise Misaligned."""
    p = phase_of_charge(c)
    if p.dir != a.dir:
        raise Misaligned(f"charge {c} does not point along {a}")
    if (p.winding - a.winding) % 2:
        raise Misaligned(f"charge {c} lies on the opposite ray of {a}")
    return c.norm2()
