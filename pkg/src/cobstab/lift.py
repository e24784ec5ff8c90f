"""Lifted generators I^h X[r] and cobordism data over the base model."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from . import base as B
from .cones import (Cone, Leaf, MorphismTag, UNKNOWN_TAG, ZERO, ZERO_TAG, ZeroObject,
                    k0_class, unflatten)
from .errors import BadKappa, EmptyObject, MalformedSpec, NotSemistable
from .phase import Angle, Charge, ZERO_CHARGE, shift_phase


@dataclass(frozen=True)
class KappaParam:
    value: int


def validate_kappa(k: int) -> KappaParam:
    if k % 2:
        raise BadKappa(f"kappa={k} is odd")
    if k < 4:
        raise BadKappa(f"kappa={k} is too small; need an even integer >= 4")
    return KappaParam(k)


def kappa_value(k) -> int:
    # raw integers skip validation on purpose, so axiom failures can be exhibited
    return k.value if isinstance(k, KappaParam) else int(k)


@dataclass(frozen=True, order=True)
class LiftedGenerator:
    """The base object ``base`` included at ``height`` and shifted by ``shift``."""
    height: int
    shift: int
    base: B.BaseObject

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("height must be positive")
        object.__setattr__(self, "base", B.as_object(self.base))

    def shifted(self, k: int) -> "LiftedGenerator":
        return LiftedGenerator(self.height, self.shift + k, self.base)

    def base_shifted(self) -> B.BaseObject:
        return self.base.shifted(self.shift)

    def __str__(self):
        return f"I^{self.height}({self.base})[{self.shift}]"


def lifted_phase(g: LiftedGenerator, kappa) -> Angle:
    try:
        p = B.object_phase(g.base)
    except (ValueError, EmptyObject) as exc:
        raise NotSemistable(f"{g} has no single base phase") from exc
    return shift_phase(p, g.shift - kappa_value(kappa) * g.height)


def lifted_charge(g: LiftedGenerator) -> Charge:
    return B.central_charge(g.base_shifted())


def lifted_k0(g: LiftedGenerator) -> dict:
    """K0 class of a generator in the basis (height, stable brick)."""
    return {(g.height, b): c for b, c in B.base_k0(g.base_shifted()).items()}


def hom_dim_lifted(a: LiftedGenerator, b: LiftedGenerator, degree: int) -> int:
    """dim Hom(a, b[degree]); morphisms never go up in height."""
    if a.height < b.height:
        return 0
    return B.hom_dim(a.base_shifted(), b.base_shifted(), degree)


def slicing_member(g, phi: Angle, kappa) -> bool:
    gens = [g] if isinstance(g, LiftedGenerator) else list(g)
    if not gens:
        return False
    for x in gens:
        if not B.is_semistable(x.base):
            return False
        if lifted_phase(x, kappa) != phi:
            return False
    return True


@dataclass(frozen=True)
class End:
    height: int
    obj: B.BaseObject
    grading: Optional[B.Grading] = None

    def __post_init__(self):
        object.__setattr__(self, "obj", B.as_object(self.obj))


@dataclass(frozen=True)
class CobordismSpec:
    """Ends sorted by strictly increasing height.

    ``tags`` maps a pair ``(i, j)`` of end indices with ``h_i > h_j`` to the
    morphism between the lifted ends; pairs not listed are unknown.
    """
    ends: tuple
    tags: dict = field(default_factory=dict, compare=False, hash=False)

    def __init__(self, ends, tags=None):
        object.__setattr__(self, "ends", tuple(ends))
        object.__setattr__(self, "tags", dict(tags or {}))

    def upper(self) -> list:
        """Indices of the ends of height > 1, highest first."""
        return [i for i in reversed(range(len(self.ends))) if self.ends[i].height > 1]

    def bottom(self) -> Optional[End]:
        if self.ends and self.ends[0].height == 1:
            return self.ends[0]
        return None

    def generator(self, i: int) -> LiftedGenerator:
        e = self.ends[i]
        return LiftedGenerator(e.height, 0, e.obj)


def end_charge(spec: CobordismSpec) -> Charge:
    total = ZERO_CHARGE
    for e in spec.ends:
        total = total + B.central_charge(e.obj)
    return total


def validate_spec(spec: CobordismSpec) -> None:
    ends = spec.ends
    if len(ends) < 2:
        raise MalformedSpec("a cobordism needs at least two ends (an empty bottom counts)")
    hs = [e.height for e in ends]
    if hs[0] < 1:
        raise MalformedSpec("heights must be positive")
    for a, b in zip(hs, hs[1:]):
        if b <= a:
            raise MalformedSpec(f"heights {hs} are not strictly increasing")
    for e in ends:
        if e.height > 1 and e.obj.is_zero():
            raise MalformedSpec(f"end at height {e.height} is empty")
    if not end_charge(spec).is_zero():
        raise MalformedSpec("end charges do not cancel")
    for (i, j), t in spec.tags.items():
        if not (0 <= j < len(ends) and 0 <= i < len(ends)) or ends[i].height <= ends[j].height:
            raise MalformedSpec(f"tag key {(i, j)} must go from a higher end to a lower one")
        if not isinstance(t, MorphismTag):
            raise MalformedSpec(f"tag {t!r} is not a MorphismTag")


def _pair_tag(spec, i, j):
    t = spec.tags.get((i, j), UNKNOWN_TAG)
    if t.kind == "unknown" and hom_dim_lifted(spec.generator(i), spec.generator(j), 1) == 0:
        return ZERO_TAG
    return t


def cone_decomposition(spec: CobordismSpec):
    """(I^{h_s}L_s[-1] -> ... -> I^{h_2}L_2[-1] -> 0)."""
    validate_spec(spec)
    idx = spec.upper()
    items = [Leaf(spec.generator(i), -1) for i in idx] + [ZERO]
    tags = [_pair_tag(spec, a, b) for a, b in zip(idx, idx[1:])] + [ZERO_TAG]
    return unflatten(items, tags)


def restrict(x, height: int, r: int = 0):
    """Restriction to the end at ``height`` followed by the shift [r].

    Restricting to the bottom picks up an extra [-1].
    """
    if isinstance(x, LiftedGenerator):
        if height == x.height:
            return x.base.shifted(x.shift + r)
        if height == 1 and x.height > 1:
            return x.base.shifted(x.shift + r - 1)
        return B.ZERO_OBJECT
    if isinstance(x, Leaf):
        y = restrict(x.obj, height, r)
        return ZERO if y.is_zero() else Leaf(y, x.shift)
    if isinstance(x, ZeroObject):
        return x
    if isinstance(x, Cone):
        return Cone(restrict(x.source, height, r), restrict(x.target, height, r), x.tag)
    raise TypeError(f"cannot restrict {x!r}")


def base_k0_of_expr(expr) -> Counter:
    """K0 class of a cone over base objects."""
    return k0_class(expr, key=lambda o: dict(B.base_k0(o)))


def base_charge_of_expr(expr) -> Charge:
    total = ZERO_CHARGE
    for o, c in k0_class(expr).items():
        total = total + B.central_charge(o).scale(c)
    return total


def lifted_k0_of_expr(expr) -> Counter:
    return k0_class(expr, key=lifted_k0)


def central_charge_lifted(expr) -> Charge:
    """Sum over heights >= 2 of the base charge of each restriction."""
    total = ZERO_CHARGE
    for g, c in k0_class(expr).items():
        if g.height >= 2:
            total = total + lifted_charge(g).scale(c)
    return total
