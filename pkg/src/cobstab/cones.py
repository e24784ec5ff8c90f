"""Iterated cones over shifted leaves.

A tree is a ``Leaf``, the ``ZERO`` object, or a ``Cone(source, target, tag)``.
The flat chain ``(X1 -> X2 -> ... -> Xm)`` stands for the right nested tree
``Cone(X1, Cone(X2, ... Cone(X_{m-1}, X_m)))``.  Its K0 class is
``[X_m] - sum_{i<m} [X_i]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BadPosition, ObjectMismatch, TagNotZero


@dataclass(frozen=True)
class MorphismTag:
    kind: str  # "zero", "nonzero" or "unknown"
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("zero", "nonzero", "unknown"):
            raise ValueError(f"bad tag kind {self.kind!r}")

    def __str__(self):
        if self.kind == "nonzero" and self.label:
            return f"nonzero:{self.label}"
        return self.kind


ZERO_TAG = MorphismTag("zero")
UNKNOWN_TAG = MorphismTag("unknown")


def nonzero(label=None) -> MorphismTag:
    return MorphismTag("nonzero", label)


@dataclass(frozen=True)
class Leaf:
    obj: object
    shift: int = 0

    def shifted(self, k: int) -> "Leaf":
        return Leaf(self.obj, self.shift + k)


@dataclass(frozen=True)
class ZeroObject:
    def shifted(self, k: int) -> "ZeroObject":
        return self


ZERO = ZeroObject()


@dataclass(frozen=True)
class Cone:
    source: object
    target: object
    tag: MorphismTag = UNKNOWN_TAG


def shift_tree(e, k: int):
    """Shift every leaf of e by k (the cone of shifted maps is the shifted cone)."""
    if isinstance(e, Leaf):
        return e.shifted(k)
    if isinstance(e, ZeroObject):
        return e
    return Cone(shift_tree(e.source, k), shift_tree(e.target, k), e.tag)


def leaves(e) -> list:
    if isinstance(e, Leaf):
        return [e]
    if isinstance(e, ZeroObject):
        return []
    return leaves(e.source) + leaves(e.target)


def _default_key(obj):
    return {obj: 1}


def k0_class(e, key: Callable = _default_key) -> Counter:
    """Formal K0 class as a Counter of basis elements.

    ``key(obj)`` expands an object into a dict basis -> coefficient; the
    default treats every object as its own basis element.
    """
    out = Counter()
    _k0(e, 1, key, out)
    return Counter({b: c for b, c in out.items() if c})


def _k0(e, sign, key, out):
    if isinstance(e, Leaf):
        s = sign * (-1 if e.shift % 2 else 1)
        for b, c in key(e.obj).items():
            out[b] += s * c
    elif isinstance(e, Cone):
        _k0(e.target, sign, key, out)
        _k0(e.source, -sign, key, out)


def flatten(e) -> tuple[list, list]:
    """Items and adjacent tags of the right nested spine of e."""
    items, tags = [], []
    while isinstance(e, Cone):
        items.append(e.source)
        tags.append(e.tag)
        e = e.target
    items.append(e)
    return items, tags


def unflatten(items, tags=None):
    if not items:
        raise BadPosition("empty chain")
    if tags is None:
        tags = [UNKNOWN_TAG] * (len(items) - 1)
    if len(tags) != len(items) - 1:
        raise BadPosition("need one tag between each pair of items")
    e = items[-1]
    for item, tag in zip(reversed(items[:-1]), reversed(tags)):
        e = Cone(item, e, tag)
    return e


def chain(*items, tags=None):
    """Build (X1 -> ... -> Xm) from items; a trailing ZERO may be included."""
    return unflatten(list(items), tags)


def end_in_zero(e):
    """Rewrite (... -> X_m) as (... -> X_m[-1] -> 0)."""
    items, tags = flatten(e)
    if isinstance(items[-1], ZeroObject):
        return e
    items = items[:-1] + [shift_tree(items[-1], -1), ZERO]
    return unflatten(items, tags + [UNKNOWN_TAG])


def subtree(e, position):
    """Subtree at a path of 's'/'t' steps."""
    for step in position:
        if not isinstance(e, Cone):
            raise BadPosition(f"path {position!r} leaves the tree")
        e = e.source if step == "s" else e.target
    return e


def replace(e, position, new):
    if not position:
        return new
    if not isinstance(e, Cone):
        raise BadPosition(f"path {position!r} leaves the tree")
    step, rest = position[0], position[1:]
    if step == "s":
        return Cone(replace(e.source, rest, new), e.target, e.tag)
    if step == "t":
        return Cone(e.source, replace(e.target, rest, new), e.tag)
    raise BadPosition(f"bad path step {step!r}")


def _fresh_tag(source, target, hom_oracle):
    if hom_oracle is not None and hom_oracle(source, target) == 0:
        return ZERO_TAG
    return UNKNOWN_TAG


def reassociate(e, position=(), hom_oracle=None, direction="left"):
    """Apply (X -> (Y -> Z)) ~ ((X[-1] -> Y) -> Z) at position.

    ``direction="left"`` goes from the right nested form to the left nested
    one, ``"right"`` goes back.  The new cones get Unknown tags unless
    ``hom_oracle(src, tgt)`` reports a vanishing morphism space.
    """
    node = subtree(e, position)
    if not isinstance(node, Cone):
        raise BadPosition("reassociation needs a cone")
    if direction == "left":
        if not isinstance(node.target, Cone):
            raise BadPosition("target is not a cone")
        x, y, z = node.source, node.target.source, node.target.target
        xs = shift_tree(x, -1)
        inner = Cone(xs, y, _fresh_tag(xs, y, hom_oracle))
        new = Cone(inner, z, _fresh_tag(inner, z, hom_oracle))
    elif direction == "right":
        if not isinstance(node.source, Cone):
            raise BadPosition("source is not a cone")
        xs, y, z = node.source.source, node.source.target, node.target
        x = shift_tree(xs, 1)
        inner = Cone(y, z, _fresh_tag(y, z, hom_oracle))
        new = Cone(x, inner, _fresh_tag(x, inner, hom_oracle))
    else:
        raise BadPosition(f"unknown direction {direction!r}")
    return replace(e, position, new)


def swap_zero(e, position=()):
    """(X ->0 Y) ~ (Y[-1] ->0 X[1])."""
    node = subtree(e, position)
    if not isinstance(node, Cone):
        raise BadPosition("swap needs a cone")
    if node.tag.kind != "zero":
        raise TagNotZero(f"tag is {node.tag}, not zero")
    new = Cone(shift_tree(node.target, -1), shift_tree(node.source, 1), node.tag)
    return replace(e, position, new)


def substitute_nested(outer, index: int, inner, key: Callable = _default_key):
    """Replace the index-th chain item by the factors of inner, each shifted by +1.

    inner must end in 0 and have the same K0 class as the replaced leaf.  The
    last item of the outer chain cannot be replaced this way because it enters
    the K0 class with the opposite sign; rewrite with ``end_in_zero`` first.
    """
    items, tags = flatten(outer)
    if not 0 <= index < len(items) - 1:
        raise BadPosition(f"index {index} is not a non-final chain item")
    target = items[index]
    inner_items, inner_tags = flatten(inner)
    if not isinstance(inner_items[-1], ZeroObject) or len(inner_items) < 2:
        raise ObjectMismatch("inner decomposition must end in 0")
    if k0_class(inner, key) != k0_class(target, key):
        raise ObjectMismatch("inner decomposition has a different K0 class")
    new_items = [shift_tree(x, 1) for x in inner_items[:-1]]
    items = items[:index] + new_items + items[index + 1:]
    tags = tags[:index] + list(inner_tags[:-1]) + [tags[index]] + tags[index + 1:]
    return unflatten(items, tags)


def render(e, show=str) -> str:
    """Flat textual form, e.g. ``cone( X[-1] -> Y[-1] -> 0 ; tags=[zero, unknown] )``."""
    items, tags = flatten(e)
    parts = []
    for it in items:
        if isinstance(it, ZeroObject):
            parts.append("0")
        elif isinstance(it, Leaf):
            parts.append(f"{show(it.obj)}[{it.shift}]")
        else:
            parts.append("(" + render(it, show) + ")")
    return "cone( " + " -> ".join(parts) + " ; tags=[" + ", ".join(map(str, tags)) + "] )"


def to_json(e, show=str):
    if isinstance(e, Leaf):
        return {"leaf": show(e.obj), "shift": e.shift}
    if isinstance(e, ZeroObject):
        return {"zero": True}
    return {"cone": {"source": to_json(e.source, show), "target": to_json(e.target, show),
                     "tag": str(e.tag)}}
