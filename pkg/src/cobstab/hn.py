"""Harder-Narasimhan normalisation over lifted generators.

The normaliser works on a ``Chain``: a list of factors where ``factors[0]``
is the factor next to the trailing zero, so the chain
``(F_m[-1] -> ... -> F_1[-1] -> 0)`` is stored as ``[F_1, ..., F_m]``.
The goal is strictly decreasing phases along the list.

Each factor is a tuple of pieces (one lifted generator each).  Tags are kept
for every unordered pair of pieces, so that moving factors past each other
does not lose what is known about the remaining morphisms.  The tag of a
pair stands for the component of the differential from the piece further from
zero to the piece closer to it; it is a degree one morphism between factors.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import base as B
from .cones import (Leaf, MorphismTag, UNKNOWN_TAG, ZERO, ZERO_TAG, ZeroObject,
                    end_in_zero, flatten, substitute_nested, unflatten)
from .errors import (BadWindow, Inconsistent, Mismatch, NotSemistable,
                     UnresolvedTag)
from .lift import (CobordismSpec, LiftedGenerator, hom_dim_lifted, kappa_value,
                   lifted_charge, lifted_k0, lifted_phase, slicing_member,
                   validate_spec)
from .phase import ZERO_CHARGE, Angle, add_quarter, check_alignment, compare_phases


@dataclass(frozen=True)
class Piece:
    id: int
    gen: LiftedGenerator


def _key(p: Piece, q: Piece):
    return frozenset((p.id, q.id))


class Chain:
    def __init__(self, factors, tags, kappa, witnesses=None, next_id=None):
        self.factors = [tuple(f) for f in factors]
        self.tags = dict(tags)
        self.kappa = kappa_value(kappa)
        self.witnesses = dict(witnesses or {})
        if next_id is None:
            next_id = 1 + max((p.id for f in self.factors for p in f), default=-1)
        self.next_id = next_id

    def copy(self) -> "Chain":
        return Chain(self.factors, self.tags, self.kappa, self.witnesses, self.next_id)

    def new_piece(self, gen: LiftedGenerator) -> Piece:
        p = Piece(self.next_id, gen)
        self.next_id += 1
        return p

    def phase(self, k: int) -> Angle:
        return lifted_phase(self.factors[k][0].gen, self.kappa)

    def tag(self, p: Piece, q: Piece) -> MorphismTag:
        return self.tags.get(_key(p, q), UNKNOWN_TAG)

    def set_tag(self, p: Piece, q: Piece, t: MorphismTag) -> None:
        self.tags[_key(p, q)] = t

    def pieces(self):
        return [p for f in self.factors for p in f]

    def k0(self) -> Counter:
        out = Counter()
        for p in self.pieces():
            out.update(lifted_k0(p.gen))
        return Counter({k: v for k, v in out.items() if v})

    def numerical_k0(self) -> Counter:
        out = Counter()
        for p in self.pieces():
            r, d, x, m = B.numerical_class(p.gen.base_shifted())
            key = p.gen.height
            out[(key, "r")] += r
            out[(key, "d")] += d
            out[(key, "x")] += x
            out[(key, "m")] += m
        res = Counter()
        for k, v in out.items():
            if k[1] == "x":
                v = v - math.floor(v)
            if v:
                res[k] = v
        return res

    def charge(self):
        total = ZERO_CHARGE
        for p in self.pieces():
            total = total + lifted_charge(p.gen)
        return total

    def to_cone(self):
        items, tags = [], []
        flat = []
        for f in reversed(self.factors):
            flat.extend(reversed(f))
        for i, p in enumerate(flat):
            items.append(Leaf(p.gen, -1))
            if i + 1 < len(flat):
                tags.append(self.tag(p, flat[i + 1]))
        return unflatten(items + [ZERO], tags + [ZERO_TAG])

    def __repr__(self):
        return "Chain(" + ", ".join("+".join(str(p.gen) for p in f) for f in self.factors) + ")"


def resolve(chain: Chain, src: Piece, tgt: Piece) -> str:
    """Kind of the morphism src -> tgt at a decision point."""
    t = chain.tag(src, tgt)
    dim = hom_dim_lifted(src.gen, tgt.gen, 1)
    if t.kind == "unknown":
        if dim == 0:
            return "zero"
        raise UnresolvedTag(f"unknown morphism {src.gen} -> {tgt.gen} with {dim}-dimensional space")
    if t.kind == "nonzero" and dim == 0:
        raise Inconsistent(f"nonzero tag on {src.gen} -> {tgt.gen} but the morphism space is 0")
    return t.kind


# rewrite steps; each mutates the chain and is shared by normalize and replay

def op_refine(chain: Chain, k: int) -> None:
    (old,) = chain.factors[k]
    g = old.gen
    hn = B.hn_filtration(g.base)
    new = [chain.new_piece(LiftedGenerator(g.height, g.shift, obj)) for _, obj in hn]
    for p in chain.pieces():
        if p.id == old.id:
            continue
        # a zero map stays zero on every piece; anything else has to be re-derived
        t = ZERO_TAG if chain.tag(old, p).kind == "zero" else UNKNOWN_TAG
        for q in new:
            chain.set_tag(q, p, t)
    for a in new:
        for b in new:
            if a.id != b.id:
                chain.set_tag(a, b, ZERO_TAG)
    chain.factors[k:k + 1] = [(q,) for q in new]


def op_swap(chain: Chain, j: int) -> None:
    f = chain.factors
    f[j], f[j + 1] = f[j + 1], f[j]


def op_merge(chain: Chain, j: int) -> None:
    f = chain.factors
    f[j:j + 2] = [f[j] + f[j + 1]]


def _combined(kinds):
    if any(k == "nonzero" for k in kinds):
        return "nonzero"
    return "zero" if all(k == "zero" for k in kinds) else "unknown"


def op_collapse(chain: Chain, p: int, q: int) -> None:
    """Replace the equal height block p..q by the HN factors of its base object."""
    block = [pc for f in chain.factors[p:q + 1] for pc in f]
    heights = {pc.gen.height for pc in block}
    if len(heights) != 1:
        raise Inconsistent("collapse needs a block of one height")
    h = heights.pop()
    order = [f for f in chain.factors[p:q + 1]]
    acc = B.ZERO_OBJECT
    done = []
    for f in order:
        for piece in f:
            quot = piece.gen.base_shifted()
            kinds, labels = [], []
            for prev in done:
                t = chain.tag(piece, prev)
                if t.kind == "unknown":
                    kinds.append("zero" if hom_dim_lifted(piece.gen, prev.gen, 1) == 0 else "unknown")
                else:
                    kinds.append(t.kind)
                    if t.kind == "nonzero" and t.label:
                        labels.append(t.label)
            kind = _combined(kinds)
            if kind == "zero":
                acc = acc + quot
            elif kind == "unknown":
                raise UnresolvedTag(f"unknown morphism out of {piece.gen} inside a collapse")
            else:
                witness = next((chain.witnesses[x] for x in labels if x in chain.witnesses), None)
                acc = B.extension(acc, quot, witness)
            done.append(piece)
    new = []
    if not acc.is_zero():
        new = [chain.new_piece(LiftedGenerator(h, 0, obj)) for _, obj in B.hn_filtration(acc)]
    outside = [pc for i, f in enumerate(chain.factors) if not p <= i <= q for pc in f]
    for o in outside:
        kinds = [chain.tag(o, b).kind for b in block]
        t = ZERO_TAG if all(k == "zero" for k in kinds) else UNKNOWN_TAG
        for a in new:
            chain.set_tag(a, o, t)
    for a in new:
        for b in new:
            if a.id != b.id:
                chain.set_tag(a, b, ZERO_TAG)
    chain.factors[p:q + 1] = [(a,) for a in new]


_OPS = {"refine": op_refine, "swap": op_swap, "merge": op_merge, "collapse": op_collapse}


@dataclass
class GapCheck:
    source: LiftedGenerator
    target: LiftedGenerator
    source_phase: Angle
    target_phase: Angle

    @property
    def ok(self) -> bool:
        return self.target_phase > self.source_phase.shift(1)


@dataclass
class RewriteTrace:
    initial: Chain
    steps: list = field(default_factory=list)
    gaps: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def replay(self) -> Chain:
        c = self.initial.copy()
        for step in self.steps:
            _OPS[step[0]](c, *step[1:])
        return c

    def states(self):
        c = self.initial.copy()
        yield c.copy()
        for step in self.steps:
            _OPS[step[0]](c, *step[1:])
            yield c.copy()

    def to_json(self):
        return [list(s) for s in self.steps]


@dataclass(frozen=True)
class HNFiltration:
    """Factors (phase, generators) with strictly decreasing phases."""
    factors: tuple
    kappa: int

    def phases(self):
        return [p for p, _ in self.factors]

    def generators(self):
        return [g for _, gs in self.factors for g in gs]

    def k0(self) -> Counter:
        out = Counter()
        for g in self.generators():
            out.update(lifted_k0(g))
        return Counter({k: v for k, v in out.items() if v})

    def charge(self):
        total = ZERO_CHARGE
        for g in self.generators():
            total = total + lifted_charge(g)
        return total

    def multiset(self):
        return [(p, tuple(sorted(gs))) for p, gs in self.factors]

    def chain(self) -> Chain:
        factors, n = [], 0
        for _, gs in self.factors:
            factors.append(tuple(Piece(n + i, g) for i, g in enumerate(gs)))
            n += len(gs)
        tags = {}
        for f in factors:
            for a in f:
                for b in f:
                    if a.id != b.id:
                        tags[_key(a, b)] = ZERO_TAG
        return Chain(factors, tags, self.kappa)

    def to_cone(self):
        return self.chain().to_cone()

    def shifted(self, k: int) -> "HNFiltration":
        return HNFiltration(tuple((p.shift(k), tuple(g.shifted(k) for g in gs))
                                  for p, gs in self.factors), self.kappa)


def _filtration(chain: Chain) -> HNFiltration:
    return HNFiltration(tuple((chain.phase(k), tuple(p.gen for p in f))
                              for k, f in enumerate(chain.factors)), chain.kappa)


def chain_from_cone(expr, kappa, witnesses=None) -> Chain:
    """Read a flat cone over lifted generators as a chain of factors."""
    expr = end_in_zero(expr)
    items, tags = flatten(expr)
    pieces = []
    for i, it in enumerate(items[:-1]):
        if not isinstance(it, Leaf) or not isinstance(it.obj, LiftedGenerator):
            raise NotSemistable(f"chain item {i} is not a leaf over a lifted generator")
        pieces.append(Piece(i, it.obj.shifted(it.shift + 1)))
    ctags = {}
    for i in range(len(pieces) - 1):
        ctags[_key(pieces[i], pieces[i + 1])] = tags[i]
    factors = [(p,) for p in reversed(pieces)]
    return Chain(factors, ctags, kappa, witnesses)


def chain_from_spec(spec: CobordismSpec, kappa, witnesses=None) -> Chain:
    """Chain of the cone decomposition, keeping the tag of every pair of ends."""
    validate_spec(spec)
    order = list(reversed(spec.upper()))  # lowest height first, next to zero
    pieces = {i: Piece(i, spec.generator(i)) for i in order}
    tags = {}
    for (i, j), t in spec.tags.items():
        if i in pieces and j in pieces:
            tags[_key(pieces[i], pieces[j])] = t
    return Chain([(pieces[i],) for i in order], tags, kappa, witnesses)


def refine_chain(chain: Chain, trace: Optional[RewriteTrace] = None) -> Chain:
    k = 0
    while k < len(chain.factors):
        (piece,) = chain.factors[k]
        n = len(B.hn_filtration(piece.gen.base))
        if n > 1:
            op_refine(chain, k)
            if trace is not None:
                trace.steps.append(("refine", k))
        k += n
    return chain


def refine_by_base_hn(expr):
    """Replace every leaf by the inclusion of the HN factors of its base object."""
    expr = end_in_zero(expr)
    items, _ = flatten(expr)
    k = 0
    for it in list(items[:-1]):
        g = it.obj
        hn = B.hn_filtration(g.base)
        if len(hn) > 1:
            # the leaf g[s] is (X_l[s-1] -> ... -> X_1[s-1] -> 0) over the HN pieces
            inner_items = [Leaf(LiftedGenerator(g.height, g.shift, obj), it.shift - 1)
                           for _, obj in reversed(hn)]
            inner = unflatten(inner_items + [ZERO],
                              [ZERO_TAG] * (len(inner_items) - 1) + [ZERO_TAG])
            expr = substitute_nested(expr, k, inner, key=lifted_k0)
        k += len(hn)
    return expr


def _decision(chain: Chain, j: int):
    """Resolved component kinds for the pair (factor j+1 -> factor j)."""
    out = []
    for src in chain.factors[j + 1]:
        for tgt in chain.factors[j]:
            out.append((src, tgt, resolve(chain, src, tgt)))
    return out


def _record_gaps(chain: Chain, j: int, trace: RewriteTrace) -> None:
    for src in chain.factors[j + 1]:
        for tgt in chain.factors[j]:
            if src.gen.height == tgt.gen.height or chain.tag(src, tgt).kind != "nonzero":
                continue
            key = (src.id, tgt.id)
            if key not in trace.gaps:
                gc = GapCheck(src.gen, tgt.gen, lifted_phase(src.gen, chain.kappa),
                              lifted_phase(tgt.gen, chain.kappa))
                trace.gaps[key] = gc
                if not gc.ok:
                    raise Inconsistent(
                        f"height gap fails: phase of {tgt.gen} is not above phase of {src.gen} plus 1")


def _height_block(chain: Chain, j: int):
    h = chain.factors[j][0].gen.height

    def pure(k):
        return all(p.gen.height == h for p in chain.factors[k])
    p = j
    while p - 1 >= 0 and pure(p - 1):
        p -= 1
    q = j + 1
    while q + 1 < len(chain.factors) and pure(q + 1):
        q += 1
    return p, q


def _phase_a(chain: Chain, trace: RewriteTrace, scan: str = "left") -> bool:
    """One pass over adjacent pairs; True if a rewrite was applied."""
    js = range(len(chain.factors) - 1)
    for j in (js if scan == "left" else reversed(js)):
        _record_gaps(chain, j, trace)
        c = compare_phases(chain.phase(j), chain.phase(j + 1))
        if c > 0:
            continue
        kinds = _decision(chain, j)
        nonzero = [(s, t) for s, t, k in kinds if k == "nonzero"]
        if not nonzero:
            if c < 0:
                op_swap(chain, j)
                trace.steps.append(("swap", j))
                return True
            continue
        heights = {p.gen.height for p in chain.factors[j] + chain.factors[j + 1]}
        if len(heights) != 1:
            raise Inconsistent("nonzero morphism between different heights with inverted phases")
        p, q = _height_block(chain, j)
        op_collapse(chain, p, q)
        trace.steps.append(("collapse", p, q))
        return True
    return False


def _equal_runs(chain: Chain):
    runs, start = [], 0
    for j in range(1, len(chain.factors) + 1):
        if j == len(chain.factors) or chain.phase(j) != chain.phase(start):
            if j - start > 1:
                runs.append((start, j - 1))
            start = j
    return runs


def normalize(expr, kappa, witnesses=None, refine=False, scan="left"):
    """HN filtration of a flat cone (or a Chain) together with the rewrite trace.

    ``scan`` picks whether each pass looks for a rewrite from the zero end
    ("left") or from the far end ("right"); the result does not depend on it.
    """
    if scan not in ("left", "right"):
        raise ValueError(f"scan must be 'left' or 'right', not {scan!r}")
    if isinstance(expr, Chain):
        chain = expr.copy()
        if witnesses:
            chain.witnesses.update(witnesses)
    else:
        chain = chain_from_cone(expr, kappa, witnesses)
    trace = RewriteTrace(chain.copy())
    if refine:
        refine_chain(chain, trace)
    for f in chain.factors:
        for p in f:
            if not B.is_semistable(p.gen.base):
                raise NotSemistable(f"{p.gen} is not semistable; refine first")
    while True:
        if _phase_a(chain, trace, scan):
            continue
        runs = _equal_runs(chain)
        collapsed = False
        for p, q in runs:
            pieces = [pc for f in chain.factors[p:q + 1] for pc in f]
            bad = False
            for a in range(len(pieces)):
                for b in range(a + 1, len(pieces)):
                    if resolve(chain, pieces[b], pieces[a]) == "nonzero":
                        bad = True
            if bad:
                if len({pc.gen.height for pc in pieces}) != 1:
                    raise Inconsistent("nonzero morphism inside an equal phase run of mixed heights")
                op_collapse(chain, p, q)
                trace.steps.append(("collapse", p, q))
                collapsed = True
                break
        if collapsed:
            continue
        for p, q in reversed(runs):
            for _ in range(q - p):
                op_merge(chain, p)
                trace.steps.append(("merge", p))
        break
    filt = _filtration(chain)
    ph = filt.phases()
    assert all(a > b for a, b in zip(ph, ph[1:])), "phases not strictly decreasing"
    return filt, trace


def hn_of_spec(spec: CobordismSpec, kappa, witnesses=None):
    """Refine the cone decomposition of a cobordism and normalise it."""
    return normalize(chain_from_spec(spec, kappa, witnesses), kappa, refine=True)


def general_object_hn(e1: HNFiltration, e2: HNFiltration, tag: MorphismTag, kappa,
                      witnesses=None) -> HNFiltration:
    """HN filtration of the cone of a morphism e1 -> e2 between filtered objects."""
    c2 = e2.chain()
    c1 = e1.shifted(1).chain()
    off = c2.next_id
    f1 = [tuple(Piece(p.id + off, p.gen) for p in f) for f in c1.factors]
    tags = dict(c2.tags)
    for k, t in c1.tags.items():
        tags[frozenset(i + off for i in k)] = t
    factors = c2.factors + f1
    if tag.kind == "zero":
        for a in [p for f in f1 for p in f]:
            for b in [p for f in c2.factors for p in f]:
                tags[_key(a, b)] = ZERO_TAG
    elif c2.factors and f1:
        for a in f1[0]:
            for b in c2.factors[-1]:
                tags[_key(a, b)] = tag
    chain = Chain(factors, tags, kappa, witnesses)
    if not chain.factors:
        return HNFiltration((), kappa_value(kappa))
    filt, _ = normalize(chain, kappa)
    return filt


def compare_hn(f1: HNFiltration, f2: HNFiltration) -> dict:
    if f1.k0() != f2.k0():
        raise Mismatch("filtrations have different K0 classes", None)
    if len(f1.factors) != len(f2.factors):
        raise Mismatch(f"lengths {len(f1.factors)} and {len(f2.factors)} differ",
                       min(len(f1.factors), len(f2.factors)))
    for i, ((p1, g1), (p2, g2)) in enumerate(zip(f1.factors, f2.factors)):
        if p1 != p2:
            raise Mismatch(f"phases differ at factor {i}", i)
        if sorted(g1) != sorted(g2):
            raise Mismatch(f"factors differ at index {i}", i)
    return {"match": True, "length": len(f1.factors)}


# axiom checks

def _semistables(sample):
    base_atoms, gens, specs = [], [], []
    for x in sample:
        if isinstance(x, LiftedGenerator):
            gens.append(x)
        elif isinstance(x, CobordismSpec):
            specs.append(x)
        else:
            base_atoms.extend(B.as_object(x).atoms)
    return base_atoms, gens, specs


def verify_axioms(sample, kappa) -> dict:
    """Check A1-A4 and the height gap on a sample; failures are listed, not raised."""
    kv = kappa_value(kappa)
    atoms, gens, specs = _semistables(sample)
    gens = [g for g in gens if B.is_semistable(g.base)]
    report = {"A1": [], "A2": [], "A3": [], "A4": [], "gap": [],
              "counts": {"atoms": len(atoms), "generators": len(gens), "specs": len(specs)}}
    for a in atoms:
        try:
            check_alignment(B.central_charge(a), B.atom_phase(a))
        except Exception as exc:
            report["A1"].append((str(a), str(exc)))
    phases = {}
    for g in gens:
        phi = lifted_phase(g, kv)
        phases[g] = phi
        try:
            check_alignment(lifted_charge(g), phi)
        except Exception as exc:
            report["A1"].append((str(g), str(exc)))
        if not (slicing_member(g, phi, kv) and slicing_member(g.shifted(1), phi.shift(1), kv)
                and not slicing_member(g.shifted(1), phi, kv)):
            report["A2"].append(str(g))
    for i, a in enumerate(atoms):
        pa = B.atom_phase(a)
        for b in atoms[i + 1:]:
            pb = B.atom_phase(b)
            if pa > pb and B.hom_dim(a, b, 0):
                report["A3"].append((str(a), str(b)))
            elif pb > pa and B.hom_dim(b, a, 0):
                report["A3"].append((str(b), str(a)))
    uniq = sorted(set(gens))
    for i, a in enumerate(uniq):
        pa = phases[a]
        for b in uniq[i + 1:]:
            pb = phases[b]
            for s, t, ps, pt in ((a, b, pa, pb), (b, a, pb, pa)):
                if s.height < t.height:
                    continue
                if ps > pt and hom_dim_lifted(s, t, 0):
                    report["A3"].append((str(s), str(t)))
                if s.height > t.height and hom_dim_lifted(s, t, 1) and not pt > ps.shift(1):
                    report["gap"].append((str(s), str(t)))
    for spec in specs:
        try:
            filt, _ = hn_of_spec(spec, kv)
            ph = filt.phases()
            if not all(x > y for x, y in zip(ph, ph[1:])):
                report["A4"].append((str(spec.ends), "phases not decreasing"))
        except Exception as exc:
            report["A4"].append((str([str(e.obj) for e in spec.ends]), f"{type(exc).__name__}: {exc}"))
    report["ok"] = not any(report[k] for k in ("A1", "A2", "A3", "A4", "gap"))
    return report


def check_extension_closed(a, b, phi: Angle) -> dict:
    a, b = B.as_object(a), B.as_object(b)
    for x in (a, b):
        if not B.is_semistable(x) or B.object_phase(x) != phi:
            raise NotSemistable(f"{x} is not semistable of the given phase")
    results = []
    options = [("zero", a + b)]
    if B.hom_dim(b, a, 1):
        try:
            options.append(("nonzero", B.extension(a, b)))
        except UnresolvedTag as exc:
            results.append({"tag": "nonzero", "member": None, "note": str(exc)})
    for kind, obj in options:
        jh = [j for x in obj.atoms for j in B.jordan_holder(x)]
        member = bool(jh) and all(B.atom_phase(j) == phi for j in jh)
        results.append({"tag": kind, "member": member, "object": str(obj), "jh_length": len(jh)})
    return {"ok": all(r["member"] is not False for r in results), "extensions": results}


def lattice_basis(vectors) -> list:
    """Echelon basis of the integer lattice spanned by 2-vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(2):
        piv, rest = None, []
        for r in rows:
            if r[col] == 0:
                rest.append(r)
                continue
            if piv is None:
                piv = r
                continue
            a, b = piv, r
            while b[col]:
                q = a[col] // b[col]
                a, b = b, [x - q * y for x, y in zip(a, b)]
            piv = a
            if any(b):
                rest.append(b)
        if piv is not None:
            basis.append([-x for x in piv] if piv[col] < 0 else piv)
        rows = rest
    return basis


@dataclass
class WindowSample:
    """Phase, charge and Jordan-Holder length of every semistable in a sample."""
    entries: list
    kappa: int


def window_sample(sample, kappa) -> WindowSample:
    kv = kappa_value(kappa)
    atoms, gens, _ = _semistables(sample)
    entries = []
    for a in atoms:
        entries.append((B.atom_phase(a), B.central_charge(a), a.jordan))
    for g in gens:
        if not B.is_semistable(g.base):
            continue
        entries.append((lifted_phase(g, kv), lifted_charge(g),
                        sum(len(B.jordan_holder(x)) for x in g.base.atoms)))
    return WindowSample(entries, kv)


def _window_bounds(center: Angle, eta: Fraction):
    if eta == Fraction(1, 4):
        return add_quarter(center, -1), add_quarter(center, 1)
    return None


def check_local_finiteness(center: Angle, eta, sample, kappa) -> dict:
    """Discreteness of the charge image and finite JH chains in a phase window.

    ``sample`` may be a list of objects or a prepared ``WindowSample``.  For
    the half-width 1/4 the window ends are exact phases; other widths fall
    back to float comparison.
    """
    eta = Fraction(eta)
    if not 0 < eta < Fraction(1, 2):
        raise BadWindow("window half-width must lie strictly between 0 and 1/2")
    ws = sample if isinstance(sample, WindowSample) else window_sample(sample, kappa)
    bounds = _window_bounds(center, eta)
    if bounds is not None:
        lo, hi = bounds
        in_window = [(c, n) for p, c, n in ws.entries if lo < p < hi]
    else:
        flo, fhi = center.approx() - float(eta), center.approx() + float(eta)
        in_window = [(c, n) for p, c, n in ws.entries if flo < p.approx() < fhi]
    D = 1
    for c, _ in in_window:
        D = math.lcm(D, c.re.denominator, c.im.denominator)
    vecs = sorted({(int(c.re * D), int(c.im * D)) for c, _ in in_window})
    lengths = [n for _, n in in_window]
    return {
        "ok": all(n > 0 for n in lengths),
        "exact_window": bounds is not None,
        "denominator": D,
        "basis": lattice_basis(vecs),
        "in_window": len(in_window),
        "max_jh_length": max(lengths, default=0),
    }
