"""Finite presentations of K0 and of the Lagrangian cobordism group.

Model with modulus N: a point is ``P = (x, m)`` in ``(Z/N)^2`` (position
``x/N`` on the circle and monodromy ``m``).  Generators are atoms whose brick
has rank at most ``max_rank`` and degree at most ``bound`` in absolute value,
with Jordan size 1 or 2 and shift 0 or 1.  Every generator maps to
``(rank, degree, P)`` in ``Z^2 + (Z/N)^2``; the relation families below all
lie in the kernel of that map.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import base as B
from .errors import BadModulus, GeneratorMismatch
from .snf import RowLattice, left_kernel, sparse_cokernel

K0_FAMILIES = ("line", "atiyah", "shift", "jordan")
OMEGA_FAMILIES = ("surgery", "atiyah_surgery", "shift_cobordism", "local_system")


@dataclass
class PresentedGroup:
    generators: list
    relations: list  # dicts column -> int
    families: list = field(default_factory=list)  # family name per relation
    name: str = ""

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.generators)}
        n = len(self.generators)
        for r in self.relations:
            if any(not 0 <= c < n for c in r):
                raise ValueError("relation refers to a missing generator")
        self._lattice = None

    def lattice(self) -> RowLattice:
        if self._lattice is None:
            self._lattice = RowLattice(self.relations)
        return self._lattice

    def invariants(self) -> list:
        return sparse_cokernel(self.lattice().rows(), len(self.generators))

    def dense(self) -> list:
        n = len(self.generators)
        out = []
        for r in self.relations:
            row = [0] * n
            for c, x in r.items():
                row[c] = x
            out.append(row)
        return out

    def to_text(self) -> str:
        lines = [f"# {self.name} generators={len(self.generators)} relations={len(self.relations)}"]
        for i, g in enumerate(self.generators):
            lines.append(f"g {i} {g}")
        for fam, r in zip(self.families, self.relations):
            lines.append("r " + fam + " " + " ".join(f"{c}:{x}" for c, x in sorted(r.items())))
        return "\n".join(lines) + "\n"

    def row(self, combo: dict) -> dict:
        """Relation row from a dict generator -> coefficient."""
        out = {}
        for g, x in combo.items():
            c = self.index[g]
            out[c] = out.get(c, 0) + x
        return {c: x for c, x in out.items() if x}


def _check_modulus(N):
    if not isinstance(N, int) or N < 2:
        raise BadModulus(f"modulus must be an integer >= 2, got {N!r}")


class Model:
    """Generator set and relation catalogue for modulus N and a degree bound."""

    def __init__(self, N: int, bound: int, max_rank: int = 2, hyperplane_degree: int = 3):
        _check_modulus(N)
        if bound < 1:
            raise ValueError("bound must be positive")
        self.N, self.bound = N, bound
        self.max_rank = max_rank
        self.hdeg = hyperplane_degree
        self.points = [(x, m) for x in range(N) for m in range(N)]
        slopes = [(0, 1)]
        for r in range(1, max_rank + 1):
            slopes += [(r, d) for d in range(-bound, bound + 1) if math.gcd(r, d) == 1]
        self.slopes = slopes
        gens = []
        # order matters for sparsity: composite generators come first so that
        # they are eliminated by unit pivots
        for jordan, shift in ((2, 1), (1, 1), (2, 0)):
            for r, d in sorted(slopes, key=lambda s: (-s[0], s[1])):
                for P in self.points:
                    gens.append(self.atom(r, d, P, jordan, shift))
        for r, d in sorted(slopes, key=lambda s: (-s[0], -s[1])):
            for P in self.points:
                gens.append(self.atom(r, d, P))
        self.generators = gens

    def atom(self, r, d, P, jordan=1, shift=0) -> B.Atom:
        x, m = P
        return B.Atom(B.Brick(r, d, Fraction(x % self.N, self.N), m % self.N), jordan, shift)

    def point(self, a: B.Atom) -> tuple:
        return (int(a.brick.x * self.N), a.brick.m)

    def invariant(self, a: B.Atom) -> tuple:
        """Image of a generator in Z^2 + (Z/N)^2."""
        c = (-1 if a.shift % 2 else 1) * a.jordan
        x, m = self.point(a)
        return (c * a.brick.r, c * a.brick.d, (c * x) % self.N, (c * m) % self.N)

    def _sub(self, P, Q):
        return ((P[0] - Q[0]) % self.N, (P[1] - Q[1]) % self.N)

    # relation families

    def line_rows(self):
        """O(D-Q) -> O(D) -> k(Q): [L(d,P)] - [L(d-1,P-Q)] - [k(Q)]."""
        for d in range(-self.bound + 1, self.bound + 1):
            for P in self.points:
                for Q in self.points:
                    yield {self.atom(1, d, P): 1, self.atom(1, d - 1, self._sub(P, Q)): -1,
                           self.atom(0, 1, Q): -1}

    def _atiyah(self, r, d, P, n):
        lo, hi = -self.hdeg * n, d + self.hdeg * n * (r - 1)
        if abs(lo) > self.bound or abs(hi) > self.bound:
            return None
        row = {}
        for g, x in ((self.atom(r, d, P), 1), (self.atom(1, lo, (0, 0)), -(r - 1)),
                     (self.atom(1, hi, P), -1)):
            row[g] = row.get(g, 0) + x
        return {g: x for g, x in row.items() if x}

    def atiyah_rows(self, twists=None):
        """Rank r bricks split as (r-1) copies of O(-n) plus (det E)((r-1)n)."""
        if twists is None:
            span = self.bound // self.hdeg + 1
            twists = range(-span, span + 1)
        for r, d in self.slopes:
            if r < 2:
                continue
            for P in self.points:
                for n in twists:
                    row = self._atiyah(r, d, P, n)
                    if row:
                        yield row

    def shift_rows(self):
        for g in self.generators:
            if g.shift == 0:
                yield {g: 1, g.shifted(1): 1}

    def jordan_rows(self):
        for g in self.generators:
            if g.jordan == 2 and g.shift == 0:
                yield {g: 1, B.Atom(g.brick, 1, 0): -2}

    def build(self, families: dict, name: str) -> PresentedGroup:
        gens = self.generators
        index = {g: i for i, g in enumerate(gens)}
        rows, fams = [], []
        for fam, it in families.items():
            for combo in it:
                rows.append({index[g]: x for g, x in combo.items()})
                fams.append(fam)
        return PresentedGroup(list(gens), rows, fams, name)


def k0_presentation(N: int, bound: int, drop=(), **kw) -> PresentedGroup:
    model = kw.pop("model", None) or Model(N, bound, **kw)
    fams = {"line": model.line_rows(), "atiyah": model.atiyah_rows(),
            "shift": model.shift_rows(), "jordan": model.jordan_rows()}
    return model.build({k: v for k, v in fams.items() if k not in drop}, "K0")


def omega_lag_presentation(N: int, bound: int, drop=(), **kw) -> PresentedGroup:
    """Cobordism relations: line surgeries, untwisted rank surgeries, shift
    cobordisms and local-system extension sequences."""
    model = kw.pop("model", None) or Model(N, bound, **kw)
    fams = {"surgery": model.line_rows(), "atiyah_surgery": model.atiyah_rows(twists=(0,)),
            "shift_cobordism": model.shift_rows(), "local_system": model.jordan_rows()}
    return model.build({k: v for k, v in fams.items() if k not in drop}, "Omega")


@dataclass
class GroupHom:
    matrix: list  # identity on generators, stored as a permutation list
    well_defined: bool
    surjective: bool
    injective: bool
    src_invariants: list
    dst_invariants: list

    @property
    def iso(self) -> bool:
        return (self.well_defined and self.surjective and self.injective
                and self.src_invariants == self.dst_invariants)


def theta_map(src: PresentedGroup, dst: PresentedGroup) -> GroupHom:
    """Identity on generators from src to dst, with an isomorphism verdict."""
    if src.generators != dst.generators:
        raise GeneratorMismatch("presentations use different generator lists")
    ls, ld = src.lattice(), dst.lattice()
    well = all(ld.contains(r) for r in src.relations)
    inj = well and all(ls.contains(r) for r in dst.relations)
    return GroupHom(list(range(len(src.generators))), well, True, inj,
                    src.invariants(), dst.invariants())


def check_assumptions(N: int, bound: int, drop_omega=(), **kw) -> dict:
    model = Model(N, bound, **kw)
    k0 = k0_presentation(N, bound, model=model)
    om = omega_lag_presentation(N, bound, drop=drop_omega, model=model)
    stable = [g for g in model.generators if g.jordan == 1 and g.shift == 0]
    report = {"S1": {"ok": True, "stable_generators": len(stable),
                     "classified_by": "slope, point, monodromy"}}
    lat = om.lattice()
    witness = None
    for fam, r in zip(k0.families, k0.relations):
        if not lat.contains(r):
            witness = (fam, {str(k0.generators[c]): x for c, x in sorted(r.items())})
            break
    report["S2"] = {"ok": witness is None, "witness": witness}
    witness = None
    for g in model.generators:
        if g.jordan == 1:
            continue
        parts = B.jordan_holder(g)
        combo = {g: 1}
        for p in parts:
            combo[p] = combo.get(p, 0) - 1
        if not lat.contains(om.row(combo)):
            witness = str(g)
            break
    report["S3"] = {"ok": witness is None, "witness": witness}
    report["ok"] = all(report[k]["ok"] for k in ("S1", "S2", "S3"))
    return report


def charge_row(a: B.Atom) -> list:
    c = B.central_charge(a)
    return [int(c.re), int(c.im)]


def euler_radical(atoms) -> dict:
    """Compare the kernel of the charge map with the radical of the Euler form."""
    atoms = list(atoms)
    n = len(atoms)
    C = [charge_row(a) for a in atoms]
    E = [[B.euler_form(a, b) for b in atoms] for a in atoms]
    ker = left_kernel(C)
    rad = left_kernel(E)

    def as_rows(vs):
        return [{i: x for i, x in enumerate(v) if x} for v in vs]
    lk, lr = RowLattice(as_rows(ker)), RowLattice(as_rows(rad))
    same = all(lr.contains(r) for r in as_rows(ker)) and all(lk.contains(r) for r in as_rows(rad))
    return {"equal": same, "kernel_rank": len(ker), "radical_rank": len(rad),
            "quotient_rank": n - len(ker), "kernel_basis": ker}


def sample_classes(N: int, bound: int, size: int, seed: int = 0) -> list:
    """Seeded sample of generators of the model, always containing O and k(p)."""
    model = Model(N, bound)
    rng = random.Random(seed)
    gens = list(model.generators)
    pick = rng.sample(gens, min(size, len(gens)))
    for must in (model.atom(1, 0, (0, 0)), model.atom(0, 1, (0, 0))):
        if must not in pick:
            pick.append(must)
    return pick


def saturation(N: int, bounds) -> list:
    """Invariants for a list of bounds, to see where they stop changing."""
    return [(b, k0_presentation(N, b).invariants()) for b in bounds]
