"""Command-line front end: run a script of bindings and commands.

Usage::

    cobstab script.cob --format json
    echo 'k0 --modulus 2 --bound 4' | cobstab
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import base as B
from . import dsl
from .cones import ZERO, Leaf, MorphismTag, nonzero, render, unflatten, ZERO_TAG, UNKNOWN_TAG
from .errors import BadModulus, CobstabError, DSLSyntaxError
from .hn import check_local_finiteness, hn_of_spec, normalize, verify_axioms
from .k0 import check_assumptions, k0_presentation, omega_lag_presentation, theta_map
from .lift import (CobordismSpec, End, LiftedGenerator, central_charge_lifted,
                   cone_decomposition, lifted_charge, lifted_phase, validate_kappa)
from .phase import Angle, frac_str
from .sampling import random_spec

# phases whose direction has an exact rational angle
_EXACT = {(-1, 0): Fraction(1), (0, 1): Fraction(1, 2), (1, 1): Fraction(1, 4),
          (-1, 1): Fraction(3, 4)}


def phase_str(p: Angle) -> str:
    t = _EXACT.get(p.dir)
    if t is not None:
        return frac_str(p.winding + t)
    return str(p)


def gen_str(g: LiftedGenerator) -> str:
    return str(g)


class Env:
    """Evaluated bindings of a script."""

    def __init__(self, modulus=None):
        self.modulus = modulus
        self.values = {}
        self.kinds = {}
        self.witnesses = {}

    def obj(self, node: dsl.ObjExpr) -> B.BaseObject:
        atoms = []
        for t in node.terms:
            if isinstance(t, dsl.BrickTerm):
                if self.modulus is not None:
                    N = self.modulus
                    if (t.x * N).denominator != 1 or not 0 <= t.m < N:
                        raise BadModulus(f"line {t.line}: point {t} does not fit modulus {N}")
                try:
                    atoms.append(B.Atom(B.Brick(t.r, t.d, t.x, t.m), t.jordan, t.shift))
                except ValueError as exc:
                    raise DSLSyntaxError(str(exc), t.line, t.col) from exc
            else:
                o = self.values[t.name]
                atoms.extend(o.shifted(t.shift or 0).atoms)
        return B.BaseObject(atoms)

    def tag(self, t: dsl.TagNode) -> MorphismTag:
        if t.kind == "zero":
            return ZERO_TAG
        if t.kind == "unknown":
            return UNKNOWN_TAG
        if t.label and self.kinds.get(t.label) == "object":
            self.witnesses[t.label] = self.values[t.label]
        return nonzero(t.label)

    def bind(self, b: dsl.Binding):
        v = b.value
        if b.kind == "object":
            val = self.obj(v)
        elif b.kind == "gen":
            val = LiftedGenerator(v.height, v.shift, self.obj(v.obj))
        elif b.kind == "cob":
            ends = []
            for e in v.ends:
                g = None if e.grading is None else B.Grading(e.grading[0], e.grading[1:])
                ends.append(End(e.height, self.obj(e.obj), g))
            val = CobordismSpec(ends, {k: self.tag(t) for k, t in v.tags})
        else:
            items = [ZERO if it.name is None else Leaf(self.values[it.name], it.shift)
                     for it in v.items]
            tags = [self.tag(t) for t in v.tags] if v.tags else None
            val = unflatten(items, tags)
        self.values[b.name] = val
        self.kinds[b.name] = b.kind


def _filtration_json(filt):
    return [{"phase": phase_str(p), "generators": [gen_str(g) for g in gs]}
            for p, gs in filt.factors]


def _opt(cmd, options, key, default):
    # per-command options win over command-line flags, which win over defaults
    if key in cmd.options:
        return cmd.options[key]
    return default if options.get(key) is None else options[key]


class Runner:
    def __init__(self, options=None):
        self.options = dict(options or {})
        self.env = Env(self.options.get("modulus"))

    def kappa(self, cmd):
        return validate_kappa(int(_opt(cmd, self.options, "kappa", 4)))

    def lookup(self, cmd, kinds):
        if not cmd.args:
            raise CobstabError(f"{cmd.name} needs a name argument")
        name = cmd.args[0]
        if self.env.kinds[name] not in kinds:
            raise CobstabError(f"{name} is a {self.env.kinds[name]}, expected {' or '.join(kinds)}")
        return name, self.env.values[name], self.env.kinds[name]

    def cmd_hn(self, cmd, force_trace=False):
        _, val, kind = self.lookup(cmd, ("cob", "cone"))
        k = self.kappa(cmd)
        if kind == "cob":
            filt, trace = hn_of_spec(val, k, self.env.witnesses)
        else:
            filt, trace = normalize(val, k, self.env.witnesses, refine=True)
        out = {"kappa": k.value, "factors": _filtration_json(filt),
               "charge": filt.charge().to_json()}
        if force_trace or _opt(cmd, self.options, "trace", False):
            out["trace"] = [" ".join(map(str, s)) for s in trace.steps]
            out["gaps"] = [{"pair": [a, b], "source": phase_str(g.source_phase),
                            "target": phase_str(g.target_phase), "ok": g.ok}
                           for (a, b), g in sorted(trace.gaps.items())]
        return out

    def cmd_trace(self, cmd):
        return self.cmd_hn(cmd, force_trace=True)

    def cmd_charge(self, cmd):
        _, val, kind = self.lookup(cmd, ("object", "gen", "cob", "cone"))
        if kind == "object":
            c = B.central_charge(val)
        elif kind == "gen":
            c = lifted_charge(val)
        elif kind == "cob":
            c = central_charge_lifted(cone_decomposition(val))
        else:
            c = central_charge_lifted(val)
        return c.to_json()

    def cmd_lift(self, cmd):
        _, val, _ = self.lookup(cmd, ("cob",))
        e = cone_decomposition(val)
        return {"cone": render(e), "charge": central_charge_lifted(e).to_json()}

    def _sample(self, names):
        names = names or sorted(self.env.values)
        return [self.env.values[n] for n in names if self.env.kinds[n] in ("object", "gen", "cob")]

    def cmd_axioms(self, cmd):
        rep = verify_axioms(self._sample(cmd.args), self.kappa(cmd))
        out = {k: [list(map(str, x)) if isinstance(x, tuple) else str(x) for x in rep[k]]
               for k in ("A1", "A2", "A3", "A4", "gap")}
        out["counts"] = rep["counts"]
        out["ok"] = rep["ok"]
        return out

    def _model_args(self, cmd):
        N = int(_opt(cmd, self.options, "modulus", 2))
        bound = int(_opt(cmd, self.options, "bound", 4))
        return N, bound

    def cmd_k0(self, cmd):
        N, bound = self._model_args(cmd)
        g = k0_presentation(N, bound)
        return {"modulus": N, "bound": bound, "generators": len(g.generators),
                "relations": len(g.relations), "invariants": g.invariants()}

    def cmd_theta(self, cmd):
        N, bound = self._model_args(cmd)
        drop = cmd.options.get("drop")
        drop = () if drop is None else (str(drop),)
        src = omega_lag_presentation(N, bound, drop=drop)
        dst = k0_presentation(N, bound)
        h = theta_map(src, dst)
        rep = check_assumptions(N, bound, drop_omega=drop)
        return {"modulus": N, "bound": bound, "iso": h.iso, "well_defined": h.well_defined,
                "surjective": h.surjective, "injective": h.injective,
                "omega_invariants": h.src_invariants, "k0_invariants": h.dst_invariants,
                "assumptions": {k: rep[k]["ok"] for k in ("S1", "S2", "S3")},
                "witness": rep["S3"]["witness"] or (rep["S2"]["witness"] and str(rep["S2"]["witness"]))}

    def cmd_localfin(self, cmd):
        _, val, kind = self.lookup(cmd, ("object", "gen"))
        k = self.kappa(cmd)
        center = B.object_phase(val) if kind == "object" else lifted_phase(val, k.value)
        eta = Fraction(_opt(cmd, self.options, "eta", Fraction(1, 4)))
        rep = check_local_finiteness(center, eta, self._sample(cmd.args[1:]), k)
        return {"center": phase_str(center), "eta": frac_str(eta), "ok": rep["ok"],
                "basis": rep["basis"], "denominator": rep["denominator"],
                "in_window": rep["in_window"], "max_jh_length": rep["max_jh_length"]}

    def cmd_fixtures(self, cmd):
        count = int(cmd.options.get("count", 5))
        seed = int(cmd.options.get("seed", 0))
        N = int(_opt(cmd, self.options, "modulus", 3))
        rng = random.Random(seed)
        lines = []
        for n in range(count):
            spec = random_spec(rng, modulus=N)
            lines.append(spec_to_dsl(f"V{n}", spec))
            lines.append(f"hn V{n} kappa=4")
        return {"script": "\n".join(lines) + "\n"}

    def run_command(self, cmd):
        return getattr(self, "cmd_" + cmd.name)(cmd)


def _atom_dsl(a: B.Atom) -> str:
    b = a.brick
    return f"brick(r={b.r},d={b.d},x={b.x.numerator}/{b.x.denominator},m={b.m})[{a.shift}]^{a.jordan}"


def spec_to_dsl(name: str, spec: CobordismSpec) -> str:
    """Canonical script line for a cobordism spec."""
    ends = []
    for e in spec.ends:
        obj = " + ".join(_atom_dsl(a) for a in e.obj.atoms) or None
        if obj is None:
            continue
        g = "" if e.grading is None else str(e.grading)
        ends.append(f"({e.height},{obj}{g})")
    line = f"cob {name} = ends[" + ",".join(ends) + "]"
    if spec.tags:
        parts = [f"({i},{j})={t}" for (i, j), t in sorted(spec.tags.items())]
        line += " tags[" + ",".join(parts) + "]"
    return line


def run(script: dsl.Script, options=None):
    """Execute a parsed script; return (records, number of failed commands)."""
    runner = Runner(options)
    records, failed = [], 0
    index = 0
    for node in script.order:
        if isinstance(node, dsl.Binding):
            try:
                runner.env.bind(node)
            except (CobstabError, ValueError) as exc:
                records.append({"index": None, "binding": node.name, "line": node.line,
                                "error": type(exc).__name__, "message": str(exc)})
                failed += 1
            continue
        rec = {"index": index, "command": node.name, "line": node.line,
               "args": list(node.args)}
        try:
            rec["result"] = runner.run_command(node)
        except (CobstabError, ValueError, KeyError) as exc:
            rec["error"] = type(exc).__name__
            rec["message"] = str(exc)
            failed += 1
        records.append(rec)
        index += 1
    return records, failed


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return set(v) == {"re", "im"}
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or _is_leaf(x) for x in v)
    return not (isinstance(v, str) and "\n" in v)


def _scalar(v) -> str:
    if isinstance(v, dict):
        return f"{v['re']} + {v['im']}i"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _text(value, indent="") -> list:
    """Indented lines for a nested result."""
    if _is_leaf(value):
        return [indent + _scalar(value)]
    if isinstance(value, str):
        return [indent + ln for ln in value.rstrip("\n").split("\n")]
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_leaf(v):
                lines.append(f"{indent}{k}: {_scalar(v)}")
            else:
                lines.append(f"{indent}{k}:")
                lines.extend(_text(v, indent + "  "))
        return lines
    for v in value:
        sub = _text(v, indent + "  ")
        lines.append(indent + "- " + sub[0][len(indent) + 2:])
        lines.extend(sub[1:])
    return lines


def format_records(records, fmt="text") -> str:
    if fmt == "json":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"
    out = []
    for r in records:
        if r.get("index") is None:
            out.append(f"binding {r['binding']} (line {r['line']}): {r['error']}: {r['message']}")
            continue
        head = f"[{r['index']}] {r['command']} {' '.join(r['args'])}".rstrip()
        if "error" in r:
            out.append(f"{head}: {r['error']}: {r['message']}")
        else:
            out.append(head)
            out.extend(_text(r["result"], "  "))
    return "\n".join(out) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="cobstab", description="Run a cobstab script.")
    p.add_argument("script", nargs="?", help="script file; standard input if omitted or -")
    p.add_argument("--kappa", type=int, default=None, help="default kappa (even, >= 4)")
    p.add_argument("--modulus", type=int, default=None, help="modulus N for points and monodromy")
    p.add_argument("--bound", type=int, default=None, help="degree bound for k0 and theta")
    p.add_argument("--trace", action="store_true", default=None, help="include rewrite traces")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.script and args.script != "-":
        try:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"cobstab: cannot read {args.script}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        text = sys.stdin.read()
    try:
        script = dsl.parse(text)
    except DSLSyntaxError as exc:
        print(f"{args.script if args.script not in (None, '-') else '<stdin>'}:{exc.line}:{exc.col}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 2
    options = {"kappa": args.kappa, "modulus": args.modulus, "bound": args.bound,
               "trace": args.trace}
    records, failed = run(script, options)
    sys.stdout.write(format_records(records, args.format))
    for r in records:
        if "error" in r:
            where = f"command {r['index']}" if r.get("index") is not None else f"binding {r['binding']}"
            print(f"line {r['line']}: {where}: {r['error']}: {r['message']}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
