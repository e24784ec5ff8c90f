"""A small line-oriented language for objects, cobordisms and commands.

::

    # bindings
    object O = brick(r=1,d=0,x=0/1,m=0)[0]^1
    object P = brick(0,1,0/1,0) + O[1]
    gen G = I^3(O)[0]
    cob V = ends[(1,O[1]@g(0;1,0)),(3,O@g(0;1,0))] tags[(2,1)=zero]
    cone C = cone( G[-1] -> H[-1] -> 0 ; tags=[nonzero:W, zero] )
    # commands
    hn V kappa=4 trace
    k0 --modulus 2 --bound 4

Every node carries the line and column where it starts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DSLSyntaxError, UndefinedName

COMMANDS = ("hn", "charge", "lift", "axioms", "k0", "theta", "localfin", "trace", "fixtures")
BINDERS = ("object", "cob", "gen", "cone")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<arrow>->)
  | (?P<flag>--[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],;=+^@:/])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Tok(kind, m.group(), line, pos + 1))
        pos = m.end()
    return out


@dataclass
class Node:
    line: int
    col: int


@dataclass
class BrickTerm(Node):
    r: int
    d: int
    x: Fraction
    m: int
    shift: int
    jordan: int


@dataclass
class RefTerm(Node):
    name: str
    shift: Optional[int]


@dataclass
class ObjExpr(Node):
    terms: list


@dataclass
class EndNode(Node):
    height: int
    obj: ObjExpr
    grading: Optional[tuple]


@dataclass
class TagNode(Node):
    kind: str
    label: Optional[str]


@dataclass
class CobNode(Node):
    ends: list
    tags: list  # ((i, j), TagNode)


@dataclass
class GenNode(Node):
    height: int
    obj: ObjExpr
    shift: int


@dataclass
class ConeItem(Node):
    name: Optional[str]  # None for the zero object
    shift: int


@dataclass
class ConeNode(Node):
    items: list
    tags: list


@dataclass
class Binding(Node):
    kind: str
    name: str
    value: Node


@dataclass
class Command(Node):
    name: str
    args: list
    options: dict


@dataclass
class Script:
    bindings: dict = field(default_factory=dict)
    order: list = field(default_factory=list)  # bindings and commands in source order
    commands: list = field(default_factory=list)


class _Parser:
    def __init__(self, toks, line, known):
        self.toks, self.i, self.line, self.known = toks, 0, line, known

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        if tok is None:
            col = (self.toks[-1].col + len(self.toks[-1].text)) if self.toks else 1
            raise DSLSyntaxError(msg + " at end of line", self.line, col)
        raise DSLSyntaxError(f"{msg}, found {tok.text!r}", tok.line, tok.col)

    def take(self, text=None, kind=None) -> Tok:
        t = self.peek()
        if t is None or (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            self.fail(f"expected {text or kind}")
        self.i += 1
        return t

    def accept(self, text) -> bool:
        t = self.peek()
        if t is not None and t.text == text:
            self.i += 1
            return True
        return False

    def int_(self) -> int:
        return int(self.take(kind="int").text)

    def frac(self) -> Fraction:
        num = self.int_()
        if self.accept("/"):
            den = self.int_()
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def done(self):
        if self.peek() is not None:
            self.fail("unexpected trailing input")

    def shift_suffix(self):
        if self.peek() is not None and self.peek().text == "[":
            self.take("[")
            k = self.int_()
            self.take("]")
            return k
        return None

    def brick(self, start) -> BrickTerm:
        self.take("(")
        vals, keys = {}, ["r", "d", "x", "m"]
        pos = 0
        while True:
            t = self.peek()
            if t is not None and t.kind == "name" and self.peek(1) is not None and self.peek(1).text == "=":
                key = self.take(kind="name").text
                if key not in keys:
                    self.fail(f"unknown brick field {key!r}", t)
                self.take("=")
            else:
                if pos >= len(keys):
                    self.fail("too many brick fields")
                key = keys[pos]
            vals[key] = self.frac() if key == "x" else self.int_()
            pos += 1
            if not self.accept(","):
                break
        self.take(")")
        if "r" not in vals or "d" not in vals:
            self.fail("brick needs r and d", start)
        shift = self.shift_suffix()
        jordan = 1
        if self.accept("^"):
            jordan = self.int_()
        x = vals.get("x", Fraction(0))
        return BrickTerm(start.line, start.col, vals["r"], vals["d"], x, vals.get("m", 0),
                         0 if shift is None else shift, jordan)

    def ref(self, tok, kinds) -> RefTerm:
        if tok.text not in self.known:
            raise UndefinedName(f"name {tok.text!r} is not defined", tok.line, tok.col)
        if kinds and self.known[tok.text] not in kinds:
            self.fail(f"{tok.text!r} is a {self.known[tok.text]}, expected {' or '.join(kinds)}", tok)
        return RefTerm(tok.line, tok.col, tok.text, self.shift_suffix())

    def obj(self) -> ObjExpr:
        start = self.peek()
        if start is None:
            self.fail("expected an object")
        terms = []
        while True:
            t = self.take(kind="name")
            if t.text == "brick":
                terms.append(self.brick(t))
            else:
                terms.append(self.ref(t, ("object",)))
            if not self.accept("+"):
                break
        return ObjExpr(start.line, start.col, terms)

    def tag(self) -> TagNode:
        t = self.take(kind="name")
        if t.text not in ("zero", "nonzero", "unknown"):
            self.fail("expected zero, nonzero or unknown", t)
        label = None
        if t.text == "nonzero" and self.accept(":"):
            label = self.take(kind="name").text
        return TagNode(t.line, t.col, t.text, label)

    def cob(self, start) -> CobNode:
        self.take("ends")
        self.take("[")
        ends = []
        while True:
            p = self.take("(")
            h = self.int_()
            self.take(",")
            o = self.obj()
            g = None
            if self.accept("@"):
                self.take("g")
                self.take("(")
                w = self.int_()
                self.take(";")
                a = self.int_()
                self.take(",")
                b = self.int_()
                self.take(")")
                g = (w, a, b)
            self.take(")")
            ends.append(EndNode(p.line, p.col, h, o, g))
            if not self.accept(","):
                break
        self.take("]")
        tags = []
        if self.accept("tags"):
            self.take("[")
            if not self.accept("]"):
                while True:
                    self.take("(")
                    i = self.int_()
                    self.take(",")
                    j = self.int_()
                    self.take(")")
                    self.take("=")
                    tags.append(((i, j), self.tag()))
                    if not self.accept(","):
                        break
                self.take("]")
        return CobNode(start.line, start.col, ends, tags)

    def gen(self, start) -> GenNode:
        self.take("I")
        self.take("^")
        h = self.int_()
        self.take("(")
        o = self.obj()
        self.take(")")
        s = self.shift_suffix()
        return GenNode(start.line, start.col, h, o, 0 if s is None else s)

    def cone(self, start) -> ConeNode:
        self.take("cone")
        self.take("(")
        items = []
        while True:
            t = self.peek()
            if t is not None and t.kind == "int" and t.text == "0":
                self.i += 1
                items.append(ConeItem(t.line, t.col, None, 0))
            else:
                t = self.take(kind="name")
                r = self.ref(t, ("gen",))
                items.append(ConeItem(t.line, t.col, t.text, 0 if r.shift is None else r.shift))
            if not self.accept("->"):
                break
        tags = []
        if self.accept(";"):
            self.take("tags")
            self.take("=")
            self.take("[")
            if not self.accept("]"):
                while True:
                    tags.append(self.tag())
                    if not self.accept(","):
                        break
                self.take("]")
        self.take(")")
        if len(tags) not in (0, len(items) - 1):
            self.fail(f"cone with {len(items)} items needs {len(items) - 1} tags", start)
        return ConeNode(start.line, start.col, items, tags)

    def command(self, t) -> Command:
        args, opts = [], {}
        while self.peek() is not None:
            a = self.take()
            if a.kind == "flag":
                key = a.text[2:]
                nxt = self.peek()
                if nxt is not None and nxt.kind in ("int", "name") and nxt.text not in self.known \
                        and not (self.peek(1) is not None and self.peek(1).text == "="):
                    opts[key] = self._value()
                else:
                    opts[key] = True
            elif a.kind == "name" and self.peek() is not None and self.peek().text == "=":
                self.take("=")
                opts[a.text] = self._value()
            elif a.kind == "name":
                if a.text not in self.known and t.text not in ("k0", "theta", "fixtures"):
                    if a.text in ("trace",):
                        opts["trace"] = True
                        continue
                    raise UndefinedName(f"name {a.text!r} is not defined", a.line, a.col)
                args.append(a.text)
            else:
                self.fail("unexpected argument", a)
        return Command(t.line, t.col, t.text, args, opts)

    def _value(self):
        t = self.take()
        if t.kind == "int":
            if self.accept("/"):
                return Fraction(int(t.text), self.int_())
            return int(t.text)
        if t.kind == "name":
            return t.text
        self.fail("expected a value", t)


def parse(text: str) -> Script:
    script = Script()
    known = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        toks = tokenize(body, lineno)
        p = _Parser(toks, lineno, known)
        head = p.take(kind="name")
        if head.text in BINDERS:
            name = p.take(kind="name")
            p.take("=")
            if head.text == "object":
                value = p.obj()
            elif head.text == "cob":
                value = p.cob(name)
            elif head.text == "gen":
                value = p.gen(name)
            else:
                value = p.cone(name)
            p.done()
            b = Binding(head.line, head.col, head.text, name.text, value)
            known[name.text] = head.text
            script.bindings[name.text] = b
            script.order.append(b)
        elif head.text in COMMANDS:
            cmd = p.command(head)
            script.commands.append(cmd)
            script.order.append(cmd)
        else:
            raise DSLSyntaxError(f"unknown statement {head.text!r}", head.line, head.col)
    return script


# pretty printing

def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def show_obj(o: ObjExpr) -> str:
    parts = []
    for t in o.terms:
        if isinstance(t, BrickTerm):
            parts.append(f"brick(r={t.r},d={t.d},x={_frac(t.x)},m={t.m})[{t.shift}]^{t.jordan}")
        else:
            parts.append(t.name + ("" if t.shift is None else f"[{t.shift}]"))
    return " + ".join(parts)


def show_tag(t: TagNode) -> str:
    return f"nonzero:{t.label}" if t.kind == "nonzero" and t.label else t.kind


def _show_value(v) -> str:
    if isinstance(v, Fraction):
        return _frac(v) if v.denominator != 1 else str(v.numerator)
    return str(v)


def pretty(script: Script) -> str:
    lines = []
    for node in script.order:
        if isinstance(node, Binding):
            v = node.value
            if node.kind == "object":
                body = show_obj(v)
            elif node.kind == "gen":
                body = f"I^{v.height}({show_obj(v.obj)})[{v.shift}]"
            elif node.kind == "cob":
                ends = []
                for e in v.ends:
                    g = "" if e.grading is None else "@g({};{},{})".format(*e.grading)
                    ends.append(f"({e.height},{show_obj(e.obj)}{g})")
                body = "ends[" + ",".join(ends) + "]"
                if v.tags:
                    body += " tags[" + ",".join(f"({i},{j})={show_tag(t)}" for (i, j), t in v.tags) + "]"
            else:
                items = ["0" if it.name is None else f"{it.name}[{it.shift}]" for it in v.items]
                body = "cone( " + " -> ".join(items)
                if v.tags:
                    body += " ; tags=[" + ", ".join(show_tag(t) for t in v.tags) + "]"
                body += " )"
            lines.append(f"{node.kind} {node.name} = {body}")
        else:
            parts = [node.name] + list(node.args)
            for k, val in node.options.items():
                parts.append(k if val is True else f"{k}={_show_value(val)}")
            lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
