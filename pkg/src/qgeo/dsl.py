"""Text format for algebras, Hopf data, braidings and bicharacters.

    params q;
    algebra qplane {
      gens x, y;
      rule y.x -> q * x.y;
    }
    coproduct qplane { x -> x|1 + 1|x; y -> y|1 + 1|y; }
    counit qplane { x -> 0; y -> 0; }
    antipode qplane { x -> -x; y -> -y; }
    braiding qplane { y|x -> q * x|y + (q^2 - 1) * y|x; ... }
    check qplane braided-hopf 3;

Expressions: ``+ -`` bind loosest, then ``|`` (tensor), then ``* / .``,
then unary minus and ``^``.  ``.`` concatenates words; ``i`` is the
imaginary unit; ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .freealg import Element, Presentation, format_word
from .hopf import ConstructionFailure, HopfSpec, format_tensor, solve_antipode, tensor
from .scalars import IMAG, ONE, ZERO, ParamSet, Scalar


class ParseError(ValueError):
    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.message = line, column, message


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+) | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[-+*/^.|(){};,<])
    """,
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    toks, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, pos - start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(Tok(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - start + 1))
    return toks


# -- expression values ------------------------------------------------------------------
# A value is (arity, {tuple of words: Scalar}); arity 0 is a plain scalar.


def _lift(v, k):
    a, terms = v
    if a == k:
        return terms
    if a == 0:
        c = terms.get((), ZERO)
        return {((),) * k: c} if c else {}
    raise ValueError(f"cannot use a {a}-fold tensor where a {k}-fold one is expected")


def _add(x, y, sign=1):
    k = max(x[0], y[0])
    out = dict(_lift(x, k))
    for w, c in _lift(y, k).items():
        s = out.get(w, ZERO) + (c if sign > 0 else -c)
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return (k, out)


def _mul(x, y):
    if x[0] == 0 or y[0] == 0:
        s, v = (x, y) if x[0] == 0 else (y, x)
        (c,) = s[1].values() if s[1] else (ZERO,)
        return (v[0], {w: d * c for w, d in v[1].items() if d * c})
    if x[0] != y[0]:
        raise ValueError("product of tensors of different length")
    out = {}
    for w1, c1 in x[1].items():
        for w2, c2 in y[1].items():
            w = tuple(a + b for a, b in zip(w1, w2))
            s = out.get(w, ZERO) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return (x[0], out)


def _tensor(x, y):
    a = x if x[0] else (1, _lift(x, 1))
    b = y if y[0] else (1, _lift(y, 1))
    out = {}
    for w1, c1 in a[1].items():
        for w2, c2 in b[1].items():
            out[w1 + w2] = out.get(w1 + w2, ZERO) + c1 * c2
    return (a[0] + b[0], {w: c for w, c in out.items() if c})


def _scalar(c):
    return (0, {(): c} if c else {})


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(tok.line, tok.col, msg)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind in ("op", "name"):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")

    def name(self):
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t.text

    # expressions
    def expr(self, env):
        if self.tok.text in (";", "}", ")", "->", ",") or self.tok.kind == "eof":
            self.error("expected an expression")
        v = self.tensor(env)
        while self.tok.text in ("+", "-"):
            op = self.tok
            self.i += 1
            v = self._wrap(op, _add, v, self.tensor(env), 1 if op.text == "+" else -1)
        return v

    def _wrap(self, tok, f, *args):
        try:
            return f(*args)
        except (ValueError, ArithmeticError) as e:
            self.error(str(e), tok)

    def tensor(self, env):
        v = self.product(env)
        while self.tok.text == "|":
            op = self.tok
            self.i += 1
            v = self._wrap(op, _tensor, v, self.product(env))
        return v

    def product(self, env):
        v = self.unary(env)
        while self.tok.text in ("*", ".", "/"):
            op = self.tok
            self.i += 1
            rhs = self.unary(env)
            if op.text == "/":
                if rhs[0] != 0:
                    self.error("can only divide by a scalar", op)
                (c,) = rhs[1].values() if rhs[1] else (ZERO,)
                if not c:
                    self.error("division by zero", op)
                v = _mul(v, _scalar(c.inverse()))
            else:
                v = self._wrap(op, _mul, v, rhs)
        return v

    def unary(self, env):
        if self.accept("-"):
            return _mul(_scalar(-ONE), self.unary(env))
        if self.accept("+"):
            return self.unary(env)
        return self.power(env)

    def power(self, env):
        base = self.atom(env)
        if self.tok.text == "^":
            op = self.tok
            self.i += 1
            neg = self.accept("-")
            if self.tok.kind != "num":
                self.error("expected an integer exponent")
            n = int(self.tok.text)
            self.i += 1
            if neg:
                if base[0] != 0:
                    self.error("negative powers only apply to scalars", op)
                (c,) = base[1].values() if base[1] else (ZERO,)
                if not c:
                    self.error("division by zero", op)
                return _scalar(c**-n)
            out = _scalar(ONE)
            for _ in range(n):
                out = self._wrap(op, _mul, out, base)
            return out
        return base

    def atom(self, env):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return _scalar(Scalar(int(t.text)))
        if t.kind == "name":
            self.i += 1
            if t.text in env.gens:
                return (1, {((t.text,),): ONE})
            if t.text == "i":
                return _scalar(IMAG)
            if env.params is None or t.text in env.params:
                return _scalar(Scalar.param(t.text))
            self.error(f"unknown symbol {t.text!r}", t)
        if self.accept("("):
            v = self.expr(env)
            self.expect(")")
            return v
        self.error(f"unexpected {t.text or 'end of input'!r}")


@dataclass
class _Env:
    gens: frozenset = frozenset()
    params: Optional[ParamSet] = None


# -- documents ------------------------------------------------------------------------------


@dataclass
class AlgebraBlock:
    name: str
    gens: List[str]
    weights: Dict[str, int] = field(default_factory=dict)
    rules: List = field(default_factory=list)  # (lhs word, rhs Element)


@dataclass
class DslDocument:
    params: List[str] = field(default_factory=list)
    algebras: Dict[str, AlgebraBlock] = field(default_factory=dict)
    coproducts: Dict[str, Dict] = field(default_factory=dict)
    counits: Dict[str, Dict] = field(default_factory=dict)
    antipodes: Dict[str, Dict] = field(default_factory=dict)
    inverses: Dict[str, Dict] = field(default_factory=dict)
    braidings: Dict[str, Dict] = field(default_factory=dict)
    bicharacters: Dict[str, Dict] = field(default_factory=dict)
    checks: List = field(default_factory=list)  # (model, check, degree or None)

    def presentation(self, name) -> Presentation:
        a = self.algebras[name]
        return Presentation(a.gens, a.rules, a.weights or None, name=name, params=ParamSet(self.params))

    def hopf(self, name) -> HopfSpec:
        """HopfSpec for an algebra with coproduct and counit blocks.

        Without an antipode block the antipode is solved on generators when
        possible (and left out otherwise).
        """
        from .braided import Braiding

        P = self.presentation(name)
        if name not in self.coproducts or name not in self.counits:
            raise ConstructionFailure(f"{name}: coproduct and counit blocks are required")
        inverses = self.inverses.get(name, {})
        S = self.antipodes.get(name)
        psi = Braiding(self.braidings[name], name) if name in self.braidings else None
        if S is None and psi is None:
            try:
                S = solve_antipode(P, self.coproducts[name], self.counits[name], inverses, name)
            except ConstructionFailure:
                S = None
        return HopfSpec(P, self.coproducts[name], self.counits[name], S, braiding=psi, inverses=inverses, name=name)

    def bicharacter(self, name):
        from .braided import Bicharacter

        return Bicharacter(self.bicharacters[name], self.coproducts[name], self.counits[name])

    def names(self):
        return list(self.algebras)


def _word_of(p, v, tok, env):
    if v[0] != 1 or len(v[1]) != 1:
        p.error("left-hand side must be a single word", tok)
    ((w,), c), = v[1].items()
    if c != ONE or not w:
        p.error("left-hand side must be a single word", tok)
    return w


def _element(v, tok, p):
    if v[0] > 1:
        p.error("expected an algebra element, found a tensor", tok)
    return Element({w[0] if w else (): c for w, c in _lift(v, 1).items()})


def _tensor_element(v, k, tok, p):
    try:
        terms = _lift(v, k)
    except ValueError as e:
        p.error(str(e), tok)
    out = Element.zero()
    for ws, c in terms.items():
        out = out + tensor(*[Element.word(w) for w in ws]).scale(c)
    return out


def parse(text) -> DslDocument:
    p = _Parser(text)
    doc = DslDocument()
    env = _Env(params=ParamSet())
    while p.tok.kind != "eof":
        kw = p.tok
        word = p.name()
        if word == "params":
            names = [p.name()]
            while p.accept(","):
                names.append(p.name())
            p.expect(";")
            for n in names:
                if n == "i" or n in doc.params:
                    p.error(f"bad parameter name {n!r}", kw)
                doc.params.append(n)
            env = _Env(params=ParamSet(doc.params))
        elif word == "algebra":
            _algebra(p, doc, env)
        elif word in ("coproduct", "counit", "antipode", "inverse", "braiding", "bicharacter"):
            _data_block(p, doc, env, word)
        elif word == "check":
            model = p.name()
            check = _check_name(p)
            degree = None
            if p.tok.kind == "num":
                degree = int(p.tok.text)
                p.i += 1
            p.expect(";")
            doc.checks.append((model, check, degree))
        else:
            p.error(f"unknown statement {word!r}", kw)
    return doc


def _check_name(p):
    parts = [p.name()]
    while p.accept("-"):
        parts.append(p.name())
    return "-".join(parts)


def _algebra(p, doc, env):
    name_tok = p.tok
    name = p.name()
    if name in doc.algebras:
        p.error(f"algebra {name!r} defined twice", name_tok)
    p.expect("{")
    blk = AlgebraBlock(name, [])
    while not p.accept("}"):
        kw = p.tok
        word = p.name()
        if word == "gens":
            gens = [p.name()]
            while p.accept(","):
                gens.append(p.name())
            for g in gens:
                if g in blk.gens or g == "i" or g in doc.params:
                    p.error(f"bad generator name {g!r}", kw)
            blk.gens += gens
        elif word == "order":
            order = [p.name()]
            while p.accept("<"):
                order.append(p.name())
            if sorted(order) != sorted(blk.gens):
                p.error("order must list every generator exactly once", kw)
            blk.gens = order
        elif word == "weight":
            g = p.name()
            if g not in blk.gens:
                p.error(f"unknown generator {g!r}", kw)
            if p.tok.kind != "num":
                p.error("expected an integer weight")
            blk.weights[g] = int(p.tok.text)
            p.i += 1
        elif word == "rule":
            genv = _Env(frozenset(blk.gens), env.params)
            t = p.tok
            lhs = _word_of(p, p.expr(genv), t, genv)
            p.expect("->")
            t = p.tok
            rhs = _element(p.expr(genv), t, p)
            blk.rules.append((lhs, rhs))
        else:
            p.error(f"unknown algebra statement {word!r}", kw)
        p.expect(";")
    if blk.weights:
        blk.weights = {g: blk.weights.get(g, 1) for g in blk.gens}
    try:
        Presentation(blk.gens, blk.rules, blk.weights or None, name=name)
    except Exception as e:
        p.error(f"invalid presentation: {e}", name_tok)
    doc.algebras[name] = blk


def _data_block(p, doc, env, kind):
    name_tok = p.tok
    name = p.name()
    if name not in doc.algebras:
        p.error(f"unknown algebra {name!r}", name_tok)
    genv = _Env(frozenset(doc.algebras[name].gens), env.params)
    store = getattr(doc, {"coproduct": "coproducts", "counit": "counits", "antipode": "antipodes",
                          "inverse": "inverses", "braiding": "braidings", "bicharacter": "bicharacters"}[kind])
    data = store.setdefault(name, {})
    p.expect("{")
    while not p.accept("}"):
        t = p.tok
        lhs = p.expr(genv)
        p.expect("->")
        rt = p.tok
        rhs = p.expr(genv)
        p.expect(";")
        if kind in ("braiding", "bicharacter"):
            if lhs[0] != 2 or len(lhs[1]) != 1 or list(lhs[1].values())[0] != ONE:
                p.error("left-hand side must be g|h", t)
            (a, b), = lhs[1]
            if len(a) != 1 or len(b) != 1:
                p.error("left-hand side must be g|h", t)
            key = (a[0], b[0])
            if kind == "braiding":
                data[key] = {w: c for w, c in _lift_checked(p, rhs, 2, rt).items()}
            else:
                if rhs[0] != 0:
                    p.error("bicharacter values are scalars", rt)
                data[key] = rhs[1].get((), ZERO)
            continue
        g = _word_of(p, lhs, t, genv)
        if len(g) != 1:
            p.error("left-hand side must be a generator", t)
        g = g[0]
        if kind == "coproduct":
            data[g] = _tensor_element(rhs, 2, rt, p)
        elif kind == "counit":
            if rhs[0] != 0:
                p.error("counit values are scalars", rt)
            data[g] = rhs[1].get((), ZERO)
        else:
            data[g] = _element(rhs, rt, p)
    return data


def _lift_checked(p, v, k, tok):
    try:
        return _lift(v, k)
    except ValueError as e:
        p.error(str(e), tok)


def parse_scalar(text, params=None) -> Scalar:
    """Scalar from text; with ``params`` given, other names are errors."""
    if params is not None and not isinstance(params, ParamSet):
        params = ParamSet(params)
    p = _Parser(text)
    v = p.expr(_Env(params=params))
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return v[1].get((), ZERO)


def parse_element(text, P: Presentation, arity=1) -> Element:
    p = _Parser(text)
    t = p.tok
    v = p.expr(_Env(frozenset(P.gens), P.params))
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    if arity == 1:
        return _element(v, t, p)
    return _tensor_element(v, arity, t, p)


# -- printing ---------------------------------------------------------------------------------


def _scalar_text(c: Scalar):
    return str(c)


def _braid_text(terms, P):
    e = Element({tuple((g, 1) for g in l) + tuple((g, 2) for g in r): c for (l, r), c in terms.items()})
    return format_tensor(e, 2, P)


def print_model(H, name=None, bicharacter=None, checks=(), params=None) -> str:
    """DSL text for a HopfSpec (optionally with a bicharacter and check lines)."""
    P = H.P
    name = name or H.name
    if params is None:
        params = sorted(P.params) if P.params is not None else []
    lines = []
    if params:
        lines.append(f"params {', '.join(params)};")
        lines.append("")
    lines += print_presentation(P, name).splitlines()

    def block(kind, entries):
        lines.append("")
        lines.append(f"{kind} {name} {{")
        for lhs, rhs in entries:
            lines.append(f"  {lhs} -> {rhs};")
        lines.append("}")

    block("coproduct", [(g, format_tensor(H.coproduct[g], 2, P)) for g in P.gens])
    block("counit", [(g, _scalar_text(H.counit[g])) for g in P.gens])
    if H.antipode is not None:
        block("antipode", [(g, P.format(H.antipode[g])) for g in P.gens if g in H.antipode])
    if H.inverses:
        block("inverse", [(g, P.format(v)) for g, v in H.inverses.items()])
    if H.braiding is not None:
        tab = H.braiding.table()
        block("braiding", [(f"{a}|{b}", _braid_text(tab[(a, b)], P)) for a in P.gens for b in P.gens if (a, b) in tab])
    if bicharacter is not None:
        vals = bicharacter.values
        block(
            "bicharacter",
            [(f"{a}|{b}", _scalar_text(vals[(a, b)])) for a in P.gens for b in P.gens if (a, b) in vals],
        )
    if checks:
        lines.append("")
        for check, degree in checks:
            lines.append(f"check {name} {check}" + (f" {degree};" if degree is not None else ";"))
    return "\n".join(lines) + "\n"


def print_document(doc: DslDocument) -> str:
    parts = [f"params {', '.join(doc.params)};\n"] if doc.params else []
    for name in doc.algebras:
        checks = [(c, d) for m, c, d in doc.checks if m == name]
        if name not in doc.coproducts:
            parts.append(print_presentation(doc.presentation(name), name))
            continue
        H = doc.hopf(name)
        if name not in doc.antipodes:
            H.antipode = None
        bich = doc.bicharacter(name) if name in doc.bicharacters else None
        parts.append(print_model(H, name, bich, checks, params=[]))
    return "\n".join(parts)


def print_presentation(P: Presentation, name=None) -> str:
    lines = [f"algebra {name or P.name} {{", f"  gens {', '.join(P.gens)};"]
    for g in P.gens:
        if P.weights[g] != 1:
            lines.append(f"  weight {g} {P.weights[g]};")
    for r in P.rule_list():
        lines.append(f"  rule {format_word(r.lhs)} -> {P.format(r.rhs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
