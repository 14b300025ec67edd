"""Free associative algebras over :class:`Scalar` with oriented rewrite rules.

Words are tuples of generator symbols (the empty tuple is the unit).  A
:class:`Presentation` fixes a total order on generators, optional integer
weights, and rules ``lhs -> rhs`` with every word of ``rhs`` strictly below
``lhs`` in weighted degree-lexicographic order.

Normal forms are computed left to right: a normal word followed by one more
letter can only contain a rule left-hand side as a suffix, so
``NF(w.g)`` is found by suffix lookup and memoised per ``(w, g)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from .scalars import ONE, ZERO, Scalar

Word = Tuple
DEFAULT_STEP_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class UnknownGenerator(KeyError):
    pass


class OrderViolation(ValueError):
    pass


def _budget_from_env():
    raw = os.environ.get("QGEO_STEP_BUDGET")
    return int(raw) if raw else DEFAULT_STEP_BUDGET


def gen_str(g):
    if isinstance(g, tuple):
        return f"{g[0]}@{g[1]}"
    return str(g)


class Element:
    """Finite Scalar-linear combination of words.  Treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def _wrap(cls, terms):
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def word(cls, w, coeff=ONE):
        return cls._wrap({tuple(w): coeff} if coeff else {})

    @classmethod
    def gen(cls, g):
        return cls._wrap({(g,): ONE})

    @classmethod
    def scalar(cls, c):
        c = c if isinstance(c, Scalar) else Scalar(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def one(cls):
        return cls._wrap({(): ONE})

    @classmethod
    def zero(cls):
        return cls._wrap({})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, w):
        return self.terms.get(tuple(w), ZERO)

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, Element):
            if isinstance(other, (int, Scalar)):
                other = Element.scalar(other)
            else:
                return NotImplemented
        return Element._wrap(_add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Element._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            if isinstance(other, (int, Scalar)):
                other = Element.scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Element.scalar(other) - self

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar(c)
        if not c:
            return Element.zero()
        return Element._wrap({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        """Free (unreduced) product; Scalars act by scaling."""
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, w1 + w2, c1 * c2)
        return Element._wrap(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, f):
        return Element({w: f(c) for w, c in self.terms.items()})

    def map_words(self, f):
        out = {}
        for w, c in self.terms.items():
            _acc(out, tuple(f(w)), c)
        return Element._wrap(out)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == Element.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self, key=None):
        if key is None:
            key = lambda w: (len(w), tuple(map(gen_str, w)))  # noqa: E731
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({str(self)!r})"


def _acc(d, w, c):
    s = d.get(w)
    if s is None:
        if c:
            d[w] = c
    else:
        s = s + c
        if s:
            d[w] = s
        else:
            del d[w]


def _add_into(d, terms, scale=None):
    for w, c in terms.items():
        _acc(d, w, c if scale is None else c * scale)
    return d


def _coef_text(c: Scalar):
    s = str(c)
    if len(c.num) > 1 or not c.is_polynomial():
        return f"({s})"
    return s


def format_word(w, sep="."):
    return sep.join(gen_str(g) for g in w) if w else "1"


def format_element(e: Element, key=None, word_fmt=format_word):
    """DSL text for an element: ``c * w + ...`` with ``.`` concatenation."""
    if not e.terms:
        return "0"
    parts = []
    for w, c in e.sorted_terms(key):
        neg = False
        if len(c.num) == 1 and c.is_polynomial():
            (m, v), = c.num.items()
            if v < 0:
                neg, c = True, -c
        ws = word_fmt(w)
        if c == ONE:
            body = ws
        elif not w:
            body = _coef_text(c)
        else:
            body = f"{_coef_text(c)} * {ws}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_element(self.rhs)}"


class Presentation:
    """Generators with a monomial order and oriented rewrite rules."""

    def __init__(self, gens, rules=(), weights=None, name=None, step_budget=None, params=None):
        gens = list(gens)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        self.name = name
        self.gens = tuple(gens)
        self.index = {g: k for k, g in enumerate(gens)}
        self.weights = {g: 1 for g in gens}
        if weights:
            for g, w in weights.items():
                if g not in self.index:
                    raise UnknownGenerator(g)
                if w < 0:
                    raise ValueError("negative generator weight")
                self.weights[g] = int(w)
        self.params = params
        self.step_budget = step_budget if step_budget is not None else _budget_from_env()
        self.rules: Dict[Word, Element] = {}
        for r in rules:
            if isinstance(r, RewriteRule):
                lhs, rhs = r.lhs, r.rhs
            else:
                lhs, rhs = r
            self._add_rule(tuple(lhs), rhs)
        self._lhs_lengths = sorted({len(l) for l in self.rules})
        self._append_cache = {}
        self._steps = 0

    def _add_rule(self, lhs, rhs):
        if not isinstance(rhs, Element):
            rhs = Element.scalar(rhs)
        if not lhs:
            raise OrderViolation("rule with empty left-hand side")
        for g in lhs:
            if g not in self.index:
                raise UnknownGenerator(g)
        lk = self.word_key(lhs)
        for w in rhs.terms:
            for g in w:
                if g not in self.index:
                    raise UnknownGenerator(g)
            if not self.word_key(w) < lk:
                raise OrderViolation(
                    f"rule {format_word(lhs)} -> ... has term {format_word(w)} not below its lhs"
                )
        if lhs in self.rules:
            raise ValueError(f"two rules with left-hand side {format_word(lhs)}")
        self.rules[lhs] = rhs

    # -- order ------------------------------------------------------------
    def word_key(self, w):
        idx = self.index
        return (sum(self.weights[g] for g in w), tuple(idx[g] for g in w))

    def word_degree(self, w):
        return len(w)

    def rule_list(self):
        return [RewriteRule(l, r) for l, r in sorted(self.rules.items(), key=lambda t: self.word_key(t[0]))]

    def max_rule_degree(self):
        return max((len(l) for l in self.rules), default=0)

    # -- reduction ----------------------------------------------------------
    def _append(self, word, g):
        key = (word, g)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        w = word + (g,)
        rhs = None
        n = len(w)
        for L in self._lhs_lengths:
            if L > n:
                break
            rhs = self.rules.get(w[n - L:])
            if rhs is not None:
                break
        if rhs is None:
            out = {w: ONE}
        else:
            self._steps += 1
            if self._steps > self.step_budget:
                raise BudgetExceeded(f"more than {self.step_budget} reductions")
            prefix = w[: n - L]
            out = {}
            for rw, c in rhs.terms.items():
                for w2, c2 in self._concat(prefix, rw).items():
                    _acc(out, w2, c * c2)
        self._append_cache[key] = out
        return out

    def _concat(self, prefix, letters):
        """NF of prefix.letters where prefix is already normal."""
        cur = {prefix: ONE}
        for g in letters:
            nxt = {}
            for w, c in cur.items():
                for w2, c2 in self._append(w, g).items():
                    _acc(nxt, w2, c * c2)
            cur = nxt
            if not cur:
                break
        return cur

    def _start(self):
        self._steps = 0

    def normal_form(self, e) -> Element:
        if not isinstance(e, Element):
            e = Element.scalar(e)
        self._start()
        out = {}
        for w, c in e.terms.items():
            for g in w:
                if g not in self.index:
                    raise UnknownGenerator(g)
            for w2, c2 in self._concat((), w).items():
                _acc(out, w2, c * c2)
        return Element._wrap(out)

    NF = normal_form

    def mul(self, a: Element, b: Element) -> Element:
        """NF(a*b) for normal a, b."""
        self._start()
        out = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                for w, c in self._concat(w1, w2).items():
                    _acc(out, w, c1 * c2 * c)
        return Element._wrap(out)

    def product(self, *elements):
        acc = Element.one()
        for e in elements:
            acc = self.mul(acc, e)
        return acc

    def power(self, a, n):
        acc = Element.one()
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    def gen(self, g):
        if g not in self.index:
            raise UnknownGenerator(g)
        return Element.gen(g)

    def is_normal_word(self, w):
        n = len(w)
        for i in range(n):
            for L in self._lhs_lengths:
                if i + L > n:
                    break
                if w[i : i + L] in self.rules:
                    return False
        return True

    def normal_words(self, max_degree):
        """All normal words of length <= max_degree, shortest first."""
        out = [()]
        layer = [()]
        for _ in range(max_degree):
            nxt = []
            for w in layer:
                for g in self.gens:
                    v = w + (g,)
                    if not any(v[len(v) - L :] in self.rules for L in self._lhs_lengths if L <= len(v)):
                        nxt.append(v)
            out.extend(nxt)
            layer = nxt
        return out

    def element_key(self, w):
        return self.word_key(w)

    def format(self, e):
        return format_element(e, key=self.word_key)

    # -- equality (structural) ---------------------------------------------
    def signature(self):
        return (self.gens, tuple(sorted((self.index[g], w) for g, w in self.weights.items())), self.rules)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.gens == other.gens
            and self.weights == other.weights
            and self.rules == other.rules
        )

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return f"Presentation({self.name!r}, gens={list(map(gen_str, self.gens))}, rules={len(self.rules)})"

    def substitute(self, bindings, name=None):
        """Presentation with every rule coefficient evaluated under bindings."""
        from .scalars import substitute

        rules = [(l, r.map_coeffs(lambda c: substitute(c, bindings))) for l, r in self.rules.items()]
        return Presentation(self.gens, rules, self.weights, name or self.name, self.step_budget, self.params)


def normal_form(e: Element, P: Presentation) -> Element:
    return P.normal_form(e)


def commutator(a: Element, b: Element, P: Presentation) -> Element:
    a = P.normal_form(a)
    b = P.normal_form(b)
    return P.mul(a, b) - P.mul(b, a)


# -- critical pairs ---------------------------------------------------------


@dataclass
class CriticalPair:
    word: Word
    rule1: Word
    rule2: Word
    kind: str  # "overlap" | "inclusion"
    residual: Element

    @property
    def resolved(self):
        return self.residual.is_zero()


@dataclass
class ConfluenceReport:
    max_degree: int
    pairs: list = field(default_factory=list)

    @property
    def violations(self):
        return [p for p in self.pairs if not p.resolved]

    @property
    def ok(self):
        return not self.violations


def critical_words(P: Presentation, max_degree: int):
    """Yield (word, lhs1, pos1, lhs2, pos2, kind) ambiguities up to max_degree."""
    lhss = sorted(P.rules, key=P.word_key)
    for l1 in lhss:
        for l2 in lhss:
            # proper overlap: suffix of l1 == prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= max_degree:
                        yield w, l1, 0, l2, len(l1) - k, "overlap"
            # inclusion: l2 strictly inside l1
            if l1 != l2 and len(l2) <= len(l1) and len(l1) <= max_degree:
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i : i + len(l2)] == l2:
                        yield l1, l1, 0, l2, i, "inclusion"


def _apply_at(P, w, lhs, pos):
    rhs = P.rules[lhs]
    pre, post = w[:pos], w[pos + len(lhs) :]
    return Element({pre + rw + post: c for rw, c in rhs.terms.items()})


def overlap_confluence(P: Presentation, max_degree: int) -> ConfluenceReport:
    """Resolve every critical pair of P whose ambiguity word has length <= max_degree."""
    if max_degree < P.max_rule_degree():
        raise ValueError("max_degree must be at least the largest rule degree")
    report = ConfluenceReport(max_degree)
    for w, l1, p1, l2, p2, kind in critical_words(P, max_degree):
        a = P.normal_form(_apply_at(P, w, l1, p1))
        b = P.normal_form(_apply_at(P, w, l2, p2))
        report.pairs.append(CriticalPair(w, l1, l2, kind, a - b))
    return report


# -- canonical serialisation ----------------------------------------------


def element_to_json(e: Element, P: Presentation | None = None):
    key = P.word_key if P is not None else None
    return [{"word": [_gen_json(g) for g in w], "coeff": str(c)} for w, c in e.sorted_terms(key)]


def _gen_json(g):
    return list(g) if isinstance(g, tuple) else g


def element_from_json(data, params=None) -> Element:
    from .dsl import parse_scalar

    out = {}
    for t in data:
        w = tuple(tuple(g) if isinstance(g, list) else g for g in t["word"])
        _acc(out, w, parse_scalar(t["coeff"], params))
    return Element._wrap(out)


def rules_from_relations(relations: Iterable[Element], P_gens, weights=None, name=None, params=None):
    """Row-reduce homogeneous-ish relations into oriented rules.

    Each relation is an Element that should vanish.  Gaussian elimination on
    the coefficient matrix (columns ordered by decreasing word key) gives a
    reduced echelon basis; each row becomes ``lead -> -(rest)/lead_coeff``.
    """
    tmp = Presentation(P_gens, (), weights)
    rows = []
    for r in relations:
        if r.terms:
            rows.append(dict(r.terms))
    basis = []  # list of (lead, row) in echelon form
    for row in rows:
        row = dict(row)
        for lead, brow in basis:
            c = row.get(lead)
            if c:
                for w, v in brow.items():
                    _acc(row, w, -c * v)
        if not row:
            continue
        lead = max(row, key=tmp.word_key)
        inv = row[lead].inverse()
        row = {w: v * inv for w, v in row.items()}
        # back-substitute into existing basis rows
        new_basis = []
        for l2, b2 in basis:
            c = b2.get(lead)
            if c:
                b2 = dict(b2)
                for w, v in row.items():
                    _acc(b2, w, -c * v)
            new_basis.append((l2, b2))
        basis = new_basis + [(lead, row)]
    rules = []
    for lead, row in basis:
        rhs = {w: -v for w, v in row.items() if w != lead}
        rules.append((lead, Element(rhs)))
    return Presentation(P_gens, rules, weights, name, params=params)
