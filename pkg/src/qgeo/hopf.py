"""Tensor powers of presentations, algebra maps, and Hopf-axiom verification.

Tensor factors are realised inside one presentation whose generators are
tagged ``(g, k)`` for copy ``k``.  Copy-1 generators sort below copy-2
generators, so the cross rules ``(h,2)(g,1) -> Psi(h (x) g)`` push every word
into the shape ``(copy-1 word)(copy-2 word)...`` and a normal word *is* a
pure tensor of normal words.  With ``Psi`` the flip this is the ordinary
tensor product; any other ``Psi`` gives the braided tensor product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

from .freealg import (
    Element,
    Presentation,
    UnknownGenerator,
    _acc,
    format_element,
    format_word,
)
from .reports import CheckReport, timed
from .scalars import ONE, ZERO, Scalar


class ConstructionFailure(ValueError):
    pass


# -- tensor algebras -----------------------------------------------------------


def flip_table(gens_left, gens_right):
    """Psi(h (x) g) = g (x) h for h in the right factor, g in the left one."""
    return {(h, g): {((g,), (h,)): ONE} for h in gens_right for g in gens_left}


def tensor_algebra(factors, psi=None, name=None):
    """Tensor product of presentations ``factors[0] (x) factors[1] (x) ...``.

    ``psi(a, b)`` returns the cross-relation table for factor indices a < b:
    a dict ``{(h, g): {(w_left, w_right): coeff}}`` giving ``Psi(h (x) g)``
    for h a generator of factor b and g one of factor a.  ``None`` means flip.
    """
    gens, weights, rules = [], {}, []
    for k, P in enumerate(factors, start=1):
        for g in P.gens:
            gens.append((g, k))
            weights[(g, k)] = P.weights[g]
        for lhs, rhs in P.rules.items():
            rules.append((tuple((g, k) for g in lhs), _tag(rhs, k)))
    for a in range(1, len(factors) + 1):
        for b in range(a + 1, len(factors) + 1):
            Pa, Pb = factors[a - 1], factors[b - 1]
            table = psi(a, b) if psi is not None else None
            if table is None:
                table = flip_table(Pa.gens, Pb.gens)
            for h in Pb.gens:
                for g in Pa.gens:
                    out = {}
                    for (wl, wr), c in table[(h, g)].items():
                        _acc(out, tuple((x, a) for x in wl) + tuple((y, b) for y in wr), c)
                    rules.append((((h, b), (g, a)), Element(out)))
    params = None
    for P in factors:
        if P.params is not None:
            params = P.params if params is None else params.union(P.params)
    return Presentation(gens, rules, weights, name, factors[0].step_budget, params)


def _tag(e: Element, k):
    return Element({tuple((g, k) for g in w): c for w, c in e.terms.items()})


def tensor(*words_or_elements):
    """Pure tensor of elements (untagged) as an element of the tagged algebra.

    The result is the concatenation ``(a,1)(b,2)...`` which is normal when each
    factor is normal.
    """
    out = {(): ONE}
    for k, e in enumerate(words_or_elements, start=1):
        if not isinstance(e, Element):
            e = Element.word(e) if isinstance(e, tuple) else Element.scalar(e)
        nxt = {}
        for w, c in out.items():
            for v, d in e.terms.items():
                _acc(nxt, w + tuple((g, k) for g in v), c * d)
        out = nxt
    return Element(out)


def split_word(w, k):
    """Split a normal tagged word into its k factor words."""
    parts = [[] for _ in range(k)]
    last = 0
    for g, c in w:
        if c < last:
            raise ValueError(f"word {w} is not copy-sorted")
        last = c
        parts[c - 1].append(g)
    return tuple(tuple(p) for p in parts)


def tensor_terms(e: Element, k):
    """{(w1, ..., wk): coeff} view of a normal element of a k-fold tensor algebra."""
    return {split_word(w, k): c for w, c in e.terms.items()}


def retag(e: Element, mapping):
    """Move copy indices: mapping {old: new}."""
    return Element({tuple((g, mapping[k]) for g, k in w): c for w, c in e.terms.items()})


def format_tensor(e: Element, k, P: Optional[Presentation] = None):
    """DSL text for a tensor element, factors joined by ``|``."""

    def key(w):
        parts = split_word(w, k)
        if P is None:
            return tuple((len(p), tuple(map(str, p))) for p in parts)
        return tuple(P.word_key(p) for p in parts)

    def fmt(w):
        return "|".join(format_word(p) for p in split_word(w, k))

    return format_element(e, key=key, word_fmt=fmt)


# -- algebra maps ------------------------------------------------------------


class AlgebraMap:
    """Unital multiplicative extension of a generator assignment.

    ``target`` is a Presentation (possibly a tensor algebra); elements of the
    base field are handled by a presentation with no generators.
    """

    def __init__(self, source: Presentation, target: Presentation, images: Mapping, name=None, anti=False):
        self.source = source
        self.target = target
        self.anti = anti
        self.name = name
        self.images = {}
        for g in source.gens:
            if g not in images:
                raise UnknownGenerator(f"no image for generator {g!r}")
            img = images[g]
            if not isinstance(img, Element):
                img = Element.scalar(img)
            self.images[g] = target.normal_form(img)
        for g in images:
            if g not in source.index:
                raise UnknownGenerator(g)
        self._cache = {(): Element.one()}

    def word(self, w):
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        prev = self.word(w[:-1])
        img = self.images[w[-1]]
        out = self.target.mul(img, prev) if self.anti else self.target.mul(prev, img)
        self._cache[w] = out
        return out

    def __call__(self, e) -> Element:
        if not isinstance(e, Element):
            e = Element.scalar(e)
        out = {}
        for w, c in e.terms.items():
            for v, d in self.word(w).terms.items():
                _acc(out, v, c * d)
        return Element(out)


SCALARS = Presentation((), (), name="k")


def extend_algebra_map(spec: Mapping, source: Presentation, target) -> AlgebraMap:
    if target is None or target == "scalars":
        target = SCALARS
    return AlgebraMap(source, target, spec)


def scalar_value(e: Element) -> Scalar:
    """Coefficient of the unit word (for maps into the base field)."""
    return e.terms.get((), ZERO)


def check_relations_respected(f: AlgebraMap, source: Presentation = None, report=None, fmt=None) -> CheckReport:
    source = source or f.source
    report = report or CheckReport(source.name or "?", f"{f.name or 'map'}-respects-relations")
    fmt = fmt or f.target.format
    with timed(report):
        for rule in source.rule_list():
            residual = f(Element.word(rule.lhs)) - f(rule.rhs)
            if residual:
                report.fail("relation", str(rule), fmt(residual))
    return report


# -- Hopf data ------------------------------------------------------------------


@dataclass(eq=False)
class HopfSpec:
    """Presentation plus generator-level coproduct, counit and antipode.

    ``coproduct[g]`` is an Element of the tagged tensor square.  ``braiding``
    (an object with a ``table()`` returning Psi on generator pairs) switches
    the tensor powers to braided ones.  ``inverses`` records declared
    two-sided inverses of generators, used to solve for the antipode.
    """

    P: Presentation
    coproduct: Dict
    counit: Dict
    antipode: Optional[Dict] = None
    braiding: object = None
    inverses: Dict = field(default_factory=dict)
    name: str = ""
    annotations: list = field(default_factory=list)

    def __post_init__(self):
        self.name = self.name or self.P.name or "hopf"
        for g in self.P.gens:
            if g not in self.coproduct:
                raise ConstructionFailure(f"{self.name}: no coproduct for {g!r}")
            if g not in self.counit:
                raise ConstructionFailure(f"{self.name}: no counit for {g!r}")
        self.counit = {g: (c if isinstance(c, Scalar) else Scalar(c)) for g, c in self.counit.items()}
        self._t2 = self._t3 = None
        self._maps = {}

    # tensor powers
    def _psi(self, a, b):
        if self.braiding is None:
            return None
        return self.braiding.table()

    @property
    def T2(self) -> Presentation:
        if self._t2 is None:
            self._t2 = tensor_algebra([self.P, self.P], self._psi, name=f"{self.name}^2")
        return self._t2

    @property
    def T3(self) -> Presentation:
        if self._t3 is None:
            self._t3 = tensor_algebra([self.P] * 3, self._psi, name=f"{self.name}^3")
        return self._t3

    @property
    def is_braided(self):
        return self.braiding is not None

    # structure maps
    @property
    def delta(self) -> AlgebraMap:
        if "delta" not in self._maps:
            self._maps["delta"] = AlgebraMap(self.P, self.T2, self.coproduct, name="coproduct")
        return self._maps["delta"]

    @property
    def eps(self) -> AlgebraMap:
        if "eps" not in self._maps:
            self._maps["eps"] = AlgebraMap(self.P, SCALARS, {g: Element.scalar(c) for g, c in self.counit.items()}, name="counit")
        return self._maps["eps"]

    def _delta_into(self, first):
        key = ("d12" if first else "d23")
        if key not in self._maps:
            mapping = {1: 1, 2: 2} if first else {1: 2, 2: 3}
            imgs = {g: retag(self.coproduct[g], mapping) for g in self.P.gens}
            self._maps[key] = AlgebraMap(self.P, self.T3, imgs)
        return self._maps[key]

    def _inject(self, k, n):
        key = ("inj", k, n)
        if key not in self._maps:
            T = self.T2 if n == 2 else self.T3
            self._maps[key] = AlgebraMap(self.P, T, {g: Element.gen((g, k)) for g in self.P.gens})
        return self._maps[key]

    def S(self, e: Element) -> Element:
        """Antipode, extended anti-multiplicatively (braided-anti for braided specs)."""
        if self.antipode is None:
            raise ConstructionFailure(f"{self.name}: no antipode")
        if self.is_braided:
            return self._braided_S(e)
        if "S" not in self._maps:
            self._maps["S"] = AlgebraMap(self.P, self.P, self.antipode, anti=True)
        return self._maps["S"](e)

    def _braided_S(self, e):
        cache = self._maps.setdefault("bS", {(): Element.one()})
        P = self.P

        def word(w):
            hit = cache.get(w)
            if hit is not None:
                return hit
            # S(g w') = m Psi(S(g) (x) S(w'))
            sg = P.normal_form(self.antipode[w[0]])
            sw = word(w[1:])
            out = {}
            for a, ca in sg.terms.items():
                for b, cb in sw.terms.items():
                    for (l, r), c in self.braiding.extend(a, b).items():
                        for v, d in P.mul(Element.word(l), Element.word(r)).terms.items():
                            _acc(out, v, ca * cb * c * d)
            res = Element(out)
            cache[w] = res
            return res

        out = {}
        for w, c in e.terms.items():
            for v, d in word(w).terms.items():
                _acc(out, v, c * d)
        return Element(out)

    def Delta(self, e):
        return self.delta(e)

    def epsilon(self, e) -> Scalar:
        return scalar_value(self.eps(e))

    def fmt2(self, e):
        return format_tensor(e, 2, self.P)

    def fmt3(self, e):
        return format_tensor(e, 3, self.P)

    def __eq__(self, other):
        if not isinstance(other, HopfSpec):
            return NotImplemented

        def norm(d):
            return {k: v for k, v in (d or {}).items()}

        return (
            self.P == other.P
            and norm(self.coproduct) == norm(other.coproduct)
            and norm(self.counit) == norm(other.counit)
            and norm(self.antipode) == norm(other.antipode)
            and self.braiding == other.braiding
        )

    __hash__ = object.__hash__


# -- antipode solving ----------------------------------------------------------


def _invert(e: Element, P: Presentation, inverses):
    """Inverse of e when it is c*word-of-invertibles or a declared inverse value."""
    e = P.normal_form(e)
    if len(e.terms) == 1:
        (w, c), = e.terms.items()
        if all(g in inverses for g in w):
            inv = Element.scalar(c.inverse())
            for g in reversed(w):
                inv = P.mul(inv, P.normal_form(inverses[g]))
            return inv
    for g, v in inverses.items():
        if P.normal_form(v) == e:
            return Element.gen(g)
    return None


def solve_antipode(P: Presentation, coproduct, counit, inverses=None, name="hopf"):
    """Solve m(id (x) S)Delta g = eps(g) 1 for S on generators.

    For each generator g the terms ``a_j (x) g`` of the coproduct must have
    an invertible sum a = sum a_j; the remaining right factors must only involve generators whose
    antipode is already known.  Then ``S(g) = a^{-1}(eps(g) - sum a_k S(b_k))``.
    Raises ConstructionFailure with a diagnostic when no order works.
    """
    inverses = inverses or {}
    S = {}
    pending = list(P.gens)

    def S_word(w):
        out = Element.one()
        for g in w:
            out = P.mul(S[g], out)
        return out

    while pending:
        progress = False
        for g in list(pending):
            terms = tensor_terms(coproduct[g], 2)
            left = Element({u: c for (u, v), c in terms.items() if v == (g,)})
            inv = _invert(left, P, inverses) if left else None
            if inv is None:
                continue
            others = [(uv, c) for uv, c in terms.items() if uv[1] != (g,)]
            if any(x not in S for (u, v), _ in others for x in v):
                continue
            acc = Element.scalar(counit[g])
            for (u, v), c in others:
                acc = acc - P.mul(Element.word(u, c), S_word(v))
            S[g] = P.mul(inv, acc)
            pending.remove(g)
            progress = True
        if not progress:
            raise ConstructionFailure(
                f"{name}: cannot solve antipode on generators {pending} "
                "(no invertible left factor paired with the generator)"
            )
    return S


# -- axiom checks --------------------------------------------------------------------


def _words(H: HopfSpec, max_degree):
    return H.P.normal_words(max_degree) if max_degree else [(g,) for g in H.P.gens]


def coproduct_respects_relations(H: HopfSpec) -> CheckReport:
    r = CheckReport(H.name, "coproduct-respects-relations")
    return check_relations_respected(H.delta, H.P, r, fmt=H.fmt2)


def counit_respects_relations(H: HopfSpec) -> CheckReport:
    r = CheckReport(H.name, "counit-respects-relations")
    return check_relations_respected(H.eps, H.P, r, fmt=lambda e: str(scalar_value(e)))


def antipode_respects_relations(H: HopfSpec) -> CheckReport:
    r = CheckReport(H.name, "antipode-respects-relations")
    with timed(r):
        for rule in H.P.rule_list():
            res = H.S(Element.word(rule.lhs)) - H.S(rule.rhs)
            if res:
                r.fail("relation", str(rule), H.P.format(res))
    return r


def iterated_coproducts(H: HopfSpec, e: Element):
    """((Delta (x) id) Delta e, (id (x) Delta) Delta e) in the tensor cube."""
    T3 = H.T3
    d12, d23 = H._delta_into(True), H._delta_into(False)
    i1, i3 = H._inject(1, 3), H._inject(3, 3)
    left, right = Element.zero(), Element.zero()
    for (u, v), c in tensor_terms(H.delta(e), 2).items():
        left = left + T3.mul(d12(Element.word(u)), i3(Element.word(v))).scale(c)
        right = right + T3.mul(i1(Element.word(u)), d23(Element.word(v))).scale(c)
    return left, right


def coassociativity_check(H: HopfSpec, max_degree: int = 0) -> CheckReport:
    r = CheckReport(H.name, "coassociativity", max_degree)
    with timed(r):
        for w in _words(H, max_degree):
            left, right = iterated_coproducts(H, Element.word(w))
            res = left - right
            if res:
                r.fail("word", format_word(w), H.fmt3(res))
    return r


def counit_check(H: HopfSpec, max_degree: int = 0) -> CheckReport:
    r = CheckReport(H.name, "counit", max_degree)
    with timed(r):
        for w in _words(H, max_degree):
            target = H.P.normal_form(Element.word(w))
            D = tensor_terms(H.delta(Element.word(w)), 2)
            left = Element.zero()
            right = Element.zero()
            for (u, v), c in D.items():
                left = left + Element.word(v, c * H.epsilon(Element.word(u)))
                right = right + Element.word(u, c * H.epsilon(Element.word(v)))
            for side, val in (("(eps (x) id)Delta", left), ("(id (x) eps)Delta", right)):
                res = val - target
                if res:
                    r.fail("word", f"{side} {format_word(w)}", H.P.format(res))
    return r


def antipode_check(H: HopfSpec, max_degree: int = 0) -> CheckReport:
    r = CheckReport(H.name, "antipode", max_degree)
    if H.antipode is None:
        r.skipped = True
        r.notes.append("no antipode supplied")
        return r
    P = H.P
    with timed(r):
        for w in _words(H, max_degree):
            target = Element.scalar(H.epsilon(Element.word(w)))
            D = tensor_terms(H.delta(Element.word(w)), 2)
            left, right = Element.zero(), Element.zero()
            for (u, v), c in D.items():
                left = left + P.mul(H.S(Element.word(u)), Element.word(v)).scale(c)
                right = right + P.mul(Element.word(u), H.S(Element.word(v))).scale(c)
            for side, val in (("m(S (x) id)Delta", left), ("m(id (x) S)Delta", right)):
                res = val - target
                if res:
                    r.fail("word", f"{side} {format_word(w)}", P.format(res))
    return r


def counit_antipode_check(H: HopfSpec, max_degree: int = 0):
    return [counit_check(H, max_degree), antipode_check(H, max_degree)]


def hopf_axioms(H: HopfSpec, max_degree: int = 4):
    """Every axiom check for a HopfSpec, one report each."""
    reports = [coproduct_respects_relations(H), counit_respects_relations(H)]
    if H.antipode is not None and not H.is_braided:
        reports.append(antipode_respects_relations(H))
    reports.append(coassociativity_check(H, max_degree))
    reports.append(counit_check(H, max_degree))
    reports.append(antipode_check(H, max_degree))
    for rep in reports:
        rep.degree_bound = max_degree if rep.degree_bound is None and "respects" not in rep.check else rep.degree_bound
    return reports
