"""Finite groups, factorisations X = G.M, matched pairs and bicrossproducts.

Conventions for a factorisation X = G M (every x is uniquely g m):

* ``m . g = (m |> g)(m <| g)`` defines a left action of M on the set G and
  a right action of G on the set M.
* The bicrossproduct E = k(M) >|<| kG has basis ``delta_m (x) g`` with

      (delta_m g)(delta_n h) = [m <| g = n] delta_m gh
      Delta(delta_m g) = sum_{ab = m} delta_a (b |> g) (x) delta_b g
      eps(delta_m g) = [m = e],  1 = sum_m delta_m e
      S(delta_m g) = delta_{(m <| g)^-1} (m |> g)^-1

  so k(M) -> E -> kG is an extension of Hopf algebras.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, List

from .finhopf import AxiomFailure, FinHopf, check_hopf_morphism, hopf_axiom_reports
from .reports import CheckReport, timed
from .scalars import ONE, ZERO, Scalar

DEFAULT_ORDER_BOUND = 64


class NotAGroup(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class FinGroup:
    def __init__(self, labels, table, name=None, _checked=False):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        self.name = name or f"G{len(self.labels)}"
        n = len(self.labels)
        if not _checked:
            _verify_group(self.labels, self.table)
        self.identity = next(i for i in range(n) if all(self.table[i][j] == j for j in range(n)))
        self.inv = [next(j for j in range(n) if self.table[i][j] == self.identity) for i in range(n)]
        self.index = {l: k for k, l in enumerate(self.labels)}

    @property
    def order(self):
        return len(self.labels)

    def mul(self, a, b):
        return self.table[a][b]

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FinGroup({self.name!r}, order={self.order})"

    def closure(self, elems):
        """Subgroup generated by a set of indices."""
        sub = {self.identity} | set(elems)
        frontier = list(sub)
        while frontier:
            new = []
            for a in frontier:
                for b in list(sub):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in sub:
                            sub.add(c)
                            new.append(c)
            frontier = new
        return frozenset(sub)

    def subgroups(self):
        """All subgroups as frozensets of indices (sorted by order, then content)."""
        found = set()
        cyclic = {self.closure([g]) for g in range(self.order)}
        found |= cyclic
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if not C <= H:
                        J = self.closure(H | C)
                        if J not in found:
                            found.add(J)
                            new.add(J)
            frontier = new
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def subgroup(self, elems, name=None) -> "FinGroup":
        elems = sorted(elems)
        pos = {e: k for k, e in enumerate(elems)}
        table = [[pos[self.table[a][b]] for b in elems] for a in elems]
        return FinGroup([self.labels[e] for e in elems], table, name=name, _checked=True)

    def to_json(self):
        return {"labels": [str(l) for l in self.labels], "table": self.table}


def _verify_group(labels, table):
    n = len(labels)
    if n == 0:
        raise NotAGroup("empty table")
    if len(table) != n or any(len(r) != n for r in table):
        raise NotAGroup("table is not square over the labels")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise NotAGroup(f"closure fails at ({labels[i]}, {labels[j]})")
    ids = [i for i in range(n) if all(table[i][j] == j and table[j][i] == j for j in range(n))]
    if not ids:
        raise NotAGroup("no two-sided identity")
    e = ids[0]
    for i in range(n):
        if not any(table[i][j] == e and table[j][i] == e for j in range(n)):
            raise NotAGroup(f"no inverse for {labels[i]}")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAGroup(f"associativity fails at ({labels[a]}, {labels[b]}, {labels[c]})")


def group_from_table(labels, table, name=None) -> FinGroup:
    return FinGroup(labels, table, name)


# -- permutations ----------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, points=None):
    """Cycle notation like '(1 2 3)(4 5)' -> dict point -> image."""
    perm = {}
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return perm
    rest = _CYCLE.sub("", text).strip()
    if rest:
        raise ValueError(f"bad cycle notation {text!r}")
    for body in _CYCLE.findall(text):
        pts = [int(p) for p in body.replace(",", " ").split()]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle ({body})")
        for k, p in enumerate(pts):
            if p in perm:
                raise ValueError(f"point {p} in two cycles")
            perm[p] = pts[(k + 1) % len(pts)]
    return perm


def cycle_string(perm_tuple, points):
    seen, parts = set(), []
    img = dict(zip(points, perm_tuple))
    for p in points:
        if p in seen or img[p] == p:
            seen.add(p)
            continue
        cyc = [p]
        seen.add(p)
        q = img[p]
        while q != p:
            cyc.append(q)
            seen.add(q)
            q = img[q]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def group_from_perms(perm_gens, name=None, bound=DEFAULT_ORDER_BOUND) -> FinGroup:
    """Group generated by permutations, each given as a cycle string or list of cycle strings.

    Products compose right to left: (ab)(p) = a(b(p)).
    """
    gens = []
    for g in perm_gens:
        text = "".join(g) if isinstance(g, (list, tuple)) else g
        gens.append(parse_cycles(text))
    points = sorted(set().union(*(set(g) | set(g.values()) for g in gens)) or {1})
    as_tuple = [tuple(g.get(p, p) for p in points) for g in gens]
    idx = {p: k for k, p in enumerate(points)}
    identity = tuple(points)

    def compose(a, b):
        return tuple(a[idx[b[k]]] for k in range(len(points)))

    elems = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in as_tuple:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    new.append(y)
                    if len(elems) > bound:
                        raise BoundExceeded(f"group order exceeds bound {bound}")
        frontier = new
    pos = {e: k for k, e in enumerate(elems)}
    table = [[pos[compose(a, b)] for b in elems] for a in elems]
    labels = [cycle_string(e, points) for e in elems]
    return FinGroup(labels, table, name, _checked=True)


def group_from_json(data, name=None) -> FinGroup:
    if isinstance(data, str):
        data = json.loads(data)
    if "table" in data:
        return group_from_table(data["labels"], data["table"], name or data.get("name"))
    if "perm_gens" in data:
        return group_from_perms(data["perm_gens"], name or data.get("name"))
    raise ValueError("group JSON needs 'table' or 'perm_gens'")


def cyclic_group(n, name=None):
    labels = ["e"] + ["c" if k == 1 else f"c^{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FinGroup(labels, table, name or f"C{n}", _checked=True)


def direct_product(A: FinGroup, B: FinGroup, name=None):
    pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
    pos = {p: k for k, p in enumerate(pairs)}
    table = [[pos[(A.table[a][c], B.table[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    return FinGroup(labels, table, name or f"{A.name}x{B.name}", _checked=True)


def builtin_groups():
    C2 = cyclic_group(2)
    return {
        "C2": C2,
        "C3": cyclic_group(3),
        "C4": cyclic_group(4),
        "C2xC2": direct_product(C2, cyclic_group(2), "C2xC2"),
        "S3": group_from_perms(["(1 2 3)", "(1 2)"], "S3"),
        "D4": group_from_perms(["(1 2 3 4)", "(1 3)"], "D4"),
        "S4": group_from_perms(["(1 2 3 4)", "(1 2)"], "S4"),
    }


# -- factorisations and matched pairs ---------------------------------------------------


@dataclass(frozen=True)
class Factorisation:
    X: FinGroup
    G: frozenset
    M: frozenset

    def swapped(self):
        return Factorisation(self.X, self.M, self.G)

    def orders(self):
        return len(self.G), len(self.M)

    def decompose(self):
        """x -> (g, m) with x = g m."""
        out = {}
        for g in self.G:
            for m in self.M:
                out[self.X.table[g][m]] = (g, m)
        return out

    def is_valid(self):
        X = self.X
        if self.G & self.M != {X.identity}:
            return False
        if len(self.G) * len(self.M) != X.order:
            return False
        return len(self.decompose()) == X.order

    def describe(self):
        X = self.X
        return {
            "group": X.name,
            "G": [str(X.labels[g]) for g in sorted(self.G)],
            "M": [str(X.labels[m]) for m in sorted(self.M)],
            "orders": list(self.orders()),
        }


def find_factorisations(X: FinGroup, bound=DEFAULT_ORDER_BOUND):
    """All ordered pairs (G, M) of subgroups with G.M = X exactly factorised."""
    if X.order > bound:
        raise BoundExceeded(f"|X| = {X.order} exceeds bound {bound}")
    subs = X.subgroups()
    by_order = {}
    for H in subs:
        by_order.setdefault(len(H), []).append(H)
    out = []
    for G in subs:
        if X.order % len(G):
            continue
        for M in by_order.get(X.order // len(G), []):
            if G & M == {X.identity}:
                F = Factorisation(X, G, M)
                if F.is_valid():
                    out.append(F)
    return out


@dataclass
class MatchedPair:
    F: Factorisation
    left: Dict  # (m, g) -> m |> g  in G
    right: Dict  # (m, g) -> m <| g in M

    @property
    def X(self):
        return self.F.X

    def swapped(self):
        return matched_pair(self.F.swapped())


def matched_pair(F: Factorisation, verify=True) -> MatchedPair:
    X = F.X
    dec = F.decompose()
    left, right = {}, {}
    for m in F.M:
        for g in F.G:
            g2, m2 = dec[X.table[m][g]]
            left[(m, g)] = g2
            right[(m, g)] = m2
    mp = MatchedPair(F, left, right)
    if verify:
        bad = matched_pair_violations(mp)
        if bad:
            raise AxiomFailure(f"matched pair identities fail: {bad[:3]}")
    return mp


def matched_pair_violations(mp: MatchedPair):
    X, F = mp.X, mp.F
    t, e = X.table, X.identity
    L, R = mp.left, mp.right
    bad = []
    for m in F.M:
        for g in F.G:
            if t[m][g] != t[L[(m, g)]][R[(m, g)]]:
                bad.append(("factorise", m, g))
    for g in F.G:
        if L[(e, g)] != g or R[(e, g)] != e:
            bad.append(("identity acts trivially", g))
    for m in F.M:
        if L[(m, e)] != e or R[(m, e)] != m:
            bad.append(("acts on identity", m))
    for m in F.M:
        for g in F.G:
            for h in F.G:
                gh = t[g][h]
                if L[(m, gh)] != t[L[(m, g)]][L[(R[(m, g)], h)]]:
                    bad.append(("m|>(gh)", m, g, h))
                if R[(m, gh)] != R[(R[(m, g)], h)]:
                    bad.append(("m<|(gh)", m, g, h))
    for m in F.M:
        for n in F.M:
            mn = t[m][n]
            for g in F.G:
                if L[(mn, g)] != L[(m, L[(n, g)])]:
                    bad.append(("(mn)|>g", m, n, g))
                if R[(mn, g)] != t[R[(m, L[(n, g)])]][R[(n, g)]]:
                    bad.append(("(mn)<|g", m, n, g))
    return bad


# -- Hopf algebras from groups ----------------------------------------------------------


def function_hopf(G: FinGroup, name=None) -> FinHopf:
    """k(G) on the delta basis."""
    n = G.order
    mult = {(a, a): {a: ONE} for a in range(n)}
    comult = {x: {} for x in range(n)}
    for a in range(n):
        for b in range(n):
            comult[G.table[a][b]][(a, b)] = ONE
    labels = [("delta", l) for l in G.labels]
    return FinHopf(
        labels,
        mult,
        comult,
        {a: ONE for a in range(n)},
        {G.identity: ONE},
        {a: {G.inv[a]: ONE} for a in range(n)},
        name or f"k({G.name})",
    )


def group_hopf(G: FinGroup, name=None) -> FinHopf:
    """kG: Delta g = g (x) g, eps g = 1, S g = g^-1."""
    n = G.order
    mult = {(a, b): {G.table[a][b]: ONE} for a in range(n) for b in range(n)}
    return FinHopf(
        list(G.labels),
        mult,
        {a: {(a, a): ONE} for a in range(n)},
        {G.identity: ONE},
        {a: ONE for a in range(n)},
        {a: {G.inv[a]: ONE} for a in range(n)},
        name or f"k{G.name}",
    )


@dataclass
class Bicrossproduct:
    hopf: FinHopf
    mp: MatchedPair
    basis: List  # list of (m, g) index pairs in X

    @property
    def name(self):
        return self.hopf.name


def bicrossproduct(mp: MatchedPair, name=None, verify=False) -> Bicrossproduct:
    X, F = mp.X, mp.F
    t, e = X.table, X.identity
    Ms, Gs = sorted(F.M), sorted(F.G)
    basis = [(m, g) for m in Ms for g in Gs]
    pos = {b: k for k, b in enumerate(basis)}
    L, R = mp.left, mp.right
    mult = {}
    for (m, g) in basis:
        for (n, h) in basis:
            if R[(m, g)] == n:
                mult[(pos[(m, g)], pos[(n, h)])] = {pos[(m, t[g][h])]: ONE}
    comult = {}
    dec_m = {}
    for a in Ms:
        for b in Ms:
            dec_m.setdefault(t[a][b], []).append((a, b))
    for (m, g) in basis:
        d = {}
        for a, b in dec_m[m]:
            d[(pos[(a, L[(b, g)])], pos[(b, g)])] = ONE
        comult[pos[(m, g)]] = d
    unit = {pos[(m, e)]: ONE for m in Ms}
    counit = {pos[(e, g)]: ONE for g in Gs}
    antipode = {}
    for (m, g) in basis:
        antipode[pos[(m, g)]] = {pos[(X.inv[R[(m, g)]], X.inv[L[(m, g)]])]: ONE}
    labels = [(f"delta_{X.labels[m]}", str(X.labels[g])) for m, g in basis]
    H = FinHopf(labels, mult, comult, unit, counit, antipode, name or f"k(M)><kG[{X.name}]")
    bp = Bicrossproduct(H, mp, basis)
    if verify:
        failed = [r for r in hopf_axiom_reports(H) if not r.ok]
        if failed:
            raise AxiomFailure(f"bicrossproduct fails {[r.check for r in failed]}")
    return bp


def extension_maps(bp: Bicrossproduct):
    """(k(M), inclusion images, kG, projection images) for k(M) -> E -> kG."""
    X, F = bp.mp.X, bp.mp.F
    Ms, Gs = sorted(F.M), sorted(F.G)
    Mgrp = X.subgroup(Ms, name=f"M<{X.name}")
    Ggrp = X.subgroup(Gs, name=f"G<{X.name}")
    kM, kG = function_hopf(Mgrp), group_hopf(Ggrp)
    pos = {b: k for k, b in enumerate(bp.basis)}
    incl = {i: {pos[(m, X.identity)]: ONE} for i, m in enumerate(Ms)}
    gpos = {g: k for k, g in enumerate(Gs)}
    proj = {}
    for k, (m, g) in enumerate(bp.basis):
        proj[k] = {gpos[g]: ONE} if m == X.identity else {}
    return kM, incl, kG, proj


def extension_reports(bp: Bicrossproduct):
    kM, incl, kG, proj = extension_maps(bp)
    r1 = check_hopf_morphism(kM, bp.hopf, incl, name="inclusion k(M)->E")
    r2 = check_hopf_morphism(bp.hopf, kG, proj, name="projection E->kG")
    for r in (r1, r2):
        r.model = bp.name
    return [r1, r2]


# -- Fourier transform --------------------------------------------------------------------


def _as_function(G: FinGroup, f):
    if isinstance(f, dict):
        out = {}
        for k, v in f.items():
            i = G.index[k] if k in G.index else int(k)
            out[i] = v if isinstance(v, Scalar) else Scalar(v)
        return out
    if len(f) != G.order:
        raise ValueError(f"function needs {G.order} values")
    return {i: (v if isinstance(v, Scalar) else Scalar(v)) for i, v in enumerate(f) if v}


def fourier(G: FinGroup, f):
    """F(f) = sum_g f(g) g, as a vector of kG."""
    return {i: c for i, c in _as_function(G, f).items() if c}


def inverse_fourier(G: FinGroup, v):
    return {i: c for i, c in v.items() if c}


def convolution(G: FinGroup, f1, f2):
    """(f1 * f2)(x) = sum_{yz = x} f1(y) f2(z)."""
    a, b = _as_function(G, f1), _as_function(G, f2)
    out = {}
    for y, cy in a.items():
        for z, cz in b.items():
            x = G.table[y][z]
            out[x] = out.get(x, ZERO) + cy * cz
    return {k: v for k, v in out.items() if v}


def fourier_report(G: FinGroup) -> CheckReport:
    """F(delta_a * delta_b) = F(delta_a) F(delta_b) for every basis pair."""
    rep = CheckReport(G.name, "fourier")
    kG = group_hopf(G)
    with timed(rep):
        for a in range(G.order):
            for b in range(G.order):
                lhs = fourier(G, convolution(G, {a: ONE}, {b: ONE}))
                rhs = kG.product(fourier(G, {a: ONE}), fourier(G, {b: ONE}))
                if lhs != rhs:
                    rep.fail("pair", f"({G.labels[a]}, {G.labels[b]})", f"{lhs} != {rhs}")
                if inverse_fourier(G, fourier(G, {a: ONE})) != {a: ONE}:
                    rep.fail("basis", G.labels[a], "inverse transform")
    return rep
