"""Finite-dimensional Hopf algebras as exact structure constants.

Vectors are sparse dicts ``{basis index: Scalar}``.  For a basis ``e_0..e_{n-1}``:

* ``mult[(i, j)]``  -- ``e_i e_j`` as a vector
* ``comult[i]``     -- ``Delta e_i`` as ``{(j, k): coeff}``
* ``unit``          -- the unit as a vector
* ``counit[i]``     -- ``eps(e_i)``
* ``antipode[i]``   -- ``S(e_i)`` as a vector
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .freealg import _acc
from .reports import CheckReport, timed
from .scalars import ONE, ZERO, Scalar


class DimensionMismatch(ValueError):
    pass


class AxiomFailure(AssertionError):
    pass


def _vec_str(v, labels):
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        parts.append(f"{c}*{labels[k]}" if c != ONE else str(labels[k]))
    return " + ".join(parts)


def _tvec_str(v, labels):
    if not v:
        return "0"
    return " + ".join(
        (f"{c}*" if c != ONE else "") + "|".join(str(labels[i]) for i in key) for key, c in sorted(v.items())
    )


@dataclass(eq=False)
class FinHopf:
    labels: List
    mult: Dict[Tuple[int, int], Dict[int, Scalar]]
    comult: Dict[int, Dict[Tuple[int, int], Scalar]]
    unit: Dict[int, Scalar]
    counit: Dict[int, Scalar]
    antipode: Dict[int, Dict[int, Scalar]]
    name: str = "H"

    @property
    def n(self):
        return len(self.labels)

    # -- linear algebra on vectors -----------------------------------------------
    def basis(self, i):
        return {i: ONE}

    def product(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                c = ca * cb
                for k, m in self.mult.get((i, j), {}).items():
                    _acc(out, k, c * m)
        return out

    def coproduct(self, a):
        out = {}
        for i, c in a.items():
            for jk, d in self.comult[i].items():
                _acc(out, jk, c * d)
        return out

    def eps(self, a):
        s = ZERO
        for i, c in a.items():
            e = self.counit.get(i, ZERO)
            if e:
                s = s + c * e
        return s

    def S(self, a):
        out = {}
        for i, c in a.items():
            for j, d in self.antipode[i].items():
                _acc(out, j, c * d)
        return out

    def tensor_product(self, x, y):
        """Product in H (x) H of tensor vectors {(i,j): c}."""
        out = {}
        for (a, b), c in x.items():
            for (a2, b2), d in y.items():
                cd = c * d
                for k, m in self.mult.get((a, a2), {}).items():
                    for l, m2 in self.mult.get((b, b2), {}).items():
                        _acc(out, (k, l), cd * m * m2)
        return out

    def vector(self, label_coeffs):
        idx = {l: k for k, l in enumerate(self.labels)}
        return {idx[l]: (c if isinstance(c, Scalar) else Scalar(c)) for l, c in label_coeffs.items()}

    def index_of(self, label):
        return self.labels.index(label)

    def __repr__(self):
        return f"FinHopf({self.name!r}, dim={self.n})"


# -- axiom checks ----------------------------------------------------------------


def check_associativity(H: FinHopf, report):
    n = H.n
    for i in range(n):
        for j in range(n):
            ij = H.mult.get((i, j), {})
            for k in range(n):
                left = H.product(ij, {k: ONE})
                right = H.product({i: ONE}, H.mult.get((j, k), {}))
                if left != right:
                    report.fail("triple", f"({H.labels[i]}, {H.labels[j]}, {H.labels[k]})", "associativity")


def check_unit(H: FinHopf, report):
    for i in range(H.n):
        e = {i: ONE}
        if H.product(H.unit, e) != e or H.product(e, H.unit) != e:
            report.fail("basis", H.labels[i], "unit law")


def check_coassociativity(H: FinHopf, report):
    for i in range(H.n):
        left, right = {}, {}
        for (j, k), c in H.comult[i].items():
            for (a, b), d in H.comult[j].items():
                _acc(left, (a, b, k), c * d)
            for (a, b), d in H.comult[k].items():
                _acc(right, (j, a, b), c * d)
        if left != right:
            report.fail("basis", H.labels[i], "coassociativity")


def check_counit(H: FinHopf, report):
    for i in range(H.n):
        left, right = {}, {}
        for (j, k), c in H.comult[i].items():
            e = H.counit.get(j, ZERO)
            if e:
                _acc(left, k, c * e)
            e = H.counit.get(k, ZERO)
            if e:
                _acc(right, j, c * e)
        if left != {i: ONE} or right != {i: ONE}:
            report.fail("basis", H.labels[i], "counit law")


def check_bialgebra(H: FinHopf, report):
    n = H.n
    for i in range(n):
        for j in range(n):
            ij = H.mult.get((i, j), {})
            if H.coproduct(ij) != H.tensor_product(H.comult[i], H.comult[j]):
                report.fail("pair", f"({H.labels[i]}, {H.labels[j]})", "Delta not multiplicative")
            if H.eps(ij) != H.counit.get(i, ZERO) * H.counit.get(j, ZERO):
                report.fail("pair", f"({H.labels[i]}, {H.labels[j]})", "eps not multiplicative")
    unit2 = {}
    for a, c in H.unit.items():
        for b, d in H.unit.items():
            _acc(unit2, (a, b), c * d)
    if H.coproduct(H.unit) != unit2:
        report.fail("unit", "Delta(1)", "Delta(1) != 1 (x) 1")
    if H.eps(H.unit) != ONE:
        report.fail("unit", "eps(1)", "eps(1) != 1")


def check_antipode(H: FinHopf, report):
    for i in range(H.n):
        left, right = {}, {}
        for (j, k), c in H.comult[i].items():
            for m, d in H.product(H.S({j: ONE}), {k: ONE}).items():
                _acc(left, m, c * d)
            for m, d in H.product({j: ONE}, H.S({k: ONE})).items():
                _acc(right, m, c * d)
        target = {k: v * H.counit.get(i, ZERO) for k, v in H.unit.items() if H.counit.get(i, ZERO)}
        if left != target or right != target:
            report.fail("basis", H.labels[i], "antipode law")


AXIOMS = {
    "associativity": check_associativity,
    "unit": check_unit,
    "coassociativity": check_coassociativity,
    "counit": check_counit,
    "bialgebra": check_bialgebra,
    "antipode": check_antipode,
}


def hopf_axiom_reports(H: FinHopf):
    """One report per axiom, each by full enumeration over basis tuples."""
    out = []
    for name, fn in AXIOMS.items():
        rep = CheckReport(H.name, name)
        with timed(rep):
            fn(H, rep)
        out.append(rep)
    return out


def is_hopf(H: FinHopf):
    return all(r.ok for r in hopf_axiom_reports(H))


def tensor_hopf(A: FinHopf, B: FinHopf, name=None) -> FinHopf:
    """A (x) B with componentwise structure; basis (a, b) ordered a-major."""
    nb = B.n

    def idx(i, j):
        return i * nb + j

    mult, comult, antipode = {}, {}, {}
    for (i, k), u in A.mult.items():
        for (j, l), v in B.mult.items():
            out = {}
            for a, c in u.items():
                for b, d in v.items():
                    _acc(out, idx(a, b), c * d)
            mult[(idx(i, j), idx(k, l))] = out
    for i in range(A.n):
        for j in range(nb):
            out = {}
            for (a1, a2), c in A.comult[i].items():
                for (b1, b2), d in B.comult[j].items():
                    _acc(out, (idx(a1, b1), idx(a2, b2)), c * d)
            comult[idx(i, j)] = out
            antipode[idx(i, j)] = {idx(a, b): c * d for a, c in A.antipode[i].items() for b, d in B.antipode[j].items()}
    unit = {idx(a, b): c * d for a, c in A.unit.items() for b, d in B.unit.items()}
    counit = {idx(a, b): c * d for a, c in A.counit.items() for b, d in B.counit.items()}
    labels = [(la, lb) for la in A.labels for lb in B.labels]
    return FinHopf(labels, mult, comult, unit, counit, antipode, name or f"{A.name}(x){B.name}")


# -- duality -------------------------------------------------------------------------


def dual_findim(H: FinHopf, name=None) -> FinHopf:
    """The dual Hopf algebra on the dual basis f_i(e_j) = delta_ij.

    Product of f's = transpose of Delta; Delta of f's = transpose of product;
    unit = counit; counit = unit; antipode transposed.
    """
    n = H.n
    mult = {}
    for k in range(n):
        for (i, j), c in H.comult[k].items():
            mult.setdefault((i, j), {})
            _acc(mult[(i, j)], k, c)
    comult = {k: {} for k in range(n)}
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            _acc(comult[k], (i, j), c)
    unit = {i: c for i, c in H.counit.items() if c}
    counit = dict(H.unit)
    antipode = {j: {} for j in range(n)}
    for i, v in H.antipode.items():
        for j, c in v.items():
            _acc(antipode[j], i, c)
    labels = [_dual_label(l) for l in H.labels]
    return FinHopf(labels, {k: v for k, v in mult.items() if v}, comult, unit, counit, antipode, name or f"{H.name}*")


def _dual_label(l):
    if isinstance(l, tuple) and len(l) == 2 and l[0] == "dual":
        return l[1]
    return ("dual", l)


def same_structure(A: FinHopf, B: FinHopf, perm=None):
    """Structure constants equal after relabelling A's basis index i -> perm[i]."""
    if A.n != B.n:
        return False
    p = perm if perm is not None else list(range(A.n))

    def mv(v):
        return {p[i]: c for i, c in v.items()}

    def tv(v):
        return {(p[i], p[j]): c for (i, j), c in v.items()}

    for (i, j), v in A.mult.items():
        if mv(v) != B.mult.get((p[i], p[j]), {}):
            return False
    if sum(1 for v in A.mult.values() if v) != sum(1 for v in B.mult.values() if v):
        return False
    for i in range(A.n):
        if tv(A.comult[i]) != B.comult[p[i]]:
            return False
        if mv(A.antipode[i]) != B.antipode[p[i]]:
            return False
        if A.counit.get(i, ZERO) != B.counit.get(p[i], ZERO):
            return False
    return mv(A.unit) == B.unit


def pairing_eval(H: FinHopf, a, f) -> Scalar:
    """<a, f> for a vector of H and f a covector (vector in the dual basis)."""
    if isinstance(a, (list, tuple)):
        if len(a) != H.n:
            raise DimensionMismatch(f"vector of length {len(a)} for dimension {H.n}")
        a = {i: (c if isinstance(c, Scalar) else Scalar(c)) for i, c in enumerate(a) if c}
    if isinstance(f, (list, tuple)):
        if len(f) != H.n:
            raise DimensionMismatch(f"covector of length {len(f)} for dimension {H.n}")
        f = {i: (c if isinstance(c, Scalar) else Scalar(c)) for i, c in enumerate(f) if c}
    if any(not 0 <= i < H.n for i in list(a) + list(f)):
        raise DimensionMismatch("index out of range")
    s = ZERO
    for i, c in a.items():
        d = f.get(i)
        if d:
            s = s + c * d
    return s


def check_pairing_duality(H: FinHopf, D: FinHopf = None, report=None):
    """<xy, f> = <x (x) y, Delta f> and <x, fg> = <Delta x, f (x) g> on all basis triples."""
    D = D or dual_findim(H)
    report = report or CheckReport(H.name, "pairing-duality")
    n = H.n
    with timed(report):
        for i in range(n):
            for j in range(n):
                xy = H.mult.get((i, j), {})
                fg = D.mult.get((i, j), {})
                for k in range(n):
                    lhs = pairing_eval(H, xy, {k: ONE})
                    rhs = D.comult[k].get((i, j), ZERO)
                    if lhs != rhs:
                        report.fail("triple", f"<{H.labels[i]}{H.labels[j]}, f{k}>", lhs - rhs)
                    lhs = pairing_eval(H, {k: ONE}, fg)
                    rhs = H.comult[k].get((i, j), ZERO)
                    if lhs != rhs:
                        report.fail("triple", f"<{H.labels[k]}, f{i}f{j}>", lhs - rhs)
    return report


# -- morphisms ------------------------------------------------------------------------


def check_hopf_morphism(A: FinHopf, B: FinHopf, images, name="morphism", report=None):
    """Check that e_i -> images[i] (vectors of B) is a Hopf-algebra map."""
    report = report or CheckReport(f"{A.name}->{B.name}", name)

    def f(v):
        out = {}
        for i, c in v.items():
            for j, d in images[i].items():
                _acc(out, j, c * d)
        return out

    def ff(t):
        out = {}
        for (i, j), c in t.items():
            for a, d in images[i].items():
                for b, e in images[j].items():
                    _acc(out, (a, b), c * d * e)
        return out

    with timed(report):
        if f(A.unit) != B.unit:
            report.fail("unit", "f(1)", "f(1) != 1")
        for i in range(A.n):
            for j in range(A.n):
                if f(A.mult.get((i, j), {})) != B.product(images[i], images[j]):
                    report.fail("pair", f"({A.labels[i]}, {A.labels[j]})", "not multiplicative")
            if ff(A.comult[i]) != B.coproduct(images[i]):
                report.fail("basis", A.labels[i], "not comultiplicative")
            if B.eps(images[i]) != A.counit.get(i, ZERO):
                report.fail("basis", A.labels[i], "counit not preserved")
            if f(A.S({i: ONE})) != B.S(images[i]):
                report.fail("basis", A.labels[i], "antipode not preserved")
    return report


# -- isomorphism search by basis relabelling ------------------------------------------------


def _invariants(H: FinHopf):
    """Per-basis data preserved by any relabelling isomorphism."""
    inv = []
    for i in range(H.n):
        sq_i = H.mult.get((i, i), {})
        prod_sizes = tuple(sorted(len(H.mult.get((i, j), {})) for j in range(H.n)))
        left_sizes = tuple(sorted(len(H.mult.get((j, i), {})) for j in range(H.n)))
        cop = tuple(sorted(str(c) for c in H.comult[i].values()))
        inv.append(
            (
                str(H.counit.get(i, ZERO)),
                str(H.unit.get(i, ZERO)),
                prod_sizes,
                left_sizes,
                cop,
                tuple(sorted(str(c) for c in sq_i.values())),
                i in sq_i,
                tuple(sorted(str(c) for c in H.antipode[i].values())),
                i in H.antipode[i],
            )
        )
    return inv


def find_isomorphism(A: FinHopf, B: FinHopf, limit=200000):
    """Search a basis bijection p with structure constants of A mapped onto B.

    Backtracking with invariant classes and forced extensions from
    single-term products; returns the list p (A index -> B index) or None.
    """
    if A.n != B.n:
        return None
    n = A.n
    ia, ib = _invariants(A), _invariants(B)
    cands = {i: [j for j in range(n) if ib[j] == ia[i]] for i in range(n)}
    if any(not c for c in cands.values()):
        return None

    # single-term product/antipode maps to propagate assignments
    def single(v):
        if len(v) == 1:
            (k, c), = v.items()
            return k, c
        return None

    a_single = {ij: single(v) for ij, v in A.mult.items()}
    b_single = {ij: single(v) for ij, v in B.mult.items()}
    a_s = {i: single(A.antipode[i]) for i in range(n)}
    b_s = {i: single(B.antipode[i]) for i in range(n)}

    order = sorted(range(n), key=lambda i: len(cands[i]))
    budget = [limit]

    def consistent(p, used):
        # all fully-assigned constants must agree
        for (i, j), v in A.mult.items():
            if i in p and j in p and all(k in p for k in v):
                if {p[k]: c for k, c in v.items()} != B.mult.get((p[i], p[j]), {}):
                    return False
        return True

    def propagate(p, used, i):
        stack = [i]
        while stack:
            x = stack.pop()
            pairs = [(x, y) for y in list(p)] + [(y, x) for y in list(p)]
            for (a, b) in pairs:
                sa = a_single.get((a, b))
                sb = b_single.get((p[a], p[b]))
                if (sa is None) != (sb is None):
                    if sa is None and not A.mult.get((a, b)) and not B.mult.get((p[a], p[b])):
                        continue
                    return False
                if sa is None:
                    if bool(A.mult.get((a, b))) != bool(B.mult.get((p[a], p[b]))):
                        return False
                    continue
                (k, c), (k2, c2) = sa, sb
                if c != c2:
                    return False
                if k in p:
                    if p[k] != k2:
                        return False
                else:
                    if k2 in used or k2 not in cands[k]:
                        return False
                    p[k] = k2
                    used.add(k2)
                    stack.append(k)
            sa, sb = a_s[x], b_s[p[x]]
            if (sa is None) != (sb is None):
                return False
            if sa is not None:
                (k, c), (k2, c2) = sa, sb
                if c != c2:
                    return False
                if k in p:
                    if p[k] != k2:
                        return False
                else:
                    if k2 in used or k2 not in cands[k]:
                        return False
                    p[k] = k2
                    used.add(k2)
                    stack.append(k)
        return True

    def search(p, used):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        free = [i for i in order if i not in p]
        if not free:
            perm = [p[i] for i in range(n)]
            return perm if same_structure(A, B, perm) else None
        i = min(free, key=lambda k: len([j for j in cands[k] if j not in used]))
        for j in cands[i]:
            if j in used:
                continue
            p2, used2 = dict(p), set(used)
            p2[i] = j
            used2.add(j)
            if not propagate(p2, used2, i):
                continue
            if not consistent(p2, used2):
                continue
            res = search(p2, used2)
            if res is not None:
                return res
        return None

    return search({}, set())
