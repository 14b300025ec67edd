"""R-matrices, braidings, FRT bialgebras and braided matrices.

Index convention for an R-matrix on ``V (x) V`` with ``dim V = n``:
``R[a, b, c, d]`` is the entry ``R^{ab}_{cd}`` in row ``(a, b)`` and column
``(c, d)``, both ordered row-major (``a*n + b``), and

    R(e_c (x) e_d) = sum_{a,b} R^{ab}_{cd} e_a (x) e_b.

Indices are 0-based internally; generator names use 1-based digits
(``t12`` is ``t^1_2``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from . import linalg
from .freealg import Element, Presentation, _acc, format_word, rules_from_relations
from .hopf import (
    HopfSpec,
    coassociativity_check,
    counit_check,
    antipode_check,
    check_relations_respected,
    tensor,
    tensor_algebra,
    tensor_terms,
)
from .reports import CheckReport, timed
from .scalars import ONE, ZERO, ParamSet, Scalar, substitute


class YBEFailure(ValueError):
    pass


class NotBiinvertible(ValueError):
    pass


# -- R-matrices ------------------------------------------------------------------


class RMatrix:
    def __init__(self, n, entries, name=None):
        self.n = n
        self.name = name
        self.entries = {}
        for k, v in entries.items():
            v = v if isinstance(v, Scalar) else Scalar(v)
            if v:
                self.entries[tuple(k)] = v
        self._inv = self._inv2 = None

    def __getitem__(self, idx):
        return self.entries.get(idx, ZERO)

    @classmethod
    def from_matrix(cls, rows, name=None):
        N = len(rows)
        n = int(round(N**0.5))
        if n * n != N or any(len(r) != N for r in rows):
            raise ValueError("R-matrix must be n^2 x n^2")
        ent = {}
        for r in range(N):
            for c in range(N):
                ent[(r // n, r % n, c // n, c % n)] = rows[r][c]
        return cls(n, ent, name)

    def to_matrix(self):
        n = self.n
        return [[self[(r // n, r % n, c // n, c % n)] for c in range(n * n)] for r in range(n * n)]

    @classmethod
    def from_json(cls, data, params=None, name=None):
        from .dsl import parse_scalar

        if isinstance(data, str):
            data = json.loads(data)
        rows = [[parse_scalar(str(v), params) for v in row] for row in data]
        return cls.from_matrix(rows, name)

    def to_json(self):
        return [[str(v) for v in row] for row in self.to_matrix()]

    @classmethod
    def identity(cls, n=2):
        return cls(n, {(a, b, a, b): ONE for a in range(n) for b in range(n)}, "identity")

    @classmethod
    def flip(cls, n=2):
        return cls(n, {(b, a, a, b): ONE for a in range(n) for b in range(n)}, "flip")

    @classmethod
    def standard_sl2(cls, q=None):
        """diag(q, 1, 1, q) with q - q^-1 in row (21), column (12)."""
        q = q if q is not None else Scalar.param("q")
        q = q if isinstance(q, Scalar) else Scalar(q)
        ent = {(0, 0, 0, 0): q, (0, 1, 0, 1): ONE, (1, 0, 1, 0): ONE, (1, 1, 1, 1): q, (1, 0, 0, 1): q - q.inverse()}
        return cls(2, ent, "sl2")

    def substitute(self, bindings):
        return RMatrix(self.n, {k: substitute(v, bindings) for k, v in self.entries.items()}, self.name)

    def perturbed(self, idx, delta=ONE):
        ent = dict(self.entries)
        ent[idx] = self[idx] + delta
        return RMatrix(self.n, ent, f"{self.name}+pert{idx}")

    def indices(self):
        return itertools.product(range(self.n), repeat=4)

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    # inverses
    def inverse(self) -> "RMatrix":
        if self._inv is None:
            try:
                inv = linalg.inverse(self.to_matrix())
            except linalg.SingularMatrix as exc:
                raise NotBiinvertible(f"R is not invertible: {exc}") from None
            self._inv = RMatrix.from_matrix(inv)
        return self._inv

    def partial_transpose_matrix(self):
        """M[(j,k),(a,d)] = R^{ak}_{jd}: the matrix whose inverse is the second inverse."""
        n = self.n
        return [
            [self[(a, k, j, d)] for a in range(n) for d in range(n)]
            for j in range(n)
            for k in range(n)
        ]

    def second_inverse(self):
        if self._inv2 is None:
            try:
                self._inv2 = linalg.inverse(self.partial_transpose_matrix())
            except linalg.SingularMatrix as exc:
                raise NotBiinvertible(f"R has no second inverse: {exc}") from None
        return self._inv2

    def is_biinvertible(self):
        try:
            self.inverse()
            self.second_inverse()
        except NotBiinvertible:
            return False
        return True

    def __repr__(self):
        return f"RMatrix(n={self.n}, name={self.name!r})"


def _apply_pair(R, vec, slots):
    """Apply R on tensor slots (s, t) of a sparse vector over basis tuples."""
    s, t = slots
    out = {}
    n = R.n
    for basis, c in vec.items():
        cidx, didx = basis[s], basis[t]
        for a in range(n):
            for b in range(n):
                r = R[(a, b, cidx, didx)]
                if r:
                    nb = list(basis)
                    nb[s], nb[t] = a, b
                    _acc(out, tuple(nb), c * r)
    return out


def ybe_check(R: RMatrix) -> bool:
    """Exact test of R12 R13 R23 = R23 R13 R12 on V^{(x)3}."""
    return not ybe_residual(R)


def ybe_residual(R: RMatrix):
    """Nonzero entries of R12 R13 R23 - R23 R13 R12 as {(col basis, row basis): value}."""
    bad = {}
    for basis in itertools.product(range(R.n), repeat=3):
        v = {basis: ONE}
        lhs = _apply_pair(R, _apply_pair(R, _apply_pair(R, v, (1, 2)), (0, 2)), (0, 1))
        rhs = _apply_pair(R, _apply_pair(R, _apply_pair(R, v, (0, 1)), (0, 2)), (1, 2))
        for k in set(lhs) | set(rhs):
            d = lhs.get(k, ZERO) - rhs.get(k, ZERO)
            if d:
                bad[(basis, k)] = d
    return bad


# -- braidings ----------------------------------------------------------------


class Braiding:
    """Generator-level braiding Psi extended to words.

    ``table[(a, b)]`` is ``Psi(a (x) b)`` as ``{(left word, right word): coeff}``.
    """

    def __init__(self, table, name=None):
        self._table = {k: {(tuple(l), tuple(r)): c for (l, r), c in v.items() if c} for k, v in table.items()}
        self.name = name
        self._cache = {}
        self._cache_r = {}

    def table(self):
        return self._table

    def gens(self):
        return sorted({a for a, _ in self._table} | {b for _, b in self._table}, key=str)

    def on_gens(self, a, b):
        return self._table[(a, b)]

    def extend(self, a, b):
        """Psi on words, recursing on the left factor first."""
        a, b = tuple(a), tuple(b)
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not a:
            out = {(b, ()): ONE}
        elif not b:
            out = {((), a): ONE}
        elif len(a) > 1:
            # Psi(u g (x) w) = (Psi_{u,.} (x) id)(id (x) Psi_{g,w})
            u, g = a[:-1], a[-1:]
            out = {}
            for (w1, g1), c in self.extend(g, b).items():
                for (w2, u1), d in self.extend(u, w1).items():
                    _acc(out, (w2, u1 + g1), c * d)
        elif len(b) > 1:
            # Psi(g (x) v w) = (id (x) Psi_{.,w})(Psi_{g,v} (x) id)
            v, w = b[:1], b[1:]
            out = {}
            for (v1, g1), c in self.extend(a, v).items():
                for (w1, g2), d in self.extend(g1, w).items():
                    _acc(out, (v1 + w1, g2), c * d)
        else:
            out = self._table[(a[0], b[0])]
        self._cache[key] = out
        return out

    def extend_right_first(self, a, b):
        """Same map, recursing on the right factor first (coherence cross-check)."""
        a, b = tuple(a), tuple(b)
        key = (a, b)
        hit = self._cache_r.get(key)
        if hit is not None:
            return hit
        if not a:
            out = {(b, ()): ONE}
        elif not b:
            out = {((), a): ONE}
        elif len(b) > 1:
            v, w = b[:1], b[1:]
            out = {}
            for (v1, a1), c in self.extend_right_first(a, v).items():
                for (w1, a2), d in self.extend_right_first(a1, w).items():
                    _acc(out, (v1 + w1, a2), c * d)
        elif len(a) > 1:
            u, g = a[:-1], a[-1:]
            out = {}
            for (w1, g1), c in self.extend_right_first(g, b).items():
                for (w2, u1), d in self.extend_right_first(u, w1).items():
                    _acc(out, (w2, u1 + g1), c * d)
        else:
            out = self._table[(a[0], b[0])]
        self._cache_r[key] = out
        return out

    def as_element(self, a, b):
        """Psi(a (x) b) as a tagged tensor element."""
        return Element(
            {
                tuple((g, 1) for g in l) + tuple((g, 2) for g in r): c
                for (l, r), c in self.extend(a, b).items()
            }
        )

    def substitute(self, bindings):
        return Braiding(
            {k: {lr: substitute(c, bindings) for lr, c in v.items()} for k, v in self._table.items()},
            self.name,
        )

    def is_flip(self):
        return all(v == {((b,), (a,)): ONE} for (a, b), v in self._table.items())

    def squared_is_identity(self):
        for (a, b) in self._table:
            out = {}
            for (l, r), c in self.extend((a,), (b,)).items():
                for lr, d in self.extend(l, r).items():
                    _acc(out, lr, c * d)
            if out != {((a,), (b,)): ONE}:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Braiding):
            return NotImplemented
        return self._table == other._table

    __hash__ = object.__hash__


def flip_braiding(gens):
    return Braiding({(a, b): {((b,), (a,)): ONE} for a in gens for b in gens}, "flip")


def super_braiding(gens, odd):
    """Psi(b (x) c) = (-1)^{|b||c|} c (x) b with ``odd`` the set of degree-1 generators."""
    odd = set(odd)
    tab = {}
    for a in gens:
        for b in gens:
            tab[(a, b)] = {((b,), (a,)): (-ONE if (a in odd and b in odd) else ONE)}
    return Braiding(tab, "super")


def braiding_from_rmatrix(R: RMatrix, normalization=ONE, gens=None) -> Braiding:
    """Psi = normalization * R o flip on the span of ``gens`` (basis e_1..e_n).

    Psi(x_i (x) x_j) = c * sum_{a,b} R^{ab}_{ji} x_a (x) x_b.
    """
    R.inverse()
    gens = list(gens) if gens is not None else [f"x{k + 1}" for k in range(R.n)]
    if len(gens) != R.n:
        raise ValueError("need one generator per basis vector")
    c = normalization if isinstance(normalization, Scalar) else Scalar(normalization)
    tab = {}
    for i in range(R.n):
        for j in range(R.n):
            out = {}
            for a in range(R.n):
                for b in range(R.n):
                    r = R[(a, b, j, i)]
                    if r:
                        _acc(out, ((gens[a],), (gens[b],)), c * r)
            tab[(gens[i], gens[j])] = out
    return Braiding(tab, f"R({R.name})")


def braided_tensor_algebra(A: Presentation, B: Presentation, psi: Braiding, name=None) -> Presentation:
    """A (x) B with cross relations (1 (x) b)(a (x) 1) = Psi(b (x) a)."""
    table = {}
    for b in B.gens:
        for a in A.gens:
            table[(b, a)] = psi.on_gens(b, a)
    return tensor_algebra([A, B], lambda i, j: table, name=name)


def braided_hopf_check(H: HopfSpec, max_degree: int = 3):
    """Coproduct/counit respect relations in the braided tensor square, then coalgebra
    and (braided) antipode axioms on all normal words up to max_degree."""
    reps = [
        check_relations_respected(H.delta, H.P, CheckReport(H.name, "braided-coproduct-respects-relations"), fmt=H.fmt2),
        check_relations_respected(
            H.eps, H.P, CheckReport(H.name, "counit-respects-relations"), fmt=lambda e: str(e)
        ),
        coassociativity_check(H, max_degree),
        counit_check(H, max_degree),
    ]
    if H.antipode is not None:
        reps.append(antipode_check(H, max_degree))
    for r in reps:
        r.degree_bound = max_degree
    return reps


# -- FRT bialgebra and dual quasitriangular structure --------------------------


def _gen_name(prefix, i, j):
    return f"{prefix}{i + 1}{j + 1}"


def _matrix_coproduct(names, n):
    return {
        names[i][j]: sum((tensor(Element.gen(names[i][k]), Element.gen(names[k][j])) for k in range(n)), Element.zero())
        for i in range(n)
        for j in range(n)
    }


def _matrix_counit(names, n):
    return {names[i][j]: (ONE if i == j else ZERO) for i in range(n) for j in range(n)}


def frt_relations(R: RMatrix, prefix="t"):
    """Entries of R t1 t2 - t2 t1 R as free-algebra elements."""
    n = R.n
    t = [[_gen_name(prefix, i, j) for j in range(n)] for i in range(n)]
    rels = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        out = {}
        for a in range(n):
            for b in range(n):
                r = R[(i, k, a, b)]
                if r:
                    _acc(out, (t[a][j], t[b][l]), r)
                r = R[(a, b, j, l)]
                if r:
                    _acc(out, (t[k][b], t[i][a]), -r)
        if out:
            rels.append(Element(out))
    return rels, t


class Bicharacter:
    """Skew-bicharacter on a matrix bialgebra, given on generator pairs.

    Extension to words (the convention under which FRT data satisfies the
    dual-quasitriangular identity):

        R(a b, c) = R(a, c(1)) R(b, c(2)),    R(a, b c) = R(a(1), c) R(a(2), b)
    """

    convention = "R(ab,c)=R(a,c(1))R(b,c(2)); R(a,bc)=R(a(1),c)R(a(2),b)"

    def __init__(self, values, coproduct, counit):
        self.values = {k: (v if isinstance(v, Scalar) else Scalar(v)) for k, v in values.items()}
        self._cop = {g: tensor_terms(e, 2) for g, e in coproduct.items()}
        self._counit = counit
        self._dcache = {(): {((), ()): ONE}}
        self._vcache = {}

    def free_coproduct(self, w):
        hit = self._dcache.get(w)
        if hit is not None:
            return hit
        prev = self.free_coproduct(w[:-1])
        out = {}
        for (u, v), c in prev.items():
            for (x, y), d in self._cop[w[-1]].items():
                _acc(out, (u + x, v + y), c * d)
        self._dcache[w] = out
        return out

    def counit(self, w):
        c = ONE
        for g in w:
            c = c * self._counit[g]
        return c

    def __call__(self, h, g) -> Scalar:
        h, g = tuple(h), tuple(g)
        key = (h, g)
        hit = self._vcache.get(key)
        if hit is not None:
            return hit
        if not h:
            val = self.counit(g)
        elif not g:
            val = self.counit(h)
        elif len(h) > 1:
            a, b = h[:1], h[1:]
            val = ZERO
            for (g1, g2), c in self.free_coproduct(g).items():
                val = val + c * self(a, g1) * self(b, g2)
        elif len(g) > 1:
            b, c_ = g[:1], g[1:]
            val = ZERO
            for (h1, h2), c in self.free_coproduct(h).items():
                val = val + c * self(h1, c_) * self(h2, b)
        else:
            val = self.values.get((h[0], g[0]), ZERO)
        self._vcache[key] = val
        return val

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.values == other.values

    __hash__ = object.__hash__


@dataclass(eq=False)
class FRTBialgebra:
    R: RMatrix
    hopf: HopfSpec
    bichar: Bicharacter
    names: list = field(default_factory=list)

    @property
    def P(self):
        return self.hopf.P

    @property
    def name(self):
        return self.hopf.name


def frt_bialgebra(R: RMatrix, prefix="t", name=None, check_ybe=True) -> FRTBialgebra:
    """A(R): generators t^i_j, relations R t1 t2 = t2 t1 R, Delta t = t (x) t."""
    if check_ybe and not ybe_check(R):
        raise YBEFailure(f"R-matrix {R.name} does not satisfy the Yang-Baxter equation")
    rels, t = frt_relations(R, prefix)
    gens = [g for row in t for g in row]
    params = ParamSet(sorted(set().union(*(v.parameters() for v in R.entries.values())))) if R.entries else None
    name = name or f"frt_{R.name}"
    P = rules_from_relations(rels, gens, name=name, params=params)
    cop = _matrix_coproduct(t, R.n)
    cou = _matrix_counit(t, R.n)
    H = HopfSpec(P, cop, cou, None, name=name)
    values = {}
    for i, j, k, l in itertools.product(range(R.n), repeat=4):
        v = R[(i, k, j, l)]
        if v:
            values[(t[i][j], t[k][l])] = v
    return FRTBialgebra(R, H, Bicharacter(values, cop, cou), t)


def bicharacter_from_rmatrix(R: RMatrix, frt: FRTBialgebra) -> Bicharacter:
    """Bicharacter R(t^i_j, t^k_l) = R^{ik}_{jl} on frt's generators (R may differ from frt.R)."""
    t = frt.names
    values = {}
    for i, j, k, l in itertools.product(range(R.n), repeat=4):
        v = R[(i, k, j, l)]
        if v:
            values[(t[i][j], t[k][l])] = v
    return Bicharacter(values, frt.hopf.coproduct, frt.hopf.counit)


def dqua_check(A: Presentation, R: Bicharacter, max_degree: int = 2, name=None, words=None) -> CheckReport:
    """g(1) h(1) R(h(2), g(2)) = R(h(1), g(1)) h(2) g(2) for all normal word pairs."""
    rep = CheckReport(name or A.name or "?", "dqua", max_degree)
    rep.notes.append(f"bicharacter extension: {Bicharacter.convention}")
    words = words if words is not None else A.normal_words(max_degree)
    with timed(rep):
        for h in words:
            Dh = R.free_coproduct(h)
            for g in words:
                Dg = R.free_coproduct(g)
                lhs, rhs = {}, {}
                for (h1, h2), ch in Dh.items():
                    for (g1, g2), cg in Dg.items():
                        c = ch * cg
                        v = R(h2, g2)
                        if v:
                            _acc(lhs, g1 + h1, c * v)
                        v = R(h1, g1)
                        if v:
                            _acc(rhs, h2 + g2, c * v)
                res = A.normal_form(Element(lhs)) - A.normal_form(Element(rhs))
                if res:
                    rep.fail("pair", f"({format_word(h)}, {format_word(g)})", A.format(res))
    return rep


# -- braided matrices B(R) ----------------------------------------------------


def _algmat_mul(A, B, n2):
    """Product of n^2 x n^2 matrices whose entries are Elements or Scalars."""
    out = [[Element.zero() for _ in range(n2)] for _ in range(n2)]
    for i in range(n2):
        for k in range(n2):
            a = A[i][k]
            if not a:
                continue
            for j in range(n2):
                b = B[k][j]
                if not b:
                    continue
                if isinstance(a, Scalar) and isinstance(b, Scalar):
                    out[i][j] = out[i][j] + Element.scalar(a * b)
                elif isinstance(a, Scalar):
                    out[i][j] = out[i][j] + b.scale(a)
                elif isinstance(b, Scalar):
                    out[i][j] = out[i][j] + a.scale(b)
                else:
                    out[i][j] = out[i][j] + a * b
    return out


def _scalar_mat(R: RMatrix):
    return R.to_matrix()


def _u1(names, n):
    # (u1)^{ik}_{jl} = u^i_j delta^k_l
    return [
        [Element.gen(names[i][j]) if k == l else Element.zero() for j in range(n) for l in range(n)]
        for i in range(n)
        for k in range(n)
    ]


def _u2(names, n):
    return [
        [Element.gen(names[k][l]) if i == j else Element.zero() for j in range(n) for l in range(n)]
        for i in range(n)
        for k in range(n)
    ]


def braided_matrix_relations(R: RMatrix, prefix="u"):
    """Entries of R21 u1 R u2 - u2 R21 u1 R."""
    n = R.n
    n2 = n * n
    u = [[_gen_name(prefix, i, j) for j in range(n)] for i in range(n)]
    Rm = _scalar_mat(R)
    R21 = [[R[(k, i, l, j)] for j in range(n) for l in range(n)] for i in range(n) for k in range(n)]
    U1, U2 = _u1(u, n), _u2(u, n)
    lhs = _algmat_mul(_algmat_mul(_algmat_mul(R21, U1, n2), Rm, n2), U2, n2)
    rhs = _algmat_mul(_algmat_mul(_algmat_mul(U2, R21, n2), U1, n2), Rm, n2)
    rels = []
    for r in range(n2):
        for c in range(n2):
            d = lhs[r][c] - rhs[r][c]
            if d:
                rels.append(d)
    return rels, u


def braided_matrix_braiding(R: RMatrix, u) -> Braiding:
    """Solve Psi(u1 (x) R u2) = R u2 R^-1 (x) u1 R for Psi on generator pairs.

    Entrywise, for fixed (i, l):
        sum_{a,d} R^{ak}_{jd} Psi(u^i_a (x) u^d_l)
            = sum R^{ik}_{cd} (R^-1)^{cf}_{ab} R^{eb}_{jl} u^d_f (x) u^a_e
    and the coefficient matrix M[(j,k),(a,d)] = R^{ak}_{jd} is inverted
    (this is where biinvertibility is needed).
    """
    n = R.n
    Rinv = R.inverse()
    Minv = R.second_inverse()
    table = {}
    for i in range(n):
        for l in range(n):
            rhs = {}
            for j in range(n):
                for k in range(n):
                    acc = {}
                    for c, d, f, a, b, e in itertools.product(range(n), repeat=6):
                        r1 = R[(i, k, c, d)]
                        if not r1:
                            continue
                        r2 = Rinv[(c, f, a, b)]
                        if not r2:
                            continue
                        r3 = R[(e, b, j, l)]
                        if not r3:
                            continue
                        _acc(acc, ((u[d][f],), (u[a][e],)), r1 * r2 * r3)
                    rhs[(j, k)] = acc
            for a in range(n):
                for d in range(n):
                    col = a * n + d
                    out = {}
                    for j in range(n):
                        for k in range(n):
                            m = Minv[col][j * n + k]
                            if m:
                                for lr, c in rhs[(j, k)].items():
                                    _acc(out, lr, m * c)
                    table[(u[i][a], u[d][l])] = out
    return Braiding(table, f"BR({R.name})")


def braided_matrices(R: RMatrix, prefix="u", name=None, check_ybe=True, order=None) -> HopfSpec:
    """B(R) with braided coproduct Delta u = u (x) u and the solved braiding.

    The default generator order puts the diagonal entries first. For the
    standard sl2 R this keeps every rule polynomial in q, q^-1, so the rules
    specialise to plain commutators at q = 1.
    """
    if not R.is_biinvertible():
        raise NotBiinvertible(f"R-matrix {R.name} is not biinvertible")
    if check_ybe and not ybe_check(R):
        raise YBEFailure(f"R-matrix {R.name} does not satisfy the Yang-Baxter equation")
    rels, u = braided_matrix_relations(R, prefix)
    if order is None:
        n = R.n
        gens = [u[i][i] for i in range(n)] + [u[i][j] for i in range(n) for j in range(n) if i != j]
    else:
        gens = list(order)
    params = ParamSet(sorted(set().union(*(v.parameters() for v in R.entries.values()))))
    name = name or f"braided_matrices_{R.name}"
    P = rules_from_relations(rels, gens, name=name, params=params)
    psi = braided_matrix_braiding(R, u)
    return HopfSpec(P, _matrix_coproduct(u, R.n), _matrix_counit(u, R.n), None, braiding=psi, name=name)


def is_commutation_rule(lhs, rhs: Element):
    """True when lhs = h g and rhs = g h (coefficient 1)."""
    return len(lhs) == 2 and rhs.terms == {(lhs[1], lhs[0]): ONE}
