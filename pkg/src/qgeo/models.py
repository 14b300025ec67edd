"""Built-in models: the Planck-scale toy model, the so3 bicrossproduct, the
quantum-braided plane, FRT and braided-matrix instances, finite Hopf
algebras of small groups, plus Heisenberg dynamics and the Planck regime report.

Parameters: ``hbar``, ``mu`` (= 1/(M G)), ``m`` (free-fall mass) and ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .braided import (
    FRTBialgebra,
    RMatrix,
    braided_matrices,
    braiding_from_rmatrix,
    flip_braiding,
    frt_bialgebra,
)
from .freealg import Element, Presentation, commutator, overlap_confluence
from .groups import bicrossproduct, builtin_groups, find_factorisations, function_hopf, group_hopf, matched_pair
from .hopf import ConstructionFailure, HopfSpec, solve_antipode, tensor
from .reports import CheckReport
from .scalars import IMAG, ONE, ZERO, ParamSet, Scalar, limit_at

E = Element
HBAR = Scalar.param("hbar")
MU = Scalar.param("mu")
MASS = Scalar.param("m")
Q = Scalar.param("q")
IHBAR = IMAG * HBAR

BLACK_HOLE_NOTE = (
    "comparison only: radial infall near a black hole behaves like "
    "xdot = -(1 - (1 + x/(2 M G))^-1), not computed here"
)


class UnknownModel(KeyError):
    pass


# -- planck1d -------------------------------------------------------------------------


def planck_model(name="planck1d") -> HopfSpec:
    """Position x, momentum p and lam = exp(-mu x) with [x, p] = i hbar (1 - lam).

    The lam rules follow from p acting as -i hbar (1 - lam) d/dx with
    d lam/dx = -mu lam.
    """
    x, lam, lam_inv, p = (E.gen(g) for g in ("x", "lam", "lam_inv", "p"))
    one = E.one()
    rules = [
        (("lam", "x"), x * lam),
        (("lam_inv", "x"), x * lam_inv),
        (("lam", "lam_inv"), one),
        (("lam_inv", "lam"), one),
        (("p", "x"), x * p - (one - lam).scale(IHBAR)),
        (("p", "lam"), lam * p + (lam - lam * lam).scale(IHBAR * MU)),
        (("p", "lam_inv"), lam_inv * p - (lam_inv - one).scale(IHBAR * MU)),
    ]
    P = Presentation(["x", "lam", "lam_inv", "p"], rules, name=name, params=ParamSet(["hbar", "mu", "m"]))
    cop = {
        "x": tensor(x, 1) + tensor(1, x),
        "lam": tensor(lam, lam),
        "lam_inv": tensor(lam_inv, lam_inv),
        "p": tensor(p, lam) + tensor(1, p),
    }
    cou = {"x": ZERO, "lam": ONE, "lam_inv": ONE, "p": ZERO}
    inverses = {"lam": lam_inv, "lam_inv": lam}
    S = solve_antipode(P, cop, cou, inverses, name)
    return HopfSpec(P, cop, cou, S, inverses=inverses, name=name, annotations=[BLACK_HOLE_NOTE])


def abelianize(e: Element, P: Presentation) -> Element:
    """Image in the commutative algebra: sort each word, cancel g.g_inv pairs."""
    pairs = _inverse_pairs(P)
    order = {g: k for k, g in enumerate(P.gens)}
    out = {}
    for w, c in e.terms.items():
        counts = {}
        for g in w:
            counts[g] = counts.get(g, 0) + 1
        for g, h in pairs:
            k = min(counts.get(g, 0), counts.get(h, 0))
            if k:
                counts[g] -= k
                counts[h] -= k
        word = tuple(g for g in sorted(counts, key=order.__getitem__) for _ in range(counts[g]))
        out[word] = out.get(word, ZERO) + c
    return E({w: c for w, c in out.items() if c})


def _inverse_pairs(P):
    return [(g, g + "_inv") for g in P.gens if g + "_inv" in P.gens]


@dataclass
class Flow:
    quantum: Element
    classical: Element


def heisenberg_flow(M: HopfSpec, H: Element, a: Element) -> Flow:
    """Quantum velocity (i/hbar)[H, a] in normal form and its classical image.

    The classical image abelianizes first and sends hbar -> 0 afterwards.
    """
    P = M.P
    quantum = commutator(H, a, P).scale(IMAG / HBAR)
    ab = abelianize(quantum, P)
    classical = E({w: limit_at(c, "hbar", 0) for w, c in ab.terms.items()})
    return Flow(quantum, classical)


def free_fall_hamiltonian(M: HopfSpec = None) -> Element:
    p = E.gen("p")
    return (p * p).scale(ONE / (2 * MASS))


# -- bicso3 ----------------------------------------------------------------------------------

_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def levi_civita(i, j, k):
    return _EPS.get((i, j, k), 0)


def bicso3_model(name="bicso3", check=True) -> HopfSpec:
    """su2 generators e_i acting on coordinates x_i, with mu_hat = (1 + mu x3)^-1.

    mu_hat has weight 0 so that x3.mu_hat -> (1 - mu_hat)/mu is order-decreasing.
    """
    xs = [f"x{k}" for k in (1, 2, 3)]
    es = [f"e{k}" for k in (1, 2, 3)]
    gens = xs + ["mu_hat"] + es
    X = [E.gen(g) for g in xs]
    e = [E.gen(g) for g in es]
    mh = E.gen("mu_hat")
    one = E.one()
    xx = X[0] * X[0] + X[1] * X[1] + X[2] * X[2]
    rules = []
    for i in range(3):
        for j in range(i):
            rules.append(((xs[i], xs[j]), X[j] * X[i]))
    for i in range(3):
        rules.append((("mu_hat", xs[i]), X[i] * mh))
    rules.append((("x3", "mu_hat"), (one - mh).scale(ONE / MU)))
    for i in range(3):
        for j in range(i):
            # e_i e_j = e_j e_i - [e_j, e_i]
            br = sum((e[k].scale(IHBAR * levi_civita(j, i, k)) for k in range(3)), E.zero())
            rules.append(((es[i], es[j]), e[j] * e[i] - br))
    for i in range(3):
        # [e_i, mu_hat] = -mu mu_hat [e_i, x3] mu_hat
        c = -IHBAR * MU
        br = sum((X[k].scale(c * levi_civita(i, 2, k)) for k in range(3)), E.zero()) * mh * mh
        rules.append(((es[i], "mu_hat"), mh * e[i] + br))
        for j in range(3):
            br = sum((X[k].scale(IHBAR * levi_civita(i, j, k)) for k in range(3)), E.zero())
            br = br - (xx * mh).scale(IHBAR * MU / 2 * levi_civita(i, j, 2))
            rules.append(((es[i], xs[j]), X[j] * e[i] + br))
    weights = {g: 1 for g in gens}
    weights["mu_hat"] = 0
    P = Presentation(gens, rules, weights=weights, name=name, params=ParamSet(["hbar", "mu"]))
    if check:
        rep = overlap_confluence(P, 3)
        if not rep.ok:
            v = rep.violations[0]
            raise ConstructionFailure(f"{name}: unresolved overlap {v.word}: {v.residual}")
    nu = one + X[2].scale(MU)
    cop = {xs[i]: tensor(X[i], 1) + tensor(nu, X[i]) for i in range(3)}
    cop["mu_hat"] = tensor(mh, mh)
    for i in range(3):
        cop[es[i]] = tensor(e[i], mh) + tensor(e[2], X[i] * mh).scale(MU) + tensor(1, e[i])
    cou = {g: ZERO for g in gens}
    cou["mu_hat"] = ONE
    inverses = {"mu_hat": nu}
    S = solve_antipode(P, cop, cou, inverses, name)
    return HopfSpec(P, cop, cou, S, inverses=inverses, name=name)


# -- braided plane and matrices -----------------------------------------------------------------


def qplane_model(name="qplane", braiding=None) -> HopfSpec:
    """yx = q xy with additive braided coproduct; braiding is q * (R o flip) for the sl2 R."""
    x, y = E.gen("x"), E.gen("y")
    P = Presentation(["x", "y"], [(("y", "x"), (x * y).scale(Q))], name=name, params=ParamSet(["q"]))
    if braiding is None:
        braiding = braiding_from_rmatrix(RMatrix.standard_sl2(), Q, ["x", "y"])
    cop = {"x": tensor(x, 1) + tensor(1, x), "y": tensor(y, 1) + tensor(1, y)}
    cou = {"x": ZERO, "y": ZERO}
    S = {"x": -x, "y": -y}
    return HopfSpec(P, cop, cou, S, braiding=braiding, name=name)


def qplane_flip_model() -> HopfSpec:
    return qplane_model("qplane_flip", braiding=flip_braiding(["x", "y"]))


def frt_sl2() -> FRTBialgebra:
    return frt_bialgebra(RMatrix.standard_sl2(), name="frt_sl2")


def braided_matrices_sl2() -> HopfSpec:
    return braided_matrices(RMatrix.standard_sl2(), name="braided_matrices_sl2")


def s3_bicrossproduct():
    """E = k(C2) >|<| kC3 from S3 = C3 . C2."""
    S3 = builtin_groups()["S3"]
    F = next(f for f in find_factorisations(S3) if f.orders() == (3, 2))
    return bicrossproduct(matched_pair(F), name="bicross_S3")


# -- regimes ------------------------------------------------------------------------------------


@dataclass
class RegimeReport:
    mM: Scalar
    planck_mass_sq: Scalar
    regime: str
    annotation: str = BLACK_HOLE_NOTE

    def to_report(self) -> CheckReport:
        rep = CheckReport("planck1d", "regime")
        rep.notes += [f"mM = {self.mM}", f"m_P^2 = hbar/G = {self.planck_mass_sq}", f"regime: {self.regime}", self.annotation]
        return rep


def regime_report(m_val, M_val, hbar, G) -> RegimeReport:
    """Compare mM with m_P^2 = hbar/G (all inputs parameter-free rationals)."""
    vals = [v if isinstance(v, Scalar) else Scalar(v) for v in (m_val, M_val, hbar, G)]
    rats = [v.as_rational() for v in vals]
    if any(r is None for r in rats):
        raise ValueError("regime inputs must be parameter-free rationals")
    m_, M_, h_, G_ = vals
    mM = m_ * M_
    mp2 = h_ / G_
    a, b = mM.as_rational(), mp2.as_rational()
    regime = "gravitational" if a > b else "quantum" if a < b else "boundary"
    return RegimeReport(mM, mp2, regime)


# -- registry ----------------------------------------------------------------------------------


def _registry():
    reg = {
        "planck1d": planck_model,
        "bicso3": bicso3_model,
        "qplane": qplane_model,
        "qplane_flip": qplane_flip_model,
        "frt_sl2": frt_sl2,
        "braided_matrices_sl2": braided_matrices_sl2,
        "bicross_S3": s3_bicrossproduct,
    }
    for gname in builtin_groups():
        reg[f"k({gname})"] = (lambda g=gname: function_hopf(builtin_groups()[g]))
        reg[f"k{gname}"] = (lambda g=gname: group_hopf(builtin_groups()[g]))
    return reg


def model_registry():
    return sorted(_registry())


@lru_cache(maxsize=None)
def lookup(name):
    reg = _registry()
    if name not in reg:
        raise UnknownModel(name)
    return reg[name]()
