import random

import pytest
import sympy

from conftest import random_element
from qgeo.freealg import Element, commutator, overlap_confluence
from qgeo.hopf import check_relations_respected, extend_algebra_map, tensor
from qgeo.models import (
    UnknownModel,
    abelianize,
    bicso3_model,
    free_fall_hamiltonian,
    heisenberg_flow,
    levi_civita,
    lookup,
    model_registry,
    planck_model,
    regime_report,
)
from qgeo.scalars import IMAG, ONE, Scalar, limit_at

E = Element
hbar, mu, m = (Scalar.param(n) for n in ("hbar", "mu", "m"))
IH = IMAG * hbar
x, lam, lam_inv, p = (E.gen(g) for g in ("x", "lam", "lam_inv", "p"))


@pytest.fixture(scope="module")
def planck():
    return planck_model()


@pytest.fixture(scope="module")
def bicso3():
    return bicso3_model()


# -- differential-operator oracle for planck1d --------------------------------------------

X, HB, MU, M = sympy.symbols("x hbar mu m")
F = sympy.Function("f")(X)
LAM = sympy.exp(-MU * X)


def _act(gen, f):
    if gen == "x":
        return X * f
    if gen == "lam":
        return LAM * f
    if gen == "lam_inv":
        return f / LAM
    return -sympy.I * HB * (1 - LAM) * sympy.diff(f, X)


def _operator(e, f=F):
    out = 0
    for w, c in e.terms.items():
        g = f
        for gen in reversed(w):
            g = _act(gen, g)
        out += c.to_sympy().subs({"hbar": HB, "mu": MU, "m": M}) * g
    return out


def _same_operator(a, b):
    return sympy.simplify(sympy.expand(_operator(a) - _operator(b))) == 0


def test_oracle_commutators(planck):
    P = planck.P
    for a, b in [(x, p), (lam, p), (lam_inv, p), (x, lam)]:
        c = commutator(a, b, P)
        assert _same_operator(c, a * b - b * a), (a, b)


def test_oracle_normal_forms(planck):
    rng = random.Random(3)
    for _ in range(8):
        e = random_element(rng, planck.P, max_len=3, max_terms=2)
        assert _same_operator(planck.P.normal_form(e), e)


def test_commutator_values(planck):
    P = planck.P
    assert commutator(x, p, P) == (E.one() - lam).scale(IH)
    assert commutator(lam, p, P) == (lam - lam * lam).scale(-IH * mu)
    assert commutator(lam_inv, p, P) == (lam_inv - E.one()).scale(IH * mu)


def test_confluence_at_degree_4(planck):
    assert overlap_confluence(planck.P, 4).ok


def test_mu_to_zero_limit(planck):
    # lam = exp(-mu x) -> 1: [x, p] -> 0 and p becomes primitive
    P = planck.P
    to_flat = extend_algebra_map({"x": x, "lam": E.one(), "lam_inv": E.one(), "p": p}, P, P)
    assert to_flat(commutator(x, p, P)).is_zero()
    flat = E({})
    for w, c in planck.Delta(p).terms.items():
        flat = flat + E({tuple(g for g in w if g[0] not in ("lam", "lam_inv")): c})
    assert flat == tensor(p, 1) + tensor(1, p)


def test_counit_and_antipode_values(planck):
    assert planck.epsilon(lam * x + lam_inv) == ONE
    assert planck.antipode["lam_inv"] == lam


# -- flow ---------------------------------------------------------------------------------


def test_free_fall_flow(planck):
    H = free_fall_hamiltonian()
    fl = heisenberg_flow(planck, H, x)
    one = E.one()
    expect = (p * (one - lam) + (one - lam) * p).scale(ONE / (2 * m))
    assert fl.quantum == planck.P.normal_form(expect)
    assert fl.classical == (p - lam * p).scale(ONE / m)


def test_flow_examples(planck):
    assert heisenberg_flow(planck, p, x).quantum == E.one() - lam
    H = free_fall_hamiltonian()
    assert heisenberg_flow(planck, H, H).quantum.is_zero()
    assert heisenberg_flow(planck, x, x).classical.is_zero()


def test_flow_is_a_derivation(planck):
    P = planck.P
    rng = random.Random(5)
    for _ in range(25):
        H, a, b = (random_element(rng, P, max_len=2, max_terms=2) for _ in range(3))
        lhs = heisenberg_flow(planck, H, a * b).quantum
        rhs = heisenberg_flow(planck, H, a).quantum * b + a * heisenberg_flow(planck, H, b).quantum
        assert lhs == P.normal_form(rhs)


def test_abelianize(planck):
    P = planck.P
    assert abelianize(p * x * lam * lam_inv, P) == x * p
    assert abelianize(lam * lam_inv * lam, P) == lam


def test_classical_limit_of_commutator_is_zero(planck):
    rng = random.Random(9)
    for _ in range(10):
        a, b = random_element(rng, planck.P, 2, 2), random_element(rng, planck.P, 2, 2)
        c = abelianize(commutator(a, b, planck.P), planck.P)
        assert all(limit_at(v, "hbar", 0).is_zero() for v in c.terms.values())


# -- bicso3 -------------------------------------------------------------------------------


def test_levi_civita():
    assert levi_civita(0, 1, 2) == 1 and levi_civita(1, 0, 2) == -1 and levi_civita(0, 0, 1) == 0


def test_bicso3_su2_brackets(bicso3):
    P = bicso3.P
    e1, e2, e3 = (E.gen(f"e{k}") for k in (1, 2, 3))
    assert commutator(e1, e2, P) == e3.scale(IH)
    assert commutator(e2, e3, P) == e1.scale(IH)
    assert commutator(e3, e1, P) == e2.scale(IH)


def test_bicso3_action_on_coordinates(bicso3):
    P = bicso3.P
    e1, x2, x3 = E.gen("e1"), E.gen("x2"), E.gen("x3")
    assert commutator(e1, x3, P) == x2.scale(-IH)
    assert commutator(E.gen("x1"), x2, P).is_zero()


def test_bicso3_mu_hat_series_oracle(bicso3):
    # mu_hat = sum_k (-mu x3)^k; truncate at x3^6 and compare terms up to x3^5
    P = bicso3.P
    e1, x2 = E.gen("e1"), E.gen("x2")
    series = sum(((E.word(("x3",) * k)).scale((-mu) ** k) for k in range(7)), E.zero())
    lhs = commutator(e1, series, P)
    expect = sum(
        ((x2 * E.word(("x3",) * k)).scale(IH * mu * (k + 1) * (-mu) ** k) for k in range(6)), E.zero()
    )
    low = E({w: c for w, c in lhs.terms.items() if w.count("x3") <= 5})
    assert low == P.normal_form(expect)
    mh = E.gen("mu_hat")
    assert commutator(e1, mh, P) == P.normal_form((x2 * mh * mh).scale(IH * mu))


def test_bicso3_mu_hat_inverse(bicso3):
    P = bicso3.P
    mh, x3 = E.gen("mu_hat"), E.gen("x3")
    assert P.normal_form(mh * (E.one() + x3.scale(mu))) == E.one()
    assert P.normal_form((E.one() + x3.scale(mu)) * mh) == E.one()


def test_bicso3_structure_respects_relations(bicso3):
    assert overlap_confluence(bicso3.P, 3).ok
    assert check_relations_respected(bicso3.delta, bicso3.P).ok
    assert check_relations_respected(bicso3.eps, bicso3.P).ok


def test_bicso3_antipode(bicso3):
    S = bicso3.antipode
    mh = E.gen("mu_hat")
    assert S["x1"] == bicso3.P.normal_form(-(E.gen("x1") * mh))
    assert S["mu_hat"] == E.one() + E.gen("x3").scale(mu)
    assert S["e3"] == -E.gen("e3")


# -- regimes and registry -----------------------------------------------------------------


@pytest.mark.parametrize(
    "vals,regime", [((4, 4, 1, 1), "gravitational"), ((1, 1, 100, 1), "quantum"), ((2, 3, 6, 1), "boundary")]
)
def test_regime(vals, regime):
    r = regime_report(*vals)
    assert r.regime == regime
    assert r.mM == Scalar(vals[0] * vals[1])
    assert r.to_report().ok


def test_regime_rejects_symbols():
    with pytest.raises(ValueError):
        regime_report(m, 1, 1, 1)


def test_registry():
    names = model_registry()
    assert {"planck1d", "bicso3", "qplane", "frt_sl2", "braided_matrices_sl2", "k(S3)", "kS3"} <= set(names)
    assert lookup("planck1d") is lookup("planck1d")
    with pytest.raises(UnknownModel):
        lookup("no-such-model")
