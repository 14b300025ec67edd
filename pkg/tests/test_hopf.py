import pytest

from qgeo.finhopf import (
    DimensionMismatch,
    check_pairing_duality,
    dual_findim,
    find_isomorphism,
    hopf_axiom_reports,
    pairing_eval,
    same_structure,
)
from qgeo.freealg import Element, Presentation
from qgeo.groups import builtin_groups, function_hopf, group_hopf
from qgeo.hopf import (
    ConstructionFailure,
    HopfSpec,
    SCALARS,
    antipode_check,
    check_relations_respected,
    coassociativity_check,
    counit_antipode_check,
    extend_algebra_map,
    hopf_axioms,
    iterated_coproducts,
    solve_antipode,
    tensor,
)
from qgeo.models import planck_model
from qgeo.scalars import ONE, ZERO, Scalar

E = Element
x, p, lam, lam_inv = (E.gen(g) for g in ("x", "p", "lam", "lam_inv"))
hbar, mu = Scalar.param("hbar"), Scalar.param("mu")


@pytest.fixture(scope="module")
def planck():
    return planck_model()


def test_delta_of_x_squared(planck):
    D = planck.delta
    expect = tensor(x * x, 1) + tensor(x, x).scale(2) + tensor(1, x * x)
    assert D(x * x) == planck.T2.normal_form(expect)


def test_delta_of_p(planck):
    assert planck.Delta(p) == tensor(p, lam) + tensor(1, p)


def test_counit_of_xp(planck):
    assert planck.epsilon(x * p) == ZERO


def test_extend_algebra_map_to_scalars(planck):
    eps = extend_algebra_map({"x": E.zero(), "lam": E.one(), "lam_inv": E.one(), "p": E.zero()}, planck.P, SCALARS)
    assert eps(lam * lam_inv + x) == E.one()


def test_relations_respected(planck):
    assert check_relations_respected(planck.delta, planck.P).ok
    assert check_relations_respected(planck.eps, planck.P).ok


def test_altered_coproduct_breaks_px_rule(planck):
    cop = dict(planck.coproduct)
    cop["p"] = tensor(p, 1) + tensor(1, p)
    H = HopfSpec(planck.P, cop, planck.counit, None, name="planck-primitive-p")
    rep = check_relations_respected(H.delta, H.P)
    assert any("p.x" in v.label for v in rep.violations)


def test_coassociativity_values(planck):
    assert coassociativity_check(planck, 0).ok
    lhs = planck.T3.normal_form(tensor(p, lam, lam) + tensor(1, p, lam) + tensor(1, 1, p))
    assert iterated_coproducts(planck, p) == (lhs, lhs)
    for g in (lam, x):
        both = iterated_coproducts(planck, g)
        assert both[0] == both[1] == planck.T3.normal_form(
            tensor(g, g, g) if g == lam else tensor(x, 1, 1) + tensor(1, x, 1) + tensor(1, 1, x)
        )


def test_solved_antipode(planck):
    S = planck.antipode
    assert S["x"] == -x
    assert S["lam"] == lam_inv
    assert S["p"] == planck.P.normal_form(-(p * lam_inv))
    assert planck.P.normal_form(planck.S(p) * lam + p).is_zero()


def test_counit_and_antipode_axioms_to_degree_4(planck):
    reps = counit_antipode_check(planck, 4)
    assert all(r.ok for r in reps)
    assert all(r.ok for r in hopf_axioms(planck, 4))


def test_antipode_solve_needs_invertible_left_factor():
    P = Presentation(["g"], [], name="free-grouplike")
    g = E.gen("g")
    with pytest.raises(ConstructionFailure):
        solve_antipode(P, {"g": tensor(g, g)}, {"g": ONE}, {}, "free-grouplike")


def test_missing_antipode_is_skipped(planck):
    H = HopfSpec(planck.P, planck.coproduct, planck.counit, None)
    assert antipode_check(H, 2).status == "skipped"


# -- finite dimension ---------------------------------------------------------------------


@pytest.fixture(scope="module")
def groups():
    return builtin_groups()


def test_dual_of_group_algebra_is_function_algebra(groups):
    for name in ("C2", "S3"):
        G = groups[name]
        assert same_structure(dual_findim(group_hopf(G)), function_hopf(G))
        assert find_isomorphism(dual_findim(group_hopf(G)), function_hopf(G)) is not None


def test_double_dual_is_identity(groups):
    for H in (group_hopf(groups["S3"]), function_hopf(groups["D4"])):
        DD = dual_findim(dual_findim(H))
        assert same_structure(DD, H) and DD.labels == H.labels


def test_dual_passes_axioms(groups):
    D = dual_findim(group_hopf(groups["S3"]))
    assert all(r.ok for r in hopf_axiom_reports(D))


def test_pairing_examples(groups):
    G = groups["S3"]
    H = group_hopf(G)
    n = G.order
    for g in range(n):
        for h in range(n):
            assert pairing_eval(H, {h: ONE}, {g: ONE}) == (ONE if g == h else ZERO)
    kG = function_hopf(G)
    dg = kG.product({1: ONE}, {1: ONE})
    assert pairing_eval(H, {1: ONE}, dg) == pairing_eval(H, {1: ONE}, {1: ONE})
    with pytest.raises(DimensionMismatch):
        pairing_eval(H, [1, 0], [1] * n)


def test_pairing_duality_on_s3(groups):
    assert check_pairing_duality(group_hopf(groups["S3"])).ok
    assert check_pairing_duality(function_hopf(groups["S3"])).ok


def test_non_isomorphic_detected(groups):
    assert find_isomorphism(group_hopf(groups["S3"]), function_hopf(groups["S3"])) is None
