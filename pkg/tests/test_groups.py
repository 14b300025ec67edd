import json

import pytest

from qgeo.finhopf import AxiomFailure, dual_findim, find_isomorphism, hopf_axiom_reports, same_structure, tensor_hopf
from qgeo.groups import (
    BoundExceeded,
    Factorisation,
    NotAGroup,
    bicrossproduct,
    builtin_groups,
    convolution,
    cyclic_group,
    extension_reports,
    find_factorisations,
    fourier,
    fourier_report,
    function_hopf,
    group_from_json,
    group_from_perms,
    group_from_table,
    group_hopf,
    inverse_fourier,
    matched_pair,
    matched_pair_violations,
)
from qgeo.scalars import ONE, Scalar


@pytest.fixture(scope="module")
def G():
    return builtin_groups()


def test_c2_table():
    C2 = group_from_table(["e", "u"], [[0, 1], [1, 0]])
    assert C2.order == 2 and C2.identity == 0


def test_s3_table_roundtrip(G):
    S3 = G["S3"]
    again = group_from_table(S3.labels, S3.table)
    assert again.order == 6


def test_broken_associativity_rejected():
    # a Latin square with identity 0 that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup, match="associativity"):
        group_from_table(list("abcde"), table)
    with pytest.raises(NotAGroup):
        group_from_table(["e", "u"], [[0, 1], [1, 2]])


def test_perm_groups_orders(G):
    assert [G[n].order for n in ("C2", "C3", "C4", "C2xC2", "S3", "D4", "S4")] == [2, 3, 4, 4, 6, 8, 24]
    assert [len(G[n].subgroups()) for n in ("S3", "D4", "S4")] == [6, 10, 30]


def test_json_inputs():
    A = group_from_json(json.dumps({"labels": ["e", "u"], "table": [[0, 1], [1, 0]]}))
    B = group_from_json({"perm_gens": [["(1 2 3)"], ["(1 2)"]]})
    assert A.order == 2 and B.order == 6


def test_order_bound():
    with pytest.raises(BoundExceeded):
        group_from_perms(["(1 2 3 4 5)", "(1 2)"], bound=64)
    with pytest.raises(BoundExceeded):
        find_factorisations(cyclic_group(70))


def _find(fs, a, b):
    return [f for f in fs if f.orders() == (a, b)]


def test_s3_factorisations(G):
    S3 = G["S3"]
    fs = find_factorisations(S3)
    c = S3.index["(1 2 3)"]
    t = S3.index["(1 2)"]
    C3, C2 = S3.closure([c]), S3.closure([t])
    assert Factorisation(S3, C3, C2) in fs
    assert all(f.is_valid() for f in fs)


def test_c4_trivial_factorisations(G):
    C4 = G["C4"]
    fs = find_factorisations(C4)
    full, triv = frozenset(range(4)), frozenset([C4.identity])
    assert Factorisation(C4, full, triv) in fs and Factorisation(C4, triv, full) in fs


def test_s4_has_8_by_3(G):
    fs = _find(find_factorisations(G["S4"]), 8, 3)
    assert fs and all(f.is_valid() for f in fs)


def test_factorisations_closed_under_swap(G):
    for name in ("S3", "D4", "S4", "C2xC2"):
        fs = set(find_factorisations(G[name]))
        assert {f.swapped() for f in fs} == fs


def test_s3_matched_pair_actions(G):
    S3 = G["S3"]
    c, t = S3.index["(1 2 3)"], S3.index["(1 2)"]
    F = Factorisation(S3, S3.closure([c]), S3.closure([t]))
    mp = matched_pair(F)
    c2 = S3.table[c][c]
    assert mp.left[(t, c)] == c2
    assert mp.right[(t, c)] == t
    e = S3.identity
    assert all(mp.left[(e, g)] == g and mp.right[(e, g)] == e for g in F.G)
    assert matched_pair_violations(mp) == []


def test_trivial_factorisation_has_trivial_actions(G):
    X = G["S3"]
    F = Factorisation(X, frozenset(range(6)), frozenset([X.identity]))
    mp = matched_pair(F)
    assert all(mp.left[(m, g)] == g and mp.right[(m, g)] == m for (m, g) in mp.left)


def test_trivial_actions_give_tensor_product(G):
    X = G["C2xC2"]
    a, b = X.index["(c,e)"], X.index["(e,c)"]
    F = Factorisation(X, X.closure([a]), X.closure([b]))
    E = bicrossproduct(matched_pair(F)).hopf
    Ggrp, Mgrp = X.subgroup(F.G), X.subgroup(F.M)
    kM, kG = function_hopf(Mgrp), group_hopf(Ggrp)
    T = tensor_hopf(kM, kG)
    assert same_structure(E, T)


def test_bicrossproducts_of_s3(G):
    for F in find_factorisations(G["S3"]):
        bp = bicrossproduct(matched_pair(F), verify=True)
        assert all(r.ok for r in extension_reports(bp))
        swapped = bicrossproduct(matched_pair(F.swapped()))
        assert find_isomorphism(dual_findim(bp.hopf), swapped.hopf) is not None


def test_bicrossproduct_of_s4(G):
    F = _find(find_factorisations(G["S4"]), 8, 3)[0]
    bp = bicrossproduct(matched_pair(F))
    assert all(r.ok for r in hopf_axiom_reports(bp.hopf))
    assert all(r.ok for r in extension_reports(bp))
    swapped = bicrossproduct(matched_pair(F.swapped()))
    assert find_isomorphism(dual_findim(bp.hopf), swapped.hopf) is not None


def test_bicrossproduct_rejects_broken_structure(G):
    F = find_factorisations(G["S3"])[3]
    mp = matched_pair(F)
    bad = dict(mp.left)
    k = next(k for k, v in bad.items() if k[0] != G["S3"].identity)
    bad[k] = G["S3"].identity if bad[k] != G["S3"].identity else next(iter(F.G - {bad[k]}))
    mp.left = bad
    with pytest.raises(AxiomFailure):
        bicrossproduct(mp, verify=True)


def test_function_and_group_hopf_axioms(G):
    for name in ("C2", "C3", "C2xC2", "S3", "D4"):
        for H in (function_hopf(G[name]), group_hopf(G[name])):
            assert all(r.ok for r in hopf_axiom_reports(H)), (name, H.name)


def test_function_coproduct_c2(G):
    C2 = G["C2"]
    H = function_hopf(C2)
    e, u = C2.identity, 1 - C2.identity
    assert H.comult[e] == {(e, e): ONE, (u, u): ONE}
    kG = group_hopf(C2)
    assert all(kG.comult[g] == {(g, g): ONE} for g in range(2))


def test_fourier(G):
    S3 = G["S3"]
    e = S3.identity
    assert fourier(S3, {e: ONE}) == {e: ONE}
    assert fourier_report(S3).ok
    for a in range(6):
        assert inverse_fourier(S3, fourier(S3, {a: ONE})) == {a: ONE}
    f = [Scalar(k) for k in range(6)]
    g = [Scalar(1)] * 6
    assert fourier(S3, convolution(S3, f, g)) == group_hopf(S3).product(fourier(S3, f), fourier(S3, g))
