"""Factorisations of S3 and S4, their bicrossproducts and the duality check."""

from qgeo.finhopf import dual_findim, find_isomorphism, hopf_axiom_reports
from qgeo.groups import bicrossproduct, builtin_groups, extension_reports, find_factorisations, matched_pair


def report(F):
    bp = bicrossproduct(matched_pair(F))
    axioms = all(r.ok for r in hopf_axiom_reports(bp.hopf))
    ext = all(r.ok for r in extension_reports(bp))
    swapped = bicrossproduct(matched_pair(F.swapped()))
    dual = find_isomorphism(dual_findim(bp.hopf), swapped.hopf) is not None
    g, m = F.orders()
    print(f"  |G| = {g}, |M| = {m}, dim = {len(bp.basis)}: axioms {axioms}, extension maps {ext}, dual ~ swapped {dual}")


def main():
    groups = builtin_groups()
    print("S3:")
    for F in find_factorisations(groups["S3"]):
        report(F)
    print("S4, one factorisation with orders 8 and 3:")
    F = next(f for f in find_factorisations(groups["S4"]) if f.orders() == (8, 3))
    report(F)


if __name__ == "__main__":
    main()
