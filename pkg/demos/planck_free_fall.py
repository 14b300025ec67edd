"""Free fall in the Planck-scale toy model.

Builds the model, prints its relations and structure maps, then the
Heisenberg velocity of x under H = p^2/2m and its classical image.
"""

from qgeo import models
from qgeo.freealg import Element, commutator
from qgeo.hopf import hopf_axioms


def main():
    M = models.planck_model()
    P = M.P
    print("relations:")
    for r in P.rule_list():
        print("  ", ".".join(r.lhs), "->", P.format(r.rhs))

    x, p = Element.gen("x"), Element.gen("p")
    print("[x, p] =", P.format(commutator(x, p, P)))
    print("Delta p =", M.fmt2(M.Delta(p)))
    print("S(p) =", P.format(M.antipode["p"]))

    bad = [r for r in hopf_axioms(M, 4) if not r.ok]
    print("Hopf axioms to degree 4:", "all pass" if not bad else [r.check for r in bad])

    flow = models.heisenberg_flow(M, models.free_fall_hamiltonian(), x)
    print("xdot (quantum)   =", P.format(flow.quantum))
    print("xdot (classical) =", P.format(flow.classical))
    print("with v_inf = p/m this reads v_inf (1 - lam), lam = exp(-mu x)")

    for vals in [(4, 4, 1, 1), (1, 1, 100, 1), (2, 3, 6, 1)]:
        r = models.regime_report(*vals)
        print(f"m, M, hbar, G = {vals}: mM = {r.mM}, m_P^2 = {r.planck_mass_sq} -> {r.regime}")


if __name__ == "__main__":
    main()
