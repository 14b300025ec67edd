"""The braided plane yx = q xy, its braiding, and what breaks with the flip."""

from qgeo.braided import RMatrix, braided_hopf_check, ybe_check
from qgeo.models import braided_matrices_sl2, qplane_flip_model, qplane_model


def main():
    R = RMatrix.standard_sl2()
    print("sl2 R satisfies Yang-Baxter:", ybe_check(R))

    H = qplane_model()
    print("braiding on generators:")
    for (a, b), terms in sorted(H.braiding.table().items()):
        rhs = " + ".join(f"({c}) {'.'.join(l)}|{'.'.join(r)}" for (l, r), c in terms.items())
        print(f"  Psi({a}|{b}) = {rhs}")
    for rep in braided_hopf_check(H, 2):
        print(" ", rep)

    print("same coproduct with the flip braiding:")
    for rep in braided_hopf_check(qplane_flip_model(), 2):
        if not rep.ok:
            print(" ", rep)

    B = braided_matrices_sl2()
    print(f"braided matrices: {len(B.P.rules)} rules, all braided checks to degree 2 pass:",
          all(r.ok for r in braided_hopf_check(B, 2)))


if __name__ == "__main__":
    main()
