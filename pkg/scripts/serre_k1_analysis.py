"""Where the cubic Serre bracket fails to vanish.

Prints the symmetrized bracket grouped by powers of ``w``, its factored
form, the value at ``q = 1``, and the first nonzero coefficients of the
same expression evaluated through the vertex operators on the A2 vacuum.
"""
from __future__ import annotations

import argparse

from qtoroidal.coeff import Q, vpow
from qtoroidal.lattice import cartan_load
from qtoroidal.polyring import MPoly, serre_poly_k1
from qtoroidal.relations import check_serre_operator


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--degree", type=int, default=3, help="window for the operator-level check")
    args = p.parse_args()

    poly = serre_poly_k1()
    print("symmetrized bracket by powers of w:")
    for e, part in sorted(poly.coefficients_in("w").items()):
        print(f"  w^{e}: {part}")

    vars = ("z1", "z2", "w")
    z1, z2, w = (MPoly.var(v, vars) for v in vars)
    closed = (w ** 3 * (z1 - z2) ** 2 * (z1 + z2)).scale((Q - Q.inverse()) * vpow(-4) * -4)
    print("equals -4 (q - q^-1) q^-2 w^3 (z1-z2)^2 (z1+z2):", poly == closed)
    print("value at q = 1 is zero:", all(v == 0 for v in poly.specialize_q1().values()))

    report = check_serre_operator(cartan_load("A2"), args.degree)
    print("operator-level check on the A2 vacuum:", report.status)
    if report.witness:
        w_ = report.witness
        print(f"  first nonzero coefficient at {w_.modes} on {w_.state}: {w_.actual}")


if __name__ == "__main__":
    main()
