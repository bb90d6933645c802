"""Random Q[h]-combinations of PBW images, decomposed back.

    python scripts/decompose_random.py 0101 --degree 1,1,1 --samples 10
"""
import argparse
import random

from shuffly.exactalg import HBAR, Poly
from shuffly.root_data import DynkinDiagram, enumerate_T
from shuffly.shuffle_rational import psi_pbw_monomial
from shuffly.specialization import decompose_good, pbw_monomials_with_max_mode


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("parities")
    ap.add_argument("--degree", required=True)
    ap.add_argument("--max-mode", type=int, default=2)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    D = DynkinDiagram.parse(args.parities)
    k = tuple(int(x) for x in args.degree.split(","))
    rnd = random.Random(args.seed)
    h = Poly.gen(HBAR)
    hs = [m for d in enumerate_T(D, k) for m in pbw_monomials_with_max_mode(D, d, args.max_mode)]
    print(f"{len(hs)} PBW monomials of degree {k}")
    for _ in range(args.samples):
        want = {m: h * rnd.randint(-2, 2) + rnd.randint(1, 3) for m in rnd.sample(hs, min(3, len(hs)))}
        F = sum((psi_pbw_monomial(D, m).scale(c) for m, c in want.items()),
                start=psi_pbw_monomial(D, hs[0]).scale(Poly()))
        got = decompose_good(F)
        print("ok " if got == want else "BAD", {str(m): str(c) for m, c in got.items()})


if __name__ == "__main__":
    main()
