"""Same-degrees formula and lower-degree vanishing on one diagram.

    python scripts/same_degrees_sweep.py 0101 --max-total 4 --max-mode 1
"""
import argparse
from collections import Counter

from shuffly.acceptance import compositions
from shuffly.root_data import DynkinDiagram, compare_deg, enumerate_T
from shuffly.shuffle_rational import psi_pbw_monomial
from shuffly.specialization import (phi, pbw_monomials_with_max_mode, specialization_rank,
                                    verify_same_degrees_formula)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("parities")
    ap.add_argument("--max-total", type=int, default=4)
    ap.add_argument("--max-mode", type=int, default=1)
    args = ap.parse_args()
    D = DynkinDiagram.parse(args.parities)
    signs, lower = Counter(), Counter()
    for k in compositions(D.n - 1, args.max_total):
        ds = enumerate_T(D, k)
        for d in ds:
            hs = pbw_monomials_with_max_mode(D, d, args.max_mode)
            for h in hs:
                out = verify_same_degrees_formula(D, h)
                signs[out["sign"]] += 1
                F = psi_pbw_monomial(D, h)
                for e in ds:
                    if compare_deg(D, e, d) > 0:
                        lower[phi(F, e).is_zero()] += 1
            rank, count = specialization_rank(D, hs)
            print(f"k={k} d={d.to_json()}  |h|={count} rank={rank}")
    print("same-degrees signs (None = mismatch):", dict(signs))
    print("lower-degree specializations zero:", dict(lower))


if __name__ == "__main__":
    main()
