"""Relation-kernel sweep over every parity sequence of the given lengths.

    python scripts/relations_sweep.py --case trig --lengths 2,3,4 --max-mode 2
"""
import argparse
from itertools import product

from shuffly.root_data import DynkinDiagram
from shuffly.shuffle_rational import verify_positive_relations
from shuffly.shuffle_trig import verify_quantum_relations


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--case", choices=["rational", "trig"], default="rational")
    ap.add_argument("--lengths", default="2,3,4")
    ap.add_argument("--max-mode", type=int, default=3)
    args = ap.parse_args()
    verify = verify_quantum_relations if args.case == "trig" else verify_positive_relations
    for n in map(int, args.lengths.split(",")):
        for p in product((0, 1), repeat=n):
            D = DynkinDiagram(p)
            rep = verify(D, args.max_mode)
            print(f"{D}  {len(rep.records):6d} checks  {len(rep.failures)} failures  {rep.counts()}")
            for r in rep.failures[:3]:
                print("   ", r.to_json())


if __name__ == "__main__":
    main()
