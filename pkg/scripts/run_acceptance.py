"""Run the acceptance campaigns and write a JSON report.

    python scripts/run_acceptance.py [--only 1,5] [--out acceptance.json]
"""
import argparse
import json
import sys

from shuffly.acceptance import CRITERIA, run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", default=",".join(map(str, CRITERIA)))
    ap.add_argument("--out")
    args = ap.parse_args()
    report, ok = [], True
    for n in (int(x) for x in args.only.split(",")):
        res = run(n)
        print(res.line(), flush=True)
        ok &= res.passed
        report.append({"criterion": n, "title": res.title, "passed": res.passed,
                       "checked": res.checked, "failures": res.failures, "log": res.log,
                       "seconds": round(res.seconds, 2)})
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
