"""Command-line front end: shuffly <command> ...; JSON in, JSON out.

Exit codes: 0 no failures, 1 failed checks, 2 usage/schema error,
3 NotDivisible (internal bug signal), 4 NotInSpan.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .exactalg import NotDivisible
from .root_data import DegreeMismatch, DynkinDiagram, PBWMonomial, enumerate_T
from .serialize import (SchemaError, decomposition_to_json, degree_vector_from_json, dumps,
                        element_from_json, element_to_json, monomial_from_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_DIVISIBLE, EXIT_NOT_IN_SPAN = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    records: list = field(default_factory=list)
    result: dict | None = None
    timing: str | None = None

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if r.get("result") == "fail")

    def to_json(self) -> dict:
        out = {"command": self.command, "parameters": self.parameters,
               "summary": {"checked": len(self.records), "failed": self.failures}}
        if self.records:
            out["records"] = self.records
        if self.result is not None:
            out["result"] = self.result
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def _diagram(s: str) -> DynkinDiagram:
    try:
        return DynkinDiagram.parse(s)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load_json(path_or_text: str):
    text = path_or_text
    if not path_or_text.lstrip().startswith(("{", "[")):
        try:
            with open(path_or_text) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path_or_text}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON in {path_or_text[:40]!r}: {e}") from None


def _element(arg: str, case: str | None = None):
    return element_from_json(_load_json(arg), case)


def _rational(F):
    if F.trig:
        raise UsageError("this command is defined for the rational algebra only")
    return F


# ---------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------

def _verify_one(job):
    case, parities, R, extended = job
    D = DynkinDiagram.parse(parities)
    if case == "rational":
        from .shuffle_rational import verify_positive_relations
        rep = verify_positive_relations(D, R, extended)
    else:
        from .shuffle_trig import verify_quantum_relations
        rep = verify_quantum_relations(D, R)
    return [dict(r.to_json(), diagram=parities) for r in rep.records]


def cmd_verify(args) -> RunReport:
    if args.max_mode < 1:
        raise UsageError("--max-mode must be >= 1")
    diagrams = [str(_diagram(p)) for p in args.parities.split(",")]
    from .parallel import ordered_map
    jobs = [(args.case, p, args.max_mode, args.extended) for p in diagrams]
    rep = RunReport("verify", {"case": args.case, "parities": diagrams, "max_mode": args.max_mode,
                               "extended": args.extended})
    for recs in ordered_map(_verify_one, jobs):
        rep.records.extend(recs)
    return rep


def cmd_shuffle(args) -> RunReport:
    from .shuffle_rational import star, star_naive
    F, G = _element(args.left), _element(args.right)
    if F.diagram != G.diagram or F.trig != G.trig:
        raise UsageError("elements live in different algebras")
    prod = (star_naive if args.naive else star)(F, G, args.normalization)
    return RunReport("shuffle", {"naive": args.naive, "normalization": args.normalization},
                     result=element_to_json(prod))


def cmd_psi(args) -> RunReport:
    from .shuffle_rational import ShuffleElement, psi_pbw_monomial, psi_word
    from .shuffle_trig import TrigShuffleElement
    D = _diagram(args.parities)
    if args.monomial is not None:
        if args.case == "trig":
            raise UsageError("PBW monomials are rational-only; use --word for trig")
        h = monomial_from_json(_load_json(args.monomial))
        try:
            h.validate(D)
        except ValueError as e:
            raise UsageError(str(e)) from None
        F = psi_pbw_monomial(D, h, args.choice, args.rescaled)
    elif args.word is not None:
        word = [tuple(map(int, x)) for x in _load_json(args.word)]
        cls = TrigShuffleElement if args.case == "trig" else ShuffleElement
        F = psi_word(D, word, cls=cls)
    else:
        raise UsageError("give --monomial or --word")
    return RunReport("psi", {"parities": str(D)}, result=element_to_json(F))


def cmd_specialize(args) -> RunReport:
    from .specialization import phi
    F = _rational(_element(args.element))
    if args.d is None:
        ds = enumerate_T(F.diagram, F.degree)
    else:
        ds = [degree_vector_from_json(_load_json(args.d))]
    rows = [phi(F, d).to_json() for d in ds]
    return RunReport("specialize", {"d": args.d}, result={"specializations": rows})


def cmd_isgood(args) -> RunReport:
    from .specialization import is_good
    F = _rational(_element(args.element))
    rep = is_good(F)
    out = RunReport("isgood", {}, result=rep.to_json())
    out.records.append({"name": "good", "instance": {}, "result": "pass" if rep.good else "fail",
                        "witness": None if rep.witness is None else rep.witness.to_json()})
    return out


def cmd_isintegral(args) -> RunReport:
    from .specialization import is_integral, is_integral_via_decomposition
    F = _rational(_element(args.element))
    ok = is_integral(F)
    res = {"integral": ok}
    if args.via_decomposition:
        res["via_decomposition"] = is_integral_via_decomposition(F)
    out = RunReport("isintegral", {"via_decomposition": args.via_decomposition}, result=res)
    out.records.append({"name": "integral", "instance": {}, "result": "pass" if ok else "fail",
                        "witness": None})
    return out


def cmd_decompose(args) -> RunReport:
    from .specialization import decompose_good
    F = _rational(_element(args.element))
    coeffs = decompose_good(F)
    return RunReport("decompose", {}, result=decomposition_to_json(coeffs))


def cmd_independence(args) -> RunReport:
    from .specialization import (choice_independence, pbw_monomials_with_max_mode,
                                 specialization_rank)
    D = _diagram(args.parities)
    try:
        k = tuple(int(x) for x in args.degree.split(","))
    except ValueError:
        raise UsageError(f"bad --degree {args.degree!r}") from None
    if len(k) != D.n - 1 or any(x < 0 for x in k):
        raise UsageError(f"--degree must have {D.n - 1} nonnegative entries")
    rep = RunReport("independence", {"parities": str(D), "degree": list(k),
                                     "max_mode": args.max_mode, "max_weight": args.max_weight,
                                     "choice": args.choice})
    for d in enumerate_T(D, k):
        hs = pbw_monomials_with_max_mode(D, d, args.max_mode)
        rank, count = specialization_rank(D, hs)
        rep.records.append({"name": "same_degree_rank", "instance": {"d": d.to_json()},
                            "result": "pass" if rank == count else "fail",
                            "witness": {"rank": rank, "count": count}})
    ci = choice_independence(D, k, args.max_weight, args.choice)
    rep.records.append({"name": "choice_independence", "instance": {"choice": args.choice},
                        "result": "pass" if ci["ok"] else "fail", "witness": ci})
    return rep


# ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shuffly", description="Exact shuffle superalgebra computations.")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    v = sub.add_parser("verify", help="relation campaign for one or more diagrams")
    v.add_argument("--case", choices=("rational", "trig"), required=True)
    v.add_argument("--parities", required=True, help="parity string, or several joined by commas")
    v.add_argument("--max-mode", type=int, default=3)
    v.add_argument("--extended", action="store_true",
                   help="rational: also check the Serre relations at all parities")
    common(v)

    s = sub.add_parser("shuffle", help="shuffle product of two elements")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--naive", action="store_true", help="use the full-symmetrization oracle")
    s.add_argument("--normalization", choices=("unit", "displayed"), default="unit")
    common(s)

    g = sub.add_parser("psi", help="image of a PBW monomial or a generator word")
    g.add_argument("--parities", required=True)
    g.add_argument("--case", choices=("rational", "trig"), default="rational")
    g.add_argument("--monomial", help='JSON list of [root, mode], e.g. [["a1..2",0]]')
    g.add_argument("--word", help="JSON list of [color, mode]")
    g.add_argument("--choice", choices=("canonical", "reversed", "last"), default="canonical")
    g.add_argument("--rescaled", action="store_true", help="multiply by h per factor")
    common(g)

    for name, help_ in (("specialize", "specialization maps phi_d"), ("isgood", "goodness test"),
                        ("isintegral", "integrality test"), ("decompose", "PBW decomposition")):
        c = sub.add_parser(name, help=help_)
        c.add_argument("element", help="element JSON file (or inline JSON)")
        if name == "specialize":
            c.add_argument("--d", help='degree vector JSON, e.g. {"a1..2": 1}; default: all of T_k')
        if name == "isintegral":
            c.add_argument("--via-decomposition", action="store_true")
        common(c)

    i = sub.add_parser("independence", help="same-degree ranks and bracket-choice independence")
    i.add_argument("--parities", required=True)
    i.add_argument("--degree", required=True, help="color degree, e.g. 2,1")
    i.add_argument("--max-mode", type=int, default=1)
    i.add_argument("--max-weight", type=int, default=3)
    i.add_argument("--choice", choices=("reversed", "last"), default="last")
    common(i)
    return p


COMMANDS = {"verify": cmd_verify, "shuffle": cmd_shuffle, "psi": cmd_psi,
            "specialize": cmd_specialize, "isgood": cmd_isgood, "isintegral": cmd_isintegral,
            "decompose": cmd_decompose, "independence": cmd_independence}


ELEMENT_COMMANDS = ("shuffle", "psi")


def _emit(obj: dict, out: str | None) -> None:
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    from .specialization import NotInSpan

    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except (UsageError, SchemaError, DegreeMismatch) as e:
        print(f"shuffly: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotDivisible as e:
        print(f"shuffly: NotDivisible (internal inconsistency): {e}", file=sys.stderr)
        return EXIT_NOT_DIVISIBLE
    except NotInSpan as e:
        _emit({"command": args.command, "error": "NotInSpan", "detail": str(e),
               "d": None if e.d is None else e.d.to_json()}, getattr(args, "out", None))
        print(f"shuffly: NotInSpan: {e}", file=sys.stderr)
        return EXIT_NOT_IN_SPAN
    if args.timing:
        rep.timing = f"{time.perf_counter() - t0:.3f}s"
    if args.command in ELEMENT_COMMANDS:
        # element-valued commands print the bare element so outputs chain
        obj = dict(rep.result, timing=rep.timing) if rep.timing else rep.result
        _emit(obj, getattr(args, "out", None))
        return EXIT_OK
    _emit(rep.to_json(), getattr(args, "out", None))
    return EXIT_FAIL if rep.failures else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
