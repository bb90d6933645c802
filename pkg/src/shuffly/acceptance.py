"""Acceptance campaigns.

Each ``criterion_N`` runs one desk-scale campaign and returns a
:class:`CriterionResult`; the pytest gate and ``scripts/run_acceptance.py``
share them.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

from .exactalg import HBAR, V, X, Poly
from .root_data import DynkinDiagram, PBWMonomial, Root, compare_deg, enumerate_T
from .shuffle_rational import (ShuffleElement, check_membership, elegant_deduction,
                               psi_pbw_monomial, psi_word, rank1_independence,
                               rank1_power_constant, star, star_naive, supersymmetrize,
                               verify_positive_relations)
from .shuffle_trig import (TrigShuffleElement, check_membership_trig, psi_trig_word, star_trig,
                           star_trig_naive, verify_quantum_relations)
from .specialization import (NotInSpan, choice_independence, decompose_good, is_good,
                             is_integral, pbw_monomials_with_max_mode, phi,
                             specialization_rank, verify_same_degrees_formula)

__all__ = ["CriterionResult", "parities", "compositions", "CRITERIA", "run"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    log: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} [{status}] {self.title}: {self.checked} checks, "
                f"{len(self.failures)} failures, {self.seconds:.1f}s")


def parities(n: int) -> list[DynkinDiagram]:
    return [DynkinDiagram(p) for p in product((0, 1), repeat=n)]


def compositions(n_colors: int, max_total: int, min_total: int = 1):
    for k in product(range(max_total + 1), repeat=n_colors):
        if min_total <= sum(k) <= max_total:
            yield k


def _result(number, title, checked, failures, log=None):
    return CriterionResult(number, title, not failures, checked, failures[:20], log or {})


# -- random elements -----------------------------------------------------

def _random_degree(rnd, D, total):
    k = [0] * (D.n - 1)
    for _ in range(total):
        k[rnd.randrange(D.n - 1)] += 1
    return tuple(k)


def _random_supersymmetric(rnd, D, k, trig):
    gens = [X(i, s) for i in D.colors for s in range(1, k[i - 1] + 1)]
    coeff = V if trig else HBAR
    lo = -1 if trig else 0
    p = Poly()
    for _ in range(rnd.randint(1, 3)):
        ex = {g: rnd.randint(lo, 2) for g in gens}
        ex[coeff] = rnd.randint(lo, 1)
        p = p + Poly.monomial({g: e for g, e in ex.items() if e}, rnd.randint(-3, 3))
    return supersymmetrize(D, k, p, TrigShuffleElement if trig else ShuffleElement)


def _random_image(rnd, D, total, trig):
    """Random combination of Psi(words): satisfies the pole and wheel conditions."""
    k = _random_degree(rnd, D, total)
    word = [(c, 0) for c in D.colors for _ in range(k[c - 1])]
    out = None
    for _ in range(2):
        rnd.shuffle(word)
        w = [(c, rnd.randint(-1, 1) if trig else rnd.randint(0, 2)) for c, _ in word]
        F = psi_trig_word(D, w) if trig else psi_word(D, w)
        c = Poly.gen(V) ** rnd.randint(-1, 1) if trig else Poly.gen(HBAR) * rnd.randint(0, 2)
        F = F.scale(c + rnd.randint(1, 3))
        out = F if out is None else out + F
    return out


# -- criteria ------------------------------------------------------------

def criterion_1() -> CriterionResult:
    checked, failures, per = 0, [], {}
    for n in (2, 3, 4):
        for D in parities(n):
            rep = verify_positive_relations(D, 3)
            checked += len(rep.records)
            failures += [r.to_json() for r in rep.failures]
            for name, c in rep.counts().items():
                per[name] = per.get(name, 0) + c
    return _result(1, "rational relations, n = 2..4, modes 0..3", checked, failures,
                   {"instances": per})


def criterion_2() -> CriterionResult:
    checked, failures, per = 0, [], {}
    for n in (2, 3, 4):
        for D in parities(n):
            rep = verify_quantum_relations(D, 2)
            checked += len(rep.records)
            failures += [r.to_json() for r in rep.failures]
            for name, c in rep.counts().items():
                per[name] = per.get(name, 0) + c
    agree = per.get("quantum4_general~quantum4_flv", 0)
    if not agree:
        failures.append("no flv/nested agreement instances")
    return _result(2, "trigonometric relations, n = 2..4, modes -2..2", checked, failures,
                   {"instances": per})


def criterion_3(pairs: int = 100, seed: int = 3) -> CriterionResult:
    rnd = random.Random(seed)
    checked, failures = 0, []
    for n in (2, 3):
        for D in parities(n):
            for trig in (False, True):
                for _ in range(pairs):
                    total = rnd.randint(0, 4)
                    a = rnd.randint(0, total)
                    F = _random_supersymmetric(rnd, D, _random_degree(rnd, D, a), trig)
                    G = _random_supersymmetric(rnd, D, _random_degree(rnd, D, total - a), trig)
                    fast, slow = (star_trig, star_trig_naive) if trig else (star, star_naive)
                    checked += 1
                    if fast(F, G) != slow(F, G):
                        failures.append({"diagram": str(D), "trig": trig,
                                         "F": str(F.numerator), "G": str(G.numerator)})
    return _result(3, "coset star equals naive star (both cases)", checked, failures)


def criterion_4(instances: int = 100, seed: int = 4) -> CriterionResult:
    rnd = random.Random(seed)
    checked, failures = 0, []
    diagrams = parities(3) + [DynkinDiagram.parse("0011"), DynkinDiagram.parse("0101")]
    for trig in (False, True):
        member = check_membership_trig if trig else check_membership
        prod = star_trig if trig else star
        for t in range(instances):
            D = diagrams[t % len(diagrams)]
            total = rnd.randint(2, 4)
            a = rnd.randint(1, total - 1)
            F = _random_image(rnd, D, a, trig)
            G = _random_image(rnd, D, total - a, trig)
            checked += 1
            if not (member(F).ok and member(G).ok):
                failures.append({"diagram": str(D), "trig": trig, "error": "input not admissible"})
                continue
            rep = member(prod(F, G))
            if not rep.ok:
                failures.append({"diagram": str(D), "trig": trig, "wheel1": rep.wheel1,
                                 "wheel2": rep.wheel2})
    return _result(4, "star closure of the wheel conditions (both cases)", checked, failures)


def criterion_5(max_total: int = 5, max_mode: int = 1) -> CriterionResult:
    checked, failures = 0, []
    for n in (2, 3, 4):
        for D in parities(n):
            for k in compositions(n - 1, max_total):
                ds = enumerate_T(D, k)
                for d in ds:
                    higher = [e for e in ds if compare_deg(D, e, d) > 0]
                    if not higher:
                        continue
                    for h in pbw_monomials_with_max_mode(D, d, max_mode):
                        F = psi_pbw_monomial(D, h)
                        for e in higher:
                            checked += 1
                            if not phi(F, e).is_zero():
                                failures.append({"diagram": str(D), "h": str(h),
                                                 "d": e.to_json()})
    return _result(5, f"lower degrees vanish, n <= 4, sum k <= {max_total}, modes <= {max_mode}",
                   checked, failures)


def criterion_6(max_total: int = 5, max_mode: int = 2) -> CriterionResult:
    checked, failures = 0, []
    signs = {1: 0, -1: 0}
    negative = []
    ranks = 0
    for n in (2, 3):
        for D in parities(n):
            for k in compositions(n - 1, max_total):
                for d in enumerate_T(D, k):
                    if any(m > 2 for _, m in d.items):
                        continue
                    hs = pbw_monomials_with_max_mode(D, d, max_mode)
                    for h in hs:
                        out = verify_same_degrees_formula(D, h)
                        checked += 1
                        if not out["equal"]:
                            failures.append({"diagram": str(D), **out})
                        else:
                            signs[out["sign"]] += 1
                            if out["sign"] == -1 and len(negative) < 10:
                                negative.append({"diagram": str(D), "h": out["h"]})
                    rank, count = specialization_rank(D, hs)
                    ranks += 1
                    checked += 1
                    if rank != count:
                        failures.append({"diagram": str(D), "d": d.to_json(), "rank": rank,
                                         "count": count})
    return _result(6, f"same-degrees formula up to sign and full rank, n <= 3, sum k <= {max_total}, modes <= {max_mode}",
                   checked, failures, {"signs": signs, "negative_examples": negative,
                                       "rank_checks": ranks})


def criterion_7(max_length: int = 3, max_mode: int = 4) -> CriterionResult:
    checked, failures, constants = 0, [], {}
    for par in product((0, 1), repeat=2):
        out = rank1_independence(par, max_length, max_mode)
        for k, entry in out["lengths"].items():
            checked += 1
            if not entry["full_rank"]:
                failures.append({"parities": par, "k": k, **entry})
            if out["odd"]:
                checked += 1
                if not entry.get("repeated_vanish", True):
                    failures.append({"parities": par, "k": k, "repeated_vanish": False})
        if not out["odd"]:
            for k in range(1, max_length + 1):
                for r in range(max_mode + 1):
                    c = rank1_power_constant(par, k, r)
                    checked += 1
                    if c is None or c == 0:
                        failures.append({"parities": par, "k": k, "r": r, "constant": str(c)})
                    constants[f"{par[0]}{par[1]} k={k} r={r}"] = str(c)
    return _result(7, f"rank-one bases, k <= {max_length}, modes <= {max_mode}", checked, failures,
                   {"power_constants": constants})


def criterion_8(max_total: int = 4, max_mode: int = 2) -> CriterionResult:
    checked, failures = 0, []
    for n in (2, 3):
        for D in parities(n):
            for k in compositions(n - 1, max_total):
                for d in enumerate_T(D, k):
                    for h in pbw_monomials_with_max_mode(D, d, max_mode):
                        checked += 3
                        if not is_good(psi_pbw_monomial(D, h)).good:
                            failures.append({"diagram": str(D), "h": str(h), "check": "good"})
                        X_h = psi_pbw_monomial(D, h, rescaled=True)
                        if not is_integral(X_h):
                            failures.append({"diagram": str(D), "h": str(h), "check": "integral"})
                        shifted = sum(m * (b.i - b.j + 1) for b, m in h.degree().items)
                        if shifted != sum(X_h.degree):
                            failures.append({"diagram": str(D), "h": str(h), "check": "exponent"})
    D = DynkinDiagram.parse("000")
    bad = ShuffleElement(D, (1, 1), Poly.constant(1))
    rep = is_good(bad)
    checked += 1
    if rep.good or rep.witness is None:
        failures.append({"check": "non-good element accepted"})
    witness = None if rep.witness is None else rep.witness.to_json()
    return _result(8, f"good and integral PBW images, n <= 3, sum k <= {max_total}, modes <= {max_mode}", checked,
                   failures, {"non_good_witness": witness})


def criterion_9(samples: int = 50, seed: int = 9) -> CriterionResult:
    rnd = random.Random(seed)
    checked, failures = 0, []
    diagrams = parities(2) + parities(3)
    h = Poly.gen(HBAR)
    while checked < samples:
        D = rnd.choice(diagrams)
        k = _random_degree(rnd, D, rnd.randint(1, 4))
        hs = [m for d in enumerate_T(D, k) for m in pbw_monomials_with_max_mode(D, d, 2)]
        if not hs:
            continue
        pick = rnd.sample(hs, min(len(hs), rnd.randint(1, 4)))
        want = {m: h * rnd.randint(-2, 2) + rnd.choice([-3, -2, -1, 1, 2, 3]) for m in pick}
        F = None
        for m, c in want.items():
            t = psi_pbw_monomial(D, m).scale(c)
            F = t if F is None else F + t
        checked += 1
        try:
            got = decompose_good(F)
        except NotInSpan as e:
            failures.append({"diagram": str(D), "error": str(e)})
            continue
        if got != want:
            failures.append({"diagram": str(D), "want": {str(a): str(b) for a, b in want.items()},
                             "got": {str(a): str(b) for a, b in got.items()}})
    choice = []
    for par, k, w in [("000", (1, 1), 3), ("010", (1, 1), 3), ("011", (2, 1), 3),
                      ("001", (1, 2), 3), ("0000", (1, 1, 1), 4), ("0101", (1, 1, 1), 3)]:
        for other in ("last", "reversed"):
            out = choice_independence(DynkinDiagram.parse(par), k, w, other)
            checked += 1
            choice.append({"diagram": par, "k": list(k), "max_weight": w, "choice": other,
                           "count": out["count"], "ok": out["ok"]})
            if not out["ok"]:
                failures.append(choice[-1])
    return _result(9, f"decomposition round trips ({samples}) and choice independence", checked,
                   failures, {"choice_independence": choice})


def criterion_10(bound: int = 2) -> CriterionResult:
    checked, failures = 0, []
    diagrams = [D for D in parities(4)
                if D.alpha_parity(2) == 1 and D.alpha_parity(1) == 0 and D.alpha_parity(3) == 0]
    for D in diagrams:
        for r, s, k, l in product(range(bound + 1), repeat=4):
            out = elegant_deduction(D, 2, r, k, l, s)
            checked += 1
            if not (out["identity"] and out["lhs_zero"] and out["base_zero"]):
                failures.append({"diagram": str(D), "r": r, "s": s, "k": k, "l": l, **out})
    if not diagrams:
        failures.append("no admissible diagram")
    return _result(10, "higher Serre deduction at an odd node with even neighbours", checked,
                   failures, {"diagrams": [str(D) for D in diagrams]})


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


def run(number: int, **kw) -> CriterionResult:
    t = time.perf_counter()
    res = CRITERIA[number](**kw)
    res.seconds = time.perf_counter() - t
    return res
