"""The trigonometric shuffle superalgebra and the quantum relation suite.

Elements have Laurent numerators in x_{i,r} with coefficients in Q[v, v^-1];
zeta_{ij}(x_a/x_b) = sign (x_a - v^{-c_ij} x_b)/(x_a - x_b).
"""
from __future__ import annotations

from typing import ClassVar, Sequence

from . import _kernel as _K
from .exactalg import V, Poly
from .root_data import DynkinDiagram, cartan
from .shuffle_rational import (CheckRecord, MembershipReport, RelationReport, ShuffleElement,
                               check_membership, psi_nc, psi_nc_vanishes, psi_word, star,
                               star_naive, unit, unit_generator)
from .words import NC, bracket, qbracket

__all__ = [
    "TrigShuffleElement", "star_trig", "star_trig_naive", "check_membership_trig",
    "trig_unit", "trig_generator", "psi_trig_word", "psi_trig_nc", "quantum_relations",
    "verify_quantum_relations",
]


class TrigShuffleElement(ShuffleElement):
    trig: ClassVar[bool] = True


def trig_unit(D: DynkinDiagram) -> TrigShuffleElement:
    return unit(D, TrigShuffleElement)


def trig_generator(D: DynkinDiagram, i: int, r: int) -> TrigShuffleElement:
    return unit_generator(D, i, r, TrigShuffleElement)


def star_trig(F: TrigShuffleElement, G: TrigShuffleElement, normalization: str = "unit"):
    return star(F, G, normalization)


def star_trig_naive(F: TrigShuffleElement, G: TrigShuffleElement, normalization: str = "unit"):
    return star_naive(F, G, normalization)


def check_membership_trig(F: TrigShuffleElement, exhaustive: bool = True) -> MembershipReport:
    return check_membership(F, exhaustive)


def psi_trig_word(D: DynkinDiagram, word: Sequence[tuple[int, int]], method: str = "kernel"):
    """e_{i1,r1} ... e_{ip,rp} -> x_{i1,1}^{r1} * ... * x_{ip,1}^{rp} (modes in Z)."""
    return psi_word(D, word, method, cls=TrigShuffleElement)


def psi_trig_nc(D: DynkinDiagram, x: NC) -> TrigShuffleElement:
    return psi_nc(D, x, TrigShuffleElement)


def _v(e: int) -> Poly:
    return Poly.gen(V) ** e


def _q3(D, i, j, r1, r2, s):
    E = NC.letter
    vm = _v(-1)
    vp = _v(1)

    def one(a, b):
        return bracket(D, E(i, a), bracket(D, E(i, b), E(j, s), vm), vp)

    return one(r1, r2) + one(r2, r1)


def _q3_general(D, i, j, r1, r2, s):
    E = NC.letter

    def one(a, b):
        return qbracket(D, E(i, a), qbracket(D, E(i, b), E(j, s)))

    return one(r1, r2) + one(r2, r1)


def _q4(D, i, w, z1, z2, u):
    E = NC.letter

    def one(a, b):
        inner = bracket(D, E(i - 1, w), E(i, a), _v(-1))
        return bracket(D, bracket(D, inner, E(i + 1, u), _v(1)), E(i, b))

    return one(z1, z2) + one(z2, z1)


def _q4_general(D, i, w, z1, z2, u):
    E = NC.letter

    def one(a, b):
        return qbracket(D, qbracket(D, qbracket(D, E(i - 1, w), E(i, a)), E(i + 1, u)), E(i, b))

    return one(z1, z2) + one(z2, z1)


def _q4_flv(D, i, w, z1, z2, u):
    E = NC.letter

    def one(a, b):
        return qbracket(D, qbracket(D, E(i - 1, w), E(i, a)), qbracket(D, E(i + 1, u), E(i, b)))

    return one(z1, z2) + one(z2, z1)


def quantum_relations(D: DynkinDiagram, R: int = 2):
    """Yield (name, params, NC) for the mode-wise quantum relations with modes in [-R, R]."""
    E = NC.letter
    cols = list(D.colors)
    modes = range(-R, R + 1)
    for i in cols:
        for j in cols:
            c = cartan(D, i, j)
            sgn = -1 if D.alpha_parity(i) * D.alpha_parity(j) else 1
            for A in modes:
                for B in modes:
                    lhs = E(i, A + 1) * E(j, B) - (E(i, A) * E(j, B + 1)).scale(_v(c))
                    rhs = (E(j, B) * E(i, A + 1)).scale(_v(c)) - E(j, B + 1) * E(i, A)
                    yield "quantum1", {"i": i, "j": j, "A": A, "B": B}, lhs - rhs.scale(sgn)
    for i in cols:
        for j in cols:
            if j < i or cartan(D, i, j) != 0:
                continue
            for r in modes:
                for s in modes:
                    if i == j and s < r:
                        continue
                    yield "quantum2", {"i": i, "j": j, "r": r, "s": s}, bracket(D, E(i, r), E(j, s))
    for i in cols:
        for j in (i - 1, i + 1):
            if j not in cols:
                continue
            for r1 in modes:
                for r2 in modes:
                    if r2 < r1:
                        continue
                    for s in modes:
                        p = {"i": i, "j": j, "r1": r1, "r2": r2, "s": s}
                        if D.alpha_parity(i) == 0:
                            yield "quantum3", p, _q3(D, i, j, r1, r2, s)
                        yield "quantum3_general", p, _q3_general(D, i, j, r1, r2, s)
    for i in cols:
        if i - 1 not in cols or i + 1 not in cols:
            continue
        standard = (D.alpha_parity(i) == 1 and D.alpha_parity(i - 1) == 0
                    and D.alpha_parity(i + 1) == 0)
        for w in modes:
            for u in modes:
                for z1 in modes:
                    for z2 in modes:
                        if z2 < z1:
                            continue
                        p = {"i": i, "w": w, "z1": z1, "z2": z2, "u": u}
                        if standard:
                            yield "quantum4", p, _q4(D, i, w, z1, z2, u)
                        yield "quantum4_general", p, _q4_general(D, i, w, z1, z2, u)
                        yield "quantum4_flv", p, _q4_flv(D, i, w, z1, z2, u)


def verify_quantum_relations(D: DynkinDiagram, R: int = 2) -> RelationReport:
    """Every instance must map to zero; equivalent forms are also compared instance-wise."""
    if R < 1:
        raise ValueError("mode window must be >= 1")
    rep = RelationReport()
    images: dict = {}
    for name, params, x in quantum_relations(D, R):
        # Vandermonde-multiplied numerator: zero iff the image is zero
        num = _K.psi_words_numerator(D, x.terms, True, divide=False)[1] if x.terms else Poly()
        ok = not num.terms
        witness = None if ok else str(psi_trig_nc(D, x).numerator)
        rep.records.append(CheckRecord(name, params, ok, witness))
        if name in ("quantum4_general", "quantum4_flv", "quantum3", "quantum3_general"):
            images[(name, tuple(sorted(params.items())))] = num
    # instance-by-instance agreement of equivalent forms (exact images compared)
    for (name, key), num in sorted(images.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        partner = {"quantum4_general": "quantum4_flv", "quantum3": "quantum3_general"}.get(name)
        if partner is None or (partner, key) not in images:
            continue
        agree = num == images[(partner, key)]
        rep.records.append(CheckRecord(f"{name}~{partner}", dict(key), agree,
                                       None if agree else "forms disagree"))
    return rep
