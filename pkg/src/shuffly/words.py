"""Noncommutative polynomials in the generators x_{i,r} / e_{i,r}.

A :class:`Word` combination is a dict from words (tuples of (color, mode))
to Poly coefficients (in h or v).  Brackets are expanded at the word level,
so relation instances become finite word identities before evaluation.
"""
from __future__ import annotations

from typing import Iterable

from .exactalg import V, Poly
from .root_data import DynkinDiagram

Word = tuple  # tuple[tuple[int, int], ...]


class NC:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c.terms}

    @classmethod
    def letter(cls, i: int, r: int) -> "NC":
        return cls({((i, r),): Poly.constant(1)})

    @classmethod
    def word(cls, letters: Iterable[tuple[int, int]], coeff=1) -> "NC":
        c = coeff if isinstance(coeff, Poly) else Poly.constant(coeff)
        return cls({tuple(letters): c})

    def __add__(self, other: "NC") -> "NC":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NC(out)

    def __neg__(self) -> "NC":
        return NC({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NC") -> "NC":
        return self + (-other)

    def scale(self, c) -> "NC":
        c = c if isinstance(c, Poly) else Poly.constant(c)
        return NC({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other) -> "NC":
        if not isinstance(other, NC):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NC(out)

    def __rmul__(self, c) -> "NC":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def colors(self) -> tuple:
        w = next(iter(self.terms), ())
        return tuple(sorted(i for i, _ in w))

    def degree(self, D: DynkinDiagram) -> tuple:
        k = [0] * (D.n - 1)
        for i in self.colors():
            k[i - 1] += 1
        return tuple(k)

    def parity(self, D: DynkinDiagram) -> int:
        return sum(D.alpha_parity(i) for i in self.colors()) % 2

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{w}" for w, c in self.terms.items()) or "0"


def _homog(D: DynkinDiagram, a: NC, b: NC):
    if a.is_zero() or b.is_zero():
        return 0
    return a.parity(D) * b.parity(D)


def bracket(D: DynkinDiagram, a: NC, b: NC, x: Poly | None = None) -> NC:
    """[a, b]_x = ab - (-1)^{|a||b|} x ba  (x = 1 by default)."""
    s = -1 if _homog(D, a, b) else 1
    ba = b * a
    if x is not None:
        ba = ba.scale(x)
    return a * b - ba.scale(s)


def anticommutator(D: DynkinDiagram, a: NC, b: NC) -> NC:
    s = -1 if _homog(D, a, b) else 1
    return a * b + (b * a).scale(s)


def qbracket(D: DynkinDiagram, a: NC, b: NC) -> NC:
    """[[a, b]] = ab - (-1)^{|a||b|} v^{(a,b)} ba with (a,b) = sum k_i l_j c_ij."""
    if a.is_zero() or b.is_zero():
        return NC()
    e = D.pairing(a.degree(D), b.degree(D))
    return bracket(D, a, b, Poly.gen(V) ** e)


def left_nested(D: DynkinDiagram, letters: list[tuple[int, int]]) -> NC:
    """[...[[l1, l2], l3], ..., lp]."""
    acc = NC.letter(*letters[0])
    for i, r in letters[1:]:
        acc = bracket(D, acc, NC.letter(i, r))
    return acc
