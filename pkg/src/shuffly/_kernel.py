"""Symmetrization kernels shared by the rational and trigonometric shuffle products.

Conventions.  An element of degree k has numerator variables X(i, r),
1 <= r <= k_i, over the implicit denominator prod (x_{i,r} - x_{i+1,r'}).
Same-color zeta denominators only occur for even colors (c_ii = 0 for odd
ones); they are cleared by multiplying every summand by the even-color
Vandermonde and dividing the sum once at the end.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial

from .exactalg import (BIAS, HBAR, MASK, V, W, X, Poly, Q, _bias, _unpack,
                       divide_by_linear)
from .root_data import DynkinDiagram, cartan, zeta_sign

ONE = Poly.constant(1)


def slot(i: int, r: int) -> Poly:
    return Poly.gen(X(i, r))


def pair_factor(D: DynkinDiagram, i: int, a: int, j: int, b: int, trig: bool) -> Poly | None:
    """Numerator of zeta_{ij}(x_{i,a} - x_{j,b}) without its sign; None if constant."""
    c = cartan(D, i, j)
    if c == 0:
        return None
    xa, xb = slot(i, a), slot(j, b)
    if trig:
        return xa - xb * Poly.gen(V) ** (-c)
    return xa - xb + Poly.gen(HBAR) * (Q(c) / 2)


def pair_sign(D: DynkinDiagram, i: int, j: int) -> int:
    """zeta sign times the orientation sign of an adjacent denominator (x_{i+1} - x_i)."""
    s = zeta_sign(D, i, j)
    if j == i - 1:
        s = -s
    return s


def slot_gens(degree, coeff_var) -> tuple:
    gens = [coeff_var] + [X(i, r) for i, k in enumerate(degree, 1) for r in range(1, k + 1)]
    return tuple(sorted(gens))


def even_vandermonde_factors(D: DynkinDiagram, degree, blocks=None) -> list[tuple[Poly, tuple]]:
    """Linear factors (x_{i,a} - x_{i,b}), a < b, for even colors.

    ``blocks`` restricts pairs to lie inside the given per-color slot ranges.
    Returns (factor, leading variable) pairs.
    """
    out = []
    for i, m in enumerate(degree, 1):
        if D.alpha_parity(i) != 0 or m < 2:
            continue
        ranges = [range(1, m + 1)] if blocks is None else blocks[i - 1]
        for rg in ranges:
            for a, b in combinations(rg, 2):
                out.append((slot(i, a) - slot(i, b), X(i, a)))
    return out


def divide_vandermonde(p: Poly, factors) -> Poly:
    for lin, var in factors:
        p = divide_by_linear(p, lin, var)
    return p


class Symmetrizer:
    """Apply a list of signed slot permutations to a fixed polynomial."""

    def __init__(self, gens: tuple, perms: list[tuple[dict, int]]):
        self.gens = gens
        pos = {g: k for k, g in enumerate(gens)}
        self.maps = []
        for mapping, sign in perms:
            idx = list(range(len(gens)))
            for src, dst in mapping.items():
                idx[pos[src]] = pos[dst]
            self.maps.append((idx, sign))

    def __call__(self, p: Poly) -> Poly:
        gens = self.gens
        n = len(gens)
        p = p.with_gens(gens)
        rows = []
        for key, c in p.terms.items():
            ex = _unpack(key, n)
            rows.append(([(k, e) for k, e in enumerate(ex) if e], c))
        base = _bias(n)
        out: dict = {}
        get = out.get
        for idx, sign in self.maps:
            shifts = [W * t for t in idx]
            for nz, c in rows:
                key = base
                for k, e in nz:
                    key += e << shifts[k]
                if sign < 0:
                    c = -c
                old = get(key)
                if old is None:
                    out[key] = c
                else:
                    old += c
                    if old:
                        out[key] = old
                    else:
                        del out[key]
        return Poly(gens, out)


def coset_perms(k, l) -> list[tuple[dict, int]]:
    """Minimal-length coset representatives of Sigma_{k+l} / (Sigma_k x Sigma_l), all colors.

    Slot r <= k_i goes to S[r], slot k_i + r goes to S^c[r]; the sign is
    (-1)^(total inversions).  (Even colors pick up the Vandermonde sign,
    odd colors the supersymmetrization sign; both equal the inversion parity.)
    """
    per_color = []
    for i, (ki, li) in enumerate(zip(k, l), 1):
        m = ki + li
        choices = []
        for S in combinations(range(1, m + 1), ki):
            Sc = [b for b in range(1, m + 1) if b not in S]
            inv = sum(1 for a in S for b in Sc if b < a)
            mapping = {}
            for r, a in enumerate(S, 1):
                if r != a:
                    mapping[X(i, r)] = X(i, a)
            for r, b in enumerate(Sc, 1):
                if ki + r != b:
                    mapping[X(i, ki + r)] = X(i, b)
            choices.append((mapping, inv))
        per_color.append(choices)
    out = []
    for combo in product(*per_color):
        mapping = {}
        inv = 0
        for mp, v in combo:
            mapping.update(mp)
            inv += v
        out.append((mapping, -1 if inv % 2 else 1))
    return out


def full_perms(k) -> list[tuple[dict, int]]:
    """All of prod Sigma_{k_i}, with the sign of the full permutation."""
    per_color = []
    for i, ki in enumerate(k, 1):
        choices = []
        for perm in permutations(range(1, ki + 1)):
            inv = sum(1 for a in range(ki) for b in range(a + 1, ki) if perm[a] > perm[b])
            mapping = {X(i, r): X(i, perm[r - 1]) for r in range(1, ki + 1) if perm[r - 1] != r}
            choices.append((mapping, inv))
        per_color.append(choices)
    out = []
    for combo in product(*per_color):
        mapping = {}
        inv = 0
        for mp, v in combo:
            mapping.update(mp)
            inv += v
        out.append((mapping, -1 if inv % 2 else 1))
    return out


@lru_cache(maxsize=None)
def _coset_symmetrizer(k: tuple, l: tuple, coeff_var: tuple) -> Symmetrizer:
    m = tuple(a + b for a, b in zip(k, l))
    return Symmetrizer(slot_gens(m, coeff_var), coset_perms(k, l))


@lru_cache(maxsize=None)
def _full_symmetrizer(k: tuple, coeff_var: tuple) -> Symmetrizer:
    return Symmetrizer(slot_gens(k, coeff_var), full_perms(k))


def normalization_factor(k, l, normalization: str):
    if normalization == "unit":
        return Q(1)
    if normalization == "displayed":
        num = den = 1
        for a, b in zip(k, l):
            num *= factorial(a) * factorial(b)
            den *= factorial(a + b)
        return Q(num * num) / den
    raise ValueError(f"unknown normalization {normalization!r}")


@lru_cache(maxsize=4096)
def cross_kernel(D: DynkinDiagram, k: tuple, l: tuple, trig: bool) -> tuple[Poly, int]:
    """prod of zeta numerators between the F-block and the G-block, and the constant sign.

    Also includes the within-block even Vandermondes.
    """
    K = ONE
    sign = 1
    for i, ki in enumerate(k, 1):
        if not ki:
            continue
        for j, lj in enumerate(l, 1):
            if not lj:
                continue
            if (ki * lj) % 2 and pair_sign(D, i, j) < 0:
                sign = -sign
            for a in range(1, ki + 1):
                for b in range(1, lj + 1):
                    f = pair_factor(D, i, a, j, k[j - 1] + b, trig)
                    if f is not None:
                        K = K * f
    blocks = [[range(1, ki + 1), range(ki + 1, ki + li + 1)] for ki, li in zip(k, l)]
    for lin, _ in even_vandermonde_factors(D, tuple(a + b for a, b in zip(k, l)), blocks):
        K = K * lin
    return K, sign


def shift_slots(p: Poly, k) -> Poly:
    """Rename X(i, r) -> X(i, k_i + r)."""
    mapping = {g: X(g[1], k[g[1] - 1] + g[2]) for g in p.gens if g[0] == 2}
    return p.rename(mapping) if mapping else p


def coset_star(D: DynkinDiagram, k: tuple, f: Poly, l: tuple, g: Poly, trig: bool,
               normalization: str = "unit") -> Poly:
    """Numerator of F * G by the coset sum."""
    if not f.terms or not g.terms:
        return Poly()
    coeff_var = V if trig else HBAR
    m = tuple(a + b for a, b in zip(k, l))
    K, sign = cross_kernel(D, k, l, trig)
    P = f * shift_slots(g, k) * K
    if sign < 0:
        P = -P
    S = _coset_symmetrizer(k, l, coeff_var)(P)
    S = divide_vandermonde(S, even_vandermonde_factors(D, m))
    c = normalization_factor(k, l, normalization)
    return S if c == 1 else S.scale(c)


@lru_cache(maxsize=4096)
def word_kernel(D: DynkinDiagram, colors: tuple, trig: bool) -> tuple[Poly, tuple]:
    """Ordered zeta kernel of a color sequence times the even Vandermonde.

    Letter a of color i sits in the next free slot of color i.  Returns the
    kernel (sign included) and the slot of each letter.
    """
    count: dict[int, int] = {}
    slots = []
    for i in colors:
        count[i] = count.get(i, 0) + 1
        slots.append(count[i])
    K = ONE
    sign = 1
    for a in range(len(colors)):
        for b in range(a + 1, len(colors)):
            i, j = colors[a], colors[b]
            if pair_sign(D, i, j) < 0:
                sign = -sign
            # same-color even denominators (x_a - x_b), a < b, are the Vandermonde factors
            f = pair_factor(D, i, slots[a], j, slots[b], trig)
            if f is not None:
                K = K * f
    return (K if sign > 0 else -K), tuple(slots)


def degree_of_colors(D: DynkinDiagram, colors) -> tuple:
    k = [0] * (D.n - 1)
    for i in colors:
        k[i - 1] += 1
    return tuple(k)


def psi_words_numerator(D: DynkinDiagram, combo: dict, trig: bool, divide: bool = True) -> tuple[tuple, Poly]:
    """Numerator of Psi(sum_w c_w w) for words of a common degree.

    ``combo`` maps words (tuples of (color, mode)) to Poly coefficients.
    With divide=False the result is still multiplied by the even Vandermonde,
    which is enough to decide vanishing.
    """
    groups: dict[tuple, Poly] = {}
    degree = None
    for word, coeff in combo.items():
        colors = tuple(i for i, _ in word)
        deg = degree_of_colors(D, colors)
        if degree is None:
            degree = deg
        elif deg != degree:
            raise ValueError("words of different degrees in one combination")
        _, slots = word_kernel(D, colors, trig)
        mono = Poly.monomial({X(i, s): r for (i, r), s in zip(word, slots) if r}, 1)
        term = mono * coeff
        groups[colors] = groups[colors] + term if colors in groups else term
    if degree is None:
        return tuple([0] * (D.n - 1)), Poly()
    total = Poly()
    for colors in sorted(groups):
        M = groups[colors]
        if M.terms:
            total = total + word_kernel(D, colors, trig)[0] * M
    coeff_var = V if trig else HBAR
    total = _full_symmetrizer(degree, coeff_var)(total)
    if divide:
        total = divide_vandermonde(total, even_vandermonde_factors(D, degree))
    return degree, total.canonical()
