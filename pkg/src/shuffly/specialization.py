"""Specialization maps phi_d, the same-degree factors, good/integral tests, decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, Mapping

from .exactalg import (HBAR, X, Y, NotDivisible, Poly, Q, certified_rank, coefficient_matrix,
                       divide_exact, linear_multiplicity, solve_linear, substitute)
from .root_data import (DegreeMismatch, DegreeVector, DynkinDiagram, PBWMonomial, Root,
                        enumerate_T)
from .shuffle_rational import ShuffleElement, pbw_element, psi_pbw_monomial, star

__all__ = [
    "SpecializationResult", "NotInSpan", "phi", "factor_pair", "factor_pair_exponents",
    "factor_diag", "root_p", "rank1_sum", "same_degrees_rhs", "verify_same_degrees_formula",
    "check_lower_degrees", "is_good", "is_integral", "vanishing_orders", "decompose_good",
    "pbw_monomials_of_degree", "pbw_monomials_with_max_mode", "fixed_factor", "GoodReport",
    "specialization_rank", "is_integral_via_decomposition",
    "pbw_monomials_of_weight", "choice_independence",
]

h_ = Poly.gen(HBAR)


class NotInSpan(ArithmeticError):
    """The element is not a Q[h]-combination of PBW images (within the mode window)."""

    def __init__(self, msg: str, d: DegreeVector | None = None):
        super().__init__(msg)
        self.d = d


@dataclass(frozen=True)
class SpecializationResult:
    d: DegreeVector
    poly: Poly

    def is_zero(self) -> bool:
        return not self.poly.terms

    def to_json(self) -> dict:
        from .serialize import specialization_to_json
        return specialization_to_json(self)


def _y(beta: Root, s: int) -> Poly:
    return Poly.gen(Y(beta.j, beta.i, s))


def phi(F: ShuffleElement, d: DegreeVector | Mapping, slot_order: Mapping[int, list] | None = None
        ) -> SpecializationResult:
    """Specialize the numerator of F along the interval copies of d.

    Copies are taken in root order with s ascending; each copy consumes the
    next slot of every color it covers (ascending, or in ``slot_order``).
    """
    if F.trig:
        raise TypeError("specialization maps are defined for the rational algebra only")
    if not isinstance(d, DegreeVector):
        d = DegreeVector.of(d)
    D = F.diagram
    if d.color_degree(D) != F.degree:
        raise DegreeMismatch(f"d={d} induces {d.color_degree(D)}, element has degree {F.degree}")
    order = {i: list(slot_order[i]) if slot_order and i in slot_order else list(range(1, F.degree[i - 1] + 1))
             for i in D.colors}
    nxt = {i: 0 for i in D.colors}
    bind = {}
    for beta, m in d.items:
        for s in range(1, m + 1):
            y = _y(beta, s)
            for k in beta.colors():
                slot = order[k][nxt[k]]
                nxt[k] += 1
                bind[X(k, slot)] = y + h_ * D.shift(k)
    return SpecializationResult(d, substitute(F.numerator, bind).canonical())


# ---------------------------------------------------------------------
# factors of the same-degree formula
# ---------------------------------------------------------------------

def factor_pair_exponents(D: DynkinDiagram, beta: Root, beta2: Root) -> dict:
    """Exponents {c: e} of (y - y' + c h) in G_{beta,beta'} for one pair (s, s')."""
    beta, beta2 = Root(*beta), Root(*beta2)
    ex: dict = {}

    def add(c, e):
        if e:
            ex[Q(c)] = ex.get(Q(c), 0) + e

    for k in beta.colors():
        add(0, (1 if k == beta2.j - 1 else 0) - (1 if k == beta2.i else 0))
        sk = (-1) ** D.p(k)
        if (k - 1) in beta2:
            add(-sk, 1)
        if k in beta2:
            add(sk if D.alpha_parity(k) == 0 else 0, 1)
    return {c: e for c, e in ex.items() if e}


def factor_pair(D: DynkinDiagram, beta: Root, beta2: Root, d: DegreeVector) -> Poly:
    """G_{beta,beta'}: product over s <= d_beta, s' <= d_beta' of the pair factors."""
    beta, beta2 = Root(*beta), Root(*beta2)
    ex = factor_pair_exponents(D, beta, beta2)
    if any(e < 0 for e in ex.values()):
        raise ValueError(f"negative total exponent in G_{{{beta},{beta2}}}: {ex}")
    out = Poly.constant(1)
    for s in range(1, d[beta] + 1):
        for s2 in range(1, d[beta2] + 1):
            z = _y(beta, s) - _y(beta2, s2)
            for c, e in sorted(ex.items()):
                out = out * (z + h_ * c) ** e
    return out


def _floor_div(a: int, b: int) -> int:
    return a // b  # Python floors toward -infinity


def factor_diag_exponents(D: DynkinDiagram, beta: Root) -> tuple[int, int]:
    odd = D.odd_count(beta)
    even = D.even_count(beta)
    return _floor_div(odd, 2), even + _floor_div(odd - 1, 2)


def factor_diag(D: DynkinDiagram, beta: Root, m: int) -> Poly:
    """G_beta = h^{m(i-j)} prod_{s != s'} (y_s - y_s')^a (y_s - y_s' + h)^b."""
    beta = Root(*beta)
    a, b = factor_diag_exponents(D, beta)
    out = h_ ** (m * (beta.i - beta.j))
    for s in range(1, m + 1):
        for s2 in range(1, m + 1):
            if s != s2:
                z = _y(beta, s) - _y(beta, s2)
                out = out * z ** a * (z + h_) ** b
    return out


def fixed_factor(D: DynkinDiagram, d: DegreeVector, integral: bool = False) -> Poly:
    """prod G_{beta,beta'} * prod G_beta (with h^{d(i-j+1)} in the integral variant)."""
    roots = d.roots()
    out = Poly.constant(1)
    for a, b in combinations(roots, 2):
        out = out * factor_pair(D, a, b, d)
    for b in roots:
        out = out * factor_diag(D, b, d[b])
        if integral:
            out = out * h_ ** d[b]
    return out


@lru_cache(maxsize=4096)
def root_p(D: DynkinDiagram, beta: Root, r: int) -> Poly:
    """p_{beta,r}(y): numerator of pbw_element(beta, r) over h^{i-j}, x_{k,1} -> y + shift_k h.

    The variable y is returned as X(1, 1) so the result can seed a rank-one element.
    """
    beta = Root(*beta)
    num = pbw_element(D, beta, r).numerator
    num = divide_exact(num, h_ ** (beta.i - beta.j))
    y = Poly.gen(X(1, 1))
    return substitute(num, {X(k, 1): y + h_ * D.shift(k) for k in beta.colors()})


def rank1_diagram(D: DynkinDiagram, beta: Root) -> DynkinDiagram:
    return DynkinDiagram((D.p(beta.j), D.p(beta.i + 1)))


@lru_cache(maxsize=4096)
def rank1_sum(D: DynkinDiagram, beta: Root, modes: tuple) -> Poly:
    """sum_sigma G_beta^(sigma) = (p_{r1} * ... * p_{rd})(y_{beta,1..d}) in V'_beta."""
    beta = Root(*beta)
    D1 = rank1_diagram(D, beta)
    acc = None
    for r in modes:
        g = ShuffleElement(D1, (1,), root_p(D, beta, r))
        acc = g if acc is None else star(acc, g)
    if acc is None:
        return Poly.constant(1)
    return acc.numerator.rename({X(1, s): Y(beta.j, beta.i, s) for s in range(1, len(modes) + 1)})


def same_degrees_rhs(D: DynkinDiagram, h: PBWMonomial) -> Poly:
    d = h.degree()
    out = fixed_factor(D, d)
    for b in d.roots():
        out = out * rank1_sum(D, b, tuple(h.modes(b)))
    return out


def verify_same_degrees_formula(D: DynkinDiagram, h: PBWMonomial) -> dict:
    """phi_{deg h}(Psi(x_h)) against the factored right side; records the overall sign."""
    lhs = phi(psi_pbw_monomial(D, h), h.degree()).poly
    rhs = same_degrees_rhs(D, h)
    if lhs == rhs:
        sign = 1
    elif lhs == -rhs:
        sign = -1
    else:
        sign = None
    return {"h": str(h), "equal": sign is not None and bool(rhs.terms), "sign": sign}


def check_lower_degrees(D: DynkinDiagram, h: PBWMonomial, d: DegreeVector) -> bool:
    return phi(psi_pbw_monomial(D, h), d).is_zero()


# ---------------------------------------------------------------------
# good / integral
# ---------------------------------------------------------------------

def _hbar_valuation(p: Poly) -> float:
    if not p.terms:
        return float("inf")
    return p.min_exponent(HBAR)


@dataclass
class GoodReport:
    good: bool
    witness: DegreeVector | None = None
    valuations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.good

    def to_json(self) -> dict:
        return {"good": self.good, "witness": None if self.witness is None else self.witness.to_json(),
                "checks": self.valuations}


def is_good(F: ShuffleElement) -> GoodReport:
    rep = GoodReport(True)
    for d in enumerate_T(F.diagram, F.degree):
        val = _hbar_valuation(phi(F, d).poly)
        need = d.hbar_weight()
        rep.valuations.append({"d": d.to_json(), "required": need,
                               "valuation": None if val == float("inf") else int(val)})
        if val < need and rep.good:
            rep.good = False
            rep.witness = d
    return rep


def is_integral(F: ShuffleElement) -> bool:
    return _hbar_valuation(F.numerator) >= sum(F.degree)


# ---------------------------------------------------------------------
# vanishing orders
# ---------------------------------------------------------------------

def vanishing_orders(F: ShuffleElement, d: DegreeVector | Mapping) -> list[dict]:
    """Measured orders of phi_d(F) along y_{b,s} - y_{b',s'} + c h (c = 0, -1, +1).

    ``predicted`` is the exponent in G_{b,b'} (or G_b, plus one on the
    diagonal of an odd root); ``ok`` means measured >= predicted.
    """
    if not isinstance(d, DegreeVector):
        d = DegreeVector.of(d)
    D = F.diagram
    P = phi(F, d).poly
    pairs = [(b, s) for b in d.roots() for s in range(1, d[b] + 1)]
    out = []
    for (b, s), (b2, s2) in combinations(pairs, 2):
        z = _y(b, s) - _y(b2, s2)
        if b != b2:
            ex = factor_pair_exponents(D, b, b2)
            pred = {c: ex.get(Q(c), 0) for c in (0, -1, 1)}
        else:
            a, bb = factor_diag_exponents(D, b)
            pred = {0: 2 * a + D.root_parity(b), 1: bb, -1: bb}
        for c in (0, -1, 1):
            m = linear_multiplicity(P, z + h_ * c)
            out.append({"pair": [f"{b}#{s}", f"{b2}#{s2}"], "shift": c, "measured": m,
                        "predicted": pred[c], "ok": m >= pred[c]})
    return out


# ---------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------

def pbw_monomials_of_degree(D: DynkinDiagram, d: DegreeVector, windows: Mapping | int) -> list[PBWMonomial]:
    """All h with deg(h) = d and sum of beta-modes <= window (per root or global per root)."""
    per_root = []
    for b in d.roots():
        m = d[b]
        w = windows if isinstance(windows, int) else windows[b]
        odd = D.root_parity(b) == 1
        opts = [t for t in combinations_with_replacement(range(w + 1), m)
                if sum(t) <= w and (not odd or len(set(t)) == m)]
        per_root.append([(b, t) for t in opts])
    out = []
    for combo in product(*per_root):
        out.append(PBWMonomial.from_factors([(b, r) for b, t in combo for r in t]))
    return out


def pbw_monomials_with_max_mode(D: DynkinDiagram, d: DegreeVector, max_mode: int) -> list[PBWMonomial]:
    per_root = []
    for b in d.roots():
        m = d[b]
        odd = D.root_parity(b) == 1
        opts = [t for t in combinations_with_replacement(range(max_mode + 1), m)
                if not odd or len(set(t)) == m]
        per_root.append([(b, t) for t in opts])
    return [PBWMonomial.from_factors([(b, r) for b, t in combo for r in t]) for combo in product(*per_root)]


def specialization_rank(D: DynkinDiagram, hs: Iterable[PBWMonomial]) -> tuple[int, int]:
    """(rank over Q(h), count) of {phi_d(Psi(x_h))} for h of a common degree d."""
    hs = list(hs)
    if not hs:
        return 0, 0
    d = hs[0].degree()
    polys = [phi(psi_pbw_monomial(D, h), d).poly for h in hs]
    _, rows = coefficient_matrix(polys, (HBAR,))
    return certified_rank(rows), len(hs)


def decompose_good(F: ShuffleElement, log: list | None = None) -> dict:
    """Write F as sum_h c_h Psi(x_h) with c_h in Q[h].

    Iterates d over T_k from d_max down.  At each d the specialization of
    the residual is divided by prod G_{b,b'} prod G_b and the quotient is
    expanded in the products of rank-one sums; the mode window per root is
    the y_b-degree of the quotient.  Raises NotInSpan otherwise.
    """
    D = F.diagram
    coeffs: dict[PBWMonomial, Poly] = {}
    residual = F
    for d in enumerate_T(D, F.degree):
        P = phi(residual, d).poly
        if not P.terms:
            continue
        Gfix = fixed_factor(D, d)
        try:
            G = divide_exact(P, Gfix)
        except NotDivisible:
            raise NotInSpan(f"phi_d not divisible by the fixed factors at d={d}", d)
        windows = {}
        for b in d.roots():
            yv = [Y(b.j, b.i, s) for s in range(1, d[b] + 1)]
            windows[b] = max(G.degree_in(yv), 0)
        hs = pbw_monomials_of_degree(D, d, windows)
        basis = []
        for h in hs:
            S = Poly.constant(1)
            for b in d.roots():
                S = S * rank1_sum(D, b, tuple(h.modes(b)))
            basis.append(S)
        cols, rows = coefficient_matrix([G] + basis, (HBAR,))
        target = rows[0]
        mat = [list(r) for r in zip(*rows[1:])]  # one row per y-monomial
        res = solve_linear(mat, target)
        if not res.consistent:
            raise NotInSpan(f"quotient not in the span of rank-one products at d={d}", d)
        if not res.unique:
            raise RuntimeError(f"rank-one products dependent at d={d} (rank {res.rank} of {len(hs)})")
        step = None
        for h, c in zip(hs, res.solution):
            if not c.num.terms:
                continue
            c = c.reduced()
            if not c.is_polynomial():
                raise NotInSpan(f"coefficient of {h} is not polynomial in h: {c}", d)
            coef = c.num.scale(1 / c.den.constant_value())
            img = psi_pbw_monomial(D, h)
            # phi_d(Psi(x_h)) = sign * Gfix * prod S; fold the sign into the coefficient
            sign = _formula_sign(D, h, img, Gfix, basis[hs.index(h)])
            coef = coef * sign
            coeffs[h] = coeffs.get(h, Poly()) + coef
            term = img.scale(coef)
            step = term if step is None else step + term
        if step is not None:
            residual = residual - step
        if log is not None:
            log.append({"d": d.to_json(), "candidates": len(hs), "terms": 0 if step is None else
                        sum(1 for h, c in zip(hs, res.solution) if c.num.terms)})
        if not phi(residual, d).is_zero():
            raise NotInSpan(f"specialization at d={d} not cleared", d)
    if not residual.is_zero():
        raise NotInSpan("nonzero residual after d_min")
    return {h: c for h, c in sorted(coeffs.items(), key=lambda kv: kv[0].items) if c.terms}


def _formula_sign(D, h, img, Gfix, S) -> int:
    lhs = phi(img, h.degree()).poly
    rhs = Gfix * S
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    raise AssertionError(f"same-degrees formula fails for {h}")


def is_integral_via_decomposition(F: ShuffleElement) -> bool:
    """F integral iff every coefficient c_h is divisible by h^{#factors of h}."""
    try:
        coeffs = decompose_good(F)
    except NotInSpan:
        return False
    return all(_hbar_valuation(c) >= h.n_factors() for h, c in coeffs.items())


# ---------------------------------------------------------------------
# independence of the bracket choice
# ---------------------------------------------------------------------

def weight(h: PBWMonomial) -> int:
    """Homogeneous degree of Psi(x_h) in (x, h): modes plus h-powers."""
    return h.mode_total() + h.degree().hbar_weight()


def pbw_monomials_of_weight(D: DynkinDiagram, k, max_weight: int) -> list[PBWMonomial]:
    """All h of color degree k with weight(h) <= max_weight (closed under decomposition)."""
    out = []
    for d in enumerate_T(D, tuple(k)):
        room = max_weight - d.hbar_weight()
        if room < 0:
            continue
        out.extend(h for h in pbw_monomials_with_max_mode(D, d, room) if h.mode_total() <= room)
    return out


def choice_independence(D: DynkinDiagram, k, max_weight: int, other: str = "last") -> dict:
    """Compare Q[h]-spans of {Psi(x_h)} and of {h^{#h} Psi(x_h)} for two bracket choices.

    Each element of the ``other`` family is decomposed in the canonical one;
    the spans agree iff the transition matrix and its inverse are polynomial.
    """
    hs = pbw_monomials_of_weight(D, k, max_weight)
    idx = {h: a for a, h in enumerate(hs)}
    M = [[Poly() for _ in hs] for _ in hs]
    for a, h in enumerate(hs):
        coeffs = decompose_good(psi_pbw_monomial(D, h, other))
        for h2, c in coeffs.items():
            if h2 not in idx:
                raise NotInSpan(f"{h2} outside the weight window")
            M[a][idx[h2]] = c
    inv = []
    n = len(hs)
    if n:
        MT = [[M[a][b] for a in range(n)] for b in range(n)]
        for b in range(n):
            e = [Poly.constant(1) if a == b else Poly() for a in range(n)]
            res = solve_linear(MT, e)
            if not res.unique:
                return {"count": n, "invertible": False, "ok": False}
            inv.append([x.reduced() for x in res.solution])  # row b of M^-1 transposed
    fwd_poly = True  # decompose_good only returns polynomial coefficients
    inv_poly = all(x.is_polynomial() for row in inv for x in row)
    nf = [h.n_factors() for h in hs]
    integral_fwd = all(_hbar_valuation(M[a][b]) + nf[a] >= nf[b] for a in range(n) for b in range(n))
    # inv[b][a] = (M^-1)[a][b]
    integral_inv = inv_poly and all(
        _hbar_valuation(inv[b][a].num) + nf[a] >= nf[b] for a in range(n) for b in range(n))
    return {"count": n, "invertible": True, "forward_polynomial": fwd_poly,
            "inverse_polynomial": inv_poly, "integral_forward": integral_fwd,
            "integral_inverse": integral_inv,
            "ok": fwd_poly and inv_poly and integral_fwd and integral_inv}
