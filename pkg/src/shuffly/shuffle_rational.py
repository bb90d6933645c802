"""The rational shuffle superalgebra: elements, product, membership, Psi, PBW elements."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from math import factorial
from typing import ClassVar, Iterable, Sequence

from . import _kernel as K
from .exactalg import (HBAR, V, X, T, NegativeExponentOnNonLaurent, Poly, Q,
                       certified_rank, coefficient_matrix, divide_exact, substitute)
from .root_data import (DynkinDiagram, PBWMonomial, Root, cartan, zeta_rational)
from .words import NC, anticommutator, bracket, left_nested

__all__ = [
    "ShuffleElement", "unit", "unit_generator", "star", "star_naive", "superbracket",
    "supersymmetrize", "check_membership", "MembershipReport", "psi_word", "psi_nc",
    "psi_nc_vanishes", "is_supersymmetric", "rank1_lists", "rank1_power_constant",
    "pbw_word", "pbw_element", "psi_pbw_monomial", "mult_symfun", "quartic_Q",
    "rational_relations", "verify_positive_relations", "RelationReport", "CheckRecord",
    "elegant_deduction", "rank1_independence",
]


@dataclass(frozen=True, eq=False)
class ShuffleElement:
    """numerator / prod_{i, r, r'} (x_{i,r} - x_{i+1,r'}) in degree ``degree``."""

    diagram: DynkinDiagram
    degree: tuple
    numerator: Poly = field(default_factory=Poly)

    trig: ClassVar[bool] = False

    def __post_init__(self):
        deg = tuple(int(d) for d in self.degree)
        if len(deg) != self.diagram.n - 1 or any(d < 0 for d in deg):
            raise ValueError(f"degree {self.degree} does not fit diagram {self.diagram}")
        object.__setattr__(self, "degree", deg)
        num = self.numerator if isinstance(self.numerator, Poly) else Poly.constant(self.numerator)
        num = num.canonical()
        coeff_var = V if self.trig else HBAR
        for g in num.gens:
            if g == coeff_var:
                continue
            if g[0] != 2 or not (1 <= g[1] < self.diagram.n) or not (1 <= g[2] <= deg[g[1] - 1]):
                raise ValueError(f"variable {g} not allowed in degree {deg}")
        if not self.trig and num.has_negative_exponents():
            raise NegativeExponentOnNonLaurent("negative exponents in a rational element")
        object.__setattr__(self, "numerator", num)

    # -- basic structure ----------------------------------------------
    @property
    def D(self) -> DynkinDiagram:
        return self.diagram

    def parity(self) -> int:
        return self.diagram.degree_parity(self.degree)

    def is_zero(self) -> bool:
        return not self.numerator.terms

    def _like(self, num: Poly, degree=None):
        return type(self)(self.diagram, self.degree if degree is None else degree, num)

    def _check(self, other):
        if type(other) is not type(self) or other.diagram != self.diagram:
            raise ValueError("elements of different algebras")
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        self._check(other)
        deg = self.degree if not self.is_zero() else other.degree
        return self._like(self.numerator + other.numerator, deg)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like(-self.numerator)

    def scale(self, c):
        """Multiply by a scalar or by a polynomial in the coefficient variable (h or v)."""
        if isinstance(c, Poly):
            allowed = {V if self.trig else HBAR}
            if not set(c.variables()) <= allowed:
                raise ValueError("scale factor must only involve the coefficient variable")
            return self._like(self.numerator * c)
        return self._like(self.numerator.scale(c))

    def __mul__(self, other):
        if isinstance(other, ShuffleElement):
            return star(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        if self.diagram != other.diagram or self.trig != other.trig:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.numerator == other.numerator

    def __hash__(self):
        return hash((self.diagram, self.degree, self.numerator))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.diagram}, {self.degree}, {self.numerator})"

    def slot_vars(self, i: int) -> list[tuple]:
        return [X(i, r) for r in range(1, self.degree[i - 1] + 1)]

    def to_json(self) -> dict:
        from .serialize import element_to_json
        return element_to_json(self)


def unit(D: DynkinDiagram, cls=ShuffleElement) -> ShuffleElement:
    return cls(D, tuple([0] * (D.n - 1)), Poly.constant(1))


def unit_generator(D: DynkinDiagram, i: int, r: int, cls=ShuffleElement) -> ShuffleElement:
    if not 1 <= i < D.n:
        raise ValueError(f"color {i} out of range")
    if r < 0 and not cls.trig:
        raise ValueError("rational modes are >= 0")
    num = Poly.monomial({X(i, 1): r}) if r else Poly.constant(1)
    return cls(D, D.unit_degree(i), num)


def _same_algebra(F: ShuffleElement, G: ShuffleElement):
    if F.diagram != G.diagram or type(F) is not type(G):
        raise ValueError("star of elements from different algebras")


def star(F: ShuffleElement, G: ShuffleElement, normalization: str = "unit") -> ShuffleElement:
    """Shuffle product by the coset sum.

    normalization="unit" sums each coset of Sigma_{k+l}/(Sigma_k x Sigma_l) once
    (associative); "displayed" applies the extra (k!l!)^2/(k+l)! of the verbatim
    formula.
    """
    _same_algebra(F, G)
    deg = tuple(a + b for a, b in zip(F.degree, G.degree))
    num = K.coset_star(F.diagram, F.degree, F.numerator, G.degree, G.numerator, F.trig, normalization)
    return F._like(num, deg)


def _zeta_parts(D: DynkinDiagram, i: int, a: int, j: int, b: int, trig: bool) -> tuple[Poly, Poly]:
    """zeta_ij evaluated on (x_{i,a}, x_{j,b}) as (numerator, denominator), literally."""
    xa, xb = Poly.gen(X(i, a)), Poly.gen(X(j, b))
    if trig:
        from .root_data import zeta_trig
        num, has_den = zeta_trig(D, i, j)
        if not has_den:
            return num, Poly.constant(1)
        # zeta(xa/xb) = num(xa/xb)/(xa/xb - 1); clear xb from both
        z = xa * Poly.gen(X(j, b)) ** -1
        numer = substitute(num, {T(0): z}) * xb
        return numer, (xa - xb) if has_den else xb
    num, has_den = zeta_rational(D, i, j)
    return substitute(num, {T(0): xa - xb}), (xa - xb) if has_den else Poly.constant(1)


def star_naive(F: ShuffleElement, G: ShuffleElement, normalization: str = "unit") -> ShuffleElement:
    """Literal sum over the full product of symmetric groups (oracle; slow)."""
    _same_algebra(F, G)
    D, trig = F.diagram, F.trig
    k, l = F.degree, G.degree
    m = tuple(a + b for a, b in zip(k, l))
    colors = list(D.colors)
    full_den = Poly.constant(1)
    for i in colors[:-1]:
        for r in range(1, m[i - 1] + 1):
            for s in range(1, m[i] + 1):
                full_den = full_den * (Poly.gen(X(i, r)) - Poly.gen(X(i + 1, s)))
    vand = Poly.constant(1)
    for i in colors:
        if D.alpha_parity(i) == 0:
            for a in range(1, m[i - 1] + 1):
                for b in range(a + 1, m[i - 1] + 1):
                    vand = vand * (Poly.gen(X(i, a)) - Poly.gen(X(i, b)))
    common = full_den * vand

    def own_den(deg, sl) -> Poly:
        d = Poly.constant(1)
        for i in colors[:-1]:
            for r in range(1, deg[i - 1] + 1):
                for s in range(1, deg[i] + 1):
                    d = d * (Poly.gen(X(i, sl[i][r])) - Poly.gen(X(i + 1, sl[i + 1][s])))
        return d

    total = Poly()
    per_color = [list(permutations(range(1, mi + 1))) for mi in m]
    for sigma in product(*per_color):
        sign = 1
        for i, perm in zip(colors, sigma):
            if D.alpha_parity(i) == 1:
                inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
                sign *= (-1) ** inv
        # position p of color i holds variable x_{i, sigma_i(p)}
        slF = {i: {r: sigma[i - 1][r - 1] for r in range(1, k[i - 1] + 1)} for i in colors}
        slG = {i: {r: sigma[i - 1][k[i - 1] + r - 1] for r in range(1, l[i - 1] + 1)} for i in colors}
        f = F.numerator.rename({X(i, r): X(i, slF[i][r]) for i in colors for r in slF[i]})
        g = G.numerator.rename({X(i, r): X(i, slG[i][r]) for i in colors for r in slG[i]})
        num = f * g
        den = own_den(k, slF) * own_den(l, slG)
        for i in colors:
            for r in slF[i].values():
                for j in colors:
                    for s in slG[j].values():
                        zn, zd = _zeta_parts(D, i, r, j, s, trig)
                        num = num * zn
                        den = den * zd
        cof = divide_exact(common, den)
        total = total + num * cof * sign
    total = divide_exact(total, vand)
    num_f = den_f = 1
    for a, b in zip(k, l):
        num_f *= factorial(a) * factorial(b)
        den_f *= factorial(a + b)
    if normalization == "unit":
        c = Q(1) / num_f
    elif normalization == "displayed":
        c = Q(num_f) / den_f
    else:
        raise ValueError(normalization)
    return F._like(total.scale(c), m)


def superbracket(F: ShuffleElement, G: ShuffleElement) -> ShuffleElement:
    s = -1 if F.parity() * G.parity() else 1
    return star(F, G) - star(G, F).scale(s)


def supersymmetrize(D: DynkinDiagram, degree, p: Poly, cls=ShuffleElement) -> ShuffleElement:
    """Sum over prod Sigma_{k_i} with the sign of the odd-color permutations."""
    degree = tuple(degree)
    per_color = []
    for i, ki in enumerate(degree, 1):
        odd = D.alpha_parity(i) == 1
        ch = []
        for perm in permutations(range(1, ki + 1)):
            inv = sum(1 for a in range(ki) for b in range(a + 1, ki) if perm[a] > perm[b])
            ch.append(({X(i, r): X(i, perm[r - 1]) for r in range(1, ki + 1)}, inv if odd else 0))
        per_color.append(ch)
    out = Poly()
    for combo in product(*per_color):
        mp = {}
        inv = 0
        for m_, v in combo:
            mp.update(m_)
            inv += v
        q = p.rename({a: b for a, b in mp.items() if a in p.gens})
        out = out + (q if inv % 2 == 0 else -q)
    return cls(D, degree, out)


# ---------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------

@dataclass
class MembershipReport:
    supersymmetric: bool
    wheel1: list = field(default_factory=list)
    wheel2: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.supersymmetric and not self.wheel1 and not self.wheel2

    def to_json(self) -> dict:
        return {"supersymmetric": self.supersymmetric, "wheel1": self.wheel1,
                "wheel2": self.wheel2, "ok": self.ok}


def is_supersymmetric(F: ShuffleElement) -> bool:
    D = F.diagram
    for i, ki in enumerate(F.degree, 1):
        s = -1 if D.alpha_parity(i) else 1
        for r in range(1, ki):
            sw = F.numerator.rename({X(i, r): X(i, r + 1), X(i, r + 1): X(i, r)})
            if sw != F.numerator.scale(s):
                return False
    return True


def _wheel_loci(F: ShuffleElement, trig: bool, exhaustive: bool = True):
    """Yield (kind, description, bindings) for every wheel locus of F's degree."""
    D, k = F.diagram, F.degree
    t = Poly.gen(T(0))
    if trig:
        v = Poly.gen(V)
        a1, a2, a3 = v * v * t, v * t, t          # wheel 1: x_{i,r1}, x_{i+e,s}, x_{i,r2}
        b_r1, b_side, b_r2 = t, v * t, v * v * t  # wheel 2
    else:
        h = Poly.gen(HBAR)
        a1, a2, a3 = t + h, t + h * Q("1/2"), t
        b_r1, b_side, b_r2 = t, t + h * Q("1/2"), t + h
    for i in D.colors:
        ki = k[i - 1]
        if ki < 2:
            continue
        pairs = [(r1, r2) for r1 in range(1, ki + 1) for r2 in range(1, ki + 1) if r1 != r2]
        if not exhaustive:
            pairs = pairs[:1]
        if D.alpha_parity(i) == 0:
            for e in (-1, 1):
                j = i + e
                if not (1 <= j < D.n) or k[j - 1] < 1:
                    continue
                ss = range(1, k[j - 1] + 1) if exhaustive else [1]
                for (r1, r2) in pairs:
                    for s in ss:
                        yield ("wheel1", {"i": i, "eps": e, "r1": r1, "r2": r2, "s": s},
                               {X(i, r1): a1, X(j, s): a2, X(i, r2): a3})
        else:
            if not (2 <= i <= D.n - 2) or k[i - 2] < 1 or k[i] < 1:
                continue
            ss = range(1, k[i - 2] + 1) if exhaustive else [1]
            ss2 = range(1, k[i] + 1) if exhaustive else [1]
            for (r1, r2) in pairs:
                for s in ss:
                    for s2 in ss2:
                        yield ("wheel2", {"i": i, "r1": r1, "r2": r2, "s": s, "s2": s2},
                               {X(i - 1, s): b_side, X(i, r1): b_r1, X(i + 1, s2): b_side, X(i, r2): b_r2})


def check_membership(F: ShuffleElement, exhaustive: bool = True) -> MembershipReport:
    """Supersymmetry and wheel conditions (numerator substitution)."""
    rep = MembershipReport(supersymmetric=is_supersymmetric(F))
    for kind, desc, bind in _wheel_loci(F, F.trig, exhaustive):
        val = substitute(F.numerator, bind)
        if val.terms:
            getattr(rep, kind).append(desc)
    return rep


# ---------------------------------------------------------------------
# Psi on words and PBW elements
# ---------------------------------------------------------------------

def psi_nc(D: DynkinDiagram, x: NC, cls=ShuffleElement) -> ShuffleElement:
    """Psi of a combination of words of a common degree."""
    if x.is_zero():
        return cls(D, tuple([0] * (D.n - 1)), Poly())
    deg, num = K.psi_words_numerator(D, x.terms, cls.trig)
    return cls(D, deg, num)


def psi_nc_vanishes(D: DynkinDiagram, x: NC, trig: bool = False) -> bool:
    """True iff Psi(x) = 0 (decided without the final Vandermonde division)."""
    if x.is_zero():
        return True
    _, num = K.psi_words_numerator(D, x.terms, trig, divide=False)
    return not num.terms


@lru_cache(maxsize=65536)
def _psi_word_star(D: DynkinDiagram, word: tuple, cls) -> ShuffleElement:
    if not word:
        return unit(D, cls)
    head = _psi_word_star(D, word[:-1], cls)
    return star(head, unit_generator(D, *word[-1], cls=cls))


def psi_word(D: DynkinDiagram, word: Sequence[tuple[int, int]], method: str = "kernel",
             cls=ShuffleElement) -> ShuffleElement:
    """Psi(x_{i1,r1} ... x_{ip,rp}); method "kernel" (one symmetrization) or "star"."""
    word = tuple((int(i), int(r)) for i, r in word)
    if not word:
        return unit(D, cls)
    if method == "star":
        return _psi_word_star(D, word, cls)
    if method != "kernel":
        raise ValueError(method)
    return psi_nc(D, NC.word(word), cls)


def pbw_word(D: DynkinDiagram, beta: Root, r: int, choice: str = "canonical") -> NC:
    """The bracket defining x_{beta,r}.

    canonical: [...[x_{j,r}, x_{j+1,0}], ..., x_{i,0}];
    reversed:  [...[x_{i,0}, x_{i-1,0}], ..., x_{j,r}] (mode on the last letter);
    last:      [...[x_{j,0}, x_{j+1,0}], ..., x_{i,r}].
    """
    beta = Root(*beta)
    if choice == "canonical":
        letters = [(beta.j, r)] + [(c, 0) for c in range(beta.j + 1, beta.i + 1)]
    elif choice == "reversed":
        letters = [(c, 0) for c in range(beta.i, beta.j, -1)] + [(beta.j, r)]
        if len(letters) == 1:
            letters = [(beta.j, r)]
    elif choice == "last":
        letters = [(c, 0) for c in range(beta.j, beta.i)] + [(beta.i, r)]
    else:
        raise ValueError(f"unknown PBW choice {choice!r}")
    return left_nested(D, letters)


@lru_cache(maxsize=4096)
def _pbw_element(D: DynkinDiagram, beta: Root, r: int, choice: str, cls) -> ShuffleElement:
    return psi_nc(D, pbw_word(D, beta, r, choice), cls)


def pbw_element(D: DynkinDiagram, beta, r: int, choice: str = "canonical",
                cls=ShuffleElement) -> ShuffleElement:
    beta = Root(*beta)
    if beta.i >= D.n or beta.j < 1 or beta.j > beta.i:
        raise ValueError(f"root {beta} outside diagram {D}")
    return _pbw_element(D, beta, int(r), choice, cls)


@lru_cache(maxsize=65536)
def _pbw_prefix(D: DynkinDiagram, factors: tuple, choice: str, cls) -> ShuffleElement:
    if not factors:
        return unit(D, cls)
    head = _pbw_prefix(D, factors[:-1], choice, cls)
    return star(head, pbw_element(D, factors[-1][0], factors[-1][1], choice, cls))


def psi_pbw_monomial(D: DynkinDiagram, h: PBWMonomial, choice: str = "canonical",
                     rescaled: bool = False, cls=ShuffleElement) -> ShuffleElement:
    """Psi(x_h) (or Psi(X_h) = h^{#factors} Psi(x_h) when rescaled), factors in double order."""
    if not isinstance(h, PBWMonomial):
        h = PBWMonomial.of(h)
    h.validate(D)
    F = _pbw_prefix(D, tuple(h.factors()), choice, cls)
    if rescaled:
        F = F.scale(Poly.gen(HBAR) ** h.n_factors())
    return F


def mult_symfun(F: ShuffleElement, i: int, q: Poly) -> ShuffleElement:
    """Multiply the numerator by a symmetric polynomial q(x_{i,1}, ..., x_{i,k_i})."""
    allowed = set(F.slot_vars(i)) | {V if F.trig else HBAR}
    if not set(q.variables()) <= allowed:
        raise ValueError(f"q must be a polynomial in the {F.degree[i - 1]} color-{i} variables")
    for r in range(1, F.degree[i - 1]):
        if q.rename({X(i, r): X(i, r + 1), X(i, r + 1): X(i, r)}) != q:
            raise ValueError("q is not symmetric")
    return F._like(F.numerator * q)


# ---------------------------------------------------------------------
# relations of the positive half
# ---------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    instance: dict
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "instance": self.instance,
                "result": "pass" if self.passed else "fail", "witness": self.witness}


@dataclass
class RelationReport:
    records: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out: dict = {}
        for r in self.records:
            out[r.name] = out.get(r.name, 0) + 1
        return out

    def to_json(self) -> list:
        return [r.to_json() for r in self.records]


def quartic_Q(D: DynkinDiagram, j: int, r: int, k: int, l: int, s: int) -> NC:
    """Q_j(r;k,l;s) = [[x_{j-1,r}, x_{j,k}], [x_{j,l}, x_{j+1,s}]] + (k <-> l)."""
    L = NC.letter

    def one(a, b):
        return bracket(D, bracket(D, L(j - 1, r), L(j, a)), bracket(D, L(j, b), L(j + 1, s)))

    return one(k, l) + one(l, k)


def rational_relations(D: DynkinDiagram, R: int = 3, extended: bool = False):
    """Yield (name, params, NC) for each relation instance with modes in [0, R]."""
    h = Poly.gen(HBAR)
    L = NC.letter
    cols = list(D.colors)
    modes = range(0, R + 1)
    # [x_{i,r}, x_{j,s}] = 0 if c_ij = 0
    for i in cols:
        for j in cols:
            if j < i or cartan(D, i, j) != 0:
                continue
            for r in modes:
                for s in modes:
                    if i == j and s < r:
                        continue
                    yield "commute", {"i": i, "j": j, "r": r, "s": s}, bracket(D, L(i, r), L(j, s))
    # [x_{i,r+1}, x_{j,s}] - [x_{i,r}, x_{j,s+1}] = (c_ij h/2) {x_{i,r}, x_{j,s}}
    for i in cols:
        for j in cols:
            if i == j and D.alpha_parity(i) == 1:
                continue
            c = cartan(D, i, j)
            for r in modes:
                for s in modes:
                    lhs = bracket(D, L(i, r + 1), L(j, s)) - bracket(D, L(i, r), L(j, s + 1))
                    rhs = anticommutator(D, L(i, r), L(j, s)).scale(h * (Q(c) / 2))
                    yield "formal", {"i": i, "j": j, "r": r, "s": s}, lhs - rhs
    # cubic Serre
    for i in cols:
        if D.alpha_parity(i) != 0 and not extended:
            continue
        for j in (i - 1, i + 1):
            if j not in cols:
                continue
            for r in modes:
                for s in modes:
                    if s < r:
                        continue
                    for t in modes:
                        x = (bracket(D, L(i, r), bracket(D, L(i, s), L(j, t)))
                             + bracket(D, L(i, s), bracket(D, L(i, r), L(j, t))))
                        yield "cubic_serre", {"i": i, "j": j, "r": r, "s": s, "t": t}, x
    # quartic Serre and its generalization
    for j in cols:
        if j - 1 not in cols or j + 1 not in cols:
            continue
        standard = (D.alpha_parity(j) == 1 and D.alpha_parity(j - 1) == 0
                    and D.alpha_parity(j + 1) == 0)
        if not standard and not extended:
            continue
        for r in modes:
            for s in modes:
                x = bracket(D, bracket(D, L(j - 1, r), L(j, 0)), bracket(D, L(j, 0), L(j + 1, s)))
                yield "quartic_serre", {"j": j, "r": r, "s": s}, x
        for r in modes:
            for s in modes:
                for k in modes:
                    for l in modes:
                        if l < k:
                            continue
                        yield ("quartic_generalized", {"j": j, "r": r, "k": k, "l": l, "s": s},
                               quartic_Q(D, j, r, k, l, s))


def verify_positive_relations(D: DynkinDiagram, R: int = 3, extended: bool = False) -> RelationReport:
    if R < 1:
        raise ValueError("mode window must be >= 1")
    rep = RelationReport()
    for name, params, x in rational_relations(D, R, extended):
        ok = psi_nc_vanishes(D, x, trig=False)
        witness = None
        if not ok:
            witness = str(psi_nc(D, x).numerator)
        rep.records.append(CheckRecord(name, params, ok, witness))
    return rep


def elegant_deduction(D: DynkinDiagram, j: int, r: int, k: int, l: int, s: int) -> dict:
    """Psi(Q_j(r;k,l;s)) versus (x_{j,1}^k x_{j,2}^l + x_{j,1}^l x_{j,2}^k) Psi(Q_j(r;0,0;s))."""
    lhs = psi_nc(D, quartic_Q(D, j, r, k, l, s))
    base = psi_nc(D, quartic_Q(D, j, r, 0, 0, s))
    deg = tuple(2 if c == j else (1 if c in (j - 1, j + 1) else 0) for c in D.colors)
    if base.is_zero():
        base = ShuffleElement(D, deg, Poly())
    x1, x2 = Poly.gen(X(j, 1)), Poly.gen(X(j, 2))
    q = x1 ** k * x2 ** l + x1 ** l * x2 ** k
    rhs = mult_symfun(base, j, q)
    return {"identity": lhs == rhs, "lhs_zero": lhs.is_zero(), "base_zero": base.is_zero()}


# ---------------------------------------------------------------------
# rank-one bases
# ---------------------------------------------------------------------

def rank1_lists(odd: bool, k: int, max_mode: int) -> list[tuple[int, ...]]:
    lists = combinations_with_replacement(range(max_mode + 1), k)
    return [t for t in lists if not odd or len(set(t)) == len(t)]


def rank1_independence(parities: Sequence[int], max_length: int = 3, max_mode: int = 4,
                       r_lists: Iterable[Sequence[int]] | None = None) -> dict:
    """Rank of ordered products x^{r1} * ... * x^{rk} in the 2-dimensional case.

    Reports, per length k, the number of products and their rank over Q(h);
    for the odd color also checks that products with a repeated mode vanish.
    """
    D = DynkinDiagram(tuple(parities))
    if D.n != 2:
        raise ValueError("rank-one check needs a 2-dimensional V")
    odd = D.alpha_parity(1) == 1
    groups: dict[int, list] = {}
    if r_lists is None:
        for k in range(1, max_length + 1):
            groups[k] = rank1_lists(odd, k, max_mode)
    else:
        for t in r_lists:
            groups.setdefault(len(t), []).append(tuple(t))
    out: dict = {"odd": odd, "lengths": {}}
    for k, lists in sorted(groups.items()):
        polys = [psi_word(D, [(1, r) for r in t]).numerator for t in lists]
        _, rows = coefficient_matrix(polys, (HBAR,))
        rk = certified_rank(rows)
        entry = {"count": len(lists), "rank": rk, "full_rank": rk == len(lists)}
        if odd:
            reps = [t for t in combinations_with_replacement(range(max_mode + 1), k) if len(set(t)) < len(t)]
            entry["repeated_vanish"] = all(psi_word(D, [(1, r) for r in t]).is_zero() for t in reps)
        out["lengths"][k] = entry
    return out


def rank1_power_constant(parities: Sequence[int], k: int, r: int,
                         normalization: str = "unit") -> object:
    """The scalar c with x^r * ... * x^r (k factors, left to right) = c (x_1...x_k)^r, or None."""
    D = DynkinDiagram(tuple(parities))
    if D.n != 2:
        raise ValueError("rank-one check needs a 2-dimensional V")
    g = unit_generator(D, 1, r)
    acc = g
    for _ in range(k - 1):
        acc = star(acc, g, normalization)
    target = Poly.constant(1)
    for s in range(1, k + 1):
        target = target * Poly.gen(X(1, s)) ** r
    if acc.is_zero():
        return Q(0)
    c = acc.numerator
    coeff = next(iter(c.terms.values()))
    return coeff if c == target.scale(coeff) else None
