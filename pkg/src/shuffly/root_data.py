"""Type-A root data for a parity sequence: Cartan matrix, roots, orders, zeta kernels."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple

from .exactalg import HBAR, V, Poly, Q

__all__ = [
    "DynkinDiagram", "Root", "DegreeVector", "PBWMonomial",
    "cartan", "zeta_rational", "zeta_trig", "enumerate_T", "compare_deg",
    "DegreeMismatch",
]


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DynkinDiagram:
    """Parity sequence (p_1, ..., p_n) of the basis of V; colors are 1..n-1."""

    parities: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.parities)
        if len(p) < 2 or any(x not in (0, 1) for x in p):
            raise ValueError(f"bad parity sequence {self.parities!r}")
        object.__setattr__(self, "parities", p)

    @classmethod
    def parse(cls, s: str) -> "DynkinDiagram":
        s = s.strip()
        if len(s) < 2 or any(ch not in "01" for ch in s):
            raise ValueError(f"parity string must be >= 2 characters of 0/1, got {s!r}")
        return cls(tuple(int(ch) for ch in s))

    def __str__(self) -> str:
        return "".join(map(str, self.parities))

    @property
    def n(self) -> int:
        return len(self.parities)

    @property
    def colors(self) -> range:
        return range(1, self.n)

    @property
    def n_plus(self) -> int:
        return self.parities.count(0)

    @property
    def n_minus(self) -> int:
        return self.parities.count(1)

    def p(self, k: int) -> int:
        """Parity of the k-th basis vector (1-based)."""
        return self.parities[k - 1]

    def alpha_parity(self, i: int) -> int:
        return (self.p(i) + self.p(i + 1)) % 2

    def c(self, i: int, j: int) -> int:
        return cartan(self, i, j)

    @cached_property
    def roots(self) -> tuple["Root", ...]:
        """Positive roots in the lexicographic order on (j, i)."""
        return tuple(Root(j, i) for j in self.colors for i in range(j, self.n))

    def root_parity(self, beta: "Root") -> int:
        return sum(self.alpha_parity(k) for k in beta.colors()) % 2

    def even_count(self, beta: "Root") -> int:
        return sum(1 for k in beta.colors() if self.alpha_parity(k) == 0)

    def odd_count(self, beta: "Root") -> int:
        return sum(1 for k in beta.colors() if self.alpha_parity(k) == 1)

    def shift(self, k: int):
        """(c_12 + ... + c_{k-1,k}) / 2, the h-shift of color k inside an interval copy."""
        return Q(sum(cartan(self, a, a + 1) for a in range(1, k))) / 2

    def degree_parity(self, degree: Iterable[int]) -> int:
        return sum(d * self.alpha_parity(i) for i, d in zip(self.colors, degree)) % 2

    def pairing(self, k: Iterable[int], l: Iterable[int]) -> int:
        """(a, b) = sum k_i l_j c_ij for degree vectors k, l."""
        k, l = list(k), list(l)
        return sum(k[i - 1] * l[j - 1] * cartan(self, i, j)
                   for i in self.colors for j in self.colors if k[i - 1] and l[j - 1])

    def unit_degree(self, i: int) -> tuple[int, ...]:
        return tuple(1 if c == i else 0 for c in self.colors)


@lru_cache(maxsize=None)
def _cartan(parities: tuple, i: int, j: int) -> int:
    n = len(parities)
    if not (1 <= i < n and 1 <= j < n):
        raise ValueError(f"colors out of range: {i}, {j}")
    p = lambda k: parities[k - 1]
    if i == j:
        return (-1) ** p(i) + (-1) ** p(i + 1)
    if abs(i - j) == 1:
        return -((-1) ** p(max(i, j)))
    return 0


def cartan(D: DynkinDiagram, i: int, j: int) -> int:
    return _cartan(D.parities, i, j)


def zeta_sign(D: DynkinDiagram, i: int, j: int) -> int:
    return -1 if (i > j and D.alpha_parity(i) == 1 and D.alpha_parity(j) == 1) else 1


def zeta_rational(D: DynkinDiagram, i: int, j: int) -> tuple[Poly, bool]:
    """zeta_ij(z) as (numerator in z, has_denominator_z).

    The numerator is sign * (z + c_ij h/2) when c_ij != 0, else the constant sign.
    """
    from .exactalg import T
    z = Poly.gen(T(0))
    c = cartan(D, i, j)
    s = zeta_sign(D, i, j)
    if c == 0:
        return Poly.constant(s), False
    return (z + Poly.gen(HBAR) * (Q(c) / 2)) * s, True


def zeta_trig(D: DynkinDiagram, i: int, j: int) -> tuple[Poly, bool]:
    """zeta_ij(z) = sign (z - v^{-c}) / (z - 1), as (numerator, has_denominator)."""
    from .exactalg import T
    z = Poly.gen(T(0))
    c = cartan(D, i, j)
    s = zeta_sign(D, i, j)
    if c == 0:
        return Poly.constant(s), False
    return (z - Poly.gen(V) ** (-c)) * s, True


class Root(NamedTuple):
    """beta = alpha_j + ... + alpha_i; tuple order is the root order."""

    j: int
    i: int

    def colors(self) -> range:
        return range(self.j, self.i + 1)

    def __contains__(self, k) -> bool:  # type: ignore[override]
        return self.j <= k <= self.i

    @property
    def height(self) -> int:
        return self.i - self.j + 1

    def is_simple(self) -> bool:
        return self.i == self.j

    def __str__(self) -> str:
        return f"a{self.j}..{self.i}"

    @classmethod
    def parse(cls, s: str) -> "Root":
        if not s.startswith("a") or ".." not in s:
            raise ValueError(f"bad root {s!r}")
        a, b = s[1:].split("..")
        return cls(int(a), int(b))


@dataclass(frozen=True)
class DegreeVector:
    """Finite-support map root -> multiplicity, stored sorted in root order."""

    items: tuple[tuple[Root, int], ...]

    @classmethod
    def of(cls, d: Mapping[Root, int] | Iterable[tuple[Root, int]]) -> "DegreeVector":
        pairs = d.items() if isinstance(d, Mapping) else d
        acc: dict[Root, int] = {}
        for b, m in pairs:
            b = Root(*b)
            if m < 0:
                raise ValueError("negative multiplicity")
            acc[b] = acc.get(b, 0) + m
        return cls(tuple(sorted((b, m) for b, m in acc.items() if m)))

    def __getitem__(self, beta) -> int:
        for b, m in self.items:
            if b == beta:
                return m
        return 0

    def roots(self) -> list[Root]:
        return [b for b, _ in self.items]

    def color_degree(self, D: DynkinDiagram) -> tuple[int, ...]:
        k = [0] * (D.n - 1)
        for b, m in self.items:
            if b.i >= D.n:
                raise ValueError(f"root {b} outside diagram {D}")
            for c in b.colors():
                k[c - 1] += m
        return tuple(k)

    def total(self) -> int:
        return sum(m for _, m in self.items)

    def hbar_weight(self) -> int:
        """sum d_beta (i - j): the h-power required of a good element."""
        return sum(m * (b.i - b.j) for b, m in self.items)

    def as_vector(self, D: DynkinDiagram) -> tuple[int, ...]:
        return tuple(self[b] for b in D.roots)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{b}:{m}" for b, m in self.items) + "}"

    def to_json(self) -> dict:
        return {str(b): m for b, m in self.items}


def compare_deg(D: DynkinDiagram, d: DegreeVector, e: DegreeVector) -> int:
    """-1 if d < e, 0 if equal, 1 if d > e.

    At the first root (in root order) where they differ, the vector with the
    larger component is the smaller one.
    """
    for b in D.roots:
        x, y = d[b], e[b]
        if x != y:
            return -1 if x > y else 1
    return 0


@lru_cache(maxsize=None)
def _tilings(n: int, k: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All multisets of intervals [j, i] (1-based colors) summing to k."""
    # peel the first nonzero color: it must be the left end of some interval
    first = next((c for c, x in enumerate(k, 1) if x), None)
    if first is None:
        return ((),)
    out = []
    i = first
    while i <= len(k) and k[i - 1] > 0:
        rest = list(k)
        for c in range(first, i + 1):
            rest[c - 1] -= 1
        for t in _tilings(n, tuple(rest)):
            out.append(tuple(sorted(t + ((first, i),))))
        i += 1
    return tuple(sorted(set(out)))


def enumerate_T(D: DynkinDiagram, k: Iterable[int]) -> list[DegreeVector]:
    """All degree vectors tiling k, sorted from d_max down to d_min."""
    import functools
    k = tuple(k)
    if len(k) != D.n - 1 or any(x < 0 for x in k):
        raise ValueError(f"degree {k} does not fit diagram {D}")
    ds = [DegreeVector.of([(Root(j, i), 1) for j, i in t]) for t in _tilings(D.n, k)]
    ds.sort(key=functools.cmp_to_key(lambda a, b: compare_deg(D, a, b)), reverse=True)
    return ds


@dataclass(frozen=True)
class PBWMonomial:
    """h: (root, mode) -> multiplicity; factors ordered by the double order."""

    items: tuple[tuple[tuple[Root, int], int], ...]

    @classmethod
    def of(cls, h, D: DynkinDiagram | None = None) -> "PBWMonomial":
        pairs = h.items() if isinstance(h, Mapping) else h
        acc: dict = {}
        for (b, r), m in pairs:
            b = Root(*b)
            if r < 0 or m < 0:
                raise ValueError("modes and multiplicities must be >= 0")
            acc[(b, r)] = acc.get((b, r), 0) + m
        mono = cls(tuple(sorted((k, m) for k, m in acc.items() if m)))
        if D is not None:
            mono.validate(D)
        return mono

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[Root, int]], D=None) -> "PBWMonomial":
        acc: dict = {}
        for b, r in factors:
            acc[(Root(*b), r)] = acc.get((Root(*b), r), 0) + 1
        return cls.of(acc, D)

    def validate(self, D: DynkinDiagram) -> None:
        for (b, r), m in self.items:
            if b.i >= D.n:
                raise ValueError(f"root {b} outside diagram {D}")
            if D.root_parity(b) == 1 and m > 1:
                raise ValueError(f"odd root {b} with mode {r} repeated {m} times")

    def factors(self) -> list[tuple[Root, int]]:
        out = []
        for (b, r), m in self.items:
            out.extend([(b, r)] * m)
        return out

    def degree(self) -> DegreeVector:
        return DegreeVector.of([(b, m) for (b, _), m in self.items])

    def color_degree(self, D: DynkinDiagram) -> tuple[int, ...]:
        return self.degree().color_degree(D)

    def n_factors(self) -> int:
        return sum(m for _, m in self.items)

    def modes(self, beta: Root) -> list[int]:
        """r_beta(h, 1..d_beta), nondecreasing."""
        return [r for b, r in self.factors() if b == beta]

    def mode_total(self) -> int:
        return sum(r * m for (_, r), m in self.items)

    def __str__(self) -> str:
        return "*".join(f"X[{b},{r}]" + (f"^{m}" if m > 1 else "") for (b, r), m in self.items) or "1"

    def to_json(self) -> list:
        return [[str(b), r] for b, r in self.factors()]

    @classmethod
    def from_json(cls, data) -> "PBWMonomial":
        return cls.from_factors([(Root.parse(b), int(r)) for b, r in data])
