"""Exact rational scalars and sparse multivariate (Laurent) polynomials.

Everything downstream (shuffle products, specializations, relation checks)
is built on :class:`Poly`.  A polynomial is a dict from a *packed* exponent
vector to a nonzero ``gmpy2.mpq`` coefficient.  The exponent vector of a
term is packed into one Python int, 16 bits per generator with a bias, so
multiplying monomials is a single integer addition.

Variables are small tuples whose natural ordering is the canonical order::

    HBAR = (0,)  <  V = (1,)  <  X(i, r) = (2, i, r)  <  Y(j, i, s) = (3, j, i, s)

Auxiliary variables (the free parameter of a wheel locus) sort last.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

__all__ = [
    "Q", "HBAR", "V", "X", "Y", "T", "var_name", "parse_var",
    "Poly", "NotDivisible", "NegativeExponentOnNonLaurent",
    "arith", "substitute", "divide_exact", "divide_by_linear", "linear_multiplicity",
    "Frac", "LinearSolveResult", "solve_linear", "rank_over_fraction_field", "rank_q",
]

W = 16
MASK = (1 << W) - 1
BIAS = 1 << (W - 1)

HBAR = (0,)
V = (1,)


def X(i: int, r: int) -> tuple:
    return (2, i, r)


def Y(j: int, i: int, s: int) -> tuple:
    return (3, j, i, s)


def T(k: int = 0) -> tuple:
    return (9, k)


def Q(x) -> mpq:
    """Coerce int / str "p/q" / Fraction / mpq to an exact rational."""
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def var_name(var: tuple) -> str:
    kind = var[0]
    if kind == 0:
        return "h"
    if kind == 1:
        return "v"
    if kind == 2:
        return f"x{var[1]}_{var[2]}"
    if kind == 3:
        return f"y{var[1]}.{var[2]}_{var[3]}"
    if kind == 9:
        return "t" if var[1] == 0 else f"t{var[1]}"
    raise ValueError(f"unknown variable {var!r}")


_X_RE = re.compile(r"^x(\d+)_(\d+)$")
_Y_RE = re.compile(r"^y(\d+)\.(\d+)_(\d+)$")
_T_RE = re.compile(r"^t(\d*)$")


def parse_var(name: str) -> tuple:
    if name == "h":
        return HBAR
    if name == "v":
        return V
    m = _X_RE.match(name)
    if m:
        return X(int(m[1]), int(m[2]))
    m = _Y_RE.match(name)
    if m:
        return Y(int(m[1]), int(m[2]), int(m[3]))
    m = _T_RE.match(name)
    if m:
        return T(int(m[1]) if m[1] else 0)
    raise ValueError(f"cannot parse variable name {name!r}")


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder (carried on ``.remainder``)."""

    def __init__(self, remainder: "Poly", msg: str = "polynomial division is not exact"):
        super().__init__(msg)
        self.remainder = remainder


class NegativeExponentOnNonLaurent(ValueError):
    pass


@lru_cache(maxsize=None)
def _bias(n: int) -> int:
    key = 0
    for _ in range(n):
        key = (key << W) | BIAS
    return key


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in reversed(exps):
        key = (key << W) | (e + BIAS)
    return key


def _unpack(key: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append((key & MASK) - BIAS)
        key >>= W
    return out


def _exp_at(key: int, idx: int) -> int:
    return ((key >> (W * idx)) & MASK) - BIAS


def _mul_dicts(a: dict, b: dict, bias: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for kb, cb in b.items():
        off = kb - bias
        for ka, ca in a.items():
            k = ka + off
            c = get(k)
            if c is None:
                out[k] = ca * cb
            else:
                c += ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def _add_into(acc: dict, src: dict, scale=None) -> None:
    get = acc.get
    for k, c in src.items():
        if scale is not None:
            c = c * scale
        old = get(k)
        if old is None:
            acc[k] = c
        else:
            old += c
            if old:
                acc[k] = old
            else:
                del acc[k]


class Poly:
    """Immutable sparse (Laurent) polynomial with exact rational coefficients.

    ``gens`` is a sorted tuple of variables; unused generators are allowed
    and ignored by equality.  Treat instances as read-only.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[tuple] = (), terms: dict | None = None):
        self.gens = tuple(gens)
        self.terms = terms if terms is not None else {}

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Poly":
        c = Q(c)
        return cls((), {0: c} if c else {})

    @classmethod
    def gen(cls, var: tuple) -> "Poly":
        return cls((var,), {BIAS + 1: mpq(1)})

    @classmethod
    def monomial(cls, exps: Mapping[tuple, int], coeff=1) -> "Poly":
        gens = tuple(sorted(v for v, e in exps.items()))
        c = Q(coeff)
        if not c:
            return cls(gens, {})
        return cls(gens, {_pack([exps[g] for g in gens]): c})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple]) -> "Poly":
        """Build from ``(coeff, {var: exp})`` pairs."""
        terms = [(Q(c), dict(e)) for c, e in terms]
        gens = tuple(sorted({v for _, e in terms for v in e}))
        out: dict = {}
        for c, e in terms:
            if c:
                _add_into(out, {_pack([e.get(g, 0) for g in gens]): c})
        return cls(gens, out)

    @classmethod
    def linear(cls, coeffs: Mapping[tuple, object], const=0) -> "Poly":
        """Affine form ``sum c_v * v + const``."""
        p = cls.constant(const)
        for v, c in coeffs.items():
            p = p + cls.gen(v) * Q(c)
        return p

    # -- introspection ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        """Yield ``(exps_dict, coeff)`` with only nonzero exponents listed."""
        n = len(self.gens)
        for k, c in self.terms.items():
            ex = _unpack(k, n)
            yield {g: e for g, e in zip(self.gens, ex) if e}, c

    def variables(self) -> tuple:
        n = len(self.gens)
        used = [False] * n
        for k in self.terms:
            ex = _unpack(k, n)
            for i, e in enumerate(ex):
                if e:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    def is_constant(self) -> bool:
        return not self.variables()

    def constant_value(self) -> mpq:
        if not self.terms:
            return mpq(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, var: tuple | None = None) -> int:
        """Total degree, or the degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        n = len(self.gens)
        if var is None:
            return max(sum(_unpack(k, n)) for k in self.terms)
        if var not in self.gens:
            return 0
        idx = self.gens.index(var)
        return max(_exp_at(k, idx) for k in self.terms)

    def degree_in(self, variables: Iterable[tuple]) -> int:
        """Maximum over terms of the summed exponents of ``variables``."""
        if not self.terms:
            return -1
        idxs = [self.gens.index(v) for v in variables if v in self.gens]
        return max(sum(_exp_at(k, i) for i in idxs) for k in self.terms)

    def min_exponent(self, var: tuple) -> int:
        if var not in self.gens or not self.terms:
            return 0
        idx = self.gens.index(var)
        return min(_exp_at(k, idx) for k in self.terms)

    def has_negative_exponents(self) -> bool:
        n = len(self.gens)
        return any(e < 0 for k in self.terms for e in _unpack(k, n))

    # -- alignment ----------------------------------------------------
    def with_gens(self, gens: Sequence[tuple]) -> "Poly":
        """Re-express over a superset of the used generators."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        n_old = len(self.gens)
        pos = {g: i for i, g in enumerate(gens)}
        idx = []
        for g in self.gens:
            if g in pos:
                idx.append(pos[g])
            else:
                idx.append(None)
        n = len(gens)
        base = _bias(n)
        out = {}
        for k, c in self.terms.items():
            key = base
            ex = _unpack(k, n_old)
            for i, e in enumerate(ex):
                if e:
                    j = idx[i]
                    if j is None:
                        raise ValueError(f"generator {self.gens[i]} is used but missing from target gens")
                    key += e << (W * j)
            out[key] = c
        return Poly(gens, out)

    def _aligned(self, other: "Poly"):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        gens = tuple(sorted(set(self.gens) | set(other.gens)))
        return gens, self.with_gens(gens).terms, other.with_gens(gens).terms

    def canonical(self) -> "Poly":
        return self.with_gens(self.variables())

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        gens, a, b = self._aligned(other)
        out = dict(a)
        _add_into(out, b)
        return Poly(gens, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.gens, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = Q(c)
        if not c:
            return Poly(self.gens, {})
        return Poly(self.gens, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        gens, a, b = self._aligned(other)
        return Poly(gens, _mul_dicts(a, b, _bias(len(gens))))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (key, c), = self.terms.items()
            n = len(self.gens)
            ex = _unpack(key, n)
            return Poly(self.gens, {_pack([-e * (-k) for e in ex]): 1 / c ** (-k)})
        result = Poly.constant(1).with_gens(self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: Mapping[tuple, int]) -> "Poly":
        """Multiply by the monomial ``prod v**e`` (exponents may be negative)."""
        gens = tuple(sorted(set(self.gens) | set(exps)))
        p = self.with_gens(gens)
        off = sum(e << (W * gens.index(v)) for v, e in exps.items())
        return Poly(gens, {k + off: c for k, c in p.terms.items()})

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.gens, frozenset(c.terms.items())))

    # -- substitution -------------------------------------------------
    def rename(self, mapping: Mapping[tuple, tuple]) -> "Poly":
        """Rename variables injectively (a permutation of slots, say)."""
        new_gens_list = [mapping.get(g, g) for g in self.gens]
        if len(set(new_gens_list)) != len(new_gens_list):
            raise ValueError("rename must be injective on the generators")
        gens = tuple(sorted(new_gens_list))
        pos = [gens.index(g) for g in new_gens_list]
        n = len(gens)
        base = _bias(n)
        out = {}
        for k, c in self.terms.items():
            key = base
            ex = _unpack(k, n)
            for i, e in enumerate(ex):
                if e:
                    key += e << (W * pos[i])
            out[key] = c
        return Poly(gens, out)

    def subs(self, bindings: Mapping[tuple, "Poly"]) -> "Poly":
        return substitute(self, bindings)

    # -- output -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[list[int], mpq]]:
        """Terms in canonical graded-lex order (leading term first)."""
        n = len(self.gens)
        rows = [(_unpack(k, n), c) for k, c in self.terms.items()]
        rows.sort(key=lambda r: (sum(r[0]), r[0]), reverse=True)
        return rows

    def to_json_terms(self, gens: Sequence[tuple] | None = None) -> list[dict]:
        p = self if gens is None else self.with_gens(sorted(set(gens) | set(self.variables())))
        p = p if gens is not None else p.canonical()
        out = []
        for ex, c in p.sorted_terms():
            out.append({"coeff": str(c), "exps": {var_name(g): e for g, e in zip(p.gens, ex)}})
        return out

    def __str__(self) -> str:
        p = self.canonical()
        if not p.terms:
            return "0"
        parts = []
        for ex, c in p.sorted_terms():
            mono = "*".join(var_name(g) if e == 1 else f"{var_name(g)}^{e}"
                            for g, e in zip(p.gens, ex) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"


ZERO = Poly()
ONE = Poly.constant(1)


def arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def substitute(p: Poly, bindings: Mapping[tuple, Poly]) -> Poly:
    """Substitute variables by polynomials (affine targets in practice).

    A variable occurring with a negative exponent may only be bound to a
    single monomial; anything else raises NegativeExponentOnNonLaurent.
    """
    bindings = {v: (t if isinstance(t, Poly) else Poly.constant(t))
                for v, t in bindings.items() if v in p.gens}
    if not bindings or not p.terms:
        return p
    n = len(p.gens)
    sub_idx = [i for i, g in enumerate(p.gens) if g in bindings]
    keep_idx = [i for i, g in enumerate(p.gens) if g not in bindings]
    keep_gens = tuple(p.gens[i] for i in keep_idx)
    groups: dict[tuple, dict] = {}
    for k, c in p.terms.items():
        ex = _unpack(k, n)
        sub_e = tuple(ex[i] for i in sub_idx)
        rest = _pack([ex[i] for i in keep_idx])
        groups.setdefault(sub_e, {})[rest] = c
    targets = [bindings[p.gens[i]] for i in sub_idx]
    all_gens = set(keep_gens)
    for t in targets:
        all_gens |= set(t.gens)
    gens = tuple(sorted(all_gens))
    targets = [t.with_gens(gens) for t in targets]
    power_cache: dict = {}

    def power(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in power_cache:
            t = targets[j]
            if e < 0 and len(t.terms) != 1:
                raise NegativeExponentOnNonLaurent(
                    f"{var_name(p.gens[sub_idx[j]])} has exponent {e} and is bound to a non-monomial")
            power_cache[key] = t ** e
        return power_cache[key]

    bias = _bias(len(gens))
    out: dict = {}
    for sub_e, rest in groups.items():
        rp = Poly(keep_gens, rest).with_gens(gens)
        factor = None
        for j, e in enumerate(sub_e):
            if e:
                pw = power(j, e)
                factor = pw.terms if factor is None else _mul_dicts(factor, pw.terms, bias)
        if factor is None:
            _add_into(out, rp.terms)
        else:
            _add_into(out, _mul_dicts(rp.terms, factor, bias))
    return Poly(gens, out)


def _is_linear(p: Poly) -> bool:
    n = len(p.gens)
    return all(sum(abs(e) for e in _unpack(k, n)) <= 1 and min(_unpack(k, n), default=0) >= 0
               for k in p.terms)


def divide_by_linear(num: Poly, den: Poly, var: tuple | None = None) -> Poly:
    """Exact division by an affine form, by synthetic division in one variable."""
    if not den.terms:
        raise ZeroDivisionError("division by zero polynomial")
    gens, a, b = num._aligned(den)
    n = len(gens)
    lin = Poly(gens, b)
    if var is None:
        cands = [g for g in lin.variables()]
        if not cands:
            return Poly(gens, a).scale(1 / lin.constant_value())
        var = cands[-1]
    idx = gens.index(var)
    unit = 1 << (W * idx)
    u = None
    rest = {}
    for k, c in b.items():
        if _exp_at(k, idx) == 1:
            u = c
        else:
            rest[k] = c
    if u is None:
        raise ValueError(f"{var_name(var)} does not occur in the divisor")
    inv_u = 1 / u
    if not rest:
        if any(_exp_at(k, idx) < 1 for k in a) and not Poly(gens, a).has_negative_exponents():
            raise NotDivisible(Poly(gens, {k: c for k, c in a.items() if _exp_at(k, idx) < 1}))
        return Poly(gens, {k - unit: c * inv_u for k, c in a.items()})
    neg_rest_over_u = {k: -c * inv_u for k, c in rest.items()}
    # split the dividend by powers of var
    by_pow: dict[int, dict] = {}
    for k, c in a.items():
        e = _exp_at(k, idx)
        by_pow.setdefault(e, {})[k - e * unit] = c
    if not by_pow:
        return Poly(gens, {})
    lo, hi = min(by_pow), max(by_pow)
    bias = _bias(n)
    q: dict[int, dict] = {}
    carry: dict = {}  # Q_j
    for j in range(hi, lo, -1):
        # Q_{j-1} = (P_j - R Q_j) / u = P_j/u + (-R/u) Q_j
        cur = {k: c * inv_u for k, c in by_pow.get(j, {}).items()}
        if carry:
            _add_into(cur, _mul_dicts(carry, neg_rest_over_u, bias) if neg_rest_over_u else {})
        q[j - 1] = cur
        carry = cur
    # remainder: P_lo - R Q_lo == 0  <=>  P_lo/u + (-R/u) Q_lo == 0
    rem = {k: c * inv_u for k, c in by_pow.get(lo, {}).items()}
    if carry and neg_rest_over_u:
        _add_into(rem, _mul_dicts(carry, neg_rest_over_u, bias))
    if rem:
        raise NotDivisible(Poly(gens, {k: c * u for k, c in rem.items()}))
    out = {}
    for j, d in q.items():
        off = j * unit
        for k, c in d.items():
            out[k + off] = c
    return Poly(gens, out)


def _to_polynomial(p: Poly, gens: tuple) -> tuple[Poly, list[int]]:
    """Multiply by a monomial so all exponents are >= 0 with min exactly 0."""
    n = len(gens)
    p = p.with_gens(gens)
    mins = [0] * n
    first = True
    for k in p.terms:
        ex = _unpack(k, n)
        if first:
            mins = ex
            first = False
        else:
            mins = [min(m, e) for m, e in zip(mins, ex)]
    off = sum((-m) << (W * i) for i, m in enumerate(mins))
    return Poly(gens, {k + off: c for k, c in p.terms.items()}), mins


def divide_exact(num: Poly, den: Poly) -> Poly:
    """Return q with q*den == num exactly; raise NotDivisible otherwise."""
    if not den.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if not num.terms:
        return Poly()
    if den.is_constant():
        return num.scale(1 / den.constant_value())
    if _is_linear(den):
        return divide_by_linear(num, den)
    gens = tuple(sorted(set(num.gens) | set(den.gens)))
    n = len(gens)
    pn, mn = _to_polynomial(num, gens)
    pd, md = _to_polynomial(den, gens)
    bias = _bias(n)
    lead = max(pd.terms)
    lead_c = pd.terms[lead]
    lead_ex = _unpack(lead, n)
    rem = dict(pn.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if c is None:
            continue
        ex = _unpack(k, n)
        if any(e < le for e, le in zip(ex, lead_ex)):
            raise NotDivisible(Poly(gens, rem))
        qk = k - lead + bias
        qc = c / lead_c
        quot[qk] = qc
        off = qk - bias
        for dk, dc in pd.terms.items():
            kk = dk + off
            old = rem.get(kk)
            if old is None:
                rem[kk] = -qc * dc
                heapq.heappush(heap, -kk)
            else:
                old -= qc * dc
                if old:
                    rem[kk] = old
                else:
                    del rem[kk]
    shift = sum((m - d) << (W * i) for i, (m, d) in enumerate(zip(mn, md)))
    out = Poly(gens, {k + shift: c for k, c in quot.items()})
    # a polynomial quotient of polynomials must stay polynomial
    if out.has_negative_exponents() and not (num.has_negative_exponents() or den.has_negative_exponents()):
        raise NotDivisible(num)
    return out


def linear_multiplicity(p: Poly, lin: Poly, cap: int = 64) -> int:
    """Largest m with lin**m dividing p (exact repeated division); cap for p == 0."""
    if not p.terms:
        return cap
    m = 0
    while m < cap:
        try:
            p = divide_by_linear(p, lin)
        except NotDivisible:
            break
        m += 1
    return m


# ---------------------------------------------------------------------
# linear algebra over the fraction field of Poly
# ---------------------------------------------------------------------

def _univariate_gcd(a: Poly, b: Poly) -> Poly | None:
    vs = set(a.variables()) | set(b.variables())
    if len(vs) > 1:
        return None
    if not vs:
        return Poly.constant(1)
    (var,) = vs

    def lc(p):
        d = p.degree(var)
        for ex, c in p.items():
            if ex.get(var, 0) == d:
                return c
        return mpq(1)

    def prem(f, g):
        dg = g.degree(var)
        lg = lc(g)
        while f.terms and f.degree(var) >= dg:
            df = f.degree(var)
            f = f - g.shift({var: df - dg}) * (lc(f) / lg)
        return f

    while b.terms:
        a, b = b, prem(a, b)
    return a.scale(1 / lc(a))


@dataclass(frozen=True)
class Frac:
    """Element of the fraction field, ``num / den`` with ``den != 0``."""

    num: Poly
    den: Poly

    @staticmethod
    def of(x) -> "Frac":
        if isinstance(x, Frac):
            return x
        if isinstance(x, Poly):
            return Frac(x, ONE)
        return Frac(Poly.constant(x), ONE)

    def reduced(self) -> "Frac":
        if not self.num.terms:
            return Frac(ZERO, ONE)
        g = _univariate_gcd(self.num, self.den)
        num, den = self.num, self.den
        if g is not None and not g.is_constant():
            num, den = divide_exact(num, g), divide_exact(den, g)
        if den.is_constant():
            c = den.constant_value()
            return Frac(num.scale(1 / c), ONE)
        lead = den.sorted_terms()[0][1]
        return Frac(num.scale(1 / lead), den.scale(1 / lead))

    def __add__(self, o) -> "Frac":
        o = Frac.of(o)
        if self.den == o.den:
            return Frac(self.num + o.num, self.den).reduced()
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den).reduced()

    def __neg__(self) -> "Frac":
        return Frac(-self.num, self.den)

    def __sub__(self, o) -> "Frac":
        return self + (-Frac.of(o))

    def __mul__(self, o) -> "Frac":
        o = Frac.of(o)
        return Frac(self.num * o.num, self.den * o.den).reduced()

    def __truediv__(self, o) -> "Frac":
        o = Frac.of(o)
        if not o.num.terms:
            raise ZeroDivisionError
        return Frac(self.num * o.den, self.den * o.num).reduced()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, o) -> bool:
        o = Frac.of(o)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def __str__(self) -> str:
        r = self.reduced()
        return str(r.num) if r.den == ONE else f"({r.num})/({r.den})"


@dataclass
class LinearSolveResult:
    rank: int
    consistent: bool
    solution: list | None  # list[Frac], free unknowns set to zero
    unique: bool


def _bareiss(M: list[list[Poly]], ncols: int) -> tuple[list[list[Poly]], list[int]]:
    """Fraction-free row echelon form; eliminates only the first ``ncols`` columns."""
    m = len(M)
    width = len(M[0]) if M else 0
    prev = ONE
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, m) if M[i][c].terms), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            mic = M[i][c]
            if mic.terms:
                row_i, row_r = M[i], M[r]
                for j in range(c + 1, width):
                    v = piv * row_i[j] - mic * row_r[j]
                    row_i[j] = divide_exact(v, prev) if v.terms else v
            else:
                row_i = M[i]
                for j in range(c + 1, width):
                    if row_i[j].terms:
                        row_i[j] = divide_exact(piv * row_i[j], prev)
            M[i][c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> LinearSolveResult:
    """Solve ``rows @ x = rhs`` exactly over the fraction field of Poly.

    Entries may be Poly, Frac or plain scalars.  Inconsistency is reported,
    not raised.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    if len(rhs) != m or any(len(r) != ncols for r in rows):
        raise ValueError("inconsistent dimensions")
    M = []
    for row, b in zip(rows, rhs):
        entries = [Frac.of(x) for x in list(row) + [b]]
        den = ONE
        for e in entries:
            if e.den != ONE and not e.den.is_constant():
                den = den * e.den
            elif e.den != ONE:
                den = den * e.den
        M.append([divide_exact(e.num * den, e.den) for e in entries])
    M, piv = _bareiss(M, ncols)
    rank = len(piv)
    consistent = all(not M[i][ncols].terms for i in range(rank, m))
    if not consistent:
        return LinearSolveResult(rank, False, None, False)
    sol = [Frac(ZERO, ONE) for _ in range(ncols)]
    for k in range(rank - 1, -1, -1):
        c = piv[k]
        acc = Frac.of(M[k][ncols])
        for j in range(c + 1, ncols):
            if M[k][j].terms and sol[j].num.terms:
                acc = acc - sol[j] * M[k][j]
        sol[c] = acc / M[k][c]
    return LinearSolveResult(rank, True, sol, rank == ncols)


def rank_over_fraction_field(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    M = [[Frac.of(x) for x in r] for r in rows]
    P = []
    for row in M:
        den = ONE
        for e in row:
            if e.den != ONE:
                den = den * e.den
        P.append([divide_exact(e.num * den, e.den) for e in row])
    _, piv = _bareiss(P, len(P[0]))
    return len(piv)


def rank_q(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix of exact rationals (plain Gaussian elimination)."""
    M = [[Q(x) for x in r] for r in rows]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        pr = M[r]
        for i in range(r + 1, m):
            f = M[i][c]
            if f:
                f *= inv
                row = M[i]
                for j in range(c, n):
                    if pr[j]:
                        row[j] -= f * pr[j]
        r += 1
        if r == m:
            break
    return r


def coefficient_matrix(polys: Sequence[Poly], coeff_vars: Iterable[tuple] = (HBAR,)):
    """Rows of coefficients (Polys in ``coeff_vars``) against the other monomials.

    Returns (columns, rows); columns are sorted packed keys, so two calls on
    the same generator set are comparable.
    """
    coeff_vars = set(coeff_vars)
    gens = tuple(sorted({g for p in polys for g in p.gens}))
    n = len(gens)
    cidx = [k for k, g in enumerate(gens) if g in coeff_vars]
    cgens = tuple(gens[k] for k in cidx)
    split = []
    cols: set = set()
    for p in polys:
        p = p.with_gens(gens)
        d: dict = {}
        for key, c in p.terms.items():
            ex = _unpack(key, n)
            mono = tuple(0 if k in cidx else e for k, e in enumerate(ex))
            ck = _pack([ex[k] for k in cidx])
            d.setdefault(mono, {})[ck] = c
        split.append(d)
        cols |= set(d)
    columns = sorted(cols)
    rows = [[Poly(cgens, dict(d[c])) if c in d else Poly() for c in columns] for d in split]
    return columns, rows


_PROBES = (Q("7/3"), Q("-13/5"), Q("29/11"))


def certified_rank(rows: Sequence[Sequence[Poly]], var: tuple = HBAR) -> int:
    """Rank over the fraction field of Q[var].

    Specializing var to a rational can only lower the rank, so a full-row-rank
    specialization certifies full row rank; otherwise fall back to exact
    fraction-free elimination.
    """
    if not rows:
        return 0
    m = len(rows)
    for probe in _PROBES:
        num = [[(substitute(e, {var: Poly.constant(probe)}).constant_value() if e.terms else 0)
                for e in row] for row in rows]
        if rank_q(num) == m:
            return m
    return rank_over_fraction_field(rows)
