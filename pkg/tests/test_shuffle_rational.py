import random

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import SMALL_DIAGRAMS, all_parities, elements
from shuffly.exactalg import HBAR, X, Poly, Q
from shuffly.root_data import DynkinDiagram, PBWMonomial, Root
from shuffly.shuffle_rational import (ShuffleElement, check_membership, elegant_deduction,
                                      is_supersymmetric, mult_symfun, pbw_element, psi_pbw_monomial,
                                      psi_word, rank1_independence, rank1_power_constant, star,
                                      star_naive, superbracket, supersymmetrize, unit,
                                      unit_generator, verify_positive_relations)

h = Poly.gen(HBAR)


def D_(s):
    return DynkinDiagram.parse(s)


def as_sympy(F):
    return oracle.poly_to_sympy(F.numerator)


# frozen oracle values (independent sympy symmetrization, tests/oracle.py)
FROZEN = [
    ("010", [(1, 0), (2, 0)], "h/2 + x1_1 - x2_1"),
    ("000", [(1, 0), (2, 0)], "-h/2 + x1_1 - x2_1"),
    ("000", [(2, 0), (1, 0)], "h/2 + x1_1 - x2_1"),
    ("01", [(1, 0), (1, 1)], "-x1_1 + x1_2"),
    ("011", [(1, 1), (2, 0)], "h*x1_1/2 + x1_1**2 - x1_1*x2_1"),
    ("0011", [(2, 1), (3, 0)], "h*x2_1/2 + x2_1**2 - x2_1*x3_1"),
]


@pytest.mark.parametrize("par,word,expected", FROZEN)
def test_psi_word_frozen_values(par, word, expected):
    F = psi_word(D_(par), word)
    assert sp.expand(as_sympy(F) - sp.sympify(expected)) == 0
    assert psi_word(D_(par), word, method="star") == F


def test_unit_laws_and_degree(small_diagram):
    D = small_diagram
    g = unit_generator(D, 1, 2)
    assert star(unit(D), g) == g and star(g, unit(D)) == g
    assert star(g, g).degree == (2,) + (0,) * (D.n - 2)


def test_single_color_products():
    even, odd = D_("00"), D_("01")
    x0, x1 = unit_generator(even, 1, 0), unit_generator(even, 1, 1)
    assert star(x1, x1).numerator == Poly.gen(X(1, 1)) * Poly.gen(X(1, 2)) * 2
    assert star(unit_generator(odd, 1, 3), unit_generator(odd, 1, 3)).is_zero()
    disp = star(unit_generator(odd, 1, 0), unit_generator(odd, 1, 1), "displayed")
    assert disp.numerator == (Poly.gen(X(1, 2)) - Poly.gen(X(1, 1))) * Q("1/2")
    assert star(x0, x0).numerator == Poly.constant(2)


def test_displayed_normalization_is_not_associative():
    D = D_("00")
    F = ShuffleElement(D, (2,), Poly.constant(1))
    g = unit_generator(D, 1, 0)
    left = star(star(F, g, "displayed"), g, "displayed")
    right = star(F, star(g, g, "displayed"), "displayed")
    assert left.numerator == Poly.constant(12) and right.numerator == Poly.constant(4)
    assert star(star(F, g), g) == star(F, star(g, g))


@pytest.mark.parametrize("par", SMALL_DIAGRAMS)
def test_star_matches_sympy_oracle(par):
    D = D_(par)
    rnd = random.Random(par)
    for _ in range(3):
        w1 = [(rnd.randint(1, D.n - 1), rnd.randint(0, 2)) for _ in range(rnd.randint(1, 2))]
        w2 = [(rnd.randint(1, D.n - 1), rnd.randint(0, 2)) for _ in range(rnd.randint(1, 2))]
        F, G = psi_word(D, w1), psi_word(D, w2)
        F = F.scale(h + 1)
        want = oracle.star(D.parities, F.degree, as_sympy(F), G.degree, as_sympy(G))
        assert sp.expand(want - as_sympy(star(F, G))) == 0


@pytest.mark.parametrize("par", ["000", "010", "011"])
def test_associativity(par):
    D = D_(par)

    @given(elements(D), elements(D), elements(D))
    def run(F, G, H):
        assert star(star(F, G), H) == star(F, star(G, H))

    run()


@pytest.mark.parametrize("par", ["00", "01", "001", "010"])
def test_star_equals_naive(par):
    D = D_(par)

    @given(elements(D), elements(D))
    def run(F, G):
        assert star(F, G) == star_naive(F, G)
        assert star(F, G, "displayed") == star_naive(F, G, "displayed")

    run()


@pytest.mark.parametrize("par", ["000", "010", "001"])
def test_star_output_supersymmetric(par):
    D = D_(par)

    @given(elements(D), elements(D))
    def run(F, G):
        assert is_supersymmetric(star(F, G))

    run()


def test_superbracket_signs():
    D = D_("01")
    g = unit_generator(D, 1, 1)  # odd
    assert superbracket(g, g) == star(g, g).scale(2)
    E = D_("00")
    e = unit_generator(E, 1, 1)
    assert superbracket(e, e).is_zero()


def test_membership_examples():
    D = D_("000")
    assert check_membership(unit_generator(D, 2, 0)).ok
    assert check_membership(psi_word(D, [(1, 0), (2, 1), (1, 1)])).ok
    bad = ShuffleElement(D, (2, 1), Poly.constant(1))
    rep = check_membership(bad)
    assert rep.supersymmetric and rep.wheel1 and not rep.ok
    odd = D_("010")
    rep2 = check_membership(ShuffleElement(odd, (1, 2), Poly.constant(1)))
    assert not rep2.ok


@pytest.mark.parametrize("par", ["000", "010", "0110"])
def test_star_closure_of_membership(par):
    D = D_(par)
    rnd = random.Random(7)
    for _ in range(4):
        w1 = [(rnd.randint(1, D.n - 1), rnd.randint(0, 1)) for _ in range(2)]
        w2 = [(rnd.randint(1, D.n - 1), rnd.randint(0, 1)) for _ in range(1)]
        F, G = psi_word(D, w1), psi_word(D, w2)
        assert check_membership(F).ok and check_membership(G).ok
        assert check_membership(star(F, G)).ok


def test_pbw_element_shape():
    D = D_("010")
    assert pbw_element(D, Root(1, 1), 3).numerator == Poly.gen(X(1, 1)) ** 3
    assert pbw_element(D, Root(1, 2), 0).numerator == h
    E = D_("000")
    assert pbw_element(E, Root(1, 2), 1).numerator == -(h * Poly.gen(X(1, 1)))


@pytest.mark.parametrize("par", all_parities(4))
def test_pbw_element_is_hbar_power_times_monomial(par):
    D = D_(par)
    for b in D.roots:
        for r in range(3):
            num = pbw_element(D, b, r).numerator
            assert len(num.terms) == 1
            (ex, c), = num.items()
            assert ex.get(HBAR, 0) == b.i - b.j
            assert sum(e for g, e in ex.items() if g != HBAR) == r


def test_pbw_monomial_order_matters():
    D = D_("000")
    a = psi_word(D, [(1, 0), (2, 0)])
    b = psi_word(D, [(2, 0), (1, 0)])
    assert a != b
    assert psi_pbw_monomial(D, PBWMonomial.of({})) == unit(D)
    h1 = PBWMonomial.from_factors([(Root(1, 1), 2)])
    assert psi_pbw_monomial(D, h1).numerator == Poly.gen(X(1, 1)) ** 2


def test_mult_symfun():
    D = D_("000")
    F = unit_generator(D, 1, 0)
    assert mult_symfun(F, 1, Poly.gen(X(1, 1))) == unit_generator(D, 1, 1)
    G = psi_word(D, [(1, 0), (1, 1)])
    with pytest.raises(ValueError):
        mult_symfun(G, 1, Poly.gen(X(1, 1)))


def test_supersymmetrize_odd_color_vanishes_on_symmetric_input():
    D = D_("01")
    p = Poly.gen(X(1, 1)) + Poly.gen(X(1, 2))
    assert supersymmetrize(D, (2,), p).is_zero()


@pytest.mark.parametrize("par", all_parities(2) + all_parities(3))
def test_positive_relations_small(par):
    rep = verify_positive_relations(D_(par), 2)
    assert rep.ok, [r.to_json() for r in rep.failures][:3]
    assert rep.records


def test_relation_examples():
    # cubic Serre needs two adjacent colors, so the smallest case is n = 3
    rep = verify_positive_relations(D_("000"), 1)
    assert "cubic_serre" in rep.counts() and rep.ok
    rep = verify_positive_relations(D_("0011"), 1)
    assert rep.counts().get("quartic_serre", 0) > 0 and rep.ok


def test_wrong_sign_formal_relation_is_detected():
    # the formal relation with the opposite anticommutator sign must not vanish
    from shuffly.shuffle_rational import psi_nc_vanishes
    from shuffly.words import NC, anticommutator, bracket
    D = D_("000")
    L = NC.letter
    lhs = bracket(D, L(1, 1), L(2, 0)) - bracket(D, L(1, 0), L(2, 1))
    c = Q(-1)
    good = lhs - anticommutator(D, L(1, 0), L(2, 0)).scale(h * (c / 2))
    bad = lhs + anticommutator(D, L(1, 0), L(2, 0)).scale(h * (c / 2))
    assert psi_nc_vanishes(D, good)
    assert not psi_nc_vanishes(D, bad)


def test_elegant_deduction_one_instance():
    out = elegant_deduction(D_("0010"), 2, 0, 1, 2, 1)
    assert out == {"identity": True, "lhs_zero": True, "base_zero": True}


def test_rank1_examples():
    even = rank1_independence((0, 0), r_lists=[(0, 0), (0, 1), (1, 1)])
    assert even["lengths"][2] == {"count": 3, "rank": 3, "full_rank": True}
    odd = rank1_independence((0, 1), r_lists=[(0, 1), (0, 2), (1, 2)])
    assert odd["lengths"][2]["rank"] == 3
    assert rank1_power_constant((0, 0), 3, 1) == 6
    assert rank1_power_constant((0, 1), 2, 1) == 0
