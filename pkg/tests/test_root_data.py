import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_parities
from shuffly.root_data import (DegreeVector, DynkinDiagram, PBWMonomial, Root, cartan,
                               compare_deg, enumerate_T)


def test_parse_rejects_bad_strings():
    for bad in ("2x", "0", "", "01a"):
        with pytest.raises(ValueError):
            DynkinDiagram.parse(bad)


def test_cartan_distinguished_gl_2_2():
    D = DynkinDiagram.parse("0011")
    assert [[cartan(D, i, j) for j in D.colors] for i in D.colors] == [
        [2, -1, 0], [-1, 0, 1], [0, 1, -2]]
    assert [D.alpha_parity(i) for i in D.colors] == [0, 1, 0]


@pytest.mark.parametrize("par", all_parities(3) + all_parities(4))
def test_cartan_symmetric_and_tridiagonal(par):
    D = DynkinDiagram.parse(par)
    for i in D.colors:
        for j in D.colors:
            assert cartan(D, i, j) == cartan(D, j, i)
            if abs(i - j) > 1:
                assert cartan(D, i, j) == 0
        # odd simple roots are isotropic
        assert (cartan(D, i, i) == 0) == (D.alpha_parity(i) == 1)


def test_roots_and_parity():
    D = DynkinDiagram.parse("0101")
    assert [str(b) for b in D.roots] == ["a1..1", "a1..2", "a1..3", "a2..2", "a2..3", "a3..3"]
    assert D.root_parity(Root(1, 2)) == 0 and D.root_parity(Root(1, 1)) == 1
    assert Root.parse("a2..3") == Root(2, 3)
    assert 3 in Root(2, 3) and 1 not in Root(2, 3)


def test_shift_is_half_cartan_partial_sum():
    D = DynkinDiagram.parse("010")
    assert D.shift(1) == 0
    assert D.shift(2) == cartan(D, 1, 2) / 2


def test_T_k_small_cases():
    D = DynkinDiagram.parse("000")
    ds = enumerate_T(D, (1, 1))
    assert [d.to_json() for d in ds] == [{"a1..2": 1}, {"a1..1": 1, "a2..2": 1}]
    assert len(enumerate_T(DynkinDiagram.parse("0000"), (1, 1, 1))) == 4
    assert enumerate_T(D, (0, 0)) == [DegreeVector.of({})]


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_T_k_is_sorted_and_tiles(k):
    D = DynkinDiagram.parse("0000")
    ds = enumerate_T(D, k)
    assert all(d.color_degree(D) == tuple(k) for d in ds)
    for a, b in zip(ds, ds[1:]):
        assert compare_deg(D, a, b) == 1
    # d_min is supported on simple roots
    assert all(b.is_simple() for b in ds[-1].roots())


def test_compare_deg_first_difference_rule():
    D = DynkinDiagram.parse("000")
    big = DegreeVector.of({Root(1, 2): 1})
    small = DegreeVector.of({Root(1, 1): 1, Root(2, 2): 1})
    assert compare_deg(D, big, small) == 1
    assert compare_deg(D, small, big) == -1
    assert compare_deg(D, small, small) == 0


def test_pbw_monomial_validation_and_json():
    D = DynkinDiagram.parse("010")
    h = PBWMonomial.from_factors([(Root(1, 2), 1), (Root(1, 1), 0), (Root(1, 2), 1)])
    h.validate(D)
    assert h.degree().to_json() == {"a1..1": 1, "a1..2": 2}
    assert h.n_factors() == 3 and h.modes(Root(1, 2)) == [1, 1]
    assert PBWMonomial.from_json(h.to_json()) == h
    with pytest.raises(ValueError):
        PBWMonomial.from_factors([(Root(1, 1), 0), (Root(1, 1), 0)], D)


def test_hbar_weight():
    d = DegreeVector.of({Root(1, 3): 2, Root(2, 2): 1})
    assert d.hbar_weight() == 4
