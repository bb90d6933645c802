import os
import sys
from itertools import product

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from shuffly.exactalg import HBAR, V, X, Poly  # noqa: E402
from shuffly.root_data import DynkinDiagram  # noqa: E402
from shuffly.shuffle_rational import ShuffleElement, supersymmetrize  # noqa: E402
from shuffly.shuffle_trig import TrigShuffleElement  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=25, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def all_parities(n):
    return ["".join(map(str, p)) for p in product((0, 1), repeat=n)]


SMALL_DIAGRAMS = all_parities(2) + all_parities(3)


@pytest.fixture(params=SMALL_DIAGRAMS)
def small_diagram(request):
    return DynkinDiagram.parse(request.param)


@st.composite
def polys(draw, gens, max_terms=3, max_exp=2, laurent=False, coeff_var=HBAR):
    """Small random polynomials in ``gens`` and the coefficient variable."""
    lo = -1 if laurent else 0
    out = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        ex = {g: draw(st.integers(lo, max_exp)) for g in gens}
        ex[coeff_var] = draw(st.integers(lo if laurent else 0, 1))
        c = draw(st.integers(-3, 3))
        out = out + Poly.monomial({g: e for g, e in ex.items() if e}, c)
    return out


@st.composite
def elements(draw, D, max_total=2, trig=False, nonzero=False):
    """Random supersymmetric elements of total degree <= max_total."""
    n1 = D.n - 1
    k = [0] * n1
    for _ in range(draw(st.integers(0 if not nonzero else 1, max_total))):
        k[draw(st.integers(0, n1 - 1))] += 1
    k = tuple(k)
    gens = [X(i, r) for i in range(1, n1 + 1) for r in range(1, k[i - 1] + 1)]
    p = draw(polys(gens, laurent=trig, coeff_var=V if trig else HBAR))
    cls = TrigShuffleElement if trig else ShuffleElement
    F = supersymmetrize(D, k, p, cls)
    if nonzero and F.is_zero():
        F = cls(D, k, Poly.constant(1)) if all(D.alpha_parity(i) == 0 or k[i - 1] <= 1
                                                for i in D.colors) else F
    return F


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-criteria campaigns")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY
    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in SUMMARY:
            terminalreporter.write_line(line)
