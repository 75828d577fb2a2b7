from hypothesis import given, strategies as st

from arcweb.diagrams import OrientedCircleDiagram, basis, blocks
from arcweb.linear import LinearCombination
from arcweb.web_algebra import WebBasisElement, basis as web_basis

ARC = [e for b in blocks(2) for e in basis(b)]
WEB = web_basis(2)

lcs = st.lists(st.tuples(st.sampled_from(ARC), st.integers(-5, 5)), max_size=6).map(LinearCombination)
wlcs = st.lists(st.tuples(st.sampled_from(WEB), st.integers(-5, 5)), max_size=6).map(LinearCombination)


@given(lcs)
def test_text_round_trip(v):
    assert LinearCombination.parse(str(v), OrientedCircleDiagram.parse) == v


@given(wlcs)
def test_web_text_round_trip(v):
    assert LinearCombination.parse(str(v), WebBasisElement.parse) == v


@given(lcs, lcs, lcs)
def test_module_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == 0
    assert (a + b).scale(3) == a.scale(3) + b.scale(3)


@given(lcs)
def test_no_zero_coefficients(v):
    assert all(c != 0 for _, c in v.items())
    assert [b for b, _ in v.items()] == sorted(v.support(), key=lambda e: e.sort_key())
