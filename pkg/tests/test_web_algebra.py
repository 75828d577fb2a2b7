import random

import pytest
from hypothesis import given, settings, strategies as st

from arcweb import reference as R
from arcweb.diagrams import CupDiagram
from arcweb.linear import LinearCombination
from arcweb.stacked import SurgeryCase
from arcweb.web_algebra import (CWState, PhantomPair, WebBasisElement, WordError, basis,
                                cw_orders, mult_cW, multiply_cW, phantom_surgery)
from arcweb.webs import PhantomCurve, Web, is_basis_web

cd = CupDiagram.parse
W = WebBasisElement.parse
BASES = {K: basis(K) for K in (1, 2, 3)}


def test_rank_one_basis():
    els = basis("oo")
    plain = [e for e in els if str(e.bottom) == "1-2" and str(e.top) == "1-2"]
    assert [e.degree() for e in plain] == [0, 2]
    assert len(els) == 4


def test_empty_word():
    (e,) = basis("")
    assert e.degree() == 0 and e.rank == 0
    assert basis(0) == [e]


@pytest.mark.parametrize("word", ["ooo", "op", "x"])
def test_unsupported_words(word):
    with pytest.raises(WordError):
        basis(word)


@pytest.mark.parametrize("K,size", [(1, 4), (2, 40), (3, 496)])
def test_basis_sizes(K, size):
    # equals the size of the arc algebra (both blocks), see test_block_sizes
    assert len(BASES[K]) == size


def test_parse_round_trip_and_errors():
    for e in BASES[2]:
        assert W(str(e)) == e
    with pytest.raises(ValueError):
        W("1-2 | dots=1 | 1-2")        # dot off the base point
    with pytest.raises(ValueError):
        W("1-2* | dots=- | 1-2")       # ill oriented shape
    with pytest.raises(WordError):
        multiply_cW(BASES[1][0], BASES[2][0])


def test_mismatched_middle_is_zero():
    assert mult_cW(W("1-2 3-4 | dots=- | 1-2 3-4"), W("1-4 2-3 | dots=- | 1-4 2-3")) == 0


def test_rank_one_is_dual_numbers():
    one, x = W("1-2 | dots=- | 1-2"), W("1-2 | dots=2 | 1-2")
    assert mult_cW(one, one) == LinearCombination.single(one)
    assert mult_cW(one, x) == LinearCombination.single(x)
    assert mult_cW(x, x) == 0


def test_h_split():
    a, b = R.web_pair(R.H_SPLIT_PAIR)
    trace = []
    prod = multiply_cW(a, b, trace=trace)
    assert [(sorted(e.dots), c) for e, c in prod.items()] == [([2], 1), ([4], -1)]
    step = next(s for s in trace if s.case == SurgeryCase.NON_NESTED_SPLIT)
    assert (step.psadtype, step.npsad) == (0, 0)


def test_nested_merge():
    a, b = R.web_pair(R.NESTED_MERGE_PAIR)
    trace = []
    prod = multiply_cW(a, b, trace=trace)
    step = next(s for s in trace if s.case == SurgeryCase.NESTED_MERGE)
    assert (step.psadtype, step.nploop, step.npsad) == (0, 0, 0)
    assert [c for _, c in prod.items()] == [1]


def test_nested_split_signs_and_circle_removal():
    from arcweb.embedding import top_bar
    x, y = R.nested_split_pair()
    tx, ty = (top_bar(v).items()[0][0] for v in (x, y))
    trace = []
    res = multiply_cW(tx, ty, R.NESTED_SPLIT_ORDER, trace=trace)
    step = next(s for s in trace if s.case == SurgeryCase.NESTED_SPLIT_REVERSED_C)
    assert (step.psadtype, step.npcirc) == (1, 1)
    terms = lambda ts: sorted((tuple(b[1] for b in d), c) for c, d in ts)
    assert terms(step.before_removal) == [((3,), 1), ((4,), -1)]
    assert terms(step.terms) == [((3,), -1), ((4,), 1)]
    # the C shape reached by the leftmost order gives the same product
    assert res == multiply_cW(tx, ty)
    left = [s.case for s in _trace(tx, ty)]
    assert SurgeryCase.NESTED_SPLIT_C in left


def _trace(x, y):
    out = []
    multiply_cW(x, y, trace=out)
    return out


def test_phantom_pair_closing_a_circle_gives_minus_one():
    p = PhantomPair(1.5, 3.5, 3.0, 7.0)
    loop = PhantomCurve(((1.5, 3.0), (3.5, 3.0), (3.5, 2.0), (5.0, 2.0), (5.0, 8.0), (3.5, 8.0),
                         (3.5, 7.0), (1.5, 7.0), (1.5, 8.0), (0.0, 8.0), (0.0, 2.0), (1.5, 2.0)))
    new, sign = phantom_surgery(CWState(Web(2, [], [loop]), [p], 0), p)
    assert sign == -1 and len(new.web.curves) == 2 and all(c.closed for c in new.web.curves)
    a = PhantomCurve(((1.5, 3.0), (3.5, 3.0), (3.5, 1.0), (1.5, 1.0)))
    b = PhantomCurve(((1.5, 7.0), (1.5, 9.0), (3.5, 9.0), (3.5, 7.0)))
    new, sign = phantom_surgery(CWState(Web(2, [], [a, b]), [p], 0), p)
    assert sign == 1 and len(new.web.curves) == 1


def test_explicit_order_errors():
    from arcweb.webs import WebError
    x, y = R.web_pair(R.H_SPLIT_PAIR)
    with pytest.raises(WebError):
        multiply_cW(x, y, order=("2-3",))


pairs = st.integers(1, 3).flatmap(lambda K: st.tuples(st.sampled_from(BASES[K]), st.sampled_from(BASES[K])))


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_outputs_are_basis_webs_and_degrees_add(p):
    x, y = p
    for e, _ in mult_cW(x, y).items():
        assert is_basis_web(e.web())
        assert e.degree() == x.degree() + y.degree()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BASES[3]), st.randoms(use_true_random=False))
def test_order_independence_rank3(x, rnd):
    ys = [y for y in BASES[3] if y.bottom == x.top]
    y = rnd.choice(ys)
    orders = cw_orders(x.top)
    ref = multiply_cW(x, y)
    for o in rnd.sample(orders, min(4, len(orders))):
        assert multiply_cW(x, y, o) == ref


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BASES[3]), st.randoms(use_true_random=False))
def test_associativity_rank3(x, rnd):
    y = rnd.choice([e for e in BASES[3] if e.bottom == x.top])
    z = rnd.choice([e for e in BASES[3] if e.bottom == y.top])
    assert mult_cW(mult_cW(x, y), z) == mult_cW(x, mult_cW(y, z))
