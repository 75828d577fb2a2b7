import pytest
from hypothesis import given, settings, strategies as st

from arcweb import reference as R
from arcweb.diagrams import CircleDiagram, CupDiagram, enumerate_cup_diagrams
from arcweb.embedding import raw_web, web_of_diagram
from arcweb.webs import (PhantomCurve, Web, WebError, b_admissible_decoration, decorate,
                         degree, is_basis_web, npcirc, npedge, npesci, nploop, npsad, psadtype,
                         to_records, well_oriented)

cd = CupDiagram.parse
CUPS = {K: enumerate_cup_diagrams(K) for K in (1, 2, 3)}
ORIENTABLE = [(c, d) for K in (1, 2, 3) for c in CUPS[K] for d in CUPS[K]
              if CircleDiagram(c, d).is_orientable()]


def test_loops_reference():
    ref = R.loops_web()
    web, pts = ref.web, ref.data["points"]
    for name, v in ref.expected["nploop"].items():
        assert nploop(web, ref.data["C"], pts[name]) == v
    assert nploop(web, ref.data["C_in"], pts["n"]) == 1
    for name, v in ref.expected["npedge"].items():
        assert npedge(web, pts["i"], pts[name]) == v


def test_saddle_reference():
    ref = R.saddle_web()
    cup = ref.data["cup"]
    assert (npsad(ref.web, cup, True), npsad(ref.web, cup, False), psadtype(ref.web, cup)) == (2, 1, 1)


def test_decorated_references():
    got = [(degree(r.web), npcirc(r.web), is_basis_web(r.web)) for r in R.decorated_webs()]
    assert got == [(-2, 0, True), (2, 0, True), (0, 1, False)]


def test_plain_circle_statistics():
    web = web_of_diagram(cd("1-2"), cd("1-2"))
    node = web.circles[0].base
    assert nploop(web, 0, node) == 0
    assert npedge(web, node, (0, 1)) == 0
    assert npcirc(web) == 0
    assert npesci(web) == 0
    assert well_oriented(web)
    assert degree(web) == -1
    assert degree(Web(1, [], [])) == 0


def test_clockwise_phantom_circle_not_counted():
    base = web_of_diagram(cd("1-2 3-4"), cd("1-2 3-4"))
    ccw = PhantomCurve(((10.0, 3.0), (11.0, 3.0), (11.0, 4.0), (10.0, 4.0)))
    cw = PhantomCurve(ccw.points[::-1])
    assert npcirc(Web(1, base.edges, base.curves + [ccw])) == 1
    assert npcirc(Web(1, base.edges, base.curves + [ccw, cw])) == 1


def test_ill_oriented_single_attachment():
    web, _ = raw_web(cd("1-2* 3-4"), cd("1-4 2-3"))
    assert not well_oriented(web)
    k = next(i for i, c in enumerate(web.circles) if len(c.trivalent()) % 2)
    with pytest.raises(WebError):
        b_admissible_decoration(web, k)


def test_rank_one_marked_circle_has_one_seam():
    web = web_of_diagram(cd("1-2*"), cd("1-2*"))
    assert len(web.circles) == 1
    assert len(web.circles[0].trivalent()) == 2
    assert len(web.seams) == 2          # one seam, stored in both directions
    recs = to_records(web)
    assert sum(r.startswith("seam") for r in recs) == 1
    assert sum(r.startswith("parc") for r in recs) == 1


def test_unmarked_basis_web_npesci_zero():
    for c, d in ORIENTABLE:
        if not any(a.marked for a in c.arcs + d.arcs):
            assert npesci(web_of_diagram(c, d)) == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORIENTABLE))
def test_npedge_parity_path_independent(pair):
    web = web_of_diagram(*pair)
    for k, circ in enumerate(web.circles):
        # endpoints on ordinary segments; a trivalent endpoint is itself not counted
        pts = [p for kind, p in circ.events if kind == "node"]
        for p in pts:
            for q in pts:
                if p != q:
                    assert (npedge(web, p, q) - npedge(web, p, q, clockwise=True)) % 2 == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORIENTABLE))
def test_decoration_independent_of_reading_direction(pair):
    web = web_of_diagram(*pair)
    rev = decorate(web, reverse_for=range(len(web.circles)))
    assert rev.seams == web.seams
    assert is_basis_web(web)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORIENTABLE), st.sampled_from(ORIENTABLE))
def test_degree_additive_under_disjoint_union(p, q):
    K1 = p[0].rank

    def shift(c):
        return tuple(type(a)(a.left + 2 * K1, a.right + 2 * K1, a.marked) for a in c.arcs)

    # side by side: markers stay admissible and the union is a valid diagram pair
    c = CupDiagram(p[0].arcs + shift(q[0]))
    d = CupDiagram(p[1].arcs + shift(q[1]))
    w, w1, w2 = web_of_diagram(c, d), web_of_diagram(*p), web_of_diagram(*q)
    assert degree(w) == degree(w1) + degree(w2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORIENTABLE))
def test_npsad_sum_is_saddle_type(pair):
    # every marked cup of the closed web is a candidate surgery cup
    web = web_of_diagram(*pair)
    for e in web.edges:
        if e.kind == "cup" and e.ts:
            assert (npsad(web, e, True) + npsad(web, e, False)) % 2 == psadtype(web, e)
            assert psadtype(web, e) in (0, 1)
