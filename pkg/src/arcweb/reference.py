"""
Hand-encoded reference webs and products for the statistics conformance suite.

Each builder returns the web (or product data) together with the values the
statistics must reproduce. Geometry follows the rectilinear conventions of
``webs``: one or two horizontal lines, caps above and cups below a line,
trivalent vertices and named reference points on apex segments.
"""

from collections import namedtuple

from .diagrams import CupDiagram, OrientedCircleDiagram
from .embedding import web_of_diagram
from .webs import SPACING, PhantomCurve, Web, WebEdge

Reference = namedtuple("Reference", "name web expected data")
"""A reference configuration: the web, the expected statistics, and lookup data."""


def _cd(text):
    return CupDiagram.parse(text)


# -- one circle with four internal loops, an exterior loop and a nested circle ------------

def loops_web():
    """Circle C with reference points i, j, m, k, l (anticlockwise) and a nested circle.

    Loops of C: L1 and L2 run from the top segment between i and j to the
    bottom segment between k and l (in opposite directions), L4 hangs around
    m, L3 is exterior, and L5 passes through the nested circle C_in, which
    also carries one internal loop.
    """
    top = 9.5
    cap = WebEdge((0, 1), (0, 20), "cap", ts=(11, 13, 15, 16, 17), marks=(10, 12, 14.5, 18.5))
    cup = WebEdge((0, 1), (0, 20), "cup", ts=(4, 5, 6, 10, 12), marks=(7,))
    in_cap = WebEdge((0, 8), (0, 9), "cap", ts=(8.3, 8.7))
    in_cup = WebEdge((0, 8), (0, 9), "cup", ts=(8.3, 8.7))
    curves = [
        # L1: top 17 -> bottom 6
        PhantomCurve(((17.0, top), (17.0, -3.0), (6.0, -3.0), (6.0, -top)), (17.0, top), (6.0, -top)),
        # L2: bottom 4 -> top 15
        PhantomCurve(((4.0, -top), (4.0, 3.0), (15.0, 3.0), (15.0, top)), (4.0, -top), (15.0, top)),
        # L4: top 11 -> top 13
        PhantomCurve(((11.0, top), (11.0, 6.0), (13.0, 6.0), (13.0, top)), (11.0, top), (13.0, top)),
        # L3 (exterior): bottom 12 -> bottom 10
        PhantomCurve(((12.0, -top), (12.0, -12.0), (10.0, -12.0), (10.0, -top)), (12.0, -top), (10.0, -top)),
        # L5: top 16 -> C_in, C_in -> bottom 5
        PhantomCurve(((16.0, top), (16.0, 2.0), (8.7, 2.0), (8.7, 0.5)), (16.0, top), (8.7, 0.5)),
        PhantomCurve(((8.7, -0.5), (8.7, -2.0), (5.0, -2.0), (5.0, -top)), (8.7, -0.5), (5.0, -top)),
        # internal loop of C_in
        PhantomCurve(((8.3, 0.5), (8.3, -0.5)), (8.3, 0.5), (8.3, -0.5)),
    ]
    web = Web(1, [cap, cup, in_cap, in_cup], curves)
    points = {"i": (18.5, top), "j": (14.5, top), "m": (12.0, top), "k": (10.0, top),
              "l": (7.0, -top), "n": (0, 9)}
    expected = {
        "nploop": {"i": 3, "l": 3, "j": 4, "k": 4, "m": 3},
        "nploop_in": {"n": 1},
        "npedge": {"j": 3, "k": 5, "l": 8},
    }
    data = {"C": web.circle_index((0, 20)), "C_in": web.circle_index((0, 9)), "points": points}
    return Reference("loops", web, expected, data)


# -- a cup-cap pair with three phantom edges on the cup -------------------------------------

def saddle_web():
    """Stacked web whose surgery cup carries three phantom edges (in, out, in from left)."""
    y = SPACING - 0.5
    edges = [
        WebEdge((0, 1), (0, 2), "cup"),
        WebEdge((0, 1), (0, 2), "cap"),
        WebEdge((1, 1), (1, 2), "cup", ts=(1.25, 1.5, 1.75)),
        WebEdge((1, 1), (1, 2), "cap"),
    ]
    curves = [
        PhantomCurve(((1.25, 40.0), (1.25, y)), None, (1.25, y)),
        PhantomCurve(((1.5, y), (1.5, 40.0)), (1.5, y), None),
        PhantomCurve(((1.75, 40.0), (1.75, y)), None, (1.75, y)),
    ]
    web = Web(2, edges, curves)
    return Reference("saddle", web, {"npsad_i": 2, "npsad_j": 1, "psadtype": 1},
                     {"cup": edges[2]})


# -- three decorations of one web -------------------------------------------------------------

DECORATED_SHAPE = ("1-2* 3-4* 5-6* 7-8* 9-10", "1-8 2-3 4-5 6-7 9-10")


def decorated_webs():
    """Undotted basis web, fully dotted basis web, and a non-basis decoration.

    The shape has a circle with four trivalent vertices (two seams) and a
    plain circle. The third decoration puts one dot away from a base node,
    adds an anticlockwise phantom circle and pairs the seams the other way.
    """
    base = web_of_diagram(_cd(DECORATED_SHAPE[0]), _cd(DECORATED_SHAPE[1]))
    bases = frozenset(c.base for c in base.circles)
    w1 = Web(1, base.edges, base.curves, frozenset(), base.seams)
    w2 = Web(1, base.edges, base.curves, bases, base.seams)
    big = max(range(len(base.circles)), key=lambda k: len(base.circles[k].trivalent()))
    atts = [a.point for a in base.attachments(big)]
    bad = {atts[1]: atts[2], atts[2]: atts[1], atts[3]: atts[0], atts[0]: atts[3]}
    ring = PhantomCurve(((12.0, 3.0), (13.0, 3.0), (13.0, 4.0), (12.0, 4.0)))
    off_base = next(n for n in base.circles[big].nodes if n != base.circles[big].base)
    w3 = Web(1, base.edges, list(base.curves) + [ring], frozenset({off_base}), bad)
    return [Reference("W1", w1, {"degree": -2, "npcirc": 0, "basis": True}, None),
            Reference("W2", w2, {"degree": 2, "npcirc": 0, "basis": True}, None),
            Reference("W3", w3, {"degree": 0, "npcirc": 1, "basis": False}, None)]


# -- the two-term products ---------------------------------------------------------------------

NESTED_SPLIT_PAIR = ("1-4 2-3 | vv^^ | 1-2* 3-4*", "1-2* 3-4* | vv^^ | 1-4 2-3")
NESTED_SPLIT_ORDER = ("p1.5-3.5", "3-4*", "1-2*")
H_SPLIT_PAIR = (("1-2* 3-4*", "1-4 2-3"), ("1-4 2-3", "1-2* 3-4*"))
NESTED_MERGE_PAIR = (("1-2* 3-4", "1-4* 2-3"), ("1-4* 2-3", "1-4* 2-3"))


def nested_split_pair():
    """The arc algebra pair whose product is a two-term nested split."""
    return tuple(OrientedCircleDiagram.parse(t) for t in NESTED_SPLIT_PAIR)


def web_pair(shapes):
    from .web_algebra import WebBasisElement
    return tuple(WebBasisElement(_cd(b), _cd(t)) for b, t in shapes)


def stacked_start(x, y):
    """Stacked web of the closed webs of x (line 0) under y (line 1), with seams."""
    w0 = web_of_diagram(x.bottom, x.top, 0)
    w1 = web_of_diagram(y.bottom, y.top, 1)
    seams = dict(w0.seams)
    seams.update(w1.seams)
    return Web(2, w0.edges + w1.edges, w0.curves + w1.curves, frozenset(), seams)
