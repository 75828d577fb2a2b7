"""
From type D circle diagrams to dotted webs, and the embedding top_bar.

A marked cup becomes a cup with one trivalent vertex at its apex whose
phantom edge leaves the line. The direction of that edge is fixed by the
number of marked cups strictly to its right: with an even number the edge
points into the vertex, with an odd number out of it. Caps use the mirror
rule (directions swapped), which is what makes the closed web of an
orientable cd* well oriented.

Dangling phantom edges are closed separately below and above the line,
pairing neighbours from the right; a single leftover pair (odd number of
markers on each side) is joined around the left of the picture.
"""

from collections import namedtuple

from .diagrams import CircleDiagram, DiagramError, OrientedCircleDiagram
from .linear import LinearCombination
from .webs import (SPACING, PhantomCurve, Web, WebEdge, b_admissible_decoration,
                   npesci, well_oriented)

EVEN_CUP = "in"
LEFT_X = -1.0

Leg = namedtuple("Leg", "point direction")
"""Trivalent point of a marked arc and the direction of its phantom edge there."""

Closure = namedtuple("Closure", "level side left right height curve")
"""A closing phantom arc: its line, side (cup/cap), span and height."""


def _flip(d):
    return "out" if d == "in" else "in"


def marked_direction(diagram, arc, side="cup", even_cup=EVEN_CUP):
    """Direction of the phantom edge at a marked arc: 'in' or 'out' of the vertex."""
    if not arc.marked:
        raise DiagramError(f"arc {arc} carries no marker")
    right = sum(1 for a in diagram.arcs if a.marked and a.left > arc.right)
    d = even_cup if right % 2 == 0 else _flip(even_cup)
    return d if side == "cup" else _flip(d)


def is_even_cup(diagram, arc):
    return sum(1 for a in diagram.arcs if a.marked and a.left > arc.right) % 2 == 0


def web_of_cup(c, level=0, side="cup", even_cup=EVEN_CUP):
    """Ordinary edges of u(c) (or u(c)* when side='cap') and the phantom legs."""
    edges, legs = [], []
    y0 = level * SPACING
    for a in c.arcs:
        ts = ((a.left + a.right) / 2,) if a.marked else ()
        e = WebEdge((level, a.left), (level, a.right), side, ts)
        edges.append(e)
        if a.marked:
            h = e.height if side == "cap" else -e.height
            legs.append(Leg(((a.left + a.right) / 2, y0 + h), marked_direction(c, a, side, even_cup)))
    return edges, legs


def close_phantoms(bottom_legs, top_legs, level=0, rank=None):
    """Phantom curves closing the legs of u (below) and v* (above) a line.

    Neighbouring legs are joined right to left on each side; if both sides
    have a leftover leg they are joined around the left. An unmatched leg
    (odd total) is left dangling and makes the web ill oriented.
    Returns (curves, closures).
    """
    K = rank if rank is not None else max([abs(l.point[0]) for l in bottom_legs + top_legs] + [1])
    h1, h2 = K + 1.0, K + 2.0
    y0 = level * SPACING
    curves, closures = [], []

    def join(p_from, p_to, path):
        curves.append(PhantomCurve(tuple(path), p_from, p_to))

    leftovers = {}
    for side, legs, s in (("cup", bottom_legs, -1), ("cap", top_legs, 1)):
        legs = sorted(legs, key=lambda l: -l.point[0])
        while len(legs) >= 2:
            r, l = legs[0], legs[1]
            legs = legs[2:]
            path = [r.point, (r.point[0], y0 + s * h1), (l.point[0], y0 + s * h1), l.point]
            if r.direction == l.direction:
                raise DiagramError("neighbouring phantom legs have equal directions")
            if r.direction == "out":
                join(r.point, l.point, path)
            else:
                join(l.point, r.point, path[::-1])
            closures.append(Closure(level, side, l.point[0], r.point[0], y0 + s * h1, len(curves) - 1))
        if legs:
            leftovers[side] = legs[0]
    if len(leftovers) == 2:
        b, t = leftovers["cup"], leftovers["cap"]
        path = [b.point, (b.point[0], y0 - h2), (LEFT_X, y0 - h2), (LEFT_X, y0 + h2),
                (t.point[0], y0 + h2), t.point]
        if b.direction == t.direction:
            raise DiagramError("leftover phantom legs have equal directions")
        if b.direction == "out":
            join(b.point, t.point, path)
        else:
            join(t.point, b.point, path[::-1])
        closures.append(Closure(level, "cup", LEFT_X, b.point[0], y0 - h2, len(curves) - 1))
        closures.append(Closure(level, "cap", LEFT_X, t.point[0], y0 + h2, len(curves) - 1))
    else:
        for side, leg in leftovers.items():
            s = -1 if side == "cup" else 1
            end = (LEFT_X, y0 + s * h2)
            path = [leg.point, (leg.point[0], y0 + s * h2), end]
            if leg.direction == "out":
                curves.append(PhantomCurve(tuple(path), leg.point, None))
            else:
                curves.append(PhantomCurve(tuple(path[::-1]), None, leg.point))
    return curves, closures


def circle_parities(D, marked_only=True):
    """Even/odd label per circle: right to left by base point, starting even.

    With ``marked_only`` unmarked circles get no label and are skipped in
    the alternation.
    """
    order = sorted(range(len(D.circles)), key=lambda k: -D.circles[k].base)
    if marked_only:
        order = [k for k in order if D.circles[k].markers]
    out = [None] * len(D.circles)
    for t, k in enumerate(order):
        out[k] = "even" if t % 2 == 0 else "odd"
    return out


def raw_web(c, d, level=0, even_cup=EVEN_CUP):
    """Undecorated closed web of cd* on one line, plus its closure data."""
    if c.rank != d.rank:
        raise DiagramError("ranks differ")
    e1, l1 = web_of_cup(c, level, "cup", even_cup)
    e2, l2 = web_of_cup(d, level, "cap", even_cup)
    curves, closures = close_phantoms(l1, l2, level, c.rank)
    return Web(1, e1 + e2, curves), closures


def web_of_diagram(c, d, level=0, even_cup=EVEN_CUP):
    """Closed web of cd* with seams pairing neighbouring markers from each base point.

    Raises DiagramError when the web is not well oriented (cd* not orientable).
    """
    web, _ = raw_web(c, d, level, even_cup)
    if not well_oriented(web):
        raise DiagramError(f"{c} | {d} is not orientable")
    seams = {}
    for k in range(len(web.circles)):
        for p, q in b_admissible_decoration(web, k):
            seams[p] = q
            seams[q] = p
    return Web(1, web.edges, web.curves, frozenset(), seams)


def fig4_directions(c, d):
    """Phantom directions from a per-circle reading of the marked circles.

    Even circles are read anticlockwise from their base point, odd ones
    clockwise; the first marker points out and the directions alternate.
    Returns a dict trivalent point -> 'in'/'out'.
    """
    web, _ = raw_web(c, d)
    D = CircleDiagram(c, d)
    par = circle_parities(D)
    out = {}
    for k, wc in enumerate(web.circles):
        base = wc.base[1]
        dk = next(t for t, dc in enumerate(D.circles) if dc.base == base)
        pts = wc.trivalent()
        if par[dk] == "odd":
            pts = pts[::-1]
        for t, p in enumerate(pts):
            out[p] = "out" if t % 2 == 0 else "in"
    return out


def top_line_curves(web, closures):
    """Curve indices of closing arcs drawn on the cap side (above the line)."""
    return {cl.curve for cl in closures if cl.side == "cap" and cl.left != LEFT_X}


def npesci_closed(c, d, even_cup=EVEN_CUP):
    """npesci of the closed web of cd*: anticlockwise edge+seam circles touching the top."""
    web = web_of_diagram(c, d, even_cup=even_cup)
    _, closures = raw_web(c, d, even_cup=even_cup)
    return npesci(web, top_line_curves(web, closures))


# -- the embedding ---------------------------------------------------------------------

def dots_of(x):
    """Base vertices of the clockwise circles of an oriented circle diagram."""
    return frozenset(c.base for c, cw in zip(x.diagram.circles, x.clockwise()) if cw)


def top_bar(x):
    """(-1)^npesci times the dotted basis web associated to x (linear in x)."""
    from .web_algebra import WebBasisElement
    if isinstance(x, LinearCombination):
        return x.map(top_bar)
    if not isinstance(x, OrientedCircleDiagram):
        raise DiagramError(f"not a basis element: {x!r}")
    w = WebBasisElement(x.bottom, x.top, dots_of(x))
    return LinearCombination.single(w, (-1) ** npesci_closed(x.bottom, x.top))


def is_well_oriented_image(c, d):
    web, _ = raw_web(c, d)
    return well_oriented(web)
