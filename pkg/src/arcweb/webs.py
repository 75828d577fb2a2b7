"""
Dotted webs in a rectilinear embedding, and their phantom statistics.

A web is stored concretely in the plane. Ordinary vertices sit on
horizontal lines y = level * SPACING at x = 1..2K. An ordinary edge is a
cup (below its line), a cap (above it) or a vertical joining two lines; cups
and caps are drawn as three-segment polylines whose apex segment may carry
trivalent vertices. Phantom edges are oriented polylines running from one
trivalent vertex to another; closed phantom polylines are phantom circles.
Phantom seams pair trivalent vertices along an ordinary circle.

With everything drawn, nesting, interior versus exterior attachment,
orientation of phantom circles and of edge+seam circles are plain polygon
computations, so no figure convention has to be encoded by hand beyond the
orientation of the phantom edges themselves.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from functools import cached_property

from .diagrams import DiagramError

SPACING = 64.0
EPS = 0.125


class WebError(DiagramError):
    """Malformed web, path or point."""


# -- planar helpers -------------------------------------------------------------

def signed_area(poly):
    """Twice-free shoelace area; positive for anticlockwise polygons."""
    s = 0.0
    n = len(poly)
    for k in range(n):
        x1, y1 = poly[k]
        x2, y2 = poly[(k + 1) % n]
        s += x1 * y2 - x2 * y1
    return s / 2


def inside(point, poly):
    """Crossing-number test with the half-open rule; point must be off the boundary."""
    px, py = point
    c = False
    n = len(poly)
    for k in range(n):
        x1, y1 = poly[k]
        x2, y2 = poly[(k + 1) % n]
        if (y1 > py) != (y2 > py):
            xs = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if xs > px:
                c = not c
    return c


def _dedupe(points):
    out = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _simplify(points, closed=False):
    """Drop repeated and collinear interior points of a rectilinear polyline."""
    pts = _dedupe(points)
    if closed and len(pts) > 1 and pts[0] == pts[-1]:
        pts = pts[:-1]
    changed = True
    while changed and len(pts) > 2:
        changed = False
        n = len(pts)
        rng = range(n) if closed else range(1, n - 1)
        for k in rng:
            a, b, c = pts[k - 1], pts[k], pts[(k + 1) % n]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                del pts[k]
                changed = True
                break
    return pts


# -- ordinary and phantom pieces ----------------------------------------------------

@dataclass(frozen=True)
class WebEdge:
    """Ordinary edge between two nodes (level, x)."""
    a: tuple
    b: tuple
    kind: str                 # "cup", "cap" or "vert"
    ts: tuple = ()            # x coordinates of trivalent vertices on the apex segment
    depth: float = None       # apex distance from the line, default half the width
    marks: tuple = ()         # x coordinates of named reference points on the apex segment

    @property
    def height(self):
        if self.depth is not None:
            return self.depth
        return abs(self.b[1] - self.a[1]) / 2

    def trivalent_points(self):
        if self.kind == "vert":
            return []
        y = _line_y(self.a[0]) + (self.height if self.kind == "cap" else -self.height)
        return [(float(t), y) for t in sorted(self.ts)]

    def mark_points(self):
        if self.kind == "vert":
            return []
        y = _line_y(self.a[0]) + (self.height if self.kind == "cap" else -self.height)
        return [(float(t), y) for t in sorted(self.marks)]

    def polyline(self, start):
        """Points from node ``start`` to the other end, trivalent vertices included."""
        if self.kind == "vert":
            pts = [(float(self.a[1]), _line_y(self.a[0])), (float(self.b[1]), _line_y(self.b[0]))]
        else:
            y0 = _line_y(self.a[0])
            y1 = y0 + (self.height if self.kind == "cap" else -self.height)
            l, r = sorted((self.a[1], self.b[1]))
            pts = [(float(l), y0), (float(l), y1)]
            pts += [(float(t), y1) for t in sorted(set(self.ts) | set(self.marks))]
            pts += [(float(r), y1), (float(r), y0)]
        first = (float(start[1]), _line_y(start[0]))
        return pts if pts[0] == first else pts[::-1]

    def other(self, node):
        return self.b if node == self.a else self.a


def _line_y(level):
    return level * SPACING


@dataclass(frozen=True)
class PhantomCurve:
    """Oriented phantom polyline; src/dst are trivalent points, None for a phantom circle."""
    points: tuple
    src: tuple = None
    dst: tuple = None

    @property
    def closed(self):
        return self.src is None and self.dst is None

    def orientation(self):
        """'ccw' or 'cw' for a phantom circle."""
        return "ccw" if signed_area(self.points) > 0 else "cw"


Attachment = namedtuple("Attachment", "point curve direction side")
"""A trivalent vertex on a circle: its position, curve index, in/out, int/ext."""


@dataclass
class WebCircle:
    nodes: list               # traversal order from the base node
    edges: list
    polygon: list             # anticlockwise
    events: list              # anticlockwise from the base node: ("node", n) / ("t", point)
    parent: object = None

    @property
    def base(self):
        return self.nodes[0]

    def trivalent(self):
        return [p for kind, p in self.events if kind == "t"]


# -- the web ---------------------------------------------------------------------

@dataclass
class Web:
    """A (closed or stacked) web with optional dots and seams.

    ``dots`` holds base nodes of dotted circles. ``seams`` maps each seamed
    trivalent point to its partner; orientation of a seam follows the
    phantom edges (it runs from the end of one edge to the start of the next).
    """
    lines: int
    edges: list
    curves: list
    dots: frozenset = frozenset()
    seams: dict = field(default_factory=dict)

    # ---- ordinary structure

    @cached_property
    def nodes(self):
        out = set()
        for e in self.edges:
            out.add(e.a)
            out.add(e.b)
        return sorted(out)

    @cached_property
    def incident(self):
        inc = {n: [] for n in self.nodes}
        for e in self.edges:
            inc[e.a].append(e)
            inc[e.b].append(e)
        for n, es in inc.items():
            if len(es) != 2:
                raise WebError(f"node {n} has {len(es)} ordinary edges")
        return inc

    @cached_property
    def trivalent(self):
        """Map trivalent point -> ordinary edge carrying it."""
        out = {}
        for e in self.edges:
            for p in e.trivalent_points():
                out[p] = e
        return out

    @cached_property
    def circles(self):
        inc = self.incident
        seen = set()
        out = []
        for start in sorted(self.nodes, key=lambda n: (-n[1], n[0])):
            if start in seen:
                continue
            nodes, edges, pts = [start], [], []
            seen.add(start)
            prev, cur = None, start
            while True:
                e0, e1 = inc[cur]
                e = _leave_up(cur, e0, e1) if prev is None else (e1 if e0 == prev else e0)
                poly = e.polyline(cur)
                pts.extend(poly[:-1])
                edges.append(e)
                nxt = e.other(cur)
                prev, cur = e, nxt
                if cur == start:
                    break
                nodes.append(cur)
                seen.add(cur)
            area = signed_area(pts)
            if area < 0:
                # re-read anticlockwise from the same base node
                rev_nodes = [nodes[0]] + nodes[1:][::-1]
                rev_edges = edges[::-1]
                pts = [pts[0]] + pts[1:][::-1]
                nodes, edges = rev_nodes, rev_edges
            tpts = set(self.trivalent)
            mpts = {p for e in edges for p in e.mark_points()}
            node_at = {(float(n[1]), _line_y(n[0])): n for n in nodes}
            events = []
            for p in pts:
                if p in node_at:
                    events.append(("node", node_at[p]))
                elif p in tpts:
                    events.append(("t", p))
                elif p in mpts:
                    events.append(("mark", p))
            out.append(WebCircle(nodes, edges, pts, events))
        for c in out:
            probe = (float(c.base[1]), _line_y(c.base[0]))
            holders = [k for k, o in enumerate(out) if o is not c and inside(probe, o.polygon)]
            c.parent = min(holders, key=lambda k: abs(signed_area(out[k].polygon)), default=None)
        return out

    def circle_index(self, node_or_point):
        for k, c in enumerate(self.circles):
            if node_or_point in c.nodes:
                return k
            if any(p == node_or_point for _, p in c.events):
                return k
        raise WebError(f"{node_or_point} is not on the web")

    def encloses(self, outer, inner):
        p = self.circles[inner].parent
        while p is not None:
            if p == outer:
                return True
            p = self.circles[p].parent
        return False

    # ---- phantom structure

    @cached_property
    def curve_at(self):
        """Map trivalent point -> (curve index, 'out' | 'in')."""
        out = {}
        for k, cv in enumerate(self.curves):
            if cv.src is not None:
                out[cv.src] = (k, "out")
            if cv.dst is not None:
                out[cv.dst] = (k, "in")
        return out

    def attachment(self, point):
        k, direction = self.curve_at[point]
        cv = self.curves[k]
        pts = cv.points if direction == "out" else cv.points[::-1]
        (x0, y0), (x1, y1) = pts[0], pts[1]
        dx = (x1 > x0) - (x1 < x0)
        dy = (y1 > y0) - (y1 < y0)
        probe = (x0 + EPS * dx + EPS / 7, y0 + EPS * dy + EPS / 5)
        c = self.circles[self.circle_index(point)]
        side = "int" if inside(probe, c.polygon) else "ext"
        return Attachment(point, k, direction, side)

    def attachments(self, circle_index, start=None):
        """Attachments of a circle read anticlockwise, from ``start`` (default base)."""
        c = self.circles[circle_index]
        ev = c.events
        if start is not None:
            k = _event_index(c, start)
            ev = ev[k:] + ev[:k]
        return [self.attachment(p) for kind, p in ev if kind == "t"]

    def phantom_circles(self):
        return [cv for cv in self.curves if cv.closed]

    def degree(self):
        return -len(self.circles) + 2 * len(self.dots)


def _leave_up(node, e0, e1):
    def key(e):
        if e.kind == "vert":
            return 1 if e.other(node)[0] > node[0] else 0
        return 1 if e.kind == "cap" else 0
    return max((e0, e1), key=key)


def _event_index(c, point):
    for k, (kind, p) in enumerate(c.events):
        if p == point:
            return k
    raise WebError(f"{point} is not on this circle")


# -- statistics -------------------------------------------------------------------

def npedge(web, src, dst, clockwise=False):
    """Trivalent vertices met walking along one circle from src to dst.

    src and dst are nodes or trivalent points of the same circle. The walk
    is anticlockwise unless ``clockwise``; the parity does not depend on it
    for well-oriented circles.
    """
    k = web.circle_index(src)
    if web.circle_index(dst) != k:
        raise WebError(f"{src} and {dst} are on different circles")
    c = web.circles[k]
    ev = c.events[::-1] if clockwise else c.events
    n = len(ev)
    i = next(t for t, (_, p) in enumerate(ev) if p == src)
    count = 0
    while ev[i][1] != dst:
        i = (i + 1) % n
        if ev[i][1] != dst and ev[i][0] == "t":
            count += 1
    return count


def _loop_ends(web, circle_index):
    """Pairs of attachment points of C joined through its interior.

    Circles nested in C are ignored: a phantom edge reaching one of them
    continues through the partner of its end point, partners being
    consecutive outer attachments of that circle read from its base point.
    """
    c_atts = web.attachments(circle_index)
    on_c = {a.point for a in c_atts}
    partner = {}
    for k, circ in enumerate(web.circles):
        if k == circle_index or not web.encloses(circle_index, k):
            continue
        ext = [a.point for a in web.attachments(k) if a.side == "ext"]
        for t in range(0, len(ext) - 1, 2):
            partner[ext[t]] = ext[t + 1]
            partner[ext[t + 1]] = ext[t]
    ends = []
    done = set()
    for a in c_atts:
        if a.side != "int" or a.point in done:
            continue
        p = a.point
        cur = p
        for _ in range(4 * len(web.curves) + 4):
            kk, d = web.curve_at[cur]
            cv = web.curves[kk]
            q = cv.dst if d == "out" else cv.src
            if q in on_c:
                break
            if q not in partner:
                raise WebError("phantom edge ends on a nested circle without a partner")
            cur = partner[q]
        else:
            raise WebError("phantom loop does not close")
        done.add(p)
        done.add(q)
        ends.append((p, q))
    return ends


def nploop(web, circle_index, point):
    """Negative internal loops plus negative outgoing pairs of a circle, read from point."""
    atts = web.attachments(circle_index, start=point)
    order = {a.point: t for t, a in enumerate(atts)}
    by_point = {a.point: a for a in atts}
    n = 0
    for p, q in _loop_ends(web, circle_index):
        first = p if order[p] < order[q] else q
        if by_point[first].direction == "in":
            n += 1
    ext = [a for a in atts if a.side == "ext"]
    for t in range(0, len(ext) - 1, 2):
        if ext[t].direction == "in":
            n += 1
    return n


def cup_trivalent(web, cup_edge):
    return [p for p in cup_edge.trivalent_points()]


def npsad(web, cup_edge, at_left, negative_direction="in"):
    """Negative phantom edges on the surgery cup, seen from its left or right end.

    An edge is negative for the left end when its direction at the cup is
    ``negative_direction``; the right end uses the opposite convention, so
    npsad(left) + npsad(right) is the number of edges on the cup.
    """
    n = 0
    for p in cup_trivalent(web, cup_edge):
        d = web.curve_at[p][1]
        neg = (d == negative_direction) if at_left else (d != negative_direction)
        n += neg
    return n


def psadtype(web, cup_edge):
    """Parity of the trivalent vertices between the two surgery points."""
    return len(cup_trivalent(web, cup_edge)) % 2


def npcirc(web):
    """Number of anticlockwise phantom circles."""
    return sum(1 for cv in web.curves if cv.closed and cv.orientation() == "ccw")


def seam_path(web, p, q):
    """Circle points from p to q avoiding the base point (p, q on one circle)."""
    c = web.circles[web.circle_index(p)]
    pts = c.polygon
    i, j = pts.index(p), pts.index(q)
    lo, hi = min(i, j), max(i, j)
    path = pts[lo:hi + 1]
    return path if i <= j else path[::-1]


def edge_seam_circles(web):
    """Closed curves made of phantom edges and seams, as (polygon, levels touched, curves)."""
    out = []
    seen = set()
    for k, cv in enumerate(web.curves):
        if cv.closed or k in seen:
            continue
        poly, used, levels = [], [], set()
        cur = k
        ok = True
        while cur not in seen:
            seen.add(cur)
            used.append(cur)
            c = web.curves[cur]
            poly.extend(c.points)
            q = c.dst
            if q not in web.seams:
                ok = False
                break
            r = web.seams[q]
            sp = seam_path(web, q, r)
            poly.extend(sp)
            ci = web.circle_index(q)
            levels.update(n[0] for n in web.circles[ci].nodes
                          if n in _seam_nodes(web, sp))
            nxt = web.curve_at[r]
            if nxt[1] != "out":
                ok = False
                break
            cur = nxt[0]
        if ok and cur == k:
            out.append((_dedupe(poly), frozenset(levels), tuple(used)))
    return out


def _seam_nodes(web, path):
    s = set(path)
    return {n for n in web.nodes if (float(n[1]), _line_y(n[0])) in s}


def npesci(web, touching=None):
    """Touches of anticlockwise edge+seam circles with the top dotted line.

    ``touching`` is the set of curve indices meeting the top dotted line
    (for closed webs built by the embedding these are the closing arcs on
    the cap side); an anticlockwise circle counts once per such curve it
    runs through. None counts every anticlockwise edge+seam circle once.
    """
    n = 0
    for poly, _, used in edge_seam_circles(web):
        if signed_area(poly) <= 0:
            continue
        n += 1 if touching is None else len(set(used) & set(touching))
    return n


def npesci_stacked(web):
    """npesci of a stacked web: anticlockwise edge+seam circles and phantom
    circles reaching the upper half of the top section, i.e. touching the
    uppermost line rather than the one below it."""
    floor = (web.lines - 1.5) * SPACING if web.lines > 1 else -float("inf")
    n = 0
    for poly, _, _ in edge_seam_circles(web):
        if signed_area(poly) > 0 and max(p[1] for p in poly) > floor:
            n += 1
    for cv in web.curves:
        if cv.closed and cv.orientation() == "ccw" and max(p[1] for p in cv.points) > floor:
            n += 1
    return n


def is_basis_web(web):
    """Dots on base nodes, B-admissible seams, no phantom circles."""
    bases = {c.base for c in web.circles}
    if not set(web.dots) <= bases or web.phantom_circles():
        return False
    try:
        expected = decorate(web).seams
    except WebError:
        return False
    return expected == dict(web.seams)


def degree(web):
    return web.degree()


def well_oriented(web):
    """Even trivalent count on every circle and no ill-attached neighbours.

    Two neighbouring attachments on the same side of a circle, with no other
    attachment between them on that side, are ill-attached when both edges
    point into the circle or both point out of it.
    """
    for k, c in enumerate(web.circles):
        atts = web.attachments(k)
        if len(atts) % 2:
            return False
        for side in ("int", "ext"):
            s = [a for a in atts if a.side == side]
            if len(s) < 2:
                continue
            for t in range(len(s)):
                a, b = s[t], s[(t + 1) % len(s)]
                if a is b:
                    continue
                if a.curve == b.curve:
                    continue
                if not _alternating(s):
                    return False
    return True


def _alternating(atts):
    n = len(atts)
    return all(atts[t].direction != atts[(t + 1) % n].direction for t in range(n)) if n % 2 == 0 else False


def b_admissible_decoration(web, circle_index, reverse=False):
    """Seams on one circle from its base point: consecutive attachments are paired.

    The first pair is taken starting at the base point, reading
    anticlockwise (or clockwise with ``reverse``), pairing a vertex whose
    edge ends with the next one whose edge starts (or the other way round).
    Returns the list of seams as (from, to) oriented pairs.
    """
    atts = web.attachments(circle_index)
    if len(atts) % 2:
        raise WebError("odd number of trivalent vertices on a circle")
    if reverse:
        atts = atts[::-1]
    seams = []
    for t in range(0, len(atts), 2):
        a, b = atts[t], atts[t + 1]
        if a.direction == b.direction:
            raise WebError("ill-attached neighbouring phantom edges")
        seams.append((a.point, b.point) if a.direction == "in" else (b.point, a.point))
    return seams


def decorate(web, reverse_for=()):
    """Web with seams attached on every circle by b_admissible_decoration."""
    seams = {}
    for k in range(len(web.circles)):
        for p, q in b_admissible_decoration(web, k, reverse=k in reverse_for):
            seams[p] = q
            seams[q] = p
    return Web(web.lines, web.edges, web.curves, web.dots, seams)


# -- text records -----------------------------------------------------------------

def to_records(web, ids=None):
    """One line per circle, phantom arc, seam and phantom circle."""
    lines = []
    tid = {p: f"t{k}" for k, p in enumerate(sorted(web.trivalent))}
    for k, c in enumerate(web.circles):
        parent = "root" if c.parent is None else f"c{c.parent}"
        base = f"{c.base[0]}:{c.base[1]}"
        dot = int(c.base in web.dots)
        ev = ", ".join(f"{tid[a.point]}:{a.direction}:{a.side}" for a in web.attachments(k))
        lines.append(f"circle c{k} parent={parent} base={base} dot={dot} events=[{ev}]")
    for cv in web.curves:
        if not cv.closed:
            lines.append(f"parc {tid[cv.src]}-{tid[cv.dst]}")
    done = set()
    for p, q in sorted(web.seams.items()):
        if p in done:
            continue
        done.update((p, q))
        d_in = web.curve_at.get(p, (None, None))[1] == "in"
        a, b = (p, q) if d_in else (q, p)
        orient = "fwd" if tid[a] < tid[b] else "rev"
        lines.append(f"seam {min(tid[p], tid[q])}-{max(tid[p], tid[q])} orient={orient}")
    for cv in web.curves:
        if cv.closed:
            probe = cv.points[0]
            face = "outer"
            for k, c in enumerate(web.circles):
                if inside((probe[0] + EPS / 3, probe[1] + EPS / 5), c.polygon):
                    face = f"c{k}"
            lines.append(f"pcirc orient={cv.orientation()} face={face}")
    if web.lines > 1:
        lines.append("line bottom")
        lines.append("line top")
    return lines
