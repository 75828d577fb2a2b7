"""
Weights, blocks, cup/cap/circle diagrams and their orientations.

Vertices are the integers 1..2K on a horizontal line. A cup diagram is a
crossingless perfect matching of these vertices drawn below the line; a
cap diagram is the same data drawn above it. Arcs may carry a marker when
they are not nested inside any other arc.

Text notation:
    weight        "^v^v"
    cup diagram   "1-4* 2-3"        (a trailing * marks the arc)
    circle diagram with orientation   "1-2 3-4 | ^v^v | 1-4 2-3"
"""

from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property
from itertools import product

UP = "^"
DOWN = "v"


class DiagramError(ValueError):
    """Malformed weight, diagram or orientation."""


Block = namedtuple("Block", "rank parity")


# -- weights ------------------------------------------------------------------

def check_weight(w):
    if not w or len(w) % 2 or any(s not in (UP, DOWN) for s in w):
        raise DiagramError(f"not a weight: {w!r}")
    return w


def block_of(w):
    """The block (rank, parity of the number of ^) containing the weight."""
    check_weight(w)
    return Block(len(w) // 2, w.count(UP) % 2)


def weights_of_block(block):
    K, parity = block
    out = []
    for labels in product((UP, DOWN), repeat=2 * K):
        if labels.count(UP) % 2 == parity:
            out.append("".join(labels))
    return out


# -- arcs and cup diagrams ------------------------------------------------------

@dataclass(frozen=True, order=True)
class Arc:
    left: int
    right: int
    marked: bool = False

    def __post_init__(self):
        if not self.left < self.right:
            raise DiagramError(f"arc endpoints out of order: {self.left}-{self.right}")

    @property
    def length(self):
        return self.right - self.left

    def encloses(self, other):
        return self.left < other.left and other.right < self.right

    def __str__(self):
        return f"{self.left}-{self.right}" + ("*" if self.marked else "")


def typed_stats(path):
    """(typeDlen, foamlen, typeDtype, foamtype) of a sequence of arcs.

    The two lengths add |i-j| over unmarked resp. marked arcs. The two
    types are the indicator bits of the last arc in the sequence, which
    for a single arc are its unmarked/marked saddle types.
    """
    path = list(path)
    if not path:
        raise DiagramError("empty arc path")
    tlen = flen = 0
    for a in path:
        if not isinstance(a, Arc):
            raise DiagramError(f"not an arc: {a!r}")
        if a.marked:
            flen += a.length
        else:
            tlen += a.length
    last = path[-1]
    return tlen, flen, int(not last.marked), int(last.marked)


@dataclass(frozen=True)
class CupDiagram:
    arcs: tuple

    def __post_init__(self):
        arcs = tuple(sorted(self.arcs))
        object.__setattr__(self, "arcs", arcs)
        ends = sorted(v for a in arcs for v in (a.left, a.right))
        if ends != list(range(1, 2 * len(arcs) + 1)):
            raise DiagramError(f"arcs do not match 1..{2 * len(arcs)}: {self}")
        for a in arcs:
            for b in arcs:
                if a.left < b.left < a.right < b.right:
                    raise DiagramError(f"crossing arcs {a} and {b}")
        for a in arcs:
            if a.marked and self.is_nested(a):
                raise DiagramError(f"marker on nested arc {a}")

    @classmethod
    def parse(cls, text):
        arcs = []
        for tok in text.split():
            marked = tok.endswith("*")
            body = tok[:-1] if marked else tok
            try:
                l, r = (int(t) for t in body.split("-"))
            except ValueError:
                raise DiagramError(f"bad arc token {tok!r}") from None
            arcs.append(Arc(min(l, r), max(l, r), marked))
        if not arcs:
            raise DiagramError("empty cup diagram")
        return cls(tuple(arcs))

    def __str__(self):
        return " ".join(str(a) for a in self.arcs)

    @property
    def rank(self):
        return len(self.arcs)

    @cached_property
    def partner(self):
        p = {}
        for a in self.arcs:
            p[a.left] = a.right
            p[a.right] = a.left
        return p

    @cached_property
    def arc_at(self):
        m = {}
        for a in self.arcs:
            m[a.left] = m[a.right] = a
        return m

    def is_nested(self, arc):
        return any(b.encloses(arc) for b in self.arcs)

    def sort_key(self):
        bits = sum(1 << k for k, a in enumerate(self.arcs) if a.marked)
        return (tuple((a.left, a.right) for a in self.arcs), bits)


def noncrossing_matchings(n):
    """All crossingless perfect matchings of 1..n as sorted pair tuples."""
    def rec(points):
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inside, outside = points[1:k], points[k + 1:]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    yield ((first, points[k]),) + m1 + m2
    return [tuple(sorted(m)) for m in rec(list(range(1, n + 1)))]


def enumerate_cup_diagrams(K):
    """Every cup diagram of rank K with every admissible marker set, in canonical order."""
    if K < 1:
        raise DiagramError("rank must be positive")
    out = []
    for m in noncrossing_matchings(2 * K):
        outer = [k for k, (l, r) in enumerate(m)
                 if not any(l2 < l and r < r2 for l2, r2 in m)]
        for bits in range(1 << len(outer)):
            marks = {outer[t] for t in range(len(outer)) if bits >> t & 1}
            out.append(CupDiagram(tuple(Arc(l, r, k in marks) for k, (l, r) in enumerate(m))))
    out.sort(key=CupDiagram.sort_key)
    return out


# -- circle diagrams ------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    vertices: tuple     # traversal starting at the base point, cap side first
    arcs: tuple         # (side, Arc) in traversal order; side is "cup" or "cap"
    parent: object      # index of the enclosing circle or None

    @property
    def base(self):
        return self.vertices[0]

    @property
    def markers(self):
        return sum(1 for _, a in self.arcs if a.marked)


@dataclass(frozen=True)
class CircleDiagram:
    bottom: CupDiagram
    top: CupDiagram

    def __post_init__(self):
        if self.bottom.rank != self.top.rank:
            raise DiagramError("cup and cap diagram ranks differ")

    @property
    def rank(self):
        return self.bottom.rank

    @cached_property
    def circles(self):
        return _trace_circles(self.bottom, self.top)

    @cached_property
    def circle_of(self):
        m = {}
        for k, c in enumerate(self.circles):
            for v in c.vertices:
                m[v] = k
        return m

    def is_orientable(self):
        return all(c.markers % 2 == 0 for c in self.circles)

    @cached_property
    def orientations(self):
        return _orientations(self)

    def __str__(self):
        return f"{self.bottom} | {self.top}"


def circles(D):
    return D.circles


def orientations(D):
    return list(D.orientations)


def _trace_circles(cup, cap):
    seen = set()
    found = []
    for start in range(2 * cup.rank, 0, -1):
        if start in seen:
            continue
        verts, arcs = [], []
        v, side = start, "cap"
        while True:
            verts.append(v)
            seen.add(v)
            diag = cap if side == "cap" else cup
            a = diag.arc_at[v]
            arcs.append((side, a))
            v = diag.partner[v]
            side = "cup" if side == "cap" else "cap"
            if v == start:
                break
        found.append((tuple(verts), tuple(arcs)))
    # a circle A lies inside B iff B has an odd number of vertices right of a vertex of A
    inside = []
    for k, (verts, _) in enumerate(found):
        v = verts[0]
        inside.append({m for m, (w, _) in enumerate(found)
                       if m != k and sum(1 for x in w if x > v) % 2})
    out = []
    for k, (verts, arcs) in enumerate(found):
        parent = max(inside[k], key=lambda m: len(inside[m]), default=None)
        out.append(Circle(verts, arcs, parent))
    return tuple(out)


def _propagate(circle, base_label):
    labels = {}
    lab = base_label
    for v, (_, a) in zip(circle.vertices, circle.arcs):
        labels[v] = lab
        if not a.marked:
            lab = UP if lab == DOWN else DOWN
    if lab != base_label:
        return None
    return labels


def _orientations(D):
    if not D.is_orientable():
        return ()
    per_circle = []
    for c in D.circles:
        per_circle.append([_propagate(c, UP), _propagate(c, DOWN)])
    out = []
    for choice in product(*per_circle):
        labels = {}
        for part in choice:
            labels.update(part)
        out.append("".join(labels[v] for v in range(1, 2 * D.rank + 1)))
    return tuple(sorted(out))


def orient_circle(circle, clockwise):
    """Labels on the vertices of one circle making it (anti)clockwise."""
    labels = _propagate(circle, DOWN if clockwise else UP)
    if labels is None:
        raise DiagramError("circle with an odd number of markers has no orientation")
    return labels


def is_clockwise(circle, weight):
    return weight[circle.base - 1] == DOWN


def is_oriented(D, weight):
    """Unmarked arcs join ^ and v, marked arcs join equal labels."""
    if len(weight) != 2 * D.rank:
        return False
    for diag in (D.bottom, D.top):
        for a in diag.arcs:
            same = weight[a.left - 1] == weight[a.right - 1]
            if same != a.marked:
                return False
    return True


def arc_degree(arc, weight):
    """Local degree of one cup or cap under the weight."""
    l, r = weight[arc.left - 1], weight[arc.right - 1]
    if arc.marked:
        return int(l == DOWN and r == DOWN)
    return int(l == UP and r == DOWN)


@dataclass(frozen=True)
class OrientedCircleDiagram:
    bottom: CupDiagram
    weight: str
    top: CupDiagram

    def __post_init__(self):
        check_weight(self.weight)
        if not is_oriented(self.diagram, self.weight):
            raise DiagramError(f"{self.weight} does not orient {self.diagram}")

    @cached_property
    def diagram(self):
        return CircleDiagram(self.bottom, self.top)

    @property
    def block(self):
        return block_of(self.weight)

    @classmethod
    def parse(cls, text):
        parts = [p.strip() for p in text.split("|")]
        if len(parts) != 3:
            raise DiagramError(f"expected 'cup | weight | cup', got {text!r}")
        return cls(CupDiagram.parse(parts[0]), check_weight(parts[1]), CupDiagram.parse(parts[2]))

    def __str__(self):
        return f"{self.bottom} | {self.weight} | {self.top}"

    def sort_key(self):
        return (self.bottom.sort_key(), self.top.sort_key(), self.weight)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def clockwise(self):
        """Clockwise flag of each circle, in the diagram's circle order."""
        return tuple(is_clockwise(c, self.weight) for c in self.diagram.circles)


def degree(E):
    """Sum of the local arc degrees over cups and caps."""
    return (sum(arc_degree(a, E.weight) for a in E.bottom.arcs)
            + sum(arc_degree(a, E.weight) for a in E.top.arcs))


def basis(block, bottom=None, top=None):
    """All oriented circle diagrams of a block, optionally with fixed cup/cap diagram."""
    K = block.rank
    cups = enumerate_cup_diagrams(K)
    out = []
    for c in ([bottom] if bottom is not None else cups):
        for d in ([top] if top is not None else cups):
            for w in CircleDiagram(c, d).orientations:
                if block_of(w) == block:
                    out.append(OrientedCircleDiagram(c, w, d))
    out.sort(key=OrientedCircleDiagram.sort_key)
    return out


def blocks(K):
    return [Block(K, 0), Block(K, 1)]
