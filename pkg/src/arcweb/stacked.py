"""
Stacked circle diagrams and the surgery procedure shared by A and Ā.

Stacking c_b λ d* under d μ c_t* gives two vertex lines. A node is a pair
(level, x): level 0 carries c_b below and d* above, level 1 carries d below
and c_t above. A surgery on the middle pair d-arc (i, j) removes the cap
(0,i)-(0,j) and the cup (1,i)-(1,j) and inserts the verticals (0,i)-(1,i)
and (0,j)-(1,j). Markers on the pair disappear.

The sign rules are supplied by a ``SignRule`` so that the same engine runs
both multiplications.
"""

from dataclasses import dataclass, field
from itertools import permutations

from .diagrams import (DOWN, UP, DiagramError, OrientedCircleDiagram)


class EligibilityError(DiagramError):
    """Requested surgery pair is not available."""


@dataclass(frozen=True)
class Edge:
    a: tuple
    b: tuple
    kind: str           # "cup", "cap" or "vert"
    marked: bool = False

    @property
    def length(self):
        return abs(self.a[1] - self.b[1])

    def other(self, node):
        return self.b if node == self.a else self.a


@dataclass
class StackedCircle:
    nodes: list          # traversal order from the base point
    edges: list          # edges[k] joins nodes[k] and nodes[k+1] (cyclically)
    parent: object = None

    @property
    def base(self):
        return self.nodes[0]

    @property
    def markers(self):
        return sum(1 for e in self.edges if e.marked)


class SurgeryCase:
    NON_NESTED_MERGE = "non-nested merge"
    NESTED_MERGE = "nested merge"
    NON_NESTED_SPLIT = "non-nested split"
    NESTED_SPLIT_REVERSED_C = "nested split, reversed C shape"
    NESTED_SPLIT_C = "nested split, C shape"


@dataclass(frozen=True)
class Surgery:
    """What one surgery step did; passed to the sign rule."""
    pair: object            # the middle Arc (i, j)
    case: str
    before: "SurgeryState"
    after: "SurgeryState"
    old: tuple              # indices (in before.circles) of the affected circles
    new: tuple              # indices (in after.circles); for splits (C_i, C_j)


def base_node(nodes, tie_level):
    """Rightmost node; on a tie between the two levels prefer tie_level."""
    return max(nodes, key=lambda n: (n[1], n[0] == tie_level))


@dataclass
class SurgeryState:
    """Stacked diagram shape plus the remaining middle pairs.

    Orientations live outside the state as dicts node -> label, since every
    term of a partial product shares the shape.
    """
    rank: int
    edges: list
    remaining: list          # remaining middle arcs of d, sorted
    tie_level: int = 1
    _circles: list = field(default=None, repr=False)

    @classmethod
    def stack(cls, bottom, middle, top, tie_level=1):
        if not (bottom.rank == middle.rank == top.rank):
            raise DiagramError("ranks differ")
        edges = []
        for a in bottom.arcs:
            edges.append(Edge((0, a.left), (0, a.right), "cup", a.marked))
        for a in middle.arcs:
            edges.append(Edge((0, a.left), (0, a.right), "cap", a.marked))
            edges.append(Edge((1, a.left), (1, a.right), "cup", a.marked))
        for a in top.arcs:
            edges.append(Edge((1, a.left), (1, a.right), "cap", a.marked))
        return cls(bottom.rank, edges, sorted(middle.arcs), tie_level)

    @property
    def nodes(self):
        return [(l, x) for l in (0, 1) for x in range(1, 2 * self.rank + 1)]

    def incident(self):
        inc = {n: [] for n in self.nodes}
        for e in self.edges:
            inc[e.a].append(e)
            inc[e.b].append(e)
        return inc

    @property
    def circles(self):
        if self._circles is None:
            self._circles = self._trace()
        return self._circles

    def _trace(self):
        inc = self.incident()
        seen = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = []
            stack = [start]
            seen.add(start)
            while stack:
                n = stack.pop()
                comp.append(n)
                for e in inc[n]:
                    m = e.other(n)
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            comps.append(comp)
        out = []
        for comp in comps:
            b = base_node(comp, self.tie_level)
            nodes, edges = [b], []
            # leave the base point along the edge above it
            first = max(inc[b], key=lambda e: _above(e, b))
            prev_e, cur = first, first.other(b)
            edges.append(first)
            while cur != b:
                nodes.append(cur)
                e0, e1 = inc[cur]
                prev_e = e1 if e0 is prev_e else e0
                edges.append(prev_e)
                cur = prev_e.other(cur)
            out.append(StackedCircle(nodes, edges))
        # nesting: A inside B iff B has an odd number of nodes right of a node of A on that level
        inside = []
        for k, c in enumerate(out):
            lvl, x = c.nodes[0]
            inside.append({m for m, o in enumerate(out)
                           if m != k and sum(1 for (l2, y) in o.nodes if l2 == lvl and y > x) % 2})
        for k, c in enumerate(out):
            c.parent = max(inside[k], key=lambda m: len(inside[m]), default=None)
        return out

    def circle_of(self, node):
        for k, c in enumerate(self.circles):
            if node in c.nodes:
                return k
        raise KeyError(node)

    def encloses(self, outer, inner):
        """True iff circle index ``inner`` lies inside circle ``outer``."""
        p = self.circles[inner].parent
        while p is not None:
            if p == outer:
                return True
            p = self.circles[p].parent
        return False

    def eligible(self, strict=True):
        """Remaining pairs that can be connected without crossing arcs.

        With ``strict`` a pair also needs no remaining marked pair to its right.
        """
        out = []
        for a in self.remaining:
            if any(b.encloses(a) for b in self.remaining):
                continue
            if strict and any(b.marked and b.left > a.right for b in self.remaining):
                continue
            out.append(a)
        return out

    def after_surgery(self, pair):
        edges = [e for e in self.edges
                 if not (e.kind in ("cap", "cup") and e.a[1] == pair.left and e.b[1] == pair.right
                         and ((e.kind == "cap" and e.a[0] == 0) or (e.kind == "cup" and e.a[0] == 1)))]
        if len(edges) != len(self.edges) - 2:
            raise EligibilityError(f"pair {pair} not present")
        edges.append(Edge((0, pair.left), (1, pair.left), "vert"))
        edges.append(Edge((0, pair.right), (1, pair.right), "vert"))
        rem = [a for a in self.remaining if a != pair]
        return SurgeryState(self.rank, edges, rem, self.tie_level)

    # -- paths and labels ----------------------------------------------------

    def path(self, src, dst):
        """Edges along the circle from src to dst, walking in traversal direction."""
        c = self.circles[self.circle_of(src)]
        if dst not in c.nodes:
            raise DiagramError(f"{src} and {dst} lie on different circles")
        n = len(c.nodes)
        k = c.nodes.index(src)
        out = []
        while c.nodes[k] != dst:
            out.append(c.edges[k])
            k = (k + 1) % n
        return out

    def relabel(self, labels, circle_index, clockwise):
        """Copy of labels with one circle re-oriented from its base point."""
        c = self.circles[circle_index]
        out = dict(labels)
        lab = DOWN if clockwise else UP
        for node, e in zip(c.nodes, c.edges):
            out[node] = lab
            if e.kind != "vert" and not e.marked:
                lab = UP if lab == DOWN else DOWN
        if lab != (DOWN if clockwise else UP):
            raise DiagramError("circle with odd marker count cannot be oriented")
        return out

    def is_clockwise(self, labels, circle_index):
        return labels[self.circles[circle_index].base] == DOWN

    def orientable(self, circle_index):
        return self.circles[circle_index].markers % 2 == 0


def _above(e, node):
    """Sort key choosing the edge leaving ``node`` upwards."""
    lvl = node[0]
    if e.kind == "vert":
        return 1 if lvl == 0 else 0
    return 1 if e.kind == "cap" else 0


def path_stats(edges):
    """(typeDlen, foamlen) of a path of stacked edges; verticals have length 0."""
    t = f = 0
    for e in edges:
        if e.kind == "vert":
            continue
        if e.marked:
            f += e.length
        else:
            t += e.length
    return t, f


def classify(before, after, pair):
    """Case label and affected circles of a surgery on ``pair``."""
    cap_c = before.circle_of((0, pair.left))
    cup_c = before.circle_of((1, pair.left))
    if cap_c != cup_c:
        nested = before.encloses(cap_c, cup_c) or before.encloses(cup_c, cap_c)
        new = (after.circle_of((0, pair.left)),)
        case = SurgeryCase.NESTED_MERGE if nested else SurgeryCase.NON_NESTED_MERGE
        return case, (cap_c, cup_c), new
    ci = after.circle_of((0, pair.left))
    cj = after.circle_of((0, pair.right))
    if after.encloses(ci, cj):
        case = SurgeryCase.NESTED_SPLIT_REVERSED_C
    elif after.encloses(cj, ci):
        case = SurgeryCase.NESTED_SPLIT_C
    else:
        case = SurgeryCase.NON_NESTED_SPLIT
    return case, (cap_c,), (ci, cj)


def initial_labels(weight_bottom, weight_top):
    labels = {}
    for x, s in enumerate(weight_bottom, 1):
        labels[(0, x)] = s
    for x, s in enumerate(weight_top, 1):
        labels[(1, x)] = s
    return labels


def run(x, y, rule, order="leftmost", strict=True, tie_level=1):
    """Multiply two basis elements with the surgery procedure.

    ``order`` is "leftmost" or an explicit sequence of middle arcs (or
    (left, right) pairs). Returns a dict OrientedCircleDiagram -> int.
    """
    if x.top != y.bottom:
        return {}
    state = SurgeryState.stack(x.bottom, x.top, y.top, tie_level)
    terms = [(1, initial_labels(x.weight, y.weight))]
    explicit = None if order == "leftmost" else list(order)
    while state.remaining:
        elig = state.eligible(strict)
        if explicit is None:
            pair = min(elig, key=lambda a: (a.left, a.right))
        else:
            if not explicit:
                raise EligibilityError("explicit order is too short")
            want = explicit.pop(0)
            lr = (want.left, want.right) if hasattr(want, "left") else tuple(want)
            match = [a for a in elig if (a.left, a.right) == lr]
            if not match:
                raise EligibilityError(f"pair {lr[0]}-{lr[1]} is not eligible")
            pair = match[0]
        after = state.after_surgery(pair)
        case, old, new = classify(state, after, pair)
        step = Surgery(pair, case, state, after, old, new)
        nxt = []
        for coeff, labels in terms:
            for c2, lab2 in rule(step, labels):
                if c2:
                    nxt.append((coeff * c2, lab2))
        terms = nxt
        state = after
        if not terms:
            return {}
    out = {}
    for coeff, labels in terms:
        w = "".join(labels[(0, k)] for k in range(1, 2 * state.rank + 1))
        e = OrientedCircleDiagram(x.bottom, w, y.top)
        out[e] = out.get(e, 0) + coeff
    return {e: c for e, c in out.items() if c}


def surgery_orders(middle, strict=False):
    """All admissible surgery orders for a middle cup diagram."""
    arcs = sorted(middle.arcs)
    out = []

    def rec(rem, acc):
        if not rem:
            out.append(tuple(acc))
            return
        for a in rem:
            if any(b.encloses(a) for b in rem):
                continue
            if strict and any(b.marked and b.left > a.right for b in rem):
                continue
            rec([b for b in rem if b != a], acc + [a])
    rec(arcs, [])
    return out
