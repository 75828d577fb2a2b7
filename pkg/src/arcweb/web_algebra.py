"""
The combinatorial web algebra cW on the webs of type D circle diagrams.

A basis element is the closed web of a circle diagram cd* with a dot on
some circles. Multiplication stacks x (line 0) under y (line 1) and works
through the middle section, which holds three kinds of cup-cap pairs:

* ordinary pairs: a cap of x and the matching cup of y;
* singular pairs: the same for a marked arc, whose two trivalent vertices
  must be joined by a direct phantom edge before the surgery;
* phantom pairs: a closing phantom arc of x above its line and the
  matching closing arc of y below its line (the leftover pair running
  around the left counts as one of them).

A pair is available when no remaining pair encloses it, and the leftmost
available pair is taken first. Phantom surgery joins the phantom arcs
vertically; ordinary and singular surgery replace the ordinary cap and cup
by two verticals and apply the signs below.
"""

from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

from .diagrams import (CircleDiagram, CupDiagram, DiagramError, OrientedCircleDiagram,
                       orient_circle)
from .embedding import EVEN_CUP, LEFT_X, raw_web
from .linear import LinearCombination, bilinear
from .stacked import SurgeryCase
from .webs import (SPACING, PhantomCurve, Web, WebEdge, WebError, nploop, npcirc,
                   npedge, npsad, psadtype)


class WordError(DiagramError):
    """Webs with different boundary words cannot be multiplied."""


EMPTY_CUP = CupDiagram(())


# -- basis --------------------------------------------------------------------------

@dataclass(frozen=True)
class WebBasisElement:
    """Dotted basis web of shape u(bottom) u(top)*; dots are base vertices of dotted circles."""
    bottom: CupDiagram
    top: CupDiagram
    dots: frozenset = frozenset()

    def __post_init__(self):
        bases = {c.base for c in self.diagram.circles}
        if not set(self.dots) <= bases:
            raise DiagramError(f"dots {sorted(self.dots)} not on base points {sorted(bases)}")
        if not self.diagram.is_orientable():
            raise DiagramError(f"{self.diagram} gives an ill oriented web")

    @cached_property
    def diagram(self):
        return CircleDiagram(self.bottom, self.top)

    @property
    def rank(self):
        return self.bottom.rank

    @property
    def word(self):
        return "o" * (2 * self.rank)

    def degree(self):
        """Web degree -#circles + 2 #dots plus the shift d_k = K."""
        return -len(self.diagram.circles) + 2 * len(self.dots) + self.rank

    def to_arc(self):
        """The oriented circle diagram whose clockwise circles are the dotted ones."""
        labels = {}
        for c in self.diagram.circles:
            labels.update(orient_circle(c, c.base in self.dots))
        w = "".join(labels[v] for v in range(1, 2 * self.rank + 1))
        return OrientedCircleDiagram(self.bottom, w, self.top)

    def web(self):
        """The closed dotted basis web (line 0) with dots on the base nodes."""
        if self.rank == 0:
            return Web(1, [], [])
        from .embedding import web_of_diagram
        w = web_of_diagram(self.bottom, self.top)
        return Web(1, w.edges, w.curves, frozenset((0, b) for b in self.dots), w.seams)

    @classmethod
    def parse(cls, text):
        """Inverse of str(): 'cups | dots=b1,b2 | caps' ('dots=-' when undotted)."""
        parts = [p.strip() for p in text.split("|")]
        if len(parts) != 3 or not parts[1].startswith("dots="):
            raise DiagramError(f"expected 'cup | dots=... | cup', got {text!r}")
        body = parts[1][len("dots="):].strip()
        try:
            dots = frozenset() if body in ("", "-") else frozenset(int(t) for t in body.split(","))
        except ValueError:
            raise DiagramError(f"bad dot list {body!r}") from None
        cups = [EMPTY_CUP if not t else CupDiagram.parse(t) for t in (parts[0], parts[2])]
        if cups[0].rank != cups[1].rank:
            raise WordError("bottom and top have different boundary words")
        return cls(cups[0], cups[1], dots)

    def sort_key(self):
        return (self.bottom.sort_key(), self.top.sort_key(), tuple(sorted(self.dots)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        dots = ",".join(str(b) for b in sorted(self.dots)) or "-"
        return f"{self.bottom} | dots={dots} | {self.top}"


def rank_of_word(word):
    """Rank K of a balanced boundary word of 2K ordinary symbols 'o'."""
    if isinstance(word, int):
        if word < 0:
            raise WordError(f"negative rank {word}")
        return word
    if any(s != "o" for s in word) or len(word) % 2:
        raise WordError(f"unbalanced or unsupported boundary word {word!r}")
    return len(word) // 2


def basis(rank, bottom=None, top=None):
    """All dotted basis webs u(c)u(d)* of a rank (or boundary word), canonical order.

    Rank 0 (the empty word) has the single empty web of degree 0.
    """
    from .diagrams import enumerate_cup_diagrams
    rank = rank_of_word(rank)
    if rank == 0:
        return [WebBasisElement(EMPTY_CUP, EMPTY_CUP)]
    cups = enumerate_cup_diagrams(rank)
    out = []
    for c in ([bottom] if bottom is not None else cups):
        for d in ([top] if top is not None else cups):
            D = CircleDiagram(c, d)
            if not D.is_orientable():
                continue
            bases = [cc.base for cc in D.circles]
            for mask in range(1 << len(bases)):
                dots = frozenset(b for t, b in enumerate(bases) if mask >> t & 1)
                out.append(WebBasisElement(c, d, dots))
    out.sort(key=WebBasisElement.sort_key)
    return out


# -- conventions ------------------------------------------------------------------------

@dataclass(frozen=True)
class Conventions:
    """Choices the text leaves to pictures; defaults are the validated ones.

    npsad_negative: direction ('in'/'out', seen from the cup) of a phantom
        edge counted as negative for the left surgery point.
    singular_circle: what the direct phantom edge of a singular surgery
        becomes: None (it vanishes), or a phantom circle that is
        anticlockwise when the edge ran upwards ('up') or downwards ('down').
    even_cup: direction of the phantom edge at an even marked cup.
    """
    npsad_negative: str = "in"
    singular_circle: object = "down"
    even_cup: str = EVEN_CUP
    final_circles: bool = True


DEFAULT = Conventions()


# -- the stacked state ------------------------------------------------------------------

@dataclass(frozen=True)
class PhantomPair:
    left: float
    right: float
    low: float          # height of the closing arc of x (above line 0)
    high: float         # height of the closing arc of y (below line 1)

    @property
    def kind(self):
        return "phantom"

    def __str__(self):
        l = "L" if self.left == LEFT_X else f"{self.left:g}"
        return f"p{l}-{self.right:g}"


Step = namedtuple("Step", "pair case psadtype npsad nploop npcirc before_removal terms web")
"""One surgery of a product: the terms before and after the phantom circle sign,
and the web after the surgery (phantom circles still present)."""


def pair_label(p):
    if isinstance(p, PhantomPair):
        return str(p)
    return f"{p.left}-{p.right}" + ("*" if p.marked else "")


@dataclass
class CWState:
    web: Web
    remaining: list
    rank: int

    @classmethod
    def stack(cls, bottom, middle, top, conv=DEFAULT):
        w0, cl0 = raw_web(bottom, middle, 0, conv.even_cup)
        w1, cl1 = raw_web(middle, top, 1, conv.even_cup)
        web = Web(2, w0.edges + w1.edges, w0.curves + w1.curves)
        lows = {(c.left, c.right): c.height for c in cl0 if c.side == "cap"}
        highs = {(c.left, c.right): c.height for c in cl1 if c.side == "cup"}
        if set(lows) != set(highs):
            raise WebError("closing arcs of the middle section do not match")
        pairs = [PhantomPair(l, r, lows[(l, r)], highs[(l, r)]) for (l, r) in sorted(lows)]
        return cls(web, sorted(middle.arcs) + pairs, bottom.rank)

    def _edge(self, level, kind, arc):
        for e in self.web.edges:
            if e.kind == kind and e.a[0] == level and {e.a[1], e.b[1]} == {arc.left, arc.right}:
                return e
        raise WebError(f"no {kind} {arc} on line {level}")

    def cap_edge(self, arc):
        return self._edge(0, "cap", arc)

    def cup_edge(self, arc):
        return self._edge(1, "cup", arc)

    def direct(self, arc):
        """True when the two trivalent vertices of a marked pair share a straight phantom edge."""
        t0 = self.cap_edge(arc).trivalent_points()
        t1 = self.cup_edge(arc).trivalent_points()
        if len(t0) != 1 or len(t1) != 1:
            return False
        k, _ = self.web.curve_at[t0[0]]
        cv = self.web.curves[k]
        return {cv.src, cv.dst} == {t0[0], t1[0]} and all(p[0] == t0[0][0] for p in cv.points)

    def available(self):
        out = []
        for p in self.remaining:
            l, r = p.left, p.right
            if any(q is not p and q.left < l and r < q.right for q in self.remaining):
                continue
            if not isinstance(p, PhantomPair) and p.marked and not self.direct(p):
                continue
            out.append(p)
        return out


def _span_key(p):
    return (p.left, p.right)


# -- phantom rewiring ------------------------------------------------------------------

def _rebuild(pieces, terminals):
    """Join oriented polylines at shared non-terminal end points into curves."""
    starts = {}
    for k, pts in enumerate(pieces):
        if pts[0] not in terminals:
            if pts[0] in starts:
                raise WebError("phantom edges meet with clashing orientations")
            starts[pts[0]] = k
    used = set()
    curves = []

    def follow(k):
        path = list(pieces[k])
        used.add(k)
        while path[-1] not in terminals and path[-1] != path[0]:
            nxt = starts.get(path[-1])
            if nxt is None or nxt in used:
                raise WebError("dangling phantom edge")
            used.add(nxt)
            path.extend(pieces[nxt][1:])
        return path

    for k, pts in enumerate(pieces):
        if k not in used and pts[0] in terminals:
            path = follow(k)
            curves.append(PhantomCurve(tuple(path), path[0], path[-1]))
    for k in range(len(pieces)):
        if k not in used:
            path = follow(k)
            curves.append(PhantomCurve(tuple(path[:-1])))
    return curves


def _pieces(web):
    out = []
    for cv in web.curves:
        pts = list(cv.points)
        if cv.closed:
            pts = pts + [pts[0]]
        out.append(pts)
    return out


def _terminals(web):
    t = set(web.trivalent)
    for cv in web.curves:
        for p in (cv.src, cv.dst):
            if p is not None and p not in web.trivalent:
                t.add(p)
    return t


def _split(pts, cuts):
    """Pieces of an open polyline after removing the segments pts[t] -> pts[t+1]."""
    out, start = [], 0
    for t in cuts:
        out.append(pts[start:t + 1])
        start = t + 1
    out.append(pts[start:])
    return out


def phantom_surgery(state, pair):
    """Join the two closing arcs of a phantom pair by verticals. Returns (state, sign)."""
    web = state.web
    pieces = []
    found = {}
    for k, cv in enumerate(web.curves):
        pts = list(cv.points)
        closed = cv.closed
        if closed:
            pts = pts + [pts[0]]
        cuts = []
        for t in range(len(pts) - 1):
            a, b = pts[t], pts[t + 1]
            for h, tag in ((pair.low, "x"), (pair.high, "y")):
                if a[1] == b[1] == h and {a[0], b[0]} == {pair.left, pair.right}:
                    cuts.append(t)
                    found[tag] = k
        if not cuts:
            pieces.append(pts)
            continue
        if closed:
            # open the loop at the first removed segment
            c0, n = cuts[0], len(pts) - 1
            pts = pts[c0 + 1:-1] + pts[:c0 + 1]
            cuts = sorted((t - c0 - 1) % n for t in cuts[1:])
        pieces.extend(_split(pts, cuts))
    if set(found) != {"x", "y"}:
        raise WebError(f"phantom pair {pair} not found")
    sign = -1 if found["x"] == found["y"] else 1
    # verticals: a piece ending at (s, low) continues upwards to (s, high), and the other way round
    ends = {p[-1] for p in pieces}
    for s in (pair.left, pair.right):
        lo, hi = (s, pair.low), (s, pair.high)
        if lo in ends:
            pieces.append([lo, hi])
        elif hi in ends:
            pieces.append([hi, lo])
        else:
            raise WebError("phantom pair with clashing orientations")
    curves = _rebuild(pieces, _terminals(web))
    remaining = [p for p in state.remaining if p is not pair]
    new = Web(2, web.edges, curves)
    return CWState(new, remaining, state.rank), sign


def ordinary_surgery(state, arc, conv=DEFAULT):
    """Replace the cap and cup of a (possibly singular) pair by verticals.

    Returns the new state; for a singular pair the direct phantom edge is
    removed and, depending on the conventions, left behind as a phantom circle.
    """
    web = state.web
    cap, cup = state.cap_edge(arc), state.cup_edge(arc)
    edges = [e for e in web.edges if e is not cap and e is not cup]
    edges.append(WebEdge((0, arc.left), (1, arc.left), "vert"))
    edges.append(WebEdge((0, arc.right), (1, arc.right), "vert"))
    curves = list(web.curves)
    if arc.marked:
        t0 = cap.trivalent_points()[0]
        k, d = web.curve_at[t0]
        cv = curves.pop(k)
        upward = d == "out"       # the edge leaves the lower vertex
        if conv.singular_circle is not None:
            ccw = upward == (conv.singular_circle == "up")
            m = t0[0]
            y0, y1 = t0[1] + 0.5, SPACING - (t0[1]) - 0.5
            rect = [(m - 0.25, y0), (m + 0.25, y0), (m + 0.25, y1), (m - 0.25, y1)]
            if not ccw:
                rect = rect[::-1]
            curves.append(PhantomCurve(tuple(rect)))
    remaining = [p for p in state.remaining if p is not arc]
    return CWState(Web(2, edges, curves), remaining, state.rank)


# -- one signed surgery step --------------------------------------------------------------

def classify_cw(before, after, arc):
    bw, aw = before.web, after.web
    i, j = arc.left, arc.right
    cb = bw.circle_index((0, i))
    ct = bw.circle_index((1, i))
    if cb != ct:
        nested = bw.encloses(cb, ct) or bw.encloses(ct, cb)
        case = SurgeryCase.NESTED_MERGE if nested else SurgeryCase.NON_NESTED_MERGE
        return case, (cb, ct), (aw.circle_index((0, i)),)
    ci = aw.circle_index((0, i))
    cj = aw.circle_index((0, j))
    if aw.encloses(ci, cj):
        case = SurgeryCase.NESTED_SPLIT_REVERSED_C
    elif aw.encloses(cj, ci):
        case = SurgeryCase.NESTED_SPLIT_C
    else:
        case = SurgeryCase.NON_NESTED_SPLIT
    return case, (cb,), (ci, cj)


def _base(web, k):
    return web.circles[k].base


def surgery_step(before, arc, terms, conv=DEFAULT, trace=None):
    """Apply one ordinary/singular surgery to every term (coeff, dotted base nodes)."""
    after = ordinary_surgery(before, arc, conv)
    case, old, new = classify_cw(before, after, arc)
    bw, aw = before.web, after.web
    i, j = arc.left, arc.right
    cup = before.cup_edge(arc)
    ptype = psadtype(bw, cup)
    sad_i = npsad(bw, cup, True, conv.npsad_negative)
    sad_j = npsad(bw, cup, False, conv.npsad_negative)
    out = []
    if len(old) == 2:
        cb, ct = old
        af = new[0]
        b_af = _base(aw, af)
        extra = loop = 0
        if case == SurgeryCase.NESTED_MERGE:
            inner = ct if bw.encloses(cb, ct) else cb
            pt = (1, i) if inner == ct else (0, i)
            loop = nploop(bw, inner, pt)
            extra = loop + ptype + sad_i
        for coeff, dots in terms:
            db, dt = _base(bw, cb) in dots, _base(bw, ct) in dots
            rest = frozenset(dots) - {_base(bw, cb), _base(bw, ct)}
            rest = _rebase(bw, aw, rest)
            if db and dt:
                continue
            e = extra
            if db or dt:
                src = _base(bw, cb) if db else _base(bw, ct)
                e += npedge(aw, src, b_af)
                rest = rest | {b_af}
            out.append((coeff * (-1) ** e, rest))
        _note(trace, Step(pair_label(arc), case, ptype, sad_i, loop, 0, out, out, aw))
        return after, out
    be = old[0]
    ci, cj = new
    if len(aw.circles[ci].trivalent()) % 2 or len(aw.circles[cj].trivalent()) % 2:
        return after, []
    b_i, b_j = _base(aw, ci), _base(aw, cj)
    len_i = npedge(aw, (0, i), b_i)
    len_j = npedge(aw, (0, j), b_j)
    circ = loop = 0
    full = aw
    if case in (SurgeryCase.NESTED_SPLIT_REVERSED_C, SurgeryCase.NESTED_SPLIT_C):
        circ = npcirc(aw)
        aw = Web(2, aw.edges, [cv for cv in aw.curves if not cv.closed])
        after = CWState(aw, after.remaining, after.rank)
    for coeff, dots in terms:
        dotted = _base(bw, be) in dots
        rest = _rebase(bw, aw, frozenset(dots) - {_base(bw, be)})
        if case == SurgeryCase.NON_NESTED_SPLIT:
            if not dotted:
                out.append((coeff * (-1) ** (len_i + sad_i), rest | {b_i}))
                out.append((coeff * (-1) ** (len_j + ptype + sad_i), rest | {b_j}))
            else:
                if _base(bw, be) in aw.circles[ci].nodes:
                    e = len_j + sad_j
                else:
                    e = len_i + sad_i
                out.append((coeff * (-1) ** e, rest | {b_i, b_j}))
        elif case == SurgeryCase.NESTED_SPLIT_REVERSED_C:
            loop = nploop(aw, cj, (0, j))
            if not dotted:
                out.append((coeff * (-1) ** (len_i + loop + ptype), rest | {b_i}))
                out.append((coeff * (-1) ** (len_j + loop), rest | {b_j}))
            else:
                out.append((coeff * (-1) ** (len_j + loop), rest | {b_i, b_j}))
        else:
            loop = nploop(aw, ci, (0, i))
            if not dotted:
                out.append((coeff * (-1) ** (len_i + loop), rest | {b_i}))
                out.append((coeff * (-1) ** (len_j + loop + ptype), rest | {b_j}))
            else:
                out.append((coeff * (-1) ** (len_i + loop), rest | {b_i, b_j}))
    signed = [(c * (-1) ** circ, d) for c, d in out]
    _note(trace, Step(pair_label(arc), case, ptype, sad_i, loop, circ, out, signed, full))
    return after, signed


def _note(trace, step):
    if trace is not None:
        trace.append(step)


def _rebase(bw, aw, bases):
    """Base nodes of the circles (after a surgery) holding the given old base nodes."""
    return frozenset(_base(aw, aw.circle_index(b)) for b in bases)


# -- multiplication ----------------------------------------------------------------------

def cw_orders(middle, conv=DEFAULT):
    """All admissible surgery orders for a middle cup diagram (as pair labels)."""
    state = CWState.stack(middle, middle, middle, conv)
    out = []

    def rec(st, acc):
        if not st.remaining:
            out.append(tuple(acc))
            return
        for p in st.available():
            if isinstance(p, PhantomPair):
                nxt, _ = phantom_surgery(st, p)
            else:
                nxt = ordinary_surgery(st, p, conv)
            rec(nxt, acc + [pair_label(p)])
    rec(state, [])
    return out


def multiply_cW(x, y, order="leftmost", conv=DEFAULT, trace=None):
    """Product of two dotted basis webs, as a LinearCombination of WebBasisElement."""
    if x.rank != y.rank:
        raise WordError(f"boundary words differ: {x.word} vs {y.word}")
    if x.top != y.bottom:
        return LinearCombination.zero()
    state = CWState.stack(x.bottom, x.top, y.top, conv)
    terms = [(1, _initial_dots(state, x, y))]
    explicit = None if order == "leftmost" else [str(o) for o in order]
    while state.remaining:
        avail = state.available()
        if not avail:
            raise WebError("no available cup-cap pair")
        if explicit is None:
            pair = min(avail, key=_span_key)
        else:
            if not explicit:
                raise WebError("explicit order is too short")
            want = explicit.pop(0)
            match = [p for p in avail if pair_label(p) == want]
            if not match:
                raise WebError(f"pair {want} is not available")
            pair = match[0]
        if isinstance(pair, PhantomPair):
            state, s = phantom_surgery(state, pair)
            before = terms
            terms = [(c * s, dots) for c, dots in terms]
            _note(trace, Step(pair_label(pair), "phantom", 0, 0, 0, 0, before, terms, state.web))
            continue
        state, terms = surgery_step(state, pair, terms, conv, trace)
        if not terms:
            return LinearCombination.zero()
    if conv.final_circles:
        circ = npcirc(state.web)
        before = terms
        terms = [(c * (-1) ** circ, dots) for c, dots in terms]
        final = Web(2, state.web.edges, [cv for cv in state.web.curves if not cv.closed])
        _note(trace, Step("end", "phantom circle removal", 0, 0, 0, circ, before, terms, final))
    out = {}
    for coeff, dots in terms:
        e = WebBasisElement(x.bottom, y.top, frozenset(b[1] for b in dots))
        out[e] = out.get(e, 0) + coeff
    return LinearCombination(out)


def _initial_dots(state, x, y):
    web = state.web
    out = set()
    for b in x.dots:
        out.add(_base(web, web.circle_index((0, b))))
    for b in y.dots:
        out.add(_base(web, web.circle_index((1, b))))
    return frozenset(out)


def mult_cW(x, y, order="leftmost", conv=DEFAULT):
    """Bilinear product on WebBasisElement or LinearCombination operands."""
    if isinstance(x, WebBasisElement) and isinstance(y, WebBasisElement):
        return multiply_cW(x, y, order, conv)
    lx = x if isinstance(x, LinearCombination) else LinearCombination.single(x)
    ly = y if isinstance(y, LinearCombination) else LinearCombination.single(y)
    return bilinear(lambda a, b: multiply_cW(a, b, order, conv), lx, ly)
