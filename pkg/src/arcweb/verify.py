"""
Verification suites shared by the CLI and the acceptance tests.

Every suite returns a Report with the number of checked instances and a
list of failure descriptions. Randomized parts draw from ``random.Random``
seeded by the caller, so reports are reproducible.
"""

import random
from dataclasses import dataclass, field

from .arc_algebra import mult_A
from .diagrams import (CircleDiagram, basis as arc_basis, blocks, degree,
                       enumerate_cup_diagrams, typed_stats)
from .embedding import is_well_oriented_image, top_bar
from .linear import LinearCombination
from .sign_adjusted import mult_Abar, sign_map
from .stacked import SurgeryCase, surgery_orders
from .web_algebra import (CWState, PhantomPair, basis as web_basis, classify_cw,
                          cw_orders, mult_cW, ordinary_surgery, pair_label,
                          phantom_surgery)
from .webs import nploop, npedge, npsad, psadtype

ALGEBRAS = ("A", "Abar", "cW")
SUITES = ("assoc", "order", "intertwine", "embed", "parity", "stats-conformance")


@dataclass
class Report:
    suite: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def count(self, kind):
        self.checked += 1
        self.counts[kind] = self.counts.get(kind, 0) + 1

    @property
    def ok(self):
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)

    def lines(self, limit=10):
        status = "PASS" if self.ok else "FAIL"
        skip = f", {self.skipped} skipped" if self.skipped else ""
        out = [f"{self.suite}: {status} ({self.checked} checked{skip}, {len(self.failures)} failures)"]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  failure: {f}" for f in self.failures[:limit]]
        return out


# -- bases and products -------------------------------------------------------------

def algebra_basis(algebra, rank):
    """Basis of one algebra in canonical order (both blocks for A and Ā)."""
    if algebra == "cW":
        return web_basis(rank)
    return [e for b in blocks(rank) for e in arc_basis(b)]


def product(algebra, x, y, order="leftmost"):
    if algebra == "A":
        return mult_A(x, y, order)
    if algebra == "Abar":
        return mult_Abar(x, y, order)
    if algebra == "cW":
        return mult_cW(x, y, order)
    raise ValueError(f"unknown algebra {algebra!r}")


def element_degree(e):
    return e.degree() if hasattr(e, "degree") else degree(e)


def composable(x, y):
    same_block = not hasattr(x, "block") or x.block == y.block
    return same_block and x.top == y.bottom


def _by_bottom(els):
    out = {}
    for e in els:
        out.setdefault((e.bottom, getattr(e, "block", None)), []).append(e)
    return out


def composable_pairs(els):
    """All (x, y) with matching middle diagram (and block)."""
    idx = _by_bottom(els)
    return [(x, y) for x in els for y in idx.get((x.top, getattr(x, "block", None)), [])]


def random_triples(els, n, rng):
    """n random composable triples; each factor uniform among the admissible choices."""
    idx = _by_bottom(els)
    out = []
    while len(out) < n:
        x = rng.choice(els)
        ys = idx[(x.top, getattr(x, "block", None))]
        y = rng.choice(ys)
        z = rng.choice(idx[(y.top, getattr(y, "block", None))])
        out.append((x, y, z))
    return out


def check_degrees(rep, x, y, prod):
    """Every term of x*y has degree deg x + deg y."""
    want = element_degree(x) + element_degree(y)
    for e, _ in prod.items():
        if element_degree(e) != want:
            rep.fail(f"degree {element_degree(e)} != {want} for term {e} of ({x})*({y})")


# -- suites -----------------------------------------------------------------------------

def suite_assoc(algebra, rank, samples=None, seed=0):
    """(xy)z == x(yz) on all composable triples, or on ``samples`` random ones."""
    rep = Report(f"assoc[{algebra}, rank {rank}]")
    els = algebra_basis(algebra, rank)
    if samples is None:
        groups = {}
        for e in els:
            groups.setdefault(getattr(e, "block", None), []).append(e)
        triples = [(x, y, z) for g in groups.values() for x in g for y in g for z in g]
    else:
        triples = random_triples(els, samples, random.Random(seed))
    cache = {}

    def mul(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = product(algebra, a, b)
        return cache[key]

    def mul_lc(u, v):
        out = LinearCombination()
        for a, ca in u.items():
            for b, cb in v.items():
                out = out + mul(a, b).scale(ca * cb)
        return out

    for x, y, z in triples:
        rep.checked += 1
        xy, yz = mul(x, y), mul(y, z)
        check_degrees(rep, x, y, xy)
        check_degrees(rep, y, z, yz)
        left = mul_lc(xy, LinearCombination.single(z))
        right = mul_lc(LinearCombination.single(x), yz)
        if left != right:
            rep.fail(f"({x})({y})({z}): (xy)z = {left}, x(yz) = {right}")
    rep.notes.append(f"{len(triples)} {'random composable' if samples else 'basis'} triples")
    return rep


def _orders(algebra, middle, relaxed=False):
    if algebra == "cW":
        return cw_orders(middle)
    return surgery_orders(middle, strict=not relaxed)


def suite_order(algebra, rank, samples=None, seed=0, relaxed=False):
    """All admissible surgery orders give the same product.

    For A the product is order independent only among admissible orders;
    the report also records a witness where relaxing the marked clause
    changes the result.
    """
    rep = Report(f"order[{algebra}, rank {rank}{', relaxed' if relaxed else ''}]")
    els = algebra_basis(algebra, rank)
    pairs = composable_pairs(els)
    if samples is not None:
        pairs = random.Random(seed).sample(pairs, min(samples, len(pairs)))
    cache = {}
    strict = not relaxed
    for x, y in pairs:
        orders = cache.setdefault(x.top, _orders(algebra, x.top, relaxed))
        ref = None
        for o in orders:
            rep.checked += 1
            if algebra == "cW":
                r = mult_cW(x, y, o)
            elif algebra == "A":
                r = mult_A(x, y, o, strict=strict)
            else:
                r = mult_Abar(x, y, o, strict=strict)
            if ref is None:
                ref = r
            elif r != ref:
                rep.fail(f"({x})({y}) order {_fmt_order(o)}: {r} != {ref}")
    if algebra == "A" and not relaxed:
        w = order_witness_A(rank)
        rep.notes.append("A order witness: " + (w if w else "none at this rank"))
    return rep


def _fmt_order(o):
    return ",".join(str(a) for a in o)


def order_witness_A(rank):
    """First product in A whose leftmost result differs from some other surgery order."""
    for x, y in composable_pairs(algebra_basis("A", rank)):
        ref = mult_A(x, y)
        for o in surgery_orders(x.top, strict=False):
            r = mult_A(x, y, o, strict=False)
            if r != ref:
                return f"({x})({y}): leftmost {ref}; order {_fmt_order(o)} gives {r}"
    return None


def suite_intertwine(rank):
    """sign(a *_A b) == sign(a) *_Abar sign(b) on all pairs of a block."""
    rep = Report(f"intertwine[rank {rank}]")
    for b in blocks(rank):
        els = arc_basis(b)
        for x in els:
            for y in els:
                rep.checked += 1
                lhs = sign_map(mult_A(x, y))
                rhs = mult_Abar(sign_map(x), sign_map(y))
                if lhs != rhs:
                    rep.fail(f"({x})({y}): {lhs} != {rhs}")
    return rep


def suite_embed(rank, samples=None, seed=0):
    """Embedding checks.

    (1) top_bar is a single signed basis web of the same degree, injective,
        and bijective onto the dotted basis webs of each orientable shape;
    (2) products with mismatched middles vanish on both sides;
    (3) orientability of cd* matches well-orientedness of its web;
    (4) top_bar(a *_Abar b) == top_bar(a) *_cW top_bar(b).
    """
    rep = Report(f"embed[rank {rank}]")
    els = algebra_basis("Abar", rank)
    images = {}
    for x in els:
        rep.checked += 1
        t = top_bar(x)
        if len(t) != 1 or abs(t.items()[0][1]) != 1:
            rep.fail(f"(1) top_bar({x}) = {t} is not a signed basis web")
            continue
        w = t.items()[0][0]
        if w.degree() != degree(x):
            rep.fail(f"(1) degree {w.degree()} != {degree(x)} for {x}")
        if w in images:
            rep.fail(f"(1) {x} and {images[w]} both map to {w}")
        images[w] = x
    if set(images) != set(web_basis(rank)):
        rep.fail("(1) images are not exactly the dotted basis webs")
    cups = enumerate_cup_diagrams(rank)
    for c in cups:
        for d in cups:
            rep.checked += 1
            if CircleDiagram(c, d).is_orientable() != is_well_oriented_image(c, d):
                rep.fail(f"(3) orientability mismatch for {c} | {d}")
    rng = random.Random(seed)
    pairs = [(x, y) for x in els for y in els if x.block == y.block]
    if samples is not None:
        # sample the square (matching middles) and zero preservation separately
        comp = [p for p in pairs if p[0].top == p[1].bottom]
        zero = [p for p in pairs if p[0].top != p[1].bottom]
        pairs = (rng.sample(comp, min(samples, len(comp)))
                 + rng.sample(zero, min(samples // 4, len(zero))))
        rep.notes.append(f"{len(pairs)} sampled pairs")
    tb = {x: top_bar(x) for x in els}
    for x, y in pairs:
        rep.checked += 1
        lhs = top_bar(mult_Abar(x, y))
        rhs = mult_cW(tb[x], tb[y])
        if x.top != y.bottom:
            if lhs or rhs:
                rep.fail(f"(2) mismatched middles give {lhs} / {rhs} for ({x})({y})")
            continue
        if lhs != rhs:
            rep.fail(f"(4) ({x})({y}): top(ab) = {lhs}, top(a)top(b) = {rhs}")
        check_degrees(rep, tb[x].items()[0][0], tb[y].items()[0][0], rhs)
    return rep


def suite_orientability(rank):
    """Orientability of cd* against well-orientedness of its web, for all cup pairs."""
    rep = Report(f"orientability[rank {rank}]")
    cups = enumerate_cup_diagrams(rank)
    for c in cups:
        for d in cups:
            rep.checked += 1
            a = bool(CircleDiagram(c, d).orientations)
            b = is_well_oriented_image(c, d)
            if a != b:
                rep.fail(f"{c} | {d}: orientable={a}, well oriented={b}")
    return rep


def suite_parity(rank, all_orders=True):
    """Arc and path parities on circle diagrams, and the web statistics identities.

    Arc: every cup or cap i-j has i = j + 1 mod 2. Path: along a circle from
    k to l the unmarked plus marked lengths are k + l mod 2. Webs (every
    surgery step of every product shape, in every admissible order):
    npsad(i) + npsad(j) = psadtype, npedge is path independent mod 2, and
    the nested-merge identity for every node t of the outer circle.
    """
    rep = Report(f"parity[rank {rank}]")
    cups = enumerate_cup_diagrams(rank)
    for c in cups:
        for a in c.arcs:
            rep.count("arc")
            if (a.left - a.right - 1) % 2:
                rep.fail(f"arc {a} of {c}")
    for c in cups:
        for d in cups:
            for circ in CircleDiagram(c, d).circles:
                n = len(circ.vertices)
                for s in range(n):
                    for t in range(s + 1, n + 1):
                        rep.count("path")
                        tlen, flen, _, _ = typed_stats([a for _, a in circ.arcs[s:t]])
                        k, l = circ.vertices[s], circ.vertices[t % n]
                        if (tlen + flen - k - l) % 2:
                            rep.fail(f"path {k}->{l} on {c} | {d}")
    for c in cups:
        for d in cups:
            if not CircleDiagram(c, d).is_orientable():
                continue
            for e in cups:
                if not CircleDiagram(d, e).is_orientable():
                    continue
                orders = cw_orders(d) if all_orders else [None]
                for o in orders:
                    _parity_run(rep, CWState.stack(c, d, e), o)
    rep.notes.append(", ".join(f"{k}={v}" for k, v in sorted(rep.counts.items())))
    return rep


def _parity_run(rep, st, order):
    todo = list(order) if order else None
    while st.remaining:
        avail = st.available()
        if todo is None:
            p = min(avail, key=lambda q: (q.left, q.right))
        else:
            want = todo.pop(0)
            p = next(q for q in avail if pair_label(q) == want)
        if isinstance(p, PhantomPair):
            st, _ = phantom_surgery(st, p)
            continue
        bw = st.web
        cup = st.cup_edge(p)
        rep.count("npsad")
        if (npsad(bw, cup, True) + npsad(bw, cup, False) - psadtype(bw, cup)) % 2:
            rep.fail(f"npsad sum at {p}")
        for k, circ in enumerate(bw.circles):
            if len(circ.trivalent()) % 2:
                # open phantom pairs: parity is only path independent on well-oriented circles
                rep.skipped += 1
                continue
            pts = [q for kind, q in circ.events if kind == "node"]
            for q in pts[1:]:
                rep.count("npedge")
                if (npedge(bw, pts[0], q) - npedge(bw, pts[0], q, clockwise=True)) % 2:
                    rep.fail(f"npedge direction parity {pts[0]}->{q}")
        after = ordinary_surgery(st, p)
        case, old, new = classify_cw(st, after, p)
        if case == SurgeryCase.NESTED_MERGE:
            cb, ct = old
            inner = ct if bw.encloses(cb, ct) else cb
            outer = cb if inner == ct else ct
            ipt = (1, p.left) if inner == ct else (0, p.left)
            aw, af = after.web, new[0]
            for kind, t in bw.circles[outer].events:
                if kind != "node" or t[1] in (p.left, p.right):
                    continue
                rep.count("claim")
                lhs = nploop(aw, af, t) + psadtype(bw, cup)
                rhs = nploop(bw, outer, t) + nploop(bw, inner, ipt) + npsad(bw, cup, True)
                if (lhs - rhs) % 2:
                    rep.fail(f"nested-merge identity at {p}, t={t}")
        st = after


def suite_stats_conformance():
    """Statistics and products of the hand-encoded reference configurations."""
    from . import reference as R
    from .web_algebra import multiply_cW
    from .webs import degree as web_degree, is_basis_web, npcirc, npesci_stacked
    rep = Report("stats-conformance")

    def check(name, got, want):
        rep.checked += 1
        if got != want:
            rep.fail(f"{name}: got {got}, expected {want}")

    ref = R.loops_web()
    web, C, pts = ref.web, ref.data["C"], ref.data["points"]
    for name, v in ref.expected["nploop"].items():
        check(f"nploop(C,{name})", nploop(web, C, pts[name]), v)
    check("nploop(C_in,n)", nploop(web, ref.data["C_in"], pts["n"]), ref.expected["nploop_in"]["n"])
    for name, v in ref.expected["npedge"].items():
        check(f"npedge(i->{name})", npedge(web, pts["i"], pts[name]), v)

    ref = R.saddle_web()
    cup = ref.data["cup"]
    check("npsad(i)", npsad(ref.web, cup, True), ref.expected["npsad_i"])
    check("npsad(j)", npsad(ref.web, cup, False), ref.expected["npsad_j"])
    check("psadtype", psadtype(ref.web, cup), ref.expected["psadtype"])

    for ref in R.decorated_webs():
        check(f"degree({ref.name})", web_degree(ref.web), ref.expected["degree"])
        check(f"npcirc({ref.name})", npcirc(ref.web), ref.expected["npcirc"])
        check(f"basis({ref.name})", is_basis_web(ref.web), ref.expected["basis"])

    # the nested split pair: arc side, its image, and the three stacked stages
    x, y = R.nested_split_pair()
    prod = mult_Abar(x, y)
    check("Abar nested split coefficients", sorted(c for _, c in prod.items()), [-1, 1])
    img = top_bar(prod)
    check("top_bar of the nested split", [(sorted(e.dots), c) for e, c in img.items()],
          [([3], 1), ([4], -1)])
    tx, ty = (top_bar(v).items()[0][0] for v in (x, y))
    trace = []
    multiply_cW(tx, ty, R.NESTED_SPLIT_ORDER, trace=trace)
    split = next(s for s in trace if s.case == SurgeryCase.NESTED_SPLIT_REVERSED_C)
    check("nested split psadtype", split.psadtype, 1)
    check("nested split npcirc", split.npcirc, 1)
    check("npesci(W1)", npesci_stacked(R.stacked_start(tx, ty)), 1)
    check("npesci(W2)", npesci_stacked(split.web), 1)
    check("npesci(W3)", npesci_stacked(trace[-1].web), 0)
    check("nested split before removal", _dot_terms(split.before_removal), [((4,), -1), ((3,), 1)])
    check("nested split after removal", _dot_terms(split.terms), [((4,), 1), ((3,), -1)])

    a, b = R.web_pair(R.H_SPLIT_PAIR)
    trace = []
    prod = multiply_cW(a, b, trace=trace)
    check("H split product", [(sorted(e.dots), c) for e, c in prod.items()], [([2], 1), ([4], -1)])
    hs = next(s for s in trace if s.case == SurgeryCase.NON_NESTED_SPLIT)
    check("H split psadtype/npsad", (hs.psadtype, hs.npsad), (0, 0))

    a, b = R.web_pair(R.NESTED_MERGE_PAIR)
    trace = []
    prod = multiply_cW(a, b, trace=trace)
    nm = next(s for s in trace if s.case == SurgeryCase.NESTED_MERGE)
    check("nested merge stats", (nm.psadtype, nm.nploop, nm.npsad), (0, 0, 0))
    check("nested merge coefficient", [c for _, c in prod.items()], [1])
    return rep


def _dot_terms(terms):
    return [(tuple(sorted(b[1] for b in dots)), c) for c, dots in terms]


def run_suite(name, algebra="Abar", rank=2, samples=None, seed=0, relaxed=False):
    """Dispatch used by the CLI."""
    if name == "assoc":
        return [suite_assoc(algebra, rank, samples, seed)]
    if name == "order":
        return [suite_order(algebra, rank, samples, seed, relaxed)]
    if name == "intertwine":
        return [suite_intertwine(rank)]
    if name == "embed":
        return [suite_embed(rank, samples, seed)]
    if name == "parity":
        return [suite_parity(rank)]
    if name == "stats-conformance":
        return [suite_stats_conformance()]
    raise ValueError(f"unknown suite {name!r}")
