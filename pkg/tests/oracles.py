"""Independent brute-force oracles, kept separate from the library code."""

from itertools import permutations, product


def perfect_matchings(n):
    """All perfect matchings of 1..n by brute force over permutations (small n only)."""
    seen = set()
    for perm in permutations(range(1, n + 1)):
        m = frozenset(frozenset(perm[k:k + 2]) for k in range(0, n, 2))
        seen.add(m)
    return [sorted(tuple(sorted(p)) for p in m) for m in seen]


def crossing_free(m):
    return not any(a < c < b < d for a, b in m for c, d in m)


def reachable_apexes(m):
    """Arcs whose apex region is reachable from the far left, by grid flood fill.

    Arc l-r is drawn as a rectangle: verticals at x=2l, x=2r down to depth
    2(r-l), joined by a horizontal. The cell just under the middle of the
    horizontal is tested for reachability from the outside corner.
    """
    n = 2 * len(m)
    W, H = 2 * n + 4, 2 * n + 4
    wall = set()
    for l, r in m:
        d = 2 * (r - l)
        for y in range(0, d + 1):
            wall.add((2 * l, y))
            wall.add((2 * r, y))
        for x in range(2 * l, 2 * r + 1):
            wall.add((x, d))
    start = (0, H - 1)
    seen, stack = {start}, [start]
    while stack:
        x, y = stack.pop()
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= nx < W and 0 <= ny < H and (nx, ny) not in wall and (nx, ny) not in seen:
                seen.add((nx, ny))
                stack.append((nx, ny))
    return {(l, r) for l, r in m if (l + r, 2 * (r - l) + 1) in seen}


def cup_diagrams(K):
    """(matching, marked set) pairs with markers only on reachable arcs."""
    out = []
    for m in perfect_matchings(2 * K):
        if not crossing_free(m):
            continue
        ok = reachable_apexes(m)
        for bits in product((0, 1), repeat=len(m)):
            marked = {a for a, b in zip(m, bits) if b}
            if marked <= ok:
                out.append((tuple(m), frozenset(marked)))
    return out


def circle_count(cup, cap):
    """Number of components of the union of two matchings (union-find)."""
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            v = parent[v]
        return v
    for a, b in list(cup) + list(cap):
        parent[find(a)] = find(b)
    return len({find(v) for v in parent})
