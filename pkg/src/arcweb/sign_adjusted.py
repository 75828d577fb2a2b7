"""
The sign adjusted arc algebra Ā and the isomorphism ``sign``: A -> Ā.

Ā has the same basis as A. Its surgery keeps only the dot moving signs,
measured by the marked distance, and in nested splits the marked saddle
type of the surgery pair. ``sign`` rescales each basis element by a
product of per-circle coefficients.
"""

from .arc_algebra import BlockError, merge_step, split_labels, _lc
from .diagrams import (CircleDiagram, DiagramError, OrientedCircleDiagram,
                       is_clockwise, is_oriented)
from .linear import LinearCombination, bilinear
from . import stacked
from .stacked import SurgeryCase, classify, path_stats

__all__ = ["SurgeryCase", "classify_surgery", "coeff", "mult_Abar", "rule_Abar", "sign_map"]


def coeff(D, weight):
    """Product over circles: 1 if anticlockwise, -(-1)^B(C) if clockwise."""
    if not is_oriented(D, weight):
        raise DiagramError(f"{weight} does not orient {D}")
    out = 1
    for c in D.circles:
        if is_clockwise(c, weight):
            out *= -(-1) ** c.base
    return out


def sign_map(x):
    """sign(x) = coeff(x) x, extended linearly."""
    if isinstance(x, OrientedCircleDiagram):
        return LinearCombination.single(x, coeff(x.diagram, x.weight))
    return x.map(sign_map)


def classify_surgery(state, pair):
    """Case of a surgery on ``pair`` in a SurgeryState."""
    return classify(state, state.after_surgery(pair), pair)[0]


def rule_Abar(step, labels):
    """One surgery step of the sign adjusted multiplication."""
    def flen(p):
        return path_stats(p)[1]

    if len(step.old) == 2:
        return merge_step(step, labels, lambda p: (-1) ** flen(p))
    b, a = step.before, step.after
    ci, cj = step.new
    if not a.orientable(ci):
        return []
    i, j = step.pair.left, step.pair.right
    ftype = 1 if step.pair.marked else 0
    len_i = flen(a.path((0, i), a.circles[ci].base))
    len_j = flen(a.path((0, j), a.circles[cj].base))
    ti = tj = 0
    if step.case == SurgeryCase.NESTED_SPLIT_REVERSED_C:
        ti = ftype
    elif step.case == SurgeryCase.NESTED_SPLIT_C:
        tj = ftype
    if not b.is_clockwise(labels, step.old[0]):
        return [((-1) ** (len_i + ti), split_labels(step, labels, True, False)),
                ((-1) ** (len_j + tj), split_labels(step, labels, False, True))]
    if step.case == SurgeryCase.NESTED_SPLIT_REVERSED_C:
        e = len_j
    elif step.case == SurgeryCase.NESTED_SPLIT_C:
        e = len_i
    else:
        be = b.circles[step.old[0]].base
        e = len_j if be in a.circles[ci].nodes else len_i
    return [((-1) ** e, split_labels(step, labels, True, True))]


def multiply_Abar(x, y, order="leftmost", strict=True, tie_level=1):
    if x.block != y.block:
        raise BlockError(f"blocks differ: {x.block} vs {y.block}")
    return LinearCombination(stacked.run(x, y, rule_Abar, order, strict, tie_level))


def mult_Abar(x, y, order="leftmost", strict=True, tie_level=1):
    """Product in Ā of basis elements or linear combinations."""
    if isinstance(x, OrientedCircleDiagram) and isinstance(y, OrientedCircleDiagram):
        return multiply_Abar(x, y, order, strict, tie_level)
    return bilinear(lambda a, b: multiply_Abar(a, b, order, strict, tie_level), _lc(x), _lc(y))
