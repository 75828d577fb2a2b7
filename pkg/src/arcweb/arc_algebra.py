"""
The type D arc algebra A: multiplication by signed surgery.

Basis elements are oriented circle diagrams c λ d*. The product of
c_b λ d* and d μ c_t* is computed on the stacked diagram by surgeries on
the middle cup-cap pairs, by default the leftmost available pair each time.
"""

from .diagrams import (DiagramError, OrientedCircleDiagram, block_of,
                       typed_stats)
from .linear import LinearCombination, bilinear
from . import stacked
from .stacked import EligibilityError, SurgeryState, path_stats

ArcBasisElement = OrientedCircleDiagram

__all__ = ["ArcBasisElement", "BlockError", "EligibilityError", "find_surgery_pair",
           "mult_A", "multiply_A", "rule_A", "typed_stats"]


class BlockError(DiagramError):
    """Factors lie in different blocks."""


def find_surgery_pair(state, policy="leftmost", strict=True):
    """The next cup-cap pair of a SurgeryState.

    ``policy`` is "leftmost" or an explicit (left, right) pair.
    """
    elig = state.eligible(strict)
    if not elig:
        raise EligibilityError("no eligible cup-cap pair")
    if policy == "leftmost":
        return min(elig, key=lambda a: (a.left, a.right))
    lr = (policy.left, policy.right) if hasattr(policy, "left") else tuple(policy)
    for a in elig:
        if (a.left, a.right) == lr:
            return a
    raise EligibilityError(f"pair {lr[0]}-{lr[1]} is not eligible")


def split_labels(step, labels, cw_i, cw_j):
    a = step.after
    ci, cj = step.new
    return a.relabel(a.relabel(labels, ci, cw_i), cj, cw_j)


def merge_step(step, labels, dot_sign):
    """Shared merge rule; dot_sign(path_edges) gives the clockwise-merge sign."""
    b, a = step.before, step.after
    cb, ct = step.old
    (caf,) = step.new
    cw_b, cw_t = b.is_clockwise(labels, cb), b.is_clockwise(labels, ct)
    if cw_b and cw_t:
        return []
    if not (cw_b or cw_t):
        return [(1, a.relabel(labels, caf, False))]
    src = b.circles[cb if cw_b else ct].base
    sign = dot_sign(a.path(src, a.circles[caf].base))
    return [(sign, a.relabel(labels, caf, True))]


def rule_A(step, labels):
    """One surgery step of the original multiplication."""
    if len(step.old) == 2:
        return merge_step(step, labels, lambda p: (-1) ** path_stats(p)[0])
    b, a = step.before, step.after
    ci, cj = step.new
    if not a.orientable(ci):
        return []
    i, j = step.pair.left, step.pair.right
    ttype = 0 if step.pair.marked else 1
    len_i = path_stats(a.path((0, i), a.circles[ci].base))[0]
    len_j = path_stats(a.path((0, j), a.circles[cj].base))[0]
    if not b.is_clockwise(labels, step.old[0]):
        return [((-1) ** (len_i + ttype + i), split_labels(step, labels, True, False)),
                ((-1) ** (len_j + i), split_labels(step, labels, False, True))]
    len_be = path_stats(b.path(b.circles[step.old[0]].base, a.circles[cj].base))[0]
    return [((-1) ** (len_be + len_i + ttype + i), split_labels(step, labels, True, True))]


def multiply_A(x, y, order="leftmost", strict=True, tie_level=1):
    """Product of two basis elements as a LinearCombination."""
    if x.block != y.block:
        raise BlockError(f"blocks differ: {x.block} vs {y.block}")
    return LinearCombination(stacked.run(x, y, rule_A, order, strict, tie_level))


def mult_A(x, y, order="leftmost", strict=True, tie_level=1):
    """Product in A of basis elements or linear combinations."""
    if isinstance(x, OrientedCircleDiagram) and isinstance(y, OrientedCircleDiagram):
        return multiply_A(x, y, order, strict, tie_level)
    x = _lc(x)
    y = _lc(y)
    return bilinear(lambda a, b: multiply_A(a, b, order, strict, tie_level), x, y)


def _lc(v):
    return v if isinstance(v, LinearCombination) else LinearCombination.single(v)
