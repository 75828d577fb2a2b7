"""Formal integer linear combinations of basis elements."""

import re

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\*)?\[([^\]]*)\]\s*")


class LinearCombination:
    """A finite formal sum with integer coefficients.

    Keys are hashable basis elements that provide ``sort_key()``. Zero
    coefficients are never stored, so equality is equality of dicts.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for b, c in items:
                self._add(b, c)

    def _add(self, basis, coeff):
        c = self._terms.get(basis, 0) + int(coeff)
        if c:
            self._terms[basis] = c
        else:
            self._terms.pop(basis, None)

    @classmethod
    def single(cls, basis, coeff=1):
        return cls([(basis, coeff)])

    @classmethod
    def zero(cls):
        return cls()

    def items(self):
        """(basis, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def coefficient(self, basis):
        return self._terms.get(basis, 0)

    def support(self):
        return [b for b, _ in self.items()]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = LinearCombination(self._terms)
        for b, c in other._terms.items():
            out._add(b, c)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return LinearCombination({b: k * c for b, c in self._terms.items()})

    def __rmul__(self, k):
        return self.scale(k)

    def map(self, f):
        """Apply a basis-to-combination map linearly."""
        out = LinearCombination()
        for b, c in self._terms.items():
            for b2, c2 in f(b)._terms.items():
                out._add(b2, c * c2)
        return out

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}[{b}]")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s

    __repr__ = __str__

    @classmethod
    def parse(cls, text, parse_basis):
        """Inverse of str(): '0' or terms like '- 2*[b1] + [b2]'."""
        text = text.strip()
        if text == "0":
            return cls()
        out, pos = cls(), 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ValueError(f"cannot parse linear combination at {text[pos:]!r}")
            c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
            out._add(parse_basis(m.group(3)), c)
            pos = m.end()
        if pos == 0:
            raise ValueError(f"empty linear combination {text!r}")
        return out

    def to_json(self):
        return [{"basis": str(b), "coeff": c} for b, c in self.items()]


def bilinear(f, x, y):
    """Extend a basis-level product f(a, b) -> LinearCombination bilinearly."""
    out = LinearCombination()
    for a, ca in x.items():
        for b, cb in y.items():
            out = out + f(a, b).scale(ca * cb)
    return out
