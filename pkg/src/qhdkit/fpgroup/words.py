"""Free-group words.

A word is a tuple of nonzero integers: ``k > 0`` is generator ``k - 1`` and
``-k`` its inverse.  Every ``Word`` is freely reduced on construction.
"""
from __future__ import annotations

from typing import Iterable


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word(tuple):
    """Freely reduced word in a free group; supports ``*``, ``**`` and ``~``."""

    def __new__(cls, letters: Iterable[int] = ()):
        return super().__new__(cls, free_reduce(letters))

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        x = i + 1 if power > 0 else -(i + 1)
        return cls([x] * abs(power))

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return Word(tuple.__add__(self, other))

    def __rmul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return Word(tuple.__add__(tuple(other), self))

    def __invert__(self) -> "Word":
        return Word(-x for x in reversed(self))

    inverse = __invert__

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else ~self
        return Word(tuple(base) * abs(k))

    def conj(self, g: "Word") -> "Word":
        """``g * self * g^-1``."""
        return g * self * ~g

    def __repr__(self) -> str:
        return f"Word({list(self)})"

    def max_gen(self) -> int:
        return max((abs(x) for x in self), default=0)

    def substitute(self, images: "list[Word] | tuple[Word, ...]") -> "Word":
        """Image under the endomorphism sending generator ``i`` to ``images[i]``."""
        out: list[int] = []
        for x in self:
            img = images[abs(x) - 1]
            out.extend(img if x > 0 else (~img))
        return Word(out)

    def exponent_sums(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for x in self:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v


def commutator(*ws: Word) -> Word:
    """``[a, b] = a b a^-1 b^-1``; longer forms nest to the right."""
    if len(ws) < 2:
        raise ValueError("commutator needs at least two words")
    a, rest = ws[0], ws[1:]
    b = rest[0] if len(rest) == 1 else commutator(*rest)
    return a * b * ~a * ~b


def cyclic_relators(ws: list[Word]) -> list[Word]:
    """Relators for ``[w1, ..., wk] = 1``: the product is equal to every cyclic rotation.

    For two words this is the ordinary commutator; for three it is the
    triple-point relation ``w1 w2 w3 = w2 w3 w1 = w3 w1 w2``.
    """
    k = len(ws)
    prod = Word()
    for w in ws:
        prod = prod * w
    rels = []
    for s in range(1, k):
        rot = Word()
        for w in ws[s:] + ws[:s]:
            rot = rot * w
        r = prod * ~rot
        if r:
            rels.append(r)
    return rels


def cyclic_reduce(w: Word) -> Word:
    t = tuple(w)
    while len(t) > 1 and t[0] == -t[-1]:
        t = t[1:-1]
    return Word(t)


def is_cyclic_conjugate(u: Word, v: Word) -> bool:
    """True if ``u`` and ``v`` are conjugate in the free group."""
    cu, cv = cyclic_reduce(u), cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    doubled = tuple(cu) + tuple(cu)
    n = len(cu)
    return any(doubled[i:i + n] == tuple(cv) for i in range(n))
