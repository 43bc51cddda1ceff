"""Zariski-van Kampen presentations.

Braids act on the free group of a punctured fibre through the Artin action,
with strands numbered from the puncture farthest from the base point
(position 1) to the nearest (position n)::

    s_i :  x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i

A braid word acts letter by letter from the left, so ``act(b1 b2, w) =
act(b2, act(b1, w))``.  With this numbering the product ``x_1 x_2 ... x_n``
is the boundary loop of a big disk and every braid fixes it.

For a real line arrangement the fibre coordinate is ``y`` and position 1 is
the lowest line.  Crossing a multiple point to the right of the base fibre
applies the positive half twist on the lines through it, crossing to the
left applies its inverse.  At a point whose local meridians are ``w_i ..
w_j`` (bottom to top) the relations say that ``w_i ... w_j`` equals each
of its cyclic rotations, and that product is the meridian of the
exceptional curve obtained by blowing the point up.

Braid-monodromy data lists events seen from the base fibre: a connecting
braid ``tau`` carries the base geometric basis to a fibre next to the
singular fibre, where the local braid ``beta`` gives the relations
``act(beta, x_i)|_{x=g} = g_i`` with ``g_i = act(tau, x_i)``.  A vertical
line of the curve adds a generator ``f``; each block of strands meeting it
at one point contributes ``[f, g_i, ..., g_j] = 1`` in the cyclic sense
above.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Mapping, Sequence

from .fpgroup import Presentation, Word, cyclic_relators


class DegenerateArrangement(ValueError):
    pass


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for s in self.letters:
            if s == 0 or abs(s) >= self.strands:
                raise ValueError(f"bad Artin generator {s} on {self.strands} strands")
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def parse(cls, text: str | None, strands: int) -> "BraidWord":
        letters: list[int] = []
        for tok in re.split(r"\s*\*\s*|\s+", (text or "").strip()):
            if not tok:
                continue
            m = re.fullmatch(r"s(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            i, k = int(m.group(1)), int(m.group(2) or 1)
            letters.extend([i if k > 0 else -i] * abs(k))
        return cls(strands, tuple(letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.strands, self.letters + other.letters)

    def __invert__(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-s for s in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else ~self
        return BraidWord(self.strands, base.letters * abs(k))


def half_twist(strands: int, lo: int = 1, hi: int | None = None) -> BraidWord:
    """Positive half twist on positions ``lo..hi`` (1-based, inclusive)."""
    hi = strands if hi is None else hi
    letters: list[int] = []
    for top in range(hi - 1, lo - 1, -1):
        letters.extend(range(lo, top + 1))
    return BraidWord(strands, tuple(letters))


def _elementary(s: int, n: int) -> list[Word]:
    imgs = [Word.gen(i) for i in range(n)]
    i = abs(s) - 1
    xi, xj = Word.gen(i), Word.gen(i + 1)
    if s > 0:
        imgs[i], imgs[i + 1] = xi * xj * ~xi, xi
    else:
        imgs[i], imgs[i + 1] = xj, ~xj * xi * xj
    return imgs


def artin_images(b: BraidWord) -> list[Word]:
    """Images of ``x_1 .. x_n`` under the automorphism of ``b``."""
    imgs = [Word.gen(i) for i in range(b.strands)]
    for s in b.letters:
        el = _elementary(s, b.strands)
        imgs = [w.substitute(el) for w in imgs]
    return imgs


def artin_act(b: BraidWord, w: Word) -> Word:
    if Word(w).max_gen() > b.strands:
        raise ValueError("word uses more generators than the braid has strands")
    return Word(w).substitute(artin_images(b))


MeridianMap = dict


def derived_meridians(mm: Mapping[str, Word], rules: Mapping[str, Sequence[tuple[str, int]]]) -> dict:
    """Extend ``mm`` by products ``label -> prod(mm[src]^k)``.

    Rules are applied in order, so later rules may use earlier results.
    """
    out = dict(mm)
    for label, factors in rules.items():
        w = Word()
        for src, k in factors:
            if src not in out:
                raise UnknownLabel(src)
            w = w * out[src] ** k
        out[label] = w
    return out


@dataclass(frozen=True)
class LineArrangement:
    """Affine real lines ``a x + b y + c = 0`` (no vertical lines)."""
    lines: tuple[tuple[Fraction, Fraction, Fraction], ...]
    labels: tuple[str, ...]
    base_x: Fraction = Fraction(0)
    point_names: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        lines = tuple(tuple(Fraction(v) for v in ln) for ln in self.lines)
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "base_x", Fraction(self.base_x))
        if len(self.labels) != len(lines):
            raise ValueError("one label per line")
        for a, b, c in lines:
            if b == 0:
                raise DegenerateArrangement("vertical lines are not allowed")
        for (i, u), (j, v) in combinations(enumerate(lines), 2):
            if u[0] * v[1] == u[1] * v[0] and u[2] * v[1] == u[1] * v[2]:
                raise DegenerateArrangement(f"lines {self.labels[i]} and {self.labels[j]} coincide")

    def y_at(self, k: int, x: Fraction) -> Fraction:
        a, b, c = self.lines[k]
        return -(a * x + c) / b

    def multiple_points(self) -> list[tuple[Fraction, Fraction, tuple[int, ...]]]:
        pts: dict[tuple[Fraction, Fraction], set[int]] = {}
        for i, j in combinations(range(len(self.lines)), 2):
            a1, b1, c1 = self.lines[i]
            a2, b2, c2 = self.lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (b1 * c2 - b2 * c1) / det
            y = (c1 * a2 - c2 * a1) / det
            pts.setdefault((x, y), set()).update((i, j))
        return sorted((x, y, tuple(sorted(s))) for (x, y), s in pts.items())

    @classmethod
    def from_dict(cls, doc: dict) -> "LineArrangement":
        return cls(
            lines=tuple(tuple(Fraction(str(v)) for v in ln) for ln in doc["lines"]),
            labels=tuple(doc.get("labels") or [f"L{i + 1}" for i in range(len(doc["lines"]))]),
            base_x=Fraction(str(doc.get("base_x", 0))),
            point_names={k: tuple(v) for k, v in doc.get("point_names", {}).items()},
        )

    @classmethod
    def load(cls, path) -> "LineArrangement":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def point_name(self, members: tuple[int, ...]) -> str:
        labels = {self.labels[i] for i in members}
        for name, lab in self.point_names.items():
            if set(lab) <= labels:
                return name
        return "+".join(self.labels[i] for i in members)


def wiring_presentation(arr: LineArrangement) -> tuple[Presentation, dict]:
    """Presentation of pi_1 of the projective complement of ``arr`` (line at
    infinity generic) and the meridian map.

    Generators are the meridians of the lines on the fibre ``x = base_x``, in
    label order.  The meridian map holds each line label, each multiple point
    name (exceptional meridian) and ``"<point>:<line>"`` local meridians.
    """
    pts = arr.multiple_points()
    xs = [x for x, _, _ in pts]
    if len(set(xs)) != len(xs):
        raise DegenerateArrangement("two multiple points share an x-coordinate")
    if arr.base_x in xs:
        raise DegenerateArrangement("base fibre passes through a multiple point")
    n = len(arr.lines)
    order = sorted(range(n), key=lambda k: arr.y_at(k, arr.base_x))
    if len({arr.y_at(k, arr.base_x) for k in range(n)}) != n:
        raise DegenerateArrangement("lines meet on the base fibre")
    base_words = {k: Word.gen(k) for k in range(n)}
    mm: dict[str, Word] = {arr.labels[k]: base_words[k] for k in range(n)}
    relators: list[Word] = []

    right = sorted((p for p in pts if p[0] > arr.base_x), key=lambda p: p[0])
    left = sorted((p for p in pts if p[0] < arr.base_x), key=lambda p: -p[0])
    for events, sign in ((right, 1), (left, -1)):
        cur = list(order)
        words = dict(base_words)
        for x, y, members in events:
            pos = sorted(cur.index(k) for k in members)
            if pos != list(range(pos[0], pos[0] + len(pos))):
                raise DegenerateArrangement(f"lines through ({x}, {y}) are not adjacent")
            block = cur[pos[0]:pos[-1] + 1]
            local = [words[k] for k in block]
            name = arr.point_name(members)
            relators.extend(cyclic_relators(local))
            e = Word()
            for w in local:
                e = e * w
            mm[name] = e
            for k, w in zip(block, local):
                mm[f"{name}:{arr.labels[k]}"] = w
            k = len(block)
            twist = half_twist(k) if sign > 0 else ~half_twist(k)
            new = [w.substitute(local) for w in artin_images(twist)]
            rev = block[::-1]
            for t, line in enumerate(rev):
                words[line] = new[t]
            cur[pos[0]:pos[-1] + 1] = rev
    total = Word()
    for k in order:
        total = total * base_words[k]
    relators.append(total)
    return Presentation(arr.labels, tuple(relators)), mm


@dataclass(frozen=True)
class MonodromyEvent:
    tau: BraidWord
    beta: BraidWord | None = None
    vertical: str | None = None
    blocks: tuple[tuple[int, ...], ...] = ()
    label: str = ""


@dataclass(frozen=True)
class BraidMonodromyData:
    strands: int
    names: tuple[str, ...]
    events: tuple[MonodromyEvent, ...]
    kill: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.names) != self.strands:
            raise ValueError("one generator name per strand")
        for ev in self.events:
            for b in (ev.tau, ev.beta):
                if b is not None and b.strands != self.strands:
                    raise ValueError("braid on the wrong number of strands")

    @classmethod
    def from_dict(cls, doc: dict) -> "BraidMonodromyData":
        n = int(doc["strands"])
        events = []
        for ev in doc["events"]:
            events.append(MonodromyEvent(
                tau=BraidWord.parse(ev.get("tau"), n),
                beta=BraidWord.parse(ev["beta"], n) if ev.get("beta") else None,
                vertical=ev.get("vertical"),
                blocks=tuple(tuple(b) for b in ev.get("blocks", ())),
                label=ev.get("label", ""),
            ))
        names = tuple(doc.get("names") or [f"x{i + 1}" for i in range(n)])
        return cls(n, names, tuple(events), dict(doc.get("kill", {})))

    @classmethod
    def load(cls, path) -> "BraidMonodromyData":
        return cls.from_dict(json.loads(Path(path).read_text()))


def braid_monodromy_presentation(d: BraidMonodromyData) -> tuple[Presentation, dict]:
    verticals: list[str] = []
    for ev in d.events:
        if ev.vertical and ev.vertical not in verticals:
            verticals.append(ev.vertical)
    names = d.names + tuple(verticals)
    mm: dict[str, Word] = {nm: Word.gen(i) for i, nm in enumerate(names)}
    relators: list[Word] = []
    for ev in d.events:
        g = artin_images(ev.tau)
        if ev.beta is not None:
            for i, img in enumerate(artin_images(ev.beta)):
                r = img.substitute(g) * ~g[i]
                if r:
                    relators.append(r)
        if ev.vertical:
            f = Word.gen(names.index(ev.vertical))
            for block in ev.blocks:
                relators.extend(cyclic_relators([f] + [g[t - 1] for t in block]))
    return Presentation(names, tuple(relators)), mm
