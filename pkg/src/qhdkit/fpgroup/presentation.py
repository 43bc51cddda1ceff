"""Finite presentations, word syntax and the JSON document format."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .words import Word, cyclic_reduce


class WordSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<op>[()\[\]*^,]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected input at {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, names: list[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise WordSyntaxError(f"expected {value!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Word:
        w = self.expr()
        if self.i != len(self.toks):
            raise WordSyntaxError(f"trailing input in {self.text!r}")
        return w

    def expr(self) -> Word:
        w = self.term()
        while self.peek() == ("op", "*"):
            self.take()
            w = w * self.term()
        return w

    def term(self) -> Word:
        w = self.atom()
        while self.peek() == ("op", "^"):
            self.take()
            kind, val = self.peek()
            if kind == "int":
                self.take()
                w = w ** int(val)
            else:
                g = self.atom()
                w = ~g * w * g
        return w

    def atom(self) -> Word:
        kind, val = self.take()
        if kind == "name":
            if val not in self.index:
                raise WordSyntaxError(f"unknown generator {val!r}")
            return Word.gen(self.index[val])
        if kind == "int" and val == "1":
            return Word()
        if (kind, val) == ("op", "("):
            w = self.expr()
            self.take(")")
            return w
        if (kind, val) == ("op", "["):
            parts = [self.expr()]
            while self.peek() == ("op", ","):
                self.take()
                parts.append(self.expr())
            self.take("]")
            from .words import commutator
            return commutator(*parts)
        raise WordSyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_word(text: str, names: list[str] | tuple[str, ...]) -> Word:
    """Parse ``l*a*l^-1*a^5``, ``(w)^g`` (= g^-1 w g), ``(w)^k`` and ``[u,v]``."""
    return _Parser(text, list(names)).parse()


def format_word(w: Word, names: list[str] | tuple[str, ...]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = (j - i) * (1 if w[i] > 0 else -1)
        name = names[abs(w[i]) - 1]
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        raw = tuple(Word(r) for r in self.relators)
        for r in raw:
            if r.max_gen() > len(names):
                raise ValueError(f"relator {r!r} uses a generator outside {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "relators", tuple(r for r in raw if r))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def cyclic_relators(self) -> list[Word]:
        return [c for c in (cyclic_reduce(r) for r in self.relators) if c]

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def fmt(self, w: Word) -> str:
        return format_word(w, self.names)

    def with_relators(self, extra) -> "Presentation":
        return Presentation(self.names, self.relators + tuple(Word(r) for r in extra))

    @classmethod
    def parse(cls, names, relators) -> "Presentation":
        names = tuple(names)
        return cls(names, tuple(parse_word(r, names) for r in relators))

    def to_dict(self) -> dict:
        return {"gens": list(self.names), "relators": [self.fmt(r) for r in self.relators]}

    @classmethod
    def from_dict(cls, doc: dict) -> "Presentation":
        return cls.parse(doc["gens"], doc["relators"])

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "Presentation":
        return cls.loads(Path(path).read_text())

    def __str__(self) -> str:
        rels = ", ".join(self.fmt(r) for r in self.relators)
        return f"< {', '.join(self.names)} | {rels} >"
