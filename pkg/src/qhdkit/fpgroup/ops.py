"""Operations on presentations: abelianization, quotients, Tietze moves,
relator certificates and homomorphism checks."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Protocol, Sequence

from ..snf import cokernel_invariants
from .cosets import CosetTable, coset_enumerate, DEFAULT_MAX_COSETS
from .presentation import Presentation
from .words import Word


class NotEliminable(ValueError):
    pass


def abelian_invariants(p: Presentation) -> list[int]:
    """Invariant factors of the abelianization; ``0`` stands for a copy of Z."""
    rows = [r.exponent_sums(p.ngens) for r in p.relators]
    if not rows:
        return [0] * p.ngens
    return cokernel_invariants(rows, p.ngens)


def quotient_by_normal_closure(p: Presentation, kill: Sequence[Word]) -> Presentation:
    for w in kill:
        if Word(w).max_gen() > p.ngens:
            raise ValueError(f"word {w!r} uses an unknown generator")
    return p.with_relators(kill)


def tietze_eliminate(p: Presentation, gen: int | str, relator_index: int) -> Presentation:
    """Remove ``gen`` using relator ``relator_index``, in which it occurs exactly once."""
    g = p.names.index(gen) if isinstance(gen, str) else gen
    rel = p.relators[relator_index]
    hits = [k for k, x in enumerate(rel) if abs(x) == g + 1]
    if len(hits) != 1:
        raise NotEliminable(f"{p.names[g]} occurs {len(hits)} times in relator {relator_index}")
    k = hits[0]
    u, v = Word(rel[:k]), Word(rel[k + 1:])
    value = ~u * ~v if rel[k] > 0 else v * u
    images = [Word.gen(i) for i in range(p.ngens)]
    images[g] = value
    keep = [i for i in range(p.ngens) if i != g]
    renum = {old + 1: new + 1 for new, old in enumerate(keep)}

    def rename(w: Word) -> Word:
        return Word(renum[abs(x)] * (1 if x > 0 else -1) for x in w)

    rels = [rename(r.substitute(images)) for i, r in enumerate(p.relators) if i != relator_index]
    return Presentation(tuple(p.names[i] for i in keep), tuple(r for r in rels if r))


def elimination_value(p: Presentation, gen: int | str, relator_index: int) -> Word:
    """The word that ``gen`` equals according to the defining relator."""
    g = p.names.index(gen) if isinstance(gen, str) else gen
    rel = p.relators[relator_index]
    k = next(i for i, x in enumerate(rel) if abs(x) == g + 1)
    u, v = Word(rel[:k]), Word(rel[k + 1:])
    return ~u * ~v if rel[k] > 0 else v * u


@dataclass(frozen=True)
class RelatorCertificate:
    """A product of conjugated relators: factors ``(index, sign, conjugator)``.

    The product of ``c * r_index^sign * c^-1`` over all factors, in order,
    is claimed to freely reduce to the target word.
    """
    factors: tuple[tuple[int, int, Word], ...]

    def product(self, p: Presentation) -> Word:
        out = Word()
        for idx, sign, conj in self.factors:
            r = p.relators[idx] if sign > 0 else ~p.relators[idx]
            out = out * Word(conj) * r * ~Word(conj)
        return out

    def to_dict(self, p: Presentation) -> dict:
        return {"factors": [[i, s, p.fmt(Word(c))] for i, s, c in self.factors]}

    @classmethod
    def from_dict(cls, doc: dict, p: Presentation) -> "RelatorCertificate":
        return cls(tuple((int(i), int(s), p.word(c)) for i, s, c in doc["factors"]))


def check_relator_certificate(p: Presentation, target: Word, cert: RelatorCertificate) -> bool:
    """Sound check that ``target`` is trivial in the group of ``p``."""
    if any(not 0 <= i < len(p.relators) or s not in (1, -1) for i, s, _ in cert.factors):
        return False
    return cert.product(p) == Word(target)


class GroupModel(Protocol):
    """A concrete group in which words in its own generators can be evaluated."""

    def evaluate(self, w: Word): ...

    def identity(self): ...

    def mul(self, a, b): ...

    def inv(self, a): ...


class PermutationModel:
    """Regular permutation representation read off a complete coset table
    of the trivial subgroup; elements are tuples."""

    def __init__(self, table: CosetTable):
        self.table = table
        self.gens = table.generator_permutations()
        n = table.index
        self.gens_inv = [tuple(r[2 * i + 1] for r in table.rows) for i in range(table.ngens)]
        self._id = tuple(range(n))

    @classmethod
    def from_presentation(cls, p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS):
        return cls(coset_enumerate(p, (), max_cosets))

    @property
    def order(self) -> int:
        return self.table.index

    def identity(self):
        return self._id

    def mul(self, a, b):
        # right actions: first a, then b
        return tuple(b[x] for x in a)

    def inv(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def evaluate(self, w: Word):
        out = self._id
        for x in w:
            g = self.gens[x - 1] if x > 0 else self.gens_inv[-x - 1]
            out = tuple(g[c] for c in out)
        return out


def evaluate_images(w: Word, images: list, model) -> object:
    out = model.identity()
    for x in w:
        g = images[abs(x) - 1]
        out = model.mul(out, g if x > 0 else model.inv(g))
    return out


def verify_homomorphism(src: Presentation, images: Sequence[Word], tgt) -> bool:
    """True iff sending generator ``i`` to ``images[i]`` kills every relator of ``src``."""
    if len(images) != src.ngens:
        raise ValueError("one image per source generator is required")
    elems = [tgt.evaluate(Word(w)) for w in images]
    one = tgt.identity()
    return all(evaluate_images(r, elems, tgt) == one for r in src.relators)


def generated_order(tgt, elements: list) -> int:
    """Size of the subgroup generated by ``elements`` (BFS closure)."""
    one = tgt.identity()
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for a in frontier:
            for g in elements:
                b = tgt.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def b23_presentation(p: int) -> Presentation:
    """Two-generator presentation of the B23(p) Milnor-fibre group, q = p + 3."""
    if p < 0:
        raise ValueError("p must be >= 0")
    q = p + 3
    return Presentation.parse(
        ("a", "l"),
        (f"a^{2 * (q - 1) * q}", f"l^2*a^{-3 * (q - 1)}", f"l*a*l^-1*a^{2 * q - 1}"),
    )


def load_certificates(path) -> dict[str, tuple[Presentation, dict[str, tuple[Word, RelatorCertificate]]]]:
    """Read a certificate bundle: section -> (presentation, name -> (target, certificate))."""
    with open(path) as fh:
        doc = json.load(fh)
    out = {}
    for section, body in doc.items():
        p = Presentation.from_dict(body["presentation"])
        certs = {k: (p.word(v["target"]), RelatorCertificate.from_dict(v, p))
                 for k, v in body["certificates"].items()}
        out[section] = (p, certs)
    return out


def dump_certificates(sections: dict[str, tuple[Presentation, dict[str, tuple[Word, RelatorCertificate]]]]) -> dict:
    return {
        section: {
            "presentation": p.to_dict(),
            "certificates": {k: {"target": p.fmt(t), **c.to_dict(p)} for k, (t, c) in certs.items()},
        }
        for section, (p, certs) in sections.items()
    }
