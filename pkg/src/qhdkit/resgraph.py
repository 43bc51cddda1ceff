"""Plumbing graphs, Hirzebruch-Jung strings and blow-ups of the plane.

Blow-up bookkeeping works on divisor classes in Pic of the blown-up plane,
with basis H, E1, ..., En and intersection form diag(1, -1, ..., -1).

``complement_h1`` relies on H1(Z minus D) = coker(H2(Z) -> Z^components),
x -> (x.D_i), which holds for simply connected rational surfaces Z.
"""
from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .snf import cokernel_invariants, integer_det, invariants_order


class BadInput(ValueError):
    pass


class NonFree(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class UnknownCurve(KeyError):
    pass


class NotSNC(ValueError):
    def __init__(self, a: str, b: str, product: int):
        super().__init__(f"{a} and {b} meet with intersection number {product}")
        self.pair = (a, b)
        self.product = product


# Hirzebruch-Jung strings


def hj_expand(n: int, q: int) -> list[int]:
    """``n/q = a1 - 1/(a2 - ...)`` with every ``ai >= 2``."""
    if not (0 < q < n) or gcd(n, q) != 1:
        raise BadInput(f"need 0 < q < n coprime, got n={n}, q={q}")
    out = []
    while q:
        a = -(-n // q)
        out.append(a)
        n, q = q, a * q - n
    return out


def hj_value(seq: Sequence[int]) -> tuple[int, int]:
    if not seq or any(a < 2 for a in seq):
        raise BadInput("entries must all be at least 2")
    n, q = seq[-1], 1
    for a in reversed(seq[:-1]):
        n, q = a * n - q, n
    return n, q


@dataclass(frozen=True)
class CyclicType:
    """Quotient of C^2 by (x, y) -> (mu x, mu^q y), mu a primitive n-th root."""
    n: int
    q: int

    def resolution_string(self) -> list[int]:
        return hj_expand(self.n, self.q)


def normalize_cyclic_type(n: int, weights: Sequence[int]) -> CyclicType:
    w1, w2 = weights
    if gcd(w1, n) != 1 or gcd(w2, n) != 1:
        raise NonFree(f"weights {tuple(weights)} do not act freely off the origin mod {n}")
    q = w2 * pow(w1, -1, n) % n
    if n == 1:
        raise BadInput("trivial group")
    return CyclicType(n, q)


# plumbing graphs


@dataclass(frozen=True)
class PlumbingGraph:
    labels: tuple[str, ...]
    weights: tuple[int | None, ...]  # None marks an unknown weight
    edges: frozenset[frozenset[str]]
    genera: tuple[int, ...] = ()

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        if len(self.weights) != len(self.labels):
            raise ValueError("one weight per vertex")
        if not self.genera:
            object.__setattr__(self, "genera", (0,) * len(self.labels))
        known = set(self.labels)
        for e in self.edges:
            if len(e) != 2 or not e <= known:
                raise ValueError(f"bad edge {sorted(e)}")

    @classmethod
    def build(cls, vertices: Iterable[tuple[str, int | None]], edges: Iterable[tuple[str, str]]):
        vs = list(vertices)
        return cls(tuple(v for v, _ in vs), tuple(w for _, w in vs),
                   frozenset(frozenset(e) for e in edges))

    def weight(self, label: str) -> int | None:
        return self.weights[self.labels.index(label)]

    def neighbours(self, label: str) -> list[str]:
        return sorted(next(iter(e - {label})) for e in self.edges if label in e)

    def with_weight(self, label: str, w: int) -> "PlumbingGraph":
        ws = list(self.weights)
        ws[self.labels.index(label)] = w
        return PlumbingGraph(self.labels, tuple(ws), self.edges, self.genera)

    def intersection_matrix(self) -> list[list[int]]:
        if any(w is None for w in self.weights):
            raise ValueError("graph has unknown weights")
        idx = {v: i for i, v in enumerate(self.labels)}
        n = len(self.labels)
        mat = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            mat[i][i] = w
        for e in self.edges:
            a, b = (idx[v] for v in e)
            mat[a][b] += 1
            mat[b][a] += 1
        return mat

    def is_negative_definite(self) -> bool:
        neg = [[-x for x in row] for row in self.intersection_matrix()]
        return all(integer_det([r[:k] for r in neg[:k]]) > 0 for k in range(1, len(neg) + 1))

    def is_connected(self) -> bool:
        if not self.labels:
            return True
        seen = {self.labels[0]}
        stack = [self.labels[0]]
        while stack:
            v = stack.pop()
            for u in self.neighbours(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.labels)

    def as_labeled(self) -> tuple[dict[str, int | None], set[frozenset[str]]]:
        return dict(zip(self.labels, self.weights)), set(self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": [[v, w] for v, w in zip(self.labels, self.weights)],
            "edges": sorted(sorted(e) for e in self.edges),
        }


def _chain(prefix: str, weights: Sequence[int]) -> tuple[list[tuple[str, int]], list[tuple[str, str]]]:
    vs = [(f"{prefix}{i + 1}", -w) for i, w in enumerate(weights)]
    es = [(vs[i][0], vs[i + 1][0]) for i in range(len(vs) - 1)]
    return vs, es


def _star(center_weight: int | None, arms: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Arms are listed outward from the centre as positive numbers."""
    vertices: list[tuple[str, int | None]] = [("center", center_weight)]
    edges: list[tuple[str, str]] = []
    for k, arm in enumerate(arms):
        vs, es = _chain(f"arm{k + 1}_", arm)
        vertices += vs
        edges += es
        if vs:
            edges.append(("center", vs[0][0]))
    return PlumbingGraph.build(vertices, edges)


def family_graph(family: str, p: int | None = None, *, n: int | None = None, q: int | None = None,
                 m: int | None = None, d: int | None = None) -> PlumbingGraph:
    """Resolution graphs of the families; the three-arm ones are stars whose
    long arm carries the p vertices of weight -2 next to the centre."""
    fam = family.upper()
    if fam in ("B23", "C23", "C33"):
        if p is None or p < 0:
            raise BadInput("p must be a non-negative integer")
        outer, second, short, leaf = {
            "B23": (p + 3, 3, [4], [4]),
            "C23": (p + 3, 2, [3], [6]),
            "C33": (p + 4, 2, [2], [6]),
        }[fam]
        long_arm = [2] * p + [second, outer]
        return _star(-2, [long_arm, short, leaf])
    if fam == "GNQ":
        if n is None or q is None or n < 2 or not 0 < q < n or gcd(n, q) != 1:
            raise BadInput("Gnq needs n >= 2 and 0 < q < n coprime")
        vs, es = _chain("v", hj_expand(n * n, n * q - 1))
        return PlumbingGraph.build(vs, es)
    if fam == "B23SEIFERT":
        if m is None or m < 2:
            raise BadInput("B23Seifert needs m >= 2")
        ct = normalize_cyclic_type(2 * m * m, (-(2 * m + 1), 1))
        arm = list(reversed(hj_expand(ct.n, ct.q)))
        return _star(None if d is None else -d, [arm, [4], [4]])
    raise BadInput(f"unknown family {family!r}")


def discriminant_group(g: PlumbingGraph) -> list[int]:
    mat = g.intersection_matrix()
    if integer_det(mat) == 0:
        raise SingularMatrix("intersection matrix is singular")
    if not g.is_negative_definite():
        warnings.warn("intersection matrix is not negative definite", stacklevel=2)
    return cokernel_invariants(mat)


def discriminant_order(g: PlumbingGraph) -> int:
    return abs(integer_det(g.intersection_matrix()))


def solve_central_weight(g: PlumbingGraph, target: int, center: str = "center") -> int | None:
    """Smallest ``d >= 1`` with ``|det| == target`` when the centre weighs ``-d``."""
    if target <= 0:
        raise BadInput("target must be positive")
    # det is affine in the centre weight
    d0 = integer_det(g.with_weight(center, 0).intersection_matrix())
    d1 = integer_det(g.with_weight(center, -1).intersection_matrix())
    slope = d1 - d0
    sols = []
    for t in (target, -target):
        if slope == 0:
            continue
        d = Fraction(t - d0, slope)
        if d.denominator == 1 and d >= 1:
            sols.append(int(d))
    if slope == 0 and abs(d0) == target:
        return 1
    return min(sols) if sols else None


# blow-up models


@dataclass(frozen=True)
class BlowupModel:
    """Curves in an iterated blow-up of P^2 as classes in Z^(1+n)."""
    rank: int
    classes: Mapping[str, tuple[int, ...]]
    order: tuple[str, ...]
    log: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = ()

    @classmethod
    def plane(cls, curves: Mapping[str, int]) -> "BlowupModel":
        classes = {k: (int(deg),) for k, deg in curves.items()}
        return cls(1, classes, tuple(curves))

    def cls(self, label: str) -> tuple[int, ...]:
        try:
            c = self.classes[label]
        except KeyError:
            raise UnknownCurve(label) from None
        return c + (0,) * (self.rank - len(c))

    def dot(self, a: str, b: str) -> int:
        return form(self.cls(a), self.cls(b))

    def self_intersection(self, label: str) -> int:
        return self.dot(label, label)

    def genus(self, label: str) -> int:
        c = self.cls(label)
        canon = (-3,) + (1,) * (self.rank - 1)
        return 1 + (form(c, c) + form(canon, c)) // 2

    def exceptional_index(self, label: str) -> int:
        return 1 + [lab for lab, _ in self.log].index(label)


def form(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def blowup(model: BlowupModel, through: Sequence[tuple[str, int]] | Mapping[str, int], label: str) -> BlowupModel:
    items = list(through.items()) if isinstance(through, Mapping) else list(through)
    for lab, mult in items:
        if lab not in model.classes:
            raise UnknownCurve(lab)
        if mult < 1:
            raise BadInput(f"multiplicity of {lab} must be positive")
    if label in model.classes:
        raise BadInput(f"label {label!r} already used")
    # local intersection at the point is at least the product of multiplicities
    for i, (a, ma) in enumerate(items):
        for b, mb in items[i + 1:]:
            if model.dot(a, b) < ma * mb:
                raise BadInput(f"{a} and {b} cannot both pass through the point with these multiplicities")
    rank = model.rank + 1
    classes = {k: model.cls(k) + (0,) for k in model.classes}
    for lab, mult in items:
        c = list(classes[lab])
        c[-1] -= mult
        classes[lab] = tuple(c)
    classes[label] = (0,) * (rank - 1) + (1,)
    return BlowupModel(rank, classes, model.order + (label,), model.log + ((label, tuple(items)),))


def dual_graph(model: BlowupModel, labels: Sequence[str]) -> PlumbingGraph:
    labels = list(labels)
    for lab in labels:
        model.cls(lab)
    edges = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            x = model.dot(a, b)
            if x not in (0, 1):
                raise NotSNC(a, b, x)
            if x:
                edges.append((a, b))
    g = PlumbingGraph.build(((lab, model.self_intersection(lab)) for lab in labels), edges)
    return PlumbingGraph(g.labels, g.weights, g.edges, tuple(model.genus(lab) for lab in labels))


def complement_h1(model: BlowupModel, kept: Sequence[str]) -> list[int]:
    """Invariant factors of H1 of the complement of the kept curves (0 = free Z)."""
    cols = [model.cls(lab) for lab in kept]
    basis = [tuple(int(i == j) for j in range(model.rank)) for i in range(model.rank)]
    rows = [[form(x, c) for c in cols] for x in basis]
    return cokernel_invariants(rows, len(kept))


# blow-up scripts

_COUNT = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(p)?\s*(?:([+-])\s*(\d+))?\s*$")


def _count(expr, p: int) -> int:
    if isinstance(expr, int):
        return expr
    m = _COUNT.match(str(expr))
    if not m or not (m.group(1) or m.group(2)):
        raise BadInput(f"cannot read count {expr!r}")
    if m.group(2):
        coef = int(m.group(1) or 1)
        val = coef * p
    else:
        val = int(m.group(1))
    if m.group(3):
        val += int(m.group(4)) * (1 if m.group(3) == "+" else -1)
    return val


def _tower_labels(prefix: str, start: int, stop: int) -> list[str]:
    return [f"{prefix}{j}" for j in range(start, stop + 1)]


@dataclass(frozen=True)
class BlowupScript:
    name: str
    curves: Mapping[str, int]
    steps: tuple
    kept: tuple
    missing: tuple = field(default=())

    @classmethod
    def from_dict(cls, doc: dict) -> "BlowupScript":
        return cls(doc["name"], dict(doc["curves"]), tuple(doc["steps"]), tuple(doc["kept"]),
                   tuple(doc.get("missing", ())))

    @classmethod
    def load(cls, path) -> "BlowupScript":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def build(self, p: int) -> BlowupModel:
        """Run the script; a step is either ``{"label", "through"}`` or a tower
        ``{"tower": prefix, "count", "first", "next"}`` where ``next`` may name
        the previous tower member as ``"@prev"``."""
        model = BlowupModel.plane(self.curves)
        for step in self.steps:
            if "tower" in step:
                prefix = step["tower"]
                k = _count(step["count"], p)
                for j in range(1, k + 1):
                    spec = step["first"] if j == 1 else step["next"]
                    through = {(f"{prefix}{j - 1}" if c == "@prev" else c): mult for c, mult in spec.items()}
                    model = blowup(model, through, f"{prefix}{j}")
            else:
                model = blowup(model, step["through"], step["label"])
        return model

    def _expand(self, entries, p: int) -> list[str]:
        out = []
        for e in entries:
            if isinstance(e, str):
                out.append(e)
            else:
                out += _tower_labels(e["tower"], _count(e.get("from", 1), p), _count(e["to"], p))
        return out

    def kept_labels(self, p: int) -> list[str]:
        return self._expand(self.kept, p)

    def missing_labels(self, p: int) -> list[str]:
        return self._expand(self.missing, p)


DATA_DIR = Path(__file__).with_name("data")
MODEL_FILES = {"B23": "blowup_b23.json", "C23": "blowup_c23.json", "C33": "blowup_c33.json"}


def load_script(family: str, data_dir: Path | str | None = None) -> BlowupScript:
    fam = family.upper()
    if fam not in MODEL_FILES:
        raise BadInput(f"no blow-up model for {family!r}")
    return BlowupScript.load(Path(data_dir or DATA_DIR) / MODEL_FILES[fam])


def family_model(family: str, p: int, data_dir: Path | str | None = None) -> tuple[BlowupModel, list[str]]:
    script = load_script(family, data_dir)
    return script.build(p), script.kept_labels(p)


def torsion_order(factors: Sequence[int]) -> int:
    return invariants_order(list(factors))
