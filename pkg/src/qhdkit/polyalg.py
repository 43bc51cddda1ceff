"""Sparse multivariate polynomials with exact coefficients.

A coefficient is a rational times an optional root of unity ``omega**k``
where ``omega`` is a fixed primitive ``N``-th root. Terms are keyed by
``(exponent vector, k)``, so products of roots just add exponents mod ``N``.
Distinct ``k`` are kept apart even when a cyclotomic relation would let them
combine; equality is therefore exact for the rational part and syntactic
for the roots, which is all the invariance checks need.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "PolySyntaxError",
    "PolyMap",
    "SparsePolynomial",
    "ZeroPolynomial",
    "divide_exact",
    "evaluate",
    "is_scalar_multiple",
    "multiplicity",
    "parse_polynomial",
    "substitute",
    "tangent_cone",
    "translate_chart",
]


class ZeroPolynomial(ValueError):
    pass


class PolySyntaxError(ValueError):
    pass


Key = tuple[tuple[int, ...], int]


class SparsePolynomial:
    __slots__ = ("variables", "modulus", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Key, Fraction] | None = None,
                 modulus: int | None = None):
        self.variables = tuple(variables)
        self.modulus = modulus
        clean: dict[Key, Fraction] = {}
        n = len(self.variables)
        for (mono, k), c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} does not match {n} variables")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent")
            k = k % modulus if modulus else 0
            key = (tuple(mono), k)
            v = clean.get(key, 0) + Fraction(c)
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self._terms = clean

    # constructors
    @classmethod
    def constant(cls, c, variables: Sequence[str], modulus: int | None = None, root: int = 0):
        return cls(variables, {((0,) * len(variables), root): Fraction(c)}, modulus)

    @classmethod
    def var(cls, name: str, variables: Sequence[str], modulus: int | None = None):
        variables = tuple(variables)
        mono = tuple(int(v == name) for v in variables)
        if sum(mono) != 1:
            raise KeyError(name)
        return cls(variables, {(mono, 0): Fraction(1)}, modulus)

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def _like(self, terms) -> "SparsePolynomial":
        return SparsePolynomial(self.variables, terms, self.modulus)

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            if other.modulus != self.modulus and other._has_roots() and self._has_roots():
                raise ValueError("root-of-unity modulus mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(other, self.variables, self.modulus)
        return NotImplemented

    def _has_roots(self) -> bool:
        return any(k for _, k in self._terms)

    def _mod(self, other: "SparsePolynomial") -> int | None:
        return self.modulus or other.modulus

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return SparsePolynomial(self.variables, out, self._mod(other))

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mod = self._mod(other)
        out: dict[Key, Fraction] = {}
        for (m1, k1), c1 in self._terms.items():
            for (m2, k2), c2 in other._terms.items():
                key = (tuple(a + b for a, b in zip(m1, m2)), (k1 + k2) % mod if mod else 0)
                out[key] = out.get(key, 0) + c1 * c2
        return SparsePolynomial(self.variables, out, mod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = SparsePolynomial.constant(1, self.variables, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(other, self.variables, self.modulus)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def times_root(self, k: int) -> "SparsePolynomial":
        if not self.modulus:
            raise ValueError("no root-of-unity modulus declared")
        return self._like({(m, r + k): c for (m, r), c in self._terms.items()})

    # degrees
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m, _ in self._terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if not self._terms:
            return -1
        return max(sum(w * e for w, e in zip(weights, m)) for m, _ in self._terms)

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        return len({sum(w * e for w, e in zip(weights, m)) for m, _ in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "SparsePolynomial":
        return self._like({k: c for k, c in self._terms.items() if sum(k[0]) == d})

    def lowest_part(self) -> "SparsePolynomial":
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no lowest-degree part")
        return self.homogeneous_part(min(sum(m) for m, _ in self._terms))

    def leading(self) -> tuple[Key, Fraction]:
        """Leading term in graded lexicographic order."""
        key = max(self._terms, key=lambda k: (sum(k[0]), k[0], k[1]))
        return key, self._terms[key]

    def rename(self, variables: Sequence[str]) -> "SparsePolynomial":
        if len(variables) != len(self.variables):
            raise ValueError("arity mismatch")
        return SparsePolynomial(variables, self._terms, self.modulus)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        order = sorted(self._terms, key=lambda k: (-sum(k[0]), [-e for e in k[0]], k[1]))
        for key in order:
            mono, k = key
            c = self._terms[key]
            factors = [f"{v}^{e}" if e > 1 else v for v, e in zip(self.variables, mono) if e]
            if k:
                factors.insert(0, f"w{self.modulus}^{k}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            parts.append(("- " if c < 0 else "+ ") + "*".join(factors))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


@dataclass(frozen=True)
class PolyMap:
    """Substitution rule: each source variable goes to a polynomial in ``target``."""
    source: tuple[str, ...]
    images: tuple[SparsePolynomial, ...]

    def __post_init__(self):
        if len(self.source) != len(self.images):
            raise ValueError("one image per source variable")
        if len({im.variables for im in self.images}) > 1:
            raise ValueError("images must share their variables")

    @classmethod
    def parse(cls, source: Sequence[str], images: Sequence[str], target: Sequence[str],
              modulus: int | None = None) -> "PolyMap":
        return cls(tuple(source), tuple(parse_polynomial(t, target, modulus) for t in images))

    @property
    def target(self) -> tuple[str, ...]:
        return self.images[0].variables


def substitute(f: SparsePolynomial, phi: PolyMap) -> SparsePolynomial:
    if f.variables != phi.source:
        missing = set(f.variables) - set(phi.source)
        if missing:
            raise ValueError(f"variables without image: {sorted(missing)}")
        images = [phi.images[phi.source.index(v)] for v in f.variables]
    else:
        images = list(phi.images)
    mod = f.modulus or next((im.modulus for im in images if im.modulus), None)
    target = phi.target
    out = SparsePolynomial(target, {}, mod)
    powers: dict[tuple[int, int], SparsePolynomial] = {}
    for (mono, k), c in f.terms.items():
        term = SparsePolynomial.constant(c, target, mod, k)
        for i, e in enumerate(mono):
            if e:
                if (i, e) not in powers:
                    powers[i, e] = images[i] ** e
                term = term * powers[i, e]
        out = out + term
    return out


def divide_exact(f: SparsePolynomial, g: SparsePolynomial) -> SparsePolynomial | None:
    """Quotient ``h`` with ``f == g*h``, or None when ``g`` does not divide ``f``."""
    if not g:
        raise ZeroPolynomial("division by zero polynomial")
    if f._has_roots() or g._has_roots():
        raise ValueError("division is over the rationals only")
    (glm, _), glc = g.leading()
    q = SparsePolynomial(f.variables, {}, f.modulus)
    r = f
    while r:
        (rlm, _), rlc = r.leading()
        if any(a < b for a, b in zip(rlm, glm)):
            return None
        t = SparsePolynomial(f.variables, {(tuple(a - b for a, b in zip(rlm, glm)), 0): rlc / glc})
        q = q + t
        r = r - t * g
    return q


def translate_chart(variables: Sequence[str], point: Sequence) -> PolyMap:
    """Chart moving ``point`` to the origin: ``v -> v + point_v``."""
    variables = tuple(variables)
    images = tuple(
        SparsePolynomial.var(v, variables) + Fraction(p) for v, p in zip(variables, point)
    )
    return PolyMap(variables, images)


def tangent_cone(f: SparsePolynomial, chart: PolyMap | None = None) -> SparsePolynomial:
    g = substitute(f, chart) if chart is not None else f
    if not g:
        raise ZeroPolynomial("polynomial vanishes identically on the chart")
    if not g.lowest_part().degree():
        raise ValueError("chart does not centre a point of the curve at the origin")
    return g.lowest_part()


def multiplicity(f: SparsePolynomial, point: Sequence) -> int:
    """Order of vanishing of ``f`` at ``point`` (0 if it does not pass through)."""
    g = substitute(f, translate_chart(f.variables, point))
    if not g:
        raise ZeroPolynomial("polynomial is identically zero")
    return g.lowest_part().degree()


def evaluate(f: SparsePolynomial, point: Sequence | Mapping[str, object]) -> Fraction:
    if isinstance(point, Mapping):
        point = [point[v] for v in f.variables]
    if len(point) != len(f.variables):
        raise ValueError("point arity mismatch")
    if f._has_roots():
        raise ValueError("cannot evaluate root-of-unity coefficients exactly in Q")
    vals = [Fraction(p) for p in point]
    total = Fraction(0)
    for (mono, _), c in f.terms.items():
        t = c
        for v, e in zip(vals, mono):
            if e:
                t *= v ** e
        total += t
    return total


def is_scalar_multiple(f: SparsePolynomial, g: SparsePolynomial) -> tuple[Fraction, int] | None:
    """``(c, k)`` with ``g == c * omega**k * f``, or None."""
    if not f or not g or f.variables != g.variables:
        return None
    fk, fc = f.leading()
    gk, gc = g.leading()
    if fk[0] != gk[0]:
        return None
    c, k = gc / fc, gk[1] - fk[1]
    mod = f.modulus or g.modulus
    k = k % mod if mod else 0
    scaled = SparsePolynomial(f.variables, {(m, r + k): v * c for (m, r), v in f.terms.items()}, mod)
    return (c, k) if scaled == g else None


_BINOPS = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Pow: "pow", ast.Div: "div"}


def parse_polynomial(text: str, variables: Sequence[str] | None = None,
                     modulus: int | None = None) -> SparsePolynomial:
    """Parse ``y^2*z - x^2*(x+z)``; rational constants may be written ``3/4``.

    Without ``variables`` the names found are sorted alphabetically.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolySyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    if variables is None:
        variables = sorted({n.id for n in ast.walk(tree) if isinstance(n, ast.Name)})
    variables = tuple(variables)

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return SparsePolynomial.constant(node.value, variables, modulus)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise PolySyntaxError(f"unknown variable {node.id!r}")
            return SparsePolynomial.var(node.id, variables, modulus)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            op = _BINOPS[type(node.op)]
            left = walk(node.left)
            if op == "pow":
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise PolySyntaxError("exponents must be integer literals")
                return left ** node.right.value
            right = walk(node.right)
            if op == "div":
                if right.degree() != 0 or right._has_roots():
                    raise PolySyntaxError("can only divide by rational constants")
                (_, c), = right.terms.items() or [(None, 0)]
                if not c:
                    raise PolySyntaxError("division by zero")
                return left * (1 / c)
            return getattr(left, f"__{op}__")(right)
        raise PolySyntaxError(f"unsupported syntax in {text!r}")

    try:
        return walk(tree)
    except ValueError as exc:
        if isinstance(exc, PolySyntaxError):
            raise
        raise PolySyntaxError(str(exc)) from None
