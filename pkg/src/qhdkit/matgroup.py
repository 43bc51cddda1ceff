"""The monomial group G = <S, T> in SL(4, C) and its variant G'.

Entries are powers of a primitive N-th root omega with N = 2m(m+1), so an
element is a permutation plus four exponents mod N:
``M[i, perm[i]] = omega**exps[i]``.
"""
from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .fpgroup import Word, b23_presentation, group_order, verify_homomorphism
from .polyalg import PolyMap, SparsePolynomial, substitute
from .snf import cokernel_invariants

SIZE_BOUND = 10**7
VARIABLES = ("x", "y", "z", "w")


class SizeBound(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class MonomialElement:
    perm: tuple[int, ...]
    exps: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.exps) != len(self.perm):
            raise ValueError("perm must be a permutation matching exps")
        object.__setattr__(self, "exps", tuple(e % self.modulus for e in self.exps))

    @classmethod
    def identity(cls, n: int, modulus: int) -> "MonomialElement":
        return cls(tuple(range(n)), (0,) * n, modulus)

    @classmethod
    def diagonal(cls, exps: Iterable[int], modulus: int) -> "MonomialElement":
        exps = tuple(exps)
        return cls(tuple(range(len(exps))), exps, modulus)

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        perm = tuple(other.perm[j] for j in self.perm)
        exps = tuple(e + other.exps[j] for e, j in zip(self.exps, self.perm))
        return MonomialElement(perm, exps, self.modulus)

    def inverse(self) -> "MonomialElement":
        n = len(self.perm)
        perm = [0] * n
        exps = [0] * n
        for i, j in enumerate(self.perm):
            perm[j] = i
            exps[j] = -self.exps[i]
        return MonomialElement(tuple(perm), tuple(exps), self.modulus)

    __invert__ = inverse

    def __pow__(self, k: int) -> "MonomialElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = MonomialElement.identity(len(self.perm), self.modulus)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and not any(self.exps)

    def order(self) -> int:
        # order = lcm over cycles of len * (N / gcd(N, cycle exponent sum))
        out = 1
        for cyc in self.cycles():
            s = sum(self.exps[i] for i in cyc) % self.modulus
            o = len(cyc) * (self.modulus // gcd(self.modulus, s))
            out = out * o // gcd(out, o)
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.perm)):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.perm[i]
            out.append(tuple(cyc))
        return out

    def has_eigenvalue_one(self) -> bool:
        # a cycle with coefficient product c contributes the len-th roots of c
        return any(sum(self.exps[i] for i in c) % self.modulus == 0 for c in self.cycles())

    def determinant_exponent(self) -> int | None:
        """Exponent k with det = omega**k; None when det is -omega**k (odd permutation, N odd)."""
        sign = 1
        for c in self.cycles():
            if len(c) % 2 == 0:
                sign = -sign
        k = sum(self.exps)
        if sign < 0:
            if self.modulus % 2:
                return None
            k += self.modulus // 2
        return k % self.modulus

    def to_matrix(self) -> list[list[complex]]:
        n = len(self.perm)
        rows = [[0j] * n for _ in range(n)]
        for i, (j, e) in enumerate(zip(self.perm, self.exps)):
            rows[i][j] = cmath.exp(2j * cmath.pi * e / self.modulus)
        return rows


def modulus_for(m: int) -> int:
    return 2 * m * (m + 1)


def milnor_fibre_euler_characteristic(m: int) -> int:
    """Quoted Greuel-Hamm value 1 + mu for the invariant complete intersection; not computed here."""
    return 4 * m * (m + 1)


def make_generators(m: int, variant: str = "G") -> tuple[MonomialElement, MonomialElement]:
    if m < 2:
        raise ValueError("m must be at least 2")
    n = modulus_for(m)
    s = MonomialElement.diagonal((1, -(2 * m + 1), 2 * m + 1, -1), n)
    swap = (1, 0, 3, 2)
    if variant == "G":
        t = MonomialElement(swap, (m, 0, 0, -m), n)
    elif variant in ("G'", "G′", "Gprime"):
        t = MonomialElement(swap, (0, n // 2, 0, n // 2), n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return s, t


@dataclass
class EnumeratedGroup:
    generators: tuple[MonomialElement, ...]
    elements: list[MonomialElement]
    index: dict[MonomialElement, int]
    edges: list[tuple[int, ...]] = field(repr=False)  # edges[i][g] = index of elements[i] * gen g

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, e: MonomialElement) -> bool:
        return e in self.index

    def identity(self) -> MonomialElement:
        return self.elements[0]

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def evaluate(self, w: Word) -> MonomialElement:
        out = self.identity()
        for x in w:
            g = self.generators[abs(x) - 1]
            out = out * (g if x > 0 else g.inverse())
        return out


def closure(gens: Iterable[MonomialElement], bound: int = SIZE_BOUND) -> EnumeratedGroup:
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if len({g.modulus for g in gens}) != 1:
        raise ValueError("generators must share a modulus")
    one = MonomialElement.identity(len(gens[0].perm), gens[0].modulus)
    elements = [one]
    index = {one: 0}
    edges: list[tuple[int, ...]] = []
    i = 0
    while i < len(elements):
        row = []
        for g in gens:
            h = elements[i] * g
            j = index.get(h)
            if j is None:
                if len(elements) >= bound:
                    raise SizeBound(f"group exceeds {bound} elements")
                j = len(elements)
                index[h] = j
                elements.append(h)
            row.append(j)
        edges.append(tuple(row))
        i += 1
    return EnumeratedGroup(gens, elements, index, edges)


def normal_closure(g: EnumeratedGroup, elems: Iterable[MonomialElement]) -> set[MonomialElement]:
    gens = list(elems)
    while True:
        sub = set(closure(gens).elements) if gens else {g.identity()}
        extra = [x * h * x.inverse() for x in g.generators for h in gens]
        new = [e for e in extra if e not in sub]
        if not new:
            return sub
        gens.extend(new)


def is_normal(g: EnumeratedGroup, sub: set[MonomialElement]) -> bool:
    return all(x * h * x.inverse() in sub for x in g.generators for h in sub)


def center(g: EnumeratedGroup) -> list[MonomialElement]:
    return [e for e in g.elements if all(e * x == x * e for x in g.generators)]


def commutator_subgroup(g: EnumeratedGroup) -> set[MonomialElement]:
    comms = [a * b * a.inverse() * b.inverse() for a in g.generators for b in g.generators]
    return normal_closure(g, comms)


def abelian_invariants_enumerated(g: EnumeratedGroup) -> list[int]:
    """Invariants of G/[G,G], read off the relation lattice of the generator images."""
    derived = commutator_subgroup(g)
    orders = [x.order() for x in g.generators]
    rels = [[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]

    def rec(prefix: list[int], elem: MonomialElement):
        k = len(prefix)
        if k == len(orders):
            if elem in derived and any(prefix):
                rels.append(list(prefix))
            return
        gk = g.generators[k]
        cur = elem
        for a in range(orders[k]):
            rec(prefix + [a], cur)
            cur = cur * gk

    rec([], g.identity())
    return cokernel_invariants(rels, len(orders))


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    center_order: int
    center_is_S_power: bool
    abelian_invariants: tuple[int, ...]
    order_histogram: dict[int, int]


def group_invariants(g: EnumeratedGroup, m: int | None = None) -> GroupInvariants:
    z = center(g)
    gen_ok = False
    if m is not None:
        s = g.generators[0]
        gen_ok = set(z) == set(closure([s ** m]).elements)
    hist = Counter(e.order() for e in g.elements)
    return GroupInvariants(
        order=g.order,
        center_order=len(z),
        center_is_S_power=gen_ok,
        abelian_invariants=tuple(abelian_invariants_enumerated(g)),
        order_histogram=dict(sorted(hist.items())),
    )


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    witness: MonomialElement | None = None

    def __bool__(self):
        return self.free


def fixed_point_free(g: EnumeratedGroup) -> FreenessReport:
    # the witness is a non-identity element of minimal order with eigenvalue 1
    bad = [e for e in g.elements if not e.is_identity() and e.has_eigenvalue_one()]
    if not bad:
        return FreenessReport(True)
    return FreenessReport(False, min(bad, key=lambda e: (e.order(), e)))


def word_in_st(e: MonomialElement, s: MonomialElement, t: MonomialElement, t_name: str = "T") -> str | None:
    """Short expression ``S^i`` or ``S^i*T`` for ``e``, if one exists."""
    n = s.order()
    for i in range(n):
        if s ** i == e:
            return f"S^{i}"
        if (s ** i) * t == e:
            return f"S^{i}*{t_name}"
    return None


def two_adic(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def _is_quaternion_pair(a, b, r: int) -> bool:
    half = a ** (2 ** (r - 1))
    return (
        a.order() == 2 ** r
        and b * b == half
        and b * a * b.inverse() == a.inverse()
    )


def find_quaternion_generators(elements: list[MonomialElement], rank: int):
    """Search ``elements`` (a 2-group of order 2**rank) for A, B with
    A^{2^{rank-1}} = 1, B^2 = A^{2^{rank-2}}, B A B^-1 = A^-1 generating it."""
    r = rank - 1
    cands = [a for a in elements if a.order() == 2 ** r]
    for a in cands:
        cyc = set(closure([a]).elements)
        for b in elements:
            if b in cyc:
                continue
            if _is_quaternion_pair(a, b, r) and len(closure([a, b]).elements) == len(elements):
                return a, b
    return None


@dataclass(frozen=True)
class SylowReport:
    m: int
    r: int
    odd_part: int
    H_order: int
    H_normal: bool
    H_is_odd_elements: bool
    J_order: int
    J_type: str  # "C<n>" or "Q<k>"
    J_generators: tuple[str, ...]
    J_relations_ok: bool
    J_normal: bool
    intersection_trivial: bool
    split: str  # "direct" or "semidirect"

    def to_dict(self) -> dict:
        return {"type": self.J_type, "split": self.split}

    @property
    def consistent(self) -> bool:
        """All the Sylow statements hold for this m."""
        power_of_two = self.m & (self.m - 1) == 0
        return (
            self.H_order == self.odd_part
            and self.H_normal
            and self.H_is_odd_elements
            and self.J_relations_ok
            and self.intersection_trivial
            and self.J_order * self.H_order == 4 * self.m * (self.m + 1)
            and self.J_normal == power_of_two
            and (self.split == "direct") == power_of_two
        )


def sylow_structure(m: int) -> SylowReport:
    s, t = make_generators(m)
    g = closure([s, t])
    n = modulus_for(m)
    v, odd = two_adic(n)
    r = v - 1
    h = set(closure([s ** (2 ** (r + 1))]).elements)
    odd_elems = {e for e in g.elements if e.order() % 2}
    if m % 2:
        k, rest = two_adic(m + 1)
        u = (rest + 1) // 2
        assert k == r
        gen = s ** u * t
        j = closure([gen]).elements
        jtype = f"C{len(j)}"
        rel_ok = gen.order() == 2 ** (r + 2) == len(j)
        jgens = (f"S^{u}*T",)
    else:
        q = m // 2 ** r
        a0, b0 = s ** (q * (m + 1)), s ** ((m + 2) // 2) * t
        j = closure([a0, b0]).elements
        rel_ok = len(j) == 2 ** (r + 2) and _is_quaternion_pair(a0, b0, r + 1)
        found = (a0, b0) if rel_ok else find_quaternion_generators(j, r + 2)
        rel_ok = found is not None and len(j) == 2 ** (r + 2)
        jtype = f"Q{r + 2}"
        jgens = (f"S^{q * (m + 1)}", f"S^{(m + 2) // 2}*T")
    jset = set(j)
    j_normal = is_normal(g, jset)
    inter = h & jset
    commute = all(a * b == b * a for a in h for b in jset)
    return SylowReport(
        m=m,
        r=r,
        odd_part=odd,
        H_order=len(h),
        H_normal=is_normal(g, h),
        H_is_odd_elements=h == odd_elems,
        J_order=len(jset),
        J_type=jtype,
        J_generators=jgens,
        J_relations_ok=rel_ok,
        J_normal=j_normal,
        intersection_trivial=len(inter) == 1,
        split="direct" if (j_normal and commute) else "semidirect",
    )


# contragredient action on the coordinate functions x, y, z, w


def polynomial_action(e: MonomialElement, f: SparsePolynomial) -> SparsePolynomial:
    """Substitute ``v -> (M^-1)^T v`` into ``f`` (variables x, y, z, w)."""
    if len(f.variables) != len(e.perm):
        raise ValueError("arity mismatch")
    n = e.modulus
    inv = e.inverse()
    images = []
    # (M^-1)^T[i, k] is nonzero where inv.perm[k] == i
    for i in range(len(e.perm)):
        k = inv.perm.index(i)
        images.append(SparsePolynomial.var(f.variables[k], f.variables, n).times_root(inv.exps[k]))
    return substitute(SparsePolynomial(f.variables, f.terms, n), PolyMap(f.variables, tuple(images)))


def invariant_polynomials(m: int) -> tuple[SparsePolynomial, SparsePolynomial]:
    """``xw + yz`` and ``zw + x^{2m} + zeta*y^{2m}`` with zeta = omega^m."""
    n = modulus_for(m)
    x, y, z, w = (SparsePolynomial.var(v, VARIABLES, n) for v in VARIABLES)
    f = x * w + y * z
    hyp = z * w + x ** (2 * m) + (y ** (2 * m)).times_root(m)
    return f, hyp


def b23_images(m: int) -> tuple[Word, Word]:
    """Images of ``a`` and ``l`` as words in S, T: ``a -> S``, ``l -> T S^-1``."""
    return Word.gen(0), Word.gen(1) * Word.gen(0, -1)


def verify_b23_isomorphism(m: int) -> bool:
    p = b23_presentation(m - 2)
    g = closure(make_generators(m))
    if not verify_homomorphism(p, list(b23_images(m)), g):
        return False
    return group_order(p) == g.order


def report(m: int, variant: str = "G") -> dict:
    s, t = make_generators(m, variant)
    g = closure([s, t])
    inv = group_invariants(g, m)
    fpf = fixed_point_free(g)
    out = {
        "m": m,
        "order": g.order,
        "center": inv.center_order,
        "ab": list(inv.abelian_invariants),
        "fpf": fpf.free,
    }
    if not fpf.free:
        out["witness"] = word_in_st(fpf.witness, s, t, "T'" if variant != "G" else "T")
        out["witness_order"] = fpf.witness.order()
    if variant == "G":
        out["sylow"] = sylow_structure(m).to_dict()
    return out
