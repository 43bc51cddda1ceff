"""Todd-Coxeter coset enumeration (HLT strategy with lookahead)."""
from __future__ import annotations

from dataclasses import dataclass

from .presentation import Presentation
from .words import Word

DEFAULT_MAX_COSETS = 200_000


class BoundExceeded(Exception):
    """The coset table did not close within the coset bound.

    This says nothing about finiteness of the index.
    """


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """A complete, standardized coset table.

    ``rows[c][2*i]`` is ``c . g_i`` and ``rows[c][2*i+1]`` is ``c . g_i^-1``;
    coset 0 is the subgroup itself.
    """
    ngens: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.rows)

    complete = True

    def act(self, coset: int, w: Word) -> int:
        for x in w:
            coset = self.rows[coset][_col(x)]
        return coset

    def permutation(self, w: Word) -> tuple[int, ...]:
        """Right action of ``w`` on cosets as a tuple ``c -> c.w``."""
        perm = list(range(self.index))
        for x in w:
            col = _col(x)
            perm = [self.rows[c][col] for c in perm]
        return tuple(perm)

    def generator_permutations(self) -> list[tuple[int, ...]]:
        return [tuple(r[2 * i] for r in self.rows) for i in range(self.ngens)]


class _Enumerator:
    def __init__(self, ngens: int, relators: list[Word], max_cosets: int):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.rels = [list(r) for r in relators]
        self.max_cosets = max_cosets
        self.hard_limit = 8 * max_cosets + 64
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent: list[int] = [0]
        self.live = 1

    # union-find over cosets
    def rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)
            self.live -= 1

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        T = self.table
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = T[gamma][x]
                if delta < 0:
                    continue
                xi = x ^ 1
                T[delta][xi] = -1
                mu, nu = self.rep(gamma), self.rep(delta)
                if T[mu][x] >= 0:
                    self.merge(nu, T[mu][x], queue)
                elif T[nu][xi] >= 0:
                    self.merge(mu, T[nu][xi], queue)
                else:
                    T[mu][x] = nu
                    T[nu][xi] = mu

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.hard_limit:
            raise BoundExceeded(f"more than {self.hard_limit} coset slots used")
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][x ^ 1] = c
        self.live += 1

    def scan(self, alpha: int, w: list[int], fill: bool) -> None:
        T = self.table
        f, b = alpha, alpha
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][_col(w[i])] >= 0:
                f = T[f][_col(w[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][_col(-w[j])] >= 0:
                b = T[b][_col(-w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][_col(w[i])] = b
                T[b][_col(-w[i])] = f
                return
            if not fill:
                return
            self.define(f, _col(w[i]))

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            for r in self.rels:
                if self.parent[c] != c:
                    break
                self.scan(c, r, fill=False)

    def run(self, subgens: list[Word]) -> None:
        for h in subgens:
            self.scan(0, list(h), fill=True)
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                if self.live > self.max_cosets:
                    self.lookahead()
                    if self.live > self.max_cosets:
                        raise BoundExceeded(f"coset table exceeded {self.max_cosets} live cosets")
                for r in self.rels:
                    if self.parent[c] != c:
                        break
                    self.scan(c, r, fill=True)
                if self.parent[c] == c:
                    for x in range(self.ncols):
                        if self.table[c][x] < 0:
                            self.define(c, x)
            c += 1

    def standardized(self) -> CosetTable:
        order = {0: 0}
        queue = [0]
        k = 0
        while k < len(queue):
            c = queue[k]
            k += 1
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in order:
                    order[d] = len(queue)
                    queue.append(d)
        rows = tuple(tuple(order[self.rep(self.table[c][x])] for x in range(self.ncols))
                     for c in queue)
        return CosetTable(self.ngens, rows)


def coset_enumerate(p: Presentation, subgens=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgens>`` in the group of ``p``.

    Raises :class:`BoundExceeded` when the table does not close.
    """
    if max_cosets <= 0:
        raise ValueError("max_cosets must be positive")
    rels = sorted(p.cyclic_relators(), key=lambda r: (len(r), tuple(r)))
    en = _Enumerator(p.ngens, rels, max_cosets)
    en.run([Word(h) for h in subgens])
    return en.standardized()


def group_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int | None:
    """Order of the group, or ``None`` when enumeration does not close (unknown)."""
    try:
        return coset_enumerate(p, (), max_cosets).index
    except BoundExceeded:
        return None
