"""Offline search for relator certificates.

Only used to regenerate the stored certificate fixtures; verification goes
through :func:`qhdkit.fpgroup.check_relator_certificate` alone.
"""
from __future__ import annotations

import heapq
from itertools import count

from .fpgroup import Presentation, RelatorCertificate, Word, cyclic_reduce


def _rotations(p: Presentation) -> list[tuple[Word, int, int, Word]]:
    """All cyclic rotations ``rho = y r^sign y^-1`` as ``(rho, index, sign, y)``."""
    out = []
    seen = set()
    for idx, r in enumerate(p.relators):
        for sign in (1, -1):
            rr = r if sign > 0 else ~r
            c = cyclic_reduce(rr)
            k = (len(rr) - len(c)) // 2
            u = Word(rr[:k])
            for i in range(len(c)):
                s = Word(c[:i])
                rho = Word(tuple(c[i:]) + tuple(c[:i]))
                if rho in seen:
                    continue
                seen.add(rho)
                out.append((rho, idx, sign, ~s * ~u))
    return out


def search_certificate(p: Presentation, target: Word, *, max_nodes: int = 200_000,
                       slack: int = 4, depth_weight: float = 0.5) -> RelatorCertificate | None:
    """Best-first search for ``target = prod c_i r_i^{+-1} c_i^-1``.

    Each step inserts a rotated relator into the residual word at some
    position; states are ranked by residual length plus a depth penalty.
    """
    rots = _rotations(p)
    target = Word(target)
    tie = count()
    heap = [(len(target), next(tie), target, ())]
    best = {target: 0}
    nodes = 0
    while heap and nodes < max_nodes:
        _, _, w, factors = heapq.heappop(heap)
        nodes += 1
        if not w:
            cert = RelatorCertificate(tuple(factors))
            assert cert.product(p) == target
            return cert
        depth = len(factors) + 1
        for i in range(len(w) + 1):
            a, b = Word(w[:i]), Word(w[i:])
            for rho, idx, sign, y in rots:
                nw = a * rho * b
                if len(nw) > len(w) + slack:
                    continue
                if nw in best and best[nw] <= depth:
                    continue
                best[nw] = depth
                nf = factors + ((idx, -sign, a * y),)
                heapq.heappush(heap, (len(nw) + depth_weight * depth, next(tie), nw, nf))
    return None
