"""Smith normal form over the integers."""
from __future__ import annotations



def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Diagonal ``d1 | d2 | ... | dr`` (nonzero, positive) of the Smith form."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the trailing block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the trailing block by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest entry of row/column t into the pivot
            best = (t, t)
            for i in range(t, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def cokernel_invariants(matrix: list[list[int]], ncols: int | None = None) -> list[int]:
    """Invariant factors of ``Z^ncols / rowspace(matrix)``; 0 encodes a free Z summand.

    Factors equal to 1 are dropped; zeros come last.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    d = smith_diagonal(matrix) if matrix and ncols else []
    torsion = [x for x in d if x > 1]
    return torsion + [0] * (ncols - len(d))


def invariants_order(factors: list[int]) -> int:
    """Order of the torsion part (product of nonzero factors)."""
    out = 1
    for f in factors:
        if f:
            out *= f
    return out


def integer_det(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def normalize_invariants(factors: list[int]) -> list[int]:
    """Canonical invariant-factor form of a list of cyclic orders (0 = Z)."""
    free = sum(1 for f in factors if f == 0)
    diag = [[0] * len(factors) for _ in factors]
    for i, f in enumerate(factors):
        diag[i][i] = f
    torsion = [x for x in smith_diagonal(diag) if x > 1] if factors else []
    return torsion + [0] * free


__all__ = ["smith_diagonal", "cokernel_invariants", "invariants_order", "integer_det",
           "normalize_invariants"]
