"""Small dense linear algebra over a prime field F_p."""

from __future__ import annotations

import itertools

__all__ = ["rref", "rank", "nullspace", "enumerate_subspaces", "span_rows"]


def rref(rows, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p: int) -> int:
    return len(rref(rows, p)[0])


def span_rows(rows, p: int) -> tuple[tuple[int, ...], ...]:
    """Canonical key of the row space."""
    return tuple(tuple(r) for r in rref(rows, p)[0])


def nullspace(rows, ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : A x = 0}."""
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = -row[f] % p
        basis.append(x)
    return basis


def enumerate_subspaces(n: int, p: int):
    """Every subspace of F_p^n, as RREF row tuples (the zero space is ())."""
    yield ()
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            # free entries: row i, column c > pivots[i] with c not a pivot
            slots = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), x in zip(slots, vals):
                    rows[i][c] = x
                yield tuple(tuple(r) for r in rows)
