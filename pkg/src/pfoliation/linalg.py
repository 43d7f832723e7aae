"""Gaussian elimination over a FieldSpec.

Matrices are lists of rows of coefficient codes.  The ``kernel_of_map``
helper turns "find all combinations of these objects that a linear map
sends to zero" into a nullspace computation, which is how every linear
system in the package is posed.
"""
from __future__ import annotations

from .field import FieldSpec


def rref(rows, spec: FieldSpec):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    add, mul, inv, neg = spec.add, spec.mul, spec.inv, spec.neg
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        s = inv(m[r][c])
        if s != 1:
            m[r] = [mul(x, s) for x in m[r]]
        row = m[r]
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg(m[i][c])
                target = m[i]
                for j in nz:
                    target[j] = add(target[j], mul(f, row[j]))
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, spec: FieldSpec) -> int:
    return len(rref(rows, spec)[1])


def nullspace(rows, ncols: int, spec: FieldSpec) -> list[list[int]]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, spec)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = spec.neg(row[f])
        basis.append(v)
    return basis


def solve(rows, rhs, spec: FieldSpec):
    """One solution of rows . x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, spec)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def matrix_from_vectors(vectors: list[dict], spec: FieldSpec):
    """Columns given as sparse dicts (key -> code); returns (rows, keys)."""
    keys = sorted({k for v in vectors for k in v}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = [[0] * len(vectors) for _ in keys]
    for j, v in enumerate(vectors):
        for k, c in v.items():
            rows[index[k]][j] = c
    return rows, keys


def kernel_of_map(images: list[dict], spec: FieldSpec) -> list[list[int]]:
    """Combinations of the inputs whose images (sparse dicts) cancel."""
    rows, _ = matrix_from_vectors(images, spec)
    return nullspace(rows, len(images), spec)


def rank_of_vectors(vectors: list[dict], spec: FieldSpec) -> int:
    rows, _ = matrix_from_vectors(vectors, spec)
    return rank(rows, spec) if rows else 0


def independent_subset(vectors: list[dict], spec: FieldSpec) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset."""
    rows, _ = matrix_from_vectors(vectors, spec)
    if not rows:
        return []
    _, pivots = rref(rows, spec)
    return pivots
