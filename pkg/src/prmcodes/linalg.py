"""Gaussian elimination over GF(q) on uint8 numpy matrices."""

from __future__ import annotations

import numpy as np

from .galois import FieldSpec


def rref(field: FieldSpec, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Zero rows are dropped, so the returned matrix has ``rank`` rows.
    """
    a = np.array(a, dtype=np.uint8, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = field.mul_table[field.inv_table[a[r, c]], a[r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            # row_i <- row_i - a[i, c] * row_r
            factors = a[others, c]
            a[others] = field.sub_table[a[others], field.mul_table[factors[:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(field: FieldSpec, a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(field, a)[1])


def nullspace(field: FieldSpec, a) -> np.ndarray:
    """Basis (as rows) of {x : a x = 0}."""
    a = np.asarray(a, dtype=np.uint8)
    cols = a.shape[1]
    red, pivots = rref(field, a) if a.shape[0] else (a[:0], [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = field.neg_table[red[row, f]]
    return basis


def solve(field: FieldSpec, a, b):
    """One solution x of a x = b, or None when the system is inconsistent."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    aug = np.concatenate([a, b[:, None]], axis=1)
    red, pivots = rref(field, aug)
    if pivots and pivots[-1] == a.shape[1]:
        return None
    x = np.zeros(a.shape[1], dtype=np.uint8)
    for row, pc in enumerate(pivots):
        x[pc] = red[row, -1]
    return x


def inverse(field: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    aug = np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1)
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return red[:, n:]


def same_row_space(field: FieldSpec, a, b) -> bool:
    ra, rb = rank(field, a), rank(field, b)
    return ra == rb == rank(field, np.concatenate([a, b], axis=0))
