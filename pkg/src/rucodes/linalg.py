"""Row reduction over GF(p^m) on integer-coded numpy matrices.

All routines go through the field's lookup tables; rows are reduced to the
pivot-leftmost, pivot-scaled-to-one echelon form so that two matrices span
the same space iff their reduced forms are identical.
"""

from __future__ import annotations

import numpy as np

from .field import FieldParams


def rref(M, field: FieldParams) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``M``; zero rows dropped.

    Returns:
        (R, pivots): R has one row per pivot, ``pivots[i]`` is the column of
        the leading 1 in row i.
    """
    t = field.tables
    mul, sub, inv = t["mul"], t["sub"], t["inv"]
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        R = R.reshape(-1, R.shape[-1] if R.ndim else 0)
    rows, cols = R.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = mul[inv[R[r, c]], R[r]]
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] = sub[R[hit], mul[factors[hit][:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def reduce_against(V, basis: np.ndarray, pivots: list[int], field: FieldParams) -> np.ndarray:
    """Residues of the rows of V after elimination by an RREF basis.

    A row lies in the span of ``basis`` iff its residue is all zero.
    """
    t = field.tables
    mul, sub = t["mul"], t["sub"]
    V = np.array(V, dtype=np.int64, copy=True)
    if V.ndim == 1:
        V = V[None, :]
    for row, c in zip(basis, pivots):
        f = V[:, c]
        hit = np.flatnonzero(f)
        if hit.size:
            V[hit] = sub[V[hit], mul[f[hit][:, None], row[None, :]]]
    return V


def span_chunks(chunks, width: int, field: FieldParams) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the span of many vectors delivered in chunks."""
    basis = np.zeros((0, width), dtype=np.int64)
    pivots: list[int] = []
    for chunk in chunks:
        chunk = np.asarray(chunk, dtype=np.int64)
        if chunk.size == 0:
            continue
        res = reduce_against(chunk, basis, pivots, field)
        new = res[res.any(axis=1)]
        if new.size:
            basis, pivots = rref(np.vstack([basis, new]), field)
    return basis, pivots
