"""Exact linear algebra over any of the supported scalar types.

Everything here is plain Gaussian elimination; rows are kept sparse (dicts
from column to nonzero entry) because the systems produced by structure
constants have very few nonzeros per equation.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence


class RowReducer:
    """Incremental reduced row echelon form.

    Pivot rows are normalised (pivot entry 1) and kept fully reduced against
    each other, so adding a row costs one pass over the pivots it touches.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        for col in [c for c in row if c in self.rows]:
            c = row.get(col)
            if not c:
                continue
            for k, v in self.rows[col].items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; True when it was independent of the previous ones."""
        row = self.reduce(row)
        if not row:
            return False
        piv = min(row)
        inv = 1 / row[piv]
        row = {k: v * inv for k, v in row.items()}
        for r in self.rows.values():
            c = r.get(piv)
            if c:
                for k, v in row.items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        self.rows[piv] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def nullspace(self, zero, one) -> List[list]:
        """Basis of {x : row . x = 0 for every row}, one vector per free column."""
        out = []
        for f in range(self.ncols):
            if f in self.rows:
                continue
            v = [zero] * self.ncols
            v[f] = one
            for p, r in self.rows.items():
                c = r.get(f)
                if c:
                    v[p] = -c
            out.append(v)
        return out


def nullspace(rows: Iterable[dict], ncols: int, zero, one) -> List[list]:
    rr = RowReducer(ncols)
    for r in rows:
        rr.add(r)
    return rr.nullspace(zero, one)


def solve(rows: Sequence[dict], rhs: Sequence, ncols: int, zero) -> Optional[list]:
    """One solution of the sparse system rows . x = rhs (free variables 0)."""
    rr = RowReducer(ncols + 1)
    for r, b in zip(rows, rhs):
        rr.add({**r, ncols: b} if b else dict(r))
    if ncols in rr.rows:
        return None
    x = [zero] * ncols
    for p, r in rr.rows.items():
        x[p] = r.get(ncols, zero)
    return x


def dense_rows(mat: Sequence[Sequence]) -> List[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in mat]


def rank(vectors: Iterable[Sequence], ncols: int) -> int:
    rr = RowReducer(ncols)
    for v in vectors:
        rr.add({j: x for j, x in enumerate(v) if x})
    return rr.rank


def independent_subset(vectors: Sequence[Sequence], ncols: int) -> List[int]:
    """Indices of a maximal linearly independent subfamily, greedily in order."""
    rr = RowReducer(ncols)
    keep = []
    for i, v in enumerate(vectors):
        if rr.add({j: x for j, x in enumerate(v) if x}):
            keep.append(i)
    return keep


def in_span(vectors: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    rr = RowReducer(ncols)
    for w in vectors:
        rr.add({j: x for j, x in enumerate(w) if x})
    return not rr.reduce({j: x for j, x in enumerate(v) if x})


def identity(n: int, zero, one) -> List[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> List[list]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] = oi[j] + c * bt[j]
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence, zero) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), zero) for row in a]


def transpose(a: Sequence[Sequence]) -> List[list]:
    return [list(r) for r in zip(*a)]


def inverse(a: Sequence[Sequence], zero, one) -> Optional[List[list]]:
    """Inverse of a square matrix, or None when singular."""
    n = len(a)
    rr = RowReducer(2 * n)
    for i, row in enumerate(a):
        r = {j: v for j, v in enumerate(row) if v}
        r[n + i] = one
        rr.add(r)
    if any(p not in rr.rows for p in range(n)):
        return None
    return [[rr.rows[i].get(n + j, zero) for j in range(n)] for i in range(n)]
