"""Exact Gaussian elimination over Q(zeta_N).

Vectors are dense lists of CycloScalar. ``Echelon`` keeps a reduced row
echelon basis of a growing span and remembers, for each basis row, which
combination of the inserted vectors produced it; that bookkeeping is what
turns a membership test into an explicit witness.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .scalar import CycloScalar, CyclotomicField

Vector = list[CycloScalar]
Matrix = list[list[CycloScalar]]


def _axpy(y: Vector, a: CycloScalar, x: Vector, start: int = 0) -> None:
    # y <- y - a x, in place
    for j in range(start, len(y)):
        if x[j]:
            y[j] = y[j] - a * x[j]


def _combine(target: dict, a: CycloScalar, src: dict) -> None:
    # target <- target - a src
    for k, v in src.items():
        nv = target[k] - a * v if k in target else -(a * v)
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Echelon:
    """Reduced row echelon basis of span(inserted vectors) with provenance."""

    def __init__(self, field: CyclotomicField, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[Vector] = []
        self.pivots: list[int] = []
        self.labels: list[dict[Hashable, CycloScalar]] = []

    def copy(self) -> "Echelon":
        out = Echelon(self.field, self.dim)
        out.rows = [list(r) for r in self.rows]
        out.pivots = list(self.pivots)
        out.labels = [dict(l) for l in self.labels]
        return out

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Sequence[CycloScalar]) -> tuple[dict[Hashable, CycloScalar], Vector]:
        """Split vector = sum(coeff[label] * inserted[label]) + remainder.

        The remainder is zero exactly when the vector lies in the span.
        """
        v = list(vector)
        combo: dict[Hashable, CycloScalar] = {}
        for row, p, lab in zip(self.rows, self.pivots, self.labels):
            c = v[p]
            if c:
                _axpy(v, c, row, p)
                _combine(combo, -c, lab)
        return combo, v

    def contains(self, vector: Sequence[CycloScalar]) -> bool:
        return not any(self.reduce(vector)[1])

    def add(self, vector: Sequence[CycloScalar], label: Hashable) -> bool:
        """Insert a labelled vector; return False if it was already in the span."""
        combo, v = self.reduce(vector)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        # row = vector - combo, scaled so the pivot is 1
        lab = {k: -c for k, c in combo.items()}
        lab[label] = lab.get(label, self.field.zero()) + 1
        s = v[p].inv()
        v = [x * s if x else x for x in v]
        lab = {k: c * s for k, c in lab.items() if c}
        for i, row in enumerate(self.rows):
            c = row[p]
            if c:
                _axpy(row, c, v)
                _combine(self.labels[i], c, lab)
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        self.labels.insert(at, lab)
        return True


def zeros(field: CyclotomicField, rows: int, cols: int) -> Matrix:
    z = field.zero()
    return [[z] * cols for _ in range(rows)]


def identity(field: CyclotomicField, n: int) -> Matrix:
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one()
    return out


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix, field: CyclotomicField) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), field.zero()) for col in bt])
    return out


def row_reduce(m: Matrix, field: CyclotomicField) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    ncols = len(m[0]) if m else 0
    ech = Echelon(field, ncols)
    for i, row in enumerate(m):
        ech.add(row, i)
    return [list(r) for r in ech.rows], list(ech.pivots)


def rank(m: Matrix, field: CyclotomicField) -> int:
    return len(row_reduce(m, field)[1])


def nullspace(m: Matrix, field: CyclotomicField, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column, free entry 1."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rref, pivots = row_reduce(m, field) if m else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [field.zero()] * ncols
        x[f] = field.one()
        for row, p in zip(rref, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def determinant(m: Matrix, field: CyclotomicField) -> CycloScalar:
    n = len(m)
    a = [list(r) for r in m]
    det = field.one()
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return field.zero()
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv
        inv = pv.inv()
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                _axpy(a[r], f, a[c], c)
    return det


def solve(m: Matrix, b: Vector, field: CyclotomicField) -> Vector | None:
    """One solution x of m x = b, or None when the system is inconsistent."""
    ncols = len(m[0]) if m else 0
    cols = transpose(m) if m else []
    ech = Echelon(field, len(b))
    for j, col in enumerate(cols):
        ech.add(col, j)
    combo, rem = ech.reduce(b)
    if any(rem):
        return None
    x = [field.zero()] * ncols
    for j, c in combo.items():
        x[j] = c
    return x
