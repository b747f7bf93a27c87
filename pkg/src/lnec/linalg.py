"""Exact linear algebra over a :class:`~lnec.gf.Field`.

Matrices are lists of rows, entries canonical field integers.  Elimination
pivots on the leftmost nonzero column and, within a column, on the smallest
row index, so identical inputs always give identical reduced forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import SingularMatrixError
from .gf import Field

Matrix = list  # list[list[int]]


def _shape(M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, int]:
    n = len(M)
    if n == 0:
        return 0, ncols or 0
    w = len(M[0])
    if any(len(r) != w for r in M):
        raise ValueError("ragged matrix")
    return n, w


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[0] * m for _ in range(n)]


def transpose(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(F: Field, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    n, k = _shape(A)
    k2, m = _shape(B)
    if n and k != k2:
        raise ValueError(f"dimension mismatch: {n}x{k} times {k2}x{m}")
    out = []
    for row in A:
        acc = [0] * m
        for a, brow in zip(row, B):
            if a:
                acc = F.sub_scaled(acc, F.neg(a), brow)
        out.append(acc)
    return out


def vecmat(F: Field, v: Sequence[int], B: Sequence[Sequence[int]]) -> list[int]:
    """Row vector times matrix."""
    return matmul(F, [list(v)], B)[0] if B else []


def rref(F: Field, M: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in M]
    n, w = _shape(rows)
    pivots: list[int] = []
    r = 0
    for c in range(w):
        if r == n:
            break
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = F.scale(F.inv(lead), rows[r])
        pivot_row = rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = F.sub_scaled(rows[i], rows[i][c], pivot_row)
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(F: Field, M: Sequence[Sequence[int]]) -> int:
    """Rank via forward elimination only (no back substitution)."""
    rows = [list(r) for r in M if any(r)]
    if not rows:
        return 0
    w = len(rows[0])
    rk = 0
    for c in range(w):
        p = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        pivot_row = rows[rk]
        inv = F.inv(pivot_row[c])
        for i in range(rk + 1, len(rows)):
            x = rows[i][c]
            if x:
                rows[i] = F.sub_scaled(rows[i], F.mul(x, inv), pivot_row)
        rk += 1
        if rk == len(rows):
            break
    return rk


def inverse(F: Field, A: Sequence[Sequence[int]]) -> Matrix:
    n, w = _shape(A)
    if n != w:
        raise ValueError(f"inverse needs a square matrix, got {n}x{w}")
    aug = [list(row) + e for row, e in zip(A, identity(n))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def nullspace(F: Field, A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0}, one basis vector per row."""
    n, w = _shape(A, ncols)
    R, piv = rref(F, A) if n else ([], [])
    free = [c for c in range(w) if c not in piv]
    basis = []
    for f in free:
        x = [0] * w
        x[f] = 1
        for row, pc in zip(R, piv):
            x[pc] = F.neg(row[f])
        basis.append(x)
    return basis


class Solution(NamedTuple):
    """Solution set of ``A x = b``: ``particular + span(nullspace)``.

    ``particular`` is None when the system is inconsistent.
    """

    particular: list[int] | None
    nullspace: Matrix

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve(F: Field, A: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None) -> Solution:
    """Solve ``A x = b`` for column vector ``x``."""
    n, w = _shape(A, ncols)
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(F, aug) if n else ([], [])
    if piv and piv[-1] == w:
        return Solution(None, nullspace(F, A, w))
    x = [0] * w
    for row, pc in zip(R, piv):
        x[pc] = row[w]
    return Solution(x, nullspace(F, A, w))


mat_rank = rank
mat_inv = inverse
mat_solve = solve


def reduce_vector(F: Field, basis: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int]) -> list[int]:
    """Reduce ``v`` modulo the row space of an RREF basis."""
    v = list(v)
    for row, pc in zip(basis, pivots):
        x = v[pc]
        if x:
            v = F.sub_scaled(v, x, row)
    return v


@dataclass(frozen=True)
class Subspace:
    """Row space of a matrix, held as its canonical RREF basis.

    Because the basis is canonical, two subspaces are equal exactly when
    their bases are equal.
    """

    field: Field
    ambient: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, F: Field, vectors: Sequence[Sequence[int]], ambient: int | None = None) -> Subspace:
        vectors = [list(v) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty span")
            ambient = len(vectors[0])
        R, piv = rref(F, vectors) if vectors else ([], [])
        return cls(F, ambient, tuple(tuple(r) for r in R), tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v: Sequence[int]) -> bool:
        return not any(reduce_vector(self.field, self.basis, self.pivots, v))

    __contains__ = contains

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.field, list(self.basis) + list(other.basis), self.ambient)

    def intersects(self, other: Subspace) -> bool:
        """True when the intersection is more than the zero vector."""
        stacked = list(self.basis) + list(other.basis)
        return self.dim + other.dim > rank(self.field, stacked)

    def intersection_dim(self, other: Subspace) -> int:
        stacked = list(self.basis) + list(other.basis)
        return self.dim + other.dim - rank(self.field, stacked)
