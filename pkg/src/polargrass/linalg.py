"""Exact Gaussian elimination over any :class:`~polargrass.fields.Field`.

Matrices are sequences of rows; vectors are tuples.  Subspaces are stored by
their reduced row echelon basis, which makes equality of subspaces plain
equality of :class:`Subspace` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fields import Field

__all__ = [
    "RankDeficiencyError",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "solve",
    "canonical_subspace",
    "matmul",
    "matvec",
    "transpose",
    "identity",
    "is_invertible",
    "iter_rref_matrices",
]


class RankDeficiencyError(ValueError):
    """The given rows are linearly dependent."""


def rref(F: Field, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` has the same shape as the input (zero
    rows last) and ``pivots`` lists the pivot column of each nonzero row.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    zero = F.zero
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        if top == len(M):
            break
        piv = next((i for i in range(top, len(M)) if M[i][c] != zero), None)
        if piv is None:
            continue
        M[top], M[piv] = M[piv], M[top]
        inv = F.inv(M[top][c])
        if inv != F.one:
            M[top] = [F.mul(inv, x) for x in M[top]]
        prow = M[top]
        for i in range(len(M)):
            if i != top and M[i][c] != zero:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) if y != zero else x for x, y in zip(M[i], prow)]
        pivots.append(c)
        top += 1
    return [tuple(r) for r in M], pivots


def rank(F: Field, rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def kernel(F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    """Right null space ``{x : M x = 0}`` as a canonical subspace."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(F, rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for r, p in enumerate(pivots):
            x[p] = F.neg(R[r][f])
        basis.append(x)
    return canonical_subspace(F, basis, ambient_dim=ncols)


def solve(F: Field, M: Sequence[Sequence], b: Sequence):
    """One solution of ``M x = b`` (free variables set to zero), or None if inconsistent."""
    ncols = len(M[0])
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    R, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [F.zero] * ncols
    for r, p in enumerate(pivots):
        x[p] = R[r][ncols]
    return tuple(x)


def matmul(F: Field, A: Sequence[Sequence], B: Sequence[Sequence]) -> list[tuple]:
    cols = list(zip(*B))
    return [tuple(F.dot(row, col) for col in cols) for row in A]


def matvec(F: Field, A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(F.dot(row, x) for row in A)


def transpose(A: Sequence[Sequence]) -> list[tuple]:
    return [tuple(c) for c in zip(*A)]


def identity(F: Field, n: int) -> list[tuple]:
    return [tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)]


def is_invertible(F: Field, A: Sequence[Sequence]) -> bool:
    return rank(F, A) == len(A) == len(A[0])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^N held by its RREF basis."""

    field: Field
    ambient_dim: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        F = self.field
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != F.zero:
                w = [F.sub(x, F.mul(c, y)) for x, y in zip(w, row)]
        return all(x == F.zero for x in w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return canonical_subspace(self.field, self.basis + other.basis,
                                  ambient_dim=self.ambient_dim, reduce=True)

    def combine(self, coeffs: Sequence) -> tuple:
        """The vector sum_i coeffs[i] * basis[i]."""
        F = self.field
        out = [F.zero] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c != F.zero:
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def vectors(self) -> Iterator[tuple]:
        for coeffs in itertools.product(self.field.elements(), repeat=self.dim):
            yield self.combine(coeffs)

    def points(self) -> Iterator[tuple]:
        """Normalized representatives (leading entry 1) of the projective points."""
        F = self.field
        for lead in range(self.dim):
            for tail in itertools.product(F.elements(), repeat=self.dim - lead - 1):
                yield self.combine((F.zero,) * lead + (F.one,) + tail)

    def subspaces(self, j: int) -> Iterator["Subspace"]:
        """All j-dimensional subspaces, via RREF matrices in local coordinates."""
        F = self.field
        for local in iter_rref_matrices(F, self.dim, j):
            yield canonical_subspace(F, [self.combine(r) for r in local],
                                     ambient_dim=self.ambient_dim)

    def rows_text(self) -> str:
        F = self.field
        return ";".join(",".join(F.format_element(x) for x in row) for row in self.basis)


def canonical_subspace(F: Field, rows: Sequence[Sequence], *, ambient_dim: int | None = None,
                       reduce: bool = False) -> Subspace:
    """The RREF canonical form of the row span.

    Dependent rows raise :class:`RankDeficiencyError` unless ``reduce`` is set.
    """
    rows = list(rows)
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient dimension needed for an empty spanning set")
        ambient_dim = len(rows[0])
    if not rows:
        return Subspace(F, ambient_dim, (), ())
    R, pivots = rref(F, rows, ambient_dim)
    if len(pivots) < len(rows) and not reduce:
        raise RankDeficiencyError(f"{len(rows)} rows span only {len(pivots)} dimensions")
    return Subspace(F, ambient_dim, tuple(R[: len(pivots)]), tuple(pivots))


def iter_rref_matrices(F: Field, n: int, k: int) -> Iterator[list[tuple]]:
    """Every k x n matrix in reduced row echelon form of rank k, pivot sets in lexicographic order."""
    elems = F.elements()
    for piv in itertools.combinations(range(n), k):
        free = [[c for c in range(p + 1, n) if c not in piv] for p in piv]
        slots = [(r, c) for r, cols in enumerate(free) for c in cols]
        for vals in itertools.product(elems, repeat=len(slots)):
            M = [[F.zero] * n for _ in range(k)]
            for r, p in enumerate(piv):
                M[r][p] = F.one
            for (r, c), v in zip(slots, vals):
                M[r][c] = v
            yield [tuple(r) for r in M]
