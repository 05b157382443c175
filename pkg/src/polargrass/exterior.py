"""Exterior powers in the colex basis, Plücker coordinates and span accumulation.

Subsets are 0-based sorted tuples.  The basis of the k-th exterior power of F^N
is ``e_T`` for k-subsets ``T`` in colex order, so ``(0, 1)`` has rank 0 and,
for N = 4, ``(2, 3)`` has rank 5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .fields import Field
from .linalg import Subspace

__all__ = [
    "subset_rank",
    "subset_unrank",
    "subsets",
    "WedgeVector",
    "basis_wedge",
    "wedge_vectors",
    "plucker",
    "wedge",
    "SpanAccumulator",
    "shuffle_sign",
]


def subset_rank(T: Sequence[int], N: int | None = None) -> int:
    T = tuple(T)
    if any(b <= a for a, b in zip(T, T[1:])):
        raise ValueError(f"{T} is not strictly increasing")
    if T and (T[0] < 0 or (N is not None and T[-1] >= N)):
        raise ValueError(f"{T} is out of range for N={N}")
    return sum(comb(t, i + 1) for i, t in enumerate(T))


def subset_unrank(r: int, k: int, N: int | None = None) -> tuple[int, ...]:
    if r < 0 or (N is not None and r >= comb(N, k)):
        raise ValueError(f"rank {r} is out of range for C({N}, {k})")
    out = []
    for i in range(k, 0, -1):
        t = i - 1
        while comb(t + 1, i) <= r:
            t += 1
        out.append(t)
        r -= comb(t, i)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def subsets(N: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of range(N) in colex order."""
    return tuple(sorted(itertools.combinations(range(N), k), key=lambda T: T[::-1]))


@lru_cache(maxsize=None)
def _index(N: int, k: int) -> dict[tuple[int, ...], int]:
    return {T: i for i, T in enumerate(subsets(N, k))}


def shuffle_sign(A: Sequence[int], B: Sequence[int]) -> int:
    """Sign with e_A ^ e_B = sign * e_{A u B} for disjoint sorted A, B."""
    inversions = sum(1 for a in A for b in B if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class WedgeVector:
    """An element of the k-th exterior power of F^N, dense in the colex basis."""

    field: Field
    N: int
    k: int
    coords: tuple

    @classmethod
    def zero(cls, F: Field, N: int, k: int) -> "WedgeVector":
        return cls(F, N, k, (F.zero,) * comb(N, k))

    @classmethod
    def from_dict(cls, F: Field, N: int, k: int, entries: dict) -> "WedgeVector":
        c = [F.zero] * comb(N, k)
        idx = _index(N, k)
        for T, v in entries.items():
            c[idx[tuple(T)]] = v
        return cls(F, N, k, tuple(c))

    def __getitem__(self, T: Sequence[int]):
        return self.coords[_index(self.N, self.k)[tuple(T)]]

    def support(self) -> dict[tuple[int, ...], object]:
        Ts = subsets(self.N, self.k)
        return {Ts[i]: c for i, c in enumerate(self.coords) if c != self.field.zero}

    def is_zero(self) -> bool:
        return all(c == self.field.zero for c in self.coords)

    def _check(self, other: "WedgeVector"):
        if (self.N, self.k) != (other.N, other.k) or self.field != other.field:
            raise ValueError("wedge vectors of different exterior powers")

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        self._check(other)
        F = self.field
        return WedgeVector(F, self.N, self.k, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WedgeVector") -> "WedgeVector":
        self._check(other)
        F = self.field
        return WedgeVector(F, self.N, self.k, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "WedgeVector":
        F = self.field
        return WedgeVector(F, self.N, self.k, tuple(F.mul(c, a) for a in self.coords))

    def __xor__(self, other: "WedgeVector") -> "WedgeVector":
        return wedge(self, other)

    def dumps(self) -> str:
        """``"k N; i,j,...:c ..."`` with 1-based indices and the field's element text."""
        F = self.field
        body = " ".join(",".join(str(t + 1) for t in T) + ":" + F.format_element(c)
                        for T, c in self.support().items())
        return f"{self.k} {self.N};{(' ' + body) if body else ''}"

    @classmethod
    def loads(cls, F: Field, text: str) -> "WedgeVector":
        head, _, body = text.partition(";")
        k, N = (int(x) for x in head.split())
        entries = {}
        for tok in body.split():
            idx, _, val = tok.rpartition(":")
            T = tuple(int(i) - 1 for i in idx.split(",")) if idx else ()
            entries[T] = F.parse_element(val)
        return cls.from_dict(F, N, k, entries)


def basis_wedge(F: Field, N: int, T: Sequence[int]) -> WedgeVector:
    """e_{T[0]} ^ e_{T[1]} ^ ... for distinct indices in any order."""
    if len(set(T)) != len(T):
        return WedgeVector.zero(F, N, len(T))
    perm = sorted(range(len(T)), key=lambda i: T[i])
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    c = F.one if inv % 2 == 0 else F.neg(F.one)
    return WedgeVector.from_dict(F, N, len(T), {tuple(sorted(T)): c})


def wedge_vectors(F: Field, N: int, vectors: Iterable[Sequence]) -> WedgeVector:
    """v_1 ^ ... ^ v_k, expanded one factor at a time."""
    cur: dict[tuple[int, ...], object] = {(): F.one}
    k = 0
    for v in vectors:
        k += 1
        nxt: dict[tuple[int, ...], object] = {}
        nz = [(j, x) for j, x in enumerate(v) if x != F.zero]
        for S, c in cur.items():
            for j, x in nz:
                if j in S:
                    continue
                # e_S ^ e_j = (-1)^{#{s in S : s > j}} e_{S u j}
                above = sum(1 for s in S if s > j)
                val = F.mul(c, x)
                if above % 2:
                    val = F.neg(val)
                T = tuple(sorted(S + (j,)))
                nxt[T] = F.add(nxt[T], val) if T in nxt else val
        cur = {T: c for T, c in nxt.items() if c != F.zero}
    return WedgeVector.from_dict(F, N, k, cur)


def plucker(S: Subspace) -> WedgeVector:
    """Plücker coordinates of a subspace: the maximal minors of its RREF basis."""
    if S.dim == 0:
        raise ValueError("the zero subspace has no Plücker point")
    return wedge_vectors(S.field, S.ambient_dim, S.basis)


def wedge(u: WedgeVector, w: WedgeVector) -> WedgeVector:
    """Exterior product of homogeneous elements."""
    if u.N != w.N or u.field != w.field:
        raise ValueError("wedge of vectors from different exterior algebras")
    F = u.field
    out: dict[tuple[int, ...], object] = {}
    wsup = w.support()
    for A, a in u.support().items():
        sA = set(A)
        for B, b in wsup.items():
            if sA.intersection(B):
                continue
            val = F.mul(a, b)
            if shuffle_sign(A, B) < 0:
                val = F.neg(val)
            T = tuple(sorted(A + B))
            out[T] = F.add(out[T], val) if T in out else val
    return WedgeVector.from_dict(F, u.N, u.k + w.k, out)


class SpanAccumulator:
    """Incrementally maintained RREF basis of a subspace of the k-th exterior power."""

    def __init__(self, F: Field, N: int, k: int):
        self.field, self.N, self.k = F, N, k
        self.length = comb(N, k)
        self._rows: dict[int, list] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, coords: Sequence) -> list:
        F = self.field
        w = list(coords)
        zero = F.zero
        for p, row in self._rows.items():
            c = w[p]
            if c != zero:
                for j, y in enumerate(row):
                    if y != zero:
                        w[j] = F.sub(w[j], F.mul(c, y))
        return w

    def contains(self, v: WedgeVector | Sequence) -> bool:
        coords = v.coords if isinstance(v, WedgeVector) else v
        return all(x == self.field.zero for x in self._reduce(coords))

    def insert(self, v: WedgeVector | Sequence) -> bool:
        """Add v to the span; True when the dimension grew."""
        F = self.field
        coords = v.coords if isinstance(v, WedgeVector) else v
        if len(coords) != self.length:
            raise ValueError("wedge vector of the wrong grade")
        w = self._reduce(coords)
        lead = next((j for j, x in enumerate(w) if x != F.zero), None)
        if lead is None:
            return False
        inv = F.inv(w[lead])
        w = [F.mul(inv, x) for x in w]
        for row in self._rows.values():
            c = row[lead]
            if c != F.zero:
                for j, y in enumerate(w):
                    if y != F.zero:
                        row[j] = F.sub(row[j], F.mul(c, y))
        self._rows[lead] = w
        return True

    def extend(self, vectors: Iterable) -> "SpanAccumulator":
        for v in vectors:
            self.insert(v)
        return self

    def basis(self) -> list[tuple]:
        return [tuple(self._rows[p]) for p in sorted(self._rows)]

    def basis_vectors(self) -> list[WedgeVector]:
        return [WedgeVector(self.field, self.N, self.k, row) for row in self.basis()]

    def contains_span(self, other: "SpanAccumulator") -> bool:
        return all(self.contains(row) for row in other.basis())

    def same_span(self, other: "SpanAccumulator") -> bool:
        return (self.N, self.k) == (other.N, other.k) and self.basis() == other.basis()

    def merge(self, other: "SpanAccumulator") -> "SpanAccumulator":
        """Sum of two spans (for combining partial enumerations)."""
        out = SpanAccumulator(self.field, self.N, self.k)
        out.extend(self.basis())
        out.extend(other.basis())
        return out
