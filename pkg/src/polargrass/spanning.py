"""Predicted embedding dimensions and the explicit spanning set of the symplectic span."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb as _comb
from typing import Iterator

from .exterior import SpanAccumulator, WedgeVector, basis_wedge, wedge, wedge_vectors
from .fields import Field
from .forms import Form
from .polar import embedding_span

__all__ = [
    "binom",
    "predicted_dim",
    "vandermonde_holds",
    "GenDescriptor",
    "descriptor_wedge",
    "symplectic_genset",
    "GensetReport",
    "verify_genset",
]


def binom(m: int, h: int) -> int:
    """Binomial coefficient, zero outside 0 <= h <= m."""
    if h < 0 or m < 0 or h > m:
        return 0
    return _comb(m, h)


def _alternating_like(kind: str, char: int) -> bool:
    return kind in ("alternating", "symplectic") or (kind == "quadratic" and char == 2)


def predicted_dim(kind: str, char: int, N: int, k: int, n: int, d: int) -> int:
    """Dimension of the span of the polar k-Grassmannian predicted from (N, k, n, d).

    For k <= n: C(N,k) for Hermitian and odd characteristic quadratic forms,
    C(N,k) - C(N,k-2) for alternating and characteristic 2 quadratic forms.
    For n < k <= n+d the radical correction terms are subtracted.
    """
    if n <= 1:
        raise ValueError(f"the prediction needs reduced Witt index n > 1, got {n}")
    if not 1 <= k <= n + d:
        raise ValueError(f"k={k} outside 1..{n + d}")
    alt = _alternating_like(kind, char)
    value = binom(N, k) - (binom(N, k - 2) if alt else 0)
    if k > n:
        value -= sum(binom(N - d, k - i) * binom(d, i) for i in range(k - n))
        if alt:
            value += sum(binom(N - d, k - i - 2) * binom(d, i) for i in range(k - n))
    return value


def vandermonde_holds(N: int, d: int, k: int) -> bool:
    return sum(binom(N - d, k - i) * binom(d, i) for i in range(d + 1)) == binom(N, k)


@dataclass(frozen=True)
class GenDescriptor:
    """Indices of one spanning vector e_A^+ ^ e_B^- ^ u_C ^ e_D.

    A, B and the pairs in C are 0-based hyperbolic pair indices; D holds 0-based
    coordinates from the radical block.
    """

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[tuple[int, int], ...]
    D: tuple[int, ...]

    @property
    def grade(self) -> int:
        return len(self.A) + len(self.B) + 2 * len(self.C) + len(self.D)

    def to_json(self) -> dict:
        one = lambda xs: [x + 1 for x in xs]  # noqa: E731
        return {"A": one(self.A), "B": one(self.B), "C": [one(c) for c in self.C], "D": one(self.D)}

    @classmethod
    def from_json(cls, obj: dict) -> "GenDescriptor":
        zero = lambda xs: tuple(int(x) - 1 for x in xs)  # noqa: E731
        return cls(zero(obj.get("A", [])), zero(obj.get("B", [])),
                   tuple(zero(c) for c in obj.get("C", [])), zero(obj.get("D", [])))


def pair_sum(F: Field, N: int, i: int, j: int) -> WedgeVector:
    """u_{i,j} = e_{2i} ^ e_{2i+1} - e_{2j} ^ e_{2j+1} (0-based pairs)."""
    return basis_wedge(F, N, (2 * i, 2 * i + 1)) - basis_wedge(F, N, (2 * j, 2 * j + 1))


def descriptor_wedge(F: Field, N: int, g: GenDescriptor) -> WedgeVector:
    w = wedge_vectors(F, N, [])
    w = wedge(w, basis_wedge(F, N, [2 * a for a in g.A]))
    w = wedge(w, basis_wedge(F, N, [2 * b + 1 for b in g.B]))
    for i, j in g.C:
        w = wedge(w, pair_sum(F, N, i, j))
    return wedge(w, basis_wedge(F, N, g.D))


def _matchings(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """Perfect matchings written as pairs (i_r, j_r) with i_r < j_r and i_1 < i_2 < ..."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for idx, partner in enumerate(rest):
        for tail in _matchings(rest[:idx] + rest[idx + 1:]):
            yield ((first, partner),) + tail


def symplectic_genset(n: int, d: int, k: int) -> list[GenDescriptor]:
    """All descriptors of grade k for n hyperbolic pairs and a radical of dimension d."""
    radical = range(2 * n, 2 * n + d)
    out = []
    for r in range(min(d, k) + 1):
        for D in itertools.combinations(radical, r):
            for S in itertools.combinations(range(n), k - r):
                for h in range(len(S) // 2 + 1):
                    for Cbar in itertools.combinations(S, 2 * h):
                        rest = tuple(x for x in S if x not in Cbar)
                        for C in _matchings(Cbar):
                            for a in range(len(rest) + 1):
                                for A in itertools.combinations(rest, a):
                                    B = tuple(x for x in rest if x not in A)
                                    out.append(GenDescriptor(A, B, C, D))
    return out


@dataclass(frozen=True)
class GensetReport:
    span_equal: bool
    cardinality: int
    dim: int

    @property
    def is_basis(self) -> bool:
        return self.span_equal and self.cardinality == self.dim


def verify_genset(f: Form, k: int) -> GensetReport:
    """Compare span(E_k) with the span of the alternating form's totally isotropic k-spaces."""
    if f.kind != "alternating":
        raise ValueError("the spanning set is defined for alternating forms")
    F, N, p = f.field, f.N, f.params
    gens = symplectic_genset(p.n, p.d, k)
    acc = SpanAccumulator(F, N, k).extend(descriptor_wedge(F, N, g) for g in gens)
    full = embedding_span(f, k)
    return GensetReport(acc.same_span(full), len(gens), full.dim)
