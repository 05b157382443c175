"""Totally singular subspaces of a form, their lines, and the span of their Plücker images."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator

from .exterior import SpanAccumulator, WedgeVector, basis_wedge, plucker, wedge
from .fields import InfiniteFieldError
from .forms import Form, build_alternating, build_hermitian, build_quadratic_even, \
    build_quadratic_odd, is_totally_singular, perp, polarize, radical
from .linalg import Subspace, canonical_subspace, iter_rref_matrices

__all__ = [
    "singular_points",
    "enumerate_points",
    "enumerate_points_oracle",
    "PolarLine",
    "enumerate_lines",
    "embedding_span",
    "DecompositionReport",
    "decomposition_verify",
    "span_compare",
    "nondegenerate_reduction",
]


def _require_finite(f: Form):
    if not f.field.is_finite:
        raise InfiniteFieldError(f"cannot enumerate subspaces over {f.field!r}")


def singular_points(f: Form) -> list[tuple]:
    """Normalized singular vectors, grouped by leading column in increasing order."""
    _require_finite(f)
    F, N = f.field, f.N
    out = []
    for lead in range(N):
        prefix = (F.zero,) * lead + (F.one,)
        for tail in itertools.product(F.elements(), repeat=N - lead - 1):
            v = prefix + tail
            if f.is_singular(v):
                out.append(v)
    return out


def enumerate_points(f: Form, k: int) -> Iterator[Subspace]:
    """Every totally singular k-subspace exactly once, as a canonical RREF subspace.

    Depth-first search over RREF bases: a totally singular U is extended by a
    singular point p that is orthogonal to U and whose leading column lies
    beyond U's pivots in a column where U vanishes.  Then U's rows followed by
    p are again in RREF, so each subspace has a unique parent (its first k-1
    RREF rows) and a unique extension point (its last RREF row).
    """
    _require_finite(f)
    F, N = f.field, f.N
    if k < 1 or k > N:
        return
    pts = singular_points(f)
    lead_of = [next(i for i, x in enumerate(p) if x != F.zero) for p in pts]
    zero = F.zero

    def grow(rows, funcs, last_lead, start):
        if len(rows) == k:
            yield Subspace(F, N, tuple(rows), tuple(lead_of_rows(rows)))
            return
        for idx in range(start, len(pts)):
            c = lead_of[idx]
            if c <= last_lead:
                continue
            if any(r[c] != zero for r in rows):
                continue
            p = pts[idx]
            if any(F.dot(L, p) != zero for L in funcs):
                continue
            yield from grow(rows + [p], funcs + [f.functional(p)], c, idx + 1)

    def lead_of_rows(rows):
        return [next(i for i, x in enumerate(r) if x != zero) for r in rows]

    yield from grow([], [], -1, 0)


def enumerate_points_oracle(f: Form, k: int) -> Iterator[Subspace]:
    """Filter every k-subspace of F^N (all RREF matrices of rank k) by total singularity."""
    _require_finite(f)
    F, N = f.field, f.N
    for M in iter_rref_matrices(F, N, k):
        if is_totally_singular(f, M):
            yield canonical_subspace(F, M)


@dataclass(frozen=True)
class PolarLine:
    """The k-subspaces X < W < Y (pencil) or the totally singular W > X (top regime)."""

    regime: str  # "pencil" | "top"
    X: Subspace
    Y: Subspace | None
    members: tuple[Subspace, ...]


def _between(X: Subspace, Y: Subspace) -> list[Subspace]:
    """The k-subspaces strictly between X (dim k-1) and Y (dim k+1)."""
    F = X.field
    extra = [v for v in Y.basis if not X.contains(v)]
    # pick two vectors of Y independent modulo X
    quot = []
    span = X
    for v in extra:
        if not span.contains(v):
            quot.append(v)
            span = span + canonical_subspace(F, [v])
        if len(quot) == 2:
            break
    a, b = quot
    out = []
    for x, y in [(F.one, F.zero)] + [(c, F.one) for c in F.elements()]:
        w = tuple(F.add(F.mul(x, s), F.mul(y, t)) for s, t in zip(a, b))
        out.append(canonical_subspace(F, X.basis + (w,), ambient_dim=X.ambient_dim))
    return out


def enumerate_lines(f: Form, k: int) -> Iterator[PolarLine]:
    """Lines of the polar k-Grassmannian.

    For k below the Witt index n+d these are the pencils {X < W < Y}; for
    k = n+d each totally singular (k-1)-space X gives one line made of all
    totally singular k-spaces containing X (for the quadratic kind, inside
    X^perp).  A top-regime line may have a single member.
    """
    _require_finite(f)
    p = f.params
    top = p.n + p.d
    if not 1 <= k <= top:
        raise ValueError(f"k={k} outside 1..{top}")
    F, N = f.field, f.N
    if k < top:
        for Y in enumerate_points(f, k + 1):
            for X in Y.subspaces(k - 1) if k > 1 else [canonical_subspace(F, [], ambient_dim=N)]:
                yield PolarLine("pencil", X, Y, tuple(_between(X, Y)))
        return
    pts = singular_points(f)
    Xs = enumerate_points(f, k - 1) if k > 1 else [canonical_subspace(F, [], ambient_dim=N)]
    for X in Xs:
        Xp = perp(f, X)
        members = {}
        for v in pts:
            if X.contains(v) or not Xp.contains(v):
                continue
            W = canonical_subspace(F, X.basis + (v,), ambient_dim=N)
            if W.basis not in members and is_totally_singular(f, W):
                members[W.basis] = W
        yield PolarLine("top", X, None, tuple(members[b] for b in sorted(members)))


def embedding_span(f: Form, k: int, *, stop_at: int | None = None) -> SpanAccumulator:
    """Span of the Plücker images of all totally singular k-spaces.

    With ``stop_at`` the stream ends as soon as the span reaches that dimension.
    """
    acc = SpanAccumulator(f.field, f.N, k)
    for S in enumerate_points(f, k):
        acc.insert(plucker(S))
        if stop_at is not None and acc.dim >= stop_at:
            break
    return acc


def nondegenerate_reduction(f: Form) -> Form:
    """The same form on the coordinates before the radical block."""
    p = f.params
    F = f.field
    if f.kind == "hermitian":
        return build_hermitian(F, p.n, p.d0, 0, f.kappa)
    if f.kind == "alternating":
        return build_alternating(F, p.n, 0)
    if f.kind == "quadratic" and F.char == 2:
        return build_quadratic_even(F, p.n, p.m, p.dp0, 0, f.lam, f.mu, f.kappa)
    if f.kind == "quadratic":
        return build_quadratic_odd(F, p.n, p.d0, 0, f.kappa)
    raise ValueError(f"no reduction for a {f.kind} form")


def _pad(w: WedgeVector, N: int) -> WedgeVector:
    """The same wedge vector read in a larger ambient space (extra coordinates appended)."""
    return WedgeVector.from_dict(w.field, N, w.k, w.support())


@dataclass(frozen=True)
class DecompositionReport:
    holds: bool
    dim_full: int
    dim_sum: int
    dim_formula: int
    parts: tuple[tuple[int, int, int], ...]  # (i, dim of reduced span at k-i, C(d, i))


def decomposition_verify(f: Form, k: int) -> DecompositionReport:
    """Check, as subspaces, that the span at grade k equals the direct sum over i of
    (reduced span at grade k-i) ^ (i-th exterior power of the radical)."""
    p = f.params
    N, d, n = f.N, p.d, p.n
    F = f.field
    R = radical(f)
    coords = f.radical_coords
    expected = canonical_subspace(F, [tuple(F.one if j == c else F.zero for j in range(N))
                                      for c in coords], ambient_dim=N)
    if R != expected:
        raise ValueError("radical is not the trailing coordinate block")
    reduced = nondegenerate_reduction(f)
    full = embedding_span(f, k)
    acc = SpanAccumulator(F, N, k)
    parts = []
    formula = 0
    for i in range(max(0, k - n), min(d, k) + 1):
        j = k - i
        if j == 0:
            lower = [basis_wedge(F, N, ())]
        else:
            lower = [_pad(w, N) for w in embedding_span(reduced, j).basis_vectors()]
        for u in lower:
            for D in itertools.combinations(coords, i):
                acc.insert(wedge(u, basis_wedge(F, N, D)))
        parts.append((i, len(lower), comb(d, i)))
        formula += len(lower) * comb(d, i)
    holds = acc.same_span(full) and acc.dim == formula
    return DecompositionReport(holds, full.dim, acc.dim, formula, tuple(parts))


def span_compare(f: Form, k: int) -> str:
    """Compare the span from the quadratic form's singular k-spaces with the span from its bilinearization.

    Returns ``"equal"``, ``"strict-subset"`` or ``"not-contained"``.
    """
    if f.kind != "quadratic" or f.field.char != 2:
        raise ValueError("span_compare is for characteristic 2 quadratic forms")
    small = embedding_span(f, k)
    big = embedding_span(polarize(f), k)
    if not big.contains_span(small):
        return "not-contained"
    return "equal" if small.dim == big.dim else "strict-subset"
