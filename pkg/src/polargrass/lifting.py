"""Projective embeddings related by a linear quotient map, and lifting along it.

A :class:`QuotientPair` holds a top embedding into PG(V~), a bottom embedding
into PG(V) and a surjective linear map phi : V~ -> V whose kernel misses every
image point and every secant, with phi taking each top image point to the
bottom one.  Vectors of the bottom embedding then lift uniquely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .fields import Field, FiniteField, subfield_embedding
from .forms import build_quadratic_even
from .linalg import canonical_subspace, identity, matvec, rank
from .polar import enumerate_points
from .spanning import binom

__all__ = [
    "EmbeddedGeometry",
    "QuotientPair",
    "QuotientReport",
    "validate_quotient",
    "lift_vector",
    "LiftedEmbedding",
    "lift_embedding",
    "rational_subgeometry",
    "nucleus_fixture",
    "identity_pair",
    "find_quotient_kernel",
    "weyl_like_bounds",
    "fixture_to_json",
]


def _normalize(F: Field, v: Sequence) -> tuple:
    lead = next((x for x in v if x != F.zero), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


@dataclass
class EmbeddedGeometry:
    """Point-line geometry with one representative vector per point."""

    field: Field
    dim: int
    images: list[tuple]
    lines: list[tuple[int, ...]]

    def e1_holds(self) -> bool:
        """Every line maps onto the full set of points of a projective line."""
        F = self.field
        for line in self.lines:
            S = canonical_subspace(F, [self.images[i] for i in line], ambient_dim=self.dim,
                                   reduce=True)
            if S.dim != 2:
                return False
            got = {_normalize(F, self.images[i]) for i in line}
            if got != set(S.points()):
                return False
        return True

    def e2_holds(self) -> bool:
        return rank(self.field, self.images) == self.dim

    def injective(self) -> bool:
        F = self.field
        return len({_normalize(F, v) for v in self.images}) == len(self.images)


@dataclass
class QuotientPair:
    top: EmbeddedGeometry
    bottom: EmbeddedGeometry
    phi: list[tuple]  # bottom.dim rows, top.dim columns


@dataclass
class QuotientReport:
    surjective: bool
    points_avoid_kernel: bool
    secants_avoid_kernel: bool
    agrees: bool

    @property
    def ok(self) -> bool:
        return self.surjective and self.points_avoid_kernel and self.secants_avoid_kernel \
            and self.agrees


def validate_quotient(pair: QuotientPair) -> QuotientReport:
    F = pair.top.field
    phi = pair.phi
    surjective = rank(F, phi) == pair.bottom.dim
    images = [matvec(F, phi, v) for v in pair.top.images]
    avoid = all(any(x != F.zero for x in w) for w in images)
    agrees = avoid and all(_normalize(F, w) == _normalize(F, b)
                           for w, b in zip(images, pair.bottom.images))
    secants = avoid and all(rank(F, [images[i], images[j]]) == 2
                            for i, j in itertools.combinations(range(len(images)), 2))
    return QuotientReport(surjective, avoid, secants, agrees)


def lift_vector(pair: QuotientPair, point: int, v: Sequence) -> tuple:
    """The unique vector of the top image of ``point`` that phi maps to v."""
    F = pair.top.field
    w = pair.top.images[point]
    image = matvec(F, pair.phi, w)
    j = next((i for i, x in enumerate(image) if x != F.zero), None)
    if j is None:
        raise ValueError("phi kills the top image point")
    t = F.div(v[j], image[j])
    if t == F.zero or any(F.mul(t, a) != b for a, b in zip(image, v)):
        raise ValueError("v does not represent the bottom image of this point")
    return tuple(F.mul(t, x) for x in w)


def _subfield_coordinates(F: FiniteField, sub: FiniteField):
    """An F0-basis of F and the coordinate map F -> F0^g (values as elements of sub)."""
    emb = subfield_embedding(sub, F)
    back = {v: k for k, v in emb.items()}
    basis: list[int] = []
    span = {F.zero: ()}
    for x in F.elements():
        if len(span) == F.order:
            break
        if x in span:
            continue
        basis.append(x)
        span = {}
        for cs in itertools.product(sub.elements(), repeat=len(basis)):
            val = F.zero
            for c, b in zip(cs, basis):
                val = F.add(val, F.mul(emb[c], b))
            span[val] = cs
    return basis, span, emb, back


@dataclass
class LiftedEmbedding:
    subfield: FiniteField
    points: list[int]
    liftings: list[tuple]          # over the big field
    coordinates: list[tuple]       # over the subfield, length g * dim
    dim: int
    e1: bool
    injective: bool


def rational_subgeometry(geom: EmbeddedGeometry, sub: FiniteField, bottom: EmbeddedGeometry):
    """Points whose bottom image is defined over ``sub``, with the lines meeting them at least twice."""
    F = geom.field
    emb = subfield_embedding(sub, F)
    rational = set(emb.values())
    pts = [i for i, v in enumerate(bottom.images)
           if all(x in rational for x in _normalize(F, v))]
    chosen = set(pts)
    lines = []
    for line in geom.lines:
        on = tuple(i for i in line if i in chosen)
        if len(on) >= 2:
            lines.append(on)
    return pts, lines


def lift_embedding(pair: QuotientPair, sub: FiniteField, points: Sequence[int],
                   lines: Sequence[Sequence[int]]) -> LiftedEmbedding:
    """Lift the bottom images of a subgeometry defined over ``sub`` and read the result over ``sub``."""
    F = pair.top.field
    basis, coords, emb, back = _subfield_coordinates(F, sub)
    liftings, flat = [], []
    for p in points:
        v = _normalize(F, pair.bottom.images[p])
        if any(x not in back for x in v):
            raise ValueError(f"point {p} is not defined over {sub!r}")
        w = lift_vector(pair, p, v)
        liftings.append(w)
        flat.append(tuple(c for x in w for c in coords[x]))
    dim = rank(sub, flat)
    where = {p: i for i, p in enumerate(points)}
    e1 = True
    for line in lines:
        vecs = [flat[where[p]] for p in line]
        S = canonical_subspace(sub, vecs, reduce=True)
        got = {_normalize(sub, v) for v in vecs}
        if S.dim != 2 or got != set(S.points()):
            e1 = False
            break
    injective = len({_normalize(sub, v) for v in flat}) == len(flat)
    return LiftedEmbedding(sub, list(points), liftings, flat, dim, e1, injective)


def nucleus_fixture(n: int, F: FiniteField) -> QuotientPair:
    """Parabolic quadric x0x1 + ... + x_{2n-2}x_{2n-1} + x_{2n}^2 over characteristic 2, and its
    projection from the nucleus (delete the last coordinate)."""
    if F.char != 2:
        raise ValueError("the nucleus projection needs characteristic 2")
    form = build_quadratic_even(F, n, 0, 1, 0)
    points = [S.basis[0] for S in enumerate_points(form, 1)]
    index = {v: i for i, v in enumerate(points)}
    lines = [tuple(index[v] for v in L.points()) for L in enumerate_points(form, 2)]
    N = 2 * n + 1
    top = EmbeddedGeometry(F, N, points, lines)
    bottom = EmbeddedGeometry(F, N - 1, [_normalize(F, v[:-1]) for v in points], lines)
    phi = [tuple(F.one if i == j else F.zero for j in range(N)) for i in range(N - 1)]
    return QuotientPair(top, bottom, phi)


def identity_pair(geom: EmbeddedGeometry) -> QuotientPair:
    return QuotientPair(geom, geom, identity(geom.field, geom.dim))


def find_quotient_kernel(geom: EmbeddedGeometry) -> QuotientPair | None:
    """A one-dimensional kernel avoiding all image points and secants, or None when none exists."""
    F, N = geom.field, geom.dim
    blocked = {_normalize(F, v) for v in geom.images}
    for a, b in itertools.combinations(geom.images, 2):
        S = canonical_subspace(F, [a, b], reduce=True)
        blocked.update(S.points())
    for lead in range(N):
        for tail in itertools.product(F.elements(), repeat=N - lead - 1):
            k = (F.zero,) * lead + (F.one,) + tail
            if k in blocked:
                continue
            # x -> x - x_lead * k, then drop coordinate ``lead``
            phi = []
            for j in range(N):
                if j == lead:
                    continue
                row = [F.zero] * N
                row[j] = F.one
                row[lead] = F.sub(row[lead], k[j])
                phi.append(tuple(row))
            images = [_normalize(F, matvec(F, phi, v)) for v in geom.images]
            bottom = EmbeddedGeometry(F, N - 1, images, geom.lines)
            return QuotientPair(geom, bottom, phi)
    return None


def weyl_like_bounds(N: int, k: int, g: int) -> tuple[int, int]:
    """(C(N,k) - C(N,k-2), C(N,k) + C(N,k-2)(g-1)); evaluated only."""
    return binom(N, k) - binom(N, k - 2), binom(N, k) + binom(N, k - 2) * (g - 1)


def fixture_to_json(pair: QuotientPair) -> dict:
    F = pair.top.field
    fmt = lambda v: [F.format_element(x) for x in v]  # noqa: E731
    return {
        "field": F.text,
        "points": [fmt(v) for v in pair.top.images],
        "lines": [list(line) for line in pair.top.lines],
        "images": [fmt(v) for v in pair.bottom.images],
        "phi": [fmt(r) for r in pair.phi],
    }
