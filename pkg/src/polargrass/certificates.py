"""Explicit certificates that a target wedge lies in the span of the polar Grassmannian.

A certificate is a list of ``(coefficient, subspace)`` terms whose subspaces are
all totally singular and whose Plücker images, weighted by the coefficients,
sum to the target.  The target is split into factors that live on disjoint,
mutually orthogonal coordinate blocks; each factor gets a small explicit
construction, and the factors are multiplied term by term (the wedge of
orthogonal totally singular subspaces is again totally singular).

Blocks use hyperbolic pairs as helpers, always taking the least free pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Sequence

from .exterior import WedgeVector, basis_wedge, plucker, subsets, wedge, wedge_vectors
from .fields import Field, make_field, trace_preimage
from .forms import Form, build_quadratic_even, form_from_json, form_to_json, is_totally_singular
from .linalg import Subspace, canonical_subspace, solve, transpose
from .polar import enumerate_points
from .spanning import GenDescriptor, descriptor_wedge, pair_sum, symplectic_genset

__all__ = [
    "Certificate",
    "CertificateCheck",
    "certificate_hermitian",
    "certificate_quadratic_odd",
    "certificate_quadratic_even",
    "certify_all",
    "verify_certificate",
    "certificate_to_json",
    "certificate_from_json",
]


@dataclass
class Certificate:
    form: Form
    target: WedgeVector
    terms: list[tuple[object, Subspace]]
    trace: dict


@dataclass
class CertificateCheck:
    ok: bool
    non_singular: list[int] = dc_field(default_factory=list)
    diff: WedgeVector | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(c: Certificate) -> CertificateCheck:
    """Recheck from scratch: every term totally singular, and the weighted Plücker sum equals the target."""
    f = c.form
    F = f.field
    bad = [i for i, (_, S) in enumerate(c.terms) if not is_totally_singular(f, S)]
    total = WedgeVector.zero(F, f.N, c.target.k)
    for coeff, S in c.terms:
        total = total + plucker(S).scale(coeff)
    diff = total - c.target
    return CertificateCheck(not bad and diff.is_zero(), bad, None if diff.is_zero() else diff)


# combinations of totally singular subspaces


@dataclass
class _Piece:
    target: WedgeVector
    terms: list[tuple[object, Subspace]]
    trace: dict


def _term(f: Form, vectors: Sequence[Sequence]) -> tuple[object, Subspace]:
    """(lam, S) with v_1 ^ ... ^ v_r = lam * plucker(S)."""
    F, N = f.field, f.N
    S = canonical_subspace(F, vectors, ambient_dim=N)
    if not vectors:
        return F.one, S
    W = wedge_vectors(F, N, vectors)
    P = plucker(S)
    T = next(iter(P.support()))
    return F.div(W[T], P[T]), S


def _merge(F: Field, terms) -> list[tuple[object, Subspace]]:
    acc: dict[tuple, list] = {}
    for c, S in terms:
        if S.basis in acc:
            acc[S.basis][0] = F.add(acc[S.basis][0], c)
        else:
            acc[S.basis] = [c, S]
    return [(c, S) for c, S in acc.values() if c != F.zero]


def _vector(f: Form, entries: dict[int, object]) -> tuple:
    F = f.field
    v = [F.zero] * f.N
    for i, c in entries.items():
        v[i] = F.add(v[i], c)
    return tuple(v)


def _from_vectors(f: Form, spanning: list[tuple[object, list[tuple]]], label: str, **info) -> _Piece:
    """Piece for sum_j c_j (v_j1 ^ v_j2 ^ ...), each span totally singular."""
    F = f.field
    terms, target = [], None
    for c, vecs in spanning:
        lam, S = _term(f, vecs)
        terms.append((F.mul(c, lam), S))
        w = wedge_vectors(F, f.N, vecs).scale(c)
        target = w if target is None else target + w
    return _Piece(target, _merge(F, terms), {"label": label, **info})


def _coordinate(f: Form, coords: Sequence[int]) -> _Piece:
    F = f.field
    vecs = [_vector(f, {c: F.one}) for c in coords]
    return _from_vectors(f, [(F.one, vecs)], "coordinate",
                         coords=[c + 1 for c in coords])


def _lincomb(f: Form, parts: list[tuple[object, _Piece]], label: str, **info) -> _Piece:
    F = f.field
    terms, target = [], None
    for c, p in parts:
        terms += [(F.mul(c, a), S) for a, S in p.terms]
        w = p.target.scale(c)
        target = w if target is None else target + w
    return _Piece(target, _merge(F, terms),
                  {"label": label, **info, "children": [p.trace for _, p in parts]})


def _product(f: Form, pieces: list[_Piece]) -> _Piece:
    """Wedge of pieces on disjoint orthogonal blocks, expanded term by term."""
    F = f.field
    if len(pieces) == 1:
        return pieces[0]
    terms = [(F.one, canonical_subspace(F, [], ambient_dim=f.N))]
    target = wedge_vectors(F, f.N, [])
    for p in pieces:
        nxt = []
        for a, X in terms:
            for b, Y in p.terms:
                lam, S = _term(f, X.basis + Y.basis)
                nxt.append((F.mul(F.mul(a, b), lam), S))
        terms = _merge(F, nxt)
        target = wedge(target, p.target)
    return _Piece(target, terms, {"label": "orthogonal-product",
                                  "children": [p.trace for p in pieces]})


def _split_pairs(w: WedgeVector, pairs: Sequence[tuple[int, int]]):
    """Split a grade-2 vector into its components on full pairs and the rest."""
    F = w.field
    full = {tuple(p) for p in pairs}
    on_pairs, cross = {}, {}
    for T, c in w.support().items():
        (on_pairs if T in full else cross)[T] = c
    return (WedgeVector.from_dict(F, w.N, 2, on_pairs), cross)


def _strip_cross(f: Form, piece: _Piece, pairs, cross_cert: Callable[[tuple], _Piece],
                 label: str, **info) -> _Piece:
    """Subtract certified cross terms, leaving a piece whose target lives on full pairs."""
    F = f.field
    _, cross = _split_pairs(piece.target, pairs)
    parts = [(F.one, piece)]
    for T, c in cross.items():
        parts.append((F.neg(c), cross_cert(T)))
    return _lincomb(f, parts, label, **info)


def _finish(f: Form, piece: _Piece, target: WedgeVector, label: str) -> Certificate:
    F = f.field
    got = piece.target
    if got != target:
        # the factors multiply to +-target; fix the sign
        if got.scale(F.neg(F.one)) == target:
            piece = _lincomb(f, [(F.neg(F.one), piece)], "sign")
        else:
            raise AssertionError("certificate construction does not reach its target")
    return Certificate(f, target, piece.terms, {"label": label, "children": [piece.trace]})


def _pair_of(c: int) -> int:
    return c // 2


# Hermitian and odd characteristic quadratic forms


def _hermitian_pair(f: Form, p: int, h: int) -> _Piece:
    """e_{2p} ^ e_{2p+1} from two lines over the pairs p and h."""
    F = f.field
    sigma = F.conj
    fixed = {a for a in F.elements() if sigma(a) == a}
    alpha, beta = next((a, b) for b in F.nonzero() for a in F.nonzero()
                       if F.div(a, b) not in fixed)

    def line(x):
        u1 = _vector(f, {2 * p: x, 2 * h: F.one})
        u2 = _vector(f, {2 * p + 1: F.neg(F.inv(sigma(x))), 2 * h + 1: F.one})
        return [u1, u2]

    spanning = [(F.one, line(beta)), (F.neg(F.one), line(alpha))]
    piece = _from_vectors(f, spanning, "hyperbolic-pair-lines",
                          alpha=F.format_element(alpha), beta=F.format_element(beta))
    piece = _strip_cross(f, piece, [(2 * p, 2 * p + 1), (2 * h, 2 * h + 1)],
                         lambda T: _coordinate(f, T), "hyperbolic-pair-cross")
    c = piece.target[(2 * p, 2 * p + 1)]
    return _lincomb(f, [(F.inv(c), piece)], "hyperbolic-pair", pair=p + 1, helper=h + 1)


def _hermitian_anisotropic(f: Form, j: int, i: int) -> _Piece:
    """e_j from the singular point e_{2i} + t e_{2i+1} + e_j with Tr(t) = -kappa_j."""
    F = f.field
    kappa = f.matrix[j][j]
    t = trace_preimage(F, F.neg(kappa))
    u = _vector(f, {2 * i: F.one, 2 * i + 1: t, j: F.one})
    spanning = [(F.one, [u]),
                (F.neg(F.one), [_vector(f, {2 * i: F.one})]),
                (F.neg(t), [_vector(f, {2 * i + 1: F.one})])]
    return _from_vectors(f, spanning, "anisotropic-trace", coord=j + 1, helper=i + 1,
                         t=F.format_element(t))


def _odd_pair(f: Form, x: int, h: int) -> _Piece:
    """2 e_{2x} ^ e_{2x+1} = u1 ^ u2 + u3 ^ u4 - (cross terms)."""
    F = f.field
    one, m1 = F.one, F.neg(F.one)
    a, b, c, d = 2 * x, 2 * x + 1, 2 * h, 2 * h + 1
    u1 = _vector(f, {a: one, c: m1})
    u2 = _vector(f, {b: one, d: one})
    u3 = _vector(f, {a: one, d: m1})
    u4 = _vector(f, {b: one, c: one})
    piece = _from_vectors(f, [(one, [u1, u2]), (one, [u3, u4])], "hyperbolic-pair-lines")
    piece = _strip_cross(f, piece, [(a, b), (c, d)], lambda T: _coordinate(f, T),
                         "hyperbolic-pair-cross")
    coeff = piece.target[(a, b)]
    return _lincomb(f, [(F.inv(coeff), piece)], "hyperbolic-pair", pair=x + 1, helper=h + 1)


def _odd_anisotropic(f: Form, j: int, i: int) -> _Piece:
    """2 e_j = v1 - v2 with v1, v2 = e_{2i} - kappa e_{2i+1} +- e_j singular."""
    F = f.field
    kappa = f.matrix[j][j]
    half = F.inv(F.from_int(2))
    v1 = _vector(f, {2 * i: F.one, 2 * i + 1: F.neg(kappa), j: F.one})
    v2 = _vector(f, {2 * i: F.one, 2 * i + 1: F.neg(kappa), j: F.neg(F.one)})
    return _from_vectors(f, [(half, [v1]), (F.neg(half), [v2])], "anisotropic-difference",
                         coord=j + 1, helper=i + 1)


def _coordinate_target(f: Form, J: Sequence[int], pair_cert, aniso_cert) -> Certificate:
    F = f.field
    p = f.params
    J = tuple(sorted(J))
    k = len(J)
    if len(set(J)) != k or any(not 0 <= j < f.N for j in J):
        raise ValueError(f"bad coordinate set {J}")
    if not 1 <= k <= p.n:
        raise ValueError(f"certificates cover 1 <= k <= n = {p.n}, got k={k}")
    hyper_coords = set(range(2 * p.n))
    touched = {_pair_of(j) for j in J if j in hyper_coords}
    free = [i for i in range(p.n) if i not in touched]
    aniso = set(f.anisotropic_coords)
    pieces = []
    done = set()
    for j in J:
        if j in done:
            continue
        if j in hyper_coords:
            a, b = 2 * _pair_of(j), 2 * _pair_of(j) + 1
            if a in J and b in J:
                pieces.append(pair_cert(f, _pair_of(j), free.pop(0)))
                done |= {a, b}
                continue
            pieces.append(_coordinate(f, [j]))
        elif j in aniso:
            pieces.append(aniso_cert(f, j, free.pop(0)))
        else:
            pieces.append(_coordinate(f, [j]))
        done.add(j)
    return _finish(f, _product(f, pieces), basis_wedge(F, f.N, J), "coordinate-target")


def certificate_hermitian(f: Form, J: Sequence[int]) -> Certificate:
    """Certificate for e_J (0-based coordinates) under a Hermitian form, |J| <= n."""
    if f.kind != "hermitian":
        raise ValueError("certificate_hermitian needs a Hermitian form")
    return _coordinate_target(f, J, _hermitian_pair, _hermitian_anisotropic)


def certificate_quadratic_odd(f: Form, J: Sequence[int]) -> Certificate:
    """Certificate for e_J (0-based coordinates) under an odd characteristic quadratic form, |J| <= n."""
    if f.kind != "quadratic" or f.field.char == 2:
        raise ValueError("certificate_quadratic_odd needs a quadratic form in odd characteristic")
    return _coordinate_target(f, J, _odd_pair, _odd_anisotropic)


# characteristic 2 quadratic forms


@lru_cache(maxsize=None)
def _quadrangle_solution() -> tuple:
    """u_{0,1} over GF(2) as a combination of the six singular lines of x0 x1 + x2 x3."""
    F2 = make_field(2)
    g = build_quadratic_even(F2, 2)
    lines = list(enumerate_points(g, 2))
    cols = [plucker(L).coords for L in lines]
    target = pair_sum(F2, 4, 0, 1).coords
    sol = solve(F2, transpose(cols), target)
    return tuple((c, L.basis) for c, L in zip(sol, lines) if c)


def _quadrangle(f: Form, x: int, h: int) -> _Piece:
    """u_{x,h} for two hyperbolic pairs, from the solved GF(2) system mapped onto pairs x and h."""
    F = f.field
    where = [2 * x, 2 * x + 1, 2 * h, 2 * h + 1]
    spanning = []
    for c, basis in _quadrangle_solution():
        vecs = [_vector(f, {where[i]: F.from_int(v) for i, v in enumerate(row) if v}) for row in basis]
        spanning.append((F.from_int(c), vecs))
    return _from_vectors(f, spanning, "hyperbolic-quadrangle", pairs=[x + 1, h + 1])


def _even_point(f: Form, c: int, j: int) -> _Piece:
    """e_c for a non-singular coordinate c (anisotropic block or kappa term) via the pair j."""
    F = f.field
    qc = f.matrix[c][c]
    v = _vector(f, {2 * j: F.one, 2 * j + 1: qc, c: F.one})
    spanning = [(F.one, [v]),
                (F.neg(F.one), [_vector(f, {2 * j: F.one})]),
                (F.neg(qc), [_vector(f, {2 * j + 1: F.one})])]
    label = "anisotropic-square" if c in f.anisotropic_coords else "anisotropic-block"
    return _from_vectors(f, spanning, label, coord=c + 1, helper=j + 1)


def _even_coordinates(f: Form, T: Sequence[int], pool: Sequence[int]) -> _Piece:
    """e_T for coordinates on distinct pairs, with helpers drawn from the hyperbolic pairs in pool."""
    n = f.params.n
    touched = {_pair_of(c) for c in T if c < 2 * (n + f.params.m)}
    free = [i for i in sorted(pool) if i not in touched and i < n]
    pieces = []
    for c in T:
        if c < 2 * n or c in f.radical_coords:
            pieces.append(_coordinate(f, [c]))
        else:
            pieces.append(_even_point(f, c, free.pop(0)))
    return _product(f, pieces)


def _even_case_distinct(f: Form, h: int, i: int, x: int, y: int) -> _Piece:
    """u_{h,i} from one line over the pairs x, y, h, i with x, y hyperbolic helpers."""
    F = f.field
    Q = f.matrix
    alpha = F.add(Q[2 * h][2 * h], Q[2 * i][2 * i])
    beta = F.add(Q[2 * h + 1][2 * h + 1], Q[2 * i + 1][2 * i + 1])
    u1 = _vector(f, {2 * x: F.one, 2 * x + 1: alpha, 2 * h: F.one, 2 * i: F.one})
    u2 = _vector(f, {2 * y: F.one, 2 * y + 1: beta, 2 * h + 1: F.one, 2 * i + 1: F.one})
    piece = _from_vectors(f, [(F.one, [u1, u2])], "anisotropic-pair-line",
                          alpha=F.format_element(alpha), beta=F.format_element(beta))
    pairs = [(2 * a, 2 * a + 1) for a in (x, y, h, i)]
    return _strip_cross(f, piece, pairs, lambda T: _even_coordinates(f, T, [x, y, h]),
                        "anisotropic-pair", pair=[h + 1, i + 1], helpers=[x + 1, y + 1])


def _even_case_shared(f: Form, h: int, i: int, x: int) -> _Piece:
    """u_{h,i} for hyperbolic h and anisotropic i with one helper x; needs |F| > 2."""
    F = f.field
    Q = f.matrix
    lam, mu = Q[2 * i][2 * i], Q[2 * i + 1][2 * i + 1]
    alpha = next(a for a in F.elements() if a not in (F.zero, F.one))
    alpha2 = F.add(alpha, F.one)
    beta, beta2 = F.div(lam, alpha), F.div(mu, alpha2)
    u1 = _vector(f, {2 * x: alpha, 2 * x + 1: beta, 2 * h: F.one, 2 * i: F.one})
    u2 = _vector(f, {2 * x + 1: F.one, 2 * h + 1: alpha2, 2 * h: beta2, 2 * i + 1: F.one})
    piece = _from_vectors(f, [(F.one, [u1, u2])], "anisotropic-pair-line",
                          alpha=F.format_element(alpha))
    pairs = [(2 * a, 2 * a + 1) for a in (x, h, i)]
    piece = _strip_cross(f, piece, pairs, lambda T: _even_coordinates(f, T, [x, h]),
                         "anisotropic-pair-cross")
    # piece.target = alpha u_{x,h}-part + u_{h,i} in characteristic 2
    return _lincomb(f, [(F.one, piece), (F.neg(alpha), _quadrangle(f, x, h))],
                    "anisotropic-pair", pair=[h + 1, i + 1], helpers=[x + 1])


def _even_local_solve(f: Form, h: int, i: int, x: int) -> _Piece:
    """u_{h,i} by solving over the singular lines of the block on pairs x, h, i."""
    F = f.field
    Q = f.matrix
    local = build_quadratic_even(F, 2, 1, 0, 0, [Q[2 * i][2 * i]], [Q[2 * i + 1][2 * i + 1]])
    where = [2 * x, 2 * x + 1, 2 * h, 2 * h + 1, 2 * i, 2 * i + 1]
    lines = list(enumerate_points(local, 2))
    cols = [plucker(L).coords for L in lines]
    sol = solve(F, transpose(cols), pair_sum(F, 6, 1, 2).coords)
    if sol is None:
        raise AssertionError("local system has no solution")
    spanning = []
    for c, L in zip(sol, lines):
        if c != F.zero:
            vecs = [_vector(f, {where[t]: v for t, v in enumerate(row) if v != F.zero})
                    for row in L.basis]
            spanning.append((c, vecs))
    return _from_vectors(f, spanning, "anisotropic-pair-local-solve",
                         pair=[h + 1, i + 1], helpers=[x + 1])


def certificate_quadratic_even(f: Form, g: GenDescriptor) -> Certificate:
    """Certificate for the spanning vector described by g (indices of the bilinearization)."""
    F = f.field
    p = f.params
    if f.kind != "quadratic" or F.char != 2:
        raise ValueError("certificate_quadratic_even needs a characteristic 2 quadratic form")
    k = g.grade
    if not 1 <= k <= p.n:
        raise ValueError(f"certificates cover 1 <= k <= n = {p.n}, got k={k}")
    n, pairs = p.n, p.n + p.m
    Cbar = [a for c in g.C for a in c]
    used = set(g.A) | set(g.B) | set(Cbar)
    if len(used) != len(g.A) + len(g.B) + len(Cbar) or any(a >= pairs for a in used):
        raise ValueError(f"descriptor {g} is not valid for {pairs} pairs")
    free = [a for a in range(n) if a not in used]

    def aniso(a):
        return a >= n

    need = sum(aniso(a) for a in g.A + g.B) + sum(1 for d in g.D if d in f.anisotropic_coords)
    for a, b in g.C:
        need += 2 if aniso(a) and aniso(b) else (1 if aniso(a) or aniso(b) else 0)
    surplus = len(free) - need

    pieces = []
    for a in g.A:
        pieces.append(_even_point(f, 2 * a, free.pop(0)) if aniso(a) else _coordinate(f, [2 * a]))
    for b in g.B:
        pieces.append(_even_point(f, 2 * b + 1, free.pop(0)) if aniso(b)
                      else _coordinate(f, [2 * b + 1]))
    for a, b in g.C:
        if not aniso(a) and not aniso(b):
            pieces.append(_quadrangle(f, a, b))
        elif aniso(a) and aniso(b):
            x, y = free.pop(0), free.pop(0)
            pieces.append(_even_case_distinct(f, a, b, x, y))
        elif surplus >= 1:
            surplus -= 1
            x, y = free.pop(0), free.pop(0)
            pieces.append(_even_case_distinct(f, a, b, x, y))
        elif F.order > 2:
            pieces.append(_even_case_shared(f, a, b, free.pop(0)))
        else:
            pieces.append(_even_local_solve(f, a, b, free.pop(0)))
    for d in g.D:
        pieces.append(_even_point(f, d, free.pop(0)) if d in f.anisotropic_coords
                      else _coordinate(f, [d]))
    return _finish(f, _product(f, pieces), descriptor_wedge(F, f.N, g), "descriptor-target")


def certify_all(f: Form, k: int) -> list[Certificate]:
    """Certificates for every coordinate k-subset, or every descriptor in characteristic 2."""
    if f.kind == "hermitian":
        return [certificate_hermitian(f, T) for T in subsets(f.N, k)]
    if f.kind == "quadratic" and f.field.char != 2:
        return [certificate_quadratic_odd(f, T) for T in subsets(f.N, k)]
    if f.kind == "quadratic":
        p = f.params
        return [certificate_quadratic_even(f, g)
                for g in symplectic_genset(p.n + p.m, p.dp0 + p.d, k)]
    raise ValueError(f"no certificates for {f.kind} forms")


# JSON


def certificate_to_json(c: Certificate) -> dict:
    F = c.form.field
    fmt = F.format_element
    return {
        "form": form_to_json(c.form),
        "target": {",".join(str(t + 1) for t in T): fmt(v) for T, v in c.target.support().items()},
        "grade": c.target.k,
        "terms": [{"coeff": fmt(a), "basis": [[fmt(x) for x in row] for row in S.basis]}
                  for a, S in c.terms],
        "trace": c.trace,
    }


def certificate_from_json(obj: dict) -> Certificate:
    f = form_from_json(obj["form"])
    F = f.field
    k = int(obj["grade"])
    target = WedgeVector.from_dict(F, f.N, k, {
        tuple(int(i) - 1 for i in key.split(",")): F.parse_element(v)
        for key, v in obj["target"].items()})
    terms = [(F.parse_element(t["coeff"]),
              canonical_subspace(F, [[F.parse_element(x) for x in row] for row in t["basis"]],
                                 ambient_dim=f.N))
             for t in obj["terms"]]
    return Certificate(f, target, terms, obj.get("trace", {}))
