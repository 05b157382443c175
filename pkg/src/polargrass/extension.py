"""Normalizing a quadratic form after extending scalars to a quadratic extension.

Over GF(q^2) every anisotropic binary block becomes hyperbolic, so the form
takes the shape "hyperbolic pairs, at most one square term, radical".  The
functions return the new basis (rows in old coordinates, over the extension),
the normalized form, and the extension degree g.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FiniteField, make_field, subfield_embedding
from .forms import Form, build_quadratic_even, build_quadratic_odd

__all__ = ["Normalization", "extend_normalize_even", "extend_normalize_odd", "transformed_coefficients"]


@dataclass
class Normalization:
    field: FiniteField
    basis: list[tuple]  # new basis vectors in old coordinates, over ``field``
    form: Form
    degree: int


def _embed_form_values(f: Form, E: FiniteField):
    emb = subfield_embedding(f.field, E)
    return emb, [[emb[x] for x in row] for row in f.matrix]


def transformed_coefficients(Q: list[list], basis: list[tuple], E: FiniteField) -> list[tuple]:
    """Upper-triangular coefficients of q in a new basis: q(b_i) on the diagonal, f(b_i, b_j) above."""
    N = len(basis)

    def qv(x):
        s = E.zero
        for i in range(N):
            if x[i] == E.zero:
                continue
            for j in range(N):
                if Q[i][j] != E.zero and x[j] != E.zero:
                    s = E.add(s, E.mul(E.mul(x[i], Q[i][j]), x[j]))
        return s

    out = []
    for i in range(N):
        row = []
        for j in range(N):
            if j < i:
                row.append(E.zero)
            elif j == i:
                row.append(qv(basis[i]))
            else:
                both = tuple(E.add(a, b) for a, b in zip(basis[i], basis[j]))
                row.append(E.sub(E.sub(qv(both), qv(basis[i])), qv(basis[j])))
        out.append(tuple(row))
    return out


def _unit(E, N, i):
    return tuple(E.one if j == i else E.zero for j in range(N))


def extend_normalize_even(f: Form) -> Normalization:
    """Characteristic 2: each block lam x^2 + xy + mu y^2 is split by the roots of lam t^2 + t + mu."""
    F = f.field
    if f.kind != "quadratic" or F.char != 2 or not F.is_finite:
        raise ValueError("extend_normalize_even needs a finite characteristic 2 quadratic form")
    p = f.params
    g = 2 if p.m else 1
    E = make_field(F.p, F.e * g) if g > 1 else F
    emb, Q = _embed_form_values(f, E)
    N, n, m = p.N, p.n, p.m
    basis = [_unit(E, N, i) for i in range(N)]
    for i in range(m):
        a, b = 2 * n + 2 * i, 2 * n + 2 * i + 1
        lam, mu = Q[a][a], Q[b][b]
        roots = [t for t in E.elements()
                 if E.add(E.add(E.mul(lam, E.mul(t, t)), t), mu) == E.zero]
        alpha, beta = roots
        gamma_inv = E.inv(E.sqrt(E.add(alpha, beta)))
        basis[a] = tuple(E.mul(alpha, gamma_inv) if j == a else gamma_inv if j == b else E.zero
                         for j in range(N))
        basis[b] = tuple(E.mul(beta, gamma_inv) if j == a else gamma_inv if j == b else E.zero
                         for j in range(N))
    kappa = [emb[c] for c in f.kappa]
    target = build_quadratic_even(E, n + m, 0, p.dp0, p.d, kappa=kappa)
    got = transformed_coefficients(Q, basis, E)
    if tuple(got) != target.matrix:
        raise AssertionError("normalized form does not have the standard shape")
    return Normalization(E, basis, target, g)


def extend_normalize_odd(f: Form) -> Normalization:
    """Odd characteristic: a defect-2 part kappa1 x^2 + kappa2 y^2 becomes a hyperbolic pair over GF(q^2)."""
    F = f.field
    if f.kind != "quadratic" or F.char == 2 or not F.is_finite:
        raise ValueError("extend_normalize_odd needs a finite odd characteristic quadratic form")
    p = f.params
    g = 2 if p.d0 == 2 else 1
    E = make_field(F.p, F.e * g) if g > 1 else F
    emb, Q = _embed_form_values(f, E)
    N, n = p.N, p.n
    basis = [_unit(E, N, i) for i in range(N)]
    if p.d0 == 2:
        a, b = 2 * n, 2 * n + 1
        k1, k2 = Q[a][a], Q[b][b]
        t = E.sqrt(E.neg(E.div(k2, k1)))
        c = E.inv(E.mul(E.from_int(4), k2))
        basis[a] = tuple(t if j == a else E.one if j == b else E.zero for j in range(N))
        basis[b] = tuple(E.mul(c, E.neg(t)) if j == a else c if j == b else E.zero for j in range(N))
        target = build_quadratic_odd(E, n + 1, 0, p.d)
    else:
        target = build_quadratic_odd(E, n, p.d0, p.d, [emb[x] for x in f.kappa])
    got = transformed_coefficients(Q, basis, E)
    if tuple(got) != target.matrix:
        raise AssertionError("normalized form does not have the standard shape")
    return Normalization(E, basis, target, g)
