from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polargrass.fields import QQ, FieldError, make_field
from polargrass.forms import (WittParams, build_alternating, build_hermitian, build_quadratic_even,
                              build_quadratic_odd, form_from_json, form_to_json, is_totally_singular,
                              perp, polarize, radical, standard_form, witt_params_bruteforce)
from polargrass.linalg import canonical_subspace

F2, F3, F4, F9 = make_field(2), make_field(3), make_field(2, 2), make_field(3, 2)

GRID_FORMS = [
    build_hermitian(F4, 2, 0, 0), build_hermitian(F4, 2, 1, 0), build_hermitian(F4, 2, 0, 1),
    build_alternating(F2, 2, 1), build_alternating(F3, 2, 2),
    build_quadratic_odd(F3, 2, 0, 0), build_quadratic_odd(F3, 2, 1, 0),
    build_quadratic_odd(F3, 2, 2, 0), build_quadratic_odd(F3, 2, 1, 1),
    build_quadratic_even(F2, 2, 0, 0, 0), build_quadratic_even(F2, 2, 1, 0, 0),
    build_quadratic_even(F2, 2, 0, 1, 1), build_quadratic_even(F4, 2, 1, 0, 0),
    build_quadratic_even(F4, 2, 0, 1, 0),
]


def vec(F, N):
    return st.lists(st.sampled_from(F.elements()), min_size=N, max_size=N).map(tuple)


def test_elliptic_gf2_matrix():
    f = build_quadratic_even(F2, 1, 1, 0, 0)
    assert f.matrix == ((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1))
    assert f.params == WittParams(n=1, d0=2, d=0, N=4, m=1, dp0=0)
    assert f.q((0, 0, 1, 0)) == 1 and f.q((0, 0, 1, 1)) == 1


def test_odd_polarization_doubles_kappa():
    f = build_quadratic_odd(F3, 2, 1, 0)
    b = polarize(f)
    assert b.kind == "symmetric"
    assert b.matrix[4][4] == 2  # 2 * kappa with kappa = 1
    assert b.matrix[0][1] == b.matrix[1][0] == 1


def test_even_polarization_is_alternating():
    b = polarize(build_quadratic_even(F4, 2, 1, 0, 0))
    assert b.kind == "alternating"
    for x in itertools.product([0, 1], repeat=6):
        assert b.pair(x, x) == 0


def test_default_kappa_over_gf3_is_anisotropic():
    f = build_quadratic_odd(F3, 1, 2)
    assert f.kappa == (1, 1)
    assert all(f.q((0, 0, a, b)) != 0 for a, b in itertools.product(range(3), repeat=2) if a or b)


def test_hermitian_layout():
    h = build_hermitian(F4, 2, 1, 1)
    assert h.params == WittParams(n=2, d0=1, d=1, N=6)
    assert h.hyperbolic_pairs == [(0, 1), (2, 3)]
    assert h.anisotropic_coords == [4] and h.radical_coords == [5]
    assert h.matrix[4][4] == 1


@pytest.mark.parametrize("build", [
    lambda: build_hermitian(F4, 1, 2),
    lambda: build_hermitian(F2, 1),
    lambda: build_hermitian(F4, 1, 1, 0, [2]),          # kappa not fixed by the involution
    lambda: build_quadratic_odd(F3, 1, 3),
    lambda: build_quadratic_odd(F3, 1, 2, 0, [1, 2]),  # x^2 + 2y^2 is isotropic
    lambda: build_quadratic_odd(F2, 1),
    lambda: build_quadratic_even(F4, 1, 1, 0, 0, lam=[1], mu=[1]),
    lambda: build_quadratic_even(F2, 1, 0, 2),
    lambda: build_quadratic_even(F3, 1),
    lambda: build_quadratic_odd(QQ, 1, 2, 0, [1, -1]),
])
def test_builders_reject_invalid_parameters(build):
    with pytest.raises((ValueError, FieldError)):
        build()


def test_rational_default_is_sum_of_squares():
    f = build_quadratic_odd(QQ, 2, 3)
    assert f.kappa == (1, 1, 1)
    assert f.q((0, 0, 0, 0, Fraction(1, 2), 1, 0)) == Fraction(5, 4)


def test_radicals():
    e = build_quadratic_even(F2, 2, 0, 1, 1)
    assert radical(e).basis == ((0, 0, 0, 0, 0, 1),)
    assert radical(polarize(e)).dim == 2
    assert radical(build_alternating(F3, 2, 2)).dim == 2
    assert radical(build_hermitian(F4, 2, 0, 0)).dim == 0


@pytest.mark.parametrize("f", GRID_FORMS, ids=repr)
def test_bruteforce_witt_parameters_match_construction(f):
    got = witt_params_bruteforce(f)
    assert (got.n, got.d, got.N) == (f.params.n, f.params.d, f.params.N)
    assert got.d0 == f.params.d0


def test_perp_and_total_singularity():
    f = build_alternating(F3, 2)
    X = canonical_subspace(F3, [(1, 0, 0, 0)])
    P = perp(f, X)
    assert P.dim == 3 and not P.contains((0, 1, 0, 0))
    assert is_totally_singular(f, [(1, 0, 0, 0), (0, 0, 1, 0)])
    assert not is_totally_singular(f, [(1, 0, 0, 0), (0, 1, 0, 0)])
    # under a quadratic form orthogonality alone is not enough: q(e_5) != 0
    q = build_quadratic_odd(F3, 2, 1)
    assert not is_totally_singular(q, [(0, 0, 0, 0, 1)])


def test_json_roundtrip_all_kinds():
    for f in GRID_FORMS + [build_quadratic_odd(QQ, 2, 3)]:
        g = form_from_json(form_to_json(f))
        assert g.matrix == f.matrix and g.kind == f.kind and g.params == f.params


def test_json_accepts_symplectic_alias():
    f = form_from_json({"kind": "symplectic", "field": "3", "n": 2, "d": 1})
    assert f.kind == "alternating" and f.N == 5


def test_standard_form_dispatch():
    assert standard_form("hermitian", F4, n=2, d0=1).N == 5
    assert standard_form("quadratic", F2, n=2, m=1).params.m == 1


@settings(max_examples=80, deadline=None)
@given(vec(F4, 6), vec(F4, 6), st.sampled_from(F4.elements()))
def test_hermitian_sesquilinear(x, y, c):
    h = build_hermitian(F4, 2, 1, 1)
    assert h.pair(y, x) == F4.conj(h.pair(x, y))
    assert F4.conj(h.pair(x, x)) == h.pair(x, x)
    cx = tuple(F4.mul(c, a) for a in x)
    cy = tuple(F4.mul(c, a) for a in y)
    # linear in one argument, semilinear in the other
    assert {h.pair(cx, y), h.pair(x, cy)} == {F4.mul(c, h.pair(x, y)),
                                              F4.mul(F4.conj(c), h.pair(x, y))}


@settings(max_examples=80, deadline=None)
@given(vec(F3, 5), vec(F3, 5))
def test_alternating_form_identities(x, y):
    f = build_alternating(F3, 2, 1)
    assert f.pair(x, x) == 0
    assert f.pair(x, y) == F3.neg(f.pair(y, x))


@pytest.mark.parametrize("f", [build_quadratic_odd(F3, 2, 2, 0), build_quadratic_even(F4, 2, 1, 0, 0),
                               build_quadratic_even(F2, 2, 0, 1, 1)], ids=repr)
def test_quadratic_polarization_identity(f):
    F = f.field
    b = polarize(f)
    rng = itertools.islice(itertools.product(F.elements(), repeat=f.N), 0, None, 7)
    pts = list(itertools.islice(rng, 60))
    for x, y in itertools.product(pts[:20], pts[20:40]):
        s = tuple(F.add(a, c) for a, c in zip(x, y))
        assert F.sub(F.sub(f.q(s), f.q(x)), f.q(y)) == b.pair(x, y)
    for x, c in itertools.product(pts, F.elements()):
        assert f.q(tuple(F.mul(c, a) for a in x)) == F.mul(F.mul(c, c), f.q(x))
