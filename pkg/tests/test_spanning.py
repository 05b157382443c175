from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from polargrass.exterior import SpanAccumulator
from polargrass.fields import make_field
from polargrass.forms import build_alternating, build_quadratic_odd
from polargrass.polar import embedding_span
from polargrass.spanning import (GenDescriptor, binom, descriptor_wedge, pair_sum, predicted_dim,
                                 symplectic_genset, vandermonde_holds, verify_genset)

F2, F3 = make_field(2), make_field(3)


def double_factorial_odd(h):
    """(2h - 1)!!, the number of perfect matchings of 2h items."""
    out = 1
    for i in range(1, 2 * h, 2):
        out *= i
    return out


def genset_size(n, d, k):
    """|E_k|: choose D in the radical, a k-|D| subset S of pairs, a matching on 2h of S, and a
    +/- sign on each remaining pair."""
    total = 0
    for r in range(min(d, k) + 1):
        s = k - r
        if s > n:
            continue
        inner = sum(math.comb(s, 2 * h) * double_factorial_odd(h) * 2 ** (s - 2 * h)
                    for h in range(s // 2 + 1))
        total += math.comb(d, r) * math.comb(n, s) * inner
    return total


def test_binom_zero_outside_range():
    assert binom(4, -1) == 0 and binom(4, 5) == 0 and binom(-1, 0) == 0
    assert binom(6, 2) == 15 and binom(0, 0) == 1


def test_predicted_dim_values():
    assert predicted_dim("alternating", 2, 4, 2, 2, 0) == 5
    assert predicted_dim("quadratic", 2, 4, 2, 2, 0) == 5
    assert predicted_dim("hermitian", 2, 5, 3, 2, 1) == 6
    assert predicted_dim("alternating", 2, 5, 3, 2, 1) == 5
    assert predicted_dim("quadratic", 3, 5, 2, 2, 0) == 10
    assert predicted_dim("symplectic", 3, 6, 2, 3, 0) == 14


def test_predicted_dim_rejects():
    with pytest.raises(ValueError):
        predicted_dim("alternating", 2, 3, 1, 1, 1)
    with pytest.raises(ValueError):
        predicted_dim("alternating", 2, 4, 3, 2, 0)


@pytest.mark.parametrize("f", [build_alternating(F2, 2, 1), build_alternating(F3, 2, 2),
                               build_quadratic_odd(F3, 2, 1, 1)], ids=repr)
def test_predicted_dim_matches_enumeration(f):
    p = f.params
    for k in range(1, p.n + p.d + 1):
        assert embedding_span(f, k).dim == predicted_dim(f.kind, f.field.char, f.N, k, p.n, p.d)


@given(st.integers(0, 12), st.data())
def test_vandermonde(N, data):
    d = data.draw(st.integers(0, N))
    k = data.draw(st.integers(0, N))
    assert vandermonde_holds(N, d, k)


def test_genset_small_case():
    gens = symplectic_genset(2, 0, 2)
    assert set(gens) == {
        GenDescriptor((), (0, 1), (), ()), GenDescriptor((0,), (1,), (), ()),
        GenDescriptor((1,), (0,), (), ()), GenDescriptor((0, 1), (), (), ()),
        GenDescriptor((), (), ((0, 1),), ()),
    }
    assert len(gens) == binom(4, 2) - binom(4, 0)


@pytest.mark.parametrize("n,d,k", [(2, 0, 1), (2, 0, 2), (3, 0, 2), (3, 0, 3), (2, 1, 3),
                                   (2, 2, 3), (2, 2, 4), (4, 1, 3), (4, 0, 4)])
def test_genset_size_matches_counting_formula(n, d, k):
    gens = symplectic_genset(n, d, k)
    assert len(gens) == len(set(gens)) == genset_size(n, d, k)
    assert all(g.grade == k for g in gens)


def test_descriptor_wedge():
    w = descriptor_wedge(F3, 4, GenDescriptor((), (), ((0, 1),), ()))
    assert w == pair_sum(F3, 4, 0, 1)
    assert w.dumps() == "2 4; 1,2:1 3,4:2"
    assert descriptor_wedge(F3, 5, GenDescriptor((0,), (1,), (), (4,))).support() == {(0, 3, 4): 1}


def test_descriptor_json_is_one_based():
    g = GenDescriptor((0,), (1,), ((2, 3),), (8,))
    assert g.to_json() == {"A": [1], "B": [2], "C": [[3, 4]], "D": [9]}
    assert GenDescriptor.from_json(g.to_json()) == g


def test_pair_sums_are_dependent():
    # u_{1,2} + u_{2,3} = u_{1,3}: the reason E_2 is not a basis once n >= 3
    lhs = pair_sum(F3, 6, 0, 1) + pair_sum(F3, 6, 1, 2)
    assert lhs == pair_sum(F3, 6, 0, 2)


@pytest.mark.parametrize("F", [F2, F3], ids=repr)
@pytest.mark.parametrize("n,d", [(2, 0), (2, 1), (2, 2), (3, 0)])
def test_genset_spans_embedding(F, n, d):
    f = build_alternating(F, n, d)
    for k in range(1, n + d + 1):
        r = verify_genset(f, k)
        assert r.span_equal
        assert r.dim == embedding_span(f, k).dim


def test_genset_basis_flag():
    f = build_alternating(F3, 3)
    assert verify_genset(f, 3).is_basis
    r = verify_genset(f, 2)
    assert (r.cardinality, r.dim, r.is_basis) == (15, 14, False)


def test_genset_spans_independent_accumulation():
    f = build_alternating(F2, 2, 1)
    gens = symplectic_genset(2, 1, 2)
    acc = SpanAccumulator(F2, 5, 2).extend(descriptor_wedge(F2, 5, g) for g in gens)
    assert acc.dim == predicted_dim("alternating", 2, 5, 2, 2, 1) == 9
    assert acc.same_span(embedding_span(f, 2))


def test_verify_genset_rejects_other_kinds():
    with pytest.raises(ValueError):
        verify_genset(build_quadratic_odd(F3, 2), 2)
