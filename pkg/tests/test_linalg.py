"""Exact linear algebra: ranks, kernels, subspace calculus, enumeration."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedalg.errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NotInvertibleError,
    UnsupportedFieldError,
)
from gradedalg.linalg import (
    GF,
    QQ,
    Matrix,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    kernel_basis,
    rank,
    subspace_intersect,
    subspace_sum,
)


def test_rational_scalars_are_canonical():
    assert QQ.from_fraction(Fraction(2, 4)) == Fraction(1, 2)
    assert QQ.parse("-6/4") == Fraction(-3, 2)
    assert QQ.parse("-6/4").denominator == 2  # positive denominator, lowest terms


def test_prime_field_scalars_are_canonical():
    f5 = GF(5)
    assert f5.normalize(-1) == 4
    assert f5.inv(2) == 3
    assert f5.from_fraction(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        f5.from_fraction(Fraction(1, 5))
    with pytest.raises(ValueError):
        GF(6)


def test_rank_identity_and_zero():
    assert rank(Matrix.identity(2, QQ)) == 2
    assert rank(Matrix.zero(3, 4, QQ)) == 0


def test_rank_dependent_rows():
    # [[1,2],[2,4]] row-reduces to a single nonzero row.
    m = Matrix.from_rows([[1, 2], [2, 4]], QQ)
    assert rank(m) == 1


def test_field_mismatch_rejected():
    m = Matrix.from_rows([[1]], QQ)
    w = Matrix.from_rows([[1]], GF(2))
    with pytest.raises(FieldMismatchError):
        m @ w
    with pytest.raises(FieldMismatchError):
        Matrix(1, 1, GF(5), {(0, 0): Fraction(1, 2)})


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(3, QQ)).dim == 0
    full = kernel_basis(Matrix.zero(2, 3, GF(3)))
    assert full.dim == 3


def test_kernel_gf2_line():
    # Both nonzero solutions of x + y = 0 over GF(2) lie on one line.
    ker = kernel_basis(Matrix.from_rows([[1, 1]], GF(2)))
    assert ker.dim == 1
    assert ker.basis == ((1, 1),)
    for vec in [(0, 0), (1, 1)]:
        assert ker.contains(vec)
    for vec in [(1, 0), (0, 1)]:
        assert not ker.contains(vec)


def test_kernel_vectors_annihilated():
    rng = random.Random(7)
    for field in (QQ, GF(5)):
        for _ in range(20):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            if field is QQ:
                m = Matrix.from_rows(
                    [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)], field
                )
            else:
                m = Matrix.from_rows(
                    [[rng.randrange(5) for _ in range(cols)] for _ in range(rows)], field
                )
            ker = kernel_basis(m)
            assert rank(m) + ker.dim == cols
            for v in ker.basis:
                assert all(x == field.zero for x in m.apply(list(v)))


def test_subspace_canonical_equality():
    u = Subspace.from_spanning([[1, 1], [2, 2]], 2, QQ)
    w = Subspace.from_spanning([[Fraction(1, 2), Fraction(1, 2)]], 2, QQ)
    assert u == w
    assert u.dim == 1


def test_subspace_sum_examples():
    u = Subspace.from_spanning([[1, 0]], 2, QQ)
    z = Subspace.zero(2, QQ)
    assert subspace_sum(u, u) == u
    assert subspace_sum(u, z) == u
    w = Subspace.from_spanning([[0, 1]], 2, QQ)
    assert subspace_sum(u, w) == Subspace.full(2, QQ)


def test_subspace_intersect_examples():
    u = Subspace.from_spanning([[1, 0]], 2, QQ)
    w = Subspace.from_spanning([[1, 1]], 2, QQ)
    z = Subspace.zero(2, QQ)
    assert subspace_intersect(u, u) == u
    assert subspace_intersect(u, z) == z
    assert subspace_intersect(u, w).is_zero()


def test_subspace_ambient_mismatch():
    u = Subspace.from_spanning([[1, 0]], 2, QQ)
    w = Subspace.from_spanning([[1, 0, 0]], 3, QQ)
    with pytest.raises(DimensionMismatchError):
        subspace_sum(u, w)


@st.composite
def _gf_subspace_pair(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(min_value=1, max_value=4))
    field = GF(p)
    mk = lambda: [
        [draw(st.integers(min_value=0, max_value=p - 1)) for _ in range(n)]
        for _ in range(draw(st.integers(min_value=0, max_value=n)))
    ]
    u = Subspace.from_spanning(mk(), n, field)
    w = Subspace.from_spanning(mk(), n, field)
    return u, w


@settings(max_examples=150, deadline=None)
@given(_gf_subspace_pair())
def test_inclusion_exclusion(pair):
    u, w = pair
    s = subspace_sum(u, w)
    i = subspace_intersect(u, w)
    assert s.dim + i.dim == u.dim + w.dim
    assert s.contains_subspace(u) and s.contains_subspace(w)
    assert u.contains_subspace(i) and w.contains_subspace(i)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.lists(st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=4), min_size=1, max_size=4),
)
def test_rank_nullity_rational(seed, _n, raw_rows):
    cols = len(raw_rows[0])
    rows = [r[:cols] + [0] * (cols - len(r)) for r in raw_rows]
    m = Matrix.from_rows(rows, QQ)
    assert rank(m) + kernel_basis(m).dim == cols


def test_enumeration_counts():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    subs = list(enumerate_subspaces(2, 1, GF(2)))
    assert len(subs) == 3
    assert len(set(subs)) == 3
    subs = list(enumerate_subspaces(3, 1, GF(2)))
    assert len(subs) == 7
    assert len(set(subs)) == 7


def test_enumeration_zero_dim():
    subs = list(enumerate_subspaces(4, 0, GF(3)))
    assert subs == [Subspace.zero(4, GF(3))]


def test_enumeration_matches_gaussian_binomial():
    for p in (2, 3):
        for n in range(5):
            for k in range(n + 1):
                subs = list(enumerate_subspaces(n, k, GF(p)))
                assert len(subs) == gaussian_binomial(n, k, p)
                assert len(set(subs)) == len(subs)


def test_enumeration_is_deterministic_and_starts_at_first_axis():
    first = next(enumerate_subspaces(2, 1, GF(2)))
    assert first.basis == ((1, 0),)
    a = [s.basis for s in enumerate_subspaces(3, 2, GF(3))]
    b = [s.basis for s in enumerate_subspaces(3, 2, GF(3))]
    assert a == b


def test_enumeration_rejects_rationals():
    with pytest.raises(UnsupportedFieldError):
        list(enumerate_subspaces(2, 1, QQ))


def test_inverse():
    m = Matrix.from_rows([[1, 2], [3, 5]], QQ)
    inv = m.inverse()
    assert m @ inv == Matrix.identity(2, QQ)
    with pytest.raises(NotInvertibleError):
        Matrix.from_rows([[1, 2], [2, 4]], QQ).inverse()
    f7 = GF(7)
    m = Matrix.from_rows([[2, 1], [1, 1]], f7)
    assert m @ m.inverse() == Matrix.identity(2, f7)


def test_fraction_heavy_rref_is_exact():
    # Hilbert-style matrix: classic trigger for precision loss; must be exact.
    n = 5
    m = Matrix.from_rows(
        [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)], QQ
    )
    assert rank(m) == n
    assert m @ m.inverse() == Matrix.identity(n, QQ)
