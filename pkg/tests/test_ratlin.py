from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from stoichgeom.ratlin import (
    DimensionMismatch,
    RationalMatrix,
    Subspace,
    nullspace,
    orthogonal_complement,
    orthogonal_projection,
    primitive,
    project,
    quotient_dim,
    rank,
    row_space,
    rref,
    solve_affine,
    subspace_intersection,
    subspace_sum,
)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]


@given(matrices())
def test_rref_matches_sympy(rows):
    R, piv = rref(RationalMatrix(rows))
    S, spiv = sympy.Matrix(rows).rref()
    assert piv == tuple(spiv)
    assert [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(S.rows)] == [list(r) for r in R.rows]


@given(matrices())
def test_rank_nullity(rows):
    M = RationalMatrix(rows)
    N = nullspace(M)
    assert rank(M) + N.dim == M.ncols
    assert rank(M) == sympy.Matrix(rows).rank()
    for b in N.basis:
        assert all(v == 0 for v in M @ list(b))


@given(matrices(), matrices())
def test_sum_intersection_dimension(a, b):
    n = min(len(a[0]), len(b[0]))
    A = row_space(RationalMatrix([r[:n] for r in a]))
    B = row_space(RationalMatrix([r[:n] for r in b]))
    assert subspace_sum(A, B).dim + subspace_intersection(A, B).dim == A.dim + B.dim
    assert A.contains_subspace(subspace_intersection(A, B))


@given(matrices())
def test_orthogonal_complement(rows):
    A = row_space(RationalMatrix(rows))
    C = orthogonal_complement(A)
    assert A.dim + C.dim == A.ambient_dim
    assert C == nullspace(RationalMatrix(rows))


def test_subspace_equality_is_span_equality():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)])
    b = Subspace.span([(1, 2, 1), (1, 0, -1)])
    assert a == b
    assert a != Subspace.span([(1, 0, 0), (0, 1, 0)])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(3, 4), 0]) == (2, 3, 0)
    assert primitive([-4, 6]) == (-2, 3)


def test_projection_and_quotient():
    A = Subspace.span([(1, 0, 5), (0, 1, 7)])
    assert project(A, [0, 1]) == Subspace.full(2)
    Z = Subspace.span([(1, 1, 0)])
    assert orthogonal_projection((2, 0, 3), Z) == (1, 1, 0)
    assert quotient_dim(Subspace.full(3), Z) == 2


def test_solve_affine():
    sol = solve_affine(RationalMatrix([[1, 1], [1, -1]]), [3, 1])
    assert sol.particular == (2, 1)
    assert sol.feasible and sol.nullspace.dim == 0
    bad = solve_affine(RationalMatrix([[1, 1], [2, 2]]), [1, 3])
    assert not bad.feasible
    assert (bad.rank, bad.augmented_rank) == (1, 2)
