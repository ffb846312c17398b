from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stoichgeom.geometry import Location, UnboundedError, convex_hull
from stoichgeom.lattice import (
    LatticeError,
    count_series,
    denominator_bounded_count,
    evaluate,
    fit_count_polynomial,
    format_polynomial,
    integer_points,
    lattice_points,
)


def brute(P, n=1, interior=False):
    lo = [min(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    hi = [max(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    ranges = [range(int((l * n) // 1), int(-((-h * n) // 1)) + 1) for l, h in zip(lo, hi)]
    out = []
    for z in itertools.product(*ranges):
        loc = P.contains(tuple(Fraction(x, n) for x in z))
        if loc is Location.INTERIOR or (not interior and loc is Location.BOUNDARY):
            out.append(z)
    return out


def pts(dim, lo=-3, hi=3, rational=False):
    coord = st.fractions(lo, hi, max_denominator=3) if rational else st.integers(lo, hi)
    return st.lists(st.tuples(*[coord] * dim), min_size=1, max_size=6)


@settings(max_examples=80)
@given(st.one_of(pts(2, rational=True), pts(3, rational=True)))
def test_lattice_points_match_brute_force(points):
    P = convex_hull(points)
    assert lattice_points(P) == sorted(brute(P))
    assert lattice_points(P, interior_only=True) == sorted(brute(P, interior=True))


@settings(max_examples=40)
@given(pts(2, rational=True), st.integers(1, 3))
def test_denominator_count_matches_brute_force(points, n):
    P = convex_hull(points)
    assert denominator_bounded_count(P, n) == (len(brute(P, n)), len(brute(P, n, interior=True)))


@settings(max_examples=40)
@given(st.one_of(pts(2, 0, 3), pts(3, 0, 2)))
def test_fitted_polynomial_reciprocity_and_monotonicity(points):
    P = convex_hull(points)
    s = fit_count_polynomial(P)
    d = P.dim
    assert evaluate(s.fitted_closed, 0) == 1
    for n in range(1, 5):
        assert evaluate(s.fitted_interior, n) == (-1) ** d * evaluate(s.fitted_closed, -n)
    values = [evaluate(s.fitted_closed, n) for n in range(1, 6)]
    assert values == sorted(values)
    if d == P.ambient_dim and d > 0:
        # leading coefficient is the Euclidean volume for full-dimensional polytopes
        assert s.fitted_closed[-1] > 0


def test_unit_square_polynomial():
    s = fit_count_polynomial(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert format_polynomial(s.fitted) == "n^2 + 2n + 1"
    assert format_polynomial(s.fitted_interior) == "n^2 - 2n + 1"


def test_triangle_counts():
    P = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert format_polynomial(fit_count_polynomial(P).fitted) == "2n^2 + 3n + 1"
    assert count_series(P, 2).values == ((1, 6, 0), (2, 15, 3))


def test_segment_in_plane():
    P = convex_hull([(0, 0), (3, 3)])
    assert lattice_points(P) == [(0, 0), (1, 1), (2, 2), (3, 3)]
    assert format_polynomial(fit_count_polynomial(P, interior=True).fitted) == "3n - 1"


def test_integer_points_with_equalities():
    # x + y + z = 2, x, y, z >= 0
    got = integer_points([((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0)], [((1, 1, 1), 2)])
    assert len(got) == 6
    assert integer_points([((-1, 0), 0), ((0, -1), 0), ((1, 1), 3)], [((2, 2), 3)]) == []


def test_unbounded_region_raises():
    with pytest.raises(UnboundedError):
        integer_points([((-1, 0), 0), ((0, -1), 0)])


def test_rational_vertices_rejected_for_fit():
    with pytest.raises(LatticeError):
        fit_count_polynomial(convex_hull([(0, 0), (Fraction(1, 2), 0), (0, 1)]))


def test_format_polynomial():
    assert format_polynomial((Fraction(1), Fraction(-3), Fraction(18))) == "18n^2 - 3n + 1"
    assert format_polynomial((Fraction(1, 2), Fraction(0), Fraction(-1))) == "-n^2 + 1/2"
    assert format_polynomial(()) == "0"
