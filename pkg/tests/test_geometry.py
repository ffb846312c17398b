from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from stoichgeom.geometry import (
    Cone,
    GeometryError,
    Location,
    OutsideHull,
    Polytope,
    SliceError,
    UnboundedError,
    cone_from_rays,
    convex_hull,
    interior_rational_point,
    intersect,
    rational_convex_combination,
    slice_cone,
)

points2 = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=9)


@given(points2)
def test_hull_vertices_match_sympy(pts):
    P = convex_hull(pts)
    hull = sympy.convex_hull(*[sympy.Point(p) for p in pts])
    if isinstance(hull, sympy.Polygon):
        expected = {(int(v.x), int(v.y)) for v in hull.vertices}
    elif isinstance(hull, sympy.Segment):
        expected = {(int(v.x), int(v.y)) for v in hull.points}
    else:
        expected = {(int(hull.x), int(hull.y))}
    assert set(P.vertices) == expected
    for p in pts:
        assert P.contains(p) is not Location.OUTSIDE


@given(points2)
def test_v_and_h_representations_agree(pts):
    P = convex_hull(pts)
    Q = Polytope.from_constraints([(h.normal, h.offset) for h in P.halfspaces], [(e.normal, e.offset) for e in P.equalities], 2)
    assert Q == P
    assert Polytope.from_json(P.to_json()) == P
    c = interior_rational_point(P)
    assert P.contains(c) is Location.INTERIOR or P.dim == 0


def test_square_facets_and_location():
    P = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert P.dim == 2
    assert len(P.vertices) == 4 and len(P.halfspaces) == 4
    assert P.contains((1, 1)) is Location.INTERIOR
    assert P.contains((2, 1)) is Location.BOUNDARY
    assert P.contains((3, 1)) is Location.OUTSIDE


def test_lower_dimensional_hull_keeps_equalities():
    P = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert P.dim == 2
    assert len(P.equalities) == 1
    assert P.contains((Fraction(1, 3),) * 3) is Location.INTERIOR


def test_unbounded_constraints_raise():
    with pytest.raises(UnboundedError):
        Polytope.from_constraints([((-1, 0), 0), ((0, -1), 0)])


def test_empty_constraints_give_empty_polytope():
    P = Polytope.from_constraints([((1,), 0), ((-1,), -1)])
    assert P.is_empty and P.dim == -1


def test_intersection_of_triangles():
    A = convex_hull([(0, 0), (4, 0), (0, 4)])
    B = convex_hull([(0, 0), (4, 0), (4, 4)])
    I = intersect(A, B)
    assert set(I.vertices) == {(0, 0), (4, 0), (2, 2)}


def test_cone_h_rep_and_extreme_rays():
    C = cone_from_rays([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    assert C.dim == 3
    assert C.extreme_rays == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert C.contains((1, 2, 3)) and not C.contains((-1, 0, 0))


def test_cone_rejects_zero_ray():
    with pytest.raises(GeometryError):
        Cone(2, ((0, 0),))


def test_slice_cone():
    P = slice_cone(cone_from_rays([(1, 0), (1, 1)]), (1, 1))
    assert set(P.vertices) == {(1, 0), (Fraction(1, 2), Fraction(1, 2))}
    with pytest.raises(SliceError):
        slice_cone(cone_from_rays([(1, -1), (1, 1)]), (1, 1))


def test_rational_convex_combination():
    gens = [(0, 0), (2, 0), (0, 2)]
    w = rational_convex_combination((1, Fraction(1, 2)), gens)
    assert sum(w) == 1 and all(x >= 0 for x in w)
    assert tuple(sum(wi * g[k] for wi, g in zip(w, gens)) for k in range(2)) == (1, Fraction(1, 2))
    with pytest.raises(OutsideHull):
        rational_convex_combination((3, 3), gens)
