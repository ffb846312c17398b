from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, strategies as st

from stoichgeom.lp import feasible_point, linprog
from stoichgeom.ratlin import RationalMatrix, solve_affine


def brute_force_min(c, A, b):
    """Minimum of c·x over {x >= 0, A x <= b} in the plane by vertex enumeration."""
    rows = [(list(r), bi) for r, bi in zip(A, b)] + [([-1, 0], 0), ([0, -1], 0)]
    best = None
    for (r1, b1), (r2, b2) in itertools.combinations(rows, 2):
        sol = solve_affine(RationalMatrix([r1, r2]), [b1, b2])
        if not sol.feasible or sol.nullspace.dim:
            continue
        x = sol.particular
        if all(sum(a * xi for a, xi in zip(r, x)) <= bi for r, bi in rows):
            v = sum(ci * xi for ci, xi in zip(c, x))
            best = v if best is None else min(best, v)
    return best


def test_textbook_optimum():
    res = linprog([-1, -1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.x == (Fraction(8, 5), Fraction(6, 5))
    assert res.value == Fraction(-14, 5)


def test_statuses():
    assert linprog([1], [[-1]], [-2]).value == 2
    assert linprog([-1]).status == "unbounded"
    assert linprog([1], [[1]], [-1]).status == "infeasible"
    assert linprog([1, 0], A_eq=[[1, 1]], b_eq=[0], free=[0, 1]).status == "unbounded"
    assert linprog([1], A_eq=[[1]], b_eq=[-3], free=[0]).value == -3


def test_feasible_point():
    x = feasible_point([[1, 1]], [1], [[1, -1]], [0], n=2)
    assert x is not None and x[0] == x[1] and sum(x) <= 1
    assert feasible_point([[1]], [-1], n=1) is None


@given(
    st.lists(st.integers(-5, 5), min_size=2, max_size=2),
    st.lists(st.lists(st.integers(-3, 5), min_size=2, max_size=2), min_size=1, max_size=4),
    st.lists(st.integers(0, 9), min_size=4, max_size=4),
)
def test_matches_vertex_enumeration(c, A, b):
    A = A + [[1, 0], [0, 1]]  # box keeps the region bounded
    b = b[: len(A) - 2] + [10, 10]
    res = linprog(c, A, b)
    assert res.status == "optimal"
    assert res.value == brute_force_min(c, A, b)
