from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stoichgeom.corpus import AZOMETHANE, AZOMETHANE_M
from stoichgeom.lp import feasible_point
from stoichgeom.mechanism import (
    InfiniteRepresentations,
    Mechanism,
    MechanismError,
    algebraic_representations,
    candidate_elementary_reactions,
    conservation_report,
    consistent_reactions,
    finiteness_test,
    homology_space,
    order_realizable,
    precedence_analysis,
)
from stoichgeom.ratlin import RationalMatrix, Subspace, nullspace, rank

EX51 = Mechanism.build(["S1", "S2", "S3"], [[-1, -1], [1, -1], [1, 2]])


def test_example_mass_space():
    rep = conservation_report(EX51)
    assert rep.mass_space == Subspace.span([(3, 1, 2)])
    assert rep.conservative
    assert all(x > 0 for x in rep.positive_witness)


def test_non_conservative():
    assert conservation_report(Mechanism.build(["A", "B"], [[1], [-1]])).conservative
    # A -> B then B -> 2A creates mass, so no positive conservation law exists
    rep = conservation_report(Mechanism.build(["A", "B"], [[-1, 2], [1, -1]]))
    assert not rep.conservative


def test_mechanism_validation():
    with pytest.raises(MechanismError):
        Mechanism.build(["A", "B"], [[1], [1]])  # no consumed species
    with pytest.raises(MechanismError):
        Mechanism.build(["A", "A"], [[1], [-1]])
    with pytest.raises(MechanismError):
        Mechanism.build(["A", "B"], [[Fraction(1, 2)], [-1]])
    with pytest.raises(MechanismError):
        conservation_report(EX51, [[1, 1, 1]])  # M N != 0


def test_json_round_trip():
    assert Mechanism.from_json(AZOMETHANE.to_json()) == AZOMETHANE


def test_azomethane_conservation_and_homology():
    rep = conservation_report(AZOMETHANE, AZOMETHANE_M)
    assert rep.mass_space.contains_subspace(rep.element_space)
    assert rep.homology_dim == 0
    assert homology_space(AZOMETHANE, AZOMETHANE_M).dim == 0


def test_consistent_reactions_small_mechanism_brute_force():
    t = 4
    got = set(consistent_reactions(EX51, t))
    N = [list(r) for r in EX51.N.rows]
    expected = set()
    for z in itertools.product(range(-t, t + 1), repeat=3):
        if sum(map(abs, z)) <= t and feasible_point(A_eq=N, b_eq=z, n=2) is not None:
            expected.add(z)
    assert got == expected


def test_consistent_reactions_zero_radius():
    assert consistent_reactions(EX51, 0) == [(0, 0, 0)]
    assert consistent_reactions(EX51, 0, include_origin=False) == []


def test_projective_collapses_multiples():
    pts = consistent_reactions(EX51, 4, include_origin=False, projective=True)
    for a, b in itertools.combinations(pts, 2):
        assert rank(RationalMatrix([a, b])) == 2


def test_azomethane_representation_and_finiteness():
    finite, _ = finiteness_test(AZOMETHANE)
    assert finite
    assert algebraic_representations(AZOMETHANE, (-5, 3, 1, 1, 1, 1)) == [(3, 1, 1, 1, 1, 1)]
    assert algebraic_representations(AZOMETHANE, [0] * 9) == [(0,) * 6]


def test_infinite_representations_need_a_step_bound():
    loop = Mechanism.build(["A", "B"], [[-1, 1], [1, -1]])
    finite, witness = finiteness_test(loop)
    assert not finite
    with pytest.raises(InfiniteRepresentations) as exc:
        algebraic_representations(loop, (-1, 1))
    w = exc.value.witness
    assert all(x >= 0 for x in w) and any(w)
    assert all(v == 0 for v in loop.N @ list(w))
    assert algebraic_representations(loop, (-1, 1), step_bound=3) == [(1, 0), (2, 1)]


def test_precedence_azomethane():
    rep = precedence_analysis(AZOMETHANE)
    assert rep.levels == [[0], [1, 2, 4], [3, 5]]
    assert not rep.unreachable
    assert order_realizable(AZOMETHANE, (3, 1, 1, 1, 1, 1), rep)
    assert not order_realizable(AZOMETHANE, (0, 1, 0, 0, 0, 0), rep)


def test_unproduced_intermediate_marks_step_unreachable():
    m = Mechanism.build(["A", "B", "X", "Y"], [[-1, 0], [1, 0], [0, 1], [0, -1]], intermediates=["X", "Y"])
    rep = precedence_analysis(m)
    assert rep.unreachable == [1]


def test_candidate_reactions_small_cases():
    c = candidate_elementary_reactions(Subspace.span([(1, -1)]), 2)
    assert c.lines == ((1, -1),)
    assert set(c.up_to_sign) == {(1, -1), (2, -2)}
    assert len(c.vectors) == 4
    assert candidate_elementary_reactions(Subspace.zero(3), 2).vectors == ()


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=2), st.integers(4, 6))
def test_candidate_reactions_match_box_scan(gens, s):
    gens = [g + [0] * (s - 3) for g in gens]
    V = Subspace.span(gens, s)
    got = set(candidate_elementary_reactions(V, 1).vectors)
    want = {z for z in itertools.product((-1, 0, 1), repeat=s) if V.contains(z) and min(z) < 0 < max(z)}
    assert got == want


@st.composite
def mechanisms_with_elements(draw):
    """A random elemental matrix M and a mechanism N with M N = 0."""
    s = draw(st.integers(3, 6))
    e = draw(st.integers(1, s - 2))
    M = [draw(st.lists(st.integers(0, 3), min_size=s, max_size=s)) for _ in range(e)]
    ker = nullspace(RationalMatrix(M, s)).integer_basis()
    cols = []
    for _ in range(draw(st.integers(1, 4))):
        w = draw(st.lists(st.integers(-2, 2), min_size=len(ker), max_size=len(ker)))
        v = [sum(wi * b[i] for wi, b in zip(w, ker)) for i in range(s)]
        if min(v, default=0) < 0 < max(v, default=0):
            cols.append(v)
    if not cols:
        return None
    u = draw(st.integers(0, s - 1))
    species = [f"S{i}" for i in range(s)]
    N = [[c[i] for c in cols] for i in range(s)]
    return Mechanism.build(species, N, intermediates=species[s - u :] if u else ()), M


@settings(max_examples=80)
@given(mechanisms_with_elements())
def test_forward_invariants(pair):
    if pair is None:
        return
    mech, M = pair
    rep = conservation_report(mech, M)
    s = len(mech.species)
    assert rep.mass_space.contains_subspace(rep.element_space)
    # S = CS(N) + H + RS(M) with orthogonal pieces
    assert rank(mech.N) + rep.homology_dim + rep.element_space.dim == s
    pr = precedence_analysis(mech)
    for a, b in zip(pr.iterates, pr.iterates[1:]):
        assert a <= b
    assert len(pr.iterates) <= len(mech.intermediates) + 2


@settings(max_examples=60)
@given(mechanisms_with_elements(), st.data())
def test_representations_reproduce_c(pair, data):
    if pair is None:
        return
    mech, _ = pair
    x = data.draw(st.lists(st.integers(0, 2), min_size=mech.n_steps, max_size=mech.n_steps))
    c = mech.N @ x
    reps = algebraic_representations(mech, c, step_bound=sum(x) + 1)
    assert tuple(x) in reps
    for r in reps:
        assert list(mech.N @ list(r)) == list(c) and min(r) >= 0
