from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from stoichgeom.balance import (
    Balance,
    Kind,
    apply_ratio_restriction,
    balance_at,
    balance_cone_rays,
    canonical_balances,
    classify,
    mixture_decomposition,
    moduli_polyhedron,
    reaction_polytopes,
    species_matrix,
    unique_groupings,
)
from stoichgeom.formula import Composition, Reaction, Species, parse_equation
from stoichgeom.geometry import GeometryError, cone_from_rays
from stoichgeom.ratlin import Subspace, nullspace


@st.composite
def reactions(draw, max_species=5, max_entry=4, elements="ABC"):
    m = draw(st.integers(2, max_species))
    species = []
    for i in range(m):
        counts = draw(st.lists(st.integers(0, max_entry), min_size=len(elements), max_size=len(elements)).filter(any))
        species.append(Species(f"S{i + 1}", Composition.from_counts({e: k for e, k in zip(elements, counts) if k})))
    r = draw(st.integers(1, m - 1))
    return Reaction(tuple(species[:r]), tuple(species[r:]))


def signed(rxn: Reaction, x):
    r = rxn.n_reactants
    return [-v if i < r else v for i, v in enumerate(x)]


@settings(max_examples=150)
@given(reactions())
def test_nullspace_matches_sympy(rxn):
    M, _ = species_matrix(rxn)
    ours = nullspace(M)
    theirs = sympy.Matrix([[int(x) for x in row] for row in M.rows]).nullspace()
    assert ours == Subspace.span([[Fraction(int(v.p), int(v.q)) for v in b] for b in theirs], M.ncols)


@settings(max_examples=60)
@given(reactions(max_species=4, max_entry=3))
def test_rays_generate_every_small_balance(rxn):
    M, _ = species_matrix(rxn)
    rays = balance_cone_rays(rxn)
    for ray in rays:
        Balance(rxn, ray)  # validates signs and conservation
    n = len(rxn.species)
    found = []
    for x in itertools.product(range(5), repeat=n):
        if any(x) and all(v == 0 for v in M @ signed(rxn, x)):
            found.append(signed(rxn, x))
    if not rays:
        assert not found
        return
    C = cone_from_rays(rays)
    assert all(C.contains(v) for v in found)
    assert classify(rxn).q_dim == C.dim


@settings(max_examples=150)
@given(reactions())
def test_dimension_identities(rxn):
    c = classify(rxn)
    assert c.moduli_dim == c.span_intersection_dim + c.ker_r + c.ker_p
    assert c.q_dim == (c.intersection_cone_dim + c.fibre_r + c.fibre_p if c.q_dim else 0)
    assert c.kind == (Kind.NO_BALANCE if c.q_dim == 0 else Kind.UNIQUE if c.q_dim == 1 else Kind.MULTIPLE)
    if c.geometric_kind is not None:
        assert c.geometric_kind == c.kind


@settings(max_examples=100)
@given(reactions(), st.data())
def test_mixture_decomposition_recombines(rxn, data):
    rays = balance_cone_rays(rxn)
    if not rays:
        return
    weights = data.draw(st.lists(st.integers(1, 3), min_size=len(rays), max_size=len(rays)))
    b = Balance(rxn, tuple(sum(w * ray[i] for w, ray in zip(weights, rays)) for i in range(len(rxn.species))))
    parts = mixture_decomposition(b)
    total = [Fraction(0)] * len(rxn.species)
    for comp, w in parts:
        assert w > 0
        assert len(balance_cone_rays(comp.reaction)) == 1
        for s, a in zip(comp.reaction.species, comp.coefficients):
            total[rxn.labels.index(s.label)] += w * a
    assert tuple(total) == b.coefficients


def test_no_balance():
    c = classify(parse_equation("XY + YZ -> XYZ2"))
    assert c.kind is Kind.NO_BALANCE and c.moduli_dim == 0
    assert canonical_balances(parse_equation("XY + YZ -> XYZ2")) == []


def test_unique_balance_water():
    rxn = parse_equation("H2 + O2 -> H2O")
    assert classify(rxn).kind is Kind.UNIQUE
    (b,) = canonical_balances(rxn)
    assert b.integers == (-2, -1, 2)
    assert str(b) == "2H2 + O2 = 2H2O"


def test_balance_rejects_bad_coefficients():
    rxn = parse_equation("H2 + O2 -> H2O")
    with pytest.raises(ValueError):
        Balance(rxn, (2, 1, 2))
    with pytest.raises(ValueError):
        Balance(rxn, (-1, -1, 1))


def test_nitric_oxide_family():
    rxn = parse_equation("NO + O3 -> NO2 + O2")
    P = reaction_polytopes(rxn).intersection
    assert set(P.vertices) == {(0, 1), (Fraction(1, 3), Fraction(2, 3))}
    assert str(balance_at(rxn, (Fraction(1, 5), Fraction(4, 5)))) == "NO + O3 = NO2 + O2"
    assert str(balance_at(rxn, (Fraction(1, 4), Fraction(3, 4)))) == "6NO + 4O3 = 6NO2 + 3O2"
    with pytest.raises(GeometryError):
        balance_at(rxn, (Fraction(1, 2), Fraction(1, 2)))


def test_element_order_changes_coordinates():
    rxn = parse_equation("NO + O3 -> NO2 + O2")
    assert reaction_polytopes(rxn, order=["O", "N"]).labels == ("O", "N")


def test_moduli_polyhedron_has_one_inequality_per_species():
    Q = moduli_polyhedron(parse_equation("X + Y + XYZ -> XZ + YZ + X5Y5Z2"))
    assert Q.dim == 3
    assert len(Q.describe()) == 6


def test_ratio_restriction_permanganate():
    rxn = parse_equation("KMnO4 + H2O2 + H2SO4 -> K2SO4 + MnSO4 + O2 + H2O")
    before = classify(rxn)
    res = apply_ratio_restriction(rxn, "reactant", ["KMnO4", "H2O2"], [2, 5])
    assert before.intersection_dim == 1
    assert res.replaced.intersection_dim == 0
    assert res.augmented.q_dim == 1


def test_unique_groupings_hydrogen_carbon_oxides():
    species = parse_equation("H2 + H2O + CH4 -> CO2 + CO").species
    groups = unique_groupings(species)
    assert len(groups) == 5
    by = {s.label: s for s in species}
    for R, P in groups:
        rxn = Reaction(tuple(by[l] for l in R), tuple(by[l] for l in P))
        M, _ = species_matrix(rxn)
        assert nullspace(M).dim == 1
        assert classify(rxn).kind is Kind.UNIQUE
