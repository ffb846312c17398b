from __future__ import annotations

import pytest

from stoichgeom.formula import (
    Composition,
    FormulaError,
    Reaction,
    barycentric_point,
    composition_vector,
    element_order,
    parse_equation,
    parse_formula,
)
from fractions import Fraction


@pytest.mark.parametrize(
    "text, counts, charge",
    [
        ("H2O", {"H": 2, "O": 1}, 0),
        ("Ca(OH)2", {"Ca": 1, "O": 2, "H": 2}, 0),
        ("K4[Fe(CN)6]", {"K": 4, "Fe": 1, "C": 6, "N": 6}, 0),
        ("Mg(NO3)2", {"Mg": 1, "N": 2, "O": 6}, 0),
        ("MnO4^-", {"Mn": 1, "O": 4}, -1),
        ("SO4^2-", {"S": 1, "O": 4}, -2),
        ("Fe^3+", {"Fe": 1}, 3),
        ("Fe+++", {"Fe": 1}, 3),
        ("e^-", {}, -1),
        ("X5Y5Z2", {"X": 5, "Y": 5, "Z": 2}, 0),
    ],
)
def test_parse_formula(text, counts, charge):
    c = parse_formula(text)
    assert c.counts == counts
    assert c.charge == charge


@pytest.mark.parametrize("text", ["Ca(OH", "H2O)", "2H2O", "h2o", "Fe^+3", "", "H0"])
def test_parse_formula_rejects(text):
    with pytest.raises(FormulaError):
        parse_formula(text)


def test_formula_error_reports_position():
    with pytest.raises(FormulaError, match="position 5"):
        parse_formula("Ca(OH")


def test_composition_equality_ignores_order():
    assert parse_formula("OH2") == parse_formula("H2O")
    assert parse_formula("H2O") != parse_formula("H2O2")
    assert Composition.from_counts({"H": 2, "O": 1}) == parse_formula("H2O")


@pytest.mark.parametrize("sep", ["->", "=", "→"])
def test_parse_equation_separators(sep):
    r = parse_equation(f"NO + O3 {sep} NO2 + O2")
    assert r.labels == ["NO", "O3", "NO2", "O2"]
    assert r.n_reactants == 2


def test_parse_equation_drops_coefficients():
    assert parse_equation("2 H2 + O2 -> 2H2O").labels == ["H2", "O2", "H2O"]


def test_charged_species_in_equation():
    r = parse_equation("MnO4^- + H^+ + e^- -> Mn^2+ + H2O")
    assert r.is_charged
    assert [s.charge for s in r.species] == [-1, 1, -1, 2, 0]


@pytest.mark.parametrize("text", ["H2 + O2", "-> H2O", "H2 -> -> H2O"])
def test_parse_equation_rejects(text):
    with pytest.raises(FormulaError):
        parse_equation(text)


def test_vectors_and_barycentric_points():
    r = Reaction.from_formulas(["XY", "YZ"], ["XYZ2"])
    order = element_order(r.species)
    assert order == ["X", "Y", "Z"]
    assert composition_vector(parse_formula("XYZ2"), order) == (1, 1, 2)
    assert barycentric_point(parse_formula("XYZ2"), order) == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert composition_vector(parse_formula("SO4^2-"), ["S", "O"], with_charge=True) == (1, 4, -2)


@pytest.mark.parametrize("text", ["MnO4^- -> Mn^2+", "Fe^2+ -> Fe^3+", "Fe+++ + e -> Fe++"])
def test_trailing_cation_charge_is_not_a_separator(text):
    r = parse_equation(text)
    assert r.species[-1].charge > 0
