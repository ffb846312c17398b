from __future__ import annotations

from fractions import Fraction

import pytest

from stoichgeom.balance import Balance, Kind, canonical_balances, classify, species_matrix
from stoichgeom.formula import Reaction, parse_equation
from stoichgeom.redox import (
    HalfReaction,
    HalfReactionError,
    balance_half_reaction,
    balance_key,
    charge_system,
    combine_half_reactions,
    enumerate_half_reaction_splits,
    half_reaction_reachable_balances,
    spectator_transform,
    step_one_realizable,
)

R = Reaction.from_formulas


@pytest.mark.parametrize(
    "reactants, products, medium, expected",
    [
        (["Au", "CN^-"], ["[Au(CN)2]^-"], "basic", "Au + 2CN^- = [Au(CN)2]^- + e^-"),
        (["O2"], ["H2O2"], "basic", "O2 + 2H2O + 2e^- = H2O2 + 2OH^-"),
        (["MnO4^-"], ["Mn^2+"], "acidic", "MnO4^- + 8H^+ + 5e^- = Mn^2+ + 4H2O"),
        (["Fe^2+"], ["Fe^3+"], "acidic", "Fe^2+ = Fe^3+ + e^-"),
    ],
)
def test_half_reaction_recipe(reactants, products, medium, expected):
    assert str(balance_half_reaction(HalfReaction(R(reactants, products), medium))) == expected


def test_half_reaction_output_is_a_valid_balance():
    b = balance_half_reaction(HalfReaction(R(["Cr2O7^2-"], ["Cr^3+"]), "acidic"))
    Balance(b.reaction, b.coefficients)  # re-validates conservation of elements and charge
    assert b.coefficient("e^-") == -6


def test_medium_must_be_known():
    with pytest.raises(ValueError):
        HalfReaction(R(["Fe^2+"], ["Fe^3+"]), "neutral")


def test_combine_cancels_electrons():
    ox = balance_half_reaction(HalfReaction(R(["Fe^2+"], ["Fe^3+"]), "acidic"))
    red = balance_half_reaction(HalfReaction(R(["MnO4^-"], ["Mn^2+"]), "acidic"))
    total = combine_half_reactions(ox, red)
    assert "e^-" not in [l for l, c in zip(total.reaction.labels, total.coefficients) if c]
    assert str(total) == "5Fe^2+ + MnO4^- + 8H^+ = 5Fe^3+ + Mn^2+ + 4H2O"
    assert balance_key(combine_half_reactions(red, ox)) == balance_key(total)
    with pytest.raises(HalfReactionError):
        combine_half_reactions(ox, ox)


def test_charge_row_slicing():
    cs = charge_system(R(["MnO4^-", "H^+", "e^-"], ["Mn^2+", "H2O"]), order=["H", "O", "Mn"])
    assert cs.labels == ("H", "O", "Mn", "charge")
    assert set(cs.naive_offenders) == {"H^+", "Mn^2+"}
    assert cs.normal is not None
    for col in species_matrix(R(["MnO4^-", "H^+", "e^-"], ["Mn^2+", "H2O"]), ["H", "O", "Mn"])[0].columns:
        assert sum(n * x for n, x in zip(cs.normal, col)) > 0


def test_spectator_transform_round_trip():
    rxn = R(["MnO4^-", "Fe^2+", "H^+"], ["Mn^2+", "Fe^3+", "H2O"])
    ss = spectator_transform(rxn)
    assert not ss.reaction.is_charged
    (b,) = canonical_balances(ss.reaction)
    stripped = ss.strip(b)
    assert stripped.reaction == rxn or stripped.reaction.labels == rxn.labels
    assert str(stripped) == "MnO4^- + 5Fe^2+ + 8H^+ = Mn^2+ + 5Fe^3+ + 4H2O"
    assert classify(rxn).kind is Kind.UNIQUE


def test_spectator_symbols_avoid_clashes():
    rxn = R(["Q^+", "X^-"], ["QX"])
    ss = spectator_transform(rxn)
    assert ss.q_symbol not in ("Q",) and ss.x_symbol not in ("X",)


def test_phosphorus_iodide_has_no_disjoint_split():
    rxn = R(["P2I4", "P4", "H2O"], ["PH4I", "H3PO4"])
    splits = enumerate_half_reaction_splits(rxn)
    assert len(splits) == 5
    assert not any(s.disjoint(rxn) for s in splits)
    assert [str(b) for b in half_reaction_reachable_balances(rxn)] == ["10P2I4 + 13P4 + 128H2O = 40PH4I + 32H3PO4"]


def test_gold_reachable_set_excludes_a_balance():
    rxn = R(["Au", "CN^-", "O2"], ["[Au(CN)2]^-", "H2O2"])
    reach = half_reaction_reachable_balances(rxn, "basic")
    assert len(reach) >= 1
    full = R(["Au", "CN^-", "O2", "H2O"], ["[Au(CN)2]^-", "H2O2", "OH^-"])
    assert Balance(full, (-2, -4, -2, -4, 2, 3, 2)) not in reach
    for b in reach:
        Balance(b.reaction, b.coefficients)


def test_step_one():
    assert step_one_realizable(parse_equation("MnO4^- -> Mn^2+"))
    assert not step_one_realizable(parse_equation("Fe^2+ -> Cu^2+"))
