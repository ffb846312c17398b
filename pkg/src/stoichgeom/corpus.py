"""Golden worked examples, runnable as checks.

Each :class:`Case` recomputes a published worked example (or a randomised
property suite) from scratch and compares against frozen values.  Cases with
a ``criterion`` number form the acceptance suite; the rest are supplementary
examples.  ``run_corpus`` drives them all and is what ``stoichgeom corpus``
prints.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction as F

from .balance import (
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
from .formula import Composition, Reaction, Species, parse_formula
from .geometry import convex_hull
from .lattice import denominator_bounded_count, fit_count_polynomial, format_polynomial
from .mechanism import (
    Mechanism,
    algebraic_representations,
    bounded_region,
    candidate_elementary_reactions,
    conservation_report,
    consistent_reactions,
    finiteness_test,
    homology_cross_check,
    homology_space,
    inverse_mechanism_spaces,
    precedence_analysis,
)
from .ratlin import RationalMatrix, Subspace, column_space, nullspace, subspace_intersection
from .redox import (
    HalfReaction,
    balance_half_reaction,
    charge_system,
    enumerate_half_reaction_splits,
    half_reaction_reachable_balances,
    spectator_transform,
)

__all__ = [
    "Check",
    "CaseResult",
    "Case",
    "CASES",
    "run_case",
    "run_corpus",
    "random_reaction",
    "random_balanceable",
    "random_matrix_pair",
    "AZOMETHANE",
    "AZOMETHANE_M",
    "FORMALDEHYDE",
    "FORMALDEHYDE_M",
]


@dataclass(frozen=True)
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CaseResult:
    key: str
    title: str
    criterion: int | None
    checks: tuple[Check, ...]
    seconds: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        head = f"[{tag}] {self.key}: {self.title} ({self.seconds:.2f}s)"
        if self.error:
            return f"{head}\n    error: {self.error}"
        bad = "".join(f"\n    failed: {c.label}: {c.detail}" for c in self.failures())
        return head + bad


@dataclass(frozen=True)
class Case:
    key: str
    title: str
    run: Callable[[], list[Check]]
    criterion: int | None = None
    tags: tuple[str, ...] = field(default=())


def expect(label: str, actual, expected) -> Check:
    ok = actual == expected
    return Check(label, ok, "" if ok else f"expected {expected!r}, got {actual!r}")


def within(label: str, seconds: float, limit: float) -> Check:
    return Check(label, seconds < limit, f"{seconds:.3f}s (limit {limit}s)")


def R(reactants: Iterable[str], products: Iterable[str]) -> Reaction:
    return Reaction.from_formulas(list(reactants), list(products))


# -- shared data -------------------------------------------------------------

AZOMETHANE = Mechanism.build(
    ["C2H6N2", "N2", "CH4", "C2H6", "C3H8N2", "C4H12N2", "X", "Y", "Z"],
    [
        [-1, -1, 0, 0, -1, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [2, -1, -2, -1, -1, -1],
        [0, 1, 0, -1, 0, 0],
        [0, 0, 0, 0, 1, -1],
    ],
    intermediates=["X", "Y", "Z"],
)
# element rows C, H, N; intermediates X = CH3, Y = C2H5N2, Z = C3H9N2
AZOMETHANE_M = [
    [2, 0, 1, 2, 3, 4, 1, 2, 3],
    [6, 0, 4, 6, 8, 12, 3, 5, 9],
    [2, 2, 0, 0, 2, 2, 0, 2, 2],
]
AZOMETHANE_O = [(-1, -3, 1, 2, 0, 1), (2, 4, 0, -2, 0, 0), (0, 0, -1, 0, 1, 0)]

FORMALDEHYDE = Mechanism.build(
    [f"K{i}" for i in range(1, 9)] + [f"U{i}" for i in range(1, 5)],
    [
        [-1, 0, 0, 1, 0, -1, -1, -1],
        [-1, 0, -1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, -1, 1, 0, 0],
        [0, 0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
        [1, -1, 0, 0, 0, 0, 0, 0],
        [0, 1, -1, -1, -1, 1, 0, 1],
        [0, 0, 0, 1, 0, -1, -1, 0],
        [0, 0, 0, 0, 1, 0, 1, -1],
    ],
    intermediates=["U1", "U2", "U3", "U4"],
)
# element rows H, C, O, Co, charge
FORMALDEHYDE_M = [
    [2, 0, 0, 1, 0, 2, 2, 2, 2, 1, 1, 1],
    [1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 1, 2, 0, 1, 1, 1, 0],
    [0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 3, 2, 1, 0, 0, 0, 0, 3, 0, 0, 0],
]
FORMALDEHYDE_O = [
    (1, 0, 0, 0, 1, 0, 0, 1),
    (0, 1, 0, 0, 2, 0, 0, 0),
    (0, 0, 1, 0, -2, 0, 0, 0),
    (0, 0, 0, 1, -2, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 1, -1),
]

XYZ_REACTION = (["X", "Y", "XYZ"], ["XZ", "YZ", "X5Y5Z2"])
GOLD = (["Au", "CN^-", "O2"], ["[Au(CN)2]^-", "H2O2"])
PERMANGANATE = (["H2SO4", "H2O2", "KMnO4"], ["K2SO4", "MnSO4", "O2", "H2O"])


# -- random generators for the property suites ------------------------------


def random_reaction(rng: random.Random, max_species: int = 6, max_entry: int = 4, elements: str = "ABC") -> Reaction:
    m = rng.randint(2, max_species)
    species = []
    for i in range(m):
        while True:
            counts = {e: rng.randint(0, max_entry) for e in elements}
            if any(counts.values()):
                break
        species.append(Species(f"S{i + 1}", Composition.from_counts({e: k for e, k in counts.items() if k})))
    r = rng.randint(1, m - 1)
    return Reaction(tuple(species[:r]), tuple(species[r:]))


def random_balanceable(rng: random.Random, **kw) -> tuple[Reaction, Balance]:
    """A random reaction with a balance built from all of its extreme balances."""
    while True:
        rxn = random_reaction(rng, **kw)
        rays = balance_cone_rays(rxn)
        if rays:
            weights = [rng.randint(1, 3) for _ in rays]
            coefs = [sum(w * ray[i] for w, ray in zip(weights, rays)) for i in range(len(rxn.species))]
            return rxn, Balance(rxn, tuple(coefs))


def random_matrix_pair(rng: random.Random, max_rows: int = 5, max_cols: int = 5, entry: int = 3):
    n = rng.randint(1, max_rows)
    a, b = rng.randint(1, max_cols), rng.randint(1, max_cols)
    low = rng.choice([0, -entry])

    def mat(cols):
        # sprinkle rank deficiency by reusing columns
        out = []
        for _ in range(cols):
            if out and rng.random() < 0.25:
                out.append(list(rng.choice(out)))
            else:
                out.append([rng.randint(low, entry) for _ in range(n)])
        return RationalMatrix.from_columns(out, n)

    return mat(a), mat(b)


# -- acceptance cases ----------------------------------------------------------


def _c1() -> list[Check]:
    rxn = R(["XY", "YZ"], ["XYZ2"])
    M, _ = species_matrix(rxn)
    t = time.perf_counter()
    ns = nullspace(M)
    elapsed = time.perf_counter() - t
    return [
        expect("nullspace dimension", ns.dim, 0),
        expect("classification", classify(rxn).kind, Kind.NO_BALANCE),
        within("nullspace time", elapsed, 0.001),
    ]


def _c2() -> list[Check]:
    M = RationalMatrix([[1, 0, 1, 1, 0, 5], [0, 1, 1, 0, 1, 5], [0, 0, 1, 1, 1, 2]])
    given = Subspace.span([(0, 1, -1, 1, 0, 0), (1, 0, -1, 0, 1, 0), (-3, -3, -2, 0, 0, 1)])
    ns = nullspace(M)
    return [expect("nullspace dimension", ns.dim, 3), expect("span equality", ns, given)]


def _c3() -> list[Check]:
    rxn = R(*XYZ_REACTION)
    I = reaction_polytopes(rxn).intersection
    b1 = balance_at(rxn, (F(3, 8), F(3, 8), F(1, 4)))
    b2 = balance_at(rxn, (F(2, 5), F(2, 5), F(1, 5)))
    return [
        expect("intersection dimension", I.dim, 2),
        expect("vertex count", len(I.vertices), 4),
        expect(
            "vertices",
            set(I.vertices),
            {(F(5, 18), F(4, 9), F(5, 18)), (F(1, 3), F(1, 3), F(1, 3)), (F(5, 12), F(5, 12), F(1, 6)), (F(4, 9), F(5, 18), F(5, 18))},
        ),
        expect("balance at (3/8,3/8,1/4)", str(b1), "2X + 2Y + 4XYZ = XZ + YZ + X5Y5Z2"),
        expect("balance at (2/5,2/5,1/5)", str(b2), "8X + 8Y + 8XYZ = XZ + YZ + 3X5Y5Z2"),
        Check("distinct after canonicalization", b1.integers != b2.integers),
    ]


def _c4() -> list[Check]:
    Q = convex_hull([(15, 15, 6), (16, 10, 10), (10, 16, 10), (12, 12, 12)])
    t = time.perf_counter()
    _, n1 = denominator_bounded_count(Q, 1)
    _, n2 = denominator_bounded_count(Q, 2)
    fit = fit_count_polynomial(Q, interior=True)
    elapsed = time.perf_counter() - t
    return [
        expect("interior integer points", n1, 16),
        expect("interior points with denominator <= 2", n2, 33),
        expect("interior counting polynomial", format_polynomial(fit.fitted), "n^2 + 14n + 1"),
        Check("validated at n = d+2, d+3", True, "fit_count_polynomial raises on mismatch"),
        within("time", elapsed, 1.0),
    ]


def _c5() -> list[Check]:
    rxn = R(["NO", "O3"], ["NO2", "O2"])
    order = ["O", "N"]
    I = reaction_polytopes(rxn, order=order).intersection
    segment = {(F(1), F(0)), (F(2, 3), F(1, 3))}
    return [
        expect("classification", classify(rxn, order=order).kind, Kind.MULTIPLE),
        expect("intersection is the segment 0 <= t <= 1/3", set(I.vertices), segment),
        expect("t = 1/5", str(balance_at(rxn, (F(4, 5), F(1, 5)), order=order)), "NO + O3 = NO2 + O2"),
        expect("t = 1/4", str(balance_at(rxn, (F(3, 4), F(1, 4)), order=order)), "6NO + 4O3 = 6NO2 + 3O2"),
    ]


def _c6() -> list[Check]:
    rxn = R(*PERMANGANATE)
    rr = apply_ratio_restriction(rxn, "reactant", ["KMnO4", "H2O2"], [2, 5])
    return [
        expect("dimension before restriction", classify(rxn).intersection_dim, 1),
        expect("after, vertex replacement", rr.replaced.intersection_dim, 0),
        expect("after, row augmentation", rr.augmented.intersection_dim, 0),
    ]


def _c7(n: int = 200, seed: int = 7) -> list[Check]:
    rng = random.Random(seed)
    t = time.perf_counter()
    bad = []
    for k in range(n):
        rxn, b = random_balanceable(rng)
        parts = mixture_decomposition(b)
        total = [sum((w * comp.coefficient(s.label) if s.label in comp.reaction.labels else 0 for comp, w in parts), F(0)) for s in rxn.species]
        unique = all(len(balance_cone_rays(comp.reaction)) == 1 for comp, _ in parts)
        if tuple(total) != b.coefficients or not unique or any(w <= 0 for _, w in parts):
            bad.append(str(rxn))
    elapsed = time.perf_counter() - t
    return [Check(f"{n} random mixtures", not bad, f"failures: {bad[:3]}"), within("time", elapsed, 30.0)]


HALF_REACTIONS = [
    ((["Au", "CN^-"], ["[Au(CN)2]^-"]), "Au + 2CN^- = [Au(CN)2]^- + e^-"),
    ((["Au", "CN^-", "O2"], ["[Au(CN)2]^-"]), "Au + 2CN^- + O2 + 2H2O + 3e^- = [Au(CN)2]^- + 4OH^-"),
    ((["Au", "CN^-"], ["[Au(CN)2]^-", "H2O2"]), "Au + 2CN^- + 2OH^- = [Au(CN)2]^- + H2O2 + 3e^-"),
    ((["O2"], ["H2O2"]), "O2 + 2H2O + 2e^- = H2O2 + 2OH^-"),
]


def _c8() -> list[Check]:
    checks = []
    for (r, p), want in HALF_REACTIONS:
        got = str(balance_half_reaction(HalfReaction(R(r, p), "basic")))
        checks.append(expect(f"half-reaction {' + '.join(r)} -> {' + '.join(p)}", got, want))
    rxn = R(*GOLD)
    reach = half_reaction_reachable_balances(rxn, "basic")
    one_to_one = [b for b in reach if _coef(b, "H2O") and _coef(b, "H2O") == -_coef(b, "OH^-")]
    checks.append(Check("a reachable balance has H2O:OH- = 1:1", bool(one_to_one), str([str(b) for b in reach])))
    full = R(["Au", "CN^-", "O2", "H2O"], ["[Au(CN)2]^-", "H2O2", "OH^-"])
    t35 = Balance(full, (-2, -4, -2, -4, 2, 3, 2))
    checks.append(Check("t = 3/5 balance not reachable", t35 not in reach, str(t35)))
    return checks


def _coef(b: Balance, label: str) -> F:
    return b.coefficient(label) if label in b.reaction.labels else F(0)


def _c9(n: int = 500, seed: int = 9) -> list[Check]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        A, B = random_matrix_pair(rng)
        M = A.hstack(B)
        lhs = nullspace(M).dim - subspace_intersection(column_space(A), column_space(B)).dim
        if lhs != nullspace(A).dim + nullspace(B).dim:
            bad += 1
    return [expect(f"identity on {n} random pairs (failures)", bad, 0)]


def _c10() -> list[Check]:
    mech = Mechanism.build(["S1", "S2", "S3"], [[-1, -1], [1, -1], [1, 2]])
    rep = conservation_report(mech)
    return [
        expect("mass-conservation space", rep.mass_space, Subspace.span([(3, 1, 2)])),
        expect("conservative", rep.conservative, True),
    ]


def _c11() -> list[Check]:
    t = time.perf_counter()
    pts = consistent_reactions(AZOMETHANE, 6)
    P = bounded_region(AZOMETHANE, 6)
    elapsed = time.perf_counter() - t
    return [
        expect("consistent reactions at size 6", len(pts), 35),
        expect("bounded region dimension", P.dim, 6),
        expect("bounded region vertices", len(P.vertices), 14),
        within("time", elapsed, 60.0),
    ]


def _c12() -> list[Check]:
    c = (-5, 3, 1, 1, 1, 1, 0, 0, 0)
    return [
        expect("representations", algebraic_representations(AZOMETHANE, c), [(3, 1, 1, 1, 1, 1)]),
        expect("finiteness", finiteness_test(AZOMETHANE)[0], True),
    ]


TABLE_FORMALDEHYDE = [7, 5, 8, 7, 5, 4, 6, 1, 5]
TABLE_AZOMETHANE = [6, 3, 6, 6, 3, 3, 3, 0, 3]


def _formaldehyde_inverse():
    O = conservation_report(FORMALDEHYDE, FORMALDEHYDE_M).observed_space
    return inverse_mechanism_spaces(FORMALDEHYDE.species, None, ["U1", "U2", "U3", "U4"], FORMALDEHYDE_M, O)


def _azomethane_inverse():
    return inverse_mechanism_spaces(AZOMETHANE.species, None, ["X", "Y", "Z"], AZOMETHANE_M, AZOMETHANE_O)


def _c13() -> list[Check]:
    checks = []
    for name, rep, want in (
        ("formaldehyde", _formaldehyde_inverse(), TABLE_FORMALDEHYDE),
        ("azomethane", _azomethane_inverse(), TABLE_AZOMETHANE),
    ):
        for (row, got), w in zip(rep.table().items(), want):
            checks.append(expect(f"{name}: {row}", got, w))
    return checks


PROJ_Z_O = (1, F(-12, 23), F(12, 23), F(12, 23), F(-49, 23), F(-26, 23), F(26, 23), F(-29, 23))


def _c14() -> list[Check]:
    rep = _formaldehyde_inverse()
    return [
        expect("observed space", rep.observed, Subspace.span(FORMALDEHYDE_O)),
        expect("proj_Z O", rep.proj_Z_O, Subspace.span([PROJ_Z_O])),
    ]


def _c15() -> list[Check]:
    pr = precedence_analysis(AZOMETHANE)
    t = time.perf_counter()
    cand = candidate_elementary_reactions(nullspace(RationalMatrix(AZOMETHANE_M)), 1)
    elapsed = time.perf_counter() - t
    return [
        expect("phi({K})", pr.iterates[1], frozenset({"K", "X"})),
        expect("phi^2({K})", pr.iterates[2], frozenset({"K", "X", "Y", "Z"})),
        expect("stable after phi^2", len(pr.iterates), 3),
        expect("nonzero vectors in NS(M) ∩ [-1,1]^9", len(cand.vectors), 116),
        expect("distinct lines", len(cand.lines), 58),
        within("time", elapsed, 10.0),
    ]


def _c16(n: int = 500, seed: int = 16) -> list[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        rxn = random_reaction(rng)
        c = classify(rxn)
        ok = c.moduli_dim == c.span_intersection_dim + c.ker_r + c.ker_p
        if c.rays:
            ok = ok and c.q_dim == c.intersection_cone_dim + c.fibre_r + c.fibre_p
        if c.geometric_kind is not None:
            ok = ok and c.geometric_kind == c.kind
        if not ok:
            bad.append(str(rxn))
    return [Check(f"identities and agreement on {n} random reactions", not bad, f"failures: {bad[:3]}")]


# -- supplementary worked examples ------------------------------------------


def _moduli_inequalities() -> list[Check]:
    Q = moduli_polyhedron(R(*XYZ_REACTION), [(0, 1, -1, 1, 0, 0), (1, 0, -1, 0, 1, 0), (-3, -3, -2, 0, 0, 1)])
    return [expect("moduli polyhedron dimension", Q.dim, 3), expect("inequality count", len(Q.inequalities), 6)]


def _hydrogen_carbon_groupings() -> list[Check]:
    species = [Species(f, parse_formula(f)) for f in ["H2", "H2O", "CH4", "CO2", "CO"]]
    return [expect("uniquely balanced groupings", len(unique_groupings(species)), 5)]


def _sulfur_nitric() -> list[Check]:
    rxn = R(["S", "HNO3"], ["SO2", "NO", "H2O"])
    return [
        expect("classification", classify(rxn).kind, Kind.UNIQUE),
        expect("balance", str(canonical_balances(rxn)[0]), "3S + 4HNO3 = 3SO2 + 4NO + 2H2O"),
    ]


def _chloric_acid_mixture() -> list[Check]:
    rxn = R(["HClO3"], ["HClO4", "Cl2", "O2", "H2O"])
    parts = mixture_decomposition(Balance(rxn, (-3, 1, 1, 2, 1)))
    got = sorted((str(c), w) for c, w in parts)
    want = sorted([("7HClO3 = 5HClO4 + Cl2 + H2O", F(1, 5)), ("4HClO3 = 2Cl2 + 5O2 + 2H2O", F(2, 5))])
    return [expect("mixture components", got, want)]


def _permanganate_charge() -> list[Check]:
    cs = charge_system(R(["MnO4^-", "H^+", "e^-"], ["Mn^2+", "H2O"]), order=["H", "O", "Mn"])
    return [
        expect("naive slicing fails on", set(cs.naive_offenders), {"H^+", "Mn^2+"}),
        Check("a valid slicing normal exists", cs.normal is not None, repr(cs.normal)),
    ]


def _iron_permanganate() -> list[Check]:
    rxn = R(["MnO4^-", "Fe^2+", "H^+"], ["Mn^2+", "Fe^3+", "H2O"])
    ss = spectator_transform(rxn)
    b = ss.strip(canonical_balances(ss.reaction)[0])
    return [
        expect("classification with spectators", classify(ss.reaction).kind, Kind.UNIQUE),
        expect("balance", str(b), "MnO4^- + 5Fe^2+ + 8H^+ = Mn^2+ + 5Fe^3+ + 4H2O"),
    ]


def _phosphorus_iodide() -> list[Check]:
    rxn = R(["P2I4", "P4", "H2O"], ["PH4I", "H3PO4"])
    splits = enumerate_half_reaction_splits(rxn)
    reach = [str(b) for b in half_reaction_reachable_balances(rxn)]
    return [
        expect("split count", len(splits), 5),
        expect("no split has disjoint halves", any(s.disjoint(rxn) for s in splits), False),
        expect("reachable balances", reach, ["10P2I4 + 13P4 + 128H2O = 40PH4I + 32H3PO4"]),
    ]


def _azomethane_conservation() -> list[Check]:
    rep = conservation_report(AZOMETHANE, AZOMETHANE_M)
    return [
        expect("homology dimension", rep.homology_dim, 0),
        Check("element space inside mass space", rep.mass_space.contains_subspace(rep.element_space)),
    ]


def _azomethane_precedence() -> list[Check]:
    pr = precedence_analysis(AZOMETHANE)
    return [expect("precedence levels (steps numbered from 1)", [[j + 1 for j in lv] for lv in pr.levels], [[1], [2, 3, 5], [4, 6]])]


DIFFERENCE = (
    F(761, 12928), F(-1573, 6464), F(-9, 404), F(-9, 404),
    F(-4379, 12928), F(13249, 12928), F(4435, 6464), F(1285, 3232),
)  # fmt: skip


def _formaldehyde_cross_check() -> list[Check]:
    rep = _formaldehyde_inverse()
    diff, ok = homology_cross_check(rep, FORMALDEHYDE)
    H = homology_space(FORMALDEHYDE, FORMALDEHYDE_M)
    return [
        Check("difference lies in the ambiguity space", ok),
        expect("difference vector", diff, DIFFERENCE),
        expect("last homology entry (first entry scaled to 1)", H.basis[0][-1] / H.basis[0][0], F(-315, 128)),
        expect("projection injective on NS(M)", rep.injective, True),
    ]


CASES: tuple[Case, ...] = (
    Case("A1", "no balance for XY + YZ -> XYZ2", _c1, 1),
    Case("A2", "nullspace of the XYZ species matrix", _c2, 2),
    Case("A3", "XYZ intersection quadrilateral and its two balances", _c3, 3),
    Case("A4", "denominator-bounded counts of the scaled quadrilateral", _c4, 4),
    Case("A5", "nitric oxide and ozone balance family", _c5, 5),
    Case("A6", "permanganate ratio restriction", _c6, 6),
    Case("A7", "mixtures of uniquely balanced reactions (property)", _c7, 7, ("slow",)),
    Case("A8", "gold cyanide half-reactions", _c8, 8),
    Case("A9", "nullity and span-intersection identity (property)", _c9, 9),
    Case("A10", "mass conservation of a two-step mechanism", _c10, 10),
    Case("A11", "azomethane consistent overall reactions", _c11, 11, ("slow",)),
    Case("A12", "azomethane algebraic representation", _c12, 12),
    Case("A13", "inverse-problem dimension table", _c13, 13),
    Case("A14", "formaldehyde observed projection", _c14, 14),
    Case("A15", "azomethane precedence and candidate steps", _c15, 15),
    Case("A16", "balance dimension identities (property)", _c16, 16, ("slow",)),
    Case("X1", "XYZ moduli polyhedron", _moduli_inequalities),
    Case("X2", "hydrogen and carbon oxide groupings", _hydrogen_carbon_groupings),
    Case("X3", "sulfur and nitric acid", _sulfur_nitric),
    Case("X4", "chloric acid decomposition mixture", _chloric_acid_mixture),
    Case("X5", "permanganate half-reaction charge slicing", _permanganate_charge),
    Case("X6", "iron and permanganate with spectator ions", _iron_permanganate),
    Case("X7", "phosphorus iodide half-reaction splits", _phosphorus_iodide),
    Case("X8", "azomethane conservation report", _azomethane_conservation),
    Case("X9", "azomethane precedence levels", _azomethane_precedence),
    Case("X10", "formaldehyde homology cross-check", _formaldehyde_cross_check),
)


def run_case(case: Case) -> CaseResult:
    t = time.perf_counter()
    try:
        checks = tuple(case.run())
        error = None
    except Exception as exc:  # a crashing case is reported, not raised
        checks, error = (), f"{type(exc).__name__}: {exc}"
    return CaseResult(case.key, case.title, case.criterion, checks, time.perf_counter() - t, error)


def run_corpus(keys: Iterable[str] | None = None, acceptance_only: bool = False) -> list[CaseResult]:
    wanted = set(keys) if keys else None
    out = []
    for case in CASES:
        if wanted is not None and case.key not in wanted:
            continue
        if acceptance_only and case.criterion is None:
            continue
        out.append(run_case(case))
    return out
