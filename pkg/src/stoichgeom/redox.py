"""Charged species: charge rows, spectator ions and the half-reaction recipe.

Electrons are ordinary species with no atoms and charge -1.  Half-reaction
balancing follows the textbook recipe: balance every element other than H
and O, then O with water, then H with H+, optionally trade H+ for OH- in
basic solution, and finally fix the charge with electrons.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .balance import Balance, balance_cone_rays, species_matrix
from .formula import ELECTRON, Composition, Reaction, Species, element_order, parse_formula
from .lp import linprog
from .ratlin import RationalMatrix, fmt, primitive, rank

__all__ = [
    "ChargeSystem",
    "charge_system",
    "SpectatorSystem",
    "spectator_transform",
    "HalfReaction",
    "HalfReactionError",
    "AmbiguousHalfReaction",
    "balance_half_reaction",
    "combine_half_reactions",
    "DegenerateCombination",
    "Split",
    "enumerate_half_reaction_splits",
    "half_reaction_reachable_balances",
    "balance_key",
    "WATER",
    "PROTON",
    "HYDROXIDE",
]

WATER = parse_formula("H2O")
PROTON = parse_formula("H^+")
HYDROXIDE = parse_formula("OH^-")
_LABELS = {WATER: "H2O", PROTON: "H^+", HYDROXIDE: "OH^-", ELECTRON: "e^-"}


@dataclass(frozen=True)
class ChargeSystem:
    """Species matrix with the charge row last, plus a slicing hyperplane if one exists.

    ``naive_normal`` is ``sum x_elements (+/-) x_charge``; ``naive_offenders``
    lists species whose rays miss it.  ``normal`` is a hyperplane ``n·x = 1``
    met by every species ray, or None when none exists (then only cone-level
    computations apply).
    """

    matrix: RationalMatrix
    labels: tuple[str, ...]
    naive_normal: tuple[Fraction, ...]
    naive_offenders: tuple[str, ...]
    normal: tuple[Fraction, ...] | None

    @property
    def naive_ok(self) -> bool:
        return not self.naive_offenders


def charge_system(reaction: Reaction, order: Sequence[str] | None = None) -> ChargeSystem:
    M, labels = species_matrix(reaction, order, with_charge=True)
    free = [s.charge for s in reaction.species if not s.composition.elements and s.charge]
    sign = -1 if free and all(c < 0 for c in free) else 1 if free and all(c > 0 for c in free) else 0
    naive = tuple(Fraction(sign) if l == "charge" else Fraction(1) for l in labels)
    cols = M.columns
    offenders = tuple(
        s.label for s, v in zip(reaction.species, cols) if sum((a * b for a, b in zip(naive, v)), Fraction(0)) <= 0
    )
    if not offenders:
        return ChargeSystem(M, tuple(labels), naive, (), naive)
    # search n with n·v >= 1 for all species, minimising |n|_1 (variables n, t with -t <= n <= t)
    d = len(labels)
    A_ub, b_ub = [], []
    for v in cols:
        A_ub.append([-x for x in v] + [0] * d)
        b_ub.append(-1)
    for i in range(d):
        row = [0] * (2 * d)
        row[i], row[d + i] = 1, -1
        A_ub.append(row)
        b_ub.append(0)
        row = [0] * (2 * d)
        row[i], row[d + i] = -1, -1
        A_ub.append(row)
        b_ub.append(0)
    res = linprog([0] * d + [1] * d, A_ub, b_ub, free=range(d))
    normal = tuple(res.x[:d]) if res.status == "optimal" else None
    return ChargeSystem(M, tuple(labels), naive, offenders, normal)


def _fresh_symbol(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    for suffix in "zyxwvutsrqponmlkjihgfedcba":
        if base + suffix not in taken:
            return base + suffix
    raise ValueError("no free spectator symbol")


@dataclass(frozen=True)
class SpectatorSystem:
    """Neutral reaction with spectator ions bound to every charged species."""

    original: Reaction
    reaction: Reaction
    q_symbol: str
    x_symbol: str
    qx_side: str | None

    def strip(self, b: Balance) -> Balance:
        """Delete the spectators: map a balance of the neutral system back."""
        if b.reaction != self.reaction:
            raise ValueError("balance is not over the spectator system")
        coefs = b.coefficients
        n_orig_r = self.original.n_reactants
        r = self.reaction.n_reactants
        reac = coefs[:n_orig_r]
        prod_start = r
        prod = coefs[prod_start : prod_start + len(self.original.products)]
        return Balance(self.original, tuple(reac) + tuple(prod))


def spectator_transform(reaction: Reaction) -> SpectatorSystem:
    """Bind ``k`` X to each species of charge ``+k`` and ``k`` Q to charge ``-k``.

    QX is added opposite a spectator that would otherwise sit on one side
    only (products when both directions apply).
    """
    if not reaction.is_charged:
        return SpectatorSystem(reaction, reaction, "", "", None)
    taken = set(element_order(reaction.species))
    q = _fresh_symbol("Q", taken)
    x = _fresh_symbol("X", taken | {q})

    def bind(s: Species) -> Species:
        c = s.charge
        if c == 0:
            return s
        extra = (x, c) if c > 0 else (q, -c)
        comp = Composition(s.composition.elements + (extra,), 0)
        return Species(comp.formula(), comp)

    reac = [bind(s) for s in reaction.reactants]
    prod = [bind(s) for s in reaction.products]

    def has(side, sym):
        return any(sym in s.composition.symbols for s in side)

    qx_side = None
    one_sided = [(sym, has(reac, sym), has(prod, sym)) for sym in (q, x)]
    if any(r_ and not p_ for _, r_, p_ in one_sided):
        qx_side = "product"
    elif any(p_ and not r_ for _, r_, p_ in one_sided):
        qx_side = "reactant"
    if qx_side:
        qx = Composition(((q, 1), (x, 1)), 0)
        sp = Species(qx.formula(), qx)
        if qx_side == "product":
            prod.append(sp)
        else:
            reac.append(sp)
    labels = [s.label for s in reac + prod]
    if len(set(labels)) != len(labels):
        raise ValueError("spectator binding produced clashing labels")
    return SpectatorSystem(reaction, Reaction(tuple(reac), tuple(prod)), q, x, qx_side)


class HalfReactionError(ValueError):
    pass


class AmbiguousHalfReaction(HalfReactionError):
    """Step one admits several balances; ``candidates`` complete each extreme one."""

    def __init__(self, message: str, candidates: Sequence[Balance]):
        super().__init__(message)
        self.candidates = tuple(candidates)


class DegenerateCombination(HalfReactionError):
    pass


@dataclass(frozen=True)
class HalfReaction:
    reaction: Reaction
    medium: str = "acidic"

    def __post_init__(self):
        if self.medium not in ("acidic", "basic"):
            raise ValueError("medium must be 'acidic' or 'basic'")
        sides = [any(s.composition == ELECTRON for s in side) for side in (self.reaction.reactants, self.reaction.products)]
        if all(sides):
            raise HalfReactionError("electrons appear on both sides")


def _project(c: Composition) -> Composition:
    return Composition(tuple((s, n) for s, n in c.elements if s not in ("H", "O")), 0)


def _signed_to_balance(terms: dict[Composition, Fraction], labels: dict[Composition, str], order: list[Composition]) -> Balance:
    reac, prod, coefs_r, coefs_p = [], [], [], []
    for comp in order:
        a = terms.get(comp, Fraction(0))
        if a < 0:
            reac.append(Species(labels[comp], comp))
            coefs_r.append(a)
        elif a > 0:
            prod.append(Species(labels[comp], comp))
            coefs_p.append(a)
    if not reac or not prod:
        raise DegenerateCombination("result has an empty side")
    b = Balance(Reaction(tuple(reac), tuple(prod)), tuple(coefs_r + coefs_p))
    return b.canonical()


def _complete(step1: dict[Composition, Fraction], labels: dict[Composition, str], order: list[Composition], medium: str) -> Balance:
    """Steps 2-5 of the recipe starting from signed step-one coefficients."""
    terms = dict(step1)
    for extra in (WATER, PROTON, HYDROXIDE, ELECTRON):
        labels.setdefault(extra, _LABELS[extra])
        if extra not in order:
            order.append(extra)

    def add(comp, k):
        terms[comp] = terms.get(comp, Fraction(0)) + k

    def net(symbol):
        # signed total: products minus reactants
        return sum((a * c.count(symbol) for c, a in terms.items()), Fraction(0))

    # (2) oxygen with water; a surplus on the products needs water on the reactant side
    add(WATER, -net("O"))
    # (3) hydrogen with H+
    add(PROTON, -net("H"))
    # (4) basic: H+ + OH- -> H2O on the H+ side, OH- on the other
    if medium == "basic":
        k = terms.pop(PROTON, Fraction(0))
        add(HYDROXIDE, -k)
        add(WATER, k)
    # (5) charge with electrons
    charge = sum((a * c.charge for c, a in terms.items()), Fraction(0))
    add(ELECTRON, charge)
    return _signed_to_balance({c: a for c, a in terms.items() if a}, labels, order)


def _step_one(reaction: Reaction) -> tuple[list[int], list[tuple[int, ...]]]:
    """Species carrying non-H/O elements and the extreme rays of their projected balance cone."""
    idx = [i for i, s in enumerate(reaction.species) if _project(s.composition).elements]
    if not idx:
        return idx, []
    r = reaction.n_reactants
    reac = [Species(reaction.species[i].label, _project(reaction.species[i].composition)) for i in idx if i < r]
    prod = [Species(reaction.species[i].label, _project(reaction.species[i].composition)) for i in idx if i >= r]
    if not reac or not prod:
        return idx, []
    return idx, balance_cone_rays(Reaction(tuple(reac), tuple(prod)))


def step_one_realizable(reaction: Reaction) -> bool:
    """True when the non-H/O projection balances with every such species present."""
    idx, rays = _step_one(reaction)
    if not idx:
        return True
    support = set()
    for ray in rays:
        support |= {k for k, a in enumerate(ray) if a}
    return bool(rays) and len(support) == len(idx)


def balance_half_reaction(h: HalfReaction) -> Balance:
    """Balance one half-reaction with H2O, H+ (or OH-) and electrons."""
    rxn = h.reaction
    signs = [-1] * rxn.n_reactants + [1] * len(rxn.products)
    labels = {s.composition: s.label for s in rxn.species}
    order = [s.composition for s in rxn.species]
    idx, rays = _step_one(rxn)
    if idx and not step_one_realizable(rxn):
        raise HalfReactionError("step one (non-H/O elements) admits no balance with every species present")

    def start(ray: Sequence[int] | None) -> dict[Composition, Fraction]:
        pos = {i: Fraction(abs(a)) for i, a in zip(idx, ray)} if ray is not None else {}
        return {s.composition: sg * pos.get(i, Fraction(1)) for i, (s, sg) in enumerate(zip(rxn.species, signs))}

    if idx and len(rays) > 1:
        cands = [_complete(start(ray), dict(labels), list(order), h.medium) for ray in rays]
        raise AmbiguousHalfReaction(
            f"step one admits a {rank(RationalMatrix(rays, len(idx)))}-dimensional family of balances", cands
        )
    return _complete(start(rays[0] if idx else None), labels, order, h.medium)


def _electrons(b: Balance) -> Fraction:
    for s, a in zip(b.reaction.species, b.coefficients):
        if s.composition == ELECTRON:
            return a
    return Fraction(0)


def combine_half_reactions(ox: Balance, red: Balance) -> Balance:
    """Smallest positive integer combination cancelling the free electrons."""
    e1, e2 = _electrons(ox), _electrons(red)
    if e1 == 0 or e2 == 0:
        raise DegenerateCombination("a half-reaction without electrons cannot be combined")
    if (e1 > 0) == (e2 > 0):
        raise HalfReactionError("electrons appear on the same side of both half-reactions")
    a1, a2 = ox.canonical(), red.canonical()
    e1, e2 = abs(_electrons(a1)), abs(_electrons(a2))
    L = lcm(int(e1), int(e2))
    m1, m2 = L // int(e1), L // int(e2)
    terms: dict[Composition, Fraction] = {}
    labels: dict[Composition, str] = {}
    order: list[Composition] = []
    for b, m in ((a1, m1), (a2, m2)):
        for s, a in zip(b.reaction.species, b.coefficients):
            terms[s.composition] = terms.get(s.composition, Fraction(0)) + m * a
            labels.setdefault(s.composition, s.label)
            if s.composition not in order:
                order.append(s.composition)
    terms = {c: a for c, a in terms.items() if a}
    if not terms:
        raise DegenerateCombination("all coefficients cancel")
    if terms.get(ELECTRON):
        raise HalfReactionError("electrons did not cancel")
    return _signed_to_balance(terms, labels, order)


def balance_key(b: Balance) -> frozenset:
    """Order-independent identity of a canonical balance."""
    can = b.canonical()
    return frozenset((s.composition, a) for s, a in zip(can.reaction.species, can.coefficients) if a)


@dataclass(frozen=True)
class Split:
    """Two half-reactions ``(R1, P1)``, ``(R2, P2)`` given by species labels."""

    first: tuple[tuple[str, ...], tuple[str, ...]]
    second: tuple[tuple[str, ...], tuple[str, ...]]

    def halves(self, reaction: Reaction) -> tuple[Reaction, Reaction]:
        by = {s.label: s for s in reaction.species}
        return tuple(Reaction(tuple(by[l] for l in r), tuple(by[l] for l in p)) for r, p in (self.first, self.second))

    def disjoint(self, reaction: Reaction) -> bool:
        """Disjoint on the species that carry non-H/O elements."""
        heavy = {s.label for s in reaction.species if _project(s.composition).elements}
        (r1, p1), (r2, p2) = self.first, self.second
        return not (set(r1) & set(r2) & heavy) and not (set(p1) & set(p2) & heavy)


def _subsets(items: Sequence[str]) -> list[tuple[str, ...]]:
    out = []
    for k in range(1, len(items) + 1):
        out.extend(itertools.combinations(items, k))
    return out


def enumerate_half_reaction_splits(reaction: Reaction) -> list[Split]:
    """Covering splits of reactants and products into two step-one realizable halves.

    Halves are proper (neither equals the whole reaction).  If no proper
    split exists but the whole reaction is realizable, the single split
    (whole, whole) is returned.
    """
    R = [s.label for s in reaction.reactants]
    P = [s.label for s in reaction.products]
    by = {s.label: s for s in reaction.species}
    halves = []
    for r in _subsets(R):
        for p in _subsets(P):
            if len(r) == len(R) and len(p) == len(P):
                continue
            rx = Reaction(tuple(by[l] for l in r), tuple(by[l] for l in p))
            if step_one_realizable(rx):
                halves.append((r, p))
    halves.sort(key=lambda h: (len(h[0]) + len(h[1]), [R.index(x) for x in h[0]], [P.index(x) for x in h[1]]))
    splits = []
    for i, h1 in enumerate(halves):
        for h2 in halves[i + 1 :]:
            if set(h1[0]) | set(h2[0]) == set(R) and set(h1[1]) | set(h2[1]) == set(P):
                splits.append(Split(h1, h2))
    if not splits and step_one_realizable(reaction):
        whole = (tuple(R), tuple(P))
        splits.append(Split(whole, whole))
    return splits


@dataclass(frozen=True)
class ReachableBalances:
    """Balances the half-reaction method can produce, with per-split outcomes."""

    balances: tuple[Balance, ...]
    outcomes: tuple[tuple[Split, str], ...] = field(default=(), repr=False)

    def __contains__(self, b: Balance) -> bool:
        key = balance_key(b)
        return any(balance_key(x) == key for x in self.balances)

    def __len__(self):
        return len(self.balances)

    def __iter__(self):
        return iter(self.balances)


def _in_reaction_order(b: Balance, reaction: Reaction) -> Balance:
    order = [s.composition for s in reaction.species]
    order += [c for c in (WATER, PROTON, HYDROXIDE, ELECTRON) if c not in order]
    order += [s.composition for s in b.reaction.species if s.composition not in order]
    labels = {s.composition: s.label for s in b.reaction.species}
    terms = {s.composition: a for s, a in zip(b.reaction.species, b.coefficients) if a}
    return _signed_to_balance(terms, labels, [c for c in order if c in terms])


def half_reaction_reachable_balances(reaction: Reaction, medium: str = "acidic") -> ReachableBalances:
    """Run the recipe over every split and combine the halves."""
    found: dict[frozenset, Balance] = {}
    outcomes = []
    for split in enumerate_half_reaction_splits(reaction):
        h1, h2 = split.halves(reaction)
        try:
            b1 = balance_half_reaction(HalfReaction(h1, medium))
            if split.first == split.second:
                if _electrons(b1):
                    raise HalfReactionError("whole-reaction balance keeps free electrons")
                total = b1
            else:
                b2 = balance_half_reaction(HalfReaction(h2, medium))
                total = combine_half_reactions(b1, b2)
        except HalfReactionError as exc:
            outcomes.append((split, f"skipped: {exc}"))
            continue
        total = _in_reaction_order(total, reaction)
        key = balance_key(total)
        found.setdefault(key, total)
        outcomes.append((split, str(total)))
    return ReachableBalances(tuple(found.values()), tuple(outcomes))
