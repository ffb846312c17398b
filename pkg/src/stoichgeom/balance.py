"""Balancing chemical equations, algebraically and through polytopes.

A balance is a signed coefficient vector ``a`` over a reaction's species with
``M a = 0``: reactant entries are ``<= 0``, product entries ``>= 0``.  The set
of balances is the cone ``Q`` (the moduli polyhedron in species
coordinates).  The geometric side slices the reactant and product cones in
element space by ``sum x = 1`` and intersects the two resulting polytopes.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .formula import Composition, FormulaError, Reaction, Species, composition_vector, element_order
from .geometry import (
    Cone,
    GeometryError,
    Polytope,
    SliceError,
    convex_hull,
    double_description,
    intersect,
    interior_rational_point,
    rational_convex_combination,
    slice_cone,
)
from .lp import linprog
from .ratlin import (
    RationalMatrix,
    Subspace,
    column_space,
    fmt,
    nullspace,
    primitive,
    rank,
    subspace_intersection,
    to_fraction,
)

__all__ = [
    "Kind",
    "Balance",
    "BalanceClassification",
    "ReactionPolytopes",
    "ModuliPolyhedron",
    "RatioRestriction",
    "InvariantViolation",
    "species_matrix",
    "balance_cone_rays",
    "classify",
    "reaction_polytopes",
    "moduli_polyhedron",
    "balance_at",
    "canonical_balances",
    "apply_ratio_restriction",
    "mixture_decomposition",
    "unique_groupings",
]


class InvariantViolation(RuntimeError):
    """An internal cross-check between two computations failed."""


class Kind(str, enum.Enum):
    NO_BALANCE = "NoBalance"
    UNIQUE = "UniqueUpToScale"
    MULTIPLE = "Multiple"


def species_matrix(
    reaction: Reaction, order: Sequence[str] | None = None, with_charge: bool | None = None
) -> tuple[RationalMatrix, list[str]]:
    """Element-by-species matrix ``M`` and its row labels.

    A ``"charge"`` row is appended when any species is charged (or when
    ``with_charge`` forces it).
    """
    order = list(order) if order is not None else element_order(reaction.species)
    if with_charge is None:
        with_charge = reaction.is_charged
    cols = [composition_vector(s.composition, order, with_charge) for s in reaction.species]
    labels = order + (["charge"] if with_charge else [])
    return RationalMatrix.from_columns(cols, len(labels)), labels


def _signs(reaction: Reaction) -> list[int]:
    return [-1] * reaction.n_reactants + [1] * len(reaction.products)


@dataclass(frozen=True)
class Balance:
    """Signed coefficients over a reaction's species (reactants <= 0)."""

    reaction: Reaction
    coefficients: tuple[Fraction, ...]
    unique_at_point: bool = field(default=True, compare=False)

    def __post_init__(self):
        coefs = tuple(to_fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coefs)
        if len(coefs) != len(self.reaction.species):
            raise ValueError("one coefficient per species required")
        for s, c in zip(_signs(self.reaction), coefs):
            if s * c < 0:
                raise ValueError("sign convention violated: reactants <= 0, products >= 0")
        if not any(coefs):
            raise ValueError("the zero vector is not a balance")
        M, _ = species_matrix(self.reaction)
        if any(v != 0 for v in M @ list(coefs)):
            raise ValueError("coefficients do not conserve every element and charge")

    def canonical(self) -> Balance:
        """Integer coefficients with gcd 1."""
        return Balance(self.reaction, primitive(self.coefficients), self.unique_at_point)

    @property
    def integers(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.canonical().coefficients)

    @property
    def reactant_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(-c for c in self.coefficients[: self.reaction.n_reactants])

    @property
    def product_coefficients(self) -> tuple[Fraction, ...]:
        return self.coefficients[self.reaction.n_reactants :]

    def coefficient(self, label: str) -> Fraction:
        return self.coefficients[self.reaction.labels.index(label)]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(l for l, c in zip(self.reaction.labels, self.coefficients) if c)

    def __str__(self):
        can = self.canonical()
        n = self.reaction.n_reactants

        def side(species, coefs):
            terms = [(f"{int(abs(c))}" if abs(c) != 1 else "") + s.label for s, c in zip(species, coefs) if c]
            return " + ".join(terms)

        return f"{side(self.reaction.reactants, can.coefficients[:n])} = {side(self.reaction.products, can.coefficients[n:])}"

    def to_json(self) -> dict:
        can = self.canonical()
        return {
            "equation": str(self),
            "reactants": {s.label: int(-c) for s, c in zip(self.reaction.reactants, can.coefficients)},
            "products": {
                s.label: int(c) for s, c in zip(self.reaction.products, can.coefficients[self.reaction.n_reactants :])
            },
        }


def balance_cone_rays(reaction: Reaction, extra_rows: Sequence[Sequence] = ()) -> list[tuple[int, ...]]:
    """Extreme rays of the balance cone ``Q`` in species coordinates, sorted."""
    M, _ = species_matrix(reaction)
    m = M.ncols
    eqs = list(M.rows) + [tuple(to_fraction(x) for x in r) for r in extra_rows]
    ineqs = []
    for i, s in enumerate(_signs(reaction)):
        e = [0] * m
        e[i] = s
        ineqs.append(e)
    lin, rays = double_description(ineqs, eqs, m)
    if lin:
        raise InvariantViolation("balance cone has a lineality space")
    return sorted(rays)


@dataclass(frozen=True)
class ReactionPolytopes:
    """Reactant, product and intersection polytopes for one slicing hyperplane."""

    labels: tuple[str, ...]
    normal: tuple[Fraction, ...]
    offset: Fraction
    reactant: Polytope
    product: Polytope
    intersection: Polytope

    def to_json(self) -> dict:
        return {
            "coordinates": list(self.labels),
            "hyperplane": {"normal": [fmt(x) for x in self.normal], "offset": fmt(self.offset)},
            "reactant": self.reactant.to_json(),
            "product": self.product.to_json(),
            "intersection": self.intersection.to_json(),
        }


def _default_normal(labels: Sequence[str]) -> tuple[Fraction, ...]:
    return tuple(Fraction(0) if l == "charge" else Fraction(1) for l in labels)


def reaction_polytopes(
    reaction: Reaction,
    normal: Sequence | None = None,
    offset=1,
    extra_rows: Sequence[Sequence] = (),
    order: Sequence[str] | None = None,
) -> ReactionPolytopes:
    """Slice both cones by ``normal · x = offset`` (default: element coordinates sum to one).

    Raises :class:`SliceError` when some species ray misses the hyperplane.
    With ``extra_rows`` (linear restrictions over species coefficients) the
    intersection is the sliced image of the restricted balance cone.
    ``order`` fixes the element coordinates (default: first appearance).
    """
    M, labels = species_matrix(reaction, order)
    normal = tuple(to_fraction(x) for x in normal) if normal is not None else _default_normal(labels)
    cols = M.columns
    r = reaction.n_reactants
    R = slice_cone(Cone(M.nrows, tuple(primitive(c) for c in cols[:r])), normal, offset)
    P = slice_cone(Cone(M.nrows, tuple(primitive(c) for c in cols[r:])), normal, offset)
    if extra_rows:
        rays = balance_cone_rays(reaction, extra_rows)
        images = [tuple(sum((c[k] * a for c, a in zip(cols[r:], ray[r:])), Fraction(0)) for k in range(M.nrows)) for ray in rays]
        h = to_fraction(offset)
        pts = [tuple(h * x / sum(n * y for n, y in zip(normal, img)) for x in img) for img in images]
        I = convex_hull(pts) if pts else Polytope.empty(M.nrows)
    else:
        I = intersect(R, P)
    return ReactionPolytopes(tuple(labels), normal, to_fraction(offset), R, P, I)


def _support_dim(C: RationalMatrix, x: Sequence[Fraction]) -> int:
    """Dimension of ``{w >= 0 : C w = x}`` (-1 when empty)."""
    n = C.ncols
    if n == 0:
        return 0 if not any(x) else -1
    res = linprog([0] * n, A_eq=C.rows, b_eq=x)
    if res.status != "optimal":
        return -1
    support = []
    for i in range(n):
        c = [0] * n
        c[i] = -1
        r = linprog(c, A_eq=C.rows, b_eq=x)
        if r.status == "unbounded" or (r.value is not None and r.value < 0):
            support.append(i)
    sub = C.select_columns(support)
    return len(support) - (rank(sub) if support else 0)


@dataclass(frozen=True)
class BalanceClassification:
    """Dimensions describing the balances of one reactant/product grouping.

    ``moduli_dim`` is dim NS(M); ``q_dim`` the dimension of the sign-constrained
    balance cone.  ``span_intersection_dim`` is dim(span R ∩ span P) so that
    ``moduli_dim = span_intersection_dim + ker_r + ker_p`` always.  The cone
    version ``q_dim = intersection_cone_dim + fibre_r + fibre_p`` uses the
    fibres of the reactant/product weight maps over a relative-interior point.
    """

    kind: Kind
    moduli_dim: int
    q_dim: int
    ker_r: int
    ker_p: int
    span_intersection_dim: int
    intersection_cone_dim: int
    fibre_r: int
    fibre_p: int
    strict: bool
    intersection_dim: int | None
    geometric_kind: Kind | None
    geometric_note: str = ""
    rays: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @property
    def kernel_dims(self) -> tuple[int, int]:
        return self.ker_r, self.ker_p

    @property
    def identity_terms(self) -> dict[str, int]:
        return {
            "moduli_dim": self.moduli_dim,
            "span_intersection_dim": self.span_intersection_dim,
            "ker_r": self.ker_r,
            "ker_p": self.ker_p,
        }

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "moduli_dim": self.moduli_dim,
            "q_dim": self.q_dim,
            "kernel_dims": [self.ker_r, self.ker_p],
            "span_intersection_dim": self.span_intersection_dim,
            "intersection_cone_dim": self.intersection_cone_dim,
            "fibre_dims": [self.fibre_r, self.fibre_p],
            "all_species_present": self.strict,
            "intersection_dim": self.intersection_dim,
            "geometric_kind": self.geometric_kind.value if self.geometric_kind else None,
            "geometric_note": self.geometric_note,
        }


def _kind_from(q_dim: int) -> Kind:
    return Kind.NO_BALANCE if q_dim == 0 else Kind.UNIQUE if q_dim == 1 else Kind.MULTIPLE


def classify(
    reaction: Reaction,
    extra_rows: Sequence[Sequence] = (),
    normal: Sequence | None = None,
    offset=1,
    order: Sequence[str] | None = None,
) -> BalanceClassification:
    """Classify balances algebraically and (when a slice exists) geometrically.

    Both dimension identities are checked, and the geometric kind must agree
    with the algebraic one; a mismatch raises :class:`InvariantViolation`.
    """
    M, labels = species_matrix(reaction, order)
    r = reaction.n_reactants
    extra = [tuple(to_fraction(x) for x in row) for row in extra_rows]
    full = RationalMatrix(list(M.rows) + extra, M.ncols)
    Cr = M.select_columns(range(r))
    Cp = M.select_columns(range(r, M.ncols))
    moduli_dim = nullspace(full).dim
    rays = balance_cone_rays(reaction, extra)
    q_dim = rank(RationalMatrix(rays, M.ncols)) if rays else 0
    # linear identity in element space (restriction rows act on species space, so use NS directly)
    if extra:
        ns = nullspace(full)
        ker_r = subspace_intersection(ns, Subspace.span(_unit_rows(M.ncols, range(r)), M.ncols)).dim
        ker_p = subspace_intersection(ns, Subspace.span(_unit_rows(M.ncols, range(r, M.ncols)), M.ncols)).dim
        span_int = moduli_dim - ker_r - ker_p
    else:
        ker_r = r - rank(Cr)
        ker_p = Cp.ncols - rank(Cp)
        span_int = subspace_intersection(column_space(Cr), column_space(Cp)).dim
        if moduli_dim != span_int + ker_r + ker_p:
            raise InvariantViolation("linear dimension identity failed")
    images = [tuple(Cp @ list(ray[r:])) for ray in rays]
    cone_dim = rank(RationalMatrix(images, M.nrows)) if images else 0
    support = set()
    for ray in rays:
        support |= {i for i, a in enumerate(ray) if a}
    strict = len(support) == M.ncols
    if rays:
        center = [sum(col, Fraction(0)) for col in zip(*rays)]
        x = Cp @ center[r:]
        if extra:
            # restricted fibres: weights must also satisfy the extra rows
            fibre = _restricted_fibre_dims(M, extra, r, x)
            fibre_r, fibre_p = fibre
        else:
            fibre_r = _support_dim(Cr, x)
            fibre_p = _support_dim(Cp, x)
    else:
        fibre_r = fibre_p = 0
    if rays and q_dim != cone_dim + fibre_r + fibre_p:
        raise InvariantViolation("cone dimension identity failed")
    kind = _kind_from(q_dim)

    geometric_kind: Kind | None = None
    intersection_dim: int | None = None
    note = ""
    try:
        polys = reaction_polytopes(reaction, normal, offset, extra, order)
    except (SliceError, GeometryError) as exc:
        note = f"no valid slice: {exc}"
    else:
        I = polys.intersection
        intersection_dim = I.dim
        if I.is_empty:
            geometric_kind = Kind.NO_BALANCE
        else:
            p = interior_rational_point(I)
            g_r, g_p = _geometric_fibres(M, r, polys, p, extra)
            geometric_kind = Kind.UNIQUE if I.dim == 0 and g_r == 0 and g_p == 0 else Kind.MULTIPLE
            if I.dim + 1 + g_r + g_p != q_dim:
                raise InvariantViolation("geometric dimensions disagree with the balance cone")
        if intersection_dim + 1 != cone_dim:
            raise InvariantViolation("intersection polytope and intersection cone dimensions disagree")
        if geometric_kind != kind:
            raise InvariantViolation(f"algebraic kind {kind.value} but geometric kind {geometric_kind.value}")
    return BalanceClassification(
        kind=kind,
        moduli_dim=moduli_dim,
        q_dim=q_dim,
        ker_r=ker_r,
        ker_p=ker_p,
        span_intersection_dim=span_int,
        intersection_cone_dim=cone_dim,
        fibre_r=fibre_r,
        fibre_p=fibre_p,
        strict=strict,
        intersection_dim=intersection_dim,
        geometric_kind=geometric_kind,
        geometric_note=note,
        rays=tuple(rays),
    )


def _unit_rows(n: int, idx) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in idx]


def _restricted_fibre_dims(M: RationalMatrix, extra, r: int, x) -> tuple[int, int]:
    # weights on each side must satisfy the restriction rows restricted to that side
    n = M.ncols
    out = []
    for idx in (range(r), range(r, n)):
        idx = list(idx)
        C = M.select_columns(idx)
        rows = list(C.rows) + [[row[i] for i in idx] for row in extra]
        rhs = list(x) + [Fraction(0)] * len(extra)
        out.append(_support_dim(RationalMatrix(rows, len(idx)), rhs))
    return out[0], out[1]


def _geometric_fibres(M: RationalMatrix, r: int, polys: ReactionPolytopes, p, extra) -> tuple[int, int]:
    """Dimensions of the barycentric-weight polytopes over ``p`` on each side."""
    dims = []
    for idx in (range(r), range(r, M.ncols)):
        idx = list(idx)
        gens = [M.columns[i] for i in idx]
        scale = [sum(n * g for n, g in zip(polys.normal, col)) / polys.offset for col in gens]
        pts = [tuple(g / s for g in col) for col, s in zip(gens, scale)]
        k = len(pts)
        hs = [(tuple(-int(i == j) for j in range(k)), 0) for i in range(k)]
        eqs = [(tuple(pt[d] for pt in pts), p[d]) for d in range(len(p))]
        eqs.append((tuple([1] * k), 1))
        for row in extra:
            # restriction rows act on species coefficients = weight / scale
            eqs.append((tuple(row[i] / s for i, s in zip(idx, scale)), 0))
        F = Polytope.from_constraints(hs, eqs, k)
        dims.append(F.dim)
    return dims[0], dims[1]


@dataclass(frozen=True)
class ModuliPolyhedron:
    """``Q`` in nullspace coordinates: ``sign_i (B c)_i >= 0`` for each species."""

    basis: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]
    signs: tuple[int, ...]

    @property
    def cone(self) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        """``(lineality, extreme_rays)`` of Q in c-coordinates."""
        return double_description(self.inequalities, (), len(self.basis))

    @property
    def dim(self) -> int:
        lin, rays = self.cone
        vecs = list(lin) + list(rays)
        return rank(RationalMatrix(vecs, len(self.basis))) if vecs else 0

    def describe(self) -> list[str]:
        """One line ``expr <= 0`` / ``expr >= 0`` per species (reactants written with <=)."""
        out = []
        for label, g, s in zip(self.labels, self.inequalities, self.signs):
            expr = _linear_expr([s * x for x in g])
            out.append(f"{expr} {'<=' if s < 0 else '>='} 0    ({label})")
        return out

    def to_json(self) -> dict:
        return {
            "basis": [[fmt(x) for x in b] for b in self.basis],
            "inequalities": [[fmt(x) for x in g] for g in self.inequalities],
            "species": list(self.labels),
        }


def _linear_expr(coefs: Sequence[Fraction]) -> str:
    terms = []
    for j, c in enumerate(coefs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = ("" if mag == 1 else fmt(mag)) + f"c{j}"
        terms.append(("-" if c < 0 else "+") + body)
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[1:] if s.startswith("+") else s


def moduli_polyhedron(reaction: Reaction, basis: Sequence[Sequence] | None = None) -> ModuliPolyhedron:
    """Inequality system for ``Q`` over coefficients of a nullspace basis.

    A supplied ``basis`` must be a basis of NS(M).
    """
    M, _ = species_matrix(reaction)
    ns = nullspace(M)
    if ns.dim == 0:
        raise ValueError("the species matrix has a zero nullspace; no balancing exists")
    if basis is None:
        B = [tuple(Fraction(x) for x in b) for b in ns.integer_basis()]
    else:
        B = [tuple(to_fraction(x) for x in b) for b in basis]
        if len(B) != ns.dim or Subspace.span(B, M.ncols) != ns:
            raise ValueError("supplied vectors are not a basis of NS(M)")
    signs = _signs(reaction)
    ineqs = tuple(tuple(s * b[i] for b in B) for i, s in enumerate(signs))
    return ModuliPolyhedron(tuple(B), ineqs, tuple(reaction.labels), tuple(signs))


def balance_at(
    reaction: Reaction,
    point: Sequence,
    normal: Sequence | None = None,
    offset=1,
    order: Sequence[str] | None = None,
) -> Balance:
    """Balance encoded by a rational point of the intersection polytope.

    Weights on each side come from :func:`rational_convex_combination`; when
    the side's generators are affinely dependent the result is one
    representative and ``unique_at_point`` is False.
    """
    polys = reaction_polytopes(reaction, normal, offset, order=order)
    point = tuple(to_fraction(x) for x in point)
    if polys.intersection.contains(point).value == "outside":
        raise GeometryError("point lies outside the intersection polytope")
    M, _ = species_matrix(reaction, order)
    r = reaction.n_reactants
    coefs = []
    unique = True
    for idx, sign in ((range(r), -1), (range(r, M.ncols), 1)):
        cols = [M.columns[i] for i in idx]
        scale = [sum(n * g for n, g in zip(polys.normal, col)) / polys.offset for col in cols]
        pts = [tuple(g / s for g in col) for col, s in zip(cols, scale)]
        w = rational_convex_combination(point, pts)
        coefs.extend(sign * wi / s for wi, s in zip(w, scale))
        if rank(RationalMatrix([(1,) + p for p in pts], len(point) + 1)) < len(pts):
            unique = False
    return Balance(reaction, tuple(coefs), unique)


def canonical_balances(reaction: Reaction) -> list[Balance]:
    """Extreme balances (generators of ``Q``) in canonical integer form."""
    return [Balance(reaction, ray) for ray in balance_cone_rays(reaction)]


@dataclass(frozen=True)
class RatioRestriction:
    """A reactant/product ratio restriction computed two ways.

    ``lumped`` replaces the restricted species by one combined species
    (vertex replacement); ``rows`` are the extra linear conditions on the
    original coefficients (row augmentation).
    """

    original: Reaction
    lumped: Reaction
    rows: tuple[tuple[Fraction, ...], ...]
    replaced: BalanceClassification
    augmented: BalanceClassification

    @property
    def intersection_dim(self) -> int | None:
        return self.replaced.intersection_dim


def apply_ratio_restriction(
    reaction: Reaction, side: str, labels: Sequence[str], ratio: Sequence
) -> RatioRestriction:
    """Impose ``labels[0] : labels[1] : ... = ratio`` on one side of ``reaction``."""
    if side not in ("reactant", "product"):
        raise ValueError("side must be 'reactant' or 'product'")
    labels = list(labels)
    ratio = [to_fraction(x) for x in ratio]
    if len(labels) != len(ratio) or not labels:
        raise ValueError("one ratio entry per species required")
    if any(x <= 0 for x in ratio):
        raise ValueError("ratio entries must be positive")
    group = reaction.reactants if side == "reactant" else reaction.products
    by_label = {s.label: s for s in group}
    missing = [l for l in labels if l not in by_label]
    if missing:
        raise ValueError(f"species {missing} not on the {side} side")
    if len(set(labels)) != len(labels):
        raise ValueError("repeated species in restriction")
    ints = primitive(ratio)
    combined = Composition((), 0)
    for l, k in zip(labels, ints):
        combined = combined + by_label[l].composition.scaled(k)
    lump_label = "(" + " + ".join(f"{k}{l}" if k != 1 else l for l, k in zip(labels, ints)) + ")"
    lump = Species(lump_label, combined)
    new_group = []
    placed = False
    for s in group:
        if s.label in labels:
            if not placed:
                new_group.append(lump)
                placed = True
        else:
            new_group.append(s)
    if side == "reactant":
        lumped = Reaction(tuple(new_group), reaction.products)
    else:
        lumped = Reaction(reaction.reactants, tuple(new_group))
    idx = [reaction.labels.index(l) for l in labels]
    rows = []
    for (i, ri), (j, rj) in zip(zip(idx, ratio), list(zip(idx, ratio))[1:]):
        row = [Fraction(0)] * len(reaction.species)
        row[i] = rj
        row[j] = -ri
        rows.append(tuple(row))
    replaced = classify(lumped)
    augmented = classify(reaction, rows)
    if replaced.intersection_dim != augmented.intersection_dim or replaced.kind != augmented.kind:
        raise InvariantViolation("vertex replacement and row augmentation disagree")
    return RatioRestriction(reaction, lumped, tuple(rows), replaced, augmented)


def mixture_decomposition(b: Balance) -> list[tuple[Balance, Fraction]]:
    """Write ``b`` as a positive combination of uniquely balanced sub-reactions.

    Components are extreme balances of the reaction restricted to the support
    of ``b``; each lives on a subset of the original reactants and products.
    """
    reaction = b.reaction
    keep = [i for i, c in enumerate(b.coefficients) if c]
    r = reaction.n_reactants
    sub = Reaction(
        tuple(reaction.species[i] for i in keep if i < r),
        tuple(reaction.species[i] for i in keep if i >= r),
    )
    rays = balance_cone_rays(sub)
    target = [b.coefficients[i] for i in keep]
    A = [[ray[k] for ray in rays] for k in range(len(keep))]
    res = linprog([0] * len(rays), A_eq=A, b_eq=target)
    if res.status != "optimal":
        raise InvariantViolation("balance is not in the cone of its extreme balances")
    out = []
    for ray, w in zip(rays, res.x):
        if w == 0:
            continue
        full = [Fraction(0)] * len(reaction.species)
        for k, i in enumerate(keep):
            full[i] = Fraction(ray[k])
        comp_rxn = Reaction(
            tuple(s for s, a in zip(reaction.reactants, full[:r]) if a),
            tuple(s for s, a in zip(reaction.products, full[r:]) if a),
        )
        comp = Balance(comp_rxn, tuple(a for a in full if a))
        out.append((comp, w, tuple(full)))
    total = [sum((w * f[i] for _, w, f in out), Fraction(0)) for i in range(len(reaction.species))]
    if tuple(total) != b.coefficients:
        raise InvariantViolation("mixture does not recombine to the balance")
    return [(c, w) for c, w, _ in out]


def unique_groupings(species: Sequence[Species]) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Unordered groupings {R, P} of the species admitting a unique balance with every member present."""
    found = []
    labels = [s.label for s in species]
    n = len(species)
    for mask in itertools.product((0, 1, 2), repeat=n):
        R = [species[i] for i in range(n) if mask[i] == 1]
        P = [species[i] for i in range(n) if mask[i] == 2]
        if not R or not P:
            continue
        key = frozenset([tuple(s.label for s in R), tuple(s.label for s in P)])
        rxn = Reaction(tuple(R), tuple(P))
        rays = balance_cone_rays(rxn)
        if len(rays) == 1 and all(rays[0]) and key not in [frozenset(f) for f in found]:
            found.append((tuple(s.label for s in R), tuple(s.label for s in P)))
    order = {l: i for i, l in enumerate(labels)}
    return sorted(found, key=lambda g: ([order[x] for x in g[0]], [order[x] for x in g[1]]))
