"""Reaction mechanisms: conservation spaces, consistency, representations,
the inverse subspace calculus and intermediate precedence.

A mechanism is an integer matrix ``N`` with one row per species and one column
per elementary step (negative entries are consumed).  Species split into
known ones ``K`` and intermediates ``U``.  Overall reactions given over ``K``
only are zero-padded on ``U``: a completed reaction leaves no intermediate.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

from .geometry import Cone, Polytope
from .lattice import integer_points, lattice_points
from .lp import linprog
from .ratlin import (
    RationalMatrix,
    Subspace,
    fmt,
    nullspace,
    orthogonal_complement,
    orthogonal_projection,
    primitive,
    project,
    project_onto,
    quotient_dim,
    row_space,
    solve_affine,
    subspace_intersection,
    subspace_sum,
    to_fraction,
)

__all__ = [
    "MechanismError",
    "InfiniteRepresentations",
    "Mechanism",
    "ConservationReport",
    "conservation_report",
    "homology_space",
    "bounded_region",
    "consistent_reactions",
    "finiteness_test",
    "algebraic_representations",
    "InverseReport",
    "inverse_mechanism_spaces",
    "candidate_n_space",
    "homology_cross_check",
    "PrecedenceReport",
    "precedence_analysis",
    "order_realizable",
    "CandidateReactions",
    "candidate_elementary_reactions",
]

IntVec = tuple[int, ...]
KNOWN = "K"


class MechanismError(ValueError):
    pass


class InfiniteRepresentations(MechanismError):
    def __init__(self, message: str, witness: IntVec):
        super().__init__(message)
        self.witness = witness


def _index_set(items: Sequence, species: Sequence[str]) -> tuple[int, ...]:
    out = []
    for it in items:
        if isinstance(it, int):
            if not 0 <= it < len(species):
                raise MechanismError(f"species index {it} out of range")
            out.append(it)
        elif it in species:
            out.append(species.index(it))
        else:
            raise MechanismError(f"unknown species {it!r}")
    return tuple(sorted(out))


@dataclass(frozen=True)
class Mechanism:
    species: tuple[str, ...]
    known: tuple[int, ...]
    intermediates: tuple[int, ...]
    N: RationalMatrix

    def __post_init__(self):
        s = len(self.species)
        if len(set(self.species)) != s:
            raise MechanismError("species labels must be distinct")
        if set(self.known) & set(self.intermediates):
            raise MechanismError("known species and intermediates overlap")
        if set(self.known) | set(self.intermediates) != set(range(s)):
            raise MechanismError("known species and intermediates must cover every species")
        if self.N.nrows != s:
            raise MechanismError(f"N has {self.N.nrows} rows but there are {s} species")
        for j, col in enumerate(self.N.columns):
            if any(x.denominator != 1 for x in col):
                raise MechanismError(f"step {j + 1} has non-integer entries")
            if not (any(x < 0 for x in col) and any(x > 0 for x in col)):
                raise MechanismError(f"step {j + 1} needs both consumed and produced species")

    @classmethod
    def build(
        cls,
        species: Sequence[str],
        N: Sequence[Sequence],
        known: Sequence | None = None,
        intermediates: Sequence = (),
    ) -> Mechanism:
        species = tuple(species)
        U = _index_set(intermediates, species)
        K = _index_set(known, species) if known is not None else tuple(i for i in range(len(species)) if i not in U)
        return cls(species, K, U, RationalMatrix(N))

    @classmethod
    def from_json(cls, obj: dict | str) -> Mechanism:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls.build(obj["species"], obj["N"], obj.get("known"), obj.get("intermediates", ()))
        except KeyError as e:
            raise MechanismError(f"mechanism JSON lacks key {e}") from None

    def to_json(self) -> dict:
        return {
            "species": list(self.species),
            "known": [self.species[i] for i in self.known],
            "intermediates": [self.species[i] for i in self.intermediates],
            "N": [[int(x) for x in r] for r in self.N.rows],
        }

    @property
    def n_steps(self) -> int:
        return self.N.ncols

    @cached_property
    def columns(self) -> tuple[IntVec, ...]:
        return tuple(tuple(int(x) for x in c) for c in self.N.columns)

    def pad(self, c: Sequence) -> tuple[Fraction, ...]:
        """Species vector from a full vector or one over the known species."""
        c = [to_fraction(x) for x in c]
        if len(c) == len(self.species):
            return tuple(c)
        if len(c) == len(self.known):
            full = [Fraction(0)] * len(self.species)
            for i, v in zip(self.known, c):
                full[i] = v
            return tuple(full)
        raise MechanismError(
            f"vector has {len(c)} entries; expected {len(self.species)} (all species) or {len(self.known)} (known)"
        )

    def equation(self, v: Sequence) -> str:
        """Render a species vector as ``reactants = products``."""
        def side(terms):
            return " + ".join((fmt(k) if k != 1 else "") + self.species[i] for i, k in terms) or "0"

        v = [to_fraction(x) for x in v]
        lhs = [(i, -x) for i, x in enumerate(v) if x < 0]
        rhs = [(i, x) for i, x in enumerate(v) if x > 0]
        return f"{side(lhs)} = {side(rhs)}"

    def step(self, j: int) -> str:
        return self.equation(self.columns[j])


# -- conservation ------------------------------------------------------------


@dataclass(frozen=True)
class ConservationReport:
    mass_space: Subspace
    element_space: Subspace | None
    homology_dim: int | None
    observed_space: Subspace
    conservative: bool
    positive_witness: IntVec | None

    def to_json(self) -> dict:
        return {
            "mass_space": self.mass_space.to_json(),
            "element_space": self.element_space.to_json() if self.element_space else None,
            "homology_dim": self.homology_dim,
            "observed_space": self.observed_space.to_json(),
            "conservative": self.conservative,
            "positive_witness": list(self.positive_witness) if self.positive_witness else None,
        }


def _check_elements(mech: Mechanism, M) -> RationalMatrix:
    M = M if isinstance(M, RationalMatrix) else RationalMatrix(M)
    if M.ncols != len(mech.species):
        raise MechanismError(f"elemental matrix has {M.ncols} columns but there are {len(mech.species)} species")
    if not (M @ mech.N).is_zero():
        raise MechanismError("M·N is not zero: some elementary step is unbalanced")
    return M


def conservation_report(mech: Mechanism, M=None) -> ConservationReport:
    NT = mech.N.T
    mass = nullspace(NT)
    s = len(mech.species)
    # a strictly positive y with N^T y = 0 exists iff y >= 1 is feasible (scale)
    res = linprog([1] * s, [[-int(i == j) for j in range(s)] for i in range(s)], [-1] * s, NT.rows, [0] * NT.nrows)
    witness = primitive(res.x) if res.status == "optimal" else None
    elements = homology = None
    if M is not None:
        M = _check_elements(mech, M)
        elements = row_space(M)
        if not mass.contains_subspace(elements):
            raise MechanismError("element space is not inside the mass-conservation space")
        homology = nullspace(M).dim - mech.N.rank()
    return ConservationReport(mass, elements, homology, project(mass, mech.known), witness is not None, witness)


def homology_space(mech: Mechanism, M) -> Subspace:
    """``ker M ∩ (im N)^⊥``, the complement of im N inside ker M."""
    M = _check_elements(mech, M)
    return subspace_intersection(nullspace(M), nullspace(mech.N.T))


# -- consistent overall reactions ------------------------------------------


def bounded_region(mech: Mechanism, t: int, known_only: bool = False) -> Polytope:
    """``cone(N) ∩ {Σ|z_i| <= t}``, optionally intersected with the known span."""
    s = len(mech.species)
    C = Cone(s, mech.columns)
    ineqs, eqs = C.h_rep
    hs = [(tuple(-a for a in n), 0) for n in ineqs]
    es = [(e, 0) for e in eqs]
    if known_only:
        es += [(tuple(int(i == u) for i in range(s)), 0) for u in mech.intermediates]
    # l1 ball as the signed-sum facets; only sign patterns on the support matter
    free = [i for i in range(s) if not (known_only and i in mech.intermediates)]
    for mask in range(1 << len(free)):
        n = [0] * s
        for k, i in enumerate(free):
            n[i] = -1 if mask >> k & 1 else 1
        hs.append((tuple(n), t))
    return Polytope.from_constraints(hs, es, s)


def _in_cone(mech: Mechanism, c: Sequence) -> bool:
    n = mech.n_steps
    return linprog([0] * n, A_eq=mech.N.rows, b_eq=list(c)).status == "optimal"


def consistent_reactions(
    mech: Mechanism,
    t: int,
    known_only: bool = False,
    include_origin: bool = True,
    projective: bool = False,
) -> list[IntVec]:
    """Integer points of the bounded consistency region at size ``t``.

    By default every lattice point of ``cone(N) ∩ {Σ|z| <= t}`` is returned,
    the origin included and dilations kept.  ``known_only`` restricts to
    vectors vanishing on intermediates; ``projective`` keeps one primitive
    representative per ray (and drops the origin).
    """
    if t < 0:
        raise MechanismError("t must be non-negative")
    P = bounded_region(mech, t, known_only)
    pts = [p for p in lattice_points(P) if include_origin or any(p)]
    for p in pts:
        if not _in_cone(mech, p):
            raise AssertionError(f"enumerated point {p} fails the exact cone membership test")
    if projective:
        pts = sorted({primitive(p) for p in pts if any(p)})
    return pts


# -- algebraic representations ---------------------------------------------


def finiteness_test(mech: Mechanism) -> tuple[bool, IntVec | None]:
    """``(finite, witness)``: finite iff 0 is outside the hull of N's columns.

    When not finite, the witness is a non-negative integer kernel vector of N.
    """
    n = mech.n_steps
    res = linprog([0] * n, A_eq=list(mech.N.rows) + [[1] * n], b_eq=[0] * mech.N.nrows + [1])
    if res.status == "optimal":
        return False, primitive(res.x)
    return True, None


def algebraic_representations(mech: Mechanism, c: Sequence, step_bound: int | None = None) -> list[IntVec]:
    """All ``x >= 0`` integral with ``N x = c`` (and ``Σx <= step_bound`` if given)."""
    target = mech.pad(c)
    if any(v.denominator != 1 for v in target):
        raise MechanismError("overall reaction must have integer coefficients")
    n = mech.n_steps
    if step_bound is None:
        finite, witness = finiteness_test(mech)
        if not finite:
            raise InfiniteRepresentations(
                "0 lies in the convex hull of the columns of N, so representations are unbounded; pass a step bound",
                witness,
            )
    hs = [(tuple(-int(i == j) for i in range(n)), 0) for j in range(n)]
    if step_bound is not None:
        hs.append(((1,) * n, step_bound))
    es = [(row, v) for row, v in zip(mech.N.rows, target)]
    sols = integer_points(hs, es, n)
    for x in sols:
        if mech.N @ x != target:
            raise AssertionError("enumerated representation does not reproduce c")
    return sols


# -- inverse problem ---------------------------------------------------------


@dataclass(frozen=True)
class InverseReport:
    species: tuple[str, ...]
    known: tuple[int, ...]
    intermediates: tuple[int, ...]
    M: RationalMatrix
    observed: Subspace
    ns_M: Subspace
    rs_M: Subspace
    pi_K_ns: Subspace
    pi_K_rs: Subspace
    pi_U_rs: Subspace
    ambiguity: Subspace
    Z: Subspace
    proj_Z_O: Subspace
    ns_M_U: Subspace
    H: Subspace | None

    @property
    def quotient_dim(self) -> int:
        """dim of O modulo π_K RS(M), equal to dim proj_Z O."""
        return quotient_dim(self.observed, self.pi_K_rs)

    @property
    def injective(self) -> bool:
        return self.ns_M_U.dim == 0

    def table(self) -> dict[str, int]:
        return {
            "NS(M)": self.ns_M.dim,
            "RS(M)": self.rs_M.dim,
            "K": len(self.known),
            "pi_K NS(M)": self.pi_K_ns.dim,
            "pi_K RS(M)": self.pi_K_rs.dim,
            "pi_K NS(M) ∩ pi_K RS(M)": self.ambiguity.dim,
            "O": self.observed.dim,
            "O/pi_K RS(M)": self.quotient_dim,
            "pi_U RS(M)": self.pi_U_rs.dim,
        }

    def lift(self, w: Sequence) -> Subspace:
        """Span of the preimages of ``w`` in NS(M): one lift plus ``i_U NS(M_U)``."""
        return _lift(self, w)

    def to_json(self) -> dict:
        return {
            "table": self.table(),
            "proj_Z_O": self.proj_Z_O.to_json(),
            "ambiguity": self.ambiguity.to_json(),
            "ns_M_U": self.ns_M_U.to_json(),
            "injective": self.injective,
            "H": self.H.to_json() if self.H is not None else None,
        }


def _particular_lift(rep: InverseReport, w: Sequence) -> tuple[Fraction, ...]:
    B = rep.ns_M.basis
    if not B:
        if any(to_fraction(x) != 0 for x in w):
            raise MechanismError("cannot lift a non-zero vector: NS(M) is zero")
        return (Fraction(0),) * len(rep.species)
    A = RationalMatrix([[b[i] for b in B] for i in rep.known], len(B))
    sol = solve_affine(A, list(w))
    if not sol.feasible:
        raise MechanismError("vector does not lift to NS(M): the observations are inconsistent with M")
    return tuple(sum((a * b[k] for a, b in zip(sol.particular, B)), Fraction(0)) for k in range(len(rep.species)))


def _lift(rep: InverseReport, w: Sequence) -> Subspace:
    p = _particular_lift(rep, w)
    return subspace_sum(Subspace.span([p], len(rep.species)), rep.ns_M_U)


def _embed(vectors: Sequence[Sequence], idx: Sequence[int], n: int) -> list[tuple[Fraction, ...]]:
    out = []
    for v in vectors:
        full = [Fraction(0)] * n
        for i, x in zip(idx, v):
            full[i] = to_fraction(x)
        out.append(tuple(full))
    return out


def inverse_mechanism_spaces(
    species: Sequence[str],
    known: Sequence,
    intermediates: Sequence,
    M,
    observed: Subspace | Sequence[Sequence],
    assume_complete: bool = True,
) -> InverseReport:
    """Subspace data for mechanisms compatible with observed dependencies ``O``.

    ``observed`` lives in the known-species coordinates (vectors over all
    species are accepted when they vanish on intermediates).  With
    ``assume_complete`` the homology is fixed by ``π_K H = proj_Z O`` and
    lifted into NS(M); ``H`` includes ``i_U NS(M_U)``.
    """
    species = tuple(species)
    s = len(species)
    U = _index_set(intermediates, species)
    K = _index_set(known, species) if known is not None else tuple(i for i in range(s) if i not in U)
    if set(K) & set(U) or set(K) | set(U) != set(range(s)):
        raise MechanismError("known species and intermediates must partition the species")
    M = M if isinstance(M, RationalMatrix) else RationalMatrix(M)
    if M.ncols != s:
        raise MechanismError(f"elemental matrix has {M.ncols} columns but there are {s} species")
    if isinstance(observed, Subspace):
        O = observed
        if O.ambient_dim == s and s != len(K):
            O = _restrict_observed(O.basis, K, U, s)
    else:
        vecs = [tuple(to_fraction(x) for x in v) for v in observed]
        O = _restrict_observed(vecs, K, U, s) if vecs and len(vecs[0]) == s and s != len(K) else Subspace.span(vecs, len(K))
    if O.ambient_dim != len(K):
        raise MechanismError("observed dependencies must live on the known species")
    ns, rs = nullspace(M), row_space(M)
    pk_ns, pk_rs = project(ns, K), project(rs, K)
    Z = orthogonal_complement(pk_rs)
    proj = project_onto(O, Z)
    rep = InverseReport(
        species,
        K,
        U,
        M,
        O,
        ns,
        rs,
        pk_ns,
        pk_rs,
        project(rs, U),
        subspace_intersection(pk_ns, pk_rs),
        Z,
        proj,
        Subspace.span(_embed(nullspace(M.select_columns(U)).basis, U, s), s) if U else Subspace.zero(s),
        None,
    )
    if not assume_complete:
        return rep
    H = rep.ns_M_U
    for w in proj.basis:
        H = subspace_sum(H, _lift(rep, w))
    return replace(rep, H=H)


def _restrict_observed(vectors, K, U, s) -> Subspace:
    for v in vectors:
        if any(to_fraction(v[u]) != 0 for u in U):
            raise MechanismError("observed dependency has a non-zero intermediate entry")
    return Subspace.span([[v[k] for k in K] for v in vectors], len(K))


def candidate_n_space(rep: InverseReport, extra: Sequence[Sequence] = ()) -> Subspace:
    """``(H' + RS(M))^⊥`` with ``H' = H + lifts of extra``.

    ``extra`` are vectors of the ambiguity space (known coordinates) chosen to
    enlarge the homology.
    """
    if rep.H is None:
        raise MechanismError("candidate spaces need the assume_complete homology")
    H = rep.H
    for w in extra:
        if not rep.ambiguity.contains(w):
            raise MechanismError("extra vector is not in π_K NS(M) ∩ π_K RS(M)")
        H = subspace_sum(H, _lift(rep, w))
    return orthogonal_complement(subspace_sum(H, rep.rs_M))


def homology_cross_check(rep: InverseReport, mech: Mechanism) -> tuple[tuple[Fraction, ...], bool]:
    """Compare a given mechanism's homology with the observed-space prediction.

    For the (one-dimensional) homology ``h`` of ``mech``, returns the
    difference ``π_K h - proj_Z π_K h`` and whether it lies in the ambiguity
    space while ``proj_Z π_K h`` lies in ``proj_Z O``.
    """
    H = homology_space(mech, rep.M)
    if H.dim != 1:
        raise MechanismError(f"cross-check needs a one-dimensional homology, got {H.dim}")
    h = H.basis[0]
    hk = tuple(h[i] for i in rep.known)
    pz = orthogonal_projection(hk, rep.Z)
    diff = tuple(a - b for a, b in zip(hk, pz))
    return diff, rep.ambiguity.contains(diff) and rep.proj_Z_O.contains(pz)


# -- precedence ----------------------------------------------------------------


@dataclass(frozen=True)
class PrecedenceReport:
    reactant_simplex: tuple[frozenset[str], ...]
    product_simplex: tuple[frozenset[str], ...]
    iterates: tuple[frozenset[str], ...]  # vertex sets of φ^1, φ^2, ... until stable
    level: tuple[int | None, ...]  # first i with step in R^{-1}(φ^i); None if it never occurs

    @property
    def levels(self) -> list[list[int]]:
        top = max((l for l in self.level if l is not None), default=0)
        return [[j for j, l in enumerate(self.level) if l == i] for i in range(1, top + 1)]

    @property
    def unreachable(self) -> list[int]:
        return [j for j, l in enumerate(self.level) if l is None]

    def reachable_sets(self) -> list[frozenset[int]]:
        """The sets ``R^{-1}(φ^i)`` for i = 1, 2, ..."""
        return [frozenset(j for j, l in enumerate(self.level) if l is not None and l <= i) for i in range(1, len(self.iterates) + 1)]

    def to_json(self) -> dict:
        return {
            "steps": [
                {"step": j + 1, "R": sorted(r), "P": sorted(p), "level": l}
                for j, (r, p, l) in enumerate(zip(self.reactant_simplex, self.product_simplex, self.level))
            ],
            "iterates": [sorted(v) for v in self.iterates],
        }


def precedence_analysis(mech: Mechanism) -> PrecedenceReport:
    """Iterate ``φ(Y) = Y ∪ P(R^{-1}(Y))`` from ``{K}`` until it stabilises."""
    def simplex(col, sign):
        verts = set()
        for i, x in enumerate(col):
            if x * sign > 0:
                verts.add(KNOWN if i in mech.known else mech.species[i])
        return frozenset(verts)

    R = tuple(simplex(c, -1) for c in mech.columns)
    P = tuple(simplex(c, 1) for c in mech.columns)
    level: list[int | None] = [None] * mech.n_steps
    Y = frozenset({KNOWN})
    iterates = [Y]
    i = 1
    while True:
        fired = [j for j in range(mech.n_steps) if R[j] <= Y]
        for j in fired:
            if level[j] is None:
                level[j] = i
        nxt = Y.union(*(P[j] for j in fired))
        if nxt == Y:
            break
        Y = nxt
        iterates.append(Y)
        i += 1
    if len(iterates) > len(mech.intermediates) + 1:
        raise AssertionError("φ iteration did not stabilise within #intermediates + 1 steps")
    return PrecedenceReport(R, P, tuple(iterates), tuple(level))


def order_realizable(mech: Mechanism, x: Sequence[int], report: PrecedenceReport | None = None) -> bool:
    """True iff the support of ``x`` equals some ``R^{-1}(φ^i)``."""
    report = report or precedence_analysis(mech)
    support = frozenset(j for j, v in enumerate(x) if v != 0)
    return support in report.reachable_sets()


# -- candidate elementary reactions ----------------------------------------


@dataclass(frozen=True)
class CandidateReactions:
    vectors: tuple[IntVec, ...]  # every non-zero box point with both signs
    up_to_sign: tuple[IntVec, ...]
    lines: tuple[IntVec, ...]

    def to_json(self) -> dict:
        return {"count": len(self.vectors), "up_to_sign": len(self.up_to_sign), "lines": [list(v) for v in self.lines]}


def _sign_rep(v: IntVec) -> IntVec:
    neg = tuple(-x for x in v)
    return max(v, neg)


def candidate_elementary_reactions(space: Subspace, b: int = 3) -> CandidateReactions:
    """Integer points of ``space ∩ [-b, b]^s`` having both signs.

    A point of the subspace is fixed by its entries at the RREF pivots, and
    those entries lie in ``[-b, b]``, so the box is scanned on the pivots only.
    """
    if b < 1:
        raise MechanismError("box bound must be at least 1")
    if space.dim == 0:
        return CandidateReactions((), (), ())
    s = space.ambient_dim
    vecs = []
    for coeffs in itertools.product(range(-b, b + 1), repeat=space.dim):
        x = [sum((c * v[k] for c, v in zip(coeffs, space.basis)), Fraction(0)) for k in range(s)]
        if any(v.denominator != 1 or abs(v) > b for v in x):
            continue
        p = tuple(int(v) for v in x)
        if any(v > 0 for v in p) and any(v < 0 for v in p):
            vecs.append(p)
    vecs.sort()
    up = tuple(sorted({_sign_rep(v) for v in vecs}))
    lines = tuple(sorted({_sign_rep(primitive(v)) for v in vecs}))
    return CandidateReactions(tuple(vecs), up, lines)
