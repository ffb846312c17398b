"""Exact convex geometry: cones and polytopes over the rationals.

Both directions between generators and inequalities go through one
double-description routine (``double_description``), applied to the
homogenised problem.  All coordinates are Fractions; halfspace normals are
stored as primitive integer vectors.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .ratlin import (
    DimensionMismatch,
    RationalMatrix,
    Subspace,
    fmt,
    nullspace,
    primitive,
    rank,
    solve_affine,
    to_fraction,
)

__all__ = [
    "GeometryError",
    "SliceError",
    "UnboundedError",
    "OutsideHull",
    "Location",
    "double_description",
    "Cone",
    "Polytope",
    "convex_hull",
    "intersect",
    "dimension",
    "contains",
    "interior_rational_point",
    "rational_convex_combination",
    "cone_from_rays",
    "slice_cone",
]

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


class SliceError(GeometryError):
    """A ray does not meet the slicing hyperplane on its positive side."""

    def __init__(self, message: str, offending: Sequence[tuple[int, ...]] = ()):
        super().__init__(message)
        self.offending = tuple(offending)


class UnboundedError(GeometryError):
    pass


class OutsideHull(GeometryError):
    pass


class Location(str, enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "relative interior"


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _vec(v: Iterable) -> Point:
    return tuple(to_fraction(x) for x in v)


def double_description(
    inequalities: Sequence[Sequence], equalities: Sequence[Sequence] = (), dim: int | None = None
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Generators of the cone ``{x : a·x >= 0 for a in inequalities, e·x = 0}``.

    Returns ``(lineality_basis, extreme_rays)``, both as primitive integer
    vectors.  Rays are extreme modulo the lineality space.
    """
    if dim is None:
        first = list(inequalities) or list(equalities)
        if not first:
            raise ValueError("dimension required for an unconstrained cone")
        dim = len(first[0])
    ineqs = [_vec(a) for a in inequalities]
    if equalities:
        lin = [list(b) for b in nullspace(RationalMatrix([_vec(e) for e in equalities], dim)).basis]
    else:
        lin = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    rays: list[list[Fraction]] = []
    tight: list[frozenset[int]] = []
    for k, a in enumerate(ineqs):
        vals = [_dot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0 = lin[piv]
            s0 = vals[piv]
            if s0 < 0:
                l0 = [-x for x in l0]
                s0 = -s0
            new_lin = []
            for i, l in enumerate(lin):
                if i == piv:
                    continue
                f = vals[i] / s0 if vals[i] else 0
                new_lin.append([x - f * y for x, y in zip(l, l0)] if f else l)
            new_rays = []
            for r in rays:
                f = _dot(a, r) / s0
                new_rays.append([x - f * y for x, y in zip(r, l0)] if f else r)
            lin = new_lin
            tight = [t | {k} for t in tight]
            prev = frozenset(range(k))
            rays = new_rays + [l0]
            tight = tight + [prev]
            continue
        svals = [_dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(svals) if s > 0]
        neg = [i for i, s in enumerate(svals) if s < 0]
        zero = [i for i, s in enumerate(svals) if s == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in pos] + [tight[i] | {k} for i in zero]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(j != p and j != q and common <= tight[j] for j in range(len(rays))):
                    continue
                sp, sq = svals[p], svals[q]
                new_rays.append([sp * y - sq * x for x, y in zip(rays[p], rays[q])])
                new_tight.append(common | {k})
        rays, tight = new_rays, new_tight
    lin_basis = [primitive(b) for b in Subspace.span(lin, dim).basis] if lin else []
    out_rays = []
    seen = set()
    for r in rays:
        pr = primitive(r)
        if any(pr) and pr not in seen:
            seen.add(pr)
            out_rays.append(pr)
    return lin_basis, out_rays


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone spanned by integer ray generators."""

    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise DimensionMismatch("generator length differs from ambient dimension")
            p = primitive(g)
            if not any(p):
                raise GeometryError("zero vector is not a ray")
            if p not in gens:
                gens.append(p)
        object.__setattr__(self, "generators", tuple(gens))

    @cached_property
    def h_rep(self) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
        """``(inequalities, equalities)`` with the cone = {x : a·x >= 0, e·x = 0}."""
        if not self.generators:
            eye = [tuple(int(i == j) for j in range(self.ambient_dim)) for i in range(self.ambient_dim)]
            return [], eye
        lin, rays = double_description(self.generators, (), self.ambient_dim)
        return rays, lin

    @property
    def dim(self) -> int:
        return rank(RationalMatrix(self.generators, self.ambient_dim)) if self.generators else 0

    @cached_property
    def extreme_rays(self) -> list[tuple[int, ...]]:
        ineq, eq = self.h_rep
        lin, rays = double_description(ineq, eq, self.ambient_dim)
        if lin:
            raise GeometryError("cone is not pointed; extreme rays undefined")
        return sorted(rays)

    def contains(self, x: Sequence) -> bool:
        x = _vec(x)
        ineq, eq = self.h_rep
        return all(_dot(e, x) == 0 for e in eq) and all(_dot(a, x) >= 0 for a in ineq)

    def intersection(self, other: Cone) -> Cone:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        i1, e1 = self.h_rep
        i2, e2 = other.h_rep
        lin, rays = double_description(i1 + i2, e1 + e2, self.ambient_dim)
        gens = rays + lin + [tuple(-x for x in l) for l in lin]
        return Cone(self.ambient_dim, tuple(gens))


def cone_from_rays(vectors: Sequence[Sequence]) -> Cone:
    vecs = [primitive(v) for v in vectors]
    if not vecs:
        raise GeometryError("at least one ray required")
    return Cone(len(vecs[0]), tuple(vecs))


@dataclass(frozen=True)
class Halfspace:
    """``normal · x <= offset`` (or ``==`` for equalities)."""

    normal: tuple[int, ...]
    offset: Fraction

    def value(self, x: Sequence) -> Fraction:
        return _dot(self.normal, x)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": fmt(self.offset)}

    @classmethod
    def from_json(cls, obj: dict) -> Halfspace:
        return cls(tuple(int(v) for v in obj["normal"]), Fraction(obj["offset"]))


def _normalise(normal: Sequence[Fraction], offset: Fraction) -> Halfspace:
    normal = [to_fraction(x) for x in normal]
    p = primitive(normal)
    k = next(Fraction(pi) / ni for pi, ni in zip(p, normal) if ni != 0)
    return Halfspace(p, to_fraction(offset) * k)


@dataclass(frozen=True)
class Polytope:
    """Bounded polyhedron with matching V- and H-representations.

    Build with :func:`convex_hull` or :meth:`Polytope.from_constraints`; the
    empty polytope is ``Polytope.empty(d)``.
    """

    ambient_dim: int
    vertices: tuple[Point, ...]
    halfspaces: tuple[Halfspace, ...]
    equalities: tuple[Halfspace, ...]

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("vertex length differs from ambient dimension")
            for e in self.equalities:
                if e.value(v) != e.offset:
                    raise GeometryError("vertex violates an equality of the H-representation")
            for h in self.halfspaces:
                if h.value(v) > h.offset:
                    raise GeometryError("vertex violates a halfspace of the H-representation")
        d = self.dim
        for h in self.halfspaces:
            tight = [v for v in self.vertices if h.value(v) == h.offset]
            if _affine_rank(tight) < d - 1:
                raise GeometryError("halfspace is not a facet of the vertex hull")

    @classmethod
    def empty(cls, ambient_dim: int) -> Polytope:
        return cls(ambient_dim, (), (), ())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dim(self) -> int:
        return _affine_rank(self.vertices) if self.vertices else -1

    @classmethod
    def from_constraints(
        cls,
        halfspaces: Iterable[tuple[Sequence, object]],
        equalities: Iterable[tuple[Sequence, object]] = (),
        ambient_dim: int | None = None,
    ) -> Polytope:
        """Polytope ``{x : n·x <= h for (n, h) in halfspaces, n·x = h for equalities}``.

        Raises :class:`UnboundedError` when the region is non-empty and unbounded.
        """
        hs = [(_vec(n), to_fraction(h)) for n, h in halfspaces]
        es = [(_vec(n), to_fraction(h)) for n, h in equalities]
        if ambient_dim is None:
            ambient_dim = len((hs or es)[0][0])
        # homogenise on (t, x): t >= 0, h t - n·x >= 0, h t - n·x = 0
        ineqs = [(Fraction(1),) + (Fraction(0),) * ambient_dim]
        ineqs += [(h,) + tuple(-x for x in n) for n, h in hs]
        eqs = [(h,) + tuple(-x for x in n) for n, h in es]
        lin, rays = double_description(ineqs, eqs, ambient_dim + 1)
        verts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays if r[0] > 0]
        recession = [r for r in rays if r[0] == 0]
        if not verts:
            return cls.empty(ambient_dim)
        if recession or lin:
            raise UnboundedError("constraint region is unbounded")
        return convex_hull(verts)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "vertices": [[fmt(x) for x in v] for v in self.vertices],
            "halfspaces": [h.to_json() for h in self.halfspaces],
            "equalities": [e.to_json() for e in self.equalities],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Polytope:
        verts = [_vec(Fraction(x) for x in v) for v in obj.get("vertices", [])]
        if verts:
            return convex_hull(verts)
        hs = [Halfspace.from_json(h) for h in obj.get("halfspaces", [])]
        es = [Halfspace.from_json(e) for e in obj.get("equalities", [])]
        if not hs and not es:
            return cls.empty(int(obj.get("ambient_dim", 0)))
        return cls.from_constraints(
            [(h.normal, h.offset) for h in hs], [(e.normal, e.offset) for e in es], obj.get("ambient_dim")
        )

    def scaled(self, k) -> Polytope:
        k = to_fraction(k)
        if self.is_empty:
            return self
        if k <= 0:
            raise ValueError("dilation factor must be positive")
        return convex_hull([tuple(k * x for x in v) for v in self.vertices])

    def contains(self, x: Sequence) -> Location:
        return contains(self, x)

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))


def _affine_rank(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    return rank(RationalMatrix(diffs, len(base))) if diffs else 0


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Irredundant V- and H-representation of ``conv(points)``."""
    pts = sorted({_vec(p) for p in points})
    if not pts:
        raise GeometryError("convex hull of no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points have inconsistent dimension")
    gens = [(Fraction(1),) + p for p in pts]
    lin, rays = double_description(gens, (), d + 1)
    # equalities: y0 + y·x = 0  ->  y·x = -y0
    eq_rows = [(tuple(Fraction(x) for x in l[1:]), -Fraction(l[0])) for l in lin]
    eq_rref = Subspace.span([n + (h,) for n, h in eq_rows], d + 1).basis if eq_rows else ()
    equalities = tuple(_normalise(r[:d], r[d]) for r in eq_rref)
    eq_pivots = [next(j for j, x in enumerate(r) if x != 0) for r in eq_rref]
    halfspaces = []
    for r in rays:
        # y0 + y·x >= 0  ->  (-y)·x <= y0
        normal = [-Fraction(x) for x in r[1:]]
        offset = Fraction(r[0])
        for row, p in zip(eq_rref, eq_pivots):
            if p < d and normal[p] != 0:
                f = normal[p] / row[p]
                normal = [a - f * b for a, b in zip(normal, row[:d])]
                offset -= f * row[d]
        if not any(normal):
            continue
        halfspaces.append(_normalise(normal, offset))
    halfspaces = sorted(set(halfspaces), key=lambda h: (h.normal, h.offset))
    normals = [e.normal for e in equalities]
    verts = []
    for p in pts:
        tight = normals + [h.normal for h in halfspaces if h.value(p) == h.offset]
        if (rank(RationalMatrix(tight, d)) if tight else 0) == d:
            verts.append(p)
    return Polytope(d, tuple(verts), tuple(halfspaces), equalities)


def intersect(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {P.ambient_dim} vs {Q.ambient_dim}")
    if P.is_empty or Q.is_empty:
        return Polytope.empty(P.ambient_dim)
    hs = [(h.normal, h.offset) for h in P.halfspaces + Q.halfspaces]
    es = [(e.normal, e.offset) for e in P.equalities + Q.equalities]
    return Polytope.from_constraints(hs, es, P.ambient_dim)


def dimension(P: Polytope) -> int:
    return P.dim


def contains(P: Polytope, x: Sequence) -> Location:
    x = _vec(x)
    if len(x) != P.ambient_dim:
        raise DimensionMismatch("point length differs from ambient dimension")
    if P.is_empty:
        return Location.OUTSIDE
    if any(e.value(x) != e.offset for e in P.equalities) or any(h.value(x) > h.offset for h in P.halfspaces):
        return Location.OUTSIDE
    if any(h.value(x) == h.offset for h in P.halfspaces):
        return Location.BOUNDARY
    return Location.INTERIOR


def interior_rational_point(P: Polytope) -> Point:
    """Vertex centroid: rational and in the relative interior."""
    if P.is_empty:
        raise GeometryError("empty polytope has no points")
    n = len(P.vertices)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*P.vertices))


def rational_convex_combination(x: Sequence, generators: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Non-negative rational weights ``w`` with ``sum w = 1`` and ``sum w_i g_i = x``.

    The weights live on the lexicographically first affinely independent
    subset of generators (of size affine-dim + 1) whose simplex holds ``x``;
    every other generator gets weight zero.
    """
    x = _vec(x)
    gens = [_vec(g) for g in generators]
    if not gens:
        raise OutsideHull("no generators")
    d = _affine_rank(gens)
    for combo in itertools.combinations(range(len(gens)), d + 1):
        sub = [gens[i] for i in combo]
        if _affine_rank(sub) != d:
            continue
        A = RationalMatrix([[g[k] for g in sub] for k in range(len(x))] + [[1] * len(sub)], len(sub))
        sol = solve_affine(A, list(x) + [1])
        if not sol.feasible:
            raise OutsideHull("point is not in the affine hull of the generators")
        lam = sol.particular
        if all(v >= 0 for v in lam):
            w = [Fraction(0)] * len(gens)
            for i, v in zip(combo, lam):
                w[i] = v
            return tuple(w)
    raise OutsideHull("point lies outside the convex hull of the generators")


def slice_cone(C: Cone, normal: Sequence, offset=1) -> Polytope:
    """Section of ``C`` by the hyperplane ``normal · x = offset``.

    Every generator must meet the hyperplane on its positive side.
    """
    normal = _vec(normal)
    h = to_fraction(offset)
    if h <= 0:
        raise SliceError("offset must be positive for a section through all rays")
    bad = [g for g in C.generators if _dot(normal, g) <= 0]
    if bad:
        raise SliceError(f"ray(s) {bad} do not meet the hyperplane", bad)
    return convex_hull([tuple(h / _dot(normal, g) * x for x in g) for g in C.generators])
