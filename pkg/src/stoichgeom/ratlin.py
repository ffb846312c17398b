"""Exact rational linear algebra.

Everything here works on :class:`fractions.Fraction`; there is no floating
point.  Subspaces are stored by the reduced row echelon form of a basis, so two
subspaces are equal exactly when their stored bases are identical.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

__all__ = [
    "DimensionMismatch",
    "RationalMatrix",
    "Subspace",
    "AffineSolution",
    "rref",
    "nullspace",
    "row_space",
    "column_space",
    "rank",
    "subspace_sum",
    "subspace_intersection",
    "orthogonal_complement",
    "project",
    "orthogonal_projection",
    "quotient_dim",
    "solve_affine",
    "primitive",
    "to_fraction",
    "fmt",
]

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def primitive(v: Iterable) -> tuple[int, ...]:
    """Smallest integer vector on the same ray as ``v`` (direction kept)."""
    v = [to_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


class RationalMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise DimensionMismatch("ragged matrix rows")
            ncols = widths.pop()
        elif ncols is None:
            ncols = 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> RationalMatrix:
        if not columns:
            return cls([[] for _ in range(nrows or 0)], 0)
        return cls(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> RationalMatrix:
        return cls([[0] * n for _ in range(m)], n)

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self._rows)) if self._rows else tuple(() for _ in range(self.ncols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(self.columns, self.nrows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows], other.ncols
            )
        vec = [to_fraction(x) for x in other]
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._rows)

    def select_columns(self, idx: Sequence[int]) -> RationalMatrix:
        return RationalMatrix([[r[j] for j in idx] for r in self._rows], len(idx))

    def select_rows(self, idx: Sequence[int]) -> RationalMatrix:
        return RationalMatrix([self._rows[i] for i in idx], self.ncols)

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.nrows != other.nrows:
            raise DimensionMismatch("row counts differ")
        return RationalMatrix([a + b for a, b in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.ncols != other.ncols:
            raise DimensionMismatch("column counts differ")
        return RationalMatrix(self._rows + other._rows, self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def to_json(self) -> list[list[str]]:
        return [[fmt(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data: list[list]) -> RationalMatrix:
        return cls(data)

    def rref(self) -> tuple[RationalMatrix, tuple[int, ...]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])


def _as_matrix(M) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix(M)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [a - f * b for a, b in zip(ri, rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(M) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    M = _as_matrix(M)
    rows, piv = _rref_rows([list(r) for r in M.rows], M.ncols)
    return RationalMatrix(rows, M.ncols), tuple(piv)


def rank(M) -> int:
    return len(rref(M)[1])


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^n held as a canonical (RREF) basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
        vecs = [[to_fraction(x) for x in v] for v in vectors]
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient_dim required for an empty spanning set")
            ambient_dim = len(vecs[0])
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionMismatch("spanning vectors have inconsistent length")
        rows, piv = _rref_rows(vecs, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows[: len(piv)]))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls.span(RationalMatrix.identity(n).rows, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(b) if x != 0) for b in self.basis)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix(self.basis, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        v = [to_fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        r = list(v)
        for b, p in zip(self.basis, self.pivots):
            if r[p] != 0:
                f = r[p]
                r = [a - f * c for a, c in zip(r, b)]
        return all(x == 0 for x in r)

    def contains_subspace(self, other: Subspace) -> bool:
        _check(self, other)
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` in the canonical basis (read off at the pivots)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        v = [to_fraction(x) for x in v]
        return tuple(v[p] for p in self.pivots)

    def integer_basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(primitive(b) for b in self.basis)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [[fmt(x) for x in b] for b in self.basis]}

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim}, basis={[list(map(fmt, b)) for b in self.basis]})"


def _check(A: Subspace, B: Subspace):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {A.ambient_dim} vs {B.ambient_dim}")


def nullspace(M) -> Subspace:
    """NS(M) = {x : Mx = 0} in canonical form."""
    M = _as_matrix(M)
    R, piv = rref(M)
    free = [j for j in range(M.ncols) if j not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        for row, p in zip(R.rows, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, M.ncols)


def row_space(M) -> Subspace:
    M = _as_matrix(M)
    return Subspace.span(M.rows, M.ncols)


def column_space(M) -> Subspace:
    M = _as_matrix(M)
    return Subspace.span(M.columns, M.nrows)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check(A, B)
    return Subspace.span(A.basis + B.basis, A.ambient_dim)


def orthogonal_complement(A: Subspace, within: Subspace | None = None) -> Subspace:
    """Complement of ``A`` under the standard dot product, optionally inside ``within``."""
    comp = nullspace(RationalMatrix(A.basis, A.ambient_dim)) if A.basis else Subspace.full(A.ambient_dim)
    if within is None:
        return comp
    _check(A, within)
    return subspace_intersection(comp, within)


def subspace_intersection(A: Subspace, B: Subspace) -> Subspace:
    _check(A, B)
    n = A.ambient_dim
    if not A.basis or not B.basis:
        return Subspace.zero(n)
    # x = A^T a = B^T b  <=>  [A^T | -B^T](a, b) = 0
    stacked = RationalMatrix.from_columns(list(A.basis) + [tuple(-x for x in b) for b in B.basis])
    ns = nullspace(stacked)
    vecs = []
    for sol in ns.basis:
        a = sol[: A.dim]
        vecs.append([sum((ai * bi[k] for ai, bi in zip(a, A.basis)), Fraction(0)) for k in range(n)])
    return Subspace.span(vecs, n)


def project(A: Subspace, coords: Sequence[int]) -> Subspace:
    """Coordinate projection of ``A`` onto ``coords`` (result lives in Q^len(coords))."""
    coords = list(coords)
    if any(c < 0 or c >= A.ambient_dim for c in coords):
        raise DimensionMismatch("projection index out of range")
    return Subspace.span([[b[c] for c in coords] for b in A.basis], len(coords))


def orthogonal_projection(v: Sequence, Z: Subspace) -> tuple[Fraction, ...]:
    """Orthogonal projection of a vector onto ``Z``."""
    v = [to_fraction(x) for x in v]
    if len(v) != Z.ambient_dim:
        raise DimensionMismatch("vector length differs from ambient dimension")
    if not Z.basis:
        return tuple(Fraction(0) for _ in v)
    B = Z.matrix()
    gram = B @ B.T
    rhs = B @ v
    sol = solve_affine(gram, rhs)
    coef = sol.particular
    return tuple(sum((c * b[k] for c, b in zip(coef, Z.basis)), Fraction(0)) for k in range(Z.ambient_dim))


def project_onto(A: Subspace, Z: Subspace) -> Subspace:
    """proj_Z A: image of ``A`` under orthogonal projection onto ``Z``."""
    _check(A, Z)
    return Subspace.span([orthogonal_projection(b, Z) for b in A.basis], A.ambient_dim)


def quotient_dim(A: Subspace, B: Subspace) -> int:
    """dim A/(A ∩ B); ``B`` need not be contained in ``A``."""
    return A.dim - subspace_intersection(A, B).dim


@dataclass(frozen=True)
class AffineSolution:
    feasible: bool
    particular: tuple[Fraction, ...] | None
    nullspace: Subspace
    rank: int
    augmented_rank: int


def solve_affine(M, c: Sequence) -> AffineSolution:
    """All solutions of ``M x = c`` as particular solution plus nullspace.

    Infeasibility is reported through ``feasible=False`` with the two ranks
    as certificate (rank M < rank [M | c]).
    """
    M = _as_matrix(M)
    c = [to_fraction(x) for x in c]
    if len(c) != M.nrows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = [list(r) + [ci] for r, ci in zip(M.rows, c)]
    rows, piv = _rref_rows(aug, M.ncols + 1)
    ns = nullspace(M)
    r_aug = len(piv)
    if piv and piv[-1] == M.ncols:
        return AffineSolution(False, None, ns, r_aug - 1, r_aug)
    x = [Fraction(0)] * M.ncols
    for row, p in zip(rows, piv):
        x[p] = row[M.ncols]
    return AffineSolution(True, tuple(x), ns, r_aug, r_aug)
