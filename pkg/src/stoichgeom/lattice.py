"""Lattice points and denominator-bounded rational points of rational polytopes.

Enumeration is exact.  Integer points of the affine hull are parametrised by
a column Hermite reduction, then each free coordinate is bounded by two small
exact LPs given the coordinates already fixed.  Every candidate is checked
against the H-representation before it is reported.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Polytope, UnboundedError
from .lp import linprog
from .ratlin import RationalMatrix, fmt, solve_affine, to_fraction

__all__ = [
    "LatticeError",
    "Constraint",
    "integer_points",
    "lattice_points",
    "denominator_bounded_count",
    "CountSeries",
    "count_series",
    "fit_count_polynomial",
    "evaluate",
    "format_polynomial",
]

IntPoint = tuple[int, ...]
Constraint = tuple[Sequence, object]  # (normal, offset)


class LatticeError(ValueError):
    pass


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _column_hermite(A: list[list[int]], n: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Unimodular column reduction ``A U = H``.

    Returns ``(H, U, pivot_rows)``: column ``k < len(pivot_rows)`` of ``H`` has
    its first non-zero entry in row ``pivot_rows[k]`` and later columns vanish
    from that row upward; columns ``>= len(pivot_rows)`` of ``H`` are zero.
    """
    H = [list(r) for r in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(k: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (col_k, col_j) <- (a col_k + b col_j, c col_k + d col_j)
        for M in (H, U):
            for row in M:
                x, y = row[k], row[j]
                row[k], row[j] = a * x + b * y, c * x + d * y

    pivots: list[int] = []
    k = 0
    for i in range(len(H)):
        if k == n:
            break
        for j in range(k + 1, n):
            a, b = H[i][k], H[i][j]
            if b == 0:
                continue
            g, s, t = _egcd(a, b)
            colop(k, j, s, t, -b // g, a // g)
        if H[i][k] != 0:
            if H[i][k] < 0:
                for M in (H, U):
                    for row in M:
                        row[k] = -row[k]
            pivots.append(i)
            k += 1
    return H, U, pivots


def _integer_affine_lattice(equalities: Sequence[Constraint], n: int) -> tuple[IntPoint, list[IntPoint]] | None:
    """Integer solutions of the equalities as ``x0 + span_Z(basis)``; None if there are none."""
    rows: list[list[int]] = []
    rhs: list[Fraction] = []
    for normal, offset in equalities:
        vals = [to_fraction(x) for x in normal]
        den = 1
        for v in vals:
            den = den * v.denominator // _egcd(den, v.denominator)[0]
        rows.append([int(v * den) for v in vals])
        rhs.append(to_fraction(offset) * den)
    if not rows:
        return (0,) * n, [tuple(int(i == j) for i in range(n)) for j in range(n)]
    H, U, pivots = _column_hermite(rows, n)
    r = len(pivots)
    y = [Fraction(0)] * n
    for k, p in enumerate(pivots):
        acc = rhs[p] - sum((H[p][j] * y[j] for j in range(k)), Fraction(0))
        y[k] = acc / H[p][k]
        if y[k].denominator != 1:
            return None
    for i, row in enumerate(rows):
        if sum((H[i][j] * y[j] for j in range(r)), Fraction(0)) != rhs[i]:
            return None
    x0 = tuple(int(sum(U[i][j] * y[j] for j in range(r))) for i in range(n))
    basis = [tuple(U[i][j] for i in range(n)) for j in range(r, n)]
    return x0, basis


def integer_points(
    halfspaces: Sequence[Constraint],
    equalities: Sequence[Constraint] = (),
    ambient_dim: int | None = None,
    strict: bool = False,
) -> list[IntPoint]:
    """All integer ``x`` with ``n·x <= h`` (``<`` when ``strict``) and ``n·x = h``.

    The region must be bounded; otherwise :class:`UnboundedError` is raised.
    Points come back sorted.
    """
    hs = [(tuple(to_fraction(x) for x in nv), to_fraction(h)) for nv, h in halfspaces]
    if ambient_dim is None:
        ambient_dim = len((list(halfspaces) or list(equalities))[0][0])
    n = ambient_dim
    lat = _integer_affine_lattice(equalities, n)
    if lat is None:
        return []
    x0, basis = lat
    k = len(basis)
    # constraints in lattice coordinates y: (n·B) y <= h - n·x0
    A = [tuple(sum((nv[i] * b[i] for i in range(n)), Fraction(0)) for b in basis) for nv, _ in hs]
    b = [h - sum((nv[i] * x0[i] for i in range(n)), Fraction(0)) for nv, h in hs]
    free = list(range(k))
    out: list[IntPoint] = []

    def ok(y: list[int]) -> bool:
        for row, bi in zip(A, b):
            v = sum((a * yi for a, yi in zip(row, y)), Fraction(0))
            if v > bi or (strict and v == bi):
                return False
        return True

    def bound(prefix: list[int]) -> tuple[int, int] | None:
        j = len(prefix)
        if j == k - 1:
            return last_bound(prefix)
        A_eq = [[int(i == t) for i in range(k)] for t in range(j)]
        c = [int(i == j) for i in range(k)]
        lo = linprog(c, A, b, A_eq, prefix, free)
        if lo.status == "infeasible":
            return None
        hi = linprog([-x for x in c], A, b, A_eq, prefix, free)
        if lo.status == "unbounded" or hi.status == "unbounded":
            raise UnboundedError("region is unbounded; lattice points are infinite")
        low, high = lo.value, -hi.value
        return -((-low.numerator) // low.denominator), high.numerator // high.denominator

    def last_bound(prefix: list[int]) -> tuple[int, int] | None:
        # one free coordinate left: each constraint is an interval end
        low = high = None
        for row, bi in zip(A, b):
            rest = bi - sum((a * yi for a, yi in zip(row, prefix)), Fraction(0))
            a = row[-1]
            if a == 0:
                if rest < 0:
                    return None
            elif a > 0:
                high = rest / a if high is None else min(high, rest / a)
            else:
                low = rest / a if low is None else max(low, rest / a)
        if low is None or high is None:
            raise UnboundedError("region is unbounded; lattice points are infinite")
        if low > high:
            return None
        return -((-low.numerator) // low.denominator), high.numerator // high.denominator

    def rec(prefix: list[int]) -> None:
        if len(prefix) == k:
            if ok(prefix):
                out.append(tuple(x0[i] + sum(y * bb[i] for y, bb in zip(prefix, basis)) for i in range(n)))
            return
        bnd = bound(prefix)
        if bnd is None:
            return
        for v in range(bnd[0], bnd[1] + 1):
            rec(prefix + [v])

    if k == 0:
        if ok([]):
            out.append(tuple(x0))
    else:
        rec([])
    return sorted(out)


def lattice_points(P: Polytope, interior_only: bool = False) -> list[IntPoint]:
    """Integer points of ``P`` (of its relative interior when ``interior_only``)."""
    if P.is_empty:
        return []
    return integer_points(
        [(h.normal, h.offset) for h in P.halfspaces],
        [(e.normal, e.offset) for e in P.equalities],
        P.ambient_dim,
        strict=interior_only,
    )


def denominator_bounded_count(P: Polytope, n: int) -> tuple[int, int]:
    """``(nu, nu0)``: points of ``P`` (resp. its relative interior) lying in ``(1/n) Z^d``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    Q = P.scaled(n)
    return len(lattice_points(Q)), len(lattice_points(Q, interior_only=True))


# polynomials are coefficient tuples, constant term first


def evaluate(poly: Sequence[Fraction], x) -> Fraction:
    x = to_fraction(x)
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def format_polynomial(poly: Sequence[Fraction], var: str = "n") -> str:
    terms = []
    for e in range(len(poly) - 1, -1, -1):
        c = Fraction(poly[e])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = fmt(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{fmt(mag)}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def _interpolate(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Exact polynomial through ``points`` of degree ``len(points) - 1``."""
    V = RationalMatrix([[x**e for e in range(len(points))] for x, _ in points], len(points))
    sol = solve_affine(V, [y for _, y in points])
    coeffs = list(sol.particular)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class CountSeries:
    """Counts ``(n, nu(n), nu0(n))`` of a polytope's dilations plus optional fits."""

    polytope: Polytope
    values: tuple[tuple[int, int, int], ...]
    fitted: tuple[Fraction, ...] | None = None
    interior: bool = False
    fitted_closed: tuple[Fraction, ...] | None = None
    fitted_interior: tuple[Fraction, ...] | None = None
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out: dict = {"values": [{"n": n, "nu": a, "nu0": b} for n, a, b in self.values]}
        if self.fitted is not None:
            out["fitted"] = [fmt(c) for c in self.fitted]
            out["fitted_text"] = format_polynomial(self.fitted)
            out["interior"] = self.interior
        return out


def count_series(P: Polytope, n_max: int) -> CountSeries:
    vals = [(n, *denominator_bounded_count(P, n)) for n in range(1, n_max + 1)]
    return CountSeries(P, tuple(vals))


def fit_count_polynomial(P: Polytope, interior: bool = False) -> CountSeries:
    """Fit the counting polynomial of ``P`` and validate it.

    ``P`` must have integral vertices.  The degree-d polynomial is
    interpolated from n = 1..d+1 and must reproduce n = d+2 and n = d+3.
    Both the closed and the interior polynomials are fitted so that the
    reciprocity ``E_interior(n) = (-1)^d E_closed(-n)`` can be checked, and
    the closed count must equal 1 at n = 0.
    """
    if P.is_empty:
        raise LatticeError("empty polytope")
    if any(x.denominator != 1 for v in P.vertices for x in v):
        raise LatticeError("vertices are not integral; the count is a quasi-polynomial (not supported)")
    d = P.dim
    series = count_series(P, d + 3)
    closed = _interpolate([(n, a) for n, a, _ in series.values[: d + 1]])
    inner = _interpolate([(n, b) for n, _, b in series.values[: d + 1]])
    for n, a, b in series.values[d + 1 :]:
        if evaluate(closed, n) != a or evaluate(inner, n) != b:
            raise LatticeError(f"fitted polynomial fails validation at n = {n}")
    if evaluate(closed, 0) != 1:
        raise LatticeError("closed counting polynomial does not equal 1 at n = 0")
    for n in range(1, d + 4):
        if evaluate(inner, n) != (-1) ** d * evaluate(closed, -n):
            raise LatticeError(f"reciprocity fails at n = {n}")
    return CountSeries(
        P,
        series.values,
        inner if interior else closed,
        interior,
        closed,
        inner,
    )
