"""Exact linear programming over the rationals.

A dense two-phase simplex with Bland's anti-cycling rule.  Problem sizes in
this package are tiny (tens of variables), so clarity wins over speed.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .ratlin import to_fraction

__all__ = ["LPResult", "linprog", "feasible_point", "UnboundedLP"]


class UnboundedLP(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    p = T[r][c]
    if p != 1:
        T[r] = [x / p for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(T[i], row)]
    basis[r] = c


def _simplex(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimise the objective in the last row of ``T``; False when unbounded.

    Columns ``>= allowed`` (before the rhs) never enter.
    """
    m = len(T) - 1
    rhs = len(T[0]) - 1
    obj = T[m]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][rhs] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(T, basis, leave, enter)
        obj = T[m]


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Minimise ``c·x`` s.t. ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are non-negative except those listed in ``free``.
    """
    c = [to_fraction(x) for x in c]
    n = len(c)
    free = sorted(set(free))
    # x_j = y_j - z_k for free j; column layout: y (n), z (len(free)), slacks, artificials
    def expand(row):
        row = [to_fraction(x) for x in row]
        if len(row) != n:
            raise ValueError("constraint row length differs from objective length")
        return row + [-row[j] for j in free]

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ub)
    nv = n + len(free)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(expand(a) + slack)
        rhs.append(to_fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append(expand(a) + [Fraction(0)] * n_slack)
        rhs.append(to_fraction(b))
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint/rhs length mismatch")
    m = len(rows)
    width = nv + n_slack
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(rows[i] + art + [rhs[i]])
    basis = [width + i for i in range(m)]
    # phase one objective: sum of artificials, expressed in non-basic terms
    obj = [Fraction(0)] * (width + m + 1)
    for i in range(m):
        for j in range(width):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    T.append(obj)
    _simplex(T, basis, width)
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= width:
            col = next((j for j in range(width) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    m = len(basis)
    T = [r[:width] + [r[-1]] for r in T[:m]]
    cost = c + [-c[j] for j in free] + [Fraction(0)] * n_slack
    obj = cost + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f != 0:
            obj = [a - f * b for a, b in zip(obj, T[i])]
    T.append(obj)
    if not _simplex(T, basis, width):
        return LPResult("unbounded")
    sol = [Fraction(0)] * width
    for i, bcol in enumerate(basis):
        sol[bcol] = T[i][-1]
    x = sol[:n]
    for k, j in enumerate(free):
        x[j] -= sol[n + k]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)


def feasible_point(
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    n: int | None = None,
    free: Sequence[int] = (),
) -> tuple[Fraction, ...] | None:
    """Some feasible point of the constraint system, or None."""
    if n is None:
        n = len(A_ub[0]) if len(A_ub) else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq, free)
    return res.x if res.status == "optimal" else None
