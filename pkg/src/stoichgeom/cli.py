"""Command-line front end.

Exit codes: 0 success (including "no balancing exists", which is a result),
1 domain error (unparsable formula, inconsistent data, failing corpus case),
2 usage error or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import __version__
from .balance import (
    InvariantViolation,
    Kind,
    balance_at,
    canonical_balances,
    classify,
    moduli_polyhedron,
    reaction_polytopes,
)
from .formula import FormulaError, Reaction, parse_equation
from .geometry import GeometryError, Polytope
from .lattice import LatticeError, count_series, denominator_bounded_count, fit_count_polynomial, format_polynomial, lattice_points
from .mechanism import (
    InfiniteRepresentations,
    Mechanism,
    MechanismError,
    algebraic_representations,
    conservation_report,
    consistent_reactions,
    finiteness_test,
    inverse_mechanism_spaces,
    precedence_analysis,
)
from .ratlin import DimensionMismatch, Subspace, fmt
from .redox import (
    HalfReactionError,
    charge_system,
    half_reaction_reachable_balances,
    spectator_transform,
)

DOMAIN_ERRORS = (
    FormulaError,
    GeometryError,
    LatticeError,
    MechanismError,
    HalfReactionError,
    InvariantViolation,
    DimensionMismatch,
    ValueError,
    ZeroDivisionError,
)


class InputError(Exception):
    """Unreadable input (exit code 2)."""


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return source


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _equation(args) -> Reaction:
    text = args.equation
    if args.file:
        try:
            text = open(args.file, encoding="utf-8").read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    elif text is None:
        raise InputError("no equation given")
    return parse_equation(_read_text(text).strip())


def _order(args) -> list[str] | None:
    return [s.strip() for s in args.order.split(",")] if getattr(args, "order", None) else None


def _vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot read {text!r} as a comma-separated list of rationals") from None


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _vertices_text(P: Polytope) -> str:
    if P.is_empty:
        return "empty"
    return ", ".join("(" + ", ".join(fmt(x) for x in v) + ")" for v in P.vertices)


# -- subcommands -------------------------------------------------------------


def cmd_balance(args) -> int:
    rxn = _equation(args)
    order = _order(args)
    c = classify(rxn, order=order)
    payload: dict = {"reaction": str(rxn), "classification": c.to_json()}
    lines = [f"reaction: {rxn}", f"classification: {c.kind.value}"]
    if c.kind is Kind.NO_BALANCE:
        lines.append("no balancing exists")
        payload["balances"] = []
    else:
        bals = canonical_balances(rxn)
        payload["balances"] = [b.to_json() for b in bals]
        if c.kind is Kind.UNIQUE:
            lines.append(f"balance: {bals[0]}")
        else:
            lines.append(f"moduli dimension: {c.q_dim} (balance cone), {c.moduli_dim} (nullspace)")
            lines.append("extreme balances (every balance is a positive combination):")
            lines += [f"  {b}" for b in bals]
    if c.intersection_dim is not None and c.kind is not Kind.NO_BALANCE:
        polys = reaction_polytopes(rxn, order=order)
        lines.append(f"intersection polytope ({', '.join(polys.labels)}): dim {polys.intersection.dim}; vertices {_vertices_text(polys.intersection)}")
        if args.polytopes:
            payload["polytopes"] = polys.to_json()
    elif c.geometric_note:
        lines.append(c.geometric_note)
    if args.at:
        b = balance_at(rxn, _vector(args.at), order=order)
        payload["balance_at"] = {"point": args.at, **b.to_json(), "unique_at_point": b.unique_at_point}
        lines.append(f"balance at ({args.at}): {b}" + ("" if b.unique_at_point else "  [one of several at this point]"))
    if args.moduli and c.kind is not Kind.NO_BALANCE:
        Q = moduli_polyhedron(rxn)
        payload["moduli_polyhedron"] = Q.to_json()
        lines.append("moduli polyhedron (nullspace coordinates c1..ck):")
        lines += [f"  {s}" for s in Q.describe()]
    _emit(args, payload, lines)
    return 0


def cmd_redox(args) -> int:
    rxn = _equation(args)
    if args.splits and args.method != "half-reaction":
        raise UsageError("--splits needs --method half-reaction")
    payload: dict = {"reaction": str(rxn), "method": args.method}
    lines = [f"reaction: {rxn}", f"method: {args.method}"]
    if args.method == "charge-row":
        cs = charge_system(rxn, _order(args))
        c = classify(rxn, order=_order(args), normal=cs.normal) if cs.normal else classify(rxn, order=_order(args))
        bals = canonical_balances(rxn) if c.kind is not Kind.NO_BALANCE else []
        payload.update(
            classification=c.kind.value,
            coordinates=list(cs.labels),
            naive_normal=[fmt(x) for x in cs.naive_normal],
            naive_offenders=list(cs.naive_offenders),
            normal=[fmt(x) for x in cs.normal] if cs.normal else None,
            balances=[b.to_json() for b in bals],
        )
        lines.append(f"coordinates: {', '.join(cs.labels)}")
        lines.append(f"naive slicing normal ({', '.join(fmt(x) for x in cs.naive_normal)}): " + ("valid" if cs.naive_ok else f"missed by {', '.join(cs.naive_offenders)}"))
        lines.append("slicing normal: " + (", ".join(fmt(x) for x in cs.normal) if cs.normal else "none exists"))
        lines.append(f"classification: {c.kind.value}")
    elif args.method == "spectator":
        ss = spectator_transform(rxn)
        c = classify(ss.reaction)
        bals = [ss.strip(b) for b in canonical_balances(ss.reaction)] if c.kind is not Kind.NO_BALANCE else []
        payload.update(neutral_reaction=str(ss.reaction), classification=c.kind.value, balances=[b.to_json() for b in bals])
        lines += [f"neutral system: {ss.reaction}", f"classification: {c.kind.value}"]
    else:
        reach = half_reaction_reachable_balances(rxn, args.medium)
        bals = list(reach)
        payload.update(medium=args.medium, balances=[b.to_json() for b in bals])
        lines.append(f"medium: {args.medium}")
        if args.splits:
            payload["splits"] = [
                {"first": [list(x) for x in s.first], "second": [list(x) for x in s.second], "disjoint": s.disjoint(rxn), "outcome": out}
                for s, out in reach.outcomes
            ]
            lines.append("splits:")
            for s, out in reach.outcomes:
                h1, h2 = s.halves(rxn)
                lines.append(f"  [{h1}] | [{h2}]{'  (disjoint)' if s.disjoint(rxn) else ''}: {out}")
    if not bals:
        lines.append("no balancing exists" if args.method != "half-reaction" else "no balance reachable")
    else:
        lines.append("balances:")
        lines += [f"  {b}" for b in bals]
    _emit(args, payload, lines)
    return 0


def _mechanism(args) -> tuple[Mechanism, dict]:
    data = _read_json(args.mechanism)
    if not isinstance(data, dict):
        raise InputError("mechanism JSON must be an object")
    return Mechanism.from_json(data), data


def _vec_text(v) -> str:
    return "(" + ", ".join(fmt(x) for x in v) + ")"


def cmd_mechanism(args) -> int:
    mech, data = _mechanism(args)
    M = data.get("M")
    lines: list[str] = []
    payload: dict = {"verb": args.verb}
    if args.verb == "report":
        rep = conservation_report(mech, M)
        payload.update(rep.to_json())
        lines += [f"mass-conservation space NS(N^T): dim {rep.mass_space.dim}"]
        lines += [f"  {_vec_text(b)}" for b in rep.mass_space.integer_basis()]
        lines.append(f"conservative: {'yes' if rep.conservative else 'no'}" + (f" (positive vector {_vec_text(rep.positive_witness)})" if rep.conservative else ""))
        lines.append(f"observed space (projection onto known species): dim {rep.observed_space.dim}")
        if rep.element_space is not None:
            lines.append(f"element space RS(M): dim {rep.element_space.dim}; homology dim ker M - dim im N = {rep.homology_dim}")
    elif args.verb == "consistent":
        pts = consistent_reactions(mech, args.t, args.known_only, not args.exclude_origin, args.projective)
        payload.update(t=args.t, count=len(pts), reactions=[list(p) for p in pts])
        lines.append(f"{len(pts)} lattice points with at most {args.t} species (counting multiplicity)")
        if args.list:
            lines += [f"  {_vec_text(p)}  {mech.equation(p) if any(p) else '(origin)'}" for p in pts]
    elif args.verb == "represent":
        c = _vector(args.c)
        try:
            reps = algebraic_representations(mech, c, args.steps)
        except InfiniteRepresentations as exc:
            raise MechanismError(f"{exc} (non-negative kernel vector {_vec_text(exc.witness)})") from None
        finite, _ = finiteness_test(mech)
        payload.update(finite=finite, representations=[list(x) for x in reps])
        lines.append(f"finitely many representations: {'yes' if finite else 'no'}")
        lines.append(f"{len(reps)} representation(s) of {mech.equation(mech.pad(c))}")
        lines += [f"  x = {_vec_text(x)}" for x in reps]
    elif args.verb == "inverse":
        if M is None:
            raise MechanismError("the inverse problem needs an elemental matrix under key \"M\" in the mechanism JSON")
        if args.observed:
            O = _read_json(args.observed)
        else:
            O = conservation_report(mech, M).observed_space
        rep = inverse_mechanism_spaces(mech.species, [mech.species[i] for i in mech.known], [mech.species[i] for i in mech.intermediates], M, O, not args.incomplete)
        payload.update(rep.to_json())
        lines += [f"  {k}: {v}" for k, v in rep.table().items()]
        lines.insert(0, "dimensions:")
        lines.append("proj_Z O: " + ("; ".join(_vec_text(b) for b in rep.proj_Z_O.basis) or "0"))
        lines.append(f"ambiguity space pi_K NS(M) ∩ pi_K RS(M): dim {rep.ambiguity.dim}")
        lines.append(f"NS(M_U): dim {rep.ns_M_U.dim} (projection to known species is {'injective' if rep.injective else 'not injective'} on NS(M))")
        if rep.H is not None:
            lines.append("homology H: " + ("; ".join(_vec_text(b) for b in rep.H.basis) or "0"))
    else:
        pr = precedence_analysis(mech)
        payload.update(pr.to_json())
        for i, Y in enumerate(pr.iterates, start=1):
            lines.append(f"phi^{i}: {{{', '.join(sorted(Y))}}}")
        for i, lv in enumerate(pr.levels, start=1):
            lines.append(f"level {i}: steps {', '.join(str(j + 1) for j in lv)}")
        if pr.unreachable:
            lines.append(f"never occur: steps {', '.join(str(j + 1) for j in pr.unreachable)}")
    _emit(args, payload, lines)
    return 0


def cmd_count(args) -> int:
    P = Polytope.from_json(_read_json(args.polytope))
    payload: dict = {"dim": P.dim}
    lines = [f"polytope: dim {P.dim}, {len(P.vertices)} vertices"]
    if args.fit:
        s = fit_count_polynomial(P, args.interior)
        payload.update(s.to_json())
        kind = "interior" if args.interior else "closed"
        lines.append(f"{kind} counting polynomial: {format_polynomial(s.fitted)}")
        lines += [f"  n={n}: {a} points, {b} interior" for n, a, b in s.values]
    elif args.n is not None:
        nu, nu0 = denominator_bounded_count(P, args.n)
        payload.update(n=args.n, nu=nu, nu0=nu0)
        lines.append(f"points in (1/{args.n})Z^d: {nu}; in the relative interior: {nu0}")
    else:
        pts = lattice_points(P, args.interior)
        payload.update(count=len(pts), points=[list(p) for p in pts])
        lines.append(f"{len(pts)} {'interior ' if args.interior else ''}lattice points")
    _emit(args, payload, lines)
    return 0


def cmd_polytope(args) -> int:
    rxn = _equation(args)
    normal = _vector(args.normal) if args.normal else None
    offset = Fraction(args.offset)
    polys = reaction_polytopes(rxn, normal, offset, order=_order(args))
    print(json.dumps(polys.to_json(), indent=2, ensure_ascii=False))
    return 0


def cmd_corpus(args) -> int:
    from .corpus import run_corpus

    results = run_corpus(args.only or None, args.acceptance)
    if args.json:
        print(json.dumps([
            {"key": r.key, "title": r.title, "criterion": r.criterion, "passed": r.passed, "seconds": round(r.seconds, 3),
             "error": r.error, "failures": [{"check": c.label, "detail": c.detail} for c in r.failures()]}
            for r in results
        ], indent=2, ensure_ascii=False))
    else:
        for r in results:
            print(r.line())
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} cases passed")
    return 0 if all(r.passed for r in results) else 1


# -- parser ------------------------------------------------------------------


class UsageError(Exception):
    pass


def _add_equation(p: argparse.ArgumentParser) -> None:
    p.add_argument("equation", nargs="?", help='equation text such as "NO + O3 -> NO2 + O2" ("-" reads stdin)')
    p.add_argument("--file", help="read the equation from a UTF-8 text file")
    p.add_argument("--order", help="comma-separated element order, e.g. O,N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stoichgeom", description="Exact stoichiometry: balancing, redox, mechanisms and lattice counts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("balance", parents=[common], help="classify and balance a chemical equation")
    _add_equation(p)
    p.add_argument("--at", help="comma-separated point of the intersection polytope to balance at")
    p.add_argument("--moduli", action="store_true", help="print the moduli polyhedron inequalities")
    p.add_argument("--polytopes", action="store_true", help="include polytope JSON in --json output")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("redox", parents=[common], help="balance a reaction with charged species")
    _add_equation(p)
    p.add_argument("--medium", choices=["acidic", "basic"], default="acidic")
    p.add_argument("--method", choices=["charge-row", "spectator", "half-reaction"], default="charge-row")
    p.add_argument("--splits", action="store_true", help="list half-reaction splits (half-reaction method only)")
    p.set_defaults(func=cmd_redox)

    p = sub.add_parser("mechanism", parents=[common], help="analyse a mechanism given as JSON")
    verbs = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    v = verbs.add_parser("report", parents=[common], help="conservation spaces")
    v.add_argument("mechanism", help='mechanism JSON file ("-" for stdin); optional key "M" holds the elemental matrix')
    v = verbs.add_parser("consistent", parents=[common], help="overall reactions consistent with the mechanism")
    v.add_argument("mechanism")
    v.add_argument("--t", type=int, required=True, help="maximum number of species counted with multiplicity")
    v.add_argument("--known-only", action="store_true", help="only vectors vanishing on intermediates")
    v.add_argument("--exclude-origin", action="store_true")
    v.add_argument("--projective", action="store_true", help="one primitive vector per ray")
    v.add_argument("--list", action="store_true", help="print every vector")
    v = verbs.add_parser("represent", parents=[common], help="algebraic representations of an overall reaction")
    v.add_argument("mechanism")
    v.add_argument("--c", required=True, help="comma-separated overall reaction over all or known species; write --c=-5,3,... when it starts with a minus sign")
    v.add_argument("--steps", type=int, help="bound on the total number of steps")
    v = verbs.add_parser("inverse", parents=[common], help="mechanism subspaces compatible with observed dependencies")
    v.add_argument("mechanism")
    v.add_argument("--observed", help="JSON list of observed dependency vectors over known species (default: from N)")
    v.add_argument("--incomplete", action="store_true", help="do not assume the observations are complete")
    v = verbs.add_parser("precedence", parents=[common], help="intermediate precedence levels")
    v.add_argument("mechanism")
    p.set_defaults(func=cmd_mechanism)

    p = sub.add_parser("count", parents=[common], help="lattice and denominator-bounded point counts of a polytope")
    p.add_argument("polytope", help='polytope JSON file ("-" for stdin)')
    p.add_argument("--interior", action="store_true", help="relative interior only")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="count points with n·x integral")
    g.add_argument("--fit", action="store_true", help="fit and validate the counting polynomial")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("polytope", help="export reactant, product and intersection polytopes as JSON")
    _add_equation(p)
    p.add_argument("--normal", help="comma-separated slicing normal over the coordinates")
    p.add_argument("--offset", default="1")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("corpus", parents=[common], help="run the embedded worked examples")
    p.add_argument("--only", nargs="*", help="case keys such as A1 X3")
    p.add_argument("--acceptance", action="store_true", help="acceptance cases only")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be a positive integer")
    if getattr(args, "t", None) is not None and args.t < 0:
        parser.error("--t must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
