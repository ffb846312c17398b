"""Chemical formula and equation parsing.

Formulas follow a small grammar: element symbols (an uppercase letter and
optional lowercase letters), round or square groups, positive integer
subscripts, and an optional trailing charge written either as ``^2+`` /
``^-`` or as repeated bare signs (``Fe+++``).  The free electron is written
``e``, ``e-`` or ``e^-``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "FormulaError",
    "Composition",
    "Species",
    "Reaction",
    "parse_formula",
    "parse_equation",
    "composition_vector",
    "barycentric_point",
    "element_order",
    "ELECTRON",
]

_SEPARATORS = ("->", "→", "=")
_ELECTRON_SPELLINGS = {"e", "e-", "e^-", "e^1-", "e⁻"}


class FormulaError(ValueError):
    """Raised for malformed formula or equation text."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Composition:
    """Element multiset plus net charge of one species.

    ``elements`` keeps first-appearance order; equality ignores that order.
    """

    elements: tuple[tuple[str, int], ...] = ()
    charge: int = 0

    def __post_init__(self):
        seen = set()
        for sym, count in self.elements:
            if not _ELEMENT_RE.fullmatch(sym):
                raise FormulaError(f"invalid element symbol {sym!r}")
            if count < 1:
                raise FormulaError(f"element {sym} has non-positive count {count}")
            if sym in seen:
                raise FormulaError(f"element {sym} listed twice")
            seen.add(sym)

    @classmethod
    def from_counts(cls, counts: dict[str, int] | Iterable[tuple[str, int]], charge: int = 0) -> Composition:
        items = counts.items() if isinstance(counts, dict) else counts
        return cls(tuple((s, int(c)) for s, c in items if c), int(charge))

    @property
    def counts(self) -> dict[str, int]:
        return dict(self.elements)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.elements)

    def count(self, symbol: str) -> int:
        return self.counts.get(symbol, 0)

    @property
    def is_electron(self) -> bool:
        return not self.elements and self.charge == -1

    def _key(self):
        return tuple(sorted(self.elements)), self.charge

    def __eq__(self, other):
        if not isinstance(other, Composition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other: Composition) -> Composition:
        counts = self.counts
        for sym, n in other.elements:
            counts[sym] = counts.get(sym, 0) + n
        return Composition.from_counts(counts, self.charge + other.charge)

    def scaled(self, k: int) -> Composition:
        if k < 1:
            raise ValueError("scale factor must be a positive integer")
        return Composition(tuple((s, n * k) for s, n in self.elements), self.charge * k)

    def formula(self) -> str:
        """Render text that :func:`parse_formula` maps back to this composition."""
        if not self.elements:
            if self.charge == -1:
                return "e^-"
            if self.charge == 0:
                raise FormulaError("cannot render an empty neutral composition")
        body = "".join(s + (str(n) if n > 1 else "") for s, n in self.elements)
        return body + _charge_suffix(self.charge)

    def to_json(self) -> dict:
        return {"elements": dict(self.elements), "charge": self.charge}

    @classmethod
    def from_json(cls, obj: dict) -> Composition:
        return cls.from_counts(obj.get("elements", {}), obj.get("charge", 0))

    def __repr__(self):
        return f"Composition({self.formula() if (self.elements or self.charge) else ''!r})"


ELECTRON = Composition((), -1)


def _charge_suffix(charge: int) -> str:
    if charge == 0:
        return ""
    sign = "+" if charge > 0 else "-"
    mag = abs(charge)
    return "^" + (str(mag) if mag > 1 else "") + sign


@dataclass(frozen=True)
class Species:
    label: str
    composition: Composition

    @property
    def charge(self) -> int:
        return self.composition.charge


@dataclass(frozen=True)
class Reaction:
    """Unweighted reaction schema: which species sit on which side."""

    reactants: tuple[Species, ...]
    products: tuple[Species, ...]
    stated_coefficients: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "reactants", tuple(self.reactants))
        object.__setattr__(self, "products", tuple(self.products))
        if not self.reactants or not self.products:
            raise FormulaError("a reaction needs at least one reactant and one product")
        labels = [s.label for s in self.species]
        dup = {x for x in labels if labels.count(x) > 1}
        if dup:
            raise FormulaError(f"duplicate species label(s): {', '.join(sorted(dup))}")

    @classmethod
    def from_formulas(cls, reactants: Sequence[str], products: Sequence[str]) -> Reaction:
        return cls(
            tuple(Species(f, parse_formula(f)) for f in reactants),
            tuple(Species(f, parse_formula(f)) for f in products),
        )

    @property
    def species(self) -> tuple[Species, ...]:
        return self.reactants + self.products

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.species]

    @property
    def n_reactants(self) -> int:
        return len(self.reactants)

    @property
    def is_charged(self) -> bool:
        return any(s.charge for s in self.species)

    def side_of(self, label: str) -> str:
        if any(s.label == label for s in self.reactants):
            return "reactant"
        if any(s.label == label for s in self.products):
            return "product"
        raise KeyError(label)

    def __str__(self):
        return " + ".join(s.label for s in self.reactants) + " -> " + " + ".join(s.label for s in self.products)

    def to_json(self) -> dict:
        side = lambda ss: [{"label": s.label, **s.composition.to_json()} for s in ss]  # noqa: E731
        return {"reactants": side(self.reactants), "products": side(self.products)}


_ELEMENT_RE = re.compile(r"[A-Z][a-z]*")


class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise FormulaError(msg, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def number(self) -> int | None:
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        value = int(m.group())
        if value == 0:
            self.pos = m.start()
            self.error("zero subscript")
        return value

    def body(self, closer: str | None) -> dict[str, int]:
        counts: dict[str, int] = {}
        seen_any = False
        while True:
            ch = self.peek()
            if ch.isupper():
                m = _ELEMENT_RE.match(self.text, self.pos)
                self.pos = m.end()
                part = {m.group(): 1}
            elif ch and ch in "([":
                opener = ch
                self.pos += 1
                part = self.body(")" if opener == "(" else "]")
            elif ch and ch in ")]":
                if closer is None:
                    self.error("unbalanced bracket")
                if ch != closer:
                    self.error(f"expected {closer!r}")
                if not seen_any:
                    self.error("empty group")
                self.pos += 1
                return counts
            else:
                if closer is not None:
                    self.error("unbalanced bracket" if not ch else f"unexpected character {ch!r}")
                return counts
            mult = self.number() or 1
            for sym, n in part.items():
                counts[sym] = counts.get(sym, 0) + n * mult
            seen_any = True

    def charge(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            mag = self.number() or 1
            sign = self.peek()
            if sign not in "+-" or not sign:
                self.error("charge sign expected after '^'")
            self.pos += 1
            return mag if sign == "+" else -mag
        m = re.compile(r"\++|-+").match(self.text, self.pos)
        if not m:
            return 0
        self.pos = m.end()
        return len(m.group()) if m.group()[0] == "+" else -len(m.group())


def parse_formula(text: str) -> Composition:
    """Parse one formula into a :class:`Composition`.

    >>> parse_formula("[Au(CN)2]^-").counts
    {'Au': 1, 'C': 2, 'N': 2}
    """
    src = text.strip()
    if not src:
        raise FormulaError("empty formula")
    if src in _ELECTRON_SPELLINGS:
        return ELECTRON
    if src[0].isdigit():
        raise FormulaError("formula may not start with a digit (isotope prefixes unsupported)", src, 0)
    p = _FormulaParser(src)
    counts = p.body(None)
    if not counts:
        p.error("expected an element or group")
    charge = p.charge()
    if p.pos != len(src):
        p.error(f"unexpected character {src[p.pos]!r}")
    return Composition.from_counts(counts, charge)


def _split_species(side: str, whole: str) -> list[str]:
    """Split one side of an equation on its '+' separators.

    A '+' separates species when the next non-space character can start a
    species; otherwise it belongs to a charge token.
    """
    parts, start, i = [], 0, 0
    n = len(side)
    while i < n:
        if side[i] == "+":
            j = i + 1
            while j < n and side[j].isspace():
                j += 1
            nxt = side[j] if j < n else ""
            prev = side[start:i].strip()
            if prev and nxt and (nxt.isalnum() or nxt in "([") and side[i - 1] != "^":
                parts.append(prev)
                start = i + 1
        i += 1
    parts.append(side[start:].strip())
    if any(not p for p in parts):
        raise FormulaError("empty species on one side", whole)
    return parts


def _strip_coefficient(token: str) -> tuple[int, str]:
    m = re.match(r"(\d+)\s*(.*)$", token)
    if m and m.group(2) and not m.group(2)[0].isdigit():
        return int(m.group(1)), m.group(2)
    return 1, token


def parse_equation(text: str) -> Reaction:
    """Parse ``"A + B -> C + D"`` (also ``=`` or ``→``) into a :class:`Reaction`.

    Leading integer coefficients are stripped into ``stated_coefficients``.
    """
    for sep in _SEPARATORS:
        if sep in text:
            left, _, right = text.partition(sep)
            break
    else:
        raise FormulaError("missing separator ('->', '=' or '→')", text)
    if not left.strip() or not right.strip():
        raise FormulaError("empty side", text)
    sides, coefs = [], []
    for raw in (left, right):
        species = []
        for token in _split_species(raw, text):
            k, formula = _strip_coefficient(token)
            coefs.append(k)
            species.append(Species(formula, parse_formula(formula)))
        sides.append(tuple(species))
    return Reaction(sides[0], sides[1], stated_coefficients=tuple(coefs))


def element_order(species: Iterable[Species | Composition]) -> list[str]:
    """Elements in first-appearance order."""
    order: list[str] = []
    for s in species:
        comp = s.composition if isinstance(s, Species) else s
        for sym in comp.symbols:
            if sym not in order:
                order.append(sym)
    return order


def composition_vector(c: Composition, order: Sequence[str], with_charge: bool = False) -> tuple[Fraction, ...]:
    missing = [s for s in c.symbols if s not in order]
    if missing:
        raise FormulaError(f"element(s) {', '.join(missing)} missing from element order")
    counts = c.counts
    vec = [Fraction(counts.get(sym, 0)) for sym in order]
    if with_charge:
        vec.append(Fraction(c.charge))
    return tuple(vec)


def barycentric_point(c: Composition, order: Sequence[str]) -> tuple[Fraction, ...]:
    """Element proportions of ``c``; coordinates sum to exactly one."""
    if not c.elements:
        raise FormulaError("barycentric point undefined for a species without atoms")
    vec = composition_vector(c, order)
    total = sum(vec)
    return tuple(x / total for x in vec)
