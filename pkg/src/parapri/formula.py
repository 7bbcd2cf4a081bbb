"""Propositional formulas: AST, parser, printer, brute-force semantic checks.

Grammar (whitespace insensitive, ``#`` starts a line comment)::

    formula := iff
    iff     := imp ("<->" imp)*          left associative
    imp     := or ("->" or)*             right associative
    or      := and ("|" and)*            left associative
    and     := unary ("&" unary)*        left associative
    unary   := "~" unary | "(" formula ")" | "true" | "false" | ATOM
    ATOM    := IDENT [ "(" IDENT ("," IDENT)* ")" ]

Ground atoms such as ``flies(tweety)`` are opaque names; no term structure
is modelled.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import CapExceededError, ParseError, UniverseError, ValidationError

DEFAULT_TAUTOLOGY_CAP = 24


class Formula:
    """Immutable AST node; compared and hashed structurally."""

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_TOKEN_RE = re.compile(r"\s+|#[^\n]*|(?P<op><->|->|[~&|(),])|(?P<ident>" + _IDENT + ")")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", offset=pos)
        if m.group("op"):
            tokens.append(("op", m.group("op"), pos))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident"), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.k]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text or 'end of input'!r}", offset=pos)
        self.take()

    def at_op(self, op: str) -> bool:
        kind, text, _ = self.peek()
        return kind == "op" and text == op

    def parse(self) -> Formula:
        f = self.iff()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r} after formula", offset=pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.at_op("<->"):
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        parts = [self.disjunction()]
        while self.at_op("->"):
            self.take()
            parts.append(self.disjunction())
        f = parts[-1]
        for g in reversed(parts[:-1]):
            f = Implies(g, f)
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at_op("|"):
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at_op("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, text, pos = self.peek()
        if kind == "op" and text == "~":
            self.take()
            return Not(self.unary())
        if kind == "op" and text == "(":
            self.take()
            f = self.iff()
            self.expect_op(")")
            return f
        if kind == "ident":
            self.take()
            if text == "true":
                return TRUE
            if text == "false":
                return FALSE
            if self.at_op("("):
                return Atom(self._atom_args(text))
            return Atom(text)
        raise ParseError(f"expected a formula, found {text or 'end of input'!r}", offset=pos)

    def _atom_args(self, functor: str) -> str:
        self.expect_op("(")
        args = [self._ident()]
        while self.at_op(","):
            self.take()
            args.append(self._ident())
        self.expect_op(")")
        return f"{functor}({','.join(args)})"

    def _ident(self) -> str:
        kind, text, pos = self.peek()
        if kind != "ident":
            raise ParseError(f"expected an identifier, found {text or 'end of input'!r}", offset=pos)
        self.take()
        return text


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a Formula; raises ParseError with a byte offset."""
    return _Parser(text).parse()


_BINARY_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    """Fully parenthesized text form; ``parse_formula`` round-trips it."""
    match f:
        case Atom(name):
            return name
        case Const(value):
            return "true" if value else "false"
        case Not(arg):
            return "~" + to_text(arg)
        case And(left, right) | Or(left, right) | Implies(left, right) | Iff(left, right):
            return f"({to_text(left)} {_BINARY_OPS[type(f)]} {to_text(right)})"
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> tuple[str, ...]:
    """Atom names in first-mention order."""
    seen: dict[str, None] = {}

    def walk(g: Formula) -> None:
        match g:
            case Atom(name):
                seen.setdefault(name)
            case Const(_):
                pass
            case Not(arg):
                walk(arg)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                walk(l)
                walk(r)
            case _:
                raise TypeError(f"not a formula: {g!r}")

    walk(f)
    return tuple(seen)


@dataclass(frozen=True)
class Interpretation:
    """Total truth assignment over an ordered atom universe.

    Bit convention: the interpretation with index ``i`` assigns atom ``k``
    of the universe the value of bit ``k`` of ``i``.
    """

    universe: tuple[str, ...]
    values: tuple[bool, ...]

    def __post_init__(self):
        if len(self.universe) != len(self.values):
            raise UniverseError("universe and value tuple differ in length")
        if len(set(self.universe)) != len(self.universe):
            raise UniverseError("universe contains a duplicate atom")

    @cached_property
    def _position(self) -> dict[str, int]:
        return {a: k for k, a in enumerate(self.universe)}

    def value(self, atom: str) -> bool:
        try:
            return self.values[self._position[atom]]
        except KeyError:
            raise UniverseError(f"atom {atom!r} not in universe") from None

    @property
    def index(self) -> int:
        return sum(1 << k for k, v in enumerate(self.values) if v)

    @classmethod
    def from_index(cls, universe: Iterable[str], index: int) -> "Interpretation":
        names = tuple(universe)
        return cls(names, tuple(bool((index >> k) & 1) for k in range(len(names))))

    @classmethod
    def of(cls, universe: Iterable[str], assignment: Mapping[str, bool]) -> "Interpretation":
        names = tuple(universe)
        missing = [a for a in names if a not in assignment]
        if missing:
            raise UniverseError(f"assignment misses atoms {missing}")
        return cls(names, tuple(bool(assignment[a]) for a in names))

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(self.universe, self.values))


def evaluate(f: Formula, z: Interpretation) -> bool:
    """Classical truth value of ``f`` under ``z``."""
    match f:
        case Atom(name):
            return z.value(name)
        case Const(value):
            return value
        case Not(arg):
            return not evaluate(arg, z)
        case And(l, r):
            return evaluate(l, z) and evaluate(r, z)
        case Or(l, r):
            return evaluate(l, z) or evaluate(r, z)
        case Implies(l, r):
            return (not evaluate(l, z)) or evaluate(r, z)
        case Iff(l, r):
            return evaluate(l, z) == evaluate(r, z)
    raise TypeError(f"not a formula: {f!r}")


def _columns(universe: tuple[str, ...]) -> tuple[dict[str, int], int]:
    # Column k holds atom k's truth values across all 2^n interpretation
    # indices, built by doubling so construction is O(n^2) bigint ops.
    if len(set(universe)) != len(universe):
        raise ValidationError("universe contains a duplicate atom")
    cols: dict[str, int] = {}
    width = 1
    for name in universe:
        for a in cols:
            cols[a] |= cols[a] << width
        cols[name] = ((1 << width) - 1) << width
        width <<= 1
    return cols, width


def truth_mask(f: Formula, universe: Iterable[str]) -> int:
    """Truth table of ``f`` packed into an int: bit i = value under index i."""
    names = tuple(universe)
    cols, size = _columns(names)
    full = (1 << size) - 1

    def rec(g: Formula) -> int:
        match g:
            case Atom(name):
                try:
                    return cols[name]
                except KeyError:
                    raise UniverseError(f"atom {name!r} not in universe") from None
            case Const(value):
                return full if value else 0
            case Not(arg):
                return full ^ rec(arg)
            case And(l, r):
                return rec(l) & rec(r)
            case Or(l, r):
                return rec(l) | rec(r)
            case Implies(l, r):
                return (full ^ rec(l)) | rec(r)
            case Iff(l, r):
                return full ^ (rec(l) ^ rec(r))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f)


def _check_cap(universe: tuple[str, ...], cap: int) -> None:
    if len(universe) > cap:
        raise CapExceededError(f"{len(universe)} atoms exceeds the brute-force cap of {cap}")


def is_tautology(f: Formula, universe: Iterable[str], max_atoms: int = DEFAULT_TAUTOLOGY_CAP) -> bool:
    names = tuple(universe)
    _check_cap(names, max_atoms)
    return truth_mask(f, names) == (1 << (1 << len(names))) - 1


def entails(
    premises: Iterable[Formula],
    f: Formula,
    universe: Iterable[str],
    max_atoms: int = DEFAULT_TAUTOLOGY_CAP,
) -> bool:
    """Whether every interpretation satisfying all premises satisfies ``f``."""
    names = tuple(universe)
    _check_cap(names, max_atoms)
    full = (1 << (1 << len(names))) - 1
    premise_mask = full
    for p in premises:
        premise_mask &= truth_mask(p, names)
    return premise_mask & (full ^ truth_mask(f, names)) == 0
