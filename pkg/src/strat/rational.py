"""Rational expressions over label words.

Surface syntax: juxtaposition concatenates, `|` alternates, postfix `*`, `+`,
`?` repeat, parentheses group; atoms are label identifiers and whitespace is
insignificant. Expressions compile position-wise into an epsilon-free
nondeterministic automaton (state 0 is the start; the other states are the
symbol occurrences), and matching is whole-word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import StratError


class ParseError(StratError):
    def __init__(self, position: int, expected: str) -> None:
        super().__init__(f"parse error at offset {position}: expected {expected}")
        self.position = position
        self.expected = expected


class UnknownLabel(StratError):
    def __init__(self, name: str, position: int = -1) -> None:
        super().__init__(f"unknown label {name!r}")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class Sym:
    label: str


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Alt:
    parts: tuple


@dataclass(frozen=True)
class Star:
    item: object


@dataclass(frozen=True)
class Plus:
    item: object


@dataclass(frozen=True)
class Opt:
    item: object


def concat(parts: Sequence) -> object:
    flat: list = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Concat) else [p])
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def alternation(parts: Sequence) -> object:
    flat: list = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Alt) else [p])
    if len(flat) == 1:
        return flat[0]
    return Alt(tuple(flat))


# -- parsing --------------------------------------------------------------------

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_IDENT_CONT = _IDENT_START | set("0123456789_")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _IDENT_START:
            j = i + 1
            while j < len(text) and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        elif ch in "|*+?()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(i, "a label, an operator or a parenthesis")
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], alphabet: frozenset[str] | None):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_alt(self):
        parts = [self.parse_cat()]
        while self.peek()[0] == "|":
            self.take()
            parts.append(self.parse_cat())
        return alternation(parts)

    def parse_cat(self):
        parts = [self.parse_post()]
        while self.peek()[0] in ("ident", "("):
            parts.append(self.parse_post())
        return concat(parts)

    def parse_post(self):
        node = self.parse_atom()
        while self.peek()[0] in ("*", "+", "?"):
            kind, _, _ = self.take()
            node = {"*": Star, "+": Plus, "?": Opt}[kind](node)
        return node

    def parse_atom(self):
        kind, text, offset = self.peek()
        if kind == "ident":
            self.take()
            if self.alphabet is not None and text not in self.alphabet:
                raise UnknownLabel(text, offset)
            return Sym(text)
        if kind == "(":
            self.take()
            inner = self.parse_alt()
            kind2, _, offset2 = self.peek()
            if kind2 != ")":
                raise ParseError(offset2, "')'")
            self.take()
            return inner
        raise ParseError(offset, "a label or '('")


def parse(text: str, alphabet: Iterable[str] | None = None) -> object:
    """Parse a rational expression; labels outside the alphabet are rejected."""
    alpha = frozenset(alphabet) if alphabet is not None else None
    parser = _Parser(_tokenize(text), alpha)
    node = parser.parse_alt()
    kind, _, offset = parser.peek()
    if kind != "end":
        raise ParseError(offset, "end of expression")
    return node


# -- rendering ------------------------------------------------------------------

_PREC_ALT, _PREC_CAT, _PREC_POST = 0, 1, 2


def render(node, prec: int = _PREC_ALT) -> str:
    if isinstance(node, Sym):
        return node.label
    if isinstance(node, Alt):
        body = " | ".join(render(p, _PREC_CAT) for p in node.parts)
        return f"({body})" if prec > _PREC_ALT else body
    if isinstance(node, Concat):
        body = " ".join(render(p, _PREC_POST) for p in node.parts)
        return f"({body})" if prec > _PREC_CAT else body
    for cls, mark in ((Star, "*"), (Plus, "+"), (Opt, "?")):
        if isinstance(node, cls):
            return render(node.item, _PREC_POST + 1) + mark
    raise TypeError(f"not a rational expression node: {node!r}")


# -- compilation (position automaton) --------------------------------------------


@dataclass(frozen=True)
class Nfa:
    """Epsilon-free automaton: states 0..state_count-1, 0 is the start."""

    state_count: int
    transitions: tuple[tuple[int, str, int], ...]
    accepting: frozenset[int]

    def step_map(self) -> dict[tuple[int, str], frozenset[int]]:
        table: dict[tuple[int, str], set[int]] = {}
        for src, label, dst in self.transitions:
            table.setdefault((src, label), set()).add(dst)
        return {k: frozenset(v) for k, v in table.items()}


@lru_cache(maxsize=512)
def compile_expr(node) -> Nfa:
    """Position construction: one state per symbol occurrence plus a start."""
    symbol_of: dict[int, str] = {}
    counter = [0]

    def analyze(n) -> tuple[bool, frozenset[int], frozenset[int], list[tuple[int, int]]]:
        # returns (nullable, first, last, follow pairs)
        if isinstance(n, Sym):
            counter[0] += 1
            p = counter[0]
            symbol_of[p] = n.label
            only = frozenset([p])
            return (False, only, only, [])
        if isinstance(n, Alt):
            nullable = False
            first: frozenset[int] = frozenset()
            last: frozenset[int] = frozenset()
            follow: list[tuple[int, int]] = []
            for part in n.parts:
                pn, pf, pl, pfol = analyze(part)
                nullable = nullable or pn
                first |= pf
                last |= pl
                follow.extend(pfol)
            return (nullable, first, last, follow)
        if isinstance(n, Concat):
            nullable = True
            first: frozenset[int] = frozenset()
            last: frozenset[int] = frozenset()
            follow: list[tuple[int, int]] = []
            for part in n.parts:
                pn, pf, pl, pfol = analyze(part)
                follow.extend(pfol)
                follow.extend((q, r) for q in last for r in pf)
                if nullable:
                    first |= pf
                last = pl | (last if pn else frozenset())
                nullable = nullable and pn
            return (nullable, first, last, follow)
        if isinstance(n, (Star, Plus, Opt)):
            pn, pf, pl, pfol = analyze(n.item)
            follow = list(pfol)
            if isinstance(n, (Star, Plus)):
                follow.extend((q, r) for q in pl for r in pf)
            nullable = True if isinstance(n, (Star, Opt)) else pn
            return (nullable, pf, pl, follow)
        raise TypeError(f"not a rational expression node: {n!r}")

    nullable, first, last, follow = analyze(node)
    transitions = [(0, symbol_of[p], p) for p in sorted(first)]
    transitions.extend((q, symbol_of[r], r) for q, r in sorted(set(follow)))
    accepting = set(last)
    if nullable:
        accepting.add(0)
    return Nfa(counter[0] + 1, tuple(transitions), frozenset(accepting))


def matches(node, word: Sequence[str]) -> bool:
    """Whole-word membership of a label word in the expression's language."""
    nfa = compile_expr(node)
    table = nfa.step_map()
    states: frozenset[int] = frozenset([0])
    for label in word:
        nxt: set[int] = set()
        for s in states:
            nxt |= table.get((s, label), frozenset())
        if not nxt:
            return False
        states = frozenset(nxt)
    return bool(states & nfa.accepting)
