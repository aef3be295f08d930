"""Context-free grammars: representation, text format, augmentation.

Symbols are plain hashable values, normally strings.  A grammar read from text
only ever contains strings; cover grammars built from automata use stack
symbol objects as nonterminals.

Text format, one rule per line::

    # comment
    %start S
    S -> a S b
    S ->

A symbol is a nonterminal iff it occurs as the left-hand side of some rule.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

DAGGER = "†"
BEGIN = "▷"
END = "◁"
RESERVED = (DAGGER, BEGIN, END)

Symbol = Hashable


class GrammarError(ValueError):
    """Malformed grammar text or an inconsistent grammar."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Rule(NamedTuple):
    lhs: Symbol
    rhs: tuple

    def __str__(self):
        return f"{self.lhs} -> {' '.join(map(str, self.rhs))}".rstrip()


@dataclass(frozen=True)
class Cfg:
    terminals: frozenset
    nonterminals: frozenset
    rules: tuple
    start: Symbol
    _by_lhs: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.terminals & self.nonterminals:
            raise GrammarError("terminal and nonterminal sets overlap: %s"
                               % sorted(map(str, self.terminals & self.nonterminals)))
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start} is not a nonterminal")
        vocabulary = self.terminals | self.nonterminals
        seen = set()
        by_lhs: dict = {}
        for rule in self.rules:
            if rule in seen:
                raise GrammarError(f"duplicate rule {rule}")
            seen.add(rule)
            if rule.lhs not in self.nonterminals:
                raise GrammarError(f"rule {rule} has a non-nonterminal left-hand side")
            for sym in rule.rhs:
                if sym not in vocabulary:
                    raise GrammarError(f"rule {rule} uses unknown symbol {sym}")
            by_lhs.setdefault(rule.lhs, []).append(rule)
        object.__setattr__(self, "_by_lhs", {a: tuple(rs) for a, rs in by_lhs.items()})

    @classmethod
    def from_rules(cls, rules: Iterable, start: Symbol = None, terminals: Iterable = ()) -> "Cfg":
        """Build a grammar from ``(lhs, rhs)`` pairs; nonterminals are the left-hand sides."""
        rules = tuple(Rule(lhs, tuple(rhs)) for lhs, rhs in rules)
        if not rules:
            raise GrammarError("empty rule set")
        nonterminals = frozenset(r.lhs for r in rules)
        used = {sym for r in rules for sym in r.rhs if sym not in nonterminals}
        return cls(frozenset(used) | frozenset(terminals), nonterminals, rules,
                   rules[0].lhs if start is None else start)

    def rules_for(self, nonterminal: Symbol) -> tuple:
        return self._by_lhs.get(nonterminal, ())

    @property
    def vocabulary(self) -> frozenset:
        return self.terminals | self.nonterminals

    def to_text(self, name=str) -> str:
        lines = [f"%start {name(self.start)}"]
        for rule in self.rules:
            rhs = " ".join(name(sym) for sym in rule.rhs)
            lines.append(f"{name(rule.lhs)} -> {rhs}".rstrip())
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def parse_grammar(text: str) -> Cfg:
    rules = []
    start = None
    start_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if any(mark in line for mark in RESERVED):
            raise GrammarError("reserved symbol (one of %s) in input" % " ".join(RESERVED), lineno)
        if line.startswith("%"):
            words = line.split()
            if words[0] != "%start" or len(words) != 2:
                raise GrammarError(f"unknown directive {line!r}", lineno)
            start, start_line = words[1], lineno
            continue
        if "->" not in line:
            raise GrammarError("expected 'LHS -> symbols'", lineno)
        left, right = line.split("->", 1)
        left = left.split()
        if not left:
            raise GrammarError("missing LHS", lineno)
        if len(left) > 1:
            raise GrammarError("LHS must be a single symbol", lineno)
        rule = Rule(left[0], tuple(right.split()))
        if rule in rules:
            raise GrammarError(f"duplicate rule {rule}", lineno)
        rules.append(rule)
    if not rules:
        raise GrammarError("empty rule set")
    nonterminals = {r.lhs for r in rules}
    if start is not None and start not in nonterminals:
        raise GrammarError(f"start symbol {start} is not a nonterminal", start_line)
    return Cfg.from_rules(rules, start)


def load_grammar(path) -> Cfg:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += DAGGER
    return name


def augment(g: Cfg) -> Cfg:
    """Return G† with the rule ``S† -> ▷ S ◁`` added; the new start is ``S†``.

    Fresh names are found by appending daggers, so the result never collides
    with symbols already in ``g``.
    """
    taken = {str(s) for s in g.vocabulary}
    new_start = _fresh(f"{g.start}{DAGGER}", taken)
    taken.add(new_start)
    begin = _fresh(BEGIN, taken)
    taken.add(begin)
    end = _fresh(END, taken)
    rules = g.rules + (Rule(new_start, (begin, g.start, end)),)
    return Cfg(g.terminals | {begin, end}, g.nonterminals | {new_start}, rules, new_start)


def start_rule(g_aug: Cfg) -> Rule:
    """The single ``S† -> ▷ S ◁`` rule of an augmented grammar."""
    rules = g_aug.rules_for(g_aug.start)
    if len(rules) != 1 or len(rules[0].rhs) != 3:
        raise GrammarError("grammar is not augmented")
    return rules[0]


def source_grammar(g_aug: Cfg) -> Cfg:
    """Undo :func:`augment`."""
    top = start_rule(g_aug)
    begin, start, end = top.rhs
    rules = tuple(r for r in g_aug.rules if r != top)
    return Cfg(g_aug.terminals - {begin, end}, g_aug.nonterminals - {g_aug.start}, rules, start)


def is_binary_form(g: Cfg) -> bool:
    for rule in g.rules:
        n = len(rule.rhs)
        if n == 2 and not all(sym in g.nonterminals for sym in rule.rhs):
            return False
        if n > 2:
            return False
    return True


def grammar_size(g: Cfg) -> int:
    return sum(1 + len(rule.rhs) for rule in g.rules)


@dataclass(frozen=True)
class Sentence:
    tokens: tuple

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    @property
    def n(self) -> int:
        return len(self.tokens)

    @classmethod
    def of(cls, tokens) -> "Sentence":
        if isinstance(tokens, Sentence):
            return tokens
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(tuple(tokens))

    def __str__(self):
        return " ".join(map(str, self.tokens))


def check_sentence(g: Cfg, v: Sentence) -> None:
    for position, token in enumerate(v.tokens):
        if token not in g.terminals:
            raise GrammarError(f"token {token!r} at position {position} is not a terminal")


def generate_sentence(g: Cfg, seed: int, max_len: int) -> Optional[Sentence]:
    """Random leftmost derivation from the start symbol, rules picked uniformly.

    Gives up (returns None) after ``10 * max_len`` rule applications or when the
    yield grows past ``max_len`` terminals.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    rng = random.Random(seed)
    budget = 10 * max_len
    out: list = []
    pending: list = [g.start]  # reversed: last element is the leftmost symbol
    while pending:
        sym = pending.pop()
        if sym not in g.nonterminals:
            out.append(sym)
            if len(out) > max_len:
                return None
            continue
        if budget == 0:
            return None
        budget -= 1
        rule = rng.choice(g.rules_for(sym))
        pending.extend(reversed(rule.rhs))
    return Sentence(tuple(out))


def sentences_up_to(terminals: Sequence, max_len: int):
    """All strings over ``terminals`` of length 0..max_len, shortest first."""
    alphabet = sorted(terminals, key=str)
    for n in range(max_len + 1):
        for tokens in itertools.product(alphabet, repeat=n):
            yield Sentence(tokens)
