"""Brute-force membership and ambiguity, by enumerating leftmost derivations.

Shares no code with the automata or the chart, so it can referee both.
"""
from __future__ import annotations

from functools import lru_cache

from .grammar import Cfg, Sentence


def min_yields(g: Cfg) -> dict:
    """Length of the shortest terminal string each nonterminal derives."""
    inf = float("inf")
    best = {a: inf for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            length = sum(best.get(sym, 1) for sym in rule.rhs)
            if length < best[rule.lhs]:
                best[rule.lhs] = length
                changed = True
    return best


def count_derivations(g: Cfg, v) -> int:
    """Number of leftmost derivations (equivalently parse trees) of ``v`` from the start symbol.

    Raises ValueError if the search meets a cycle or unbounded growth of
    nullable symbols, i.e. when the count may be infinite.
    """
    tokens = Sentence.of(v).tokens
    n = len(tokens)
    shortest = min_yields(g)
    growth_cap = (n + 1) * (len(g.nonterminals) + 1)
    active = set()

    def weight(sym):
        return shortest[sym] if sym in g.nonterminals else 1

    @lru_cache(maxsize=None)
    def count(pos: int, pending: tuple) -> int:
        # consume terminals at the front
        while pending and pending[0] not in g.nonterminals:
            if pos >= n or tokens[pos] != pending[0]:
                return 0
            pos += 1
            pending = pending[1:]
        if not pending:
            return 1 if pos == n else 0
        if sum(map(weight, pending)) > n - pos:
            return 0
        if len(pending) > growth_cap:
            raise ValueError("derivation search does not terminate for this grammar")
        state = (pos, pending)
        if state in active:
            raise ValueError(f"cyclic derivation at position {pos}; infinitely many parses")
        active.add(state)
        total = 0
        head, rest = pending[0], pending[1:]
        for rule in g.rules_for(head):
            total += count(pos, rule.rhs + rest)
        active.discard(state)
        return total

    return count(0, (g.start,))


def is_member(g: Cfg, v) -> bool:
    return count_derivations(g, v) > 0
