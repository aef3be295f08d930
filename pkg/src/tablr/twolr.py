"""2LR automata: LR states reduced to sets of right-hand-side suffixes.

Dropping everything left of the dot (and the left-hand side) makes many LR
states coincide, and lets rules with a common suffix share their gathering
steps.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .grammar import Cfg, start_rule
from .lr import LrStates, symbol_order
from .pda import GATHERING, GOTO, INITIATE, SHIFT, Pda, Transition


@dataclass(frozen=True)
class SuffixItem:
    """A suffix of some right-hand side, used as a stack symbol."""
    symbols: tuple

    def __str__(self):
        return "[" + (" ".join(map(str, self.symbols)) or "ε") + "]"


@dataclass(frozen=True, eq=False)
class SuffixState:
    id: int
    kernel: frozenset  # of symbol tuples

    def __eq__(self, other):
        return isinstance(other, SuffixState) and self.kernel == other.kernel

    def __hash__(self):
        return hash(self.kernel)

    def __str__(self):
        return f"q{self.id}"

    def describe(self) -> str:
        body = ", ".join(sorted(" ".join(map(str, b)) or "ε" for b in self.kernel))
        return f"q{self.id}: {{{body}}}"


@dataclass(frozen=True)
class PairSymbol:
    """Stack symbol (X, q): q was entered by recognizing X."""
    last: object
    state: SuffixState

    def __str__(self):
        return f"[{self.last}|{self.state}]"


def all_suffixes(g: Cfg) -> list:
    seen = {}
    for rule in g.rules:
        for k in range(len(rule.rhs) + 1):
            seen.setdefault(rule.rhs[k:], None)
    return list(seen)


def closure_prime(q, g: Cfg) -> frozenset:
    result = set(q)
    todo = list(result)
    while todo:
        beta = todo.pop()
        if not beta:
            continue
        for rule in g.rules_for(beta[0]):
            if rule.rhs not in result:
                result.add(rule.rhs)
                todo.append(rule.rhs)
    return frozenset(result)


def goto_prime(q, x, g: Cfg) -> frozenset:
    return frozenset(beta[1:] for beta in closure_prime(q, g) if beta and beta[0] == x)


def simplify(kernel) -> frozenset:
    """Map a set of LR items to the set of suffixes after their dots."""
    return frozenset(item.rule.rhs[item.dot:] for item in kernel)


@dataclass
class SuffixStates:
    grammar: Cfg
    states: list
    initial: SuffixState
    goto: dict  # (SuffixState, symbol) -> SuffixState
    _closures: dict = field(default_factory=dict, repr=False)

    def closure_of(self, q: SuffixState) -> frozenset:
        if q not in self._closures:
            self._closures[q] = closure_prime(q.kernel, self.grammar)
        return self._closures[q]

    def find(self, kernel) -> Optional[SuffixState]:
        kernel = frozenset(tuple(b) for b in kernel)
        for q in self.states:
            if q.kernel == kernel:
                return q
        return None

    def __len__(self):
        return len(self.states)


def build_r_2lr(g_aug: Cfg) -> SuffixStates:
    top = start_rule(g_aug)
    order = symbol_order(g_aug)
    initial = SuffixState(0, frozenset({top.rhs[1:]}))
    interned = {initial.kernel: initial}
    states = [initial]
    goto = {}
    queue = deque([initial])
    while queue:
        q = queue.popleft()
        closed = closure_prime(q.kernel, g_aug)
        for x in order:
            kernel = frozenset(b[1:] for b in closed if b and b[0] == x)
            if not kernel:
                continue
            target = interned.get(kernel)
            if target is None:
                target = SuffixState(len(states), kernel)
                interned[kernel] = target
                states.append(target)
                queue.append(target)
            goto[q, x] = target
    return SuffixStates(g_aug, states, initial, goto)


@dataclass
class TwoLr:
    pda: Pda
    q_in: PairSymbol
    q_fin: PairSymbol
    states: SuffixStates
    pairs: list
    items: dict  # symbol tuple -> SuffixItem

    def pair(self, last, kernel) -> PairSymbol:
        state = self.states.find(kernel)
        if state is None:
            raise KeyError(f"no state with kernel {kernel}")
        return PairSymbol(last, state)

    def item(self, *symbols) -> SuffixItem:
        return self.items[tuple(symbols)]


def build_a_2lr(g_aug: Cfg, r2: Optional[SuffixStates] = None) -> TwoLr:
    r2 = r2 or build_r_2lr(g_aug)
    top = start_rule(g_aug)
    begin, source_start, end = top.rhs
    sigma = g_aug.terminals - {begin, end}
    order = symbol_order(g_aug)
    items = {beta: SuffixItem(beta) for beta in all_suffixes(g_aug)}

    q_in = PairSymbol(begin, r2.initial)
    pairs = [q_in]
    seen = {q_in}
    for q in r2.states:
        for x in order:
            target = r2.goto.get((q, x))
            if target is not None and PairSymbol(x, target) not in seen:
                seen.add(PairSymbol(x, target))
                pairs.append(PairSymbol(x, target))
    q_fin = PairSymbol(source_start, r2.goto[r2.initial, source_start])

    transitions = []
    for p in pairs:
        q = p.state
        closed = r2.closure_of(q)
        for a in order:
            target = r2.goto.get((q, a))
            if target is not None and a in sigma:
                transitions.append(Transition((p,), a, (p, PairSymbol(a, target)), SHIFT))
        if () in closed:
            transitions.append(Transition((p,), None, (p, items[()]), INITIATE))
        for beta in sorted(q.kernel, key=str):
            transitions.append(
                Transition((p, items[beta]), None, (items[(p.last,) + beta],), GATHERING))
        for rule in g_aug.rules:
            target = r2.goto.get((q, rule.lhs))
            if target is not None:
                transitions.append(Transition(
                    (p, items[rule.rhs]), None, (p, PairSymbol(rule.lhs, target)), GOTO, rule))
    stack_symbols = tuple(pairs) + tuple(items.values())
    pda = Pda(frozenset(sigma), stack_symbols, tuple(transitions), q_in, q_fin)
    return TwoLr(pda, q_in, q_fin, r2, pairs, items)


def check_surjection(lr: LrStates, r2: SuffixStates) -> bool:
    """simplify commutes with goto: simplify(goto(q, X)) = goto'(simplify(q), X)."""
    g = lr.grammar
    for q in lr.states:
        s = simplify(q.kernel)
        if r2.find(s) is None:
            return False
        for x in g.vocabulary:
            target = lr.goto.get((q, x))
            image = goto_prime(s, x, g)
            if (simplify(target.kernel) if target else frozenset()) != image:
                return False
    return True
