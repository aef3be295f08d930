"""LR(0) item sets and the binary-form LR automaton.

Reduce transitions of the classic LR automaton pop an unbounded number of
cells, so they are never tabulated here; :func:`is_a_redex` describes them.
The binary-form automaton replaces each reduce by one initiate step, one
gathering step per right-hand-side symbol, and one goto step.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .grammar import Cfg, Rule, start_rule
from .pda import GATHERING, GOTO, INITIATE, SHIFT, Pda, Transition


class LrItem(NamedTuple):
    rule: Rule
    dot: int

    @property
    def next_symbol(self):
        rhs = self.rule.rhs
        return rhs[self.dot] if self.dot < len(rhs) else None

    @property
    def complete(self) -> bool:
        return self.dot == len(self.rule.rhs)

    def advance(self) -> "LrItem":
        return LrItem(self.rule, self.dot + 1)

    def retreat(self) -> "LrItem":
        return LrItem(self.rule, self.dot - 1)

    def __str__(self):
        rhs = list(map(str, self.rule.rhs))
        rhs.insert(self.dot, "•")
        return f"{self.rule.lhs} -> {' '.join(rhs)}"


@dataclass(frozen=True, eq=False)
class LrState:
    id: int
    kernel: frozenset

    def __eq__(self, other):
        return isinstance(other, LrState) and self.kernel == other.kernel

    def __hash__(self):
        return hash(self.kernel)

    def __str__(self):
        return f"q{self.id}"

    def describe(self) -> str:
        return f"q{self.id}: " + "; ".join(sorted(map(str, self.kernel)))


def all_items(g: Cfg) -> list:
    return [LrItem(rule, dot) for rule in g.rules for dot in range(len(rule.rhs) + 1)]


def closure(items, g: Cfg) -> frozenset:
    result = set(items)
    todo = list(result)
    while todo:
        sym = todo.pop().next_symbol
        for rule in g.rules_for(sym):
            item = LrItem(rule, 0)
            if item not in result:
                result.add(item)
                todo.append(item)
    return frozenset(result)


def goto_set(items, x, g: Cfg) -> frozenset:
    return frozenset(item.advance() for item in closure(items, g) if item.next_symbol == x)


def symbol_order(g: Cfg) -> list:
    return sorted(g.vocabulary, key=str)


@dataclass
class LrStates:
    """The collection of LR(0) states reachable from q_in, with its goto table."""
    grammar: Cfg
    states: list
    q_in: LrState
    q_fin: LrState
    goto: dict  # (LrState, symbol) -> LrState
    _closures: dict = field(default_factory=dict, repr=False)

    def closure_of(self, q: LrState) -> frozenset:
        if q not in self._closures:
            self._closures[q] = closure(q.kernel, self.grammar)
        return self._closures[q]

    def __len__(self):
        return len(self.states)


def build_r_lr(g_aug: Cfg) -> LrStates:
    top = start_rule(g_aug)
    source_start = top.rhs[1]
    order = symbol_order(g_aug)
    q_in = LrState(0, frozenset({LrItem(top, 1)}))
    interned = {q_in.kernel: q_in}
    states = [q_in]
    goto = {}
    queue = deque([q_in])
    while queue:
        q = queue.popleft()
        closed = closure(q.kernel, g_aug)
        for x in order:
            kernel = frozenset(item.advance() for item in closed if item.next_symbol == x)
            if not kernel:
                continue
            target = interned.get(kernel)
            if target is None:
                target = LrState(len(states), kernel)
                interned[kernel] = target
                states.append(target)
                queue.append(target)
            goto[q, x] = target
    q_fin = goto[q_in, source_start]
    return LrStates(g_aug, states, q_in, q_fin, goto)


def is_a_redex(states, a, lr: LrStates) -> bool:
    """Whether ``states`` (q0 ... qm) can be popped by a reduce to ``a``."""
    states = list(states)
    if not states:
        raise ValueError("an A-redex has at least one state")
    m = len(states) - 1
    for item in lr.closure_of(states[-1]):
        if not (item.complete and item.rule.lhs == a and len(item.rule.rhs) == m):
            continue
        if all(lr.goto.get((states[k - 1], x)) == states[k]
               for k, x in enumerate(item.rule.rhs, 1)):
            return True
    return False


def build_a_lr_prime(g_aug: Cfg, lr: Optional[LrStates] = None) -> Pda:
    """The binary-form LR automaton: stack symbols are LR states and items."""
    lr = lr or build_r_lr(g_aug)
    top = start_rule(g_aug)
    sigma = g_aug.terminals - {top.rhs[0], top.rhs[2]}
    transitions = []
    for q in lr.states:
        closed = lr.closure_of(q)
        for x in symbol_order(g_aug):
            target = lr.goto.get((q, x))
            if target is not None and x in sigma:
                transitions.append(Transition((q,), x, (q, target), SHIFT))
        for item in sorted(closed, key=str):
            if item.complete:
                transitions.append(Transition((q,), None, (q, item), INITIATE))
        for item in sorted(q.kernel, key=str):
            if item.dot > 0:
                transitions.append(Transition((q, item), None, (item.retreat(),), GATHERING))
        for rule in g_aug.rules:
            target = lr.goto.get((q, rule.lhs))
            if target is not None:
                transitions.append(
                    Transition((q, LrItem(rule, 0)), None, (q, target), GOTO, rule))
    stack_symbols = tuple(lr.states) + tuple(all_items(g_aug))
    return Pda(frozenset(sigma), stack_symbols, tuple(transitions), lr.q_in, lr.q_fin)
