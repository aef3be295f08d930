"""Pushdown automata without states, and a reference simulator.

A transition rewrites the top one or two stack cells, optionally reading one
input token.  The simulator here is deliberately naive (breadth-first over
configurations); it is the yardstick the chart recognizer is checked against,
not a parser.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, NamedTuple, Optional

from .grammar import Rule, Sentence

SHIFT = "shift"
INITIATE = "initiate"
GATHERING = "gathering"
GOTO = "goto"
REDUCE = "reduce"
KINDS = (SHIFT, INITIATE, GATHERING, GOTO, REDUCE)


class SearchLimitExceeded(RuntimeError):
    """The configuration graph is too large for exhaustive search."""


class Transition(NamedTuple):
    lhs: tuple
    label: Optional[Hashable]  # None means epsilon
    rhs: tuple
    kind: str
    rule: Optional[Rule] = None  # grammar rule a goto transition recognizes

    def __str__(self):
        label = "ε" if self.label is None else self.label
        lhs = " ".join(map(str, self.lhs))
        rhs = " ".join(map(str, self.rhs))
        return f"{lhs} ={label}=> {rhs} [{self.kind}]"


@dataclass(frozen=True)
class Pda:
    input_alphabet: frozenset
    stack_symbols: tuple
    transitions: tuple
    initial: Hashable
    final: Hashable
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = set(self.stack_symbols)
        if len(symbols) != len(self.stack_symbols):
            raise ValueError("duplicate stack symbols")
        index: dict = {}
        for t in self.transitions:
            if not (1 <= len(t.lhs) <= 2 and 1 <= len(t.rhs) <= 2):
                raise ValueError(f"transition not in binary form: {t}")
            if t.kind not in KINDS:
                raise ValueError(f"unknown transition kind {t.kind!r}")
            if (t.kind == SHIFT) != (t.label is not None):
                raise ValueError(f"only shift transitions read input: {t}")
            if t.label is not None and t.label not in self.input_alphabet:
                raise ValueError(f"label {t.label!r} not in the input alphabet")
            for sym in t.lhs + t.rhs:
                if sym not in symbols:
                    raise ValueError(f"unknown stack symbol {sym} in {t}")
            index.setdefault(t.lhs, []).append(t)
        if self.initial not in symbols or self.final not in symbols:
            raise ValueError("initial and final must be stack symbols")
        object.__setattr__(self, "_index", {k: tuple(v) for k, v in index.items()})

    def applicable(self, stack: tuple, token=None):
        """Transitions whose lhs matches the top of ``stack``; ``token`` is the next input or None."""
        found = []
        for width in (1, 2):
            if len(stack) >= width:
                for t in self._index.get(stack[-width:], ()):
                    if t.label is None or t.label == token:
                        found.append(t)
        return found

    def count(self, kind: str) -> int:
        return sum(1 for t in self.transitions if t.kind == kind)

    def dump(self) -> str:
        lines = [f"initial {self.initial}", f"final {self.final}"]
        lines.extend(str(t) for t in self.transitions)
        return "\n".join(lines) + "\n"


class Configuration(NamedTuple):
    stack: tuple
    position: int  # tokens consumed so far


class SpanFact(NamedTuple):
    symbol: Hashable
    i: int
    j: int


def _apply(stack: tuple, t: Transition) -> tuple:
    return stack[: len(stack) - len(t.lhs)] + t.rhs


def step(pda: Pda, c: Configuration, v: Sentence) -> set:
    token = v[c.position] if c.position < len(v) else None
    result = set()
    for t in pda.applicable(c.stack, token):
        pos = c.position + (t.label is not None)
        result.add(Configuration(_apply(c.stack, t), pos))
    return result


def depth_bound(pda: Pda, v: Sentence) -> int:
    return 2 * (len(v) + 1) * len(pda.stack_symbols)


def accepts(pda: Pda, v: Sentence, budget: int = 1_000_000) -> Optional[bool]:
    """Breadth-first search for ``(initial, v) ⊢* (initial final, ε)``.

    Returns None when the expansion budget runs out, or when the depth bound
    pruned a configuration and no accepting run was found.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    v = Sentence.of(v)
    n = len(v)
    goal = Configuration((pda.initial, pda.final), n)
    limit = depth_bound(pda, v)
    start = Configuration((pda.initial,), 0)
    seen = {start}
    queue = deque([start])
    pruned = False
    while queue:
        if budget == 0:
            return None
        budget -= 1
        c = queue.popleft()
        if c == goal:
            return True
        for nxt in step(pda, c, v):
            if len(nxt.stack) > limit:
                pruned = True
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return None if pruned else False


def push_spans(pda: Pda, v: Sentence, max_nodes: int = 2_000_000) -> set:
    """All facts ``(q, i, j)`` such that some reachable stack δ at position i
    can grow to δq at position j without δ being touched.

    Each stack cell carries the position at which the stack was last exactly
    the cells beneath it.  A transition that leaves a cell in place, or
    rewrites it while the stack stays at least as tall, keeps that position;
    a freshly pushed cell gets the current position, provided the cells under
    it were untouched by the push.  Every reachable configuration then emits
    one fact for its top cell.  The bottom cell counts as pushed at 0, so
    ``(initial, 0, 0)`` is always present.
    """
    v = Sentence.of(v)
    limit = depth_bound(pda, v)
    start = ((pda.initial,), (0,), 0)
    seen = {start}
    queue = deque([start])
    facts = set()
    while queue:
        stack, support, pos = queue.popleft()
        if support[-1] is not None:
            facts.add(SpanFact(stack[-1], support[-1], pos))
        token = v[pos] if pos < len(v) else None
        for t in pda.applicable(stack, token):
            base = len(stack) - len(t.lhs)
            new_stack = stack[:base] + t.rhs
            kept = min(len(t.lhs), len(t.rhs))
            new_support = list(support[: base + kept])
            for k in range(base + kept, len(new_stack)):
                # fresh cell: valid only if everything under it was already there
                below_intact = new_stack[:k] == stack[:k]
                new_support.append(pos if below_intact and k == len(stack) else None)
            if len(new_stack) > limit:
                raise SearchLimitExceeded(f"stack deeper than {limit}")
            node = (new_stack, tuple(new_support), pos + (t.label is not None))
            if node not in seen:
                if len(seen) >= max_nodes:
                    raise SearchLimitExceeded(f"more than {max_nodes} configurations")
                seen.add(node)
                queue.append(node)
    return facts


def _could_overlap(t1: Transition, t2: Transition) -> bool:
    short, long = sorted((t1.lhs, t2.lhs), key=len)
    return long[len(long) - len(short):] == short


def is_deterministic(pda: Pda) -> bool:
    """Static check that no stack top ever enables two transitions at once.

    Two transitions clash when one lhs is a suffix of the other and their labels
    do not rule each other out (two distinct terminals).  Unreachable stack tops
    are not excluded, so the check is sound but may reject some automata that
    behave deterministically on every reachable configuration.
    """
    by_top: dict = {}
    for t in pda.transitions:
        by_top.setdefault(t.lhs[-1], []).append(t)
    for group in by_top.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                t1, t2 = group[a], group[b]
                if not _could_overlap(t1, t2):
                    continue
                if t1.label is None or t2.label is None or t1.label == t2.label:
                    return False
    return True


def deterministic_run(pda: Pda, v: Sentence, max_steps: int = 1_000_000) -> Optional[int]:
    """Run a deterministic automaton; number of steps to the final configuration, or None.

    Raises ValueError if some configuration has more than one applicable transition.
    """
    v = Sentence.of(v)
    stack, pos = (pda.initial,), 0
    steps = 0
    while True:
        if stack == (pda.initial, pda.final) and pos == len(v):
            return steps
        token = v[pos] if pos < len(v) else None
        moves = pda.applicable(stack, token)
        if not moves:
            return None
        if len(moves) > 1:
            raise ValueError(f"nondeterministic configuration at position {pos}")
        t = moves[0]
        stack = _apply(stack, t)
        pos += t.label is not None
        steps += 1
        if steps > max_steps:
            raise SearchLimitExceeded(f"more than {max_steps} steps")
