"""Parse trees out of a finished chart.

Cover nonterminals come in two flavours.  Those derived by shift or goto rules
stand for one tree of the source grammar; those derived by initiate or
gathering rules stand for a list of sibling trees.  When a gathering rule
``L -> P R`` splits a span at k, several stack symbols P may qualify that
differ only in their LR state; they all yield the same trees, so exactly one
of them is used (the one with the smallest state id).  Without that choice the
cover's extra ambiguity leaks into the result.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .chart import ChartTable
from .cover import CoverGrammar
from .pda import GATHERING, GOTO, INITIATE, SHIFT


class InfiniteAmbiguity(ValueError):
    """The chart admits cyclic derivations, so there are infinitely many trees."""


class ParseTree(NamedTuple):
    label: object
    children: Optional[tuple] = None  # None marks a terminal leaf

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def __str__(self):
        if self.children is None:
            return str(self.label)
        return f"{self.label}(" + " ".join(map(str, self.children)) + ")"

    def rules(self):
        """Yield ``(lhs, child labels)`` for every internal node."""
        if self.children is None:
            return
        yield self.label, tuple(c.label for c in self.children)
        for c in self.children:
            yield from c.rules()

    def yield_(self) -> tuple:
        if self.children is None:
            return (self.label,)
        return tuple(itertools.chain.from_iterable(c.yield_() for c in self.children))


class Alternative(NamedTuple):
    kind: str  # shift | initiate | gathering | goto
    children: tuple  # child keys, (symbol, i, j)
    label: object = None  # terminal for shift, source nonterminal for goto


@dataclass
class PackedNode:
    key: tuple
    alternatives: list
    parse_count: int = 0


def _rank(sym):
    state = getattr(sym, "state", None)
    if state is not None:
        return (0, state.id, str(sym))
    ident = getattr(sym, "id", None)
    if ident is not None:
        return (0, ident, str(sym))
    return (1, 0, str(sym))


@dataclass
class Forest:
    table: ChartTable
    cover: CoverGrammar
    _alts: dict = field(default_factory=dict, repr=False)
    _counts: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_lhs: dict = {}
        for rule, transitions in self.cover.rule_to_transitions.items():
            self._by_lhs.setdefault(rule.lhs, []).append((rule, transitions[0]))

    @property
    def root(self) -> tuple:
        return (self.cover.start, 0, self.table.n)

    @property
    def accepted(self) -> bool:
        return self.root in self.table

    def alternatives(self, key) -> list:
        """Decompositions of a chart entry, with the one-state-per-split choice applied."""
        if key in self._alts:
            return self._alts[key]
        sym, i, j = key
        alts = []
        chosen: dict = {}
        for rule, t in self._by_lhs.get(sym, ()):
            if t.kind == SHIFT:
                if j == i + 1:
                    alts.append(Alternative(SHIFT, (), t.label))
            elif t.kind == INITIATE:
                if i == j:
                    alts.append(Alternative(INITIATE, ()))
            elif t.kind == GOTO:
                child = (rule.rhs[0], i, j)
                if child in self.table:
                    alts.append(Alternative(GOTO, (child,), t.rule.lhs))
            elif t.kind == GATHERING:
                left, right = rule.rhs
                for k in range(i, j + 1):
                    if left in self.table.get(i, k) and right in self.table.get(k, j):
                        best = chosen.get((k, right))
                        if best is None or _rank(left) < _rank(best):
                            chosen[k, right] = left
        for (k, right), left in sorted(chosen.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
            alts.append(Alternative(GATHERING, ((left, i, k), (right, k, j))))
        self._alts[key] = alts
        return alts

    def count(self, key=None) -> int:
        """Number of trees (or tree lists) for ``key``; the root by default."""
        key = key or self.root
        if key not in self.table:
            return 0
        return self._count(key, set())

    def _count(self, key, active) -> int:
        if key in self._counts:
            return self._counts[key]
        if key in active:
            raise InfiniteAmbiguity(f"cyclic derivation through {key[0]} at {key[1]}..{key[2]}")
        active.add(key)
        total = 0
        for alt in self.alternatives(key):
            if alt.kind in (SHIFT, INITIATE):
                total += 1
            elif alt.kind == GOTO:
                total += self._count(alt.children[0], active)
            else:
                left = self._count(alt.children[0], active)
                if left:
                    total += left * self._count(alt.children[1], active)
        active.discard(key)
        self._counts[key] = total
        return total

    def trees(self, key=None) -> Iterator[ParseTree]:
        """Lazily enumerate the trees of a tree-valued entry."""
        key = key or self.root
        if key not in self.table:
            return
        self.count(key)  # rejects cyclic charts before enumerating
        yield from self._trees(key)

    def _trees(self, key):
        for alt in self.alternatives(key):
            if alt.kind == SHIFT:
                yield ParseTree(alt.label)
            elif alt.kind == GOTO:
                for children in self._lists(alt.children[0]):
                    yield ParseTree(alt.label, children)

    def _lists(self, key):
        for alt in self.alternatives(key):
            if alt.kind == INITIATE:
                yield ()
            elif alt.kind == GATHERING:
                left, right = alt.children
                if not self._counts.get(left) or not self._counts.get(right):
                    continue
                for head in self._trees(left):
                    for tail in self._lists(right):
                        yield (head,) + tail

    def packed(self) -> dict:
        """The packed nodes reachable from the root, keyed by (symbol, i, j)."""
        nodes = {}
        if not self.accepted:
            return nodes
        self.count()
        todo = [self.root]
        while todo:
            key = todo.pop()
            if key in nodes:
                continue
            alts = [a for a in self.alternatives(key)
                    if all(self._counts.get(c) for c in a.children)]
            nodes[key] = PackedNode(key, alts, self._counts[key])
            for a in alts:
                todo.extend(a.children)
        return nodes

    def to_json(self) -> str:
        def name(key):
            sym, i, j = key
            return f"{sym} {i} {j}"

        out = []
        for key, node in sorted(self.packed().items(), key=lambda kv: (kv[0][1], -kv[0][2], str(kv[0][0]))):
            out.append({
                "key": name(key),
                "count": node.parse_count,
                "alternatives": [
                    {"kind": a.kind,
                     "label": None if a.label is None else str(a.label),
                     "children": [name(c) for c in a.children]}
                    for a in node.alternatives
                ],
            })
        return json.dumps(out, indent=1, ensure_ascii=False)


def extract_trees(table: ChartTable, cover: CoverGrammar) -> set:
    return set(Forest(table, cover).trees())


def count_parses(table: ChartTable, cover: CoverGrammar) -> int:
    return Forest(table, cover).count()
