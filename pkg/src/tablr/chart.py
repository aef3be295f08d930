"""Filtered tabular recognition over a binary-form cover grammar.

Entries are computed column by column: everything ending at position j is
derived before anything ending at j + 1.  Filtering an entry that starts at i
consults ``U_i``, the union of all cells ending at i, which is therefore
complete whenever i < j.  Cells starting and ending at j are the one place
where the filter set still grows; those are handled by treating each filter
witness as one more premise of the rule application.

Every application of a rule is counted once, at the moment its last premise
leaves the agenda.  The cost of an application is the number of filter
witnesses that admit it, or 1 when the derived symbol needs no witness.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .cover import CoverGrammar, PredTables
from .grammar import GrammarError, Sentence

FIFO = "fifo"
LIFO = "lifo"


@dataclass
class RunMetrics:
    space: int = 0
    time: int = 0
    accepted: bool = False

    def count_step(self, witnesses: int, filtered: bool) -> int:
        """Charge one clause application; returns the number of steps added."""
        cost = witnesses if filtered else 1
        self.time += cost
        return cost

    def as_dict(self) -> dict:
        return {"space": self.space, "time": self.time, "accepted": self.accepted}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


@dataclass
class ChartTable:
    n: int
    cells: dict = field(default_factory=dict)  # (i, j) -> set of cover nonterminals
    row_union: list = field(default_factory=list)  # U_i

    def __post_init__(self):
        if not self.row_union:
            self.row_union = [set() for _ in range(self.n + 1)]

    def get(self, i: int, j: int) -> set:
        return self.cells.get((i, j), set())

    def __contains__(self, key) -> bool:
        sym, i, j = key
        return sym in self.cells.get((i, j), ())

    def add(self, sym, i: int, j: int) -> bool:
        cell = self.cells.setdefault((i, j), set())
        if sym in cell:
            return False
        cell.add(sym)
        self.row_union[j].add(sym)
        return True

    def facts(self) -> set:
        return {(sym, i, j) for (i, j), cell in self.cells.items() for sym in cell}

    @property
    def size(self) -> int:
        return sum(len(cell) for cell in self.cells.values())

    def dump(self, name=str) -> str:
        lines = []
        for (i, j) in sorted(self.cells):
            cell = self.cells[i, j]
            if cell:
                lines.append(f"U[{i},{j}]: " + ", ".join(sorted(map(name, cell))))
        return "\n".join(lines) + ("\n" if lines else "")


class _Index:
    """Cover rules arranged for lookup by premise."""

    def __init__(self, cover: CoverGrammar, tables: PredTables):
        g = cover.cfg
        self.terminal: dict = {}
        self.epsilon: list = []
        self.unit: dict = {}
        self.left: dict = {}
        self.right: dict = {}
        for rule in g.rules:
            rhs = rule.rhs
            if not rhs:
                self.epsilon.append(rule.lhs)
            elif len(rhs) == 1 and rhs[0] in g.terminals:
                self.terminal.setdefault(rhs[0], []).append(rule.lhs)
            elif len(rhs) == 1:
                self.unit.setdefault(rhs[0], []).append(rule.lhs)
            elif len(rhs) == 2:
                self.left.setdefault(rhs[0], []).append((rule.lhs, rhs[1]))
                self.right.setdefault(rhs[1], []).append((rule.lhs, rhs[0]))
            else:
                raise ValueError(f"cover rule not in binary form: {rule}")
        self.nullable = set(self.epsilon)
        self.unconditional = tables.unconditional
        self.tables = tables
        self.enablers: dict = {}
        for trigger, targets in tables.by_trigger.items():
            for sym in targets:
                self.enablers.setdefault(sym, set()).add(trigger)


class _Run:
    def __init__(self, cover: CoverGrammar, tables: PredTables, v: Sentence, agenda: str):
        self.ix = _Index(cover, tables)
        self.v = v
        self.n = len(v)
        self.lifo = agenda == LIFO
        self.table = ChartTable(self.n)
        self.metrics = RunMetrics()
        # processed entries: cells and per-column unions
        self.done: dict = {}
        self.done_union = [set() for _ in range(self.n + 1)]
        self.agenda: deque = deque()

    def witnesses(self, sym, i: int) -> int:
        enablers = self.ix.enablers.get(sym)
        if not enablers:
            return 0
        pool = self.done_union[i]
        if len(pool) < len(enablers):
            return sum(1 for t in pool if t in enablers)
        return sum(1 for t in enablers if t in pool)

    def filtered(self, sym) -> bool:
        return sym not in self.ix.unconditional

    def derive(self, sym, i: int, j: int, witnesses: int = 1, filtered: bool = True) -> None:
        if filtered and witnesses <= 0:
            return
        self.metrics.count_step(witnesses, filtered)
        if self.table.add(sym, i, j):
            self.agenda.append((sym, i, j))

    def apply(self, sym, i: int, j: int) -> None:
        """An application whose witnesses all come from the processed part of U_i."""
        if self.filtered(sym):
            self.derive(sym, i, j, self.witnesses(sym, i))
        else:
            self.derive(sym, i, j, filtered=False)

    def run(self, init) -> None:
        for j in range(self.n + 1):
            if j == 0:
                if self.table.add(init, 0, 0):
                    self.agenda.append((init, 0, 0))
            else:
                for sym in self.ix.terminal.get(self.v[j - 1], ()):
                    self.apply(sym, j - 1, j)
            for sym in self.ix.epsilon:
                if not self.filtered(sym):
                    self.derive(sym, j, j, filtered=False)
            while self.agenda:
                entry = self.agenda.pop() if self.lifo else self.agenda.popleft()
                self.process(*entry)

    def process(self, x, i: int, j: int) -> None:
        ix = self.ix
        # witnesses are members of the set U_j, not entries: a symbol already
        # seen in another cell of this column has already acted as a witness
        new_witness = x not in self.done_union[j]
        self.done.setdefault((i, j), set()).add(x)
        self.done_union[j].add(x)
        here = self.done.get((j, j), ())

        # x as the only or left premise
        for a in ix.unit.get(x, ()):
            self.apply(a, i, j)
        for a, right in ix.left.get(x, ()):
            if right in here:
                self.apply(a, i, j)

        # x as right premise; the left premise must have been processed before x
        for a, left in ix.right.get(x, ()):
            for i2 in range(i + 1):
                cell = self.done.get((i2, i))
                if cell and left in cell and not (i2 == i == j and left == x):
                    self.apply(a, i2, j)

        # x as a filter witness for entries in cell (j, j); premises processed before x
        if not new_witness:
            return
        same = i == j  # x itself sits in cell (j, j)
        for a in ix.tables.triggered(x):
            if not self.filtered(a):
                continue
            if a in ix.nullable:
                self.derive(a, j, j)
            for b in here:
                if same and b == x:
                    continue
                if a in ix.unit.get(b, ()):
                    self.derive(a, j, j)
                for a2, right in ix.left.get(b, ()):
                    if a2 == a and right in here and not (same and right == x):
                        self.derive(a, j, j)


def recognize(cover: CoverGrammar, tables: PredTables, v, agenda: str = FIFO):
    """Run the filtered chart recognizer; returns ``(table, metrics)``."""
    v = Sentence.of(v)
    for position, token in enumerate(v):
        if token not in cover.cfg.terminals:
            raise GrammarError(f"token {token!r} at position {position} is not in the alphabet")
    if agenda not in (FIFO, LIFO):
        raise ValueError(f"unknown agenda discipline {agenda!r}")
    run = _Run(cover, tables, v, agenda)
    run.run(cover.init_nonterminal)
    table, metrics = run.table, run.metrics
    metrics.space = table.size
    metrics.accepted = cover.start in table.get(0, len(v))
    return table, metrics
